import math

import numpy as np
import pytest

from spingeo.algebra import Multivector, Signature
from spingeo import fields as F
from spingeo import spinors as sp

from conftest import rand_poly_form, rand_poly_spinor, twistor_field


def xvec_field(sig):
    n = sig.dim
    return F.PolyFormField(sig, {1 << i: F.Poly.coordinate(n, i + 1)
                                 for i in range(n)})


def test_spinor_equation_residuals(flat3, rng):
    rep = sp.build_rep(flat3.sig)
    const = F.PolySpinorField.constant(rep, rng.normal(size=2) + 0j)
    assert F.residual("parallel", const, flat3) == 0.0
    assert F.residual("harmonic", const, flat3) == 0.0
    a = rng.normal(size=2) + 1j * rng.normal(size=2)
    b = rng.normal(size=2) + 1j * rng.normal(size=2)
    tw = twistor_field(rep, a, b)
    assert F.residual("twistor", tw, flat3) < 1e-12
    assert F.residual("twistor_int_1", tw, flat3) < 1e-12
    assert F.residual("twistor_int_2", tw, flat3) < 1e-12
    assert F.residual("twistor_int_3", tw, flat3) < 1e-12
    # a generic polynomial spinor is NOT a twistor spinor
    generic = rand_poly_spinor(rep, rng, deg=2)
    assert F.residual("twistor", generic, flat3) > 1e-3


def test_killing_equation_flat_parallel_only(flat3, rng):
    rep = sp.build_rep(flat3.sig)
    const = F.PolySpinorField.constant(rep, rng.normal(size=2) + 0j)
    assert F.residual("killing", const, flat3, {"lam": 0.0}) == 0.0
    assert F.residual("killing", const, flat3, {"lam": 0.3}) > 1e-3


def test_killing_scalar_identity_sphere(sphere3):
    # R = 6 on the unit sphere: lam = i/2 satisfies R = -4 lam^2 n(n-1)
    assert F.residual("killing_scalar", [], sphere3, {"lam": 0.5j}, count=10) < 1e-6
    assert F.residual("killing_scalar", [], sphere3, {"lam": 0.5}, count=10) > 1.0


def test_parallel_ricci_flat(flat3, rng):
    rep = sp.build_rep(flat3.sig)
    psi = rand_poly_spinor(rep, rng)
    assert F.residual("parallel_ricci", psi, flat3) == 0.0


def test_massive_dirac_plane_wave(flat4):
    rep = sp.build_rep(flat4.sig)
    m = 1.3
    evals, evecs = np.linalg.eigh(rep.gammas[0])
    u = evecs[:, int(np.argmax(evals))]
    psi = F.PolySpinorField(rep, [F.Poly.const(4, c, kappa=(m, 0, 0, 0)) for c in u])
    assert F.residual("massive_dirac", psi, flat4, {"m": m}) < 1e-10
    assert F.residual("massive_dirac", psi, flat4, {"m": 2 * m}) > 0.1


def test_ky_cky_ccky_residuals(flat3, rng):
    sig = flat3.sig
    rot = F.PolyFormField(sig, {1: F.Poly.coordinate(3, 2),
                                2: F.Poly.coordinate(3, 1) * (-1.0)})
    assert F.residual("ky", rot, flat3) == 0.0
    conf = xvec_field(sig)
    assert F.residual("cky", conf, flat3) == 0.0
    assert F.residual("ky", conf, flat3) > 1e-3      # not co-closed
    assert F.residual("ccky", conf, flat3) < 1e-12   # x~ is closed
    dual = conf.hodge()                              # * swaps CCKY <-> KY
    assert F.residual("ky", dual, flat3) < 1e-12
    assert F.residual("ccky", dual, flat3) > 1e-3
    with pytest.raises(ValueError):
        F.residual("ky", rand_poly_form(sig, rng), flat3)   # inhomogeneous


def test_case_systems_and_dichotomy(flat3):
    sig = flat3.sig
    n, lam = 3, 0.41
    w2 = F.PolyFormField.constant(Multivector.blade(sig, (1, 2), 1.0)
                                  + Multivector.blade(sig, (1, 3), -0.7))
    acc = F.PolyFormField.zero(sig)
    for a in range(1, n + 1):
        acc = acc + w2.contract_gen(a).scale(F.Poly.coordinate(n, a) * sig.metric(a))
    w1 = acc.scale(2 * lam) + F.PolyFormField.constant(Multivector.blade(sig, (2,), 0.5))
    assert F.residual("case2", [w1, w2], flat3, {"lam": lam}) < 1e-12
    # dichotomy: a Case-2 field is KY
    assert F.residual("ky", w1, flat3) < 1e-12
    kap = F.PolyFormField.constant(Multivector.blade(sig, (3,), 0.9))
    w_p = xvec_field(sig).wedge(kap).scale(2 * lam)
    assert F.residual("case1", [w_p, kap], flat3, {"lam": lam}) < 1e-12
    assert F.residual("ccky", w_p, flat3) < 1e-12


def chained_pair(sig, lam, p):
    """Exponential fields solving the full case chain in direction e1."""
    n = sig.dim
    k2 = 4 * lam ** 2 * p * (n - p + 1)
    kvec = (math.sqrt(k2),) + (0.0,) * (n - 1)
    blade = tuple(range(2, p + 1))
    gamma = F.PolyFormField(
        sig, {sum(1 << (i - 1) for i in blade): F.Poly.const(n, 1.0, kappa=kvec)}) \
        if blade else F.PolyFormField(sig, {0: F.Poly.const(n, 1.0, kappa=kvec)})
    beta = F.PolyFormField.constant(
        Multivector.blade(sig, (1,), math.sqrt(k2))).wedge(gamma)
    alpha = gamma.scale(k2 / (2 * lam * (n - p + 1)))
    return alpha, beta


def test_laplace_eigenform_identities(flat4):
    sig = flat4.sig
    lam = 0.23
    for p in (1, 2, 3):
        alpha, beta = chained_pair(sig, lam, p)
        assert F.residual("laplace_eigenform", beta, flat4,
                          {"lam": lam, "case": 1}) < 1e-10
        assert F.residual("laplace_eigenform", alpha, flat4,
                          {"lam": lam, "case": 2}) < 1e-10


def test_maxwell_analogy(flat4):
    sig = flat4.sig
    lam = 0.31
    alpha, beta = chained_pair(sig, lam, 2)
    assert F.residual("maxwell_analogy", [beta, alpha], flat4,
                      {"lam": lam, "case": 1}) < 1e-10
    assert F.residual("maxwell_analogy", [alpha, beta], flat4,
                      {"lam": lam, "case": 2}) < 1e-10


def test_dkp_recombination(flat3):
    # n = 3, p = 2 = (n+1)/2: the chained pair realises the DKP equations
    sig = flat3.sig
    lam = 0.5
    alpha, beta = chained_pair(sig, lam, 2)
    assert F.residual("dkp", [alpha, beta], flat3, {"lam": lam}) < 1e-10
    with pytest.raises(F.ResidualError):
        F.residual("dkp", [alpha, beta], F.make_geometry("flat", Signature(4, 0)),
                   {"lam": lam})


def test_parallel_current(flat3, rng):
    rep = sp.build_rep(flat3.sig)
    form = next(iter(sp.available_adjoint_forms(rep, ("xi", "xi_eta")).values()))
    psi = F.PolySpinorField.constant(rep, rng.normal(size=2) + 1j * rng.normal(size=2))
    for p in range(4):
        cur = F.bilinear_field(psi, psi, form, p)
        if cur.terms:
            assert F.residual("parallel_current", cur, flat3) < 1e-12


def test_ky_integrability_and_special_ky(flat3):
    sig = flat3.sig
    rot = F.PolyFormField(sig, {1: F.Poly.coordinate(3, 2),
                                2: F.Poly.coordinate(3, 1) * (-1.0)})
    assert F.residual("ky_int", rot, flat3) < 1e-12
    assert F.residual("special_ky", rot, flat3, {"c": 0.0}) < 1e-12


def test_cky_integrability_flat(flat4, rng):
    w = F.solve_space(("cky", 2), Signature(4, 0), 2, check_truncation=False).basis[3]
    assert F.residual("cky_int", w, flat4) < 1e-8
    rep = F.cky_third_report(w, flat4)
    assert rep["difference_max_norm"] < 1e-8
    assert "omits" in rep["note"]


def test_normal_cky_on_sphere(sphere3):
    # on the unit sphere every CKY form is normal; use a Killing covector
    # obtained from the conformal group of the chart: rotations around 0
    sig = sphere3.sig
    rot = F.PolyFormField(sig, {1: F.Poly.coordinate(3, 2),
                                2: F.Poly.coordinate(3, 1) * (-1.0)})
    # frame components: rotation covector is e^sigma-weighted in the chart;
    # check it is CKY on the sphere first, then the normal-CKY relations
    def fn(x):
        scale = math.exp(sphere3.sigma.value(x))
        return rot.eval(x) * scale
    wf = F.CallableFormField(sig, fn)
    assert F.residual("cky", wf, sphere3, points=F.sample_points(sphere3, 5)) < 1e-6
    assert F.residual("normal_cky", wf, sphere3,
                      points=F.sample_points(sphere3, 4)) < 2e-5


def test_conformal_laplace_and_potential_form(flat4, rng):
    sig = flat4.sig
    f = F.PolyFormField(sig, {0: F.Poly(4, {(1, 0, 0, 0): 1.0, (2, 0, 0, 0): 0.5,
                                            (0, 2, 0, 0): -0.5})})
    assert F.residual("conformal_laplace", f, flat4) < 1e-12
    alpha = F.PolyFormField(sig, {0b0011: F.Poly.coordinate(4, 3)
                                  * F.Poly.coordinate(4, 4)})
    assert F.residual("potential_form", alpha, flat4) < 1e-12
    with pytest.raises(F.ResidualError):
        F.residual("potential_form",
                   F.PolyFormField.constant(Multivector.basis_vector(sig, 1)), flat4)


def test_gauged_twistor_and_integrability(flat4, rng):
    rep = sp.build_rep(flat4.sig)
    sig = flat4.sig
    kappa = (0.3, -0.2, 0.5, 0.1)
    A = F.PolyFormField(sig, {1 << i: F.Poly.const(4, kappa[i]) for i in range(4)})
    phase = F.Poly.const(4, 1.0, kappa=tuple(-k for k in kappa))
    a = rng.normal(size=4) + 1j * rng.normal(size=4)
    b = rng.normal(size=4) + 1j * rng.normal(size=4)
    tw = twistor_field(rep, a, b)
    hat = tw.scale(phase)
    assert F.residual("gauged_twistor", hat, flat4, {"A": A}) < 1e-10
    assert F.residual("gauged_twistor_int", hat, flat4, {"A": A}) < 1e-6
    assert F.residual("gauged_twistor", tw, flat4, {"A": A}) > 1e-3


def test_gauged_cky_and_laplace(flat4):
    sig = flat4.sig
    kappa = (0.4, 0.0, -0.3, 0.2)
    A = F.PolyFormField(sig, {1 << i: F.Poly.const(4, kappa[i]) for i in range(4)})
    phase = F.Poly.const(4, 1.0, kappa=tuple(-k for k in kappa))
    conf = xvec_field(sig).scale(phase)
    assert F.residual("gauged_cky", conf, flat4, {"A": A}) < 1e-10
    f = F.PolyFormField(sig, {0: F.Poly.coordinate(4, 1)}).scale(phase)
    assert F.residual("gauged_laplace", f, flat4, {"A": A, "gamma": 0.0}) < 1e-10


def test_sugra_residuals(rng):
    sig = Signature(6, 0)
    geom = F.make_geometry("flat", sig)
    H = Multivector.blade(sig, (1, 2, 3), 0.7)
    rep = sp.build_rep(sig)
    eps = F.PolySpinorField.constant(rep, rng.normal(size=8) + 0j)
    # constant spinor: residual equals max_a |1/4 (i_a H).eps|
    got = F.residual("sugra6", eps, geom, {"H": H}, points=[np.zeros(6)])
    expect = max(np.linalg.norm(
        0.25 * sp.act(H.contract_gen(a), eps.eval(np.zeros(6)), rep))
        for a in range(1, 7))
    assert abs(got - expect) < 1e-12
    # linearised form solution is exact at the origin
    w0 = Multivector.blade(sig, (1, 4), 0.8) + Multivector.blade(sig, (2,), -0.2)
    grads = [H.contract_gen(a).cbracket(w0).scale(-0.25) for a in range(1, 7)]
    wf = F.PolyFormField.constant(w0)
    for a, g in enumerate(grads, start=1):
        wf = wf + F.PolyFormField.constant(g).scale(F.Poly.coordinate(6, a))
    assert F.residual("sugra6", wf, geom, {"H": H}, points=[np.zeros(6)]) < 1e-13
    # 11D-type equation, same pattern
    F4 = Multivector.blade(sig, (1, 2, 3, 4), 0.6)
    grads = []
    for a in range(1, 7):
        e_low = Multivector.basis_vector(sig, a).scale(sig.metric(a))
        phi = e_low.cmul(F4) - F4.cmul(e_low).scale(3.0)
        psi_x = F4.cbracket(e_low)
        grads.append(phi.cbracket(w0).scale(-1.0 / 24) - w0.cmul(psi_x).scale(1.0 / 6))
    wf = F.PolyFormField.constant(w0)
    for a, g in enumerate(grads, start=1):
        wf = wf + F.PolyFormField.constant(g).scale(F.Poly.coordinate(6, a))
    assert F.residual("sugra11", wf, geom, {"F": F4}, points=[np.zeros(6)]) < 1e-13


def test_rs_residuals(flat4, rng):
    rep = sp.build_rep(flat4.sig)
    const = [F.PolySpinorField.constant(rep, rng.normal(size=4) + 0j)
             for _ in range(4)]
    Psi = F.SpinorValued1Form(const)
    assert F.residual("rs_field", Psi, flat4) == 0.0
    assert F.residual("rs_lorentz", Psi, flat4) == 0.0
    assert F.residual("rs_lowering_constraint", Psi, flat4) == 0.0
    # rs_trace generally nonzero for random constants
    assert F.residual("rs_trace", Psi, flat4) > 1e-6


def test_missing_params_raise(flat3, rng):
    rep = sp.build_rep(flat3.sig)
    psi = rand_poly_spinor(rep, rng)
    with pytest.raises(F.ResidualError):
        F.residual("massive_dirac", psi, flat3)
    with pytest.raises(F.ResidualError):
        F.residual("bogus_eq", psi, flat3)


def test_residual_report_interface(flat3, rng):
    rep = sp.build_rep(flat3.sig)
    psi = F.PolySpinorField.constant(rep, rng.normal(size=2) + 0j)
    rep_d = F.residual_report("harmonic", psi, flat3, seed=5, tolerance=1e-8)
    assert set(rep_d) == {"equation", "points", "max_residual", "tolerance",
                          "pass", "seed"}
    assert rep_d["pass"] and rep_d["seed"] == 5 and rep_d["points"] == 25


def test_twistor_currents_all_signatures(rng):
    """The twistor equation and the current-CKY theorem are signature-blind."""
    for sig in (Signature(1, 2), Signature(1, 3), Signature(2, 2)):
        geom = F.make_geometry("flat", sig)
        rep = sp.build_rep(sig)
        forms = sp.available_adjoint_forms(rep, ("xi", "xi_eta"))
        a = rng.normal(size=rep.rep_dim) + 1j * rng.normal(size=rep.rep_dim)
        b = rng.normal(size=rep.rep_dim) + 1j * rng.normal(size=rep.rep_dim)
        tw = twistor_field(rep, a, b)
        assert F.residual("twistor", tw, geom) < 1e-12
        for form in forms.values():
            for p in range(1, sig.dim):
                cur = F.bilinear_field(tw, tw, form, p)
                if cur.terms:
                    assert F.residual("cky", cur, geom) < 1e-10
        dim = F.solve_space("twistor", sig, 1, check_truncation=False).dimension
        assert dim == 2 * 2 ** (sig.dim // 2)


def test_sphere_killing_spinors_satisfy_twistor_integrability(sphere3):
    # Killing spinors are twistor spinors; on the unit sphere they must
    # pass the twistor equation and its first two integrability conditions
    lam = 0.5j
    fields, _ = F.sphere_killing_spinors(sphere3, lam, count=30, seed=4)
    assert fields
    pts = F.sample_points(sphere3, 4, seed=5)
    psi = fields[0]
    assert F.residual("twistor", psi, sphere3, points=pts) < 1e-5
    assert F.residual("twistor_int_1", psi, sphere3, points=pts) < 1e-4
    assert F.residual("twistor_int_3", psi, sphere3, points=pts) < 1e-5
    assert F.residual("killing_scalar", [], sphere3, {"lam": lam}, points=pts) < 1e-6
