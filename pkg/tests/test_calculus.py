import numpy as np
import pytest

from spingeo.algebra import Multivector
from spingeo import fields as F
from spingeo import spinors as sp

from conftest import rand_poly_form, rand_poly_spinor, twistor_field


def test_d_example(flat3):
    sig = flat3.sig
    # d(x1 dx2) = dx1 ^ dx2
    w = F.PolyFormField(sig, {0b010: F.Poly.coordinate(3, 1)})
    dw = F.exterior_d(w, flat3)
    x = np.array([0.2, 0.5, -0.1])
    assert (dw.eval(x) - Multivector.blade(sig, (1, 2))).norm() < 1e-14


def test_delta_example(flat3):
    # delta(x1 dx1) = -1 on flat Euclidean space
    sig = flat3.sig
    w = F.PolyFormField(sig, {0b001: F.Poly.coordinate(3, 1)})
    sw = F.coderivative(w, flat3)
    x = np.array([0.4, 0.1, 0.9])
    assert abs(complex(sw.eval(x).scalar_part()) + 1.0) < 1e-14


def test_operator_identities_flat(flat4, rng):
    pts = F.sample_points(flat4, 10, seed=2)
    for _ in range(10):
        w = rand_poly_form(flat4.sig, rng, deg=2)
        dd = F.exterior_d(F.exterior_d(w, flat4), flat4)
        ss = F.coderivative(F.coderivative(w, flat4), flat4)
        hd = F.hodge_de_rham(w, flat4)
        dm = F.exterior_d(w, flat4)
        sm = F.coderivative(w, flat4)
        lap = F.laplace_beltrami(w, flat4)
        ds = F.exterior_d(F.coderivative(w, flat4), flat4)
        sd = F.coderivative(F.exterior_d(w, flat4), flat4)
        for x in pts[:4]:
            assert dd.eval(x).norm() < 1e-12
            assert ss.eval(x).norm() < 1e-12
            assert (hd.eval(x) - dm.eval(x) + sm.eval(x)).norm() < 1e-12
            assert (lap.eval(x) + ds.eval(x) + sd.eval(x)).norm() < 1e-12


def test_slw_flat_and_sphere(flat4, sphere3, rng):
    psi = rand_poly_spinor(sp.build_rep(flat4.sig), rng, deg=3)
    assert F.residual("slw", psi, flat4) < 1e-10
    psis = rand_poly_spinor(sp.build_rep(sphere3.sig), rng, deg=1)
    assert F.residual("slw", psis, sphere3,
                      points=F.sample_points(sphere3, 6, seed=4)) < 1e-6


def test_twistor_operator_kills_twistor_fields(flat4, rng):
    rep = sp.build_rep(flat4.sig)
    a = rng.normal(size=4) + 1j * rng.normal(size=4)
    b = rng.normal(size=4) + 1j * rng.normal(size=4)
    psi = twistor_field(rep, a, b)
    for direction in range(1, 5):
        out = F.twistor_op(psi, direction, flat4)
        for x in F.sample_points(flat4, 5, seed=1):
            assert np.abs(out.eval(x)).max() < 1e-12


def test_laplacian_on_spinors_flat(flat3, rng):
    rep = sp.build_rep(flat3.sig)
    psi = rand_poly_spinor(rep, rng, deg=2)
    lap = F.spinor_laplacian(psi, flat3)
    # compare against explicit second partials
    for x in F.sample_points(flat3, 5, seed=8):
        expect = np.zeros(rep.rep_dim, dtype=complex)
        for a in range(1, 4):
            expect += psi.partial(a).partial(a).eval(x)
        assert np.abs(lap.eval(x) - expect).max() < 1e-12


def test_gauged_reduces_to_ungauged(flat4, rng):
    sig = flat4.sig
    A0 = F.PolyFormField(sig, {1: F.Poly.const(4, 0.0)})
    w = rand_poly_form(sig, rng, deg=2)
    psi = rand_poly_spinor(sp.build_rep(sig), rng, deg=2)
    pts = F.sample_points(flat4, 6, seed=3)
    for x in pts:
        assert (F.gauged_d(w, flat4, A0).eval(x)
                - F.exterior_d(w, flat4).eval(x)).norm() == 0
        assert (F.gauged_coderivative(w, flat4, A0).eval(x)
                - F.coderivative(w, flat4).eval(x)).norm() == 0
        assert np.abs(F.gauged_dirac(psi, flat4, A0).eval(x)
                      - F.dirac(psi, flat4).eval(x)).max() == 0


def test_gauged_d_squared_is_curvature(flat4, rng):
    sig = flat4.sig
    A = F.PolyFormField(sig, {1: F.Poly.monomial(4, (0, 2, 0, 0)),
                              4: F.Poly.coordinate(4, 1)})
    Fcur = F.gauge_curvature(A, flat4)
    pts = F.sample_points(flat4, 8, seed=6)
    for _ in range(5):
        w = rand_poly_form(sig, rng, deg=2)
        dd = F.gauged_d(F.gauged_d(w, flat4, A), flat4, A)
        fw = Fcur.wedge(w)
        for x in pts:
            assert (dd.eval(x) - fw.eval(x)).norm() < 1e-10


def test_gauged_delta_squared_contraction(flat4, rng):
    # delta-hat^2 w = sum_{a,b} (d^a A^b) i_a(i_b w): a pure curvature
    # contraction (the symmetric part of dA cancels against i_a i_b = 0)
    sig = flat4.sig
    A = F.PolyFormField(sig, {1: F.Poly.coordinate(4, 2),
                              4: F.Poly.monomial(4, (0, 0, 2, 0))})
    w = rand_poly_form(sig, rng, deg=2, grades=(3,))
    ss = F.gauged_coderivative(F.gauged_coderivative(w, flat4, A), flat4, A)
    for x in F.sample_points(flat4, 5, seed=5):
        wx = w.eval(x)
        expect = Multivector.zero(sig)
        for a in range(1, 5):
            for b in range(1, 5):
                dab = complex(A.component(1 << (b - 1)).partial(a).eval(x))
                if dab:
                    expect = expect + wx.contract_gen(b).contract_gen(a) \
                        .scale(dab * sig.metric(a) * sig.metric(b))
        assert (ss.eval(x) - expect).norm() < 1e-10


def test_gauged_dispatch_validates_grade(flat4, rng):
    bad = rand_poly_form(flat4.sig, rng, deg=1, grades=(2,))
    w = rand_poly_form(flat4.sig, rng, deg=1)
    with pytest.raises(ValueError):
        F.gauged("d", bad, w, flat4)


def test_diffop_dispatcher(flat3, rng):
    w = rand_poly_form(flat3.sig, rng, deg=2)
    x = np.array([0.1, -0.2, 0.3])
    assert (F.diffop("d", w, flat3, x) - F.exterior_d(w, flat3).eval(x)).norm() == 0
    psi = rand_poly_spinor(sp.build_rep(flat3.sig), rng, deg=1)
    out = F.diffop(("twistor", 2), psi, flat3, x)
    expect = F.twistor_op(psi, 2, flat3).eval(x)
    assert np.abs(out - expect).max() == 0
    with pytest.raises(ValueError):
        F.diffop("bogus", w, flat3)


def test_fd_path_matches_exact(flat3, rng):
    # opaque evaluator wrapping a polynomial field: FD derivative ~ exact
    sig = flat3.sig
    w = rand_poly_form(sig, rng, deg=2)
    opaque = F.CallableFormField(sig, w.eval)
    d_exact = F.exterior_d(w, flat3)
    d_fd = F.exterior_d(opaque, flat3)
    for x in F.sample_points(flat3, 5, seed=11):
        assert (d_exact.eval(x) - d_fd.eval(x)).norm() < 1e-9


def test_rs_operators_flat(flat4, rng):
    rep = sp.build_rep(flat4.sig)
    comps = [rand_poly_spinor(rep, rng, deg=1) for _ in range(4)]
    Psi = F.SpinorValued1Form(comps)
    out = F.rs_dirac(Psi, flat4)
    x = np.array([0.2, 0.1, -0.3, 0.4])
    for c in range(4):
        expect = F.dirac(comps[c], flat4).eval(x)
        assert np.abs(out.comps[c].eval(x) - expect).max() < 1e-12
