import numpy as np
import pytest

from spingeo.algebra import Signature, random_multivector
from spingeo import fields as F

from conftest import rand_poly_form


def test_sn_reduces_to_lie_bracket(flat3):
    sig = flat3.sig
    k1 = F.PolyFormField(sig, {1: F.Poly.const(3, 1.0)})              # d/dx1
    k2 = F.PolyFormField(sig, {1: F.Poly.coordinate(3, 2),
                               2: F.Poly.coordinate(3, 1) * (-1.0)})  # x2 d1 - x1 d2
    out = F.sn_bracket(k1, k2, flat3)
    expect = F.PolyFormField(sig, {2: F.Poly.const(3, -1.0)})
    for x in F.sample_points(flat3, 8, seed=2):
        assert (out.eval(x) - expect.eval(x)).norm() < 1e-13


def test_sn_graded_symmetry_and_jacobi(flat3, rng):
    for _ in range(8):
        p, q, r = (int(v) for v in rng.integers(1, 3, size=3))
        a = rand_poly_form(flat3.sig, rng, deg=2, grades=(p,))
        b = rand_poly_form(flat3.sig, rng, deg=2, grades=(q,))
        c = rand_poly_form(flat3.sig, rng, deg=2, grades=(r,))
        ab = F.sn_bracket(a, b, flat3)
        ba = F.sn_bracket(b, a, flat3)
        jac = F.sn_bracket(a, F.sn_bracket(b, c, flat3), flat3) \
            .scale((-1.0) ** (p * (r + 1)))
        jac = jac + F.sn_bracket(b, F.sn_bracket(c, a, flat3), flat3) \
            .scale((-1.0) ** (q * (p + 1)))
        jac = jac + F.sn_bracket(c, F.sn_bracket(a, b, flat3), flat3) \
            .scale((-1.0) ** (r * (q + 1)))
        for x in F.sample_points(flat3, 4, seed=3):
            assert (ab.eval(x) - ba.eval(x).scale((-1.0) ** (p * q))).norm() < 1e-10
            assert jac.eval(x).norm() < 1e-10


def test_sn_self_bracket_of_killing_covector(flat3):
    k = F.PolyFormField(flat3.sig, {1: F.Poly.coordinate(3, 2),
                                    2: F.Poly.coordinate(3, 1) * (-1.0)})
    out = F.sn_bracket(k, k, flat3)
    for x in F.sample_points(flat3, 5, seed=4):
        assert out.eval(x).norm() < 1e-13


def test_sn_closure_on_ky_forms(flat3, rng):
    basis = F.solve_space(("ky", 2), flat3.sig, 1, check_truncation=False).basis
    for _ in range(10):
        i, j = rng.integers(0, len(basis), size=2)
        br = F.sn_bracket(basis[int(i)], basis[int(j)], flat3)
        if br.terms:
            assert F.residual("ky", br, flat3) < 1e-8


def test_cky_bracket_closure(flat3, rng):
    c1 = F.solve_space(("cky", 1), flat3.sig, 2, check_truncation=False).basis
    c2 = F.solve_space(("cky", 2), flat3.sig, 2, check_truncation=False).basis
    for _ in range(8):
        i = int(rng.integers(0, len(c1)))
        j = int(rng.integers(0, len(c2)))
        br = F.cky_bracket(c1[i], c2[j], flat3)
        if br.terms:
            assert F.residual("cky", br, flat3) < 1e-8
        br11 = F.cky_bracket(c1[i], c1[(i + 1) % len(c1)], flat3)
        if br11.terms:
            assert F.residual("cky", br11, flat3) < 1e-8


def test_ky_bracket_commutator_identity(flat3, rng):
    """[L_w1, L_w2] psi = L_[w1,w2]_KY psi on Killing spinors (lam = 0, flat)."""
    from spingeo import spinors as sp
    rep = sp.build_rep(flat3.sig)
    basis = F.solve_space(("ky", 1), flat3.sig, 1, check_truncation=False).basis
    psi = F.PolySpinorField.constant(rep, rng.normal(size=2) + 1j * rng.normal(size=2))
    w1, w2 = basis[3], basis[4]
    l1l2 = F.symmetry("dirac_massive_KY", w1,
                      F.symmetry("dirac_massive_KY", w2, psi, flat3), flat3)
    l2l1 = F.symmetry("dirac_massive_KY", w2,
                      F.symmetry("dirac_massive_KY", w1, psi, flat3), flat3)
    bracket = F.ky_bracket(w1, w2, flat3)
    lb = F.symmetry("dirac_massive_KY", bracket, psi, flat3, check_tol=None)
    for x in F.sample_points(flat3, 6, seed=6):
        comm = l1l2.eval(x) - l2l1.eval(x)
        assert np.abs(comm - lb.eval(x)).max() < 1e-10


def test_ky_bracket_dimension_guard(rng):
    sig = Signature(6, 0)
    geom = F.make_geometry("flat", sig)
    a = rand_poly_form(sig, rng, deg=1, grades=(2,))
    with pytest.raises(ValueError):
        F.ky_bracket(a, a, geom)


def test_clifford_bracket_field(flat3, rng):
    a = rand_poly_form(flat3.sig, rng, deg=1)
    b = rand_poly_form(flat3.sig, rng, deg=1)
    out = F.clifford_bracket(a, b, flat3)
    for x in F.sample_points(flat3, 4, seed=7):
        expect = a.eval(x).cbracket(b.eval(x))
        assert (out.eval(x) - expect).norm() < 1e-12


def test_bracket_dispatcher(flat3, rng):
    a = rand_poly_form(flat3.sig, rng, deg=1, grades=(1,))
    b = rand_poly_form(flat3.sig, rng, deg=1, grades=(1,))
    for kind in ("SN", "CKY", "KY", "Clifford"):
        F.bracket(kind, a, b, flat3)
    with pytest.raises(ValueError):
        F.bracket("bogus", a, b, flat3)


def test_clifford_bracket_derivation_identity(rng):
    sig = Signature(4, 0)
    for _ in range(20):
        B = random_multivector(sig, rng, grades=(2,))
        w1 = random_multivector(sig, rng)
        w2 = random_multivector(sig, rng)
        lhs = B.cbracket(w1.cbracket(w2))
        rhs = B.cbracket(w1).cbracket(w2) + w1.cbracket(B.cbracket(w2))
        assert (lhs - rhs).norm() < 1e-12


def test_cky_bracket_graded_properties(flat3, rng):
    """Graded antisymmetry and Jacobi hold on CKY solutions."""
    c1 = F.solve_space(("cky", 1), flat3.sig, 2, check_truncation=False).basis
    c2 = F.solve_space(("cky", 2), flat3.sig, 2, check_truncation=False).basis
    pts = F.sample_points(flat3, 5, seed=0)
    for _ in range(6):
        i, j = int(rng.integers(0, len(c1))), int(rng.integers(0, len(c2)))
        ab = F.cky_bracket(c1[i], c2[j], flat3)
        ba = F.cky_bracket(c2[j], c1[i], flat3)
        for x in pts:
            assert (ab.eval(x) - ba.eval(x)).norm() < 1e-10   # (-1)^{1*2} = +1
    for _ in range(4):
        i, j, k = (int(v) for v in rng.integers(0, len(c1), size=3))
        a, b, c = c1[i], c1[j], c1[k]
        jac = F.cky_bracket(a, F.cky_bracket(b, c, flat3), flat3)
        jac = jac + F.cky_bracket(b, F.cky_bracket(c, a, flat3), flat3)
        jac = jac + F.cky_bracket(c, F.cky_bracket(a, b, flat3), flat3)
        for x in pts:
            assert jac.eval(x).norm() < 1e-10
