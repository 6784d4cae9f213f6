import pytest

from spingeo.algebra import Signature
from spingeo import fields as F


def test_ky_dimensions_match_count_formula():
    for n in range(2, 6):
        sig = Signature(n, 0)
        for p in range(1, n):
            space = F.solve_space(("ky", p), sig, 1, check_truncation=False)
            assert space.dimension == F.ky_count(n, p)
            assert max(space.residuals) < 1e-9


def test_cky_dimensions_match_count_formula():
    for n in range(2, 5):
        sig = Signature(n, 0)
        for p in range(1, n):
            space = F.solve_space(("cky", p), sig, 2, check_truncation=False)
            assert space.dimension == F.cky_count(n, p)


def test_cky_minus_ky_count():
    assert F.cky_minus_ky_count(3, 1) == 10 - 6
    for n in range(2, 5):
        for p in range(1, n):
            assert F.cky_minus_ky_count(n, p) == F.cky_count(n, p) - F.ky_count(n, p)


def test_twistor_dimension():
    for n in (2, 3, 4):
        space = F.solve_space("twistor", Signature(n, 0), 1, check_truncation=False)
        assert space.dimension == 2 * 2 ** (n // 2)


def test_parallel_spinor_dimension():
    space = F.solve_space("parallel_spinor", Signature(3, 0), 1,
                          check_truncation=False)
    assert space.dimension == 2   # only constants


def test_lorentzian_ky_counts():
    # the count formula is signature-independent on flat charts
    sig = Signature(1, 2)
    space = F.solve_space(("ky", 1), sig, 1, check_truncation=False)
    assert space.dimension == F.ky_count(3, 1)


def test_truncation_flag():
    with pytest.raises(ValueError):
        F.solve_space(("cky", 1), Signature(3, 0), 1)   # below the minimum degree
    full = F.solve_space(("cky", 1), Signature(3, 0), 2)
    assert not full.possibly_truncated
    ky_full = F.solve_space(("ky", 1), Signature(3, 0), 1)
    assert not ky_full.possibly_truncated
    harm = F.solve_space("harmonic_poly", Signature(2, 0), 2)
    assert harm.possibly_truncated   # harmonic spaces grow with degree


def test_degree_validation():
    with pytest.raises(ValueError):
        F.solve_space(("cky", 1), Signature(3, 0), 1.5)
    with pytest.raises(ValueError):
        F.solve_space(("ky", 0), Signature(3, 0), 1)
    with pytest.raises(ValueError):
        F.solve_space("bogus", Signature(3, 0), 1)


def test_basis_residuals_recheck():
    space = F.solve_space(("ky", 2), Signature(4, 0), 1, check_truncation=False)
    geom = F.make_geometry("flat", Signature(4, 0))
    for w in space.basis:
        assert F.residual("ky", w, geom) < 1e-9


def test_solution_space_json():
    space = F.solve_space(("ky", 1), Signature(2, 0), 1, check_truncation=False)
    data = space.to_json()
    assert data["dimension"] == 3
    assert data["equation"] == "ky(1)"
    assert len(data["basis"]) == 3
    for entry in data["basis"]:
        for blade_key, poly in entry.items():
            for exps, (re, im) in poly.items():
                assert isinstance(re, float) and isinstance(im, float)


def test_hodge_duality_of_solution_spaces():
    geom = F.make_geometry("flat", Signature(4, 0))
    for p in (1, 2, 3):
        for w in F.solve_space(("ky", p), Signature(4, 0), 1,
                               check_truncation=False).basis:
            assert F.residual("ccky", w.hodge(), geom) < 1e-8
            # and back again: ** is proportional to the identity
            assert F.residual("ky", w.hodge().hodge(), geom) < 1e-8


def test_sphere_killing_spinors():
    geom = F.make_geometry("conformally_flat", Signature(3, 0), F.sphere_sigma(3))
    fields, _ = F.sphere_killing_spinors(geom, 0.5j, count=30, seed=2)
    assert len(fields) >= 1
    pts = F.sample_points(geom, 6, seed=3)
    for fld in fields:
        assert F.residual("killing", fld, geom, {"lam": 0.5j}, points=pts) < 1e-6


def test_lorentzian_cky_counts():
    space = F.solve_space(("cky", 1), Signature(1, 2), 2, check_truncation=False)
    assert space.dimension == F.cky_count(3, 1)


def test_no_spurious_solutions_at_higher_degree():
    # the CKY space on flat charts saturates at degree 2; degree 3 must not
    # add spurious null vectors
    space = F.solve_space(("cky", 1), Signature(3, 0), 3, check_truncation=False)
    assert space.dimension == F.cky_count(3, 1)
    space = F.solve_space(("ky", 2), Signature(4, 0), 2, check_truncation=False)
    assert space.dimension == F.ky_count(4, 2)
