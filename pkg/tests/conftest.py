import numpy as np
import pytest

from spingeo.algebra import Signature
from spingeo import fields as F


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


@pytest.fixture
def flat3():
    return F.make_geometry("flat", Signature(3, 0))


@pytest.fixture
def flat4():
    return F.make_geometry("flat", Signature(4, 0))


@pytest.fixture
def sphere3():
    return F.make_geometry("conformally_flat", Signature(3, 0), F.sphere_sigma(3))


def rand_poly_form(sig, rng, deg=2, grades=None):
    from itertools import product
    from spingeo.algebra import all_blades, blade_grade
    n = sig.dim
    exps = [e for e in product(range(deg + 1), repeat=n) if sum(e) <= deg]
    terms = {}
    for b in all_blades(n):
        if grades is not None and blade_grade(b) not in grades:
            continue
        terms[b] = F.Poly(n, {e: complex(rng.uniform(-1, 1), rng.uniform(-1, 1))
                              for e in exps})
    return F.PolyFormField(sig, terms)


def rand_poly_spinor(rep, rng, deg=2):
    from itertools import product
    n = rep.sig.dim
    exps = [e for e in product(range(deg + 1), repeat=n) if sum(e) <= deg]
    comps = [F.Poly(n, {e: complex(rng.uniform(-1, 1), rng.uniform(-1, 1))
                        for e in exps}) for _ in range(rep.rep_dim)]
    return F.PolySpinorField(rep, comps)


def twistor_field(rep, a_col, b_col):
    """psi = a + x~.b on a flat chart (x~ the lowered coordinate 1-form)."""
    n = rep.sig.dim
    base = F.PolySpinorField.constant(rep, a_col)
    xlow = F.PolyFormField(rep.sig, {1 << i: F.Poly.coordinate(n, i + 1)
                                     * float(rep.sig.metric(i + 1))
                                     for i in range(n)})
    return base + F.PolySpinorField.constant(rep, b_col).act_form(xlow)
