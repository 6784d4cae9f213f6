import json

import pytest

from spingeo.algebra import (
    Multivector,
    QC,
    Signature,
    SignatureMismatch,
    all_blades,
    blade_bits,
    blade_indices,
    random_multivector,
)

E3 = Signature(3, 0)


def mv(indices, c=1.0, sig=E3):
    return Multivector.blade(sig, indices, c)


def test_wedge_antisymmetry_and_signs():
    e1, e2 = mv((1,)), mv((2,))
    assert e1.wedge(e1).norm() == 0
    assert e1.wedge(e2) == mv((1, 2))
    assert e2.wedge(e1) == mv((1, 2), -1.0)


def test_wedge_bilinearity_example():
    # (e1 + e2) ^ e23 = e123 in dim 3 (e2 ^ e23 = 0)
    lhs = (mv((1,)) + mv((2,))).wedge(mv((2, 3)))
    assert lhs == mv((1, 2, 3))


def test_wedge_degree_overflow_vanishes(rng):
    a = random_multivector(E3, rng, grades=(2,))
    b = random_multivector(E3, rng, grades=(2,))
    assert a.wedge(b).norm() == 0


def test_interior_metric_contraction():
    sig = Signature(1, 2)   # g(1)=+1, g(2)=g(3)=-1
    e1 = Multivector.basis_vector(sig, 1)
    e3 = Multivector.basis_vector(sig, 3)
    assert e1.interior(e1) == Multivector.scalar(sig, 1.0)
    assert e3.interior(e3) == Multivector.scalar(sig, -1.0)
    e12 = Multivector.blade(sig, (1, 2))
    assert e12.interior(e1) == Multivector.basis_vector(sig, 2)


def test_interior_antiderivation_and_nilpotence(rng):
    v = random_multivector(E3, rng, grades=(1,))
    a = random_multivector(E3, rng, grades=(2,))
    b = random_multivector(E3, rng, grades=(1,))
    lhs = a.wedge(b).interior(v)
    rhs = a.interior(v).wedge(b) + a.wedge(b.interior(v))   # p = 2 even
    assert (lhs - rhs).norm() < 1e-13
    w = random_multivector(E3, rng)
    assert w.interior(v).interior(v).norm() < 1e-13


def test_cmul_generator_relations():
    for sig in (E3, Signature(1, 3), Signature(2, 2)):
        for a in range(1, sig.dim + 1):
            for b in range(1, sig.dim + 1):
                ea = Multivector.basis_vector(sig, a)
                eb = Multivector.basis_vector(sig, b)
                anti = ea.cmul(eb) + eb.cmul(ea)
                expect = Multivector.scalar(sig, 2.0 * (sig.metric(a) if a == b else 0))
                assert (anti - expect).norm() < 1e-14


def test_cmul_expansion_rules(rng):
    for sig in (E3, Signature(2, 1)):
        for _ in range(20):
            x = random_multivector(sig, rng, grades=(1,))
            w = random_multivector(sig, rng)
            assert (x.cmul(w) - x.wedge(w) - w.interior(x)).norm() < 1e-12
            ew = w.involute_eta()
            assert (w.cmul(x) - x.wedge(ew) + ew.interior(x)).norm() < 1e-12


def test_cmul_sandwich_identity(rng):
    # e^a . w . e_a = (-1)^p (n - 2p) w
    for sig in (E3, Signature(4, 0), Signature(1, 3)):
        n = sig.dim
        w = random_multivector(sig, rng)
        for p in range(n + 1):
            wp = w.grade(p)
            acc = Multivector.zero(sig)
            for a in range(1, n + 1):
                ea = Multivector.basis_vector(sig, a)
                acc = acc + ea.cmul(wp).cmul(ea.scale(sig.metric(a)))
            assert (acc - wp.scale((-1.0) ** p * (n - 2 * p))).norm() < 1e-11


def test_associativity_float_and_exact(rng):
    for _ in range(30):
        a = random_multivector(E3, rng)
        b = random_multivector(E3, rng)
        c = random_multivector(E3, rng)
        assert (a.cmul(b).cmul(c) - a.cmul(b.cmul(c))).norm() < 1e-12
    sig = Signature(2, 1)
    ra = Multivector(sig, {b: QC(int(rng.integers(-4, 5)), int(rng.integers(-4, 5)))
                           for b in all_blades(3)}, exact=True)
    rb = Multivector(sig, {b: QC(int(rng.integers(-4, 5))) for b in all_blades(3)},
                     exact=True)
    rc = Multivector(sig, {b: QC(0, int(rng.integers(-4, 5))) for b in all_blades(3)},
                     exact=True)
    assert ra.cmul(rb).cmul(rc) == ra.cmul(rb.cmul(rc))


def test_involutions():
    e1, e12 = mv((1,)), mv((1, 2))
    assert e12.involute_eta() == e12
    assert e1.involute_eta() == e1.scale(-1)
    assert e12.involute_xi() == e12.scale(-1)
    e123 = mv((1, 2, 3))
    # xi(e1.e2.e3) = e3.e2.e1
    rev = mv((3,)).cmul(mv((2,))).cmul(mv((1,)))
    assert e123.involute_xi() == rev


def test_involution_morphisms(rng):
    a = random_multivector(E3, rng)
    b = random_multivector(E3, rng)
    assert (a.cmul(b).involute_xi()
            - b.involute_xi().cmul(a.involute_xi())).norm() < 1e-12
    assert (a.cmul(b).involute_eta()
            - a.involute_eta().cmul(b.involute_eta())).norm() < 1e-12
    assert (a.involute_xi().involute_xi() - a).norm() == 0
    assert (a.involute_eta().involute_eta() - a).norm() == 0


def test_xi_sign_equals_reversion_sign():
    # (-1)^floor(p/2) agrees with (-1)^(p(p-1)/2) on every grade
    for p in range(12):
        assert (-1) ** (p // 2) == (-1) ** (p * (p - 1) // 2)


def test_hodge_examples_and_double_law(rng):
    assert mv((1,)).hodge() == mv((2, 3))
    assert Multivector.scalar(E3, 1.0).hodge() == mv((1, 2, 3))
    sig = Signature(4, 0)
    w = random_multivector(sig, rng, grades=(2,))
    assert (w.hodge().hodge() - w).norm() < 1e-13
    lor = Signature(1, 3)
    for p in range(5):
        w = random_multivector(lor, rng, grades=(p,))
        expect = w.scale((-1.0) ** (p * (4 - p)) * lor.metric_det_sign())
        assert (w.hodge().hodge() - expect).norm() < 1e-12


def test_grade_projection(rng):
    a = Multivector.scalar(E3, 1.0) + mv((1,)) + mv((1, 2))
    assert a.grade(1) == mv((1,))
    assert a.grade(1).grade(1) == a.grade(1)
    w3 = mv((1, 2, 3), 2.5)
    assert w3.degree_pi() == w3.scale(3)
    total = Multivector.zero(E3)
    r = random_multivector(E3, rng)
    for p in range(4):
        total = total + r.grade(p)
    assert (total - r).norm() == 0


def test_cbracket(rng):
    e1, e12 = mv((1,)), mv((1, 2))
    assert e1.cbracket(e1).norm() == 0
    assert e12.cbracket(e1) == mv((2,), -2.0)
    for _ in range(10):
        a = random_multivector(E3, rng)
        b = random_multivector(E3, rng)
        c = random_multivector(E3, rng)
        jac = a.cbracket(b.cbracket(c)) + b.cbracket(c.cbracket(a)) \
            + c.cbracket(a.cbracket(b))
        assert jac.norm() < 1e-12


def test_signature_mismatch_raises():
    a = Multivector.basis_vector(E3, 1)
    b = Multivector.basis_vector(Signature(2, 1), 1)
    with pytest.raises(SignatureMismatch):
        a.cmul(b)
    with pytest.raises(SignatureMismatch):
        a.wedge(b)


def test_blade_encoding_roundtrip():
    assert blade_indices(blade_bits((1, 3, 5))) == (1, 3, 5)
    with pytest.raises(ValueError):
        blade_bits((2, 1))


def test_signature_paper_translation():
    sig = Signature(pos=3, neg=2)
    assert sig.to_ns() == (2, 3)
    assert Signature.from_ns(2, 3) == sig


def test_json_roundtrip_lossless(rng):
    a = random_multivector(Signature(2, 2), rng)
    data = json.loads(json.dumps(a.to_json()))
    b = Multivector.from_json(data)
    assert a == b


def test_exact_mode_operations():
    sig = Signature(2, 1)
    e1 = Multivector.basis_vector(sig, 1, exact=True)
    e3 = Multivector.basis_vector(sig, 3, exact=True)
    w = e1.wedge(e3) + Multivector.blade(sig, (2,), QC(1, 2), exact=True)
    # ** law holds exactly
    p2 = w.grade(2)
    assert p2.hodge().hodge() == p2.scale(QC((-1) ** (2 * 1) * sig.metric_det_sign()))
    # Clifford expansion x.w = x ^ w + i_x~ w with exact coefficients
    lhs = e3.cmul(w)
    rhs = e3.wedge(w) + w.interior(e3)
    assert lhs == rhs
    # interior carries the metric sign exactly
    assert e3.interior(e3) == Multivector.scalar(sig, QC(-1), exact=True)
