"""Graded brackets on form fields: Schouten-Nijenhuis, CKY, KY, Clifford.

For a p-form a and q-form b,

    [a, b]_SN  = i_{X^c} a ^ nabla_{X_c} b + (-1)^{pq} i_{X^c} b ^ nabla_{X_c} a

is a (p+q-1)-form reducing to the vector Lie bracket at p = q = 1.  The
CKY bracket is its four-term modification closing on conformal
Killing-Yano forms; the KY bracket (valid for dim <= 5) is the SN
combination that also satisfies the operator-commutator identity; the
Clifford bracket is the pointwise commutator a.b - b.a.
"""

from __future__ import annotations

from .base import (
    FormField,
    form_add,
    form_cmul,
    form_contract_gen,
    form_scale,
    form_wedge,
    homogeneous_degree,
)
from .calculus import coderivative, covd, exterior_d
from .geometry import Geometry


def sn_bracket(w1: FormField, w2: FormField, geom: Geometry) -> FormField:
    from .base import PolyFormField
    if isinstance(w1, PolyFormField) and not w1.terms:
        return w1
    if isinstance(w2, PolyFormField) and not w2.terms:
        return w2
    p = homogeneous_degree(w1)
    q = homogeneous_degree(w2)
    sig = geom.sig
    out = None
    for c in range(1, sig.dim + 1):
        g = sig.metric(c)
        t1 = form_scale(form_wedge(form_contract_gen(w1, c), covd(w2, c, geom)), g)
        t2 = form_scale(form_wedge(form_contract_gen(w2, c), covd(w1, c, geom)),
                        g * (-1.0) ** (p * q))
        piece = form_add(t1, t2)
        out = piece if out is None else form_add(out, piece)
    return out


def cky_bracket(w1: FormField, w2: FormField, geom: Geometry) -> FormField:
    p = homogeneous_degree(w1)
    q = homogeneous_degree(w2)
    sig = geom.sig
    n = sig.dim
    dw1 = exterior_d(w1, geom)
    dw2 = exterior_d(w2, geom)
    sw1 = coderivative(w1, geom)
    sw2 = coderivative(w2, geom)
    out = None
    for c in range(1, n + 1):
        g = sig.metric(c)
        t1 = form_scale(form_wedge(form_contract_gen(w1, c), form_contract_gen(dw2, c)),
                        g / (q + 1.0))
        t2 = form_scale(form_wedge(form_contract_gen(dw1, c), form_contract_gen(w2, c)),
                        g * (-1.0) ** p / (p + 1.0))
        piece = form_add(t1, t2)
        out = piece if out is None else form_add(out, piece)
    out = form_add(out, form_scale(form_wedge(w1, sw2), (-1.0) ** p / (n - q + 1.0)))
    out = form_add(out, form_scale(form_wedge(sw1, w2), 1.0 / (n - p + 1.0)))
    return out


def ky_bracket(w1: FormField, w2: FormField, geom: Geometry) -> FormField:
    """Lie bracket for KY forms; stated validity dim <= 5."""
    sig = geom.sig
    n = sig.dim
    if n > 5:
        raise ValueError("the KY bracket is defined for dim <= 5")
    p = homogeneous_degree(w1)
    q = homogeneous_degree(w2)
    out = form_scale(sn_bracket(w1, w2, geom), p * q / (p + q - 1.0))
    if p < 2 or q < 2:
        return out   # the double contraction annihilates forms of grade < 2
    corr = None
    for a in range(1, n + 1):
        for b in range(1, n + 1):
            u = form_contract_gen(form_contract_gen(w1, b), a)
            v = form_contract_gen(form_contract_gen(w2, b), a)
            g = sig.metric(a) * sig.metric(b)
            piece = form_scale(sn_bracket(u, v, geom), g)
            corr = piece if corr is None else form_add(corr, piece)
    return form_add(out, form_scale(corr, -p * q / (p + q + 0.0)))


def clifford_bracket(w1: FormField, w2: FormField, geom: Geometry) -> FormField:
    ab = form_cmul(w1, w2)
    ba = form_cmul(w2, w1)
    return form_add(ab, form_scale(ba, -1.0))


def bracket(kind: str, w1: FormField, w2: FormField, geom: Geometry) -> FormField:
    if kind == "SN":
        return sn_bracket(w1, w2, geom)
    if kind == "CKY":
        return cky_bracket(w1, w2, geom)
    if kind == "KY":
        return ky_bracket(w1, w2, geom)
    if kind == "Clifford":
        return clifford_bracket(w1, w2, geom)
    raise ValueError(f"unknown bracket kind {kind!r}")
