"""Differential operators on form and spinor fields.

Every operator takes fields to fields so compositions (d delta, Dirac
squared, twistor after symmetry operators, ...) build up naturally.  On a
flat geometry, polynomial inputs produce polynomial outputs and the whole
composition stays exact; on curved charts the first covariant derivative
is exact at each point (polynomial partials plus analytic connection) and
deeper derivatives fall back to finite differences.

Operator dictionary (frame indices; X_a frame vectors, e^a coframe):

    d          = e^a ^ nabla_{X_a}
    delta      = -i_{X^a} nabla_{X_a}
    dslash     = d - delta                  (Hodge-de Rham, forms)
    Dslash     = e^a . nabla_{X_a}          (Dirac, spinors)
    P_X        = nabla_X - (1/n) X~ . Dslash   (twistor)
    Delta      = -d delta - delta d         (forms) / nabla^2 (spinors)

Gauged versions add the U(1) potential A:  nabla^ = nabla + i_X A,
d^ = d + A^, delta^ = delta - i_{A~}, Dslash^ = Dslash + A.
"""

from __future__ import annotations

import numpy as np

from ..algebra import Multivector
from .. import spinors as _sp
from .base import (
    CallableFormField,
    CallableSpinorField,
    FormField,
    PolyFormField,
    PolySpinorField,
    SpinorField,
    act_on_spinor_field,
    form_add,
    form_scale,
    spinor_add,
    spinor_scale,
)
from .geometry import Geometry


def _conn_act_form(mv: Multivector, w_mixed: np.ndarray, c: int) -> Multivector:
    """Connection action on a form: -omega^a_b(X_c) e^b ^ i_{X_a}."""
    sig = mv.sig
    out = Multivector.zero(sig)
    n = sig.dim
    for a in range(n):
        ia = mv.contract_gen(a + 1)
        if not ia.terms:
            continue
        for b in range(n):
            coeff = w_mixed[a, b, c - 1]
            if coeff:
                eb = Multivector.basis_vector(sig, b + 1)
                out = out + eb.wedge(ia).scale(-coeff)
    return out


def _conn_mat_spinor(rep: _sp.GammaRep, w: np.ndarray, c: int) -> np.ndarray:
    """(1/4) omega_{ab}(X_c) gamma^a gamma^b summed over a, b."""
    n = rep.sig.dim
    out = np.zeros((rep.rep_dim, rep.rep_dim), dtype=complex)
    for a in range(n):
        for b in range(n):
            coeff = w[a, b, c - 1]
            if coeff:
                out += 0.25 * coeff * (rep.gammas[a] @ rep.gammas[b])
    return out


def covd(field, a: int, geom: Geometry):
    """Covariant derivative along the frame vector X_a."""
    if isinstance(field, FormField):
        if geom.is_flat:
            return field.partial(a)
        pf = field.partial(a)

        def fn(x):
            val = pf.eval(x) * (1.0 / geom.frame_factor(x))
            return val + _conn_act_form(field.eval(x), geom.conn_mixed(x), a)

        return CallableFormField(field.sig, fn)
    if isinstance(field, SpinorField):
        if geom.is_flat:
            return field.partial(a)
        pf = field.partial(a)

        def fn(x):
            val = pf.eval(x) * (1.0 / geom.frame_factor(x))
            return val + _conn_mat_spinor(field.rep, geom.conn(x), a) @ field.eval(x)

        return CallableSpinorField(field.rep, fn)
    raise TypeError(f"cannot differentiate {type(field).__name__}")


def exterior_d(field: FormField, geom: Geometry) -> FormField:
    """d = e^a ^ nabla_{X_a}."""
    sig = field.sig
    out = None
    for a in range(1, sig.dim + 1):
        da = covd(field, a, geom)
        ea = Multivector.basis_vector(sig, a)
        if isinstance(da, PolyFormField):
            piece = PolyFormField.constant(ea).wedge(da)
        else:
            piece = CallableFormField(sig, lambda x, da=da, ea=ea: ea.wedge(da.eval(x)))
        out = piece if out is None else form_add(out, piece)
    return out


def coderivative(field: FormField, geom: Geometry) -> FormField:
    """delta = -i_{X^a} nabla_{X_a}."""
    sig = field.sig
    out = None
    for a in range(1, sig.dim + 1):
        da = covd(field, a, geom)
        g = sig.metric(a)
        if isinstance(da, PolyFormField):
            piece = da.contract_gen(a).scale(-g)
        else:
            piece = CallableFormField(
                sig, lambda x, da=da, a=a, g=g: da.eval(x).contract_gen(a).scale(-g))
        out = piece if out is None else form_add(out, piece)
    return out


def hodge_de_rham(field: FormField, geom: Geometry) -> FormField:
    return form_add(exterior_d(field, geom), form_scale(coderivative(field, geom), -1.0))


def dirac(field: SpinorField, geom: Geometry) -> SpinorField:
    """Dslash = e^a . nabla_{X_a}."""
    out = None
    for a in range(1, field.sig.dim + 1):
        da = covd(field, a, geom)
        piece = spinor_matvec(field.rep.gammas[a - 1], da)
        out = piece if out is None else spinor_add(out, piece)
    return out


def spinor_matvec(mat: np.ndarray, field: SpinorField) -> SpinorField:
    if isinstance(field, PolySpinorField):
        return field.matmul(mat)
    return CallableSpinorField(field.rep, lambda x: mat @ field.eval(x))


def twistor_op(field: SpinorField, a: int, geom: Geometry) -> SpinorField:
    """P_{X_a} = nabla_{X_a} - (1/n) e_a . Dslash."""
    n = field.sig.dim
    da = covd(field, a, geom)
    dpsi = dirac(field, geom)
    e_low = field.rep.gammas[a - 1] * field.sig.metric(a)
    return spinor_add(da, spinor_scale(spinor_matvec(e_low, dpsi), -1.0 / n))


def laplace_beltrami(field: FormField, geom: Geometry) -> FormField:
    """Delta = -d delta - delta d on forms."""
    dd = exterior_d(coderivative(field, geom), geom)
    sd = coderivative(exterior_d(field, geom), geom)
    return form_scale(form_add(dd, sd), -1.0)


def spinor_laplacian(field: SpinorField, geom: Geometry) -> SpinorField:
    """nabla^2 = nabla_{X^a} nabla_{X_a} (with the frame-connection term)."""
    sig = field.sig
    firsts = [covd(field, a, geom) for a in range(1, sig.dim + 1)]
    out = None
    for a in range(1, sig.dim + 1):
        g = sig.metric(a)
        second = covd(firsts[a - 1], a, geom)
        piece = spinor_scale(second, g)
        if not geom.is_flat:
            def corr(x, a=a, g=g):
                w = geom.conn_mixed(x)
                val = np.zeros(field.rep.rep_dim, dtype=complex)
                for c in range(sig.dim):
                    coeff = w[c, a - 1, a - 1]
                    if coeff:
                        val += coeff * firsts[c].eval(x)
                return -g * val
            piece = spinor_add(piece, CallableSpinorField(field.rep, corr))
        out = piece if out is None else spinor_add(out, piece)
    return out


# ---------------------------------------------------------------------------
# gauged (Spin^c) operators: A is a grade-1 form field


def _component_field(A: FormField, a: int):
    """i_{X_a} A as a scalar (grade-0 poly or callable)."""
    if isinstance(A, PolyFormField):
        return A.component(1 << (a - 1))
    return lambda x: complex(A.eval(x).terms.get(1 << (a - 1), 0.0))


def gauged_covd(field, a: int, geom: Geometry, A: FormField):
    """nabla^_X = nabla_X + i_X A (scalar multiplication on any field)."""
    base = covd(field, a, geom)
    comp = _component_field(A, a)
    if isinstance(field, FormField):
        if isinstance(base, PolyFormField) and isinstance(field, PolyFormField) \
                and not callable(comp):
            return base + field.scale(comp)
        return CallableFormField(
            field.sig,
            lambda x: base.eval(x) + field.eval(x) * _eval_scalar(comp, x))
    if isinstance(base, PolySpinorField) and isinstance(field, PolySpinorField) \
            and not callable(comp):
        return base + field.scale(comp)
    return CallableSpinorField(
        field.rep, lambda x: base.eval(x) + _eval_scalar(comp, x) * field.eval(x))


def _eval_scalar(comp, x) -> complex:
    if callable(comp):
        return comp(x)
    return comp.eval(x)


def gauged_d(field: FormField, geom: Geometry, A: FormField) -> FormField:
    """d^ = d + A ^ ."""
    base = exterior_d(field, geom)
    if isinstance(base, PolyFormField) and isinstance(A, PolyFormField) \
            and isinstance(field, PolyFormField):
        return base + A.wedge(field)
    return CallableFormField(field.sig, lambda x: base.eval(x) + A.eval(x).wedge(field.eval(x)))


def gauged_coderivative(field: FormField, geom: Geometry, A: FormField) -> FormField:
    """delta^ = delta - i_{A~}."""
    base = coderivative(field, geom)
    sig = field.sig
    if isinstance(base, PolyFormField) and isinstance(A, PolyFormField) \
            and isinstance(field, PolyFormField):
        out = base
        for a in range(1, sig.dim + 1):
            comp = A.component(1 << (a - 1))
            if comp.terms:
                out = out + field.contract_gen(a).scale(comp * (-sig.metric(a)))
        return out

    def fn(x):
        val = base.eval(x)
        return val - field.eval(x).interior(A.eval(x))

    return CallableFormField(sig, fn)


def gauged_hodge_de_rham(field: FormField, geom: Geometry, A: FormField) -> FormField:
    return form_add(gauged_d(field, geom, A),
                    form_scale(gauged_coderivative(field, geom, A), -1.0))


def gauged_dirac(field: SpinorField, geom: Geometry, A: FormField) -> SpinorField:
    """Dslash^ = Dslash + A."""
    return spinor_add(dirac(field, geom), act_on_spinor_field(A, field))


def gauged_laplace_beltrami(field: FormField, geom: Geometry, A: FormField) -> FormField:
    dd = gauged_d(gauged_coderivative(field, geom, A), geom, A)
    sd = gauged_coderivative(gauged_d(field, geom, A), geom, A)
    return form_scale(form_add(dd, sd), -1.0)


def gauge_curvature(A: FormField, geom: Geometry) -> FormField:
    """F = dA."""
    return exterior_d(A, geom)


# ---------------------------------------------------------------------------
# named-operator dispatch


def diffop(kind, field, geom: Geometry, point=None, A: FormField | None = None):
    """Named differential operator; returns a field, or a value at ``point``.

    kind: d | delta | hodge_de_rham | dirac | laplace | twistor(X index)
    (gauged variants via the ``gauged`` dispatcher).
    """
    if isinstance(kind, tuple) and kind[0] == "twistor":
        out = twistor_op(field, kind[1], geom)
    elif kind == "d":
        out = exterior_d(field, geom)
    elif kind == "delta":
        out = coderivative(field, geom)
    elif kind == "hodge_de_rham":
        out = hodge_de_rham(field, geom)
    elif kind == "dirac":
        out = dirac(field, geom)
    elif kind == "laplace":
        if isinstance(field, FormField):
            out = laplace_beltrami(field, geom)
        else:
            out = spinor_laplacian(field, geom)
    else:
        raise ValueError(f"unknown diffop kind {kind!r}")
    if point is None:
        return out
    return out.eval(point)


def gauged(kind, A: FormField, field, geom: Geometry, point=None):
    """Gauged operator dispatcher; A must be a grade-1 form field."""
    grades = A.grades() if isinstance(A, PolyFormField) else None
    if grades is not None and any(g != 1 for g in grades):
        raise ValueError("gauge potential A must be grade 1")
    if isinstance(kind, tuple) and kind[0] == "covd":
        out = gauged_covd(field, kind[1], geom, A)
    elif kind == "d":
        out = gauged_d(field, geom, A)
    elif kind == "delta":
        out = gauged_coderivative(field, geom, A)
    elif kind == "hodge_de_rham":
        out = gauged_hodge_de_rham(field, geom, A)
    elif kind == "dirac":
        out = gauged_dirac(field, geom, A)
    elif kind == "laplace":
        out = gauged_laplace_beltrami(field, geom, A)
    else:
        raise ValueError(f"unknown gauged kind {kind!r}")
    if point is None:
        return out
    return out.eval(point)


# ---------------------------------------------------------------------------
# Rarita-Schwinger operators on spinor-valued 1-forms

from .base import SpinorValued1Form, spinor_matmul  # noqa: E402


def rs_covd(Psi: SpinorValued1Form, b: int, geom: Geometry) -> SpinorValued1Form:
    """nabla_{X_b} Psi, including the coframe connection term."""
    grads = [covd(c, b, geom) for c in Psi.comps]
    if geom.is_flat:
        return SpinorValued1Form(grads)
    out = []
    for c in range(1, Psi.sig.dim + 1):
        def fn(x, c=c, g=grads[c - 1]):
            w = geom.conn_mixed(x)
            val = g.eval(x).astype(complex)
            for a in range(Psi.sig.dim):
                coeff = w[a, c - 1, b - 1]
                if coeff:
                    val -= coeff * Psi.comps[a].eval(x)
            return val
        out.append(CallableSpinorField(Psi.rep, fn))
    return SpinorValued1Form(out)


def rs_dirac(Psi: SpinorValued1Form, geom: Geometry) -> SpinorValued1Form:
    """The Rarita-Schwinger operator e^b . nabla_{X_b} on Psi = psi_a (x) e^a."""
    sig = Psi.sig
    pieces = [rs_covd(Psi, b, geom) for b in range(1, sig.dim + 1)]
    out = []
    for c in range(sig.dim):
        comp = None
        for b in range(sig.dim):
            term = spinor_matmul(pieces[b].comps[c], Psi.rep.gammas[b])
            comp = term if comp is None else spinor_add(comp, term)
        out.append(comp)
    return SpinorValued1Form(out)
