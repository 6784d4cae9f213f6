"""Symmetry operators and spin raising/lowering transforms.

Symmetry operators map solutions of a spinor equation to solutions, and
are built from hidden symmetries (KY / CKY forms):

    massive Dirac, odd KY p-form w :  L_w = (i_{X^a} w).nabla_{X_a}
                                            + p/(2(p+1)) dw
    massless Dirac, CKY p-form w   :  L_w - (n-p)/(2(n-p+1)) delta w
    Killing spinors                :  same as massive Dirac (odd KY,
                                      constant curvature)
    twistor spinors, CKY p-form w  :  L_w + p/(2(n-p+1)) delta w
    gauged twistor                 :  -(-1)^p p/n  w . Dslash^
                                            + p/(2(p+1)) dw
                                            + p/(2(n-p+1)) delta w
    gauged harmonic, gauged CKY w  :  (i_{X^a} w).nabla^_{X_a}
                                            + p/(2(p+1)) d^w
                                            - (n-p)/(2(n-p+1)) delta^w

All p = 1 cases reduce to the spinor Lie derivative along the associated
(conformal) Killing vector.  Preconditions (the form solves its own
equation; constant-curvature or Einstein/normal-CKY background) are
checked where cheap and surfaced, never silently assumed.

Transforms implement the spin raising/lowering ladder 0 <-> 1/2 <-> 1 and
the Rarita-Schwinger (spin 3/2) raising/lowering with their constraints.
"""

from __future__ import annotations

import numpy as np

from ..algebra import Multivector
from .base import (
    FormField,
    PolyFormField,
    PolySpinorField,
    SpinorField,
    SpinorValued1Form,
    act_on_spinor_field,
    bilinear_field,
    form_add,
    form_grade,
    form_scale,
    homogeneous_degree,
    inner_field,
    sample_points,
    spinor_add,
    spinor_matmul,
    spinor_scale,
)
from .calculus import (
    coderivative,
    covd,
    dirac,
    exterior_d,
    gauged_coderivative,
    gauged_covd,
    gauged_d,
    gauged_dirac,
)
from .equations import residual
from .geometry import Geometry


class PreconditionError(ValueError):
    """An input field fails the residual check of its own equation."""


def _check_precondition(eq, fields, geom, params, tol, label):
    if tol is None:
        return
    value = residual(eq, fields, geom, params)
    if value > tol:
        raise PreconditionError(f"{label}: residual {value:.3e} exceeds {tol:.1e}")


def _l_base(w: FormField, psi: SpinorField, geom: Geometry) -> SpinorField:
    """(i_{X^a} w).nabla_{X_a} psi."""
    sig = geom.sig
    out = None
    for a in range(1, sig.dim + 1):
        ia_w = form_scale(_contract(w, a), sig.metric(a))
        piece = act_on_spinor_field_lazy(ia_w, covd(psi, a, geom))
        out = piece if out is None else spinor_add(out, piece)
    return out


def _contract(w, a):
    from .base import form_contract_gen
    return form_contract_gen(w, a)


def act_on_spinor_field_lazy(w, psi):
    return act_on_spinor_field(w, psi)


def symmetry(kind: str, w: FormField, psi: SpinorField, geom: Geometry,
             params: dict | None = None, check_tol: float | None = 1e-8) -> SpinorField:
    """Apply the named symmetry operator; checks the form's own equation.

    ``check_tol=None`` skips the precondition check.  Curvature-class
    requirements (constant curvature for killing_KY / twistor_CKY on
    general charts, Einstein + normal CKY) are the caller's to meet; the
    constant-curvature residual is reported in the error message when an
    output check fails downstream.
    """
    params = dict(params or {})
    n = geom.dim

    if kind == "lie_K":
        _check_precondition("ky", [w], geom, None, check_tol, "Killing covector")
        return lie_spinor(w, psi, geom)
    if kind == "lie_C":
        _check_precondition("cky", [w], geom, None, check_tol, "conformal Killing covector")
        return conformal_lie_spinor(w, psi, geom)

    p = homogeneous_degree(w)
    dw = exterior_d(w, geom)
    sw = coderivative(w, geom)

    if kind in ("dirac_massive_KY", "killing_KY"):
        _check_precondition("ky", [w], geom, None, check_tol, "KY form")
        if p % 2 == 0:
            raise ValueError(f"{kind} needs an odd-degree KY form (got p={p}); "
                             "for even p compose with the volume form")
        out = _l_base(w, psi, geom)
        return spinor_add(out, act_on_spinor_field(
            form_scale(dw, p / (2.0 * (p + 1))), psi))
    if kind == "dirac_massless_CKY":
        _check_precondition("cky", [w], geom, None, check_tol, "CKY form")
        out = _l_base(w, psi, geom)
        out = spinor_add(out, act_on_spinor_field(
            form_scale(dw, p / (2.0 * (p + 1))), psi))
        return spinor_add(out, act_on_spinor_field(
            form_scale(sw, -(n - p) / (2.0 * (n - p + 1))), psi))
    if kind == "twistor_CKY":
        _check_precondition("cky", [w], geom, None, check_tol, "CKY form")
        out = _l_base(w, psi, geom)
        out = spinor_add(out, act_on_spinor_field(
            form_scale(dw, p / (2.0 * (p + 1))), psi))
        return spinor_add(out, act_on_spinor_field(
            form_scale(sw, p / (2.0 * (n - p + 1))), psi))
    if kind == "gauged_twistor_CKY":
        A = params["A"]
        _check_precondition("cky", [w], geom, None, check_tol, "CKY form")
        dpsi = gauged_dirac(psi, geom, A)
        out = spinor_scale(act_on_spinor_field(w, dpsi), -((-1.0) ** p) * p / n)
        out = spinor_add(out, act_on_spinor_field(
            form_scale(dw, p / (2.0 * (p + 1))), psi))
        return spinor_add(out, act_on_spinor_field(
            form_scale(sw, p / (2.0 * (n - p + 1))), psi))
    if kind == "gauged_harmonic_gCKY":
        A = params["A"]
        _check_precondition("gauged_cky", [w], geom, {"A": A}, check_tol, "gauged CKY form")
        dw_g = gauged_d(w, geom, A)
        sw_g = gauged_coderivative(w, geom, A)
        out = None
        for a in range(1, n + 1):
            ia_w = form_scale(_contract(w, a), geom.sig.metric(a))
            piece = act_on_spinor_field(ia_w, gauged_covd(psi, a, geom, A))
            out = piece if out is None else spinor_add(out, piece)
        out = spinor_add(out, act_on_spinor_field(
            form_scale(dw_g, p / (2.0 * (p + 1))), psi))
        return spinor_add(out, act_on_spinor_field(
            form_scale(sw_g, -(n - p) / (2.0 * (n - p + 1))), psi))
    raise ValueError(f"unknown symmetry kind {kind!r}")


def lie_spinor(k_covector: FormField, psi: SpinorField, geom: Geometry) -> SpinorField:
    """Spinor Lie derivative along a Killing vector: nabla_K + (1/4) dK~."""
    sig = geom.sig
    dk = exterior_d(k_covector, geom)
    out = None
    for a in range(1, sig.dim + 1):
        comp = form_scale(_contract(k_covector, a), sig.metric(a))  # K^a
        piece = _scalar_times_spinor(comp, covd(psi, a, geom))
        out = piece if out is None else spinor_add(out, piece)
    return spinor_add(out, act_on_spinor_field(form_scale(dk, 0.25), psi))


def conformal_lie_spinor(c_covector: FormField, psi: SpinorField,
                         geom: Geometry) -> SpinorField:
    """Twistor-compatible conformal Lie derivative: lie_C - mu/2, mu = -delta C~ / n."""
    n = geom.dim
    base = lie_spinor(c_covector, psi, geom)
    sc = coderivative(c_covector, geom)          # delta C~ = -n mu
    mu_half = form_scale(sc, 1.0 / (2.0 * n))    # -mu/2 = delta C~ / (2n)
    return spinor_add(base, _scalar_times_spinor(_grade0(mu_half), psi))


def lie_form(k_covector: FormField, w: FormField, geom: Geometry) -> FormField:
    """Lie derivative of an inhomogeneous form along a Killing vector.

    nabla_K + (1/4) [dK~, .]_Cl; equals i_K d + d i_K for Killing vectors.
    """
    sig = geom.sig
    dk = exterior_d(k_covector, geom)
    out = None
    for a in range(1, sig.dim + 1):
        comp = form_scale(_contract(k_covector, a), sig.metric(a))
        piece = _scalar_times_form(comp, covd(w, a, geom))
        out = piece if out is None else form_add(out, piece)
    from .brackets import clifford_bracket
    return form_add(out, form_scale(clifford_bracket(dk, w, geom), 0.25))


def _grade0(f: FormField):
    return f


def _scalar_times_spinor(f: FormField, psi: SpinorField) -> SpinorField:
    """Multiply a spinor field by a grade-0 form field."""
    if isinstance(f, PolyFormField) and isinstance(psi, PolySpinorField):
        return psi.scale(f.component(0))
    from .base import LazySpinorField
    return LazySpinorField(psi.rep, (f, psi),
                           lambda vals: complex(vals[0].terms.get(0, 0.0)) * vals[1])


def _scalar_times_form(f: FormField, w: FormField) -> FormField:
    if isinstance(f, PolyFormField) and isinstance(w, PolyFormField):
        return w.scale(f.component(0))
    from .base import LazyFormField
    return LazyFormField.binary(f, w, lambda a, b: b * complex(a.terms.get(0, 0.0)))


# ---------------------------------------------------------------------------
# spin raising / lowering transforms


class DegreeGuardError(ValueError):
    """The transform is degenerate at this (dim, degree) combination."""


def transform(kind: str, inputs: dict, geom: Geometry,
              check_tol: float | None = 1e-8):
    """Spin raising/lowering; inputs are checked against their own equations.

    kinds and inputs:
      raise_0_half            f (conformal Laplace), u (twistor)  -> harmonic
      lower_half_0            psi (harmonic), u (twistor)         -> conformal Laplace
      raise_half_1            psi (harmonic), u (twistor), form   -> middle Maxwell
      lower_1_half            F (middle, dF=0=deltaF), u (twistor)-> harmonic
      harmonic_from_potential alpha (potential p-form), u         -> harmonic
      rs_raise                F, u                                -> massless RS
      rs_lower                Psi (massless RS), u, form          -> Maxwell 2-form
    """
    n = geom.dim

    if kind == "raise_0_half":
        f, u = inputs["f"], inputs["u"]
        _check_precondition("conformal_laplace", [f], geom, None, check_tol,
                            "conformal-Laplace function")
        _check_precondition("twistor", [u], geom, None, check_tol, "twistor spinor")
        du = dirac(u, geom)
        df = exterior_d(f, geom)
        out = _scalar_times_spinor(f, spinor_scale(du, (n - 2.0) / n))
        return spinor_add(out, act_on_spinor_field(df, u))

    if kind == "lower_half_0":
        psi, u, form = inputs["psi"], inputs["u"], inputs["form"]
        _check_precondition("harmonic", [psi], geom, None, check_tol, "harmonic spinor")
        _check_precondition("twistor", [u], geom, None, check_tol, "twistor spinor")
        return inner_field(u, psi, form)

    if kind == "raise_half_1":
        psi, u, form = inputs["psi"], inputs["u"], inputs["form"]
        if n % 2:
            raise DegreeGuardError("raise_half_1 needs even dimension")
        _check_precondition("harmonic", [psi], geom, None, check_tol, "harmonic spinor")
        _check_precondition("twistor", [u], geom, None, check_tol, "twistor spinor")
        p = n // 2
        du = dirac(u, geom)
        total = None
        for b in range(1, n + 1):
            eb_u = spinor_matmul(u, u.rep.gammas[b - 1])
            piece = _bilinear_total(eb_u, covd(psi, b, geom), form)
            total = piece if total is None else form_add(total, piece)
        total = form_add(total, form_scale(_bilinear_total(du, psi, form), (n - 2.0) / n))
        total = form_add(total, _bilinear_total(psi, du, form))
        return form_grade(total, p)

    if kind == "lower_1_half":
        F, u = inputs["F"], inputs["u"]
        if n % 2:
            raise DegreeGuardError("lower_1_half needs even dimension")
        p = homogeneous_degree(F)
        if p != n // 2:
            raise DegreeGuardError(f"lower_1_half needs a middle form (p={p}, n={n})")
        _check_precondition("twistor", [u], geom, None, check_tol, "twistor spinor")
        _check_maxwell(F, geom, check_tol)
        return act_on_spinor_field(F, u)

    if kind == "harmonic_from_potential":
        alpha, u = inputs["alpha"], inputs["u"]
        p = homogeneous_degree(alpha)
        if n == 2 * (p + 1) or n == 2 * (p - 1):
            raise DegreeGuardError(
                f"harmonic_from_potential degenerate at dim = 2(p±1): n={n}, p={p}")
        _check_precondition("potential_form", [alpha], geom, None, check_tol,
                            "potential form")
        _check_precondition("twistor", [u], geom, None, check_tol, "twistor spinor")
        du = dirac(u, geom)
        da = exterior_d(alpha, geom)
        sa = coderivative(alpha, geom)
        sgn = (-1.0) ** p
        out = act_on_spinor_field(alpha, du)
        out = spinor_add(out, act_on_spinor_field(
            form_scale(da, sgn * n / (n - 2.0 * (p + 1))), u))
        return spinor_add(out, act_on_spinor_field(
            form_scale(sa, -sgn * n / (n - 2.0 * (p - 1))), u))

    if kind == "rs_raise":
        F, u = inputs["F"], inputs["u"]
        if n % 2:
            raise DegreeGuardError("rs_raise needs even dimension")
        p = homogeneous_degree(F)
        if p != n // 2:
            raise DegreeGuardError(f"rs_raise needs a middle form (p={p}, n={n})")
        _check_maxwell(F, geom, check_tol)
        _check_precondition("twistor", [u], geom, None, check_tol, "twistor spinor")
        if not geom.is_flat and check_tol is not None:
            fu = act_on_spinor_field(F, u)
            worst = max(np.linalg.norm(fu.eval(x)) for x in sample_points(geom, 10))
            if worst > check_tol:
                raise PreconditionError(
                    f"rs_raise on a curved chart needs F.u = 0 (got {worst:.3e})")
        du = dirac(u, geom)
        comps = []
        for a in range(1, n + 1):
            t1 = act_on_spinor_field(covd(F, a, geom), u)
            e_low = u.rep.gammas[a - 1] * geom.sig.metric(a)
            t2 = act_on_spinor_field(F, spinor_matmul(du, e_low))
            comps.append(spinor_add(t1, spinor_scale(t2, -1.0 / n)))
        return SpinorValued1Form(comps)

    if kind == "rs_lower":
        Psi, u, form = inputs["Psi"], inputs["u"], inputs["form"]
        _check_precondition("rs_field", [Psi], geom, None, check_tol, "RS field")
        _check_precondition("rs_trace", [Psi], geom, None, check_tol, "RS trace")
        _check_precondition("twistor", [u], geom, None, check_tol, "twistor spinor")
        _check_precondition("rs_lowering_constraint", [Psi], geom, None, check_tol,
                            "RS lowering constraint")
        sig = geom.sig
        A = None
        for a in range(1, n + 1):
            coeff = inner_field(u, Psi.comps[a - 1], form)
            piece = _scalar_times_form(
                coeff, PolyFormField.constant(Multivector.basis_vector(sig, a)))
            A = piece if A is None else form_add(A, piece)
        return exterior_d(A, geom)

    raise ValueError(f"unknown transform kind {kind!r}")


def _check_maxwell(F: FormField, geom: Geometry, tol):
    if tol is None:
        return
    dF = exterior_d(F, geom)
    sF = coderivative(F, geom)
    pts = sample_points(geom, 10)
    worst = max(max(dF.eval(x).norm(), sF.eval(x).norm()) for x in pts)
    if worst > tol:
        raise PreconditionError(f"source-free Maxwell check failed: {worst:.3e}")


def _bilinear_total(psi: SpinorField, phi: SpinorField, form) -> FormField:
    """Full multivector of psi (x) phibar (all grades summed)."""
    total = None
    for p in range(form.rep.sig.dim + 1):
        piece = bilinear_field(psi, phi, form, p)
        total = piece if total is None else form_add(total, piece)
    return total
