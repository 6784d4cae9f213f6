"""Residual checkers for the special field equations of the package.

``residual(eq, fields, geom, params, points)`` returns the maximum over
the sample points of the norm of (LHS - RHS) of the named equation; a
near-zero residual certifies that the field solves the equation at those
points.  Forms are measured by the coefficient 2-norm in the orthonormal
coframe, spinors by the component 2-norm.

Equation catalogue (params in brackets):

  spinor equations   : harmonic, massive_dirac[m], twistor, killing[lam],
                       parallel, slw, twistor_int_1..3, parallel_ricci,
                       killing_scalar[lam]
  form equations     : cky, ky, ccky, case1/case2[lam], maxwell_analogy
                       [lam, case], dkp[lam], laplace_eigenform[lam, case],
                       parallel_current, ky_int, special_ky[c], cky_int,
                       normal_cky, conformal_laplace, potential_form
  gauged equations   : gauged_twistor[A], gauged_twistor_int[A],
                       gauged_cky[A], gauged_laplace[A, gamma]
  supergravity       : sugra6[H], sugra11[F]  (spinor or form fields)
  Rarita-Schwinger   : rs_trace, rs_field, rs_lorentz,
                       rs_lowering_constraint
"""

from __future__ import annotations

import numpy as np

from ..algebra import Multivector
from .. import spinors as _sp
from .base import (
    FormField,
    PolyFormField,
    SpinorField,
    SpinorValued1Form,
    form_add,
    form_contract_gen,
    form_hodge,
    form_scale,
    form_wedge,
    homogeneous_degree,
    sample_points,
    spinor_add,
    spinor_scale,
)
from .calculus import (
    coderivative,
    covd,
    dirac,
    exterior_d,
    gauge_curvature,
    gauged_coderivative,
    gauged_covd,
    gauged_d,
    gauged_dirac,
    gauged_laplace_beltrami,
    laplace_beltrami,
    spinor_laplacian,
    spinor_matvec,
    twistor_op,
)
from .geometry import Geometry


class ResidualError(ValueError):
    pass


def _as_field_list(fields):
    if isinstance(fields, (FormField, SpinorField, SpinorValued1Form)):
        return [fields]
    return list(fields)


def _norm(value) -> float:
    if isinstance(value, Multivector):
        return value.norm()
    return float(np.linalg.norm(np.asarray(value, dtype=complex)))


def _lowered_basis(sig, a: int) -> Multivector:
    return Multivector.basis_vector(sig, a).scale(sig.metric(a))


def residual(eq: str, fields, geom: Geometry, params: dict | None = None,
             points=None, count: int = 25, seed: int = 0) -> float:
    """Max residual norm of the named equation over the sample points."""
    params = dict(params or {})
    fields = _as_field_list(fields)
    if points is None:
        points = sample_points(geom, count, seed)
    pieces = _build(eq, fields, geom, params)
    worst = 0.0
    for x in points:
        for piece in pieces:
            worst = max(worst, _norm(piece.eval(x) if hasattr(piece, "eval") else piece(x)))
    return worst


def residual_report(eq: str, fields, geom: Geometry, params=None, points=None,
                    count: int = 25, seed: int = 0, tolerance: float = 1e-8) -> dict:
    """Machine-readable residual report (the JSON external interface)."""
    if points is None:
        points = sample_points(geom, count, seed)
    value = residual(eq, fields, geom, params, points=points, seed=seed)
    return {
        "equation": eq,
        "points": len(points),
        "max_residual": value,
        "tolerance": tolerance,
        "pass": bool(value <= tolerance),
        "seed": seed,
    }


def _need(params, *names):
    out = []
    for name in names:
        if name not in params:
            raise ResidualError(f"missing parameter {name!r}")
        out.append(params[name])
    return out


def _build(eq, fields, geom, params):
    n = geom.dim
    sig = geom.sig

    # ----- spinor equations ------------------------------------------------
    if eq == "harmonic":
        (psi,) = fields
        return [dirac(psi, geom)]
    if eq == "massive_dirac":
        (psi,) = fields
        (m,) = _need(params, "m")
        return [spinor_add(dirac(psi, geom), spinor_scale(psi, -m))]
    if eq == "twistor":
        (psi,) = fields
        return [twistor_op(psi, a, geom) for a in range(1, n + 1)]
    if eq == "killing":
        (psi,) = fields
        (lam,) = _need(params, "lam")
        out = []
        for a in range(1, n + 1):
            e_low = psi.rep.gammas[a - 1] * sig.metric(a)
            out.append(spinor_add(covd(psi, a, geom),
                                  spinor_scale(spinor_matvec(e_low, psi), -lam)))
        return out
    if eq == "parallel":
        (psi,) = fields
        return [covd(psi, a, geom) for a in range(1, n + 1)]
    if eq == "slw":
        (psi,) = fields
        d2 = dirac(dirac(psi, geom), geom)
        lap = spinor_laplacian(psi, geom)
        def piece(x):
            return d2.eval(x) - lap.eval(x) + 0.25 * geom.scalar_curv(x) * psi.eval(x)
        return [piece]
    if eq == "twistor_int_1":
        (psi,) = fields
        d2 = dirac(dirac(psi, geom), geom)
        def piece(x):
            return d2.eval(x) + n / (4.0 * (n - 1)) * geom.scalar_curv(x) * psi.eval(x)
        return [piece]
    if eq == "twistor_int_2":
        (psi,) = fields
        dpsi = dirac(psi, geom)
        grads = [covd(dpsi, a, geom) for a in range(1, n + 1)]
        def piece(x):
            K = geom.schouten(x)
            rep = psi.rep
            vals = []
            for a in range(n):
                vals.append(grads[a].eval(x) - 0.5 * n * _sp.act(K[a], psi.eval(x), rep))
            return np.concatenate(vals)
        return [piece]
    if eq == "twistor_int_3":
        (psi,) = fields
        def piece(x):
            C = geom.conformal2(x)
            rep = psi.rep
            vals = [_sp.act(C[a][b], psi.eval(x), rep)
                    for a in range(n) for b in range(a + 1, n)]
            return np.concatenate(vals) if vals else np.zeros(1)
        return [piece]
    if eq == "killing_scalar":
        (lam,) = _need(params, "lam")
        def piece(x):
            return geom.scalar_curv(x) + 4.0 * complex(lam) ** 2 * n * (n - 1)
        return [piece]
    if eq == "parallel_ricci":
        (psi,) = fields
        def piece(x):
            P = geom.ricci(x)
            rep = psi.rep
            return np.concatenate([_sp.act(P[a], psi.eval(x), rep) for a in range(n)])
        return [piece]

    # ----- hidden-symmetry form equations ----------------------------------
    if eq in ("cky", "ky", "ccky"):
        (w,) = fields
        p = homogeneous_degree(w)
        dw = exterior_d(w, geom)
        sw = coderivative(w, geom)
        out = []
        for a in range(1, n + 1):
            r = covd(w, a, geom)
            if eq in ("cky", "ky"):
                r = form_add(r, form_scale(form_contract_gen(dw, a), -1.0 / (p + 1)))
            if eq in ("cky", "ccky"):
                r = form_add(r, form_scale(_wedge_const(_lowered_basis(sig, a), sw),
                                           1.0 / (n - p + 1)))
            out.append(r)
        return out
    if eq in ("case1", "case2"):
        w, partner = fields
        (lam,) = _need(params, "lam")
        p = homogeneous_degree(w)
        dw = exterior_d(w, geom)
        sw = coderivative(w, geom)
        out = []
        if eq == "case1":
            for a in range(1, n + 1):
                r = form_add(covd(w, a, geom),
                             form_scale(_wedge_const(_lowered_basis(sig, a), partner), -2.0 * lam))
                out.append(r)
            out.append(dw)
            out.append(form_add(sw, form_scale(partner, 2.0 * lam * (n - p + 1))))
        else:
            for a in range(1, n + 1):
                r = form_add(covd(w, a, geom),
                             form_scale(form_contract_gen(partner, a), -2.0 * lam))
                out.append(r)
            out.append(form_add(dw, form_scale(partner, -2.0 * lam * (p + 1))))
            out.append(sw)
        return out
    if eq == "maxwell_analogy":
        w, partner = fields
        lam, case = _need(params, "lam", "case")
        p = homogeneous_degree(w)
        dw = exterior_d(w, geom)
        dstar = exterior_d(form_hodge(w), geom)
        if case == 1:
            return [dw, form_add(dstar, form_scale(form_hodge(partner),
                                                   2.0 * (-1) ** p * lam * (n - p + 1)))]
        return [form_add(dw, form_scale(partner, -2.0 * lam * (p + 1))), dstar]
    if eq == "dkp":
        lo, hi = fields
        (lam,) = _need(params, "lam")
        p = homogeneous_degree(hi)
        if n % 2 == 0 or p != (n + 1) // 2:
            raise ResidualError("DKP recombination needs odd n and p = (n+1)/2")
        mu = 2.0 * lam * p
        return [
            form_add(exterior_d(lo, geom), form_scale(hi, -mu)),
            coderivative(lo, geom),
            form_add(coderivative(hi, geom), form_scale(lo, mu)),
            exterior_d(hi, geom),
        ]
    if eq == "laplace_eigenform":
        # Case-1 eigenvalue 4 lam^2 p (n-p+1); the case-2 one follows from
        # chaining the case systems (and from Hodge duality with case 1) as
        # 4 lam^2 (p+1)(n-p), the sphere eigenvalue on coexact p-forms.
        (w,) = fields
        lam, case = _need(params, "lam", "case")
        p = homogeneous_degree(w)
        ev = 4.0 * lam ** 2 * (p * (n - p + 1) if case == 1 else (p + 1) * (n - p))
        return [form_add(laplace_beltrami(w, geom), form_scale(w, -ev))]
    if eq == "parallel_current":
        (w,) = fields
        out = [covd(w, a, geom) for a in range(1, n + 1)]
        out.append(laplace_beltrami(w, geom))
        return out
    if eq == "ky_int":
        (w,) = fields
        p = homogeneous_degree(w)
        dw = exterior_d(w, geom)
        grads = [covd(dw, a, geom) for a in range(1, n + 1)]
        def piece(x):
            R = geom.curvature(x)
            vals = []
            for a in range(n):
                rhs = Multivector.zero(sig)
                for b in range(n):
                    rhs = rhs + R[b][a].wedge(
                        w.eval(x).contract_gen(b + 1).scale(sig.metric(b + 1)))
                vals.append(grads[a].eval(x) - rhs.scale((p + 1.0) / p))
            return np.concatenate([_coeffs(v, sig) for v in vals])
        return [piece]
    if eq == "special_ky":
        (w,) = fields
        (c,) = _need(params, "c")
        p = homogeneous_degree(w)
        dw = exterior_d(w, geom)
        out = []
        for a in range(1, n + 1):
            out.append(form_add(covd(dw, a, geom),
                                form_scale(_wedge_const(_lowered_basis(sig, a), w),
                                           c * (p + 1.0))))
        return out
    if eq == "cky_int":
        (w,) = fields
        return _cky_integrability(w, geom, normal=False)
    if eq == "normal_cky":
        (w,) = fields
        return _cky_integrability(w, geom, normal=True)
    if eq == "conformal_laplace":
        (f,) = fields
        lap = laplace_beltrami(f, geom)
        def piece(x):
            return lap.eval(x) - f.eval(x).scale(
                (n - 2.0) / (4.0 * (n - 1)) * geom.scalar_curv(x))
        return [piece]
    if eq == "potential_form":
        (alpha,) = fields
        p = homogeneous_degree(alpha)
        if n <= 2 or n == 2 * (p + 1) or n == 2 * (p - 1):
            raise ResidualError(f"potential-form equation degenerate for n={n}, p={p}")
        sda = coderivative(exterior_d(alpha, geom), geom)
        dsa = exterior_d(coderivative(alpha, geom), geom)
        def piece(x):
            lhs = sda.eval(x).scale(1.0 / (n - 2 * (p + 1))) \
                + dsa.eval(x).scale(1.0 / (n - 2 * (p - 1)))
            P = geom.ricci(x)
            rhs = Multivector.zero(sig)
            av = alpha.eval(x)
            for a in range(n):
                rhs = rhs + P[a].wedge(av.contract_gen(a + 1).scale(sig.metric(a + 1)))
            rhs = rhs.scale(1.0 / (n - 2))
            rhs = rhs - av.scale((n + 2.0 * (p - 1)) / (4.0 * (n - 1) * (n - 2))
                                 * geom.scalar_curv(x))
            return lhs - rhs
        return [piece]

    # ----- gauged equations -------------------------------------------------
    if eq == "gauged_twistor":
        (psi,) = fields
        (A,) = _need(params, "A")
        dpsi = gauged_dirac(psi, geom, A)
        out = []
        for a in range(1, n + 1):
            e_low = psi.rep.gammas[a - 1] * sig.metric(a)
            out.append(spinor_add(gauged_covd(psi, a, geom, A),
                                  spinor_scale(spinor_matvec(e_low, dpsi), -1.0 / n)))
        return out
    if eq == "gauged_twistor_int":
        (psi,) = fields
        (A,) = _need(params, "A")
        F = gauge_curvature(A, geom)
        dpsi = gauged_dirac(psi, geom, A)
        d2 = gauged_dirac(dpsi, geom, A)
        grads = [gauged_covd(dpsi, a, geom, A) for a in range(1, n + 1)]
        rep = psi.rep

        def cond1(x):
            return d2.eval(x) + n / (4.0 * (n - 1)) * geom.scalar_curv(x) * psi.eval(x) \
                - n / (n - 1.0) * _sp.act(F.eval(x), psi.eval(x), rep)

        def cond2(x):
            K = geom.schouten(x)
            Fx = F.eval(x)
            pv = psi.eval(x)
            vals = []
            for a in range(n):
                e_low = _lowered_basis(sig, a + 1)
                rhs = 0.5 * n * _sp.act(K[a], pv, rep) \
                    - n / ((n - 1.0) * (n - 2)) * _sp.act(e_low.cmul(Fx), pv, rep) \
                    + n / (n - 2.0) * _sp.act(Fx.contract_gen(a + 1), pv, rep)
                vals.append(grads[a].eval(x) - rhs)
            return np.concatenate(vals)

        def cond3(x):
            C = geom.conformal2(x)
            Fx = F.eval(x)
            pv = psi.eval(x)
            vals = []
            for a in range(n):
                for b in range(a + 1, n):
                    ea = _lowered_basis(sig, a + 1)
                    eb = _lowered_basis(sig, b + 1)
                    iaf = Fx.contract_gen(a + 1)
                    ibf = Fx.contract_gen(b + 1)
                    rhs = 2.0 * complex(iaf.contract_gen(b + 1).scalar_part()) * pv \
                        + n / (n - 2.0) * _sp.act(eb.cmul(iaf) - ea.cmul(ibf), pv, rep) \
                        + 4.0 / ((n - 1.0) * (n - 2)) * _sp.act(ea.cmul(eb).cmul(Fx), pv, rep)
                    vals.append(_sp.act(C[a][b], pv, rep) - rhs)
            return np.concatenate(vals) if vals else np.zeros(1)

        return [cond1, cond2, cond3] if n > 2 else [cond1]
    if eq == "gauged_cky":
        (w,) = fields
        (A,) = _need(params, "A")
        p = homogeneous_degree(w)
        dw = gauged_d(w, geom, A)
        sw = gauged_coderivative(w, geom, A)
        out = []
        for a in range(1, n + 1):
            r = gauged_covd(w, a, geom, A)
            r = form_add(r, form_scale(form_contract_gen(dw, a), -1.0 / (p + 1)))
            r = form_add(r, form_scale(_wedge_const(_lowered_basis(sig, a), sw),
                                       1.0 / (n - p + 1)))
            out.append(r)
        return out
    if eq == "gauged_laplace":
        (f,) = fields
        A, gamma = _need(params, "A", "gamma")
        lap = gauged_laplace_beltrami(f, geom, A)
        def piece(x):
            coeff = (1.0 + (n - 2.0) / (n - 1)) * gamma \
                - (n - 2.0) / (4.0 * (n - 1)) * geom.scalar_curv(x)
            return lap.eval(x) + f.eval(x).scale(coeff)
        return [piece]

    # ----- supergravity Killing equations -----------------------------------
    if eq == "sugra6":
        (field,) = fields
        (H,) = _need(params, "H")
        H = _as_form_field(H, sig)
        if isinstance(field, SpinorField):
            out = []
            for a in range(1, n + 1):
                da = covd(field, a, geom)
                def piece(x, a=a, da=da):
                    iah = H.eval(x).contract_gen(a)
                    return da.eval(x) + 0.25 * _sp.act(iah, field.eval(x), field.rep)
                out.append(piece)
            return out
        out = []
        for a in range(1, n + 1):
            da = covd(field, a, geom)
            def piece(x, a=a, da=da):
                iah = H.eval(x).contract_gen(a)
                return da.eval(x) + iah.cbracket(field.eval(x)).scale(0.25)
            out.append(piece)
        return out
    if eq == "sugra11":
        (field,) = fields
        (F,) = _need(params, "F")
        F = _as_form_field(F, sig)
        out = []
        for a in range(1, n + 1):
            da = covd(field, a, geom)
            def piece(x, a=a, da=da):
                Fx = F.eval(x)
                e_low = _lowered_basis(sig, a)
                phi = e_low.cmul(Fx) - Fx.cmul(e_low).scale(3.0)
                if isinstance(field, SpinorField):
                    return da.eval(x) + (1.0 / 24) * _sp.act(phi, field.eval(x), field.rep)
                psi_x = Fx.cbracket(e_low)
                wx = field.eval(x)
                return da.eval(x) + phi.cbracket(wx).scale(1.0 / 24) \
                    + wx.cmul(psi_x).scale(1.0 / 6)
            out.append(piece)
        return out

    # ----- Rarita-Schwinger -------------------------------------------------
    if eq == "rs_trace":
        (Psi,) = fields
        return [Psi.trace_clifford()]
    if eq == "rs_field":
        (Psi,) = fields
        from .calculus import rs_dirac
        out = rs_dirac(Psi, geom)
        return list(out.comps)
    if eq == "rs_lorentz":
        (Psi,) = fields
        from .calculus import rs_covd
        pieces = []
        for a in range(1, n + 1):
            pieces.append((a, rs_covd(Psi, a, geom)))
        def piece(x):
            total = np.zeros(Psi.rep.rep_dim, dtype=complex)
            for a, da in pieces:
                total += sig.metric(a) * da.comps[a - 1].eval(x)
            return total
        return [piece]
    if eq == "rs_lowering_constraint":
        (Psi,) = fields
        if n <= 2:
            raise ResidualError("constraint needs dim > 2")
        rep = Psi.rep
        def piece(x):
            R = geom.curvature(x)
            K = geom.schouten(x)
            Rs = geom.scalar_curv(x)
            psi_up = [sig.metric(b + 1) * Psi.comps[b].eval(x) for b in range(n)]
            vals = []
            for a in range(n):
                e_low = _lowered_basis(sig, a + 1)
                lhs = np.zeros(rep.rep_dim, dtype=complex)
                for b in range(n):
                    op = R[b][a] + K[b].cmul(e_low)
                    lhs += _sp.act(op, psi_up[b], rep)
                rhs = (n - 3.0) / (2.0 * (n - 1)) * Rs * Psi.comps[a].eval(x)
                vals.append(lhs - rhs)
            return np.concatenate(vals)
        return [piece]

    raise ResidualError(f"unknown equation kind {eq!r}")


def _wedge_const(mv: Multivector, field: FormField) -> FormField:
    const = PolyFormField.constant(mv)
    return form_wedge(const, field)


def _as_form_field(value, sig) -> FormField:
    if isinstance(value, Multivector):
        return PolyFormField.constant(value)
    return value


def _coeffs(mv: Multivector, sig) -> np.ndarray:
    return np.array([complex(c) for c in mv.terms.values()] or [0.0])


def _cky_integrability(w, geom, normal: bool):
    """First two CKY integrability relations (curvature or Schouten form)."""
    sig = geom.sig
    n = geom.dim
    p = homogeneous_degree(w)
    if p >= n or (n - p) == 0:
        raise ResidualError("integrability relations need 1 <= p <= n-1")
    dw = exterior_d(w, geom)
    sw = coderivative(w, geom)
    dsw = exterior_d(sw, geom)
    sdw = coderivative(dw, geom)
    grads_d = [covd(dw, a, geom) for a in range(1, n + 1)]
    grads_s = [covd(sw, a, geom) for a in range(1, n + 1)]

    def rel1(x):
        vals = []
        wv = w.eval(x)
        for a in range(n):
            e_low = _lowered_basis(sig, a + 1)
            rhs = e_low.wedge(dsw.eval(x)).scale((p + 1.0) / (p * (n - p + 1)))
            if normal:
                K = geom.schouten(x)
                rhs = rhs + K[a].wedge(wv).scale(2.0 * (p + 1))
            else:
                R = geom.curvature(x)
                acc = Multivector.zero(sig)
                for b in range(n):
                    acc = acc + R[b][a].wedge(
                        wv.contract_gen(b + 1).scale(sig.metric(b + 1)))
                rhs = rhs + acc.scale((p + 1.0) / p)
            vals.append(grads_d[a].eval(x) - rhs)
        return np.concatenate([_coeffs(v, sig) for v in vals])

    def rel2(x):
        vals = []
        wv = w.eval(x)
        for a in range(n):
            rhs = sdw.eval(x).contract_gen(a + 1).scale(
                -(n - p + 1.0) / ((p + 1) * (n - p)))
            if normal:
                K = geom.schouten(x)
                acc = Multivector.zero(sig)
                for b in range(n):
                    kb = complex(K[a].contract_gen(b + 1).scalar_part())
                    acc = acc + wv.contract_gen(b + 1).scale(kb * sig.metric(b + 1))
                rhs = rhs - acc.scale(2.0 * (n - p + 1))
            else:
                R = geom.curvature(x)
                P = geom.ricci(x)
                acc = Multivector.zero(sig)
                for b in range(n):
                    pb = complex(P[a].contract_gen(b + 1).scalar_part())
                    acc = acc + wv.contract_gen(b + 1).scale(pb * sig.metric(b + 1))
                for b in range(n):
                    for c in range(n):
                        rc = R[c][a].contract_gen(b + 1)
                        if not rc.terms:
                            continue
                        acc = acc + rc.wedge(
                            wv.contract_gen(c + 1).contract_gen(b + 1)
                            .scale(sig.metric(b + 1) * sig.metric(c + 1)))
                rhs = rhs + acc.scale((n - p + 1.0) / (n - p))
            vals.append(grads_s[a].eval(x) - rhs)
        return np.concatenate([_coeffs(v, sig) for v in vals])

    return [rel1, rel2]


def cky_third_report(w, geom: Geometry, points=None, count: int = 10,
                     seed: int = 0) -> dict:
    """Both sides of the third CKY integrability relation, reported.

    The source relation appears to drop a d-delta term on its left-hand
    side; this helper evaluates the natural completion
    p/(p+1) delta d w + (n-p)/(n-p+1) d delta w against the curvature side
    and reports both norms plus their difference instead of asserting.
    """
    sig = geom.sig
    n = geom.dim
    p = homogeneous_degree(w)
    if points is None:
        points = sample_points(geom, count, seed)
    sdw = coderivative(exterior_d(w, geom), geom)
    dsw = exterior_d(coderivative(w, geom), geom)
    lhs_norm = rhs_norm = diff_norm = 0.0
    for x in points:
        lhs = sdw.eval(x).scale(p / (p + 1.0)) + dsw.eval(x).scale((n - p) / (n - p + 1.0))
        P = geom.ricci(x)
        R = geom.curvature(x)
        wv = w.eval(x)
        rhs = Multivector.zero(sig)
        for a in range(n):
            rhs = rhs + P[a].wedge(wv.contract_gen(a + 1).scale(sig.metric(a + 1)))
        for a in range(n):
            for b in range(n):
                rab = R[a][b]
                if not rab.terms:
                    continue
                rhs = rhs + rab.wedge(
                    wv.contract_gen(b + 1).contract_gen(a + 1)
                    .scale(sig.metric(a + 1) * sig.metric(b + 1)))
        lhs_norm = max(lhs_norm, lhs.norm())
        rhs_norm = max(rhs_norm, rhs.norm())
        diff_norm = max(diff_norm, (lhs - rhs).norm())
    return {
        "lhs_max_norm": lhs_norm,
        "rhs_max_norm": rhs_norm,
        "difference_max_norm": diff_norm,
        "note": ("as printed, the source relation omits the d-delta term on the "
                 "left-hand side; both sides of the natural completion are "
                 "reported here rather than asserted"),
    }
