"""Polynomial solution-space solvers on flat charts.

Each solver assembles the named linear equation on a polynomial ansatz
(bounded total degree), extracts a numerical null-space basis by SVD, and
re-checks every basis element against the residual of the equation.  The
maximal dimensions on flat space are the constant-curvature counts

    KY p-forms   : K_p = (n+1)! / ((p+1)! (n-p)!)
    CKY p-forms  : C_p = (n+2)! / ((p+1)! (n-p+1)!)
    twistor      : 2 * 2^floor(n/2)  (complex),

attained with degree 1 (KY, twistor) and degree 2 (CKY) ansaetze.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import product

import numpy as np

from ..algebra import Signature, all_blades, blade_indices
from .. import spinors as _sp
from .base import Poly, PolyFormField, PolySpinorField, sample_points
from .calculus import covd, dirac, exterior_d, coderivative, twistor_op
from .equations import residual
from .geometry import Geometry, make_geometry

SVD_RELATIVE_CUTOFF = 1e-8


def ky_count(n: int, p: int) -> int:
    return math.comb(n + 1, p + 1)


def cky_count(n: int, p: int) -> int:
    return math.comb(n + 2, p + 1)


def cky_minus_ky_count(n: int, p: int) -> int:
    return math.comb(n + 1, p)


@dataclass
class SolutionSpace:
    equation: str
    degree: int
    basis: list
    dimension: int
    possibly_truncated: bool
    residuals: list

    def to_json(self) -> dict:
        out = {
            "equation": self.equation,
            "degree": self.degree,
            "dimension": self.dimension,
            "possibly_truncated": self.possibly_truncated,
            "max_residual": max(self.residuals, default=0.0),
            "basis": [],
        }
        for elem in self.basis:
            if isinstance(elem, PolyFormField):
                entry = {}
                for bits, poly in elem.terms.items():
                    key = ",".join(str(i) for i in blade_indices(bits)) or "scalar"
                    entry[key] = {
                        " ".join(map(str, e)): [c.real, c.imag]
                        for e, c in poly.terms.items()
                    }
                out["basis"].append(entry)
            else:
                entry = {}
                for j, poly in enumerate(elem.comps):
                    entry[f"component {j}"] = {
                        " ".join(map(str, e)): [c.real, c.imag]
                        for e, c in poly.terms.items()
                    }
                out["basis"].append(entry)
        return out


def _monomials(n: int, degree: int):
    return [e for e in product(range(degree + 1), repeat=n) if sum(e) <= degree]


def _form_unknowns(sig: Signature, p: int, degree: int):
    blades = list(all_blades(sig.dim, p))
    mons = _monomials(sig.dim, degree)
    return [(b, e) for b in blades for e in mons]


def _apply_operator_rows(out_fields, coords):
    """Stack the polynomial coefficients of residual fields into a column."""
    col = {}
    for idx, field in enumerate(out_fields):
        if isinstance(field, PolyFormField):
            for bits, poly in field.terms.items():
                for e, c in poly.terms.items():
                    col[(idx, bits, e)] = c
        else:
            for j, poly in enumerate(field.comps):
                for e, c in poly.terms.items():
                    col[(idx, j, e)] = c
    for key, c in col.items():
        if key not in coords:
            coords[key] = len(coords)
    return col


def _nullspace(columns, coords, n_unknowns):
    m = np.zeros((len(coords), n_unknowns), dtype=complex)
    for j, col in enumerate(columns):
        for key, c in col.items():
            m[coords[key], j] = c
    if m.shape[0] == 0:
        return np.eye(n_unknowns, dtype=complex)
    _, s, vh = np.linalg.svd(m)
    if s.size == 0:
        return np.eye(n_unknowns, dtype=complex)
    cutoff = SVD_RELATIVE_CUTOFF * s[0]
    rank = int(np.sum(s > cutoff))
    return vh[rank:].conj().T


def _solve_linear(make_field, n_unknowns, operator):
    """Null space of a field-valued linear operator over the ansatz."""
    coords: dict = {}
    columns = []
    for j in range(n_unknowns):
        coeffs = np.zeros(n_unknowns, dtype=complex)
        coeffs[j] = 1.0
        out_fields = operator(make_field(coeffs))
        columns.append(_apply_operator_rows(out_fields, coords))
    null = _nullspace(columns, coords, n_unknowns)
    return [make_field(null[:, k]) for k in range(null.shape[1])]


def _ky_operator(eq, geom, p):
    n = geom.dim
    sig = geom.sig

    def operator(w):
        dw = exterior_d(w, geom)
        sw = coderivative(w, geom)
        out = []
        for a in range(1, n + 1):
            r = covd(w, a, geom) + dw.contract_gen(a).scale(-1.0 / (p + 1))
            if eq == "cky":
                from ..algebra import Multivector
                e_low = PolyFormField.constant(
                    Multivector.basis_vector(sig, a).scale(sig.metric(a)))
                r = r + e_low.wedge(sw).scale(1.0 / (n - p + 1))
            out.append(r)
        return out

    return operator


def solve_space(eq, sig: Signature, degree: int, check_truncation: bool = True,
                _residual_tol: float = 1e-9) -> SolutionSpace:
    """Solve ky(p) | cky(p) | twistor | parallel_spinor | harmonic_poly on flat space.

    ``eq`` is either a string or a tuple ("ky", p) / ("cky", p).
    """
    geom = make_geometry("flat", sig)
    n = sig.dim

    if isinstance(eq, tuple):
        name, p = eq
    else:
        name, p = eq, None

    if name in ("ky", "cky"):
        if p is None or not 1 <= p <= n - 1:
            raise ValueError("ky/cky need a degree 1 <= p <= n-1")
        min_deg = 1 if name == "ky" else 2
        if degree < min_deg:
            raise ValueError(f"{name} needs polynomial degree >= {min_deg}")
        unknowns = _form_unknowns(sig, p, degree)

        def make_field(coeffs):
            terms: dict = {}
            for (b, e), c in zip(unknowns, coeffs):
                if c == 0:
                    continue
                poly = terms.get(b)
                add = Poly(n, {e: c})
                terms[b] = add if poly is None else poly + add
            return PolyFormField(sig, terms)

        basis = _solve_linear(make_field, len(unknowns), _ky_operator(name, geom, p))
        label = f"{name}({p})"
        res_eq = name
    elif name in ("twistor", "parallel_spinor", "harmonic_poly"):
        if degree < 1 and name != "harmonic_poly":
            raise ValueError(f"{name} needs polynomial degree >= 1")
        rep = _sp.build_rep(sig)
        mons = _monomials(n, degree)
        unknowns = [(j, e) for j in range(rep.rep_dim) for e in mons]

        def make_field(coeffs):
            comps = [Poly(n, {}) for _ in range(rep.rep_dim)]
            for (j, e), c in zip(unknowns, coeffs):
                if c != 0:
                    comps[j] = comps[j] + Poly(n, {e: c})
            return PolySpinorField(rep, comps)

        if name == "twistor":
            def operator(psi):
                return [twistor_op(psi, a, geom) for a in range(1, n + 1)]
            res_eq = "twistor"
        elif name == "parallel_spinor":
            def operator(psi):
                return [covd(psi, a, geom) for a in range(1, n + 1)]
            res_eq = "parallel"
        else:
            def operator(psi):
                return [dirac(psi, geom)]
            res_eq = "harmonic"
        basis = _solve_linear(make_field, len(unknowns), operator)
        label = name
    else:
        raise ValueError(f"unknown solve_space equation {eq!r}")

    residuals = [residual(res_eq, [b], geom, {}) for b in basis]
    bad = [r for r in residuals if r > _residual_tol]
    if bad:
        raise AssertionError(f"null-space element fails residual re-check: {max(bad):.3e}")

    truncated = False
    if check_truncation:
        bigger = solve_space(eq, sig, degree + 1, check_truncation=False)
        truncated = bigger.dimension > len(basis)

    return SolutionSpace(equation=label, degree=degree, basis=basis,
                         dimension=len(basis), possibly_truncated=truncated,
                         residuals=residuals)


def sphere_killing_spinors(geom: Geometry, lam: complex, count: int = 40,
                           seed: int = 0):
    """Numeric Killing-spinor basis on the stereographic sphere chart.

    Ansatz: conformal weight times a degree-1 polynomial spinor,
    psi(x) = exp(sigma/2) (a + x.b); solved by least squares over sample
    points, returning (basis columns for (a, b), singular values, residual
    checker).  No closed formula is asserted.
    """
    sig = geom.sig
    rep = _sp.build_rep(sig)
    n = sig.dim
    N = rep.rep_dim
    pts = sample_points(geom, count, seed)

    def make_field(a_col, b_col):
        from ..algebra import Multivector

        def fn(x):
            weight = math.exp(0.5 * geom.sigma.value(x))
            xmv = Multivector.from_vector(sig, x)
            return weight * (a_col + _sp.act(xmv, b_col, rep))

        from .base import CallableSpinorField
        return CallableSpinorField(rep, fn)

    n_unknowns = 2 * N
    rows = []
    for j in range(n_unknowns):
        a_col = np.zeros(N, dtype=complex)
        b_col = np.zeros(N, dtype=complex)
        (a_col if j < N else b_col)[j % N] = 1.0
        psi = make_field(a_col, b_col)
        col = []
        for a in range(1, n + 1):
            grad = covd(psi, a, geom)
            e_low = rep.gammas[a - 1] * sig.metric(a)
            for x in pts:
                col.append(grad.eval(x) - lam * (e_low @ psi.eval(x)))
        rows.append(np.concatenate(col))
    m = np.array(rows).T
    _, s, vh = np.linalg.svd(m)
    cutoff = 1e-6 * s[0]
    rank = int(np.sum(s > cutoff))
    null = vh[rank:].conj().T
    fields = [make_field(null[:N, k], null[N:, k]) for k in range(null.shape[1])]
    return fields, s


def defect_dimensions(sig: Signature, degree: int = 2) -> dict:
    """Observed vs formula dimensions for KY/CKY spaces (diagnostic)."""
    n = sig.dim
    out = {}
    for p in range(1, n):
        ky = solve_space(("ky", p), sig, max(1, degree - 1), check_truncation=False)
        cky = solve_space(("cky", p), sig, degree, check_truncation=False)
        out[p] = {
            "ky": (ky.dimension, ky_count(n, p)),
            "cky": (cky.dimension, cky_count(n, p)),
        }
    return out
