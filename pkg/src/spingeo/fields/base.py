"""Field representations: polynomial-exact and opaque-callable.

Every differential-geometry test object in this package is a field over a
single chart: a map from points to multivectors (FormField) or spinor
columns (SpinorField).  Two representations coexist behind one interface:

* polynomial fields carry per-blade (or per-component) multivariate
  polynomials, optionally times a common exponential prefactor
  exp(kappa . x); coordinate derivatives of these are exact coefficient
  shifts, so operator compositions of any depth stay exact;
* opaque fields wrap a plain evaluator; coordinate derivatives use
  central differences with one Richardson refinement.

Clifford-algebra operations on polynomial form fields reuse the blade
kernels directly: the kernel term loops only need +, * and negation of
coefficients, which ``Poly`` provides.
"""

from __future__ import annotations

import numpy as np

from ..algebra import Multivector, Signature, blade_grade
from ..kernels import _pure
from .. import spinors as _sp

FD_STEP = 1e-5


class Poly:
    """Multivariate polynomial times an optional exp(kappa . x) prefactor."""

    __slots__ = ("nvars", "terms", "kappa")

    def __init__(self, nvars, terms=None, kappa=None):
        self.nvars = nvars
        self.terms = {} if terms is None else {
            e: complex(c) for e, c in terms.items() if c != 0
        }
        self.kappa = None if kappa is None else tuple(complex(k) for k in kappa)

    @classmethod
    def const(cls, nvars, c, kappa=None):
        return cls(nvars, {(0,) * nvars: complex(c)}, kappa)

    @classmethod
    def coordinate(cls, nvars, a):
        """The coordinate function x^a (1-based)."""
        e = [0] * nvars
        e[a - 1] = 1
        return cls(nvars, {tuple(e): 1.0 + 0j})

    @classmethod
    def monomial(cls, nvars, exps, c=1.0, kappa=None):
        return cls(nvars, {tuple(exps): complex(c)}, kappa)

    def _match(self, other):
        if self.nvars != other.nvars:
            raise ValueError("variable-count mismatch")
        if self.kappa != other.kappa and self.terms and other.terms:
            raise ValueError("cannot add polynomials with different exp prefactors")

    def __add__(self, other):
        if not isinstance(other, Poly):
            return NotImplemented
        self._match(other)
        terms = dict(self.terms)
        for e, c in other.terms.items():
            terms[e] = terms.get(e, 0.0) + c
        return Poly(self.nvars, terms, self.kappa if self.terms else other.kappa)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return Poly(self.nvars, {e: -c for e, c in self.terms.items()}, self.kappa)

    def __mul__(self, other):
        if isinstance(other, Poly):
            if self.nvars != other.nvars:
                raise ValueError("variable-count mismatch")
            kappa = _add_kappa(self.kappa, other.kappa, self.nvars)
            terms: dict = {}
            for e1, c1 in self.terms.items():
                for e2, c2 in other.terms.items():
                    e = tuple(a + b for a, b in zip(e1, e2))
                    terms[e] = terms.get(e, 0.0) + c1 * c2
            return Poly(self.nvars, terms, kappa)
        return Poly(self.nvars, {e: c * other for e, c in self.terms.items()}, self.kappa)

    __rmul__ = __mul__

    def partial(self, a: int) -> "Poly":
        """Exact coordinate derivative d/dx^a (1-based)."""
        i = a - 1
        terms: dict = {}
        for e, c in self.terms.items():
            if e[i]:
                shifted = list(e)
                shifted[i] -= 1
                key = tuple(shifted)
                terms[key] = terms.get(key, 0.0) + c * e[i]
        if self.kappa is not None and self.kappa[i] != 0:
            for e, c in self.terms.items():
                terms[e] = terms.get(e, 0.0) + c * self.kappa[i]
        return Poly(self.nvars, terms, self.kappa)

    def conj(self) -> "Poly":
        kappa = None if self.kappa is None else tuple(k.conjugate() for k in self.kappa)
        return Poly(self.nvars, {e: c.conjugate() for e, c in self.terms.items()}, kappa)

    def eval(self, x) -> complex:
        total = 0.0 + 0.0j
        for e, c in self.terms.items():
            v = c
            for xi, ei in zip(x, e):
                if ei:
                    v = v * xi ** ei
            total += v
        if self.kappa is not None:
            total *= np.exp(sum(k * xi for k, xi in zip(self.kappa, x)))
        return complex(total)

    def degree(self) -> int:
        return max((sum(e) for e in self.terms), default=0)

    def is_zero(self, tol=0.0) -> bool:
        return all(abs(c) <= tol for c in self.terms.values())

    def __repr__(self):
        return f"Poly({self.terms!r}, kappa={self.kappa!r})"


def _add_kappa(k1, k2, nvars):
    if k1 is None:
        return k2
    if k2 is None:
        return k1
    return tuple(a + b for a, b in zip(k1, k2))


def _zero_poly(nvars):
    return Poly(nvars, {})


# ---------------------------------------------------------------------------
# form fields


class FormField:
    """Interface: point -> Multivector, plus coordinate derivatives."""

    sig: Signature

    def eval(self, x) -> Multivector:
        raise NotImplementedError

    def partial(self, a: int) -> "FormField":
        raise NotImplementedError

    @property
    def is_polynomial(self) -> bool:
        return isinstance(self, PolyFormField)

    def __call__(self, x):
        return self.eval(x)


class PolyFormField(FormField):
    """Sparse blade map with polynomial coefficients; exact derivatives."""

    def __init__(self, sig: Signature, terms=None):
        self.sig = sig
        self.terms = {} if terms is None else {b: p for b, p in terms.items() if p.terms}

    @classmethod
    def constant(cls, mv: Multivector):
        n = mv.sig.dim
        return cls(mv.sig, {b: Poly.const(n, complex(c)) for b, c in mv.terms.items()})

    @classmethod
    def zero(cls, sig):
        return cls(sig, {})

    def eval(self, x) -> Multivector:
        return Multivector(self.sig, {b: p.eval(x) for b, p in self.terms.items()})

    def partial(self, a: int) -> "PolyFormField":
        return PolyFormField(self.sig, {b: p.partial(a) for b, p in self.terms.items()})

    # pointwise algebra (exact): the kernel loops accept Poly coefficients

    def __add__(self, other):
        if isinstance(other, PolyFormField):
            terms = dict(self.terms)
            for b, p in other.terms.items():
                terms[b] = terms[b] + p if b in terms else p
            return PolyFormField(self.sig, terms)
        if isinstance(other, FormField):
            return LazyFormField.binary(self, other, lambda u, v: u + v)
        return NotImplemented

    def __sub__(self, other):
        return self + (-1.0) * other

    def __neg__(self):
        return self.scale(-1.0)

    def scale(self, c):
        """Scale by a complex number or a Poly."""
        return PolyFormField(self.sig, {b: p * c for b, p in self.terms.items()})

    def __mul__(self, c):
        if isinstance(c, (int, float, complex, Poly)):
            return self.scale(c)
        return NotImplemented

    __rmul__ = __mul__

    def wedge(self, other: "PolyFormField") -> "PolyFormField":
        terms = _pure.mul_terms(self.terms, other.terms, self.sig.neg_mask, True)
        return PolyFormField(self.sig, terms)

    def cmul(self, other: "PolyFormField") -> "PolyFormField":
        terms = _pure.mul_terms(self.terms, other.terms, self.sig.neg_mask, False)
        return PolyFormField(self.sig, terms)

    def contract_gen(self, a: int) -> "PolyFormField":
        bit = 1 << (a - 1)
        terms = {}
        for b, p in self.terms.items():
            if not (b & bit):
                continue
            below = (b & (bit - 1)).bit_count()
            terms[b ^ bit] = -p if below & 1 else p
        return PolyFormField(self.sig, terms)

    def involute_eta(self):
        return PolyFormField(self.sig, {b: (-p if blade_grade(b) & 1 else p)
                                        for b, p in self.terms.items()})

    def grade(self, p: int):
        return PolyFormField(self.sig, {b: q for b, q in self.terms.items()
                                        if blade_grade(b) == p})

    def grades(self):
        return tuple(sorted({blade_grade(b) for b in self.terms}))

    def hodge(self):
        from ..kernels import reorder_swaps
        n = self.sig.dim
        full = (1 << n) - 1
        neg = self.sig.neg_mask
        terms = {}
        for b, p in self.terms.items():
            comp = full ^ b
            sign = -1 if reorder_swaps(b, comp) & 1 else 1
            if (b & neg).bit_count() & 1:
                sign = -sign
            q = p * sign
            terms[comp] = terms[comp] + q if comp in terms else q
        return PolyFormField(self.sig, terms)

    def conj(self):
        return PolyFormField(self.sig, {b: p.conj() for b, p in self.terms.items()})

    def component(self, bits: int) -> Poly:
        return self.terms.get(bits, _zero_poly(self.sig.dim))


class CallableFormField(FormField):
    """Opaque evaluator; derivatives by central differences + Richardson."""

    def __init__(self, sig: Signature, fn, step: float = FD_STEP):
        self.sig = sig
        self.fn = fn
        self.step = step

    def eval(self, x) -> Multivector:
        return self.fn(np.asarray(x, dtype=float))

    def partial(self, a: int) -> "CallableFormField":
        return CallableFormField(self.sig, _fd_partial(self.fn, a, self.step), self.step)


class LazyFormField(FormField):
    """Pointwise combination of fields, evaluated on demand."""

    def __init__(self, sig: Signature, fields, op, step: float = FD_STEP):
        self.sig = sig
        self.fields = fields
        self.op = op
        self.step = step

    @classmethod
    def binary(cls, u, v, op):
        return cls(u.sig, (u, v), lambda vals: op(vals[0], vals[1]))

    def eval(self, x):
        return self.op([f.eval(x) for f in self.fields])

    def partial(self, a: int) -> "CallableFormField":
        return CallableFormField(self.sig, _fd_partial(self.eval, a, self.step), self.step)


def _fd_partial(fn, a: int, step: float):
    def deriv(x):
        x = np.asarray(x, dtype=float)
        e = np.zeros_like(x)
        e[a - 1] = 1.0
        def central(h):
            return (fn(x + h * e) - fn(x - h * e)) * (1.0 / (2 * h))
        d1 = central(step)
        d2 = central(step / 2)
        return d2 * (4.0 / 3.0) - d1 * (1.0 / 3.0)
    return deriv


# ---------------------------------------------------------------------------
# spinor fields


class SpinorField:
    """Interface: point -> complex column of length rep.rep_dim."""

    rep: _sp.GammaRep

    @property
    def sig(self):
        return self.rep.sig

    def eval(self, x) -> np.ndarray:
        raise NotImplementedError

    def partial(self, a: int):
        raise NotImplementedError

    @property
    def is_polynomial(self) -> bool:
        return isinstance(self, PolySpinorField)

    def __call__(self, x):
        return self.eval(x)


class PolySpinorField(SpinorField):
    def __init__(self, rep, comps):
        self.rep = rep
        self.comps = list(comps)
        if len(self.comps) != rep.rep_dim:
            raise ValueError("component count != rep_dim")

    @classmethod
    def constant(cls, rep, column):
        n = rep.sig.dim
        return cls(rep, [Poly.const(n, c) for c in column])

    @classmethod
    def zero(cls, rep):
        n = rep.sig.dim
        return cls(rep, [_zero_poly(n) for _ in range(rep.rep_dim)])

    def eval(self, x) -> np.ndarray:
        return np.array([p.eval(x) for p in self.comps], dtype=complex)

    def partial(self, a: int) -> "PolySpinorField":
        return PolySpinorField(self.rep, [p.partial(a) for p in self.comps])

    def __add__(self, other):
        if isinstance(other, PolySpinorField):
            return PolySpinorField(self.rep, [p + q for p, q in zip(self.comps, other.comps)])
        if isinstance(other, SpinorField):
            return LazySpinorField(self.rep, (self, other), lambda v: v[0] + v[1])
        return NotImplemented

    def __sub__(self, other):
        return self + other.scale(-1.0)

    def scale(self, c):
        """Scale by a complex number or a Poly."""
        return PolySpinorField(self.rep, [p * c for p in self.comps])

    def matmul(self, mat: np.ndarray) -> "PolySpinorField":
        """Apply a constant matrix to the column."""
        n = self.rep.sig.dim
        out = []
        for i in range(self.rep.rep_dim):
            s = _zero_poly(n)
            for j, p in enumerate(self.comps):
                m = complex(mat[i, j])
                if m != 0:
                    s = s + p * m
            out.append(s)
        return PolySpinorField(self.rep, out)

    def act_mv(self, mv: Multivector) -> "PolySpinorField":
        """Clifford action of a constant multivector."""
        return self.matmul(self.rep.matrix(mv))

    def act_form(self, w: PolyFormField) -> "PolySpinorField":
        """Clifford action of a polynomial form field, pointwise exact."""
        n = self.rep.sig.dim
        out = [_zero_poly(n) for _ in range(self.rep.rep_dim)]
        for bits, poly in w.terms.items():
            mat = self.rep.blade_matrix(bits)
            for i in range(self.rep.rep_dim):
                s = out[i]
                for j, p in enumerate(self.comps):
                    m = complex(mat[i, j])
                    if m != 0:
                        s = s + (p * poly) * m
                out[i] = s
        return PolySpinorField(self.rep, out)


class CallableSpinorField(SpinorField):
    def __init__(self, rep, fn, step: float = FD_STEP):
        self.rep = rep
        self.fn = fn
        self.step = step

    def eval(self, x) -> np.ndarray:
        return np.asarray(self.fn(np.asarray(x, dtype=float)), dtype=complex)

    def partial(self, a: int) -> "CallableSpinorField":
        return CallableSpinorField(self.rep, _fd_partial(self.fn, a, self.step), self.step)


class LazySpinorField(SpinorField):
    def __init__(self, rep, fields, op, step: float = FD_STEP):
        self.rep = rep
        self.fields = fields
        self.op = op
        self.step = step

    def eval(self, x):
        return self.op([f.eval(x) for f in self.fields])

    def partial(self, a: int) -> "CallableSpinorField":
        return CallableSpinorField(self.rep, _fd_partial(self.eval, a, self.step), self.step)


# ---------------------------------------------------------------------------
# generic pointwise combinators (used by the operator layer)


def form_add(u: FormField, v: FormField) -> FormField:
    if isinstance(u, PolyFormField) and isinstance(v, PolyFormField):
        return u + v
    return LazyFormField.binary(u, v, lambda a, b: a + b)


def form_scale(u: FormField, c) -> FormField:
    if isinstance(u, PolyFormField):
        return u.scale(c)
    return LazyFormField(u.sig, (u,), lambda vals: vals[0] * c)


def form_map(u: FormField, mv_op, poly_op=None) -> FormField:
    """Lift a pointwise Multivector -> Multivector map to fields."""
    if isinstance(u, PolyFormField) and poly_op is not None:
        return poly_op(u)
    return LazyFormField(u.sig, (u,), lambda vals: mv_op(vals[0]))


def spinor_add(u: SpinorField, v: SpinorField) -> SpinorField:
    if isinstance(u, PolySpinorField) and isinstance(v, PolySpinorField):
        return u + v
    return LazySpinorField(u.rep, (u, v), lambda vals: vals[0] + vals[1])


def spinor_scale(u: SpinorField, c) -> SpinorField:
    if isinstance(u, PolySpinorField):
        return u.scale(c)
    return LazySpinorField(u.rep, (u,), lambda vals: vals[0] * c)


def spinor_matmul(u: SpinorField, mat: np.ndarray) -> SpinorField:
    if isinstance(u, PolySpinorField):
        return u.matmul(mat)
    return LazySpinorField(u.rep, (u,), lambda vals: mat @ vals[0])


def act_on_spinor_field(w, psi: SpinorField) -> SpinorField:
    """Clifford action of a multivector or form field on a spinor field."""
    if isinstance(w, Multivector):
        return spinor_matmul(psi, psi.rep.matrix(w))
    if isinstance(w, PolyFormField) and isinstance(psi, PolySpinorField):
        return psi.act_form(w)
    return LazySpinorField(psi.rep, (w, psi),
                           lambda vals: _sp.act(vals[0], vals[1], psi.rep))


def inner_field(psi: SpinorField, phi: SpinorField, form: _sp.AdjointForm) -> FormField:
    """(psi, phi)(x) as a grade-0 form field; exact for polynomial inputs."""
    sig = psi.rep.sig
    if isinstance(psi, PolySpinorField) and isinstance(phi, PolySpinorField):
        n = sig.dim
        total = _zero_poly(n)
        A = form.A
        for i in range(psi.rep.rep_dim):
            left = psi.comps[i].conj() if form.conjugating else psi.comps[i]
            for j in range(phi.rep.rep_dim):
                a = complex(A[i, j])
                if a != 0:
                    total = total + (left * phi.comps[j]) * a
        return PolyFormField(sig, {0: total})
    def fn(x):
        val = form.inner(psi.eval(x), phi.eval(x))
        return Multivector.scalar(sig, val)
    return CallableFormField(sig, fn)


def bilinear_field(psi: SpinorField, phi: SpinorField, form: _sp.AdjointForm,
                   p: int) -> FormField:
    """Grade-p bilinear (psi phibar)_p as a form field."""
    from ..algebra import all_blades, lower_blade_sign
    sig = psi.rep.sig
    if isinstance(psi, PolySpinorField) and isinstance(phi, PolySpinorField):
        terms = {}
        for bits in all_blades(sig.dim, p):
            s = lower_blade_sign(sig, bits)
            if (p // 2) % 2:
                s = -s
            acted = psi.matmul(form.rep.blade_matrix(bits))
            coeff = inner_field(phi, acted, form).component(0) * s
            if coeff.terms:
                terms[bits] = coeff
        return PolyFormField(sig, terms)
    def fn(x):
        return _sp.bilinear(psi.eval(x), phi.eval(x), form, p)
    return CallableFormField(sig, fn)


# ---------------------------------------------------------------------------
# deterministic sample points


def halton_points(dim: int, count: int, seed: int = 0, box: float = 1.0,
                  max_norm: float | None = None) -> np.ndarray:
    """Low-discrepancy points in [-box, box]^dim, optionally norm-filtered.

    The seed offsets the Halton index, so runs are reproducible from the
    recorded seed alone.
    """
    primes = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29][:dim]
    pts = []
    i = seed * 1009 + 1
    while len(pts) < count:
        p = np.array([_halton(i, b) for b in primes]) * 2 * box - box
        i += 1
        if max_norm is not None and np.linalg.norm(p) > max_norm:
            continue
        pts.append(p)
    return np.array(pts)


def _halton(i: int, base: int) -> float:
    f, r = 1.0, 0.0
    while i > 0:
        f /= base
        r += f * (i % base)
        i //= base
    return r


def sample_points(geom, count: int = 25, seed: int = 0) -> np.ndarray:
    """Default verification points: unit box, pole-avoiding on curved charts."""
    max_norm = 0.9 if geom.kind != "flat" else None
    return halton_points(geom.sig.dim, count, seed=seed, max_norm=max_norm)


def form_wedge(u: FormField, v: FormField) -> FormField:
    if isinstance(u, PolyFormField) and isinstance(v, PolyFormField):
        return u.wedge(v)
    return LazyFormField.binary(u, v, lambda a, b: a.wedge(b))


def form_cmul(u: FormField, v: FormField) -> FormField:
    if isinstance(u, PolyFormField) and isinstance(v, PolyFormField):
        return u.cmul(v)
    return LazyFormField.binary(u, v, lambda a, b: a.cmul(b))


def form_contract_gen(u: FormField, a: int) -> FormField:
    if isinstance(u, PolyFormField):
        return u.contract_gen(a)
    return LazyFormField(u.sig, (u,), lambda vals, a=a: vals[0].contract_gen(a))


def form_grade(u: FormField, p: int) -> FormField:
    if isinstance(u, PolyFormField):
        return u.grade(p)
    return LazyFormField(u.sig, (u,), lambda vals, p=p: vals[0].grade(p))


def form_hodge(u: FormField) -> FormField:
    if isinstance(u, PolyFormField):
        return u.hodge()
    return LazyFormField(u.sig, (u,), lambda vals: vals[0].hodge())


def form_grades_at(u: FormField, x) -> tuple:
    if isinstance(u, PolyFormField):
        return u.grades()
    return u.eval(x).grades()


def homogeneous_degree(u: FormField, probe=None) -> int:
    """Grade of a homogeneous form field (raises if inhomogeneous)."""
    if isinstance(u, PolyFormField):
        gs = u.grades()
    elif probe is not None:
        gs = u.eval(probe).grades()
    else:
        gs = ()
        for x in halton_points(u.sig.dim, 4, seed=17, box=0.6):
            gs = u.eval(x).grades()
            if gs:
                break
    if len(gs) != 1:
        raise ValueError(f"expected a homogeneous form field, found grades {gs}")
    return gs[0]


class SpinorValued1Form:
    """Psi = psi_a (x) e^a: one spinor field per coframe label."""

    def __init__(self, comps):
        comps = list(comps)
        if not comps:
            raise ValueError("need dim components")
        self.comps = comps
        self.rep = comps[0].rep
        if len(comps) != self.rep.sig.dim:
            raise ValueError("component count != dim")

    @property
    def sig(self):
        return self.rep.sig

    def eval(self, x):
        return [c.eval(x) for c in self.comps]

    def trace_clifford(self) -> SpinorField:
        """e^a . psi_a (the tracelessness combination)."""
        out = None
        for a, comp in enumerate(self.comps, start=1):
            piece = spinor_matmul(comp, self.rep.gammas[a - 1])
            out = piece if out is None else spinor_add(out, piece)
        return out
