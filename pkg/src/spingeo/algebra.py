"""Graded multivector arithmetic for Cl(p,q) with an orthonormal diagonal metric.

The exterior algebra and the Clifford algebra share one carrier: a sparse
map from canonical basis blades (strictly ascending generator indices,
encoded as bitmasks) to coefficients.  Coefficients are complex doubles by
default; an exact rational mode (``fractions.Fraction`` pairs for the real
and imaginary parts) is available for algebra-identity tests.

Conventions fixed here and relied on everywhere else:

* generators ``e^1 .. e^dim`` square to +1 for the first ``pos`` indices
  and to -1 for the remaining ``neg`` ones;
* the grade involution ``eta`` scales grade p by (-1)^p, the
  anti-automorphism ``xi`` by (-1)^floor(p/2) -- numerically identical to
  the usual reversion sign (-1)^(p(p-1)/2) on every grade, only the
  labelling differs;
* the epsilon tensor is normalised by ``eps_{1..dim} = +1`` with indices
  raised by the metric, which fixes the Hodge signs so that applying the
  star twice on a p-form gives (-1)^(p(dim-p)) * sign(det g).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from . import kernels

PRUNE_EPS = 1e-14


class SignatureMismatch(ValueError):
    """Raised when operands live in Clifford algebras of different signature."""


@dataclass(frozen=True)
class Signature:
    """Diagonal signature: ``pos`` generators square to +1, ``neg`` to -1."""

    pos: int
    neg: int

    def __post_init__(self):
        if self.pos < 0 or self.neg < 0 or self.dim < 1:
            raise ValueError("need pos >= 0, neg >= 0, pos + neg >= 1")

    @property
    def dim(self) -> int:
        return self.pos + self.neg

    @property
    def neg_mask(self) -> int:
        """Bitmask of generators squaring to -1."""
        return ((1 << self.dim) - 1) ^ ((1 << self.pos) - 1)

    def metric(self, a: int) -> int:
        """g^{aa} for the 1-based generator index a."""
        if not 1 <= a <= self.dim:
            raise ValueError(f"generator index {a} out of range 1..{self.dim}")
        return 1 if a <= self.pos else -1

    def metric_det_sign(self) -> int:
        return -1 if self.neg % 2 else 1

    def to_ns(self) -> tuple[int, int]:
        """(n, s) of the R^{n,s} labelling: n negative, s positive generators."""
        return self.neg, self.pos

    @staticmethod
    def from_ns(n: int, s: int) -> "Signature":
        return Signature(pos=s, neg=n)


def blade_bits(indices) -> int:
    """Encode strictly ascending 1-based generator indices as a bitmask."""
    bits = 0
    prev = 0
    for i in indices:
        if i <= prev:
            raise ValueError(f"blade indices must be strictly ascending, got {tuple(indices)}")
        bits |= 1 << (i - 1)
        prev = i
    return bits


def blade_indices(bits: int) -> tuple[int, ...]:
    """Decode a bitmask back to ascending 1-based generator indices."""
    out = []
    i = 1
    while bits:
        if bits & 1:
            out.append(i)
        bits >>= 1
        i += 1
    return tuple(out)


def blade_grade(bits: int) -> int:
    return bits.bit_count()


class QC:
    """Exact complex number: a pair of rationals."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = Fraction(re)
        self.im = Fraction(im)

    def __add__(self, other):
        return QC(self.re + other.re, self.im + other.im)

    def __sub__(self, other):
        return QC(self.re - other.re, self.im - other.im)

    def __mul__(self, other):
        if isinstance(other, QC):
            return QC(self.re * other.re - self.im * other.im,
                      self.re * other.im + self.im * other.re)
        return QC(self.re * other, self.im * other)

    __rmul__ = __mul__

    def __neg__(self):
        return QC(-self.re, -self.im)

    def conjugate(self):
        return QC(self.re, -self.im)

    def __eq__(self, other):
        if isinstance(other, QC):
            return self.re == other.re and self.im == other.im
        return complex(self) == other

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __abs__(self):
        return abs(complex(self))

    def __repr__(self):
        return f"QC({self.re!r}, {self.im!r})"


def _is_zero(c, exact):
    if exact:
        return not c
    return abs(c) <= PRUNE_EPS


class Multivector:
    """Inhomogeneous element of Cl(p,q) = Lambda(V) on the blade basis.

    Immutable after construction; all operations return new values.
    """

    __slots__ = ("sig", "terms", "exact")

    def __init__(self, sig: Signature, terms=None, exact: bool = False, _prune: bool = True):
        self.sig = sig
        self.exact = exact
        if terms is None:
            terms = {}
        if _prune:
            terms = {b: c for b, c in terms.items() if not _is_zero(c, exact)}
        self.terms = terms

    # -- constructors -------------------------------------------------

    @classmethod
    def zero(cls, sig, exact=False):
        return cls(sig, {}, exact)

    @classmethod
    def scalar(cls, sig, value, exact=False):
        if exact:
            if not isinstance(value, QC):
                value = QC(value)
        else:
            value = complex(value)
        return cls(sig, {0: value}, exact)

    @classmethod
    def blade(cls, sig, indices, coeff=1.0, exact=False):
        """Coefficient times the canonical blade e^{i1 i2 ... ip}."""
        if exact:
            if not isinstance(coeff, QC):
                coeff = QC(coeff)
        else:
            coeff = complex(coeff)
        return cls(sig, {blade_bits(indices): coeff}, exact)

    @classmethod
    def basis_vector(cls, sig, a, exact=False):
        return cls.blade(sig, (a,), 1 if exact else 1.0, exact=exact)

    @classmethod
    def from_vector(cls, sig, components, exact=False):
        """Grade-1 element sum_a components[a-1] * e^a."""
        terms = {}
        for a, c in enumerate(components, start=1):
            if exact:
                if not isinstance(c, QC):
                    c = QC(c)
            else:
                c = complex(c)
            terms[1 << (a - 1)] = c
        return cls(sig, terms, exact)

    @classmethod
    def volume(cls, sig, exact=False):
        one = QC(1) if exact else complex(1.0)
        return cls(sig, {(1 << sig.dim) - 1: one}, exact)

    # -- ring structure -----------------------------------------------

    def _check(self, other):
        if self.sig != other.sig:
            raise SignatureMismatch(f"{self.sig} != {other.sig}")
        if self.exact != other.exact:
            raise ValueError("cannot mix exact and float multivectors")

    def __add__(self, other):
        if not isinstance(other, Multivector):
            return NotImplemented
        self._check(other)
        terms = dict(self.terms)
        for b, c in other.terms.items():
            terms[b] = terms[b] + c if b in terms else c
        return Multivector(self.sig, terms, self.exact)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return Multivector(self.sig, {b: -c for b, c in self.terms.items()},
                           self.exact, _prune=False)

    def scale(self, factor):
        if self.exact and not isinstance(factor, QC):
            factor = QC(factor)
        return Multivector(self.sig, {b: c * factor for b, c in self.terms.items()}, self.exact)

    def __mul__(self, factor):
        if isinstance(factor, Multivector):
            return NotImplemented
        return self.scale(factor)

    __rmul__ = __mul__

    # -- products -----------------------------------------------------

    def cmul(self, other: "Multivector") -> "Multivector":
        """Clifford product."""
        self._check(other)
        terms = kernels.mul_terms(self.terms, other.terms, self.sig.dim,
                                  self.sig.neg_mask, wedge=False, exact=self.exact)
        return Multivector(self.sig, terms, self.exact)

    def wedge(self, other: "Multivector") -> "Multivector":
        """Exterior product."""
        self._check(other)
        terms = kernels.mul_terms(self.terms, other.terms, self.sig.dim,
                                  self.sig.neg_mask, wedge=True, exact=self.exact)
        return Multivector(self.sig, terms, self.exact)

    def cbracket(self, other: "Multivector") -> "Multivector":
        """Clifford bracket [a, b] = a.b - b.a."""
        return self.cmul(other) - other.cmul(self)

    def contract_gen(self, a: int) -> "Multivector":
        """Plain interior derivative i_{X_a} (frame vector, no metric factor)."""
        bit = 1 << (a - 1)
        terms = {}
        for b, c in self.terms.items():
            if not (b & bit):
                continue
            below = (b & (bit - 1)).bit_count()
            terms[b ^ bit] = -c if below & 1 else c
        return Multivector(self.sig, terms, self.exact, _prune=False)

    def interior(self, v: "Multivector") -> "Multivector":
        """i with respect to the metric dual of the grade-1 element v.

        Matches ``x.w = x ^ w + i_x~ w``: contraction indices are raised, so
        ``interior(e1, e1) == g^{11}``.
        """
        self._check(v)
        if any(blade_grade(b) != 1 for b in v.terms):
            raise ValueError("interior direction must be grade 1")
        out = Multivector.zero(self.sig, self.exact)
        for b, c in v.terms.items():
            a = b.bit_length()
            g = self.sig.metric(a)
            piece = self.contract_gen(a).scale(c * g if not self.exact else c * QC(g))
            out = out + piece
        return out

    # -- involutions, grading, duality ---------------------------------

    def involute_eta(self) -> "Multivector":
        """Grade involution: grade-p part scaled by (-1)^p."""
        return Multivector(self.sig,
                           {b: (-c if blade_grade(b) & 1 else c) for b, c in self.terms.items()},
                           self.exact, _prune=False)

    def involute_xi(self) -> "Multivector":
        """Anti-automorphism xi: grade-p part scaled by (-1)^floor(p/2)."""
        return Multivector(self.sig,
                           {b: (-c if (blade_grade(b) // 2) & 1 else c)
                            for b, c in self.terms.items()},
                           self.exact, _prune=False)

    def involute(self, kind: str) -> "Multivector":
        if kind == "eta":
            return self.involute_eta()
        if kind == "xi":
            return self.involute_xi()
        raise ValueError(f"unknown involution {kind!r}")

    def grade(self, p: int) -> "Multivector":
        """Projection onto the grade-p part."""
        if not 0 <= p <= self.sig.dim:
            raise ValueError(f"grade {p} out of range 0..{self.sig.dim}")
        return Multivector(self.sig,
                           {b: c for b, c in self.terms.items() if blade_grade(b) == p},
                           self.exact, _prune=False)

    def grades(self) -> tuple[int, ...]:
        return tuple(sorted({blade_grade(b) for b in self.terms}))

    def degree_pi(self) -> "Multivector":
        """The degree operator Pi = e^a ^ i_{X_a}: eigenvalue p on grade p."""
        terms = {}
        for b, c in self.terms.items():
            p = blade_grade(b)
            if p:
                terms[b] = c * p if not self.exact else c * QC(p)
        return Multivector(self.sig, terms, self.exact)

    def hodge(self) -> "Multivector":
        """Hodge star, applied gradewise to inhomogeneous input."""
        n = self.sig.dim
        full = (1 << n) - 1
        neg_mask = self.sig.neg_mask
        terms = {}
        for b, c in self.terms.items():
            comp = full ^ b
            sign = -1 if kernels.reorder_swaps(b, comp) & 1 else 1
            if (b & neg_mask).bit_count() & 1:
                sign = -sign
            cc = c * sign if not self.exact else c * QC(sign)
            terms[comp] = terms.get(comp, 0) + cc if comp in terms else cc
        return Multivector(self.sig, terms, self.exact)

    # -- queries --------------------------------------------------------

    def scalar_part(self):
        c = self.terms.get(0, QC(0) if self.exact else 0.0)
        return c

    def coeff(self, indices):
        return self.terms.get(blade_bits(indices), QC(0) if self.exact else 0.0)

    def norm(self) -> float:
        """Coefficient 2-norm in the orthonormal coframe."""
        return math.sqrt(sum(abs(complex(c)) ** 2 for c in self.terms.values()))

    def conj(self) -> "Multivector":
        return Multivector(self.sig, {b: c.conjugate() for b, c in self.terms.items()},
                           self.exact, _prune=False)

    def to_float(self) -> "Multivector":
        if not self.exact:
            return self
        return Multivector(self.sig, {b: complex(c) for b, c in self.terms.items()}, False)

    def allclose(self, other: "Multivector", tol: float = 1e-12) -> bool:
        return (self - other).norm() <= tol

    def __eq__(self, other):
        if not isinstance(other, Multivector):
            return NotImplemented
        return self.sig == other.sig and self.terms == other.terms

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for b in sorted(self.terms, key=lambda b: (blade_grade(b), b)):
            c = self.terms[b]
            name = "1" if b == 0 else "e" + "".join(str(i) for i in blade_indices(b))
            parts.append(f"({c})*{name}")
        return " + ".join(parts)

    # -- serialization ---------------------------------------------------

    def to_json(self) -> dict:
        """JSON envelope; lossless round-trip in float mode."""
        items = []
        for b in sorted(self.terms, key=lambda b: (blade_grade(b), b)):
            c = complex(self.terms[b])
            items.append({"blade": list(blade_indices(b)), "re": c.real, "im": c.imag})
        return {"signature": {"pos": self.sig.pos, "neg": self.sig.neg}, "terms": items}

    @classmethod
    def from_json(cls, data: dict) -> "Multivector":
        sig = Signature(data["signature"]["pos"], data["signature"]["neg"])
        terms = {}
        for item in data["terms"]:
            terms[blade_bits(item["blade"])] = complex(item["re"], item["im"])
        return cls(sig, terms, exact=False, _prune=False)


def all_blades(dim: int, grade: int | None = None):
    """Iterate blade bitmasks, optionally restricted to one grade."""
    if grade is None:
        return range(1 << dim)
    return (blade_bits(c) for c in combinations(range(1, dim + 1), grade))


def lower_blade_sign(sig: Signature, bits: int) -> int:
    """Product of g_{aa} over the blade's generators (index lowering factor)."""
    return -1 if (bits & sig.neg_mask).bit_count() & 1 else 1


def random_multivector(sig: Signature, rng, grades=None, real=False) -> Multivector:
    """Dense random multivector with coefficients in [-1, 1] (+ i[-1, 1])."""
    terms = {}
    for b in all_blades(sig.dim):
        if grades is not None and blade_grade(b) not in grades:
            continue
        c = rng.uniform(-1, 1)
        if not real:
            c = complex(c, rng.uniform(-1, 1))
        terms[b] = c
    return Multivector(sig, terms)
