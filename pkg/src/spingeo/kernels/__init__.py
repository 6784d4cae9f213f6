"""Kernel selection: compiled Cython blade products with pure-Python fallback.

Set ``SPINGEO_PURE_PYTHON=1`` to force the fallback (used by the benchmark
and the kernel-equivalence tests).  ``mul_terms`` always takes and returns
plain ``{blade_bits: coeff}`` dicts; the compiled path is only engaged for
complex-float coefficients, exact-rational coefficients always go through
the pure implementation.
"""

import os

import numpy as np

from . import _pure

COMPILED = None
if os.environ.get("SPINGEO_PURE_PYTHON", "") not in ("1", "true", "yes"):
    try:
        from . import _compiled as COMPILED  # type: ignore[no-redef]
    except ImportError:
        COMPILED = None

USING_COMPILED = COMPILED is not None

reorder_swaps = _pure.reorder_swaps
blade_mul = _pure.blade_mul

# Below this many blade pairs the dict loop beats the array round-trip.
_ARRAY_CUTOFF = 16


def mul_terms(terms_a, terms_b, dim, neg_mask, wedge=False, exact=False):
    """Clifford or exterior product of two term maps."""
    if (
        COMPILED is None
        or exact
        or len(terms_a) * len(terms_b) < _ARRAY_CUTOFF
    ):
        return _pure.mul_terms(terms_a, terms_b, neg_mask, wedge)
    ka = np.fromiter(terms_a.keys(), dtype=np.uint64, count=len(terms_a))
    va = np.fromiter(terms_a.values(), dtype=np.complex128, count=len(terms_a))
    kb = np.fromiter(terms_b.keys(), dtype=np.uint64, count=len(terms_b))
    vb = np.fromiter(terms_b.values(), dtype=np.complex128, count=len(terms_b))
    keys, vals = COMPILED.mul_terms_arrays(ka, va, kb, vb, dim, neg_mask, wedge)
    return {int(k): complex(v) for k, v in zip(keys, vals)}


def mul_terms_pure(terms_a, terms_b, dim, neg_mask, wedge=False):
    """Forced pure-Python product (benchmark / equivalence checks)."""
    return _pure.mul_terms(terms_a, terms_b, neg_mask, wedge)


def mul_terms_compiled(terms_a, terms_b, dim, neg_mask, wedge=False):
    """Forced compiled product; raises if the extension is unavailable."""
    if COMPILED is None:
        raise RuntimeError("compiled kernel not available")
    ka = np.fromiter(terms_a.keys(), dtype=np.uint64, count=len(terms_a))
    va = np.fromiter(terms_a.values(), dtype=np.complex128, count=len(terms_a))
    kb = np.fromiter(terms_b.keys(), dtype=np.uint64, count=len(terms_b))
    vb = np.fromiter(terms_b.values(), dtype=np.complex128, count=len(terms_b))
    keys, vals = COMPILED.mul_terms_arrays(ka, va, kb, vb, dim, neg_mask, wedge)
    return {int(k): complex(v) for k, v in zip(keys, vals)}
