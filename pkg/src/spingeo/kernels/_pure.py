"""Pure-Python blade-product kernels.

Basis blades of Cl(p,q) are encoded as bitmasks: bit ``i`` set means the
generator ``e^(i+1)`` is a factor.  A product of two blades is another
blade (bit XOR) times an integer sign from (a) the transpositions needed
to merge the two ascending factor lists and (b) the metric squares of
repeated generators (diagonal metric, so each common generator contributes
``g^{aa} = -1`` iff its bit is set in ``neg_mask``).

These functions are the hot inner loop of every multivector operation;
``spingeo.kernels._compiled`` is a Cython translation with identical
semantics, selected at import time in ``spingeo.kernels``.
"""


def reorder_swaps(a: int, b: int) -> int:
    """Number of index transpositions to merge ascending blades a and b."""
    count = 0
    t = a >> 1
    while t:
        count += (t & b).bit_count()
        t >>= 1
    return count


def blade_mul(a: int, b: int, neg_mask: int):
    """Clifford product of basis blades: returns (result_blade, sign)."""
    sign = -1 if reorder_swaps(a, b) & 1 else 1
    if (a & b & neg_mask).bit_count() & 1:
        sign = -sign
    return a ^ b, sign


def mul_terms(terms_a: dict, terms_b: dict, neg_mask: int, wedge: bool) -> dict:
    """Product of two term maps {blade_bits: coeff}.

    wedge=True computes the exterior product (overlapping blades drop out),
    wedge=False the full Clifford product.  Coefficients may be complex
    floats or exact rationals; only +, * and negation are used.
    """
    out: dict = {}
    for a, ca in terms_a.items():
        for b, cb in terms_b.items():
            if wedge and (a & b):
                continue
            swaps = reorder_swaps(a, b)
            sign = -1 if swaps & 1 else 1
            if not wedge and (a & b & neg_mask).bit_count() & 1:
                sign = -sign
            key = a ^ b
            c = ca * cb
            if sign < 0:
                c = -c
            if key in out:
                out[key] = out[key] + c
            else:
                out[key] = c
    return out
