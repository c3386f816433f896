"""Pure-Python versions of the hot evaluation kernels.

Same semantics as the compiled module millionaire._kernels; used when the
extension is unavailable or when values can overflow 64-bit accumulators
(Python ints are unbounded here).
"""

from __future__ import annotations

BACKEND = "pure-python"


def opf_table(zero_vals, one_vals):
    """F(x) for every x in [0, 2**n), natural order.

    F(x) = sum over bit positions of one_vals[i] if bit i of x is set else
    zero_vals[i].  Computed by reusing F(x with lowest set bit cleared).
    """
    n = len(zero_vals)
    if n != len(one_vals):
        raise ValueError("zero_vals and one_vals must have equal length")
    diffs = [o - z for z, o in zip(zero_vals, one_vals)]
    base = sum(zero_vals)
    table = [base] * (1 << n)
    for x in range(1, 1 << n):
        low = x & -x
        table[x] = table[x ^ low] + diffs[low.bit_length() - 1]
    return table


def monotone_violation(zero_vals, one_vals):
    """First x >= 1 with F(x) <= F(x-1), or -1 if F is strictly increasing."""
    n = len(zero_vals)
    diffs = [o - z for z, o in zip(zero_vals, one_vals)]
    prev = sum(zero_vals)
    table = [prev] * (1 << n)
    for x in range(1, 1 << n):
        low = x & -x
        cur = table[x ^ low] + diffs[low.bit_length() - 1]
        table[x] = cur
        if cur <= prev:
            return x
        prev = cur
    return -1


def point_order_violation(zero_vals, one_vals, b):
    """First x ordered differently from b by F, or -1.

    A violation is x < b with F(x) >= F(b), or x > b with F(x) <= F(b).
    Equal F values at x != b count as violations in both directions.
    """
    table = opf_table(zero_vals, one_vals)
    fb = table[b]
    for x, fx in enumerate(table):
        if x < b and fx >= fb:
            return x
        if x > b and fx <= fb:
            return x
    return -1
