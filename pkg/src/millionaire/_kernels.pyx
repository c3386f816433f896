# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled evaluation kernels for per-bit order-preserving functions.

These are the hot inner loops of the exhaustive verification sweeps: a table
of F over all 2**n inputs, a strict-monotonicity scan, and an order-at-a-point
scan.  All arithmetic is int64; callers must pre-check that values and sums
fit (millionaire.kernels does) and otherwise use the pure fallback.
"""

from libc.stdlib cimport free, malloc


cdef long long* _build_table(list zero_vals, list one_vals, int n) except NULL:
    cdef long long* diffs = <long long*> malloc(n * sizeof(long long))
    cdef long long* table = <long long*> malloc((1LL << n) * sizeof(long long))
    cdef long long base = 0
    cdef Py_ssize_t i, x, low, size
    if diffs == NULL or table == NULL:
        free(diffs)
        free(table)
        raise MemoryError()
    for i in range(n):
        diffs[i] = <long long> one_vals[i] - <long long> zero_vals[i]
        base += <long long> zero_vals[i]
    size = 1LL << n
    table[0] = base
    for x in range(1, size):
        low = x & (-x)
        table[x] = table[x ^ low] + diffs[_bit_index(low)]
    free(diffs)
    return table


cdef inline int _bit_index(Py_ssize_t low):
    cdef int i = 0
    while low > 1:
        low >>= 1
        i += 1
    return i


def opf_table(list zero_vals, list one_vals):
    """F(x) for every x in [0, 2**n), natural order."""
    cdef int n = len(zero_vals)
    if n != len(one_vals):
        raise ValueError("zero_vals and one_vals must have equal length")
    cdef long long* table = _build_table(zero_vals, one_vals, n)
    cdef Py_ssize_t x, size = 1LL << n
    try:
        return [table[x] for x in range(size)]
    finally:
        free(table)


def monotone_violation(list zero_vals, list one_vals):
    """First x >= 1 with F(x) <= F(x-1), or -1 if F is strictly increasing."""
    cdef int n = len(zero_vals)
    if n != len(one_vals):
        raise ValueError("zero_vals and one_vals must have equal length")
    cdef long long* table = _build_table(zero_vals, one_vals, n)
    cdef Py_ssize_t x, size = 1LL << n
    cdef long long prev = table[0]
    try:
        for x in range(1, size):
            if table[x] <= prev:
                return x
            prev = table[x]
        return -1
    finally:
        free(table)


def point_order_violation(list zero_vals, list one_vals, long long b):
    """First x ordered differently from b by F, or -1."""
    cdef int n = len(zero_vals)
    if n != len(one_vals):
        raise ValueError("zero_vals and one_vals must have equal length")
    cdef long long* table = _build_table(zero_vals, one_vals, n)
    cdef Py_ssize_t x, size = 1LL << n
    cdef long long fb
    if not 0 <= b < size:
        free(table)
        raise ValueError("anchor outside table")
    fb = table[b]
    try:
        for x in range(size):
            if x < b and table[x] >= fb:
                return x
            if x > b and table[x] <= fb:
                return x
        return -1
    finally:
        free(table)
