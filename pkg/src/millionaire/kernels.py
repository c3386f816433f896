"""Kernel dispatch: compiled extension when available, pure Python otherwise.

Set MILLIONAIRE_PURE=1 to force the pure implementation (used by the tests
and the kernel benchmark to compare both paths).  int64_safe() tells callers
whether the compiled kernels may be used for a given map without overflow.
"""

from __future__ import annotations

import os

from . import _kernels_py

_INT64_GUARD = 1 << 62

try:
    from . import _kernels as _compiled  # type: ignore[attr-defined]

    HAVE_COMPILED = True
except ImportError:  # pragma: no cover - depends on build environment
    _compiled = None
    HAVE_COMPILED = False

_active = _kernels_py if os.environ.get("MILLIONAIRE_PURE") == "1" or not HAVE_COMPILED else _compiled


def backend_name() -> str:
    return "compiled" if _active is _compiled and _compiled is not None else "pure-python"


def int64_safe(zero_vals, one_vals) -> bool:
    """True when every value and every partial sum fits comfortably in int64."""
    total = 0
    for z, o in zip(zero_vals, one_vals):
        if abs(z) >= _INT64_GUARD or abs(o) >= _INT64_GUARD:
            return False
        total += max(abs(z), abs(o))
        if total >= _INT64_GUARD:
            return False
    return True


def opf_table(zero_vals, one_vals):
    impl = _active if int64_safe(zero_vals, one_vals) else _kernels_py
    return impl.opf_table(list(zero_vals), list(one_vals))


def monotone_violation(zero_vals, one_vals):
    impl = _active if int64_safe(zero_vals, one_vals) else _kernels_py
    return impl.monotone_violation(list(zero_vals), list(one_vals))


def point_order_violation(zero_vals, one_vals, b):
    impl = _active if int64_safe(zero_vals, one_vals) else _kernels_py
    return impl.point_order_violation(list(zero_vals), list(one_vals), b)
