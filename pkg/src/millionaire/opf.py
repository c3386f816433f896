"""Order-preserving encodings built from independent per-bit mappings.

Three constructions share one evaluation rule, F(x) = sum of f_i(x_i) over
the bit positions of x (LSB = position 1):

* GeneralOPF -- any family f_1..f_n satisfying, at every position i,

      f_i(1) - f_i(0)  >  sum of (f_j(1) - f_j(0)) for j < i        (gap rule)
      f_i(1)           >  f_i(0)                                    (order rule)

  The gap rule makes each position's gap outweigh everything below it, which
  is exactly what forces F to be strictly order preserving on equal-width
  inputs; validate_general checks both rules.

* SharedParams -- the closed-form family f_i(0) = s, f_i(1) = s + k**i * l
  with s >= 1, k >= 2, l >= 1.  It satisfies the rules above at every
  position, needs no table to share (three integers), preserves order even
  across inputs of different minimal widths, and k*l is precisely the image
  gap between two inputs differing only in their lowest bit.

* PointOPF -- order preserving only relative to a fixed anchor value b.
  Positions where the anchor bit is 0 are "rises", positions where it is 1
  are "falls" (both named for f_i(1) - f_i(0)).  Each anchor-side value is
  drawn uniformly from [range_lo, range_hi]; the complementary value is then
  drawn from an open interval of width l chosen so that every fall exceeds
  the rises below it and every rise exceeds the falls below it.  That is
  sufficient for order preservation at b and nothing more: global
  monotonicity genuinely fails for these instances.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from . import kernels
from .bits import BitString
from .prg import Seed, expand, int_in_range


class ConstructionError(ValueError):
    """A draw or injected value falls outside its required interval."""


@dataclass(frozen=True)
class PerBitMap:
    """The two images of one bit position: (f(0), f(1))."""

    zero_val: int
    one_val: int

    @property
    def gap(self) -> int:
        return self.one_val - self.zero_val

    def __getitem__(self, bit: int) -> int:
        return self.one_val if bit else self.zero_val


@dataclass(frozen=True)
class GeneralOPF:
    maps: tuple[PerBitMap, ...]

    def __post_init__(self):
        if not self.maps:
            raise ValueError("need at least one per-bit map")

    @property
    def n(self) -> int:
        return len(self.maps)

    def zero_vals(self) -> list[int]:
        return [m.zero_val for m in self.maps]

    def one_vals(self) -> list[int]:
        return [m.one_val for m in self.maps]

    def to_json_dict(self) -> dict:
        return {"maps": [[m.zero_val, m.one_val] for m in self.maps]}


def validate_general(f: GeneralOPF) -> tuple[bool, Optional[int]]:
    """Check the gap and order rules; returns (valid, first bad position).

    Positions are 1-based; both rules are checked at each position in
    ascending order, so the reported position is the lowest offender.
    """
    running = 0
    for i, m in enumerate(f.maps, start=1):
        if m.one_val <= m.zero_val:
            return False, i
        if m.gap <= running:
            return False, i
        running += m.gap
    return True, None


def eval_opf(f: GeneralOPF, x: BitString) -> int:
    """Sum of f_i(x_i) over the positions of x (shorter x uses fewer maps)."""
    if x.width > f.n:
        raise ValueError(f"input has {x.width} bits but only {f.n} maps exist")
    v = x.value
    total = 0
    for i in range(x.width):
        total += f.maps[i][(v >> i) & 1]
    return total


def table_general(f: GeneralOPF) -> list[int]:
    """F over all 2**n inputs at full width, natural order."""
    return kernels.opf_table(f.zero_vals(), f.one_vals())


@dataclass(frozen=True)
class SharedParams:
    """The three shared constants, the coin, and the complement word size.

    u = 1 means inputs are used as-is; u = 0 means both parties complement
    their inputs inside a public complement_width-bit word first, which
    reverses the comparison the helper sees.
    """

    s: int
    k: int
    l: int
    u: int = 1
    complement_width: int = 64

    def __post_init__(self):
        if self.s < 1 or self.l < 1:
            raise ValueError("s and l must be >= 1")
        if self.k <= 1:
            raise ValueError("k must be > 1")
        if self.u not in (0, 1):
            raise ValueError("u must be 0 or 1")
        if self.complement_width < 1:
            raise ValueError("complement_width must be >= 1")

    def map_at(self, i: int) -> PerBitMap:
        return PerBitMap(self.s, self.s + self.k**i * self.l)


def induced_general(p: SharedParams, n: int) -> GeneralOPF:
    return GeneralOPF(tuple(p.map_at(i) for i in range(1, n + 1)))


def shared_eval(p: SharedParams, x: BitString) -> int:
    """F(x) for the shared family; x must be in minimal form."""
    if not x.is_minimal():
        raise ValueError("shared_eval requires minimal-form input (no leading zeros)")
    v = x.value
    total = 0
    for i in range(1, x.width + 1):
        total += p.s + (p.k**i * p.l if (v >> (i - 1)) & 1 else 0)
    return total


def shared_max(p: SharedParams, n: int) -> int:
    """Exact maximum of shared_eval over n-bit inputs: n*s + (k**(n+1)-k)*l/(k-1)."""
    if n < 1:
        raise ValueError("n must be >= 1")
    return n * p.s + (p.k ** (n + 1) - p.k) * p.l // (p.k - 1)


def shared_output_bits(p: SharedParams, n: int) -> int:
    """Bits needed to carry any F(x) for an n-bit input."""
    return shared_max(p, n).bit_length()


@dataclass(frozen=True)
class PointOPF:
    """Per-bit maps anchored at b, plus the parameters that produced them."""

    b: BitString
    maps: tuple[PerBitMap, ...]
    l: int
    range_lo: int
    range_hi: int
    seed: Optional[Seed] = None

    @property
    def d(self) -> int:
        return len(self.maps)

    def rises(self) -> dict[int, int]:
        """gap at each position where the anchor bit is 0 (1-based)."""
        return {i: m.gap for i, m in enumerate(self.maps, 1) if not self.b.bit(i)}

    def falls(self) -> dict[int, int]:
        """gap at each position where the anchor bit is 1 (1-based)."""
        return {i: m.gap for i, m in enumerate(self.maps, 1) if self.b.bit(i)}

    def zero_vals(self) -> list[int]:
        return [m.zero_val for m in self.maps]

    def one_vals(self) -> list[int]:
        return [m.one_val for m in self.maps]

    def to_json_dict(self) -> dict:
        return {
            "maps": [[m.zero_val, m.one_val] for m in self.maps],
            "b": str(self.b),
            "l": self.l,
            "range": [self.range_lo, self.range_hi],
            "seed_hex": self.seed.hex() if self.seed else None,
        }


def _check_interval(pos: int, value: int, lo: int, hi: int) -> None:
    # open interval (lo, hi)
    if not lo < value < hi:
        raise ConstructionError(
            f"position {pos}: value {value} outside open interval ({lo}, {hi})"
        )


def construct_at_point(
    b: BitString,
    l: int,
    range_lo: int,
    range_hi: int,
    seed: Optional[Seed] = None,
    injected: Optional[Sequence[tuple[int, int]]] = None,
) -> PointOPF:
    """Build a PointOPF for anchor b, one position at a time from the LSB up.

    Position i consumes two subseeds from expand(seed, d): the first draws
    f_i(b_i) uniformly from [range_lo, range_hi], the second draws the
    complementary value from its open interval.  With injected=[(f0, f1),
    ...] the values are taken as given instead of drawn, but still validated
    against the same intervals, so the construction rules are enforced either
    way.  l >= 2 guarantees each open interval contains an integer.
    """
    if l < 2:
        raise ValueError("l must be >= 2 so open intervals are non-empty")
    if range_hi <= range_lo:
        raise ValueError("range_hi must exceed range_lo")
    d = b.width
    if injected is None:
        if seed is None:
            raise ValueError("need a seed unless values are injected")
        schedule = expand(seed, d)
    elif len(injected) != d:
        raise ValueError(f"injected needs {d} (f0, f1) pairs")

    maps = []
    rise_sum = 0  # rises strictly below the current position
    fall_sum = 0  # falls strictly below the current position
    for i in range(1, d + 1):
        anchor_bit = b.bit(i)
        if injected is not None:
            f0, f1 = injected[i - 1]
            anchor_val = f1 if anchor_bit else f0
            if not range_lo <= anchor_val <= range_hi:
                raise ConstructionError(
                    f"position {i}: anchor value {anchor_val} outside "
                    f"[{range_lo}, {range_hi}]"
                )
            if anchor_bit:
                _check_interval(i, f0, f1 - rise_sum - l, f1 - rise_sum)
            else:
                _check_interval(i, f1, f0 + fall_sum, f0 + fall_sum + l)
        else:
            anchor_val = int_in_range(schedule[2 * (i - 1)], range_lo, range_hi)
            other_seed = schedule[2 * (i - 1) + 1]
            if anchor_bit:
                f1 = anchor_val
                f0 = int_in_range(other_seed, f1 - rise_sum - l, f1 - rise_sum, exclusive=True)
            else:
                f0 = anchor_val
                f1 = int_in_range(other_seed, f0 + fall_sum, f0 + fall_sum + l, exclusive=True)
        m = PerBitMap(f0, f1)
        maps.append(m)
        if anchor_bit:
            fall_sum += m.gap
        else:
            rise_sum += m.gap
    return PointOPF(b, tuple(maps), l, range_lo, range_hi, seed if injected is None else None)


def eval_point(f: PointOPF, x: BitString) -> int:
    """F(x); x is zero-padded up to the anchor width d."""
    if x.width > f.d:
        raise ValueError(f"input has {x.width} bits but the construction is {f.d} wide")
    v = x.value
    total = 0
    for i in range(f.d):
        total += f.maps[i][(v >> i) & 1]
    return total


def table_point(f: PointOPF) -> list[int]:
    return kernels.opf_table(f.zero_vals(), f.one_vals())


def output_bounds(f: PointOPF) -> tuple[int, int]:
    """(min, max) of F over the full d-bit domain."""
    lo = sum(min(m.zero_val, m.one_val) for m in f.maps)
    hi = sum(max(m.zero_val, m.one_val) for m in f.maps)
    return lo, hi


def point_word_width(f: PointOPF) -> int:
    """Two's-complement width covering every per-bit value and every F(x).

    This is the payload word size for transferring single mappings as well
    as full evaluations.
    """
    from .bits import signed_width

    lo, hi = output_bounds(f)
    for m in f.maps:
        lo = min(lo, m.zero_val, m.one_val)
        hi = max(hi, m.zero_val, m.one_val)
    return signed_width(lo, hi)
