"""Bit strings indexed from the least significant bit.

Every value that enters a protocol is first turned into a :class:`BitString`.
Bit positions are 1-based and count from the LSB, so ``x.bit(1)`` is the least
significant bit and ``x.bit(x.width)`` the most significant.  The display form
(``str``) is MSB-first, which is how transcripts and tables render values.

Two construction modes exist and both matter:

* minimal -- no leading zeros (the MSB is 1 unless the value is 0); required
  by the shared-function protocol path, which must work on inputs of unequal
  bit sizes.
* fixed width -- zero-padded to an agreed word size; required by the
  homomorphic protocol, which works on two's-complement words.
"""

from __future__ import annotations


class BitWidthError(ValueError):
    pass


class BitString:
    """Immutable bit sequence with explicit width (value < 2**width)."""

    __slots__ = ("value", "width")

    def __init__(self, value: int, width: int):
        if width < 1:
            raise BitWidthError("width must be >= 1")
        if value < 0 or value >> width:
            raise BitWidthError(f"value {value} does not fit in {width} bits")
        object.__setattr__(self, "value", value)
        object.__setattr__(self, "width", width)

    def __setattr__(self, name, val):
        raise AttributeError("BitString is immutable")

    def bit(self, i: int) -> int:
        """Bit at 1-based position i, counting from the LSB."""
        if not 1 <= i <= self.width:
            raise IndexError(f"bit position {i} outside 1..{self.width}")
        return (self.value >> (i - 1)) & 1

    @property
    def bits(self) -> tuple[int, ...]:
        """All bits, LSB first."""
        return tuple((self.value >> i) & 1 for i in range(self.width))

    @property
    def msb(self) -> int:
        return (self.value >> (self.width - 1)) & 1

    def is_minimal(self) -> bool:
        return self.width == 1 or self.msb == 1

    def __str__(self) -> str:
        return format(self.value, f"0{self.width}b")

    def __repr__(self) -> str:
        return f"BitString('{self}')"

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, BitString)
            and self.value == other.value
            and self.width == other.width
        )

    def __hash__(self) -> int:
        return hash((self.value, self.width))

    def __reduce__(self):
        return (BitString, (self.value, self.width))

    @classmethod
    def parse(cls, s: str) -> "BitString":
        """Parse an MSB-first '0'/'1' string."""
        if not s or set(s) - {"0", "1"}:
            raise ValueError(f"not a bit string: {s!r}")
        return cls(int(s, 2), len(s))


def to_bits(value: int, width: int | None = None) -> BitString:
    """Encode a non-negative integer; minimal form when width is omitted."""
    if value < 0:
        raise ValueError("to_bits takes non-negative values")
    if width is None:
        return BitString(value, max(1, value.bit_length()))
    return BitString(value, width)


def from_bits(x: BitString) -> int:
    return x.value


def twos_complement_encode(value: int, width: int) -> BitString:
    """Two's-complement word; the MSB is the sign bit."""
    half = 1 << (width - 1)
    if not -half <= value < half:
        raise BitWidthError(f"{value} not representable in {width}-bit two's complement")
    return BitString(value & ((1 << width) - 1), width)


def twos_complement_decode(x: BitString) -> int:
    if x.msb:
        return x.value - (1 << x.width)
    return x.value


def msb(x: BitString) -> int:
    return x.msb


def complement(x: BitString, width: int) -> BitString:
    """Bitwise complement after zero-padding x to the given width."""
    if x.value >> width:
        raise BitWidthError(f"value {x.value} wider than {width} bits")
    mask = (1 << width) - 1
    return BitString(x.value ^ mask, width)


def xor(x: BitString, y: BitString) -> BitString:
    if x.width != y.width:
        raise BitWidthError(f"width mismatch: {x.width} vs {y.width}")
    return BitString(x.value ^ y.value, x.width)


def signed_width(lo: int, hi: int) -> int:
    """Smallest two's-complement width representing every value in [lo, hi]."""
    if lo > hi:
        raise ValueError("empty range")
    w = 1
    while not (-(1 << (w - 1)) <= lo and hi < (1 << (w - 1))):
        w += 1
    return w
