"""Deterministic seed expansion and integer sampling.

All protocol randomness is derived from explicit seeds so that every run is
reproducible bit-for-bit across platforms.  The generator is SHA-256 in
counter mode: block j of the keystream for seed S is SHA256(S || j) with j a
big-endian 64-bit counter.

A single seed drives the per-bit mappings of the point construction via a
two-level scheme: the top level expands one seed into 2*d subseeds (two per
bit position), and each subseed then feeds rejection sampling to draw one
integer from its target interval.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass

DEFAULT_SEED_BITS = 128


class EmptyIntervalError(ValueError):
    pass


@dataclass(frozen=True)
class Seed:
    data: bytes

    def __post_init__(self):
        if not self.data:
            raise ValueError("seed must be non-empty")

    @property
    def bits(self) -> int:
        return 8 * len(self.data)

    @classmethod
    def from_hex(cls, s: str) -> "Seed":
        return cls(bytes.fromhex(s))

    @classmethod
    def from_int(cls, n: int, bits: int = DEFAULT_SEED_BITS) -> "Seed":
        return cls(n.to_bytes(bits // 8, "big"))

    def hex(self) -> str:
        return self.data.hex()


def _block(seed: Seed, counter: int) -> bytes:
    return hashlib.sha256(seed.data + counter.to_bytes(8, "big")).digest()


def keystream(seed: Seed, nbytes: int) -> bytes:
    out = bytearray()
    counter = 0
    while len(out) < nbytes:
        out += _block(seed, counter)
        counter += 1
    return bytes(out[:nbytes])


def derive(seed: Seed, label: str) -> Seed:
    """Domain-separated child seed, same length as the parent."""
    digest = hashlib.sha256(seed.data + b"/" + label.encode()).digest()
    out = digest
    while len(out) < len(seed.data):
        digest = hashlib.sha256(digest).digest()
        out += digest
    return Seed(out[: len(seed.data)])


def expand(seed: Seed, d: int) -> list[Seed]:
    """Split the keystream into 2*d subseeds, each as long as the input seed."""
    if d < 1:
        raise ValueError("d must be >= 1")
    c = len(seed.data)
    stream = keystream(seed, 2 * d * c)
    return [Seed(stream[i * c : (i + 1) * c]) for i in range(2 * d)]


class _BitSource:
    """Pulls fixed-size bit chunks out of a seed's keystream."""

    __slots__ = ("seed", "counter", "acc", "acc_bits")

    def __init__(self, seed: Seed):
        self.seed = seed
        self.counter = 0
        self.acc = 0
        self.acc_bits = 0

    def take(self, nbits: int) -> int:
        while self.acc_bits < nbits:
            block = _block(self.seed, self.counter)
            self.counter += 1
            self.acc = (self.acc << 256) | int.from_bytes(block, "big")
            self.acc_bits += 256
        self.acc_bits -= nbits
        chunk = self.acc >> self.acc_bits
        self.acc &= (1 << self.acc_bits) - 1
        return chunk


def int_in_range(seed: Seed, lo: int, hi: int, exclusive: bool = False) -> int:
    """Uniform integer from [lo, hi] (or the open interval (lo, hi)).

    Rejection sampling, so the draw is exactly uniform and deterministic in
    the seed; no modulo bias.
    """
    if exclusive:
        lo, hi = lo + 1, hi - 1
    if lo > hi:
        raise EmptyIntervalError(f"no integers in requested interval (lo={lo}, hi={hi})")
    span = hi - lo + 1
    if span == 1:
        return lo
    nbits = (span - 1).bit_length()
    src = _BitSource(seed)
    while True:
        v = src.take(nbits)
        if v < span:
            return lo + v
