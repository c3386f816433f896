"""Pluggable word-level homomorphic encryption for the blinded-difference protocol.

The protocol needs a scheme supporting both word subtraction modulo 2**w and
bitwise XOR on ciphertexts.  No practical partially homomorphic scheme offers
that pair, so the scheme is an interface with one shipped backend:

    "transparent" -- functionally correct, deliberately NOT semantically
    secure.  A ciphertext is the plaintext word masked by a keyed keystream
    pad plus the pad's nonce; homomorphic operations strip the pads, apply
    exact word arithmetic, and re-mask under a fresh nonce.  The mask key
    lives in the public part, which is what makes the backend transparent.
    Decryption still demands the private part object, so API misuse (wrong
    key, foreign ciphertext) fails loudly.

Besides enc there is lift(): the no-cost embedding of a known constant into
ciphertext space.  Blinding an encrypted value with your own randomness needs
no encryption work, and the operation counters reflect that -- one protocol
run costs exactly enc=2, hom_sub=1, hom_xor=1, dec=1.

Operation counters are shared per run via a plain dict, keyed enc/dec/
hom_sub/hom_xor.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field

from .bits import BitString
from .prg import Seed


class HEError(ValueError):
    pass


class KeyMismatchError(HEError):
    pass


class WidthMismatchError(HEError):
    pass


_NONCE_BYTES = 8
_LIFT_NONCE = (1 << 64) - 1  # marks an unmasked constant embedding

COUNTER_KEYS = ("enc", "dec", "hom_sub", "hom_xor", "ot_enc", "ot_dec")


def new_counters() -> dict[str, int]:
    return {k: 0 for k in COUNTER_KEYS}


@dataclass
class PublicPart:
    key_id: bytes
    width: int
    mask_key: bytes
    counters: dict = field(default_factory=new_counters, repr=False, compare=False)
    _nonce: int = field(default=0, repr=False, compare=False)

    def next_nonce(self) -> int:
        n = self._nonce
        self._nonce += 1
        if n >= _LIFT_NONCE:
            raise HEError("nonce space exhausted")
        return n

    def serialize(self) -> bytes:
        return bytes([self.width]) + self.key_id + self.mask_key


@dataclass(frozen=True)
class PrivatePart:
    key_id: bytes
    width: int
    mask_key: bytes


@dataclass(frozen=True)
class SchemeKeys:
    public_part: PublicPart
    private_part: PrivatePart
    width: int


@dataclass(frozen=True)
class Ciphertext:
    body: bytes  # nonce || masked word, little-endian
    width: int
    key_id: bytes
    _pub: PublicPart = field(repr=False, compare=False)

    def serialize(self) -> bytes:
        # width byte first, then the body
        return bytes([self.width]) + self.body


def keygen(width: int, seed: Seed, counters: dict | None = None) -> SchemeKeys:
    if not 2 <= width <= 255:
        raise HEError("width must be in 2..255")
    key_id = hashlib.sha256(seed.data + b"/id").digest()[:8]
    mask_key = hashlib.sha256(seed.data + b"/mask").digest()
    pub = PublicPart(key_id, width, mask_key, counters if counters is not None else new_counters())
    priv = PrivatePart(key_id, width, mask_key)
    return SchemeKeys(pub, priv, width)


def deserialize_public(buf: bytes, counters: dict | None = None) -> PublicPart:
    if len(buf) != 1 + 8 + 32:
        raise HEError("malformed public part")
    return PublicPart(buf[1:9], buf[0], buf[9:],
                      counters if counters is not None else new_counters())


def deserialize_ciphertext(buf: bytes, pub: PublicPart) -> Ciphertext:
    if not buf:
        raise HEError("empty ciphertext")
    width = buf[0]
    body = buf[1:]
    if len(body) != _NONCE_BYTES + _word_bytes(width):
        raise HEError("malformed ciphertext body")
    return Ciphertext(body, width, pub.key_id, pub)


def _word_bytes(width: int) -> int:
    return (width + 7) // 8


def _pad(mask_key: bytes, nonce: int, width: int) -> int:
    if nonce == _LIFT_NONCE:
        return 0
    raw = hashlib.sha256(mask_key + nonce.to_bytes(_NONCE_BYTES, "big")).digest()
    return int.from_bytes(raw[: _word_bytes(width)], "little") & ((1 << width) - 1)


def _wrap(pub: PublicPart, word: int, nonce: int) -> Ciphertext:
    masked = (word ^ _pad(pub.mask_key, nonce, pub.width)) & ((1 << pub.width) - 1)
    body = nonce.to_bytes(_NONCE_BYTES, "big") + masked.to_bytes(_word_bytes(pub.width), "little")
    return Ciphertext(body, pub.width, pub.key_id, pub)


def _unwrap(c: Ciphertext) -> int:
    nonce = int.from_bytes(c.body[:_NONCE_BYTES], "big")
    masked = int.from_bytes(c.body[_NONCE_BYTES:], "little")
    return masked ^ _pad(c._pub.mask_key, nonce, c.width)


def enc(pub: PublicPart, m: BitString) -> Ciphertext:
    if m.width != pub.width:
        raise WidthMismatchError(f"plaintext width {m.width} != scheme width {pub.width}")
    pub.counters["enc"] += 1
    return _wrap(pub, m.value, pub.next_nonce())


def lift(pub: PublicPart, m: BitString) -> Ciphertext:
    """Embed a known constant into ciphertext space; not an encryption."""
    if m.width != pub.width:
        raise WidthMismatchError(f"plaintext width {m.width} != scheme width {pub.width}")
    return _wrap(pub, m.value, _LIFT_NONCE)


def dec(priv: PrivatePart, c: Ciphertext) -> BitString:
    if priv.key_id != c.key_id:
        raise KeyMismatchError("ciphertext was produced under a different key")
    if c.width != priv.width:
        raise WidthMismatchError(f"ciphertext width {c.width} != scheme width {priv.width}")
    c._pub.counters["dec"] += 1
    return BitString(_unwrap(c), c.width)


def _check_pair(x: Ciphertext, y: Ciphertext) -> None:
    if x.key_id != y.key_id:
        raise KeyMismatchError("operands under different keys")
    if x.width != y.width:
        raise WidthMismatchError(f"operand widths differ: {x.width} vs {y.width}")


def hom_sub(x: Ciphertext, y: Ciphertext) -> Ciphertext:
    """Ciphertext of (x - y) mod 2**w."""
    _check_pair(x, y)
    pub = x._pub
    pub.counters["hom_sub"] += 1
    word = (_unwrap(x) - _unwrap(y)) & ((1 << x.width) - 1)
    return _wrap(pub, word, pub.next_nonce())


def hom_xor(x: Ciphertext, y: Ciphertext) -> Ciphertext:
    """Ciphertext of the bitwise XOR of the plaintexts."""
    _check_pair(x, y)
    pub = x._pub
    pub.counters["hom_xor"] += 1
    return _wrap(pub, _unwrap(x) ^ _unwrap(y), pub.next_nonce())
