"""1-out-of-2 oblivious transfer with two interchangeable backends.

The sender holds two fixed-width words (m0, m1); the receiver holds a choice
bit and must end up with exactly m_choice.  Every transfer is three flights
with the same shape on both backends, so protocol transcripts keep identical
round structure whichever backend runs:

    1. sender -> receiver   offer (parameters of this transfer)
    2. receiver -> sender   blinded request
    3. sender -> receiver   both secrets, each under its own one-time pad

Backends:

* "transparent" -- no cryptography, for correctness testing and fast
  exhaustive sweeps.  The request is the bare choice bit and the reply is the
  chosen word; it hides nothing from anyone.

* "commutative-rsa" -- a blinded-transfer flow over a per-transfer RSA key.
  The offer carries (N, e) and two pad sources x0, x1, generated as
  encryptions of seed-derived randoms.  The receiver blinds both slots (one
  encryption per slot, so her work does not depend on the choice bit): slot c
  carries x_c + k^e with k kept, the other slot carries x + (g^e + h) with h
  uniform, so she cannot recover that slot's pad later.  The sender strips
  x_i and decrypts each slot to a pad k_i, then returns y_i = m_i + k_i
  mod N.  Only y_c is strippable by the receiver.  Cost per transfer:
  exactly 4 encryptions and 2 decryptions, recorded in the ot_enc / ot_dec
  counters.

Secrets may be negative (per-bit mappings are signed); they travel as
two's-complement words of the agreed payload width, which must satisfy
2**payload_bits < N.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from . import wire
from .prg import Seed, derive, int_in_range
from .simnet import Message, PartyId

try:  # pure-Python fallback below keeps the backend usable without gmpy2
    import gmpy2

    def _next_prime(n: int) -> int:
        return int(gmpy2.next_prime(n))

    def _powmod(base: int, exp: int, mod: int) -> int:
        return int(gmpy2.powmod(base, exp, mod))

except ImportError:  # pragma: no cover - exercised only without gmpy2
    _powmod = pow

    _SMALL_PRIMES = [p for p in range(3, 1000, 2) if all(p % q for q in range(3, int(p**0.5) + 1, 2))]

    def _is_probable_prime(n: int) -> bool:
        if n < 2:
            return False
        for p in [2] + _SMALL_PRIMES:
            if n % p == 0:
                return n == p
        d, r = n - 1, 0
        while d % 2 == 0:
            d //= 2
            r += 1
        for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
            x = pow(a, d, n)
            if x in (1, n - 1):
                continue
            for _ in range(r - 1):
                x = x * x % n
                if x == n - 1:
                    break
            else:
                return False
        return True

    def _next_prime(n: int) -> int:
        c = n + 1 if n % 2 == 0 else n + 2
        while not _is_probable_prime(c):
            c += 2
        return c


BACKENDS = ("transparent", "commutative-rsa")

LABEL_INIT = "ot_init"
LABEL_CHOICE = "ot_choice"
LABEL_REPLY = "ot_reply"


class OtError(ValueError):
    pass


@dataclass(frozen=True)
class OtSenderInput:
    m0: int
    m1: int


@dataclass(frozen=True)
class OtReceiverInput:
    choice: int

    def __post_init__(self):
        if self.choice not in (0, 1):
            raise OtError("choice must be 0 or 1")


def _bump(counters, key, amount=1):
    if counters is not None:
        counters[key] += amount


def _check_width(value: int, payload_bits: int) -> None:
    half = 1 << (payload_bits - 1)
    if not -half <= value < half:
        raise OtError(f"secret {value} does not fit {payload_bits}-bit payload words")


def _rsa_keypair(seed: Seed, modulus_bits: int) -> tuple[int, int, int]:
    """Deterministic (N, e, d) with N of roughly modulus_bits bits."""
    pb = modulus_bits // 2
    if pb < 8:
        raise OtError("modulus too small")
    lo, hi = 1 << (pb - 1), (1 << pb) - 1
    p = _next_prime(int_in_range(derive(seed, "p"), lo, hi))
    q = _next_prime(int_in_range(derive(seed, "q"), lo, hi))
    while q == p:
        q = _next_prime(q)
    n = p * q
    phi = (p - 1) * (q - 1)
    for e in (65537, 257, 17, 5, 3, 7, 11, 13, 19, 23):
        if e < phi and math.gcd(e, phi) == 1:
            return n, e, pow(e, -1, phi)
    e = 29
    while math.gcd(e, phi) != 1:
        e += 2
    return n, e, pow(e, -1, phi)


def effective_modulus_bits(requested: int, payload_bits: int) -> int:
    """Requested size, raised so the payload word always fits below N.

    requested = 0 selects payload-proportional moduli (the smallest safe
    size), which is what the growth benchmarks use.
    """
    floor = payload_bits + 17
    bits = floor if requested == 0 else max(requested, floor)
    return bits + (bits % 2)


class OtSender:
    """Sender side of one transfer; offer() then finish()."""

    def __init__(self, inputs: OtSenderInput, backend: str, seed: Seed,
                 payload_bits: int, modulus_bits: int = 512, counters: dict | None = None):
        if backend not in BACKENDS:
            raise OtError(f"unknown backend {backend!r}")
        _check_width(inputs.m0, payload_bits)
        _check_width(inputs.m1, payload_bits)
        self.inputs = inputs
        self.backend = backend
        self.seed = seed
        self.payload_bits = payload_bits
        self.counters = counters
        if backend == "commutative-rsa":
            bits = effective_modulus_bits(modulus_bits, payload_bits)
            self.n, self.e, self.d = _rsa_keypair(seed, bits)
            r0 = int_in_range(derive(seed, "x0"), 2, self.n - 1)
            r1 = int_in_range(derive(seed, "x1"), 2, self.n - 1)
            self.x0 = _powmod(r0, self.e, self.n)
            self.x1 = _powmod(r1, self.e, self.n)
            _bump(self.counters, "ot_enc", 2)

    def offer(self) -> bytes:
        if self.backend == "transparent":
            return wire.encode_uints(self.payload_bits)
        return wire.encode_uints(self.payload_bits, self.n, self.e, self.x0, self.x1)

    def finish(self, request: bytes) -> bytes:
        mask = (1 << self.payload_bits) - 1
        w0 = self.inputs.m0 & mask
        w1 = self.inputs.m1 & mask
        if self.backend == "transparent":
            (choice,) = wire.decode_uints(request, 1)
            if choice not in (0, 1):
                raise OtError("malformed request")
            return wire.encode_signed_word(
                self.inputs.m1 if choice else self.inputs.m0, self.payload_bits
            )
        v0, v1 = wire.decode_uints(request, 2)
        k0 = _powmod((v0 - self.x0) % self.n, self.d, self.n)
        k1 = _powmod((v1 - self.x1) % self.n, self.d, self.n)
        _bump(self.counters, "ot_dec", 2)
        return wire.encode_uints((w0 + k0) % self.n, (w1 + k1) % self.n)


class OtReceiver:
    """Receiver side of one transfer; respond() then receive()."""

    def __init__(self, inputs: OtReceiverInput, backend: str, seed: Seed,
                 counters: dict | None = None):
        if backend not in BACKENDS:
            raise OtError(f"unknown backend {backend!r}")
        self.choice = inputs.choice
        self.backend = backend
        self.seed = seed
        self.counters = counters
        self.payload_bits = 0
        self._k = 0

    def respond(self, offer: bytes) -> bytes:
        if self.backend == "transparent":
            (self.payload_bits,) = wire.decode_uints(offer, 1)
            return wire.encode_uints(self.choice)
        self.payload_bits, n, e, x0, x1 = wire.decode_uints(offer, 5)
        self._n = n
        self._k = int_in_range(derive(self.seed, "k"), 2, n - 1)
        g = int_in_range(derive(self.seed, "g"), 2, n - 1)
        h = int_in_range(derive(self.seed, "h"), 0, n - 1)
        blinds = [0, 0]
        blinds[self.choice] = _powmod(self._k, e, n)
        blinds[1 - self.choice] = (_powmod(g, e, n) + h) % n
        _bump(self.counters, "ot_enc", 2)
        xs = (x0, x1)
        return wire.encode_uints(*((xs[i] + blinds[i]) % n for i in (0, 1)))

    def receive(self, reply: bytes) -> int:
        if self.backend == "transparent":
            return wire.decode_signed_word(reply, self.payload_bits)
        y0, y1 = wire.decode_uints(reply, 2)
        word = ((y1 if self.choice else y0) - self._k) % self._n
        word &= (1 << self.payload_bits) - 1
        if word >= 1 << (self.payload_bits - 1):
            word -= 1 << self.payload_bits
        return word


def ot_execute(
    sender: OtSenderInput,
    receiver: OtReceiverInput,
    backend: str,
    seed: Seed,
    payload_bits: int = 64,
    modulus_bits: int = 512,
    counters: dict | None = None,
    sender_party: PartyId = PartyId.BOB,
    receiver_party: PartyId = PartyId.ALICE,
) -> tuple[int, list[Message]]:
    """Run one complete transfer, returning (received value, message fragment)."""
    snd = OtSender(sender, backend, derive(seed, "send"), payload_bits, modulus_bits, counters)
    rcv = OtReceiver(receiver, backend, derive(seed, "recv"), counters)
    offer = snd.offer()
    request = rcv.respond(offer)
    reply = snd.finish(request)
    value = rcv.receive(reply)
    fragment = [
        Message(sender_party, receiver_party, LABEL_INIT, offer, 1),
        Message(receiver_party, sender_party, LABEL_CHOICE, request, 2),
        Message(sender_party, receiver_party, LABEL_REPLY, reply, 3),
    ]
    return value, fragment
