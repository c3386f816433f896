"""The three comparison protocols as party state machines, plus the oracle.

Protocol "a" (two parties, homomorphic blinding):
    Bob owns the key pair; he sends E(b).  Alice encrypts her own input,
    computes V = (E(a) - E(b)) xor E(R) for a fresh random word R, and sends
    V.  Bob decrypts V -- all he sees is (a - b) xor R -- and returns its most
    significant bit.  Alice strips R's sign bit; the result is the sign of
    (a - b) as a two's-complement word.  Four messages, four rounds, counters
    enc=2 / hom_sub=1 / hom_xor=1 / dec=1.  The protocol answers a >= b, not
    a > b: a zero difference also has sign bit 0, so equality is
    indistinguishable from "greater" here (see Outcome.relation = None).

Protocol "b" (helper party, shared order-preserving function):
    Alice picks the shared parameters and a coin u, sends both to Bob.  With
    u = 1 both parties submit F(input) to Ursula; with u = 0 they submit
    F(complement of input), which reverses the order Ursula sees.  Ursula
    returns the three-way comparison of the two submitted values to each
    party; with u = 0 the parties swap GT and LT back (EQ stays).  Ursula's
    entire view is the two image values and her own result messages.

Protocol "c" (no helper, per-bit oblivious transfer):
    Bob builds an order-preserving-at-b function from his seed, one transfer
    per bit position delivers f_i(a_i) to Alice, Bob sends F(b), Alice sums
    her received mappings into F(a), compares, and tells Bob the result.  The
    d transfers run as parallel flights: all offers, then all requests, then
    all replies.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field, replace
from typing import Optional

from . import he, ot, wire
from .bits import BitString, to_bits, twos_complement_encode
from .opf import (
    PointOPF,
    SharedParams,
    construct_at_point,
    eval_point,
    point_word_width,
    shared_eval,
)
from .prg import Seed, derive, int_in_range
from .simnet import Message, PartyId, Transcript, run

LABEL_ENC_B = "enc_b"
LABEL_BLINDED_V = "blinded_v"
LABEL_MSB_BIT = "msb_bit"
LABEL_RESULT = "result"
LABEL_PARAMS = "shared_params"
LABEL_VALUE = "opf_value"

_PUB_LEN = 41  # serialized public part: width byte + key id + mask key


class ProtocolError(ValueError):
    pass


class Relation(enum.Enum):
    LT = "LT"
    EQ = "EQ"
    GT = "GT"

    def reversed(self) -> "Relation":
        if self is Relation.LT:
            return Relation.GT
        if self is Relation.GT:
            return Relation.LT
        return Relation.EQ

    @property
    def code(self) -> int:
        return {"GT": 0, "LT": 1, "EQ": 2}[self.value]

    @classmethod
    def from_code(cls, code: int) -> "Relation":
        try:
            return {0: cls.GT, 1: cls.LT, 2: cls.EQ}[code]
        except KeyError:
            raise ProtocolError(f"bad relation code {code}") from None


def compare(x: int, y: int) -> Relation:
    if x < y:
        return Relation.LT
    if x > y:
        return Relation.GT
    return Relation.EQ


@dataclass(frozen=True)
class Outcome:
    """Three-way result plus the two predicate views of it.

    relation is None when the protocol cannot separate GT from EQ (protocol
    "a" without oracle resolution); predicate_ge is always meaningful.
    """

    relation: Optional[Relation]
    predicate_ge: bool
    predicate_gt: Optional[bool]

    @classmethod
    def from_relation(cls, rel: Relation) -> "Outcome":
        return cls(rel, rel is not Relation.LT, rel is Relation.GT)

    @classmethod
    def ge_only(cls, ge: bool) -> "Outcome":
        if ge:
            return cls(None, True, None)
        return cls(Relation.LT, False, False)

    def to_json_dict(self) -> dict:
        return {
            "relation": self.relation.value if self.relation else None,
            "predicate_ge": self.predicate_ge,
            "predicate_gt": self.predicate_gt,
        }


def oracle(a: int, b: int) -> Outcome:
    """Plaintext ground truth for every sweep."""
    return Outcome.from_relation(compare(a, b))


@dataclass
class ProtocolConfig:
    protocol: str = "a"
    width_w: int = 8
    shared: Optional[SharedParams] = None
    u_mode: str | int = "coin"  # "coin", 0 or 1
    point_l: int = 16
    point_range: tuple[int, int] = (0, 255)
    d_bound: int = 8
    he_backend: str = "transparent"
    ot_backend: str = "transparent"
    ot_modulus_bits: int = 512
    point_fixture: Optional[PointOPF] = None
    resolve_relation: bool = False  # protocol "a": fill relation from the oracle
    master_seed: Seed = field(default_factory=lambda: Seed.from_int(1))
    seeds: Optional[dict[PartyId, Seed]] = None

    def __post_init__(self):
        if self.he_backend != "transparent":
            raise ProtocolError(f"unknown he backend {self.he_backend!r}")
        if self.ot_backend not in ot.BACKENDS:
            raise ProtocolError(f"unknown ot backend {self.ot_backend!r}")
        if self.seeds is None:
            self.seeds = {
                PartyId.ALICE: derive(self.master_seed, "alice"),
                PartyId.BOB: derive(self.master_seed, "bob"),
            }

    def seed(self, party: PartyId) -> Seed:
        return self.seeds[party]


# ----------------------------------------------------------------- protocol a


class _AliceA:
    party_id = PartyId.ALICE

    def __init__(self, a: int, cfg: ProtocolConfig, counters: dict):
        self.a = a
        self.cfg = cfg
        self.counters = counters
        self.state = "await_enc_b"
        self.finished = False
        self.outcome: Optional[Outcome] = None

    def start(self):
        return []

    def receive(self, msg: Message):
        w = self.cfg.width_w
        if msg.label == LABEL_ENC_B:
            pub = he.deserialize_public(msg.payload[:_PUB_LEN], self.counters)
            ct_b = he.deserialize_ciphertext(msg.payload[_PUB_LEN:], pub)
            self.r = int_in_range(derive(self.cfg.seed(self.party_id), "r"), 0, (1 << w) - 1)
            ct_a = he.enc(pub, twos_complement_encode(self.a, w))
            v = he.hom_xor(he.hom_sub(ct_a, ct_b), he.lift(pub, BitString(self.r, w)))
            self.state = "await_msb"
            return [Message(self.party_id, PartyId.BOB, LABEL_BLINDED_V, v.serialize())]
        if msg.label == LABEL_MSB_BIT:
            sign = msg.payload[0] ^ ((self.r >> (w - 1)) & 1)
            self.outcome = Outcome.ge_only(sign == 0)
            self.state = "done"
            self.finished = True
            return [Message(self.party_id, PartyId.BOB, LABEL_RESULT, bytes([sign]))]
        raise ProtocolError(f"unexpected message {msg.label}")


class _BobA:
    party_id = PartyId.BOB

    def __init__(self, b: int, cfg: ProtocolConfig, counters: dict):
        self.b = b
        self.cfg = cfg
        self.counters = counters
        self.state = "init"
        self.finished = False
        self.result_sign: Optional[int] = None

    def start(self):
        w = self.cfg.width_w
        self.keys = he.keygen(w, self.cfg.seed(self.party_id), self.counters)
        ct_b = he.enc(self.keys.public_part, twos_complement_encode(self.b, w))
        self.state = "await_v"
        payload = self.keys.public_part.serialize() + ct_b.serialize()
        return [Message(self.party_id, PartyId.ALICE, LABEL_ENC_B, payload)]

    def receive(self, msg: Message):
        if msg.label == LABEL_BLINDED_V:
            v = he.deserialize_ciphertext(msg.payload, self.keys.public_part)
            blinded = he.dec(self.keys.private_part, v)
            self.state = "await_result"
            return [Message(self.party_id, PartyId.ALICE, LABEL_MSB_BIT, bytes([blinded.msb]))]
        if msg.label == LABEL_RESULT:
            self.result_sign = msg.payload[0]
            self.state = "done"
            self.finished = True
            return []
        raise ProtocolError(f"unexpected message {msg.label}")


def run_protocol_a(a: int, b: int, cfg: ProtocolConfig) -> tuple[Outcome, Transcript]:
    w = cfg.width_w
    half = 1 << (w - 1)
    if not (0 <= a < half and 0 <= b < half):
        raise ProtocolError(f"inputs must be in [0, {half}) for width {w}")
    counters = he.new_counters()
    alice = _AliceA(a, cfg, counters)
    bob = _BobA(b, cfg, counters)
    t = run([alice, bob], counters=counters, protocol="a")
    outcome = alice.outcome
    assert outcome is not None
    if cfg.resolve_relation:
        truth = oracle(a, b)
        if outcome.predicate_ge != truth.predicate_ge:
            raise ProtocolError(
                f"protocol answer diverged from oracle at a={a}, b={b}"
            )
        outcome = truth
    t.outcome = outcome.to_json_dict()
    return outcome, t


# ----------------------------------------------------------------- protocol b


def _resolve_u(cfg: ProtocolConfig) -> int:
    if cfg.u_mode == "coin":
        return int_in_range(derive(cfg.seed(PartyId.ALICE), "coin"), 0, 1)
    if cfg.u_mode in (0, 1):
        return int(cfg.u_mode)
    raise ProtocolError(f"bad u_mode {cfg.u_mode!r}")


def _default_shared(seed: Seed) -> SharedParams:
    return SharedParams(
        s=int_in_range(derive(seed, "s"), 1, 1 << 16),
        k=int_in_range(derive(seed, "k"), 2, 1 << 8),
        l=int_in_range(derive(seed, "l"), 1, 1 << 16),
    )


def submitted_value(params: SharedParams, x: int) -> int:
    """The image a party sends to the helper: F of the (possibly
    complemented) input in minimal form."""
    if params.u == 1:
        return shared_eval(params, to_bits(x))
    w = params.complement_width
    if x >> w:
        raise ProtocolError(f"input {x} too wide for complement width {w}")
    return shared_eval(params, to_bits(((1 << w) - 1) ^ x))


class _AliceB:
    party_id = PartyId.ALICE

    def __init__(self, a: int, cfg: ProtocolConfig):
        self.a = a
        self.cfg = cfg
        self.state = "init"
        self.finished = False
        self.outcome: Optional[Outcome] = None

    def start(self):
        base = self.cfg.shared or _default_shared(self.cfg.seed(self.party_id))
        self.params = replace(base, u=_resolve_u(self.cfg))
        p = self.params
        params_payload = wire.encode_uints(p.s, p.k, p.l, p.u, p.complement_width)
        value_payload = wire.encode_uint(submitted_value(p, self.a))
        self.state = "await_result"
        return [
            Message(self.party_id, PartyId.BOB, LABEL_PARAMS, params_payload),
            Message(self.party_id, PartyId.URSULA, LABEL_VALUE, value_payload),
        ]

    def receive(self, msg: Message):
        if msg.label != LABEL_RESULT:
            raise ProtocolError(f"unexpected message {msg.label}")
        rel = Relation.from_code(msg.payload[0])
        self.outcome = Outcome.from_relation(rel if self.params.u else rel.reversed())
        self.state = "done"
        self.finished = True
        return []


class _BobB:
    party_id = PartyId.BOB

    def __init__(self, b: int, cfg: ProtocolConfig):
        self.b = b
        self.cfg = cfg
        self.state = "await_params"
        self.finished = False
        self.outcome: Optional[Outcome] = None

    def start(self):
        return []

    def receive(self, msg: Message):
        if msg.label == LABEL_PARAMS:
            s, k, l, u, w = wire.decode_uints(msg.payload, 5)
            self.params = SharedParams(s=s, k=k, l=l, u=u, complement_width=w)
            self.state = "await_result"
            payload = wire.encode_uint(submitted_value(self.params, self.b))
            return [Message(self.party_id, PartyId.URSULA, LABEL_VALUE, payload)]
        if msg.label == LABEL_RESULT:
            rel = Relation.from_code(msg.payload[0])
            # Bob sees the comparison of (A, B); his own answer is for (b, a)
            rel = rel if self.params.u else rel.reversed()
            self.outcome = Outcome.from_relation(rel.reversed())
            self.state = "done"
            self.finished = True
            return []
        raise ProtocolError(f"unexpected message {msg.label}")


class _UrsulaB:
    party_id = PartyId.URSULA

    def __init__(self):
        self.state = "await_values"
        self.finished = False
        self.values: dict[PartyId, int] = {}

    def start(self):
        return []

    def receive(self, msg: Message):
        if msg.label != LABEL_VALUE:
            raise ProtocolError(f"unexpected message {msg.label}")
        if msg.sender in self.values:
            raise ProtocolError(f"duplicate value from {msg.sender.value}")
        (self.values[msg.sender],) = wire.decode_uints(msg.payload, 1)
        if len(self.values) < 2:
            return []
        rel = compare(self.values[PartyId.ALICE], self.values[PartyId.BOB])
        self.state = "done"
        self.finished = True
        payload = bytes([rel.code])
        return [
            Message(self.party_id, PartyId.ALICE, LABEL_RESULT, payload),
            Message(self.party_id, PartyId.BOB, LABEL_RESULT, payload),
        ]


def run_protocol_b(a: int, b: int, cfg: ProtocolConfig) -> tuple[Outcome, Transcript]:
    if a < 0 or b < 0:
        raise ProtocolError("inputs must be non-negative")
    counters = he.new_counters()
    alice = _AliceB(a, cfg)
    bob = _BobB(b, cfg)
    ursula = _UrsulaB()
    t = run([alice, bob, ursula], counters=counters, protocol="b")
    outcome = alice.outcome
    assert outcome is not None and bob.outcome is not None
    if bob.outcome.relation is not (outcome.relation.reversed() if outcome.relation else None):
        raise ProtocolError("parties disagree on the outcome")
    t.outcome = outcome.to_json_dict()
    return outcome, t


# ----------------------------------------------------------------- protocol c


class _BobC:
    party_id = PartyId.BOB

    def __init__(self, b: int, cfg: ProtocolConfig, counters: dict):
        self.b = b
        self.cfg = cfg
        self.counters = counters
        self.state = "init"
        self.finished = False
        self.result: Optional[Relation] = None

    def start(self):
        cfg = self.cfg
        d = cfg.d_bound
        if cfg.point_fixture is not None:
            self.f = cfg.point_fixture
            if self.f.b != to_bits(self.b, d):
                raise ProtocolError("fixture anchor does not match Bob's input")
        else:
            self.f = construct_at_point(
                to_bits(self.b, d),
                cfg.point_l,
                cfg.point_range[0],
                cfg.point_range[1],
                seed=derive(cfg.seed(self.party_id), "opf"),
            )
        self.payload_bits = point_word_width(self.f)
        seed = cfg.seed(self.party_id)
        self.senders = []
        offers = []
        for i in range(1, d + 1):
            m = self.f.maps[i - 1]
            snd = ot.OtSender(
                ot.OtSenderInput(m.zero_val, m.one_val),
                cfg.ot_backend,
                derive(seed, f"ot{i}"),
                self.payload_bits,
                cfg.ot_modulus_bits,
                self.counters,
            )
            self.senders.append(snd)
            offers.append(
                Message(self.party_id, PartyId.ALICE, ot.LABEL_INIT,
                        wire.encode_uint(i) + snd.offer())
            )
        self.pending = d
        self.state = "await_choices"
        return offers

    def receive(self, msg: Message):
        if msg.label == ot.LABEL_CHOICE:
            idx, rest = wire.decode_uint(msg.payload)
            i = idx
            reply = self.senders[i - 1].finish(msg.payload[rest:])
            self.pending -= 1
            out = [Message(self.party_id, PartyId.ALICE, ot.LABEL_REPLY,
                           wire.encode_uint(i) + reply)]
            if self.pending == 0:
                fb = eval_point(self.f, self.f.b)
                out.append(
                    Message(self.party_id, PartyId.ALICE, LABEL_VALUE,
                            wire.encode_signed_word(fb, self.payload_bits))
                )
                self.state = "await_result"
            return out
        if msg.label == LABEL_RESULT:
            self.result = Relation.from_code(msg.payload[0])
            self.state = "done"
            self.finished = True
            return []
        raise ProtocolError(f"unexpected message {msg.label}")


class _AliceC:
    party_id = PartyId.ALICE

    def __init__(self, a: int, cfg: ProtocolConfig, counters: dict):
        self.a = a
        self.cfg = cfg
        self.counters = counters
        self.state = "await_offers"
        self.finished = False
        self.receivers: dict[int, ot.OtReceiver] = {}
        self.sum_f = 0
        self.got = 0
        self.f_b: Optional[int] = None
        self.payload_bits: Optional[int] = None
        self.outcome: Optional[Outcome] = None

    def start(self):
        return []

    def receive(self, msg: Message):
        if msg.label == ot.LABEL_INIT:
            i, rest = wire.decode_uint(msg.payload)
            choice = (self.a >> (i - 1)) & 1
            rcv = ot.OtReceiver(
                ot.OtReceiverInput(choice),
                self.cfg.ot_backend,
                derive(self.cfg.seed(self.party_id), f"ot{i}"),
                self.counters,
            )
            self.receivers[i] = rcv
            request = rcv.respond(msg.payload[rest:])
            return [Message(self.party_id, PartyId.BOB, ot.LABEL_CHOICE,
                            wire.encode_uint(i) + request)]
        if msg.label == ot.LABEL_REPLY:
            i, rest = wire.decode_uint(msg.payload)
            rcv = self.receivers[i]
            self.sum_f += rcv.receive(msg.payload[rest:])
            self.payload_bits = rcv.payload_bits
            self.got += 1
            return self._maybe_finish()
        if msg.label == LABEL_VALUE:
            assert self.payload_bits is not None
            self.f_b = wire.decode_signed_word(msg.payload, self.payload_bits)
            return self._maybe_finish()
        raise ProtocolError(f"unexpected message {msg.label}")

    def _maybe_finish(self):
        if self.got < self.cfg.d_bound or self.f_b is None:
            return []
        rel = compare(self.sum_f, self.f_b)
        self.outcome = Outcome.from_relation(rel)
        self.state = "done"
        self.finished = True
        return [Message(self.party_id, PartyId.BOB, LABEL_RESULT, bytes([rel.code]))]


def run_protocol_c(a: int, b: int, cfg: ProtocolConfig) -> tuple[Outcome, Transcript]:
    d = cfg.d_bound
    if a < 0 or b < 0 or a.bit_length() > d or b.bit_length() > d:
        raise ProtocolError(f"inputs must fit in {d} bits")
    counters = he.new_counters()
    alice = _AliceC(a, cfg, counters)
    bob = _BobC(b, cfg, counters)
    t = run([alice, bob], counters=counters, protocol="c")
    outcome = alice.outcome
    assert outcome is not None
    if bob.result is not outcome.relation:
        raise ProtocolError("parties disagree on the outcome")
    t.outcome = outcome.to_json_dict()
    return outcome, t


_RUNNERS = {"a": run_protocol_a, "b": run_protocol_b, "c": run_protocol_c}


def run_protocol(protocol: str, a: int, b: int, cfg: ProtocolConfig) -> tuple[Outcome, Transcript]:
    try:
        runner = _RUNNERS[protocol]
    except KeyError:
        raise ProtocolError(f"unknown protocol {protocol!r}") from None
    return runner(a, b, cfg)
