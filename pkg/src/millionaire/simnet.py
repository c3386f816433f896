"""In-memory message network with deterministic delivery and full transcripts.

Party state machines expose:

    party_id   -- a PartyId
    state      -- short string, reported on deadlock
    finished   -- True once the machine is terminal
    start()    -- messages to emit before any delivery (may be empty)
    receive(m) -- handle one delivered message, return messages to emit

run() seeds the queue with each party's start() output (parties visited in
PartyId order), then delivers strictly in emission order.  A message's round
is its predecessor's round unless the (sender, receiver) direction changed,
in which case the round increments; consecutive same-direction messages model
one batch of parallel flights.  The run ends when the queue drains; if any
machine is then unfinished the run deadlocked and the error lists every
machine's state.

Transcripts carry the messages, the byte totals, and the run's cryptographic
operation counters (enc/dec/hom_sub/hom_xor/ot_enc/ot_dec).
"""

from __future__ import annotations

import enum
import json
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Optional

from .he import new_counters


class PartyId(enum.Enum):
    ALICE = "alice"
    BOB = "bob"
    URSULA = "ursula"

    def __lt__(self, other: "PartyId") -> bool:
        return self.value < other.value


@dataclass(frozen=True)
class Message:
    sender: PartyId
    receiver: PartyId
    label: str
    payload: bytes
    round: int = 0

    def __post_init__(self):
        if len(self.payload) == 0:
            raise ValueError("empty payload")
        if self.sender == self.receiver:
            raise ValueError("sender and receiver must differ")

    def with_round(self, r: int) -> "Message":
        return Message(self.sender, self.receiver, self.label, self.payload, r)

    def to_json_dict(self) -> dict:
        return {
            "from": self.sender.value,
            "to": self.receiver.value,
            "label": self.label,
            "bytes": len(self.payload),
            "round": self.round,
            "payload_hex": self.payload.hex(),
        }


@dataclass
class Transcript:
    protocol: str = ""
    messages: list[Message] = field(default_factory=list)
    counters: dict[str, int] = field(default_factory=new_counters)
    parties: list[str] = field(default_factory=list)
    outcome: Optional[dict] = None

    @property
    def bytes_total(self) -> int:
        return sum(len(m.payload) for m in self.messages)

    @property
    def rounds(self) -> int:
        return self.messages[-1].round if self.messages else 0

    def view(self, p: PartyId) -> list[Message]:
        return [m for m in self.messages if p in (m.sender, m.receiver)]

    def to_json_dict(self) -> dict:
        return {
            "protocol": self.protocol,
            "parties": self.parties,
            "messages": [m.to_json_dict() for m in self.messages],
            "counters": dict(self.counters),
            "bytes_total": self.bytes_total,
            "rounds": self.rounds,
            "outcome": self.outcome,
        }

    def to_json(self, indent: int = 2) -> str:
        return json.dumps(self.to_json_dict(), indent=indent, sort_keys=True)


def view(t: Transcript, p: PartyId) -> list[Message]:
    return t.view(p)


class DeadlockError(RuntimeError):
    def __init__(self, states: dict[str, str]):
        self.states = states
        listing = ", ".join(f"{k}={v}" for k, v in sorted(states.items()))
        super().__init__(f"no machine can step and not all are terminal: {listing}")


def run(
    parties: Iterable,
    initial: Optional[Message] = None,
    counters: Optional[dict[str, int]] = None,
    protocol: str = "",
) -> Transcript:
    """Drive the machines to completion and return the transcript."""
    machines = sorted(parties, key=lambda p: p.party_id)
    registry = {m.party_id: m for m in machines}
    if len(registry) != len(machines):
        raise ValueError("duplicate party ids")

    t = Transcript(
        protocol=protocol,
        counters=counters if counters is not None else new_counters(),
        parties=[m.party_id.value for m in machines],
    )

    queue: deque[Message] = deque()
    if initial is not None:
        queue.append(initial)
    for m in machines:
        queue.extend(m.start())

    current_round = 0
    prev_direction = None
    while queue:
        msg = queue.popleft()
        direction = (msg.sender, msg.receiver)
        if direction != prev_direction:
            current_round += 1
            prev_direction = direction
        msg = msg.with_round(current_round)
        t.messages.append(msg)
        target = registry.get(msg.receiver)
        if target is None:
            raise ValueError(f"message addressed to absent party {msg.receiver.value}")
        queue.extend(target.receive(msg))

    unfinished = {m.party_id.value: m.state for m in machines if not m.finished}
    if unfinished:
        raise DeadlockError({m.party_id.value: m.state for m in machines})
    return t
