import json

import pytest

from millionaire.simnet import DeadlockError, Message, PartyId, Transcript, run, view


class Echo:
    """Replies to `ping` with `pong` n times, then stops."""

    def __init__(self, party_id, peer, pings=0):
        self.party_id = party_id
        self.peer = peer
        self.pings = pings
        self.state = "idle"
        self.finished = pings == 0

    def start(self):
        out = [Message(self.party_id, self.peer, "ping", b"x") for _ in range(self.pings)]
        self.state = "waiting" if out else "done"
        return out

    def receive(self, msg):
        if msg.label == "ping":
            return [Message(self.party_id, msg.sender, "pong", b"y")]
        self.pings -= 1
        if self.pings == 0:
            self.state = "done"
            self.finished = True
        return []


def test_ping_pong_transcript():
    a = Echo(PartyId.ALICE, PartyId.BOB, pings=2)
    b = Echo(PartyId.BOB, PartyId.ALICE)
    t = run([a, b], protocol="toy")
    assert [m.label for m in t.messages] == ["ping", "ping", "pong", "pong"]
    # two pings share a direction (one round); both pongs share the next
    assert [m.round for m in t.messages] == [1, 1, 2, 2]
    assert t.rounds == 2
    assert t.bytes_total == 4


def test_rounds_are_non_decreasing_and_direction_driven():
    a = Echo(PartyId.ALICE, PartyId.BOB, pings=3)
    b = Echo(PartyId.BOB, PartyId.ALICE)
    t = run([a, b])
    rounds = [m.round for m in t.messages]
    assert rounds == sorted(rounds)
    for prev, cur in zip(t.messages, t.messages[1:]):
        same_direction = (prev.sender, prev.receiver) == (cur.sender, cur.receiver)
        assert (cur.round == prev.round) == same_direction


def test_empty_party_set():
    t = run([])
    assert t.messages == [] and t.rounds == 0 and t.bytes_total == 0


def test_initial_message_is_delivered_first():
    a = Echo(PartyId.ALICE, PartyId.BOB)
    b = Echo(PartyId.BOB, PartyId.ALICE)
    t = run([a, b], initial=Message(PartyId.BOB, PartyId.ALICE, "ping", b"z"))
    assert t.messages[0].label == "ping"
    assert t.messages[1].label == "pong"


def test_deadlock_reports_states():
    class Stuck:
        party_id = PartyId.ALICE
        state = "waiting_forever"
        finished = False

        def start(self):
            return []

        def receive(self, msg):
            return []

    with pytest.raises(DeadlockError) as err:
        run([Stuck()])
    assert "waiting_forever" in str(err.value)


def test_message_invariants():
    with pytest.raises(ValueError):
        Message(PartyId.ALICE, PartyId.BOB, "x", b"")
    with pytest.raises(ValueError):
        Message(PartyId.ALICE, PartyId.ALICE, "x", b"y")


def test_unknown_receiver_rejected():
    a = Echo(PartyId.ALICE, PartyId.URSULA, pings=1)
    with pytest.raises(ValueError):
        run([a])


def test_view_partition():
    from millionaire.opf import SharedParams
    from millionaire.protocols import ProtocolConfig, run_protocol_b

    cfg = ProtocolConfig(protocol="b", shared=SharedParams(s=3, k=2, l=5))
    _, t = run_protocol_b(9, 4, cfg)
    for m in t.messages:
        holders = [p for p in PartyId if m in view(t, p)]
        assert holders == sorted([m.sender, m.receiver])


def test_view_of_absent_party_is_empty():
    a = Echo(PartyId.ALICE, PartyId.BOB, pings=1)
    b = Echo(PartyId.BOB, PartyId.ALICE)
    t = run([a, b])
    assert view(t, PartyId.URSULA) == []


def test_json_schema():
    a = Echo(PartyId.ALICE, PartyId.BOB, pings=1)
    b = Echo(PartyId.BOB, PartyId.ALICE)
    t = run([a, b], protocol="toy")
    doc = json.loads(t.to_json())
    assert set(doc) == {"protocol", "parties", "messages", "counters",
                        "bytes_total", "rounds", "outcome"}
    assert doc["parties"] == ["alice", "bob"]
    msg = doc["messages"][0]
    assert set(msg) == {"from", "to", "label", "bytes", "round", "payload_hex"}
    assert msg["payload_hex"] == "78"


def test_duplicate_party_ids_rejected():
    a1 = Echo(PartyId.ALICE, PartyId.BOB)
    a2 = Echo(PartyId.ALICE, PartyId.BOB)
    with pytest.raises(ValueError):
        run([a1, a2])


def test_transcript_defaults():
    t = Transcript()
    assert t.bytes_total == 0 and t.rounds == 0 and t.outcome is None
