import pytest

from millionaire import he
from millionaire.bits import BitString, to_bits, twos_complement_encode
from millionaire.prg import Seed

SEED = Seed.from_int(11)


def fresh(width=8):
    counters = he.new_counters()
    return he.keygen(width, SEED, counters), counters


def test_round_trip():
    keys, _ = fresh()
    m = BitString.parse("00000010")
    assert he.dec(keys.private_part, he.enc(keys.public_part, m)) == m


def test_encryption_is_randomized_but_consistent():
    keys, _ = fresh()
    m = BitString.parse("10110001")
    c1 = he.enc(keys.public_part, m)
    c2 = he.enc(keys.public_part, m)
    assert c1.body != c2.body
    assert he.dec(keys.private_part, c1) == he.dec(keys.private_part, c2) == m


def test_keygen_deterministic_and_seed_sensitive():
    a = he.keygen(8, SEED)
    b = he.keygen(8, SEED)
    c = he.keygen(8, Seed.from_int(12))
    assert a.public_part.serialize() == b.public_part.serialize()
    assert a.public_part.serialize() != c.public_part.serialize()


def test_keygen_rejects_width_one():
    with pytest.raises(he.HEError):
        he.keygen(1, SEED)


def test_width_mismatch_on_enc():
    keys, _ = fresh(8)
    with pytest.raises(he.WidthMismatchError):
        he.enc(keys.public_part, BitString.parse("0000010"))


@pytest.mark.parametrize("a,b,want", [(5, 3, 2), (3, 5, -2), (9, 9, 0)])
def test_hom_sub_is_word_subtraction(a, b, want):
    keys, _ = fresh()
    ca = he.enc(keys.public_part, twos_complement_encode(a, 8))
    cb = he.enc(keys.public_part, twos_complement_encode(b, 8))
    got = he.dec(keys.private_part, he.hom_sub(ca, cb))
    assert got == twos_complement_encode(want, 8)


def test_hom_xor_examples():
    keys, _ = fresh()
    x = he.enc(keys.public_part, BitString.parse("11111110"))
    y = he.enc(keys.public_part, BitString.parse("10100101"))
    assert str(he.dec(keys.private_part, he.hom_xor(x, y))) == "01011011"
    zero = he.enc(keys.public_part, to_bits(0, 8))
    assert he.dec(keys.private_part, he.hom_xor(x, zero)) == BitString.parse("11111110")
    assert he.dec(keys.private_part, he.hom_xor(x, x)).value == 0


def test_homomorphic_identity_exhaustive_w4():
    keys, _ = fresh(4)
    pub, priv = keys.public_part, keys.private_part
    for a in range(16):
        for b in range(16):
            diff = he.hom_sub(he.enc(pub, to_bits(a, 4)), he.enc(pub, to_bits(b, 4)))
            for r in range(16):
                v = he.hom_xor(diff, he.enc(pub, to_bits(r, 4)))
                assert he.dec(priv, v).value == ((a - b) % 16) ^ r


def test_blinding_is_a_bijection_small():
    # for fixed a, b the map r -> ((a-b) mod 2^w) xor r must be a bijection
    keys, _ = fresh(4)
    pub, priv = keys.public_part, keys.private_part
    for a in (0, 5, 15):
        for b in (0, 3, 11):
            diff = he.hom_sub(he.enc(pub, to_bits(a, 4)), he.enc(pub, to_bits(b, 4)))
            images = {
                he.dec(priv, he.hom_xor(diff, he.lift(pub, to_bits(r, 4)))).value
                for r in range(16)
            }
            assert len(images) == 16


def test_lift_embeds_without_counting():
    keys, counters = fresh()
    m = BitString.parse("01010101")
    c = he.lift(keys.public_part, m)
    assert he.dec(keys.private_part, c) == m
    assert counters["enc"] == 0
    assert counters["dec"] == 1


def test_counters_track_operations():
    keys, counters = fresh()
    pub, priv = keys.public_part, keys.private_part
    x = he.enc(pub, to_bits(7, 8))
    y = he.enc(pub, to_bits(3, 8))
    he.dec(priv, he.hom_xor(he.hom_sub(x, y), he.lift(pub, to_bits(0, 8))))
    assert counters == {"enc": 2, "dec": 1, "hom_sub": 1, "hom_xor": 1, "ot_enc": 0, "ot_dec": 0}


def test_dec_with_foreign_key_fails():
    keys, _ = fresh()
    other = he.keygen(8, Seed.from_int(99))
    c = he.enc(keys.public_part, to_bits(5, 8))
    with pytest.raises(he.KeyMismatchError):
        he.dec(other.private_part, c)


def test_mixed_key_homomorphic_ops_fail():
    keys, _ = fresh()
    other = he.keygen(8, Seed.from_int(99))
    x = he.enc(keys.public_part, to_bits(5, 8))
    y = he.enc(other.public_part, to_bits(5, 8))
    with pytest.raises(he.KeyMismatchError):
        he.hom_sub(x, y)


def test_serialization_round_trip():
    keys, counters = fresh()
    c = he.enc(keys.public_part, to_bits(77, 8))
    buf = c.serialize()
    assert buf[0] == 8
    pub = he.deserialize_public(keys.public_part.serialize(), counters)
    c2 = he.deserialize_ciphertext(buf, pub)
    assert he.dec(keys.private_part, c2).value == 77


def test_malformed_ciphertext_rejected():
    keys, _ = fresh()
    with pytest.raises(he.HEError):
        he.deserialize_ciphertext(b"\x08\x00\x01", keys.public_part)
