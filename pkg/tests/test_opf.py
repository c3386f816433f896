import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from millionaire import fixtures, kernels
from millionaire.bits import BitString, to_bits
from millionaire.opf import (
    ConstructionError,
    GeneralOPF,
    PerBitMap,
    SharedParams,
    construct_at_point,
    eval_opf,
    eval_point,
    induced_general,
    output_bounds,
    point_word_width,
    shared_eval,
    shared_max,
    shared_output_bits,
    table_general,
    table_point,
    validate_general,
)
from millionaire.prg import Seed, derive


def maps(*pairs):
    return GeneralOPF(tuple(PerBitMap(a, b) for a, b in pairs))


# ------------------------------------------------------------ general family


def test_demo_maps_validate():
    ok, pos = validate_general(fixtures.GENERAL_DEMO_MAPS)
    assert ok and pos is None


def test_gap_rule_equality_is_a_violation():
    # gap at position 2 equals the running sum (2), which is not allowed
    ok, pos = validate_general(maps((3, 5), (7, 9)))
    assert (ok, pos) == (False, 2)


def test_order_rule_violation():
    ok, pos = validate_general(maps((5, 3)))
    assert (ok, pos) == (False, 1)


def test_demo_image_table():
    f = fixtures.GENERAL_DEMO_MAPS
    assert eval_opf(f, BitString.parse("0000")) == 15
    assert eval_opf(f, BitString.parse("0101")) == 24
    assert eval_opf(f, BitString.parse("1111")) == 41
    assert table_general(f) == fixtures.GENERAL_DEMO_TABLE


def test_eval_rejects_wide_input():
    with pytest.raises(ValueError):
        eval_opf(fixtures.GENERAL_DEMO_MAPS, BitString.parse("10000"))


def _random_valid_opf(rng_seed: int, n: int, value_hi: int = 1000, slack: int = 50) -> GeneralOPF:
    import random

    rng = random.Random(rng_seed)
    out = []
    running = 0
    for _ in range(n):
        z = rng.randint(-value_hi, value_hi)
        gap = running + rng.randint(1, slack)
        out.append(PerBitMap(z, z + gap))
        running += gap
    return GeneralOPF(tuple(out))


def test_random_valid_opfs_are_monotone_exhaustively():
    for i in range(50):
        n = 1 + i % 12
        f = _random_valid_opf(i, n)
        ok, _ = validate_general(f)
        assert ok
        assert kernels.monotone_violation(f.zero_vals(), f.one_vals()) == -1


@given(st.integers(0, 2**60), st.integers(0, 2**60))
@settings(max_examples=60, deadline=None)
def test_monotone_at_large_widths(x, y):
    # non-int64-safe values force the arbitrary-precision path
    f = _random_valid_opf(99, 64, value_hi=2**70, slack=2**40)
    if x == y:
        return
    lo, hi = sorted((x, y))
    assert eval_opf(f, to_bits(lo, 64)) < eval_opf(f, to_bits(hi, 64))


# ------------------------------------------------------------- shared family


SHARED = SharedParams(s=3, k=2, l=5)


def test_shared_eval_values():
    assert shared_eval(SHARED, BitString.parse("101")) == 59
    assert shared_eval(SHARED, BitString.parse("100")) == 49
    assert 49 < 59


def test_shared_eval_unequal_widths():
    a = shared_eval(SHARED, BitString.parse("100"))  # value 4, 3 bits
    b = shared_eval(SHARED, BitString.parse("11"))  # value 3, 2 bits
    assert (a, b) == (49, 36)
    assert a > b


def test_shared_eval_requires_minimal_form():
    with pytest.raises(ValueError):
        shared_eval(SHARED, BitString.parse("0101"))


def test_shared_matches_induced_general():
    g = induced_general(SHARED, 6)
    for v in range(1, 64):
        assert shared_eval(SHARED, to_bits(v)) == eval_opf(g, to_bits(v))


@given(st.integers(1, 500), st.integers(2, 40), st.integers(1, 500), st.integers(1, 10))
@settings(max_examples=80, deadline=None)
def test_shared_family_always_validates(s, k, l, n):
    ok, _ = validate_general(induced_general(SharedParams(s=s, k=k, l=l), n))
    assert ok


@given(st.integers(0, 2**32 - 1), st.integers(0, 2**32 - 1))
@settings(max_examples=150, deadline=None)
def test_shared_order_preserved_across_widths(a, b):
    if a == b:
        assert shared_eval(SHARED, to_bits(a)) == shared_eval(SHARED, to_bits(b))
    else:
        lo, hi = sorted((a, b))
        assert shared_eval(SHARED, to_bits(lo)) < shared_eval(SHARED, to_bits(hi))


def test_shared_output_bits_small():
    # exact maximum over 3-bit inputs, cross-checked exhaustively
    assert shared_max(SHARED, 3) == 79
    assert max(shared_eval(SHARED, to_bits(v)) for v in range(8)) == 79
    assert shared_output_bits(SHARED, 3) == 7


def test_shared_output_bits_single_position():
    assert shared_output_bits(SHARED, 1) == (SHARED.s + SHARED.k * SHARED.l).bit_length()


def test_shared_output_bits_growth():
    # for k=2 the output width grows by about log2(k)=1 bit per input bit
    for n in (8, 16, 32):
        delta = shared_output_bits(SHARED, 2 * n) - shared_output_bits(SHARED, n)
        assert abs(delta - n) <= 2
    k3 = SharedParams(s=3, k=3, l=5)
    delta = shared_output_bits(k3, 32) - shared_output_bits(k3, 16)
    assert abs(delta - 16 * 1.585) <= 2


def test_minimum_image_gap_is_k_times_l():
    # inputs differing only in the lowest bit map k*l apart; choosing
    # k*l >= 2**n hides everything below that resolution
    for n in range(2, 11):
        p = SharedParams(s=3, k=1 << (n - 1), l=2)
        assert p.k * p.l == 1 << n
        gaps = {
            shared_eval(p, to_bits(2 * x + 1)) - shared_eval(p, to_bits(2 * x))
            for x in range(1 << (n - 1))
        }
        assert gaps == {1 << n}


# --------------------------------------------------------------- point family


def test_point_demo_reproduced_through_constructor():
    p = fixtures.build_point_demo()
    assert [(m.zero_val, m.one_val) for m in p.maps] == fixtures.POINT_DEMO_VALUES
    assert table_point(p) == fixtures.POINT_DEMO_TABLE
    assert p.rises() == fixtures.POINT_DEMO_RISES
    assert p.falls() == fixtures.POINT_DEMO_FALLS


def test_point_demo_rows():
    p = fixtures.build_point_demo()
    assert eval_point(p, BitString.parse("0110")) == 78
    assert eval_point(p, BitString.parse("1100")) == 93
    assert eval_point(p, p.b) == 92


def test_point_demo_is_not_globally_monotone():
    p = fixtures.build_point_demo()
    t = table_point(p)
    assert t[0b0111] > t[0b1000]  # 90 > 80
    assert kernels.monotone_violation(p.zero_vals(), p.one_vals()) != -1


def test_point_demo_preserves_order_at_anchor():
    p = fixtures.build_point_demo()
    assert kernels.point_order_violation(p.zero_vals(), p.one_vals(), p.b.value) == -1


def test_injected_values_are_validated():
    bad = list(fixtures.POINT_DEMO_VALUES)
    bad[1] = (36, 70)  # rise at position 2 must stay inside (48, 63)
    with pytest.raises(ConstructionError, match="position 2"):
        construct_at_point(
            fixtures.POINT_DEMO_ANCHOR, fixtures.POINT_DEMO_L,
            *fixtures.POINT_DEMO_RANGE, injected=bad,
        )


def test_injected_anchor_must_lie_in_range():
    bad = list(fixtures.POINT_DEMO_VALUES)
    bad[0] = (13, 80)  # anchor f_1(1) outside [0, 60]
    with pytest.raises(ConstructionError, match="position 1"):
        construct_at_point(
            fixtures.POINT_DEMO_ANCHOR, fixtures.POINT_DEMO_L,
            *fixtures.POINT_DEMO_RANGE, injected=bad,
        )


def test_single_bit_anchor():
    p = construct_at_point(BitString.parse("1"), 4, 0, 20, seed=Seed.from_int(3))
    assert p.d == 1
    m = p.maps[0]
    assert 0 <= m.one_val <= 20  # the anchor-side value
    assert m.one_val - 4 < m.zero_val < m.one_val  # no rises below position 1


def test_construction_is_deterministic():
    a = construct_at_point(BitString.parse("10110"), 8, 0, 100, seed=Seed.from_int(9))
    b = construct_at_point(BitString.parse("10110"), 8, 0, 100, seed=Seed.from_int(9))
    assert a == b
    c = construct_at_point(BitString.parse("10110"), 8, 0, 100, seed=Seed.from_int(10))
    assert a != c


def test_constructed_instances_preserve_order_at_anchor_exhaustively():
    for d in range(1, 13):
        for trial in range(3):
            seed = derive(Seed.from_int(42), f"{d}/{trial}")
            from millionaire.prg import int_in_range

            b = to_bits(int_in_range(derive(seed, "b"), 0, (1 << d) - 1), d)
            p = construct_at_point(b, 16, 0, 255, seed=seed)
            assert kernels.point_order_violation(p.zero_vals(), p.one_vals(), b.value) == -1


def test_construction_rules_hold_on_drawn_instances():
    # every fall strictly exceeds the rises below it and every rise strictly
    # exceeds the falls below it, with the excess below l
    seed = Seed.from_int(5)
    p = construct_at_point(BitString.parse("1010011010"), 12, -40, 40, seed=seed)
    rise_sum = fall_sum = 0
    for i in range(1, p.d + 1):
        gap = p.maps[i - 1].gap
        if p.b.bit(i):
            assert fall_sum < gap + fall_sum  # gap > 0
            assert rise_sum < gap < rise_sum + 12
            fall_sum += gap
        else:
            assert fall_sum < gap < fall_sum + 12
            rise_sum += gap


def test_eval_point_pads_and_rejects():
    p = fixtures.build_point_demo()
    assert eval_point(p, BitString.parse("1")) == eval_point(p, BitString.parse("0001"))
    with pytest.raises(ValueError):
        eval_point(p, BitString.parse("10000"))


def test_output_bounds_demo():
    assert output_bounds(fixtures.build_point_demo()) == (47, 123)


def test_output_bounds_single_map():
    p = construct_at_point(BitString.parse("0"), 2, 0, 1, injected=[(0, 1)])
    assert output_bounds(p) == (0, 1)


def _extremal_alternating(d: int, l: int, lo: int, hi: int):
    """Worst-case instance: anchor 1010...0, complementary draws at the
    extreme interior of each open interval.  Returns (instance, gaps)."""
    b_value = sum(1 << (i - 1) for i in range(2, d + 1, 2))  # bits 0,1,0,1,... LSB first
    b = to_bits(b_value, d)
    injected = []
    gaps = []
    rise_sum = fall_sum = 0
    for i in range(1, d + 1):
        if b.bit(i):  # fall: f0 at the bottom interior point
            f1 = lo
            f0 = f1 - rise_sum - l + 1
            fall_sum += f1 - f0
        else:  # rise: f1 at the top interior point
            f0 = hi
            f1 = f0 + fall_sum + l - 1
            rise_sum += f1 - f0
        injected.append((f0, f1))
        gaps.append(f1 - f0)
    return construct_at_point(b, l, lo, hi, injected=injected), gaps


def test_worst_case_span_growth():
    # gap recurrence: each gap is (sum of opposite-side gaps below) + l - 1,
    # which doubles roughly every two positions, so the span is
    # exponential in d and its bit-length is linear in d
    l = 16
    span_bits = {}
    for d in (8, 12, 16):
        p, gaps = _extremal_alternating(d, l, 0, 100)
        expected = []
        rise_sum = fall_sum = 0
        for i in range(1, d + 1):
            if p.b.bit(i):
                g = rise_sum + l - 1
                fall_sum += g
            else:
                g = fall_sum + l - 1
                rise_sum += g
            expected.append(g)
        assert gaps == expected
        lo_v, hi_v = output_bounds(p)
        assert hi_v - lo_v == sum(expected)
        span_bits[d] = (hi_v - lo_v).bit_length()
    assert 1 <= span_bits[12] - span_bits[8] <= 5
    assert 1 <= span_bits[16] - span_bits[12] <= 5
    assert span_bits[16] <= 16 + l.bit_length() + 2


def test_point_word_width_covers_values_and_images():
    p = fixtures.build_point_demo()
    w = point_word_width(p)
    assert w == 8  # must reach -32 and 123
    half = 1 << (w - 1)
    for m in p.maps:
        assert -half <= m.zero_val < half and -half <= m.one_val < half
    lo, hi = output_bounds(p)
    assert -half <= lo and hi < half


def test_construct_requires_seed_or_values():
    with pytest.raises(ValueError):
        construct_at_point(BitString.parse("10"), 4, 0, 10)


def test_construct_rejects_tiny_l():
    with pytest.raises(ValueError):
        construct_at_point(BitString.parse("10"), 1, 0, 10, seed=Seed.from_int(1))


def test_point_json_dict():
    p = fixtures.build_point_demo()
    d = p.to_json_dict()
    assert d["b"] == "1001"
    assert d["maps"][3] == [-32, 1]
    assert d["seed_hex"] is None
    drawn = construct_at_point(BitString.parse("11"), 4, 0, 9, seed=Seed.from_int(2))
    assert drawn.to_json_dict()["seed_hex"] == Seed.from_int(2).hex()
