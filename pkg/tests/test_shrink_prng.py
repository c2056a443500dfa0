import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

import reference_impl
from shah.errors import DivergenceError, ExhaustedError, InvalidKeyError, StarvationError
from shah.shrink_prng import (
    DEFAULT_KEY,
    STARVATION_LIMIT,
    InjectedPairStream,
    Keystream,
    ShahKey,
)
from shah.tinkerbell import TinkerbellState, step

# frozen from tests/reference_impl.py
GOLDEN_64 = "0100010010110000001011011011100010101111000000001100100110111011"


def bits_str(bits):
    return "".join(map(str, bits))


def test_warmup_matches_repeated_step():
    ks = Keystream(DEFAULT_KEY)
    a = TinkerbellState(DEFAULT_KEY.x10, DEFAULT_KEY.y10)
    b = TinkerbellState(DEFAULT_KEY.x20, DEFAULT_KEY.y20)
    for _ in range(3500):
        a, b = step(a), step(b)
    assert ks.map_a == a and ks.map_b == b
    assert ks.emitted_count == 0


def test_zero_warmup_keeps_seeds():
    key = DEFAULT_KEY.with_seeds(m_warmup=0, n_warmup=0)
    ks = Keystream(key)
    assert (ks.map_a.x, ks.map_a.y, ks.map_b.x, ks.map_b.y) == key.seeds


def test_escaping_seed_diverges_in_warmup():
    with pytest.raises(DivergenceError):
        Keystream(DEFAULT_KEY.with_seeds(x10=50.0))


def test_golden_first_64_bits():
    assert bits_str(Keystream().next_bits(64)) == GOLDEN_64


def test_matches_reference_script_long_run():
    ref = list(itertools.islice(reference_impl.keystream(), 5000))
    assert Keystream().next_bits(5000).tolist() == ref


def test_shrinking_rule_examples():
    assert InjectedPairStream([1], [1]).next_bit() == 1
    s = InjectedPairStream([1, 0, 1], [0, 0, 1])
    assert s.next_bit() == 1
    assert s.pairs_consumed == 3


@settings(max_examples=200)
@given(st.lists(st.tuples(st.integers(0, 1), st.integers(0, 1)), max_size=300))
def test_shrinking_rule_equals_filter(pairs):
    a = [p[0] for p in pairs]
    s = [p[1] for p in pairs]
    expected = [ai for ai, si in zip(a, s) if si == 1]
    stream = InjectedPairStream(a, s)
    assert stream.next_bits(len(expected)).tolist() == expected
    with pytest.raises(ExhaustedError):
        stream.next_bit()


def test_next_bits_equals_repeated_next_bit():
    s1 = Keystream()
    s1.next_bits(37)
    s2 = s1.clone()
    batch = s1.next_bits(8)
    single = [s2.next_bit() for _ in range(8)]
    assert batch.tolist() == single
    assert s1.map_a == s2.map_a and s1.map_b == s2.map_b
    assert s1.emitted_count == s2.emitted_count == 45
    s3 = s1.clone()
    assert s1.next_bits(1).tolist() == [s3.next_bit()]


def test_emitted_count_accumulates():
    s = Keystream()
    for k in (1, 7, 100, 4096):
        before = s.emitted_count
        s.next_bits(k)
        assert s.emitted_count == before + k


def test_monobit_million_bits():
    ones = Keystream().next_bits(10**6).mean()
    assert 0.49 <= ones <= 0.51


def test_export_bytes_msb_first():
    assert InjectedPairStream([1, 0, 0, 0, 0, 0, 0, 0], [1] * 8).export_bytes(1) == b"\x80"
    assert InjectedPairStream([0] * 8, [1] * 8).export_bytes(1) == b"\x00"
    ks = Keystream()
    bits = ks.clone().next_bits(80)
    assert ks.export_bytes(10) == np.packbits(bits).tobytes()


def test_starvation_guard():
    stream = InjectedPairStream(np.ones(STARVATION_LIMIT + 5), np.zeros(STARVATION_LIMIT + 5))
    with pytest.raises(StarvationError):
        stream.next_bit()


def test_deterministic():
    assert Keystream().export_bytes(4096) == Keystream().export_bytes(4096)


ABSORBED = pytest.mark.xfail(
    strict=True,
    reason="y20 + 1e-15 is rounded away by the second step in double precision; "
    "see test_y20_perturbation_absorbed",
)


@pytest.mark.parametrize("field", ["x10", "y10", "x20", pytest.param("y20", marks=ABSORBED)])
def test_key_sensitivity(field):
    base = Keystream().next_bits(10_000)
    perturbed = DEFAULT_KEY.with_seeds(**{field: getattr(DEFAULT_KEY, field) + 1e-15})
    other = Keystream(perturbed).next_bits(10_000)
    assert 4500 <= int((base != other).sum()) <= 5500


def test_y20_perturbation_absorbed():
    # near this seed the map barely depends on y, so an 18-ulp change shrinks
    # below half an ulp and both orbits round to the same point
    a = TinkerbellState(DEFAULT_KEY.x20, DEFAULT_KEY.y20)
    b = TinkerbellState(DEFAULT_KEY.x20, DEFAULT_KEY.y20 + 1e-15)
    assert a != b
    a, b = step(step(a)), step(step(b))
    assert a == b
    perturbed = DEFAULT_KEY.with_seeds(y20=DEFAULT_KEY.y20 + 1e-15)
    assert np.array_equal(Keystream(perturbed).next_bits(1000), Keystream().next_bits(1000))


def test_key_validation():
    with pytest.raises(InvalidKeyError):
        ShahKey(float("nan"), 0, 0, 0)
    with pytest.raises(InvalidKeyError):
        ShahKey(0, 0, 0, 0, m_warmup=-1)
    with pytest.raises(InvalidKeyError):
        DEFAULT_KEY.with_seeds(y20=1.6).check_range()
    assert DEFAULT_KEY.check_range() is DEFAULT_KEY


@given(
    st.tuples(*[st.floats(-1.5, 1.5)] * 4),
    st.integers(0, 10**6),
    st.integers(0, 10**6),
)
def test_key_text_round_trip(seeds, m, n):
    key = ShahKey(*seeds, m, n)
    assert ShahKey.from_text(key.to_text()) == key


def test_key_file(tmp_path):
    path = tmp_path / "k.key"
    DEFAULT_KEY.save(path)
    assert ShahKey.load(path) == DEFAULT_KEY
    assert path.read_text().split()[4:] == ["3500", "3500"]
    with pytest.raises(InvalidKeyError):
        ShahKey.from_text("1 2 3")
    with pytest.raises(InvalidKeyError):
        ShahKey.from_text("a b c d 1 2")
