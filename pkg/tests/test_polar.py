import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from aura import polar
from aura.nr_reliability import reliability_order

CODE256 = polar.construct(256, 112)
CODE512 = polar.construct(512, 112)


def rand_bits(rng, k):
    return rng.integers(0, 2, k).astype(np.uint8)


def noiseless_llrs(cw, scale=20.0):
    return scale * (1.0 - 2.0 * cw.astype(np.float64))


def test_frozen_set_sizes():
    assert len(CODE512.frozen_set) == 400
    assert len(CODE256.frozen_set) == 144
    assert CODE256.frozen_set.min() >= 0 and CODE256.frozen_set.max() < 256


def test_rate_one_code_has_no_frozen_bits():
    code = polar.construct(64, 64, crc_len=16)
    assert len(code.frozen_set) == 0


def test_construct_rejects_overload():
    with pytest.raises(ValueError):
        polar.construct(64, 65)


def test_reliability_orders_are_nested():
    # the per-N order is a filtered view of one universal sequence
    o512 = reliability_order(512)
    o256 = reliability_order(256)
    assert np.array_equal(o256, o512[o512 < 256])


def test_crc_of_zero_message_is_zero():
    msg = np.zeros(96, dtype=np.uint8)
    out = polar.crc_append(msg, CODE256)
    assert not out.any()
    assert polar.crc_check(out, CODE256)


def test_crc_matches_bitwise_division():
    rng = np.random.default_rng(5)
    for _ in range(20):
        msg = rand_bits(rng, 96)
        via_matrix = polar.crc_append(msg, CODE256)[96:]
        direct = polar.crc_remainder(msg, polar.CRC16_CCITT, 16)
        assert np.array_equal(via_matrix, direct)


@given(st.binary(min_size=12, max_size=12))
def test_crc_append_check_round_trip(raw):
    msg = np.unpackbits(np.frombuffer(raw, dtype=np.uint8))[:96]
    assert polar.crc_check(polar.crc_append(msg, CODE256), CODE256)


def test_single_bit_flip_always_detected():
    rng = np.random.default_rng(11)
    for _ in range(10):
        out = polar.crc_append(rand_bits(rng, 96), CODE256)
        for i in range(len(out)):
            flipped = out.copy()
            flipped[i] ^= 1
            assert not polar.crc_check(flipped, CODE256)


def test_encode_zero_is_zero():
    assert not polar.encode(np.zeros(112, dtype=np.uint8), CODE256).any()


def test_encode_linearity():
    rng = np.random.default_rng(3)
    for _ in range(20):
        a, b = rand_bits(rng, 112), rand_bits(rng, 112)
        assert np.array_equal(polar.encode(a ^ b, CODE256),
                              polar.encode(a, CODE256) ^ polar.encode(b, CODE256))


def test_two_bit_kernel():
    assert np.array_equal(polar.polar_transform([1, 0]), [1, 0])
    assert np.array_equal(polar.polar_transform([0, 1]), [1, 1])


@given(st.integers(min_value=0, max_value=2 ** 16 - 1))
def test_polar_transform_is_involution(x):
    u = np.array([(x >> i) & 1 for i in range(16)], dtype=np.uint8)
    assert np.array_equal(polar.polar_transform(polar.polar_transform(u)), u)


def test_scl_decodes_noiseless_zero():
    llrs = np.full(256, 50.0)
    out = polar.scl_decode(llrs, CODE256, 32)
    assert out is not None and not out.any()


@pytest.mark.parametrize("code", [CODE256, CODE512])
def test_scl_round_trip(code):
    rng = np.random.default_rng(17)
    for _ in range(50):
        msg = rand_bits(rng, code.k_msg)
        cw = polar.encode(polar.crc_append(msg, code), code)
        out = polar.scl_decode(noiseless_llrs(cw), code, 32)
        assert out is not None and np.array_equal(out, msg)


def test_scl_deterministic():
    rng = np.random.default_rng(23)
    llrs = rng.normal(0, 1, 256)
    a = polar.scl_decode(llrs, CODE256, 32)
    b = polar.scl_decode(llrs.copy(), CODE256, 32)
    if a is None:
        assert b is None
    else:
        assert np.array_equal(a, b)


def test_scl_mostly_rejects_noise():
    rng = np.random.default_rng(29)
    passes = sum(polar.scl_decode(rng.normal(0, 1, 256), CODE256, 32) is not None
                 for _ in range(300))
    # false accepts occur at about list_size * 2^-16 per decode
    assert passes <= 5


def _bler(code, list_size, amp, trials, seed):
    rng = np.random.default_rng(seed)
    errs = 0
    for _ in range(trials):
        msg = rand_bits(rng, code.k_msg)
        cw = polar.encode(polar.crc_append(msg, code), code)
        y = amp * (1 - 2 * cw.astype(float)) + rng.normal(0, 1, code.n_c)
        out = polar.scl_decode(2 * amp * y, code, list_size)
        errs += out is None or not np.array_equal(out, msg)
    return errs / trials


def test_bler_monotone_in_snr():
    blers = [_bler(CODE256, 8, amp, 150, 41) for amp in (0.8, 1.0, 1.3)]
    assert blers[0] >= blers[1] - 0.06 and blers[1] >= blers[2] - 0.06
    assert blers[2] < blers[0]


def test_list_size_helps():
    amp = 0.85
    assert _bler(CODE256, 32, amp, 150, 43) <= _bler(CODE256, 1, amp, 150, 43) + 0.05
