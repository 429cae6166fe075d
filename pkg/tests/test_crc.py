import numpy as np
import pytest

from polarflip import CrcSpec, InvalidParameterError, crc_append, crc_check
from polarflip.crc import _remainder, crc_remainder

from oracles import poly_mod_crc

CRC = CrcSpec()


def test_generator_is_x16_x15_x2_1():
    g = CRC.generator_bits
    assert g.size == 17
    assert [16 - i for i in np.flatnonzero(g)] == [16, 15, 2, 0]


def test_from_hex():
    assert CrcSpec.from_hex("0x8005") == CRC


@pytest.mark.parametrize("length", [1, 16, 512])
def test_zero_message_zero_crc(length):
    assert not crc_remainder(CRC, np.zeros(length, dtype=np.uint8)).any()


def test_impulse_matches_long_division():
    msg = np.zeros(16, dtype=np.uint8)
    msg[0] = 1
    expected = poly_mod_crc(msg, CRC.generator_bits)
    assert crc_remainder(CRC, msg).tolist() == expected
    assert any(expected)


@pytest.mark.parametrize("r,poly", [(16, 0x8005), (8, 0x07), (3, 0x3), (24, 0x864CFB)])
def test_random_messages_match_long_division(r, poly):
    spec = CrcSpec(r, poly)
    rng = np.random.default_rng(r)
    for length in (1, 7, 64, 512):
        msg = rng.integers(0, 2, length, dtype=np.uint8)
        assert crc_remainder(spec, msg).tolist() == poly_mod_crc(msg, spec.generator_bits)


def test_append_then_check_passes():
    rng = np.random.default_rng(7)
    for _ in range(10_000):
        msg = rng.integers(0, 2, int(rng.integers(1, 80)), dtype=np.uint8)
        assert crc_check(CRC, crc_append(CRC, msg))


def test_all_zero_codeword_passes():
    assert crc_check(CRC, np.zeros(528, dtype=np.uint8))


def test_single_bit_errors_detected_exhaustively():
    msg = np.random.default_rng(1).integers(0, 2, 512, dtype=np.uint8)
    word = crc_append(CRC, msg)
    for j in range(word.size):
        bad = word.copy()
        bad[j] ^= 1
        assert not crc_check(CRC, bad)


def test_double_bit_errors_detected():
    rng = np.random.default_rng(11)
    word = crc_append(CRC, rng.integers(0, 2, 512, dtype=np.uint8))
    missed = 0
    for _ in range(100_000):
        i, j = rng.choice(528, 2, replace=False)
        bad = word.copy()
        bad[i] ^= 1
        bad[j] ^= 1
        missed += crc_check(CRC, bad)
    assert missed == 0


def test_collision_rate_on_random_strings():
    rng = np.random.default_rng(5)
    trials, hits = 1_000_000, 0
    poly = np.int64(CRC.poly)
    for _ in range(10):
        block = rng.integers(0, 2, (100_000, 528), dtype=np.uint8)
        tails = block[:, 512:] @ (1 << np.arange(15, -1, -1))
        for row, tail in zip(block, tails):
            hits += _remainder(row[:512], poly, 16) == tail
    rate = hits / trials
    assert 0.5 * 2**-16 <= rate <= 1.5 * 2**-16


def test_check_requires_length():
    with pytest.raises(InvalidParameterError):
        crc_check(CRC, np.zeros(16, dtype=np.uint8))


def test_append_rejects_empty():
    with pytest.raises(InvalidParameterError):
        crc_append(CRC, [])


def test_poly_must_fit_width():
    with pytest.raises(InvalidParameterError):
        CrcSpec(8, 0x1FF)
