import itertools

import numpy as np
import pytest

from polarflip import CodeSpec, InvalidParameterError, construct_info_set, encode, insert_payload
from polarflip.polar import (extract_payload, load_info_set, phi, phi_inverse, polar_transform,
                             save_info_set, ebn0_to_sigma)

from oracles import batched_genie_errors, dense_encode


def full_spec(n):
    N = 1 << n
    return CodeSpec(n, N, 0, np.arange(N))


class TestConstruction:
    def test_everything_unfrozen(self):
        assert construct_info_set(1, 2, 0.0).tolist() == [0, 1]

    @pytest.mark.parametrize("snr", [-2.0, 0.0, 2.5, 6.0])
    def test_single_position_is_all_plus_channel(self, snr):
        assert construct_info_set(2, 1, snr).tolist() == [3]

    @pytest.mark.parametrize("n,snr", [(3, 1.0), (5, 2.5), (10, 3.0)])
    def test_last_index_always_selected(self, n, snr):
        for count in (1, 2, (1 << n) // 2):
            assert (1 << n) - 1 in construct_info_set(n, count, snr)

    def test_deterministic(self):
        a = construct_info_set(10, 528, 2.5, rate=0.5)
        b = construct_info_set(10, 528, 2.5, rate=0.5)
        assert np.array_equal(a, b)
        assert np.all(np.diff(a) > 0) and a.size == 528

    def test_matches_monte_carlo_genie_n3(self):
        # bit-channel error rates of the length-8 code at 2.5 dB (rate 1/2), 10^6 frames
        n, count, snr = 3, 4, 2.5
        sigma = ebn0_to_sigma(snr, count / 8)
        rng = np.random.default_rng(2024)
        errors = np.zeros(8)
        frames = 0
        for _ in range(10):
            y = 1.0 + sigma * rng.standard_normal((100_000, 8))
            errors += batched_genie_errors(2.0 * y / sigma**2).sum(axis=0)
            frames += 100_000
        pe = errors / frames
        best = np.sort(np.argsort(pe, kind="stable")[:count])
        assert construct_info_set(n, count, snr).tolist() == best.tolist() == [3, 5, 6, 7]

    @pytest.mark.parametrize("count", [0, 9])
    def test_bad_count(self, count):
        with pytest.raises(InvalidParameterError):
            construct_info_set(3, count, 1.0)

    def test_non_finite_snr(self):
        with pytest.raises(InvalidParameterError):
            construct_info_set(3, 2, float("nan"))
        with pytest.raises(InvalidParameterError):
            construct_info_set(3, 2, float("inf"))

    def test_phi_inverse_roundtrip(self):
        x = np.array([0.05, 0.5, 3.0, 9.5, 10.5, 40.0, 400.0])
        np.testing.assert_allclose(phi_inverse(phi(x)), x, rtol=1e-8)

    def test_phi_endpoints(self):
        assert phi(np.array([0.0]))[0] == 1.0
        assert 0 < phi(np.array([2000.0]))[0] < 1e-200


class TestCodeSpec:
    def test_invariants(self):
        spec = CodeSpec.build(10, 512, 16, 2.5)
        assert spec.N == 1024 and spec.payload_length == 528
        assert spec.frozen_mask.sum() == 1024 - 528

    @pytest.mark.parametrize("info", [[0, 0, 1], [2, 1, 3], [0, 1, 8], [0, 1]])
    def test_rejects_bad_info_set(self, info):
        with pytest.raises(InvalidParameterError):
            CodeSpec(3, 2, 1, info)

    def test_rejects_bad_sizes(self):
        with pytest.raises(InvalidParameterError):
            CodeSpec(0, 1, 0, [0])
        with pytest.raises(InvalidParameterError):
            CodeSpec(2, 0, 0, [])
        with pytest.raises(InvalidParameterError):
            CodeSpec(2, 4, 1, [0, 1, 2, 3, 3])

    def test_file_roundtrip(self, tmp_path):
        spec = CodeSpec.build(6, 30, 4, 1.75)
        path = tmp_path / "info.txt"
        save_info_set(spec, path)
        lines = path.read_text().splitlines()
        assert lines[0] == "64 30 4 1.75"
        assert [int(v) for v in lines[1:]] == spec.info_set.tolist()
        back = load_info_set(path)
        assert (back.n, back.K, back.r, back.design_snr_db) == (6, 30, 4, 1.75)
        assert np.array_equal(back.info_set, spec.info_set)


class TestEncode:
    def test_n2_example(self):
        assert encode(full_spec(1), [1, 1]).tolist() == [0, 1]

    def test_n4_dense(self):
        u = [0, 1, 0, 1]
        assert encode(full_spec(2), u).tolist() == dense_encode(u).tolist()

    @pytest.mark.parametrize("n", [1, 2, 3, 4, 6, 10])
    def test_zero(self, n):
        assert not encode(full_spec(n), np.zeros(1 << n, dtype=int)).any()

    @pytest.mark.parametrize("n", [1, 2, 3, 4])
    def test_matches_dense_random(self, n):
        rng = np.random.default_rng(n)
        for _ in range(50):
            u = rng.integers(0, 2, 1 << n)
            assert np.array_equal(encode(full_spec(n), u), dense_encode(u))

    @pytest.mark.parametrize("n", [1, 2, 3, 4])
    def test_involution_exhaustive(self, n):
        N = 1 << n
        for bits in itertools.product((0, 1), repeat=N):
            u = np.array(bits, dtype=np.uint8)
            assert np.array_equal(polar_transform(polar_transform(u)), u)

    def test_rejects_frozen_bit(self):
        spec = CodeSpec(2, 1, 0, [3])
        with pytest.raises(InvalidParameterError):
            encode(spec, [1, 0, 0, 1])

    def test_rejects_length(self):
        with pytest.raises(InvalidParameterError):
            encode(full_spec(2), [0, 1, 0])


class TestPayload:
    def test_scatter(self):
        spec = CodeSpec(2, 1, 1, [1, 3])
        assert insert_payload(spec, [1, 0]).tolist() == [0, 1, 0, 0]

    def test_zero(self):
        spec = CodeSpec.build(5, 10, 6, 1.0)
        assert not insert_payload(spec, np.zeros(16, dtype=int)).any()

    def test_identity_when_nothing_frozen(self):
        p = np.random.default_rng(0).integers(0, 2, 16)
        assert np.array_equal(insert_payload(full_spec(4), p), p)

    def test_extract_inverts_insert(self):
        spec = CodeSpec.build(7, 50, 16, 2.0)
        p = np.random.default_rng(3).integers(0, 2, 66)
        assert np.array_equal(extract_payload(spec, insert_payload(spec, p)), p)

    def test_length_mismatch(self):
        with pytest.raises(InvalidParameterError):
            insert_payload(CodeSpec(2, 1, 1, [1, 3]), [1])
