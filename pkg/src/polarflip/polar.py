"""
Polar code definition, Gaussian-approximation construction and encoding.

Indices are in natural order: ``x = u . F^{(x)n}`` with ``F = [[1, 0], [1, 1]]``
and no bit-reversal permutation. Bit ``b`` of an index (MSB first) selects the
minus (0) or plus (1) synthetic channel at each polarization level, so index
``N - 1`` is the all-plus, most reliable channel.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from os import PathLike

import numpy as np

from .exceptions import InvalidParameterError

# two-piece approximation of the GA phi function
_PHI_A = 0.4527
_PHI_B = 0.86
_PHI_C = 0.0218
_PHI_SPLIT = 10.0


@dataclass(frozen=True, eq=False)
class CodeSpec:
    """CRC-polar concatenation ``C(N, K + r, I)``.

    Parameters
    ----------
    n : int
        log2 of the blocklength.
    K : int
        Number of information bits.
    r : int
        Number of CRC bits.
    info_set : array-like
        Strictly increasing unfrozen indices, ``K + r`` of them.
    design_snr_db : float, optional
        Design point the information set was built for (metadata only).
    """

    n: int
    K: int
    r: int
    info_set: np.ndarray
    design_snr_db: float = float("nan")
    frozen_mask: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        if int(self.n) != self.n or self.n < 1:
            raise InvalidParameterError(f"n must be an integer >= 1, got {self.n}")
        if self.K < 1 or self.r < 0:
            raise InvalidParameterError(f"need K >= 1 and r >= 0, got K={self.K}, r={self.r}")
        info = np.asarray(self.info_set, dtype=np.int64).copy()
        N = 1 << self.n
        if info.ndim != 1 or info.size != self.K + self.r:
            raise InvalidParameterError(
                f"info_set must hold K + r = {self.K + self.r} indices, got {info.size}")
        if info.size > N:
            raise InvalidParameterError(f"K + r = {info.size} exceeds N = {N}")
        if info.size and (info[0] < 0 or info[-1] >= N or np.any(np.diff(info) <= 0)):
            raise InvalidParameterError("info_set must be strictly increasing within [0, N)")
        info.setflags(write=False)
        frozen = np.ones(N, dtype=np.bool_)
        frozen[info] = False
        frozen.setflags(write=False)
        object.__setattr__(self, "info_set", info)
        object.__setattr__(self, "frozen_mask", frozen)

    @property
    def N(self) -> int:
        return 1 << self.n

    @property
    def payload_length(self) -> int:
        return self.K + self.r

    @classmethod
    def build(cls, n: int, K: int, r: int, design_snr_db: float) -> "CodeSpec":
        """GA-construct the information set at ``design_snr_db`` (Eb/N0, rate K/N)."""
        N = 1 << n
        info = construct_info_set(n, K + r, design_snr_db, rate=K / N)
        return cls(n, K, r, info, float(design_snr_db))


def _log_phi(x):
    x = np.asarray(x, dtype=np.float64)
    out = np.zeros_like(x)
    low = (x > 0) & (x < _PHI_SPLIT)
    high = x >= _PHI_SPLIT
    out[low] = -_PHI_A * x[low] ** _PHI_B + _PHI_C
    xh = x[high]
    out[high] = 0.5 * np.log(np.pi / xh) - xh / 4.0 + np.log1p(-10.0 / (7.0 * xh))
    return out


def phi(x):
    """GA function ``phi`` (two-piece approximation); ``phi(0) = 1``."""
    return np.exp(_log_phi(x))


def _inv_log_phi(target, hi, rtol=1e-9, max_iter=400):
    # bisection for log_phi(x) = target on [0, hi]; log_phi is decreasing
    lo = np.zeros_like(hi)
    hi = hi.copy()
    for _ in range(max_iter):
        mid = 0.5 * (lo + hi)
        above = _log_phi(mid) > target
        lo = np.where(above, mid, lo)
        hi = np.where(above, hi, mid)
        if np.all(hi - lo <= rtol * np.maximum(hi, 1e-300)):
            break
    return 0.5 * (lo + hi)


def phi_inverse(y, rtol=1e-9):
    """Inverse of :func:`phi` by bisection, for ``0 < y <= 1``."""
    y = np.atleast_1d(np.asarray(y, dtype=np.float64))
    target = np.log(y)
    # phi(x) <= exp(-x/4) * ... so x = 4 * (-log y) + 40 brackets the root
    hi = 4.0 * (-target) + 40.0
    return _inv_log_phi(target, hi, rtol)


def ga_llr_means(n: int, sigma: float) -> np.ndarray:
    """Mean LLR of each of the ``2**n`` synthetic channels, natural index order."""
    means = np.array([2.0 / sigma**2])
    for _ in range(n):
        lp = _log_phi(means)
        # log(1 - (1 - phi)^2) = log(phi) + log(2 - phi)
        target = lp + np.log(2.0 - np.exp(lp))
        minus = _inv_log_phi(target, means)
        out = np.empty(2 * means.size)
        out[0::2] = minus
        out[1::2] = 2.0 * means
        means = out
    return means


def construct_info_set(n: int, count: int, design_snr_db: float, rate: float | None = None) -> np.ndarray:
    """Pick the ``count`` most reliable synthetic channels by Gaussian approximation.

    ``design_snr_db`` is Eb/N0 in dB at code rate ``rate`` (default
    ``count / 2**n``); the channel noise variance is
    ``1 / (2 * rate * 10**(snr/10))``. Equal reliabilities go to the smaller
    index. Returns the chosen indices sorted ascending.
    """
    if int(n) != n or n < 1:
        raise InvalidParameterError(f"n must be an integer >= 1, got {n}")
    N = 1 << n
    if not 1 <= count <= N:
        raise InvalidParameterError(f"count must be in [1, {N}], got {count}")
    if not math.isfinite(design_snr_db):
        raise InvalidParameterError(f"design SNR must be finite, got {design_snr_db}")
    if rate is None:
        rate = count / N
    if not 0 < rate <= 1:
        raise InvalidParameterError(f"rate must be in (0, 1], got {rate}")
    sigma = ebn0_to_sigma(design_snr_db, rate)
    means = ga_llr_means(n, sigma)
    # larger mean LLR = lower error probability; lexsort keys are last-major
    order = np.lexsort((np.arange(N), -means))
    return np.sort(order[:count])


def ebn0_to_sigma(ebn0_db: float, rate: float) -> float:
    return math.sqrt(1.0 / (2.0 * rate * 10.0 ** (ebn0_db / 10.0)))


def _as_bits(v, length, name):
    v = np.asarray(v)
    if v.ndim != 1 or v.size != length:
        raise InvalidParameterError(f"{name} must have length {length}, got shape {v.shape}")
    if v.size and (v.min() < 0 or v.max() > 1):
        raise InvalidParameterError(f"{name} must contain only 0/1")
    return v.astype(np.uint8)


def polar_transform(u) -> np.ndarray:
    """``u . F^{(x)n}`` over GF(2) by the in-place butterfly, any power-of-two length."""
    x = np.array(u, dtype=np.uint8)
    N = x.size
    h = 1
    while h < N:
        blocks = x.reshape(-1, 2, h)
        blocks[:, 0, :] ^= blocks[:, 1, :]
        h *= 2
    return x


def encode(spec: CodeSpec, u) -> np.ndarray:
    """Polar-encode a length-N data vector whose frozen positions are zero."""
    u = _as_bits(u, spec.N, "u")
    if np.any(u[spec.frozen_mask]):
        raise InvalidParameterError("u has a nonzero bit at a frozen position")
    return polar_transform(u)


def insert_payload(spec: CodeSpec, payload) -> np.ndarray:
    payload = _as_bits(payload, spec.payload_length, "payload")
    u = np.zeros(spec.N, dtype=np.uint8)
    u[spec.info_set] = payload
    return u


def extract_payload(spec: CodeSpec, u) -> np.ndarray:
    return np.asarray(u, dtype=np.uint8)[spec.info_set]


def save_info_set(spec: CodeSpec, path: str | PathLike) -> None:
    """Write ``N K r design_snr_db`` then one index per line."""
    with open(path, "w") as fh:
        fh.write(f"{spec.N} {spec.K} {spec.r} {spec.design_snr_db!r}\n")
        for i in spec.info_set:
            fh.write(f"{int(i)}\n")


def load_info_set(path: str | PathLike) -> CodeSpec:
    with open(path) as fh:
        header = fh.readline().split()
        if len(header) != 4:
            raise InvalidParameterError(f"bad info-set header in {path}: {header}")
        N, K, r = (int(v) for v in header[:3])
        snr = float(header[3])
        info = [int(line) for line in fh if line.strip()]
    n = N.bit_length() - 1
    if 1 << n != N:
        raise InvalidParameterError(f"N = {N} is not a power of two")
    return CodeSpec(n, K, r, np.array(info, dtype=np.int64), snr)
