"""BPSK over BI-AWGN with reproducible per-frame random streams."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .exceptions import InvalidParameterError

#: default master seed
DEFAULT_SEED = 0x5EED

# sub-stream tags; each frame draws payload, noise and tie coins independently
PAYLOAD, NOISE, TIES = 0, 1, 2


@dataclass(frozen=True)
class ChannelParams:
    """Eb/N0 operating point; ``sigma**2 = 1 / (2 * rate * 10**(ebn0_db / 10))``."""

    ebn0_db: float
    rate: float

    def __post_init__(self):
        if not 0 < self.rate <= 1:
            raise InvalidParameterError(f"rate must be in (0, 1], got {self.rate}")
        if not math.isfinite(self.ebn0_db):
            raise InvalidParameterError(f"SNR must be finite, got {self.ebn0_db}")

    @property
    def sigma(self) -> float:
        return math.sqrt(1.0 / (2.0 * self.rate * 10.0 ** (self.ebn0_db / 10.0)))

    @classmethod
    def from_sigma(cls, sigma: float, rate: float = 1.0) -> "ChannelParams":
        """Operating point with a given noise standard deviation."""
        if not sigma > 0:
            raise InvalidParameterError(f"sigma must be positive, got {sigma}")
        ebn0 = 10.0 * math.log10(1.0 / (2.0 * rate * sigma**2))
        return cls(ebn0, rate)


@dataclass(frozen=True)
class RngStream:
    """Random source of one simulated frame.

    ``(master_seed, frame_index)`` seeds a :class:`numpy.random.SeedSequence`,
    so distinct frames get independent streams and a frame can be replayed
    alone. Payload, noise and tie-break coins come from separate sub-streams
    and do not depend on the order in which they are requested.
    """

    master_seed: int = DEFAULT_SEED
    frame_index: int = 0

    def generator(self, tag: int) -> np.random.Generator:
        return np.random.default_rng([self.master_seed, self.frame_index, tag])

    def payload(self, length: int) -> np.ndarray:
        return self.generator(PAYLOAD).integers(0, 2, length, dtype=np.uint8)

    def noise(self, length: int) -> np.ndarray:
        return self.generator(NOISE).standard_normal(length)

    def ties(self, length: int) -> np.ndarray:
        """Coins deciding ``sign(0)`` at each position."""
        return self.generator(TIES).integers(0, 2, length, dtype=np.uint8)


def bpsk(x) -> np.ndarray:
    return 1.0 - 2.0 * np.asarray(x, dtype=np.float64)


def transmit(x, params: ChannelParams, rng: RngStream) -> np.ndarray:
    """``y = (1 - 2x) + n`` with ``n ~ N(0, sigma^2)`` i.i.d."""
    s = bpsk(x)
    return s + params.sigma * rng.noise(s.size)


def channel_llr(y, params: ChannelParams | float) -> np.ndarray:
    """``2 y / sigma^2``; ``params`` may also be sigma itself."""
    sigma = params.sigma if isinstance(params, ChannelParams) else float(params)
    if not sigma > 0:
        raise InvalidParameterError(f"sigma must be positive, got {sigma}")
    return 2.0 * np.asarray(y, dtype=np.float64) / sigma**2
