"""Bit-level CRC: MSB first, zero initial register, no reflection, no final XOR."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numba import njit

from .exceptions import InvalidParameterError

#: g(x) = x^16 + x^15 + x^2 + 1, leading term implicit
CRC16_POLY = 0x8005


@dataclass(frozen=True)
class CrcSpec:
    """CRC of width ``r`` with generator ``x^r + poly(x)``.

    ``poly`` holds the coefficients of ``x^{r-1} .. x^0`` as an integer word.
    """

    r: int = 16
    poly: int = CRC16_POLY

    def __post_init__(self):
        if self.r < 0 or self.r > 63:
            raise InvalidParameterError(f"CRC width must be in [0, 63], got {self.r}")
        if not 0 <= self.poly < (1 << self.r) and self.r > 0:
            raise InvalidParameterError(f"poly {self.poly:#x} does not fit below x^{self.r}")

    @classmethod
    def from_hex(cls, text: str, r: int = 16) -> "CrcSpec":
        return cls(r, int(text, 16))

    @property
    def generator_bits(self) -> np.ndarray:
        """Full generator coefficients, highest degree first (length r + 1)."""
        word = (1 << self.r) | self.poly
        return np.array([(word >> (self.r - i)) & 1 for i in range(self.r + 1)], dtype=np.uint8)


@njit(cache=True)
def _remainder(bits, poly, r):
    mask = (1 << r) - 1
    reg = 0
    for i in range(bits.shape[0]):
        fb = ((reg >> (r - 1)) & 1) ^ bits[i]
        reg = (reg << 1) & mask
        if fb:
            reg ^= poly
    return reg


def crc_remainder(spec: CrcSpec, message) -> np.ndarray:
    """The r bits of ``message(x) * x^r mod g(x)``, MSB first."""
    if spec.r == 0:
        return np.zeros(0, dtype=np.uint8)
    bits = np.ascontiguousarray(message, dtype=np.uint8)
    reg = _remainder(bits, np.int64(spec.poly), spec.r)
    return np.array([(reg >> (spec.r - 1 - i)) & 1 for i in range(spec.r)], dtype=np.uint8)


def crc_append(spec: CrcSpec, message) -> np.ndarray:
    message = np.asarray(message, dtype=np.uint8)
    if message.ndim != 1 or message.size < 1:
        raise InvalidParameterError("message must be a non-empty bit vector")
    return np.concatenate([message, crc_remainder(spec, message)])


def crc_check(spec: CrcSpec, codeword) -> bool:
    """True iff the trailing r bits equal the CRC of the leading bits."""
    codeword = np.ascontiguousarray(codeword, dtype=np.uint8)
    if codeword.ndim != 1 or codeword.size < spec.r + 1:
        raise InvalidParameterError(f"codeword must have length >= r + 1 = {spec.r + 1}")
    if spec.r == 0:
        return True
    K = codeword.size - spec.r
    reg = _remainder(codeword[:K], np.int64(spec.poly), spec.r)
    tail = 0
    for b in codeword[K:]:
        tail = (tail << 1) | int(b)
    return reg == tail
