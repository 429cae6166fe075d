"""
CRC-16 with g(x) = x^16 + x^15 + x^2 + 1
=========================================

"""

import numpy as np

from polarflip import CrcSpec, crc_append, crc_check

crc = CrcSpec.from_hex("0x8005")
print("generator exponents:", [16 - int(i) for i in np.flatnonzero(crc.generator_bits)])

msg = np.random.default_rng(0).integers(0, 2, 512, dtype=np.uint8)
word = crc_append(crc, msg)
print("parity bits:", "".join(map(str, word[-16:])), " check:", crc_check(crc, word))

# every single-bit error is caught
caught = 0
for j in range(word.size):
    bad = word.copy()
    bad[j] ^= 1
    caught += not crc_check(crc, bad)
print(f"single-bit errors caught: {caught}/{word.size}")

# random words pass about once in 2^16 tries
rng = np.random.default_rng(1)
hits = sum(crc_check(crc, rng.integers(0, 2, 528, dtype=np.uint8)) for _ in range(200_000))
print(f"random words accepted: {hits} of 200000 (expected about {200_000 / 2**16:.1f})")
