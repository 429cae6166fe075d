"""Slow, obviously-correct reference computations used by the tests."""

import itertools

import numpy as np


def dense_generator(N):
    F = np.array([[1, 0], [1, 1]], dtype=np.int64)
    G = np.array([[1]], dtype=np.int64)
    while G.shape[0] < N:
        G = np.kron(G, F)
    return G


def dense_encode(u):
    u = np.asarray(u, dtype=np.int64)
    return (u @ dense_generator(u.size)) % 2


def poly_mod_crc(message_bits, generator_bits):
    """Remainder of message(x) * x^r divided by g(x), by schoolbook long division on ints."""
    r = len(generator_bits) - 1
    dividend = int("".join(str(int(b)) for b in message_bits), 2) << r
    divisor = int("".join(str(int(b)) for b in generator_bits), 2)
    dlen = divisor.bit_length()
    while dividend.bit_length() >= dlen:
        dividend ^= divisor << (dividend.bit_length() - dlen)
    return [(dividend >> (r - 1 - i)) & 1 for i in range(r)]


def marginal_llr(ch_llr, prefix, i):
    """L(u_i) given u_0..u_{i-1} = prefix, by summing over every completion of u.

    The channel likelihood of codeword x is proportional to
    prod_j 1 / (1 + exp(-(1 - 2 x_j) L_j)).
    """
    N = len(ch_llr)
    ch = np.asarray(ch_llr, dtype=np.float64)
    G = dense_generator(N)
    num = [0.0, 0.0]
    for rest in itertools.product((0, 1), repeat=N - i - 1):
        for b in (0, 1):
            u = np.array(list(prefix) + [b] + list(rest))
            x = (u @ G) % 2
            s = 1 - 2 * x
            num[b] += np.exp(-np.sum(np.logaddexp(0.0, -s * ch)))
    return float(np.log(num[0] / num[1]))


def batched_genie_errors(ch_llr):
    """Per-position genie-SC error indicators for a batch of all-zero codewords.

    ``ch_llr`` has shape (frames, N). Returns a boolean array (frames, N)
    telling where the hard decision on each bit-channel would be wrong when
    all previous bits are known (all zero).
    """
    frames, N = ch_llr.shape

    def f(a, b):
        return 2.0 * np.arctanh(np.clip(np.tanh(a / 2) * np.tanh(b / 2), -1 + 1e-15, 1 - 1e-15))

    def rec(L):
        m = L.shape[1]
        if m == 1:
            return [L[:, 0]]
        a, b = L[:, : m // 2], L[:, m // 2:]
        # genie partial sums are all zero, so the g node is a plain sum
        return rec(f(a, b)) + rec(a + b)

    leaves = rec(ch_llr)
    return np.stack([leaf <= 0 for leaf in leaves], axis=1)
