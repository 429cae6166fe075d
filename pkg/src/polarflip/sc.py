"""
Successive cancellation decoding with optional flipped decisions.

The decoder walks the natural-order butterfly leaf by leaf. For leaf ``i``
only the stages below the lowest set bit of ``i`` are recomputed, so one
pass costs exactly ``n * N / 2`` f-evaluations plus as many g-evaluations.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass, field
from os import PathLike
from typing import NamedTuple

import numpy as np
from numba import njit

from .crc import CrcSpec, crc_check
from .exceptions import InvalidParameterError
from .polar import CodeSpec


@njit(cache=True, inline="always")
def f_exact(a, b):
    """Check-node LLR ``2 atanh(tanh(a/2) tanh(b/2))`` in a form that cannot overflow."""
    aa = abs(a)
    ab = abs(b)
    es = np.exp(-(aa + ab))
    mag = min(aa, ab) - np.log1p((np.exp(-abs(aa - ab)) - es) / (1.0 + es))
    return -mag if (a < 0) != (b < 0) else mag


@njit(cache=True, inline="always")
def f_minsum(a, b):
    m = min(abs(a), abs(b))
    return -m if (a < 0) != (b < 0) else m


@njit(cache=True, inline="always")
def g_node(a, b, u):
    return b - a if u else b + a


@njit(cache=True)
def _sc_kernel(ch, frozen, flip, ties, true_u, genie, min_sum,
               u_hat, dec, llr, left, cur, cge):
    N = ch.shape[0]
    n = 0
    while (1 << n) < N:
        n += 1
    for j in range(N):
        llr[N + j] = ch[j]
    n_fg = 0
    n_cge = 0
    for i in range(N):
        if i == 0:
            top = n - 1
        else:
            top = 0
            while ((i >> top) & 1) == 0:
                top += 1
        for s in range(top, -1, -1):
            h = 1 << s
            src = 2 * h
            if (i >> s) & 1:
                for j in range(h):
                    llr[h + j] = g_node(llr[src + j], llr[src + h + j], left[h + j])
            elif min_sum:
                for j in range(h):
                    llr[h + j] = f_minsum(llr[src + j], llr[src + h + j])
            else:
                for j in range(h):
                    llr[h + j] = f_exact(llr[src + j], llr[src + h + j])
            n_fg += h
        L = llr[1]
        dec[i] = L
        if frozen[i]:
            bit = 0
        else:
            if L > 0:
                hard = 0
            elif L < 0:
                hard = 1
            else:
                hard = ties[i]
            if genie:
                bit = true_u[i]
                if hard != bit:
                    cge[n_cge] = i
                    n_cge += 1
            else:
                bit = hard ^ flip[i]
        u_hat[i] = bit
        # fold the decided bit into the partial sums of every finished subtree
        cur[1] = bit
        for s in range(n):
            h = 1 << s
            if ((i >> s) & 1) == 0:
                for j in range(h):
                    left[h + j] = cur[h + j]
                break
            for j in range(h):
                cur[2 * h + j] = left[h + j] ^ cur[h + j]
                cur[3 * h + j] = cur[h + j]
    return n_fg, n_cge


class DecoderWorkspace:
    """Scratch memory for one decoder; reuse across frames of the same length."""

    def __init__(self, N: int):
        self.N = N
        self.llr = np.zeros(2 * N)
        self.left = np.zeros(2 * N, dtype=np.uint8)
        self.cur = np.zeros(2 * N, dtype=np.uint8)
        self.u_hat = np.zeros(N, dtype=np.uint8)
        self.dec = np.zeros(N)
        self.flip = np.zeros(N, dtype=np.uint8)
        self.cge = np.zeros(N, dtype=np.int64)
        self.zeros = np.zeros(N, dtype=np.uint8)

    def reset(self):
        for a in (self.llr, self.left, self.cur, self.u_hat, self.dec, self.flip, self.cge):
            a[:] = 0


@dataclass
class DecodeOutcome:
    """Result of one SC pass.

    ``decision_llrs[j]`` is ``L(u_i)`` for ``i = info_set[j]``, recorded
    before any flip is applied.
    """

    u_hat: np.ndarray
    decision_llrs: np.ndarray
    crc_pass: bool | None = None
    attempts_used: int = 1
    flips: tuple = ()
    fg_evaluations: int = 0
    all_llrs: np.ndarray = field(default=None, repr=False)


class OracleResult(NamedTuple):
    order: int
    cge_positions: list


def _check_llrs(channel_llrs, spec):
    ch = np.ascontiguousarray(channel_llrs, dtype=np.float64)
    if ch.ndim != 1 or ch.size != spec.N:
        raise InvalidParameterError(f"expected {spec.N} channel LLRs, got shape {ch.shape}")
    return ch


def _check_ties(ties, N, ws):
    if ties is None:
        return ws.zeros
    ties = np.ascontiguousarray(ties, dtype=np.uint8)
    if ties.size != N:
        raise InvalidParameterError(f"ties must have length {N}")
    return ties


def _workspace(workspace, N):
    if workspace is None:
        return DecoderWorkspace(N)
    if workspace.N != N:
        raise InvalidParameterError(f"workspace sized for N={workspace.N}, need {N}")
    return workspace


def sc_decode(channel_llrs, spec: CodeSpec, flips=(), *, crc: CrcSpec | None = None,
              ties=None, workspace: DecoderWorkspace | None = None,
              min_sum: bool = False) -> DecodeOutcome:
    """SC decoding where decisions at positions in ``flips`` are complemented.

    Parameters
    ----------
    channel_llrs : array-like
        Length-N channel LLRs.
    spec : CodeSpec
    flips : iterable of int
        Unfrozen positions whose hard decision is inverted.
    crc : CrcSpec, optional
        If given, ``crc_pass`` reports the CRC verdict on the decoded payload.
    ties : array-like of {0, 1}, optional
        Decision taken when ``L(u_i) == 0`` (sign(0) coin per position);
        defaults to 0 everywhere.
    workspace : DecoderWorkspace, optional
    min_sum : bool
        Use the min-sum check-node update instead of the exact one.
    """
    ch = _check_llrs(channel_llrs, spec)
    N = spec.N
    ws = _workspace(workspace, N)
    ties = _check_ties(ties, N, ws)
    flips = tuple(int(k) for k in flips)
    ws.flip[:] = 0
    for k in flips:
        if not 0 <= k < N or spec.frozen_mask[k]:
            raise InvalidParameterError(f"flip position {k} is not an unfrozen index")
        ws.flip[k] = 1
    n_fg, _ = _sc_kernel(ch, spec.frozen_mask, ws.flip, ties, ws.zeros, False, min_sum,
                         ws.u_hat, ws.dec, ws.llr, ws.left, ws.cur, ws.cge)
    u_hat = ws.u_hat.copy()
    crc_pass = None
    if crc is not None:
        crc_pass = crc_check(crc, u_hat[spec.info_set]) if spec.r > 0 else True
    return DecodeOutcome(u_hat, ws.dec[spec.info_set], crc_pass, 1, flips, n_fg, ws.dec.copy())


def oracle_sc(channel_llrs, spec: CodeSpec, true_u, *, ties=None,
              workspace: DecoderWorkspace | None = None) -> OracleResult:
    """Genie-aided SC that always decides correctly.

    Returns the number of unfrozen positions where the plain decision would
    have been wrong (the order of the noise realization) and those positions
    in decoding order.
    """
    ch = _check_llrs(channel_llrs, spec)
    N = spec.N
    true_u = np.ascontiguousarray(true_u, dtype=np.uint8)
    if true_u.ndim != 1 or true_u.size != N:
        raise InvalidParameterError(f"true_u must have length {N}")
    ws = _workspace(workspace, N)
    ties = _check_ties(ties, N, ws)
    _, n_cge = _sc_kernel(ch, spec.frozen_mask, ws.zeros, ties, true_u, True, False,
                          ws.u_hat, ws.dec, ws.llr, ws.left, ws.cur, ws.cge)
    return OracleResult(int(n_cge), [int(k) for k in ws.cge[:n_cge]])


def write_trace(path: str | PathLike, spec: CodeSpec, outcome: DecodeOutcome) -> None:
    """Dump ``index, frozen, llr, decision`` for every position as CSV."""
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["index", "frozen", "llr", "decision"])
        for i in range(spec.N):
            w.writerow([i, int(spec.frozen_mask[i]), repr(float(outcome.all_llrs[i])),
                        int(outcome.u_hat[i])])
