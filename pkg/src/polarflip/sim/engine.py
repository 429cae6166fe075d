"""
Frame-level Monte-Carlo machinery.

Frame ``i`` of a campaign is a pure function of ``(config, snr, seed, i)``:
its payload, noise and tie coins come from ``RngStream(seed, i)``. Frames are
grouped into fixed-size chunks that workers evaluate independently; partial
counters are merged in chunk order and the stop rule is only evaluated
between chunks, so results do not depend on the worker count.
"""

from __future__ import annotations

import multiprocessing as mp
from collections import Counter
from contextlib import contextmanager
from dataclasses import dataclass, field, replace

import numpy as np

from ..channel import ChannelParams, RngStream, channel_llr
from ..crc import crc_append
from ..polar import CodeSpec, insert_payload, polar_transform
from ..sc import DecoderWorkspace, oracle_sc, sc_decode
from ..flip import scflip2
from .config import SimConfig

_code_cache: dict = {}


def code_for(config: SimConfig, snr_db: float) -> CodeSpec:
    """Information set designed at the simulated SNR (cached per process)."""
    key = (config.n, config.K, config.r, float(snr_db))
    if key not in _code_cache:
        _code_cache[key] = CodeSpec.build(config.n, config.K, config.r, snr_db)
    return _code_cache[key]


@dataclass
class Frame:
    index: int
    u: np.ndarray
    llrs: np.ndarray
    ties: np.ndarray


@dataclass
class PointStats:
    """Additive counters for one SNR point."""

    frames: int = 0
    errors: int = 0
    sc_errors: int = 0
    initial_crc_fail: int = 0
    extra_attempts: int = 0
    attempts: int = 0
    order_hist: Counter = field(default_factory=Counter)
    attempts_hist: Counter = field(default_factory=Counter)

    def merge(self, other: "PointStats") -> "PointStats":
        self.frames += other.frames
        self.errors += other.errors
        self.sc_errors += other.sc_errors
        self.initial_crc_fail += other.initial_crc_fail
        self.extra_attempts += other.extra_attempts
        self.attempts += other.attempts
        self.order_hist.update(other.order_hist)
        self.attempts_hist.update(other.attempts_hist)
        return self

    @property
    def fer(self) -> float:
        return self.errors / self.frames if self.frames else float("nan")

    def oa_errors(self, omega: int) -> int:
        """Frames whose oracle order exceeds ``omega``."""
        return sum(c for k, c in self.order_hist.items() if k > omega)

    @property
    def t_ave(self) -> float:
        """Mean number of extra attempts given that the first SC pass failed the CRC."""
        return self.extra_attempts / self.initial_crc_fail if self.initial_crc_fail else 0.0

    @property
    def fer_sc(self) -> float:
        return self.sc_errors / self.frames if self.frames else float("nan")

    @property
    def nc_ave(self) -> float:
        return 1.0 + self.fer_sc * self.t_ave

    @property
    def mean_attempts(self) -> float:
        return self.attempts / self.frames if self.frames else float("nan")


@dataclass
class OrderPool:
    """Frames of oracle order 1 and 2 kept for flip-list studies.

    ``order1`` holds ``(cge, llrs)`` with ``llrs`` the decision LLRs of the
    plain SC pass. ``order2`` holds ``(k1, k2, llrs)`` with ``llrs`` from the
    SC pass that flips the first channel-generated error ``k1``.
    """

    info_set: np.ndarray
    frames: int = 0
    order_hist: Counter = field(default_factory=Counter)
    order1: list = field(default_factory=list)
    order2: list = field(default_factory=list)

    def merge(self, other: "OrderPool") -> "OrderPool":
        self.frames += other.frames
        self.order_hist.update(other.order_hist)
        self.order1.extend(other.order1)
        self.order2.extend(other.order2)
        return self


class FrameTask:
    """Evaluates chunks of frames for one configuration and SNR point."""

    def __init__(self, config: SimConfig, snr_db: float, kind: str = "fer"):
        self.config = config
        self.snr_db = float(snr_db)
        self.kind = kind
        self._ready = False

    def __getstate__(self):
        return {"config": self.config, "snr_db": self.snr_db, "kind": self.kind}

    def __setstate__(self, state):
        self.__init__(**state)

    def _setup(self):
        cfg = self.config
        self.spec = code_for(cfg, self.snr_db)
        self.crc = cfg.crc
        self.params = ChannelParams(self.snr_db, cfg.K / cfg.N)
        self.ws = DecoderWorkspace(cfg.N)
        self._ready = True

    def frame(self, index: int) -> Frame:
        if not self._ready:
            self._setup()
        rng = RngStream(self.config.seed, index)
        N = self.spec.N
        message = rng.payload(self.config.K)
        u = insert_payload(self.spec, crc_append(self.crc, message))
        y = 1.0 - 2.0 * polar_transform(u) + self.params.sigma * rng.noise(N)
        return Frame(index, u, channel_llr(y, self.params), rng.ties(N))

    def __call__(self, start: int, stop: int):
        if not self._ready:
            self._setup()
        if self.kind == "fer":
            acc = PointStats()
            for i in range(start, stop):
                self._fer_frame(self.frame(i), acc)
        else:
            acc = OrderPool(self.spec.info_set)
            for i in range(start, stop):
                self._order_frame(self.frame(i), acc)
        return acc

    def _fer_frame(self, fr: Frame, acc: PointStats):
        cfg = self.config
        acc.frames += 1
        order = None
        if cfg.track_order or cfg.oracle_order is not None:
            order = oracle_sc(fr.llrs, self.spec, fr.u, ties=fr.ties, workspace=self.ws).order
            acc.order_hist[order] += 1
        if cfg.oracle_order is not None:
            acc.errors += order > cfg.oracle_order
            acc.sc_errors += order > 0
            acc.attempts += 1
            acc.attempts_hist[1] += 1
            return
        if cfg.decoder == "sc":
            out = sc_decode(fr.llrs, self.spec, crc=self.crc, ties=fr.ties, workspace=self.ws)
            wrong = not np.array_equal(out.u_hat, fr.u)
            acc.errors += wrong
            acc.sc_errors += wrong
            acc.initial_crc_fail += not out.crc_pass
            acc.attempts += 1
            acc.attempts_hist[1] += 1
            return
        flip = cfg.flip if cfg.decoder == "scflip2" else replace(cfg.flip, t21=0, t22=0)
        res = scflip2(fr.llrs, self.spec, self.crc, flip, ties=fr.ties, workspace=self.ws)
        acc.errors += not np.array_equal(res.u_hat, fr.u)
        acc.sc_errors += not np.array_equal(res.initial.u_hat, fr.u)
        if not res.initial.crc_pass:
            acc.initial_crc_fail += 1
            acc.extra_attempts += res.attempts_used - 1
        acc.attempts += res.attempts_used
        acc.attempts_hist[res.attempts_used] += 1

    def _order_frame(self, fr: Frame, acc: OrderPool):
        acc.frames += 1
        order, cges = oracle_sc(fr.llrs, self.spec, fr.u, ties=fr.ties, workspace=self.ws)
        acc.order_hist[order] += 1
        if order == 1:
            out = sc_decode(fr.llrs, self.spec, ties=fr.ties, workspace=self.ws)
            acc.order1.append((cges[0], out.decision_llrs))
        elif order == 2:
            out = sc_decode(fr.llrs, self.spec, (cges[0],), ties=fr.ties, workspace=self.ws)
            acc.order2.append((cges[0], cges[1], out.decision_llrs))


_worker_task: FrameTask | None = None


def _init_worker(task):
    global _worker_task
    _worker_task = task


def _run_chunk(bounds):
    return _worker_task(*bounds)


@contextmanager
def _executor(task: FrameTask, workers: int):
    if workers == 1:
        yield lambda wave: (task(a, b) for a, b in wave)
        return
    with mp.get_context().Pool(workers, initializer=_init_worker, initargs=(task,)) as pool:
        yield lambda wave: pool.map(_run_chunk, wave)


def drive(task: FrameTask, acc, done, max_frames: int, chunk_size: int, workers: int = 1,
          progress=None):
    """Merge chunk results into ``acc`` until ``done(acc)`` or ``max_frames`` frames."""
    start = 0
    with _executor(task, workers) as run:
        while start < max_frames and not done(acc):
            wave = []
            for _ in range(workers):
                if start >= max_frames:
                    break
                stop = min(start + chunk_size, max_frames)
                wave.append((start, stop))
                start = stop
            for part in run(wave):
                acc.merge(part)
                if progress is not None:
                    progress(acc)
                if done(acc):
                    break
    return acc
