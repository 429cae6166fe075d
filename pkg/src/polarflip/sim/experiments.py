"""Monte-Carlo campaigns: FER curves, loss of order 1, alpha sweeps, complexity."""

from __future__ import annotations

import logging
import time
from dataclasses import dataclass, field

import numpy as np

from ..exceptions import InvalidParameterError
from ..flip import LLR_ABS, M_ALPHA, candidate_scores, metric_kind
from .config import SimConfig
from .engine import FrameTask, OrderPool, PointStats, code_for, drive
from .report import CsvSink, PointReport, SimReport

log = logging.getLogger(__name__)


def run_fer(config: SimConfig, progress=None) -> SimReport:
    """Simulate every SNR point until the stop rule fires.

    A frame error is a decoded data vector differing from the transmitted
    one, so undetected CRC collisions count as errors. Rows are appended to
    ``config.out`` as each point finishes.
    """
    sink = CsvSink(config.out)
    report = SimReport(config)
    try:
        for snr in config.snrs:
            t0 = time.perf_counter()
            stats = drive(FrameTask(config, snr, "fer"), PointStats(),
                          lambda acc: acc.errors >= config.min_errors,
                          config.max_frames, config.chunk_size, config.workers, progress)
            point = PointReport(snr, stats, time.perf_counter() - t0)
            report.points.append(point)
            sink.write(point.row(config))
            log.info("%s %.2f dB: %d/%d errors, FER %.3g, %.0f frames/s", config.decoder, snr,
                     stats.errors, stats.frames, stats.fer, point.throughput)
    finally:
        sink.close()
    return report


def collect_order_pool(config: SimConfig, snr_db: float, min_order1: int = 10_000,
                       min_order2: int = 0, progress=None) -> OrderPool:
    """Sample frames until enough order-1 (and order-2) realizations are stored."""

    def done(acc):
        return len(acc.order1) >= min_order1 and len(acc.order2) >= min_order2

    pool = OrderPool(code_for(config, snr_db).info_set)
    return drive(FrameTask(config, snr_db, "orders"), pool, done, config.max_frames,
                 config.chunk_size, config.workers, progress)


def cge_rank(info_set, llrs, k1: int, target: int, alpha: float, metric: str) -> int:
    """Position of ``target`` in the flip-candidate ordering after ``k1`` (0 = first)."""
    start = np.searchsorted(info_set, k1, side="right")
    idx = info_set[start:]
    scores = candidate_scores(np.abs(llrs[start:]), alpha, metric)
    p = int(np.searchsorted(idx, target))
    s = scores[p]
    return int(np.count_nonzero(scores < s) + np.count_nonzero(scores[:p] == s))


def pool_ranks(pool: OrderPool, alpha: float, metric: str = M_ALPHA, order: int = 1) -> np.ndarray:
    """Candidate-list rank of the channel-generated error to find, per stored frame.

    For ``order=1`` the target is the single error of each order-1 frame.
    For ``order=2`` it is the second error, ranked among positions after the
    first one on the trajectory where the first has been flipped.
    """
    metric = metric_kind(metric)
    if order == 1:
        return np.array([cge_rank(pool.info_set, llrs, -1, k, alpha, metric)
                         for k, llrs in pool.order1], dtype=np.int64)
    if order == 2:
        return np.array([cge_rank(pool.info_set, llrs, k1, k2, alpha, metric)
                         for k1, k2, llrs in pool.order2], dtype=np.int64)
    raise InvalidParameterError(f"order must be 1 or 2, got {order}")


@dataclass
class LossTable:
    """Loss of order 1 against the flip-list size."""

    t1_grid: list
    conditional: np.ndarray
    unconditional: np.ndarray
    misses: np.ndarray
    order1_frames: int
    frames: int
    metric: str
    alpha: float

    @property
    def d1(self) -> float:
        return self.order1_frames / self.frames

    def at(self, t1: int) -> float:
        return float(self.unconditional[list(self.t1_grid).index(t1)])


def loss_of_order1(pool: OrderPool, t1_grid, metric: str = M_ALPHA, alpha: float = 0.3) -> LossTable:
    ranks = pool_ranks(pool, alpha, metric, 1)
    t1_grid = [int(t) for t in t1_grid]
    misses = np.array([np.count_nonzero(ranks >= t) for t in t1_grid], dtype=np.int64)
    n1 = len(ranks)
    cond = misses / n1 if n1 else np.full(len(t1_grid), np.nan)
    return LossTable(t1_grid, cond, misses / pool.frames, misses, n1, pool.frames,
                     metric_kind(metric), alpha)


def run_loss_of_order1(config: SimConfig, t1_grid, min_order1: int = 10_000,
                       pool: OrderPool | None = None) -> LossTable:
    """Fraction of order-1 frames whose error is not in the first ``T`` candidates.

    Uses the metric and ``alpha1`` of ``config.flip`` at ``config.snrs[0]``.
    The unconditional loss multiplies by the empirical probability of order 1.
    """
    if pool is None:
        pool = collect_order_pool(config, config.snrs[0], min_order1)
    return loss_of_order1(pool, t1_grid, config.flip.metric, config.flip.alpha1)


@dataclass
class AlphaSweep:
    alphas: list
    hit_rate: np.ndarray
    mean_rank: np.ndarray
    samples: int
    list_size: int
    order: int
    best_alpha: float = field(init=False)

    def __post_init__(self):
        # highest hit rate; exact ties go to the lower mean rank, then the smaller alpha
        order = np.lexsort((np.asarray(self.alphas), self.mean_rank, -self.hit_rate))
        self.best_alpha = float(self.alphas[int(order[0])])


def sweep_alpha(config: SimConfig, alpha_grid, order: int = 1, list_size: int | None = None,
                pool: OrderPool | None = None, min_frames: int = 10_000) -> AlphaSweep:
    """Pick the alpha that most often puts the sought error within the first ``list_size`` candidates.

    ``order=1`` works on order-1 frames with ``list_size`` defaulting to
    ``t1``; ``order=2`` works on order-2 frames, looking for the second
    error after the first has been corrected, with ``list_size`` defaulting
    to ``t22``. Exact ties in hit rate are settled by the mean rank.
    """
    alphas = sorted(float(a) for a in alpha_grid)
    if not alphas:
        raise InvalidParameterError("alpha grid is empty")
    if any(a <= 0 for a in alphas):
        raise InvalidParameterError("alpha values must be positive")
    if order not in (1, 2):
        raise InvalidParameterError(f"order must be 1 or 2, got {order}")
    if list_size is None:
        list_size = config.flip.t1 if order == 1 else config.flip.t22
    if pool is None:
        pool = collect_order_pool(config, config.snrs[0], min_frames if order == 1 else 0,
                                  min_frames if order == 2 else 0)
    hits, means = [], []
    for a in alphas:
        ranks = pool_ranks(pool, a, M_ALPHA, order)
        hits.append(np.mean(ranks < list_size) if ranks.size else np.nan)
        means.append(np.mean(ranks) if ranks.size else np.nan)
    samples = len(pool.order1) if order == 1 else len(pool.order2)
    return AlphaSweep(alphas, np.array(hits), np.array(means), samples, list_size, order)


@dataclass
class ComplexityRow:
    snr_db: float
    frames: int
    fer_sc: float
    t_ave: float
    nc_ave: float
    mean_attempts: float
    fer: float


def measure_complexity(config: SimConfig, report: SimReport | None = None) -> list:
    """Average normalized complexity ``1 + FER_SC * T_ave`` per SNR point.

    ``mean_attempts`` is the direct average of SC passes per frame and must
    agree with ``nc_ave`` up to CRC collisions and sampling noise.
    """
    if config.decoder not in ("scflip1", "scflip2"):
        raise InvalidParameterError("complexity is defined for scflip1 / scflip2")
    if report is None:
        report = run_fer(config)
    return [ComplexityRow(p.snr_db, p.stats.frames, p.stats.fer_sc, p.stats.t_ave,
                          p.stats.nc_ave, p.stats.mean_attempts, p.stats.fer) for p in report]


__all__ = ["run_fer", "collect_order_pool", "run_loss_of_order1", "loss_of_order1", "sweep_alpha",
           "measure_complexity", "pool_ranks", "cge_rank", "LossTable", "AlphaSweep",
           "ComplexityRow", "LLR_ABS", "M_ALPHA"]
