"""
SCFlip-1 / SCFlip-2 decoding and flip-position metrics.

Candidate positions are ranked by an ascending score. With ``m_alpha`` the
score of an unfrozen position ``k`` is

    |L(u_k)| + (1/alpha) * sum_{i in I, k1 < i < k} log(1 + exp(-alpha |L(u_i)|))

which is ``-(1/alpha) log`` of the probability that ``u_k`` is the first
wrong decision after ``k1``. ``llr_abs`` ranks by ``|L(u_k)|`` alone.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field

import numpy as np

from .crc import CrcSpec
from .exceptions import InvalidParameterError
from .polar import CodeSpec
from .sc import DecodeOutcome, DecoderWorkspace, sc_decode

LLR_ABS = "llr_abs"
M_ALPHA = "m_alpha"
_METRIC_ALIASES = {"llr": LLR_ABS, "llr_abs": LLR_ABS, "malpha": M_ALPHA, "m_alpha": M_ALPHA}


def metric_kind(name: str) -> str:
    try:
        return _METRIC_ALIASES[name]
    except KeyError:
        raise InvalidParameterError(f"unknown metric {name!r}") from None


@dataclass(frozen=True)
class FlipConfig:
    """Attempt budgets and metric parameters of the SCFlip decoders."""

    t1: int = 20
    t21: int = 0
    t22: int = 0
    alpha1: float = 0.3
    alpha2: float = 0.5
    metric: str = M_ALPHA

    def __post_init__(self):
        object.__setattr__(self, "metric", metric_kind(self.metric))
        if self.t1 < 0 or self.t21 < 0 or self.t22 < 0:
            raise InvalidParameterError("attempt budgets must be non-negative")
        if self.t21 > self.t1:
            raise InvalidParameterError(f"t21 = {self.t21} exceeds t1 = {self.t1}")
        if self.metric == M_ALPHA and not (self.alpha1 > 0 and self.alpha2 > 0):
            raise InvalidParameterError("alpha1 and alpha2 must be positive")

    @property
    def t2(self) -> int:
        return self.t21 * self.t22

    @property
    def max_attempts(self) -> int:
        return 1 + self.t1 + self.t2


@dataclass
class MetricContext:
    """LLRs of one SC trajectory, indexed like ``info_set``."""

    decision_llrs: np.ndarray
    info_set: np.ndarray
    k1: int = -1
    alpha: float = 0.3
    metric: str = M_ALPHA

    def __post_init__(self):
        self.decision_llrs = np.asarray(self.decision_llrs, dtype=np.float64)
        self.info_set = np.asarray(self.info_set, dtype=np.int64)
        self.metric = metric_kind(self.metric)
        if self.decision_llrs.shape != self.info_set.shape:
            raise InvalidParameterError("decision_llrs and info_set differ in length")
        if self.k1 != -1 and self.k1 not in set(self.info_set.tolist()):
            raise InvalidParameterError(f"k1 = {self.k1} is neither -1 nor an unfrozen index")
        if self.metric == M_ALPHA and not self.alpha > 0:
            raise InvalidParameterError(f"alpha must be positive, got {self.alpha}")


def candidate_scores(abs_llrs, alpha: float, metric: str = M_ALPHA) -> np.ndarray:
    """Scores of consecutive eligible positions given their ``|L|`` in decoding order."""
    abs_llrs = np.asarray(abs_llrs, dtype=np.float64)
    if metric == LLR_ABS:
        return abs_llrs.copy()
    penalty = np.log1p(np.exp(-alpha * abs_llrs)) / alpha
    before = np.empty_like(penalty)
    if penalty.size:
        before[0] = 0.0
        np.cumsum(penalty[:-1], out=before[1:])
    return abs_llrs + before


def _eligible(ctx: MetricContext):
    start = np.searchsorted(ctx.info_set, ctx.k1, side="right")
    return start, ctx.info_set[start:], np.abs(ctx.decision_llrs[start:])


def metric_score(ctx: MetricContext, k: int) -> float:
    """Score of flipping position ``k``; lower means more likely the first error."""
    start, idx, mags = _eligible(ctx)
    pos = np.searchsorted(idx, k)
    if k <= ctx.k1 or pos >= idx.size or idx[pos] != k:
        raise InvalidParameterError(f"{k} is not an unfrozen index above k1 = {ctx.k1}")
    return float(candidate_scores(mags[:pos + 1], ctx.alpha, ctx.metric)[pos])


@dataclass
class FlipList:
    positions: list
    scores: list
    capacity: int

    def __len__(self):
        return len(self.positions)

    def __iter__(self):
        return iter(self.positions)

    def __getitem__(self, j):
        return self.positions[j]


def candidate_ranking(ctx: MetricContext):
    """All eligible positions sorted by ascending score (ties: smaller index)."""
    _, idx, mags = _eligible(ctx)
    scores = candidate_scores(mags, ctx.alpha, ctx.metric)
    order = np.argsort(scores, kind="stable")
    return idx[order], scores[order]


def flip_determine(ctx: MetricContext, T: int) -> FlipList:
    """The ``T`` least reliable decisions after ``ctx.k1`` (fewer if not enough exist)."""
    if T < 0:
        raise InvalidParameterError(f"list capacity must be non-negative, got {T}")
    idx, scores = candidate_ranking(ctx)
    return FlipList([int(i) for i in idx[:T]], [float(s) for s in scores[:T]], T)


@dataclass
class FlipOutcome:
    """Final SC pass plus bookkeeping.

    ``resolved_order`` is 0, 1 or 2 for the flip order of the pass that
    satisfied the CRC, ``None`` when every attempt failed.
    """

    outcome: DecodeOutcome
    resolved_order: int | None
    attempts_used: int
    initial: DecodeOutcome
    first_flips: FlipList | None = None
    second_flips: list = field(default_factory=list)

    @property
    def u_hat(self) -> np.ndarray:
        return self.outcome.u_hat

    @property
    def failed(self) -> bool:
        return self.resolved_order is None


def _first_list(spec, initial, cfg):
    ctx = MetricContext(initial.decision_llrs, spec.info_set, -1, cfg.alpha1, cfg.metric)
    return flip_determine(ctx, cfg.t1)


def _finish(out, order, attempts, initial, first=None, second=None):
    out.attempts_used = attempts
    return FlipOutcome(out, order, attempts, initial, first, second or [])


def scflip1(channel_llrs, spec: CodeSpec, crc: CrcSpec, cfg: FlipConfig, *,
            ties=None, workspace: DecoderWorkspace | None = None) -> FlipOutcome:
    """SC followed by up to ``cfg.t1`` single-flip attempts until the CRC passes."""
    return scflip2(channel_llrs, spec, crc, FlipConfig(cfg.t1, 0, 0, cfg.alpha1,
                   cfg.alpha2, cfg.metric), ties=ties, workspace=workspace)


def scflip2(channel_llrs, spec: CodeSpec, crc: CrcSpec, cfg: FlipConfig, *,
            ties=None, workspace: DecoderWorkspace | None = None) -> FlipOutcome:
    """SCFlip with nested flips of order up to two.

    Single flips are tried in list order. While trying the first ``cfg.t21``
    of them, each failed trajectory contributes ``cfg.t22`` second-flip
    candidates after its flipped position (metric parameter ``alpha2``).
    The pairs are then tried branch by branch.
    """
    if workspace is None:
        workspace = DecoderWorkspace(spec.N)
    out = sc_decode(channel_llrs, spec, (), crc=crc, ties=ties, workspace=workspace)
    initial = out
    attempts = 1
    if out.crc_pass:
        return _finish(out, 0, attempts, initial)
    first = _first_list(spec, initial, cfg)
    branches = []
    for j, k1 in enumerate(first):
        out = sc_decode(channel_llrs, spec, (k1,), crc=crc, ties=ties, workspace=workspace)
        attempts += 1
        if out.crc_pass:
            return _finish(out, 1, attempts, initial, first, branches)
        if j < cfg.t21:
            ctx = MetricContext(out.decision_llrs, spec.info_set, k1, cfg.alpha2, cfg.metric)
            branches.append(flip_determine(ctx, cfg.t22))
    for k1, second in zip(first, branches):
        for k2 in second:
            out = sc_decode(channel_llrs, spec, (k1, k2), crc=crc, ties=ties, workspace=workspace)
            attempts += 1
            if out.crc_pass:
                return _finish(out, 2, attempts, initial, first, branches)
    return _finish(out, None, attempts, initial, first, branches)


def classify_order(histogram: Counter, order: int, cap: int | None = None) -> Counter:
    """Count one frame of the given oracle order; orders >= ``cap`` share a bucket."""
    if cap is not None:
        order = min(order, cap)
    histogram[order] += 1
    return histogram
