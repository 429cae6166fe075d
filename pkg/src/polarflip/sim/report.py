"""SimReport rows, CSV output and small statistics helpers."""

from __future__ import annotations

import csv
import os
from dataclasses import dataclass, field

import numpy as np
from scipy import stats

from .config import SimConfig
from .engine import PointStats

CSV_COLUMNS = ["snr_db", "decoder", "metric", "t1", "t21", "t22", "alpha1", "alpha2",
               "frames", "frame_errors", "fer", "fer_ci_lo", "fer_ci_hi",
               "d0", "d1", "d2", "d3", "d4", "d5plus", "t_ave", "nc_ave", "seed"]


def clopper_pearson(k: int, n: int, level: float = 0.95) -> tuple:
    """Exact binomial confidence interval for ``k`` successes in ``n`` trials."""
    if n == 0:
        return (0.0, 1.0)
    a = (1.0 - level) / 2.0
    lo = 0.0 if k == 0 else float(stats.beta.ppf(a, k, n - k + 1))
    hi = 1.0 if k == n else float(stats.beta.ppf(1.0 - a, k + 1, n - k))
    return lo, hi


def order_buckets(hist) -> list:
    """Counts for orders 0..4 and 5+."""
    out = [hist.get(w, 0) for w in range(5)]
    out.append(sum(c for w, c in hist.items() if w >= 5))
    return out


@dataclass
class PointReport:
    snr_db: float
    stats: PointStats
    elapsed_s: float = 0.0

    @property
    def fer_ci(self) -> tuple:
        return clopper_pearson(self.stats.errors, self.stats.frames)

    @property
    def throughput(self) -> float:
        """Frames per wall-clock second."""
        return self.stats.frames / self.elapsed_s if self.elapsed_s > 0 else float("nan")

    def fer_oa(self, omega: int) -> float:
        return self.stats.oa_errors(omega) / self.stats.frames

    def row(self, config: SimConfig) -> dict:
        s = self.stats
        lo, hi = self.fer_ci
        fl = config.flip
        flips = config.decoder.startswith("scflip")
        row = {
            "snr_db": repr(self.snr_db), "decoder": config.decoder, "metric": fl.metric,
            "t1": fl.t1, "t21": fl.t21, "t22": fl.t22,
            "alpha1": repr(fl.alpha1), "alpha2": repr(fl.alpha2),
            "frames": s.frames, "frame_errors": s.errors, "fer": repr(s.fer),
            "fer_ci_lo": repr(lo), "fer_ci_hi": repr(hi),
            "t_ave": repr(s.t_ave) if flips else "",
            "nc_ave": repr(s.nc_ave) if flips or config.decoder == "sc" else "",
            "seed": config.seed,
        }
        tracked = sum(s.order_hist.values()) == s.frames and s.frames > 0
        for name, count in zip(CSV_COLUMNS[13:19], order_buckets(s.order_hist)):
            row[name] = count if tracked else ""
        return row


@dataclass
class SimReport:
    config: SimConfig
    points: list = field(default_factory=list)

    def __iter__(self):
        return iter(self.points)

    def __getitem__(self, j) -> PointReport:
        return self.points[j]

    def rows(self) -> list:
        return [p.row(self.config) for p in self.points]

    def point(self, snr_db: float) -> PointReport:
        for p in self.points:
            if abs(p.snr_db - snr_db) < 1e-9:
                return p
        raise KeyError(snr_db)


class CsvSink:
    """Appends one row per finished SNR point, flushing each time."""

    def __init__(self, path):
        self.path = path
        if path is None:
            return
        new = not os.path.exists(path) or os.path.getsize(path) == 0
        # open now so an unwritable path fails before any simulation
        self._fh = open(path, "a", newline="")
        self._writer = csv.DictWriter(self._fh, fieldnames=CSV_COLUMNS)
        if new:
            self._writer.writeheader()
            self._fh.flush()

    def write(self, row: dict):
        if self.path is None:
            return
        self._writer.writerow(row)
        self._fh.flush()
        os.fsync(self._fh.fileno())

    def close(self):
        if self.path is not None:
            self._fh.close()


def read_csv(path) -> list:
    with open(path, newline="") as fh:
        return list(csv.DictReader(fh))


def snr_at_fer(snrs, fers, target: float) -> float:
    """SNR where a decreasing FER curve crosses ``target``, interpolating log10(FER).

    Returns NaN when the curve does not bracket the target.
    """
    snrs = np.asarray(snrs, dtype=float)
    fers = np.asarray(fers, dtype=float)
    for j in range(len(snrs) - 1):
        f0, f1 = fers[j], fers[j + 1]
        if f0 >= target >= f1 and f0 > 0 and f1 > 0:
            if f0 == f1:
                return float(snrs[j])
            t = (np.log10(f0) - np.log10(target)) / (np.log10(f0) - np.log10(f1))
            return float(snrs[j] + t * (snrs[j + 1] - snrs[j]))
    return float("nan")
