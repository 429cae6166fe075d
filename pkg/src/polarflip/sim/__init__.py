"""Seeded Monte-Carlo campaigns for the SC / SCFlip decoders."""

from .config import SimConfig, parse_float_list
from .engine import OrderPool, PointStats
from .experiments import (AlphaSweep, LossTable, collect_order_pool, loss_of_order1,
                          measure_complexity, pool_ranks, run_fer, run_loss_of_order1, sweep_alpha)
from .report import PointReport, SimReport, clopper_pearson, snr_at_fer
