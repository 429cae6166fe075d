"""Simulation campaign configuration and its flat ``key=value`` file form."""

from __future__ import annotations

from dataclasses import dataclass, field, fields, replace
from os import PathLike

from ..channel import DEFAULT_SEED
from ..crc import CRC16_POLY, CrcSpec
from ..exceptions import InvalidParameterError
from ..flip import FlipConfig

DECODERS = ("sc", "scflip1", "scflip2", "oracle1", "oracle2", "oracle3")


@dataclass(frozen=True)
class SimConfig:
    n: int = 10
    K: int = 512
    r: int = 16
    crc_poly: int = CRC16_POLY
    snrs: tuple = (2.5,)
    decoder: str = "scflip1"
    flip: FlipConfig = field(default_factory=FlipConfig)
    min_errors: int = 200
    max_frames: int = 10_000_000
    seed: int = DEFAULT_SEED
    workers: int = 1
    out: str | None = None
    # frames per work unit; stop rule is checked on chunk boundaries only
    chunk_size: int = 1000
    track_order: bool = True

    def __post_init__(self):
        object.__setattr__(self, "snrs", tuple(float(s) for s in self.snrs))
        if self.decoder not in DECODERS:
            raise InvalidParameterError(f"decoder must be one of {DECODERS}, got {self.decoder!r}")
        if self.min_errors < 1:
            raise InvalidParameterError("min_errors must be >= 1")
        if self.max_frames < self.min_errors:
            raise InvalidParameterError("max_frames must be >= min_errors")
        if self.workers < 1 or self.chunk_size < 1:
            raise InvalidParameterError("workers and chunk_size must be >= 1")
        if not self.snrs:
            raise InvalidParameterError("at least one SNR point is required")
        if self.K + self.r > (1 << self.n):
            raise InvalidParameterError("K + r exceeds the blocklength")
        CrcSpec(self.r, self.crc_poly)

    @property
    def N(self) -> int:
        return 1 << self.n

    @property
    def crc(self) -> CrcSpec:
        return CrcSpec(self.r, self.crc_poly)

    @property
    def oracle_order(self) -> int | None:
        return int(self.decoder[-1]) if self.decoder.startswith("oracle") else None

    def with_(self, **changes) -> "SimConfig":
        flip_keys = {f.name for f in fields(FlipConfig)}
        flip_changes = {k: changes.pop(k) for k in list(changes) if k in flip_keys}
        cfg = replace(self, **changes)
        if flip_changes:
            cfg = replace(cfg, flip=replace(cfg.flip, **flip_changes))
        return cfg


def parse_float_list(text: str) -> tuple:
    """``"1.0,1.5,2.0"`` or an inclusive range ``"1.0:3.0:0.5"``."""
    text = text.strip()
    if ":" in text:
        lo, hi, step = (float(v) for v in text.split(":"))
        if step <= 0:
            raise InvalidParameterError("SNR step must be positive")
        count = int(round((hi - lo) / step)) + 1
        return tuple(round(lo + i * step, 10) for i in range(count))
    return tuple(float(v) for v in text.split(",") if v.strip())


def read_config_file(path: str | PathLike) -> dict:
    """Read ``key=value`` lines; blank lines and ``#`` comments are ignored.

    Keys use the CLI flag names (``min-errors`` and ``min_errors`` both work).
    """
    out = {}
    with open(path) as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise InvalidParameterError(f"{path}:{lineno}: expected key=value")
            key, value = (p.strip() for p in line.split("=", 1))
            out[key.replace("-", "_")] = value
    return out
