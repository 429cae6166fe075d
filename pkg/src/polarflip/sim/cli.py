"""
Command line front end.

    polarflip simulate --decoder scflip2 --snr 1.5:3.0:0.25 --out fer.csv
    polarflip loss1 --snr 2.5 --metric malpha --alpha1 0.3 --t1-grid 1,5,10,20,40
    polarflip sweep-alpha --snr 2.5 --order 1 --alpha-grid 0.1:1.0:0.05
    polarflip complexity --decoder scflip1 --snr 2.0,2.5,3.0

Every flag may also come from ``--config FILE`` (``key=value`` lines);
flags given on the command line win.
"""

from __future__ import annotations

import argparse
import csv
import logging
import sys

from ..crc import CRC16_POLY
from ..exceptions import InvalidParameterError
from ..flip import FlipConfig
from .config import DECODERS, SimConfig, parse_float_list, read_config_file
from .report import CSV_COLUMNS
from .experiments import measure_complexity, run_fer, run_loss_of_order1, sweep_alpha

# flag name -> (converter, default)
_COMMON = {
    "decoder": (str, "scflip1"),
    "n": (int, 10),
    "k": (int, 512),
    "r": (int, 16),
    "crc": (lambda s: int(str(s), 16), CRC16_POLY),
    "snr": (parse_float_list, (2.5,)),
    "t1": (int, 20),
    "t21": (int, 0),
    "t22": (int, 0),
    "alpha1": (float, 0.3),
    "alpha2": (float, 0.5),
    "metric": (str, "malpha"),
    "seed": (lambda s: int(str(s), 0), 0x5EED),
    "min_errors": (int, 200),
    "max_frames": (int, 10_000_000),
    "workers": (int, 1),
    "chunk_size": (int, 1000),
    "out": (str, None),
}
_EXTRA = {
    "loss1": {"t1_grid": (lambda s: [int(v) for v in str(s).split(",")], [1, 2, 5, 10, 20, 40, 80]),
              "min_order1": (int, 10_000)},
    "sweep-alpha": {"alpha_grid": (parse_float_list, None), "order": (int, 1),
                    "list_size": (int, None), "min_frames": (int, 10_000)},
    "complexity": {},
    "simulate": {},
}


def _add_flags(p: argparse.ArgumentParser, specs: dict):
    for name in specs:
        flag = "--" + name.replace("_", "-")
        kwargs = {"dest": name, "default": None}
        if name == "decoder":
            kwargs["choices"] = DECODERS
        if name == "metric":
            kwargs["choices"] = ("llr", "malpha")
        p.add_argument(flag, **kwargs)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="polarflip", description=__doc__,
                                     formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = parser.add_subparsers(dest="command", required=True)
    for cmd in ("simulate", "loss1", "sweep-alpha", "complexity"):
        p = sub.add_parser(cmd)
        p.add_argument("--config", default=None, help="key=value file with default flag values")
        p.add_argument("--no-track-order", action="store_true",
                       help="skip the oracle pass (D(w) columns left empty)")
        p.add_argument("-v", "--verbose", action="store_true")
        _add_flags(p, _COMMON)
        _add_flags(p, _EXTRA[cmd])
    return parser


def resolve(args: argparse.Namespace) -> dict:
    """Merge defaults, config file and command line, converting each value."""
    specs = dict(_COMMON, **_EXTRA[args.command])
    values = {k: default for k, (_, default) in specs.items()}
    if args.config:
        for key, text in read_config_file(args.config).items():
            if key not in specs:
                raise InvalidParameterError(f"unknown config key {key!r}")
            values[key] = specs[key][0](text)
    for key, (conv, _) in specs.items():
        given = getattr(args, key, None)
        if given is not None:
            values[key] = conv(given)
    return values


def make_config(values: dict, track_order: bool = True) -> SimConfig:
    flip = FlipConfig(values["t1"], values["t21"], values["t22"], values["alpha1"],
                      values["alpha2"], values["metric"])
    return SimConfig(n=values["n"], K=values["k"], r=values["r"], crc_poly=values["crc"],
                     snrs=values["snr"], decoder=values["decoder"], flip=flip,
                     min_errors=values["min_errors"], max_frames=values["max_frames"],
                     seed=values["seed"], workers=values["workers"], out=values["out"],
                     chunk_size=values["chunk_size"], track_order=track_order)


def _write_table(path, header, rows):
    out = open(path, "w", newline="") if path else sys.stdout
    try:
        w = csv.writer(out)
        w.writerow(header)
        w.writerows(rows)
    finally:
        if path:
            out.close()


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(asctime)s %(message)s")
    try:
        values = resolve(args)
        cmd = args.command
        if cmd == "simulate":
            config = make_config(values, not args.no_track_order)
            report = run_fer(config)
            if config.out is None:
                _write_table(None, CSV_COLUMNS, [[r[c] for c in CSV_COLUMNS] for r in report.rows()])
        elif cmd == "complexity":
            config = make_config(values, not args.no_track_order)
            rows = measure_complexity(config)
            _write_table(None, ["snr_db", "frames", "fer", "fer_sc", "t_ave", "nc_ave", "mean_attempts"],
                         [[r.snr_db, r.frames, r.fer, r.fer_sc, r.t_ave, r.nc_ave, r.mean_attempts]
                          for r in rows])
        elif cmd == "loss1":
            config = make_config(dict(values, out=None))
            table = run_loss_of_order1(config, values["t1_grid"], values["min_order1"])
            _write_table(values["out"], ["t1", "misses", "order1_frames", "frames", "loss_conditional",
                                         "loss_unconditional"],
                         [[t, int(m), table.order1_frames, table.frames, c, u] for t, m, c, u in
                          zip(table.t1_grid, table.misses, table.conditional, table.unconditional)])
        elif cmd == "sweep-alpha":
            config = make_config(dict(values, out=None))
            grid = values["alpha_grid"] or parse_float_list("0.1:1.0:0.05")
            sweep = sweep_alpha(config, grid, values["order"], values["list_size"],
                                min_frames=values["min_frames"])
            _write_table(values["out"], ["alpha", "hit_rate", "mean_rank", "samples", "list_size"],
                         [[a, h, m, sweep.samples, sweep.list_size]
                          for a, h, m in zip(sweep.alphas, sweep.hit_rate, sweep.mean_rank)])
            print(f"# best alpha = {sweep.best_alpha}", file=sys.stderr)
    except InvalidParameterError as exc:
        print(f"polarflip: error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"polarflip: I/O error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
