"""Command-line front end: ``point``, ``sweep``, ``reproduce``, ``validate``.

Exit codes: 0 success, 1 usage/configuration error, 2 unstable point
(``point`` only).
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from dataclasses import asdict
from pathlib import Path

from . import __version__
from .config import load_config
from .entanglement import MEASURE_KEYS
from .errors import CavMagnonError, ConfigError
from .model import TWO_PI
from .output import csv_text, write_plot_script, write_records
from .presets import FIGURE_IDS, get_preset
from .sweep import DEFAULT_COUNT_1D, DEFAULT_COUNT_2D, evaluate_point, solve_point, sweep1d, sweep2d

EXIT_OK, EXIT_CONFIG, EXIT_UNSTABLE = 0, 1, 2

log = logging.getLogger("cavmagnon")


def _common(p):
    p.add_argument("--workers", type=int, default=1, help="parallel worker processes")
    p.add_argument("--out", help="output file (point/sweep) or directory (reproduce)")
    p.add_argument("--format", choices=("csv", "json"), help="output format")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="cavmagnon",
        description="Steady-state entanglement of linearised cavity-magnon optomechanics.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    for name, help_ in (
        ("point", "evaluate a single operating point"),
        ("sweep", "evaluate a 1-D or 2-D grid"),
        ("validate", "check a configuration without computing"),
    ):
        p = sub.add_parser(name, help=help_)
        p.add_argument("config", help="INI-style or JSON configuration file")
        p.add_argument("--dump-config", action="store_true",
                       help="print the fully resolved configuration and exit")
        _common(p)

    p = sub.add_parser("reproduce", help="regenerate the data behind one figure")
    p.add_argument("fig_id", metavar="FIG_ID", help=", ".join(FIGURE_IDS))
    p.add_argument("--count1d", type=int, default=DEFAULT_COUNT_1D)
    p.add_argument("--count2d", type=int, default=DEFAULT_COUNT_2D)
    p.add_argument("--plot", action="store_true", help="also write plot scripts")
    _common(p)
    return parser


def _emit(text, out):
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def cmd_point(args, cfg):
    if cfg.axes:
        print("error: configuration has a sweep block; use the 'sweep' command", file=sys.stderr)
        return EXIT_CONFIG
    setup = cfg.setup()
    sol = solve_point(setup)
    rec = evaluate_point(setup)
    fmt_name = args.format or cfg.output.get("format", "json")
    out = args.out or cfg.output.get("path")
    if fmt_name == "csv":
        _emit(csv_text([rec], []), out)
    else:
        eff = asdict(sol.effective)
        doc = {
            "stable": rec.stable,
            "max_real_part": rec.max_real_part,
            "eigenvalues": [[w.real, w.imag] for w in sol.stability.eigenvalues],
            "effective_params_rad_s": eff,
            "effective_params_Hz": {
                k: (v / TWO_PI if isinstance(v, float) and not k.startswith("nbar") else v)
                for k, v in eff.items()
            },
            "measures": {k: rec.values[k] for k in MEASURE_KEYS},
        }
        if rec.flags:
            doc["flags"] = rec.flags
        if rec.error:
            doc["error"] = rec.error
        _emit(json.dumps(doc, indent=2, default=str) + "\n", out)
    return EXIT_OK if rec.stable else EXIT_UNSTABLE


def cmd_sweep(args, cfg):
    if not cfg.axes:
        print("error: no sweep axes configured; use the 'point' command", file=sys.stderr)
        return EXIT_CONFIG
    base = cfg.setup()
    axes = cfg.resolved_axes(base)
    if len(axes) == 1:
        records = sweep1d(base, axes[0], workers=args.workers)
    else:
        records = sweep2d(base, axes[0], axes[1], workers=args.workers)
    fmt_name = args.format or cfg.output.get("format", "csv")
    out = args.out or cfg.output.get("path") or f"sweep.{fmt_name}"
    try:
        path = write_records(out, records, axes, fmt_name)
    except OSError as exc:
        print(f"error: cannot write {out}: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    if cfg.output.get("emit_plot_script") and fmt_name == "csv":
        write_plot_script(path, len(axes), MEASURE_KEYS)
    log.info("wrote %s", path)
    return EXIT_OK


def cmd_reproduce(args):
    try:
        preset = get_preset(args.fig_id, args.count1d, args.count2d)
    except KeyError as exc:
        print(f"error: {exc.args[0]}", file=sys.stderr)
        return EXIT_CONFIG
    out_dir = Path(args.out or f"reproduce_{preset.fig_id}")
    fmt_name = args.format or "csv"
    try:
        out_dir.mkdir(parents=True, exist_ok=True)
    except OSError as exc:
        print(f"error: cannot create {out_dir}: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    manifest = {
        "figure": preset.fig_id,
        "summary": preset.summary,
        "observables": list(preset.observables),
        "runs": [],
    }
    for run in preset.runs:
        if len(run.axes) == 1:
            records = sweep1d(run.base, run.axes[0], workers=args.workers)
        else:
            records = sweep2d(run.base, run.axes[0], run.axes[1], workers=args.workers)
        path = write_records(out_dir / f"{run.name}.{fmt_name}", records, run.axes, fmt_name)
        if args.plot and fmt_name == "csv":
            write_plot_script(path, len(run.axes), preset.observables)
        manifest["runs"].append({
            "file": path.name,
            "settings": run.settings,
            "axes": [
                {
                    "param": ax.param.value,
                    "start_normalized": float(ax.normalized[0]),
                    "stop_normalized": float(ax.normalized[-1]),
                    "count": int(ax.count),
                    "unit": ax.label,
                    "start_raw": ax.start,
                    "stop_raw": ax.stop,
                }
                for ax in run.axes
            ],
        })
        print(f"{path}", file=sys.stderr)
    (out_dir / "manifest.json").write_text(json.dumps(manifest, indent=2) + "\n")
    return EXIT_OK


def main(argv=None):
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s: %(message)s")
    args = build_parser().parse_args(argv)
    try:
        if args.command == "reproduce":
            return cmd_reproduce(args)
        cfg = load_config(args.config)
        if args.dump_config:
            sys.stdout.write(cfg.dump())
            return EXIT_OK
        if args.command == "validate":
            print("ok")
            return EXIT_OK
        if args.command == "point":
            return cmd_point(args, cfg)
        return cmd_sweep(args, cfg)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except CavMagnonError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())

