"""Command-line front end.

Subcommands reproduce the reference tables (``table1``..``table3``), emit
curve and scan data for external plotting, and run the verification suite.
CSV numeric fields are rendered with %.17g; file outputs are written
atomically and get a JSON run-manifest side file.  Exit codes: 0 success,
1 computation failure (failed rows carry a marker), 2 usage error.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import re
import sys
import tempfile
from concurrent.futures import ThreadPoolExecutor
from datetime import datetime, timezone
from typing import Callable, Optional, Sequence

import numpy as np

from . import __version__
from .entropies import EntropyCriterion
from .errors import CstreError
from .separability import (
    MAX_BISECT_ITER,
    X_TOL,
    asymptotic_threshold,
    criterion_value,
    find_threshold,
    trace_curve,
)
from .states import DEFAULT_DIMENSION_CAP, WernerPopescuParams, sandwich_spectrum

SETTINGS_DEFAULTS = {
    "dimension_cap": DEFAULT_DIMENSION_CAP,
    "x_tol": X_TOL,
    "max_iter": MAX_BISECT_ITER,
    "jobs": 1,
}

_CONFIG_TYPES = {
    "dimension_cap": int,
    "x_tol": float,
    "max_iter": int,
    "jobs": int,
}


def load_config(path: str) -> dict:
    """Parse a key = value config file (comments with '#', blank lines ok)."""
    settings: dict = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ValueError("%s:%d: expected key = value, got %r" % (path, lineno, raw.strip()))
            key, _, value = line.partition("=")
            key = key.strip()
            if key not in _CONFIG_TYPES:
                raise ValueError(
                    "%s:%d: unknown key %r (known: %s)"
                    % (path, lineno, key, ", ".join(sorted(_CONFIG_TYPES)))
                )
            try:
                settings[key] = _CONFIG_TYPES[key](value.strip())
            except ValueError:
                raise ValueError(
                    "%s:%d: bad value %r for %s" % (path, lineno, value.strip(), key)
                ) from None
    return settings


def _resolve_settings(args: argparse.Namespace) -> dict:
    settings = dict(SETTINGS_DEFAULTS)
    config = getattr(args, "config", None)
    if config:
        settings.update(load_config(config))
    jobs = getattr(args, "jobs", None)
    if jobs is not None:
        settings["jobs"] = jobs
    if settings["jobs"] < 1 or settings["max_iter"] < 1 or settings["dimension_cap"] < 1:
        raise ValueError("jobs, max_iter and dimension_cap must be >= 1")
    if not settings["x_tol"] > 0:
        raise ValueError("x_tol must be positive")
    return settings


def _int_list(text: str) -> list[int]:
    try:
        values = [int(part) for part in text.split(",") if part.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError("expected a comma-separated integer list, got %r" % text)
    if not values:
        raise argparse.ArgumentTypeError("empty list")
    return values


def _render(value) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return "%.17g" % value
    return str(value)


def _kebab(name: str) -> str:
    return re.sub(r"(?<!^)(?=[A-Z])", "-", name).lower()


def _marker(exc: Exception) -> str:
    # CamelCase exception name -> kebab-case row marker
    return _kebab(type(exc).__name__)


def _atomic_write(path: str, writer: Callable) -> None:
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp-", suffix="~")
    try:
        with os.fdopen(fd, "w", newline="", encoding="utf-8") as fh:
            writer(fh)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _emit(
    out: Optional[str],
    header: Sequence[str],
    rows: Sequence[Sequence],
    command: str,
    parameters: dict,
) -> None:
    rendered = [[_render(cell) for cell in row] for row in rows]

    def write_csv(fh) -> None:
        writer = csv.writer(fh)
        writer.writerow(header)
        writer.writerows(rendered)

    if out is None:
        write_csv(sys.stdout)
        return
    _atomic_write(out, write_csv)
    manifest = {
        "command": command,
        "parameters": parameters,
        "tool-version": "cstre %s" % __version__,
        "timestamp": datetime.now(timezone.utc).isoformat(timespec="seconds"),
        "output-files": [out],
    }
    _atomic_write(out + ".manifest.json", lambda fh: json.dump(manifest, fh, indent=2))


def _pmap(fn: Callable, items: Sequence, jobs: int) -> list:
    items = list(items)
    if jobs <= 1 or len(items) <= 1:
        return [fn(item) for item in items]
    with ThreadPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(fn, items))  # map preserves input order


def cmd_table1(args: argparse.Namespace, settings: dict) -> int:
    params_q, params_x = args.q, args.x

    def row(cell: tuple[int, int]):
        d, N = cell
        sw = sandwich_spectrum(WernerPopescuParams(d, N, params_x), params_q)
        gamma1 = sw.gamma1 if sw.gamma1_mult > 0 else None  # blank cell for N = 2
        return [d, N, gamma1, sw.gamma1_mult, sw.gamma2, sw.gamma2_mult, sw.gamma3, sw.gamma3_mult]

    cells = [(d, N) for d in args.d for N in args.N]
    rows = _pmap(row, cells, settings["jobs"])
    _emit(
        args.out,
        ["d", "N", "gamma1", "mult1", "gamma2", "mult2", "gamma3", "mult3"],
        rows,
        "table1",
        {"d": args.d, "N": args.N, "q": params_q, "x": params_x, **settings},
    )
    return 0


def cmd_table2(args: argparse.Namespace, settings: dict) -> int:
    rows = []
    for d in args.d:
        for N in args.N:
            x = asymptotic_threshold(d, N, EntropyCriterion.CSTRE_VS_B)
            rows.append([d, N, x, 1.0 / (1.0 + d ** (N - 1))])
    _emit(
        args.out,
        ["d", "N", "x_threshold", "formula"],
        rows,
        "table2",
        {"d": args.d, "N": args.N, **settings},
    )
    return 0


def cmd_table3(args: argparse.Namespace, settings: dict) -> int:
    failed = False

    def solve(cell: tuple[int, int, EntropyCriterion]):
        d, N, crit = cell
        try:
            return find_threshold(
                d,
                N,
                crit,
                args.q,
                x_tol=settings["x_tol"],
                max_iter=settings["max_iter"],
                cap=settings["dimension_cap"],
            ).x_star
        except CstreError as exc:
            return _marker(exc)

    pairs = [(d, N) for d in args.d for N in args.N]
    cells = [
        (d, N, crit)
        for d, N in pairs
        for crit in (EntropyCriterion.CSTRE_VS_B, EntropyCriterion.AR_A_GIVEN_B)
    ]
    solved = _pmap(solve, cells, settings["jobs"])
    rows = []
    for i, (d, N) in enumerate(pairs):
        x_cstre, x_ar = solved[2 * i], solved[2 * i + 1]
        failed = failed or isinstance(x_cstre, str) or isinstance(x_ar, str)
        rows.append([d, N, x_cstre, x_ar])
    _emit(
        args.out,
        ["d", "N", "x_cstre", "x_ar"],
        rows,
        "table3",
        {"d": args.d, "N": args.N, "q": args.q, **settings},
    )
    return 1 if failed else 0


def cmd_curve(args: argparse.Namespace, settings: dict) -> int:
    if not args.q_min > 0:
        raise ValueError("q-min must be positive")
    if args.q_max < args.q_min:
        raise ValueError("q-max must be >= q-min")
    if args.points < 2:
        raise ValueError("need at least 2 points")
    if args.scale == "log":
        grid = np.geomspace(args.q_min, args.q_max, args.points)
    else:
        grid = np.linspace(args.q_min, args.q_max, args.points)
    criterion = EntropyCriterion.from_cli_name(args.criterion)
    points = trace_curve(
        args.d,
        args.N,
        criterion,
        [float(q) for q in grid],
        x_tol=settings["x_tol"],
        max_iter=settings["max_iter"],
        cap=settings["dimension_cap"],
    )
    rows = [[p.q, p.x_star if p.error is None else _kebab(p.error)] for p in points]
    _emit(
        args.out,
        ["q", "x_star"],
        rows,
        "curve",
        {
            "d": args.d,
            "N": args.N,
            "criterion": args.criterion,
            "q_min": args.q_min,
            "q_max": args.q_max,
            "points": args.points,
            "scale": args.scale,
            **settings,
        },
    )
    return 1 if any(p.error is not None for p in points) else 0


def cmd_scan(args: argparse.Namespace, settings: dict) -> int:
    if not 0.0 <= args.x_min <= args.x_max <= 1.0:
        raise ValueError("need 0 <= x-min <= x-max <= 1")
    if args.points < 2:
        raise ValueError("need at least 2 points")
    criterion = EntropyCriterion.from_cli_name(args.criterion)
    xs = np.linspace(args.x_min, args.x_max, args.points)

    def value(x: float):
        try:
            return criterion_value(
                args.d, args.N, criterion, args.q, float(x), cap=settings["dimension_cap"]
            )
        except CstreError as exc:
            return _marker(exc)

    values = _pmap(value, xs, settings["jobs"])
    rows = [[float(x), v] for x, v in zip(xs, values)]
    _emit(
        args.out,
        ["x", "value"],
        rows,
        "scan",
        {
            "d": args.d,
            "N": args.N,
            "criterion": args.criterion,
            "q": args.q,
            "x_min": args.x_min,
            "x_max": args.x_max,
            "points": args.points,
            **settings,
        },
    )
    return 1 if any(isinstance(v, str) for v in values) else 0


def cmd_verify(args: argparse.Namespace, settings: dict) -> int:
    from . import verification

    results = verification.run_all(verbose=True)
    return 0 if all(r.passed for r in results) else 1


def _add_common(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--out", metavar="PATH", help="CSV output path (default: stdout)")
    sub.add_argument("--config", metavar="PATH", help="key = value settings file")
    sub.add_argument("--jobs", type=int, metavar="N", help="parallel workers (default 1)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cstre",
        description="Entropic separability thresholds for noisy GHZ states of N qudits.",
    )
    parser.add_argument("--version", action="version", version="cstre %s" % __version__)
    subs = parser.add_subparsers(dest="command", required=True)

    t1 = subs.add_parser("table1", help="sandwich eigenvalues per (d, N)")
    t1.add_argument("--d", type=_int_list, default=[3, 4, 5, 6], help="comma list of d")
    t1.add_argument("--N", type=_int_list, default=[2, 3, 4, 5], help="comma list of N")
    t1.add_argument("--q", type=float, default=2.0)
    t1.add_argument("--x", type=float, default=0.3)
    _add_common(t1)
    t1.set_defaults(handler=cmd_table1)

    t2 = subs.add_parser("table2", help="q -> infinity thresholds vs formula")
    t2.add_argument("--d", type=_int_list, default=[3, 4, 5, 6])
    t2.add_argument("--N", type=_int_list, default=[2, 3, 4, 5])
    _add_common(t2)
    t2.set_defaults(handler=cmd_table2)

    t3 = subs.add_parser("table3", help="fixed-q crossings for both criteria")
    t3.add_argument("--d", type=_int_list, default=[3, 4, 5])
    t3.add_argument("--N", type=_int_list, default=[3, 4, 5])
    t3.add_argument("--q", type=float, default=2.0)
    _add_common(t3)
    t3.set_defaults(handler=cmd_table3)

    cv = subs.add_parser("curve", help="x*(q) samples for one (d, N)")
    cv.add_argument("--d", type=int, required=True)
    cv.add_argument("--N", type=int, required=True)
    cv.add_argument("--criterion", choices=("cstre", "ar", "vn", "ppt"), required=True)
    cv.add_argument("--q-min", type=float, default=1.0)
    cv.add_argument("--q-max", type=float, default=10.0)
    cv.add_argument("--points", type=int, default=50)
    cv.add_argument("--scale", choices=("linear", "log"), default="linear")
    _add_common(cv)
    cv.set_defaults(handler=cmd_curve)

    sc = subs.add_parser("scan", help="criterion value over an x range")
    sc.add_argument("--d", type=int, required=True)
    sc.add_argument("--N", type=int, required=True)
    sc.add_argument("--criterion", choices=("cstre", "ar", "vn", "ppt"), required=True)
    sc.add_argument("--q", type=float, default=2.0)
    sc.add_argument("--x-min", type=float, default=0.0)
    sc.add_argument("--x-max", type=float, default=0.99)
    sc.add_argument("--points", type=int, default=100)
    _add_common(sc)
    sc.set_defaults(handler=cmd_scan)

    vf = subs.add_parser("verify", help="run the verification suite")
    vf.set_defaults(handler=cmd_verify)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        settings = _resolve_settings(args)
        return args.handler(args, settings)
    except CstreError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 1
    except (ValueError, OSError) as exc:
        print("usage error: %s" % exc, file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
