"""Command line front end.

Commands: ``sweep``, ``extension``, ``ratio``, ``oracle``, ``inefficiency``.
Settings come from per-command defaults, then an optional JSON ``--config``
file, then explicit flags. Exit codes: 0 ok, 1 usage/config error,
2 I/O error, 3 classical bound violated by the oracle.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, fields, replace

import numpy as np

from . import lg
from .errors import DomainError, ParameterError, ValidationError
from .inefficiency import lg_inefficient
from .macrorealism import FUZZ_ALPHAS, FUZZ_STATES, fuzz
from .svg import line_chart
from .systems import SYSTEMS, SystemFamily, make_protocol

EXIT_OK, EXIT_USAGE, EXIT_IO, EXIT_VIOLATION = 0, 1, 2, 3

SWEEP_COLUMNS = ("theta_over_pi", "alpha", "beta", "system", "C_alpha", "C_tilde",
                 "H_W10", "H_W21", "H_W20", "H_E1")
RATIO_COLUMNS = ("alpha", "eta", "ratio", "C_tilde_times_ten")
AUDIT_COLUMNS = ("alpha", "eta", "C_alpha", "C_eta_closed", "C_eta_direct", "Delta",
                 "marginal_term", "residual")
FIGURE_ALPHAS = (1.0, 1.5, 2.0, 2.5, 3.0)
DEFAULT_ETAS = (0.95, 0.96, 0.97, 0.98, 0.99)


class UsageError(Exception):
    pass


@dataclass(frozen=True)
class SweepConfig:
    system: str = "qubit"
    beta: float = 1.0
    alpha_list: tuple[float, ...] | None = None
    theta_points: int = lg.THETA_POINTS
    theta_over_pi: float = 0.15
    eta_list: tuple[float, ...] = DEFAULT_ETAS
    epsilon: float = lg.EPSILON
    seed: int = 0
    models: int = 10_000
    dims: tuple[int, ...] = (2, 3)
    threads: int | None = None
    out: str | None = None
    svg: str | None = None


CONFIG_KEYS = {f.name for f in fields(SweepConfig)}

COMMAND_DEFAULTS = {
    "sweep": {"alpha_list": FIGURE_ALPHAS},
    "extension": {"alpha_list": tuple(lg.default_alpha_grid())},
    "ratio": {"beta": 5.0, "alpha_list": tuple(np.round(1.0 + 0.01 * np.arange(1, 301), 2))},
    "oracle": {"alpha_list": FUZZ_ALPHAS},
    "inefficiency": {"beta": 5.0, "alpha_list": (1.0, 1.5, 2.0, 2.5, 3.0),
                     "eta_list": (0.9, 0.95, 0.97, 0.99, 1.0)},
}


def fmt(x) -> str:
    if x is None:
        return ""
    if isinstance(x, str):
        return x
    return format(float(x), ".17g")


def parse_list(text: str, cast=float) -> tuple:
    try:
        return tuple(cast(v) for v in text.split(",") if v.strip())
    except ValueError as exc:
        raise UsageError(f"bad list {text!r}: {exc}") from None


def parse_range(text: str) -> tuple[float, ...]:
    """``lo:hi:step`` inclusive of ``hi``, rounded to the step's decimals."""
    try:
        lo, hi, step = (float(v) for v in text.split(":"))
    except ValueError:
        raise UsageError(f"--alpha-range expects lo:hi:step, got {text!r}") from None
    if step <= 0 or hi < lo:
        raise UsageError(f"invalid range {text!r}")
    n = int(math.floor((hi - lo) / step + 1e-9)) + 1
    decimals = max(0, -int(math.floor(math.log10(step))) + 2)
    return tuple(np.round(lo + step * np.arange(n), decimals))


def load_config(path: str) -> dict:
    try:
        with open(path) as fh:
            data = json.load(fh)
    except OSError as exc:
        raise OSError(f"cannot read config {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise UsageError(f"config {path} is not valid JSON: {exc}") from None
    if not isinstance(data, dict):
        raise UsageError(f"config {path} must hold a JSON object")
    unknown = sorted(set(data) - CONFIG_KEYS)
    if unknown:
        raise UsageError(f"unknown config keys: {', '.join(unknown)}")
    for key in ("alpha_list", "eta_list", "dims"):
        if key in data and data[key] is not None:
            data[key] = tuple(data[key])
    return data


def build_config(args: argparse.Namespace) -> SweepConfig:
    values = dict(COMMAND_DEFAULTS.get(args.command, {}))
    if args.config:
        values.update(load_config(args.config))
    flags = {
        "system": args.system, "beta": args.beta, "theta_points": args.theta_points,
        "theta_over_pi": args.theta_over_pi, "epsilon": args.epsilon, "seed": args.seed,
        "models": args.models, "threads": args.threads, "out": args.out, "svg": args.svg,
    }
    if args.alpha is not None and args.alpha_range is not None:
        raise UsageError("give --alpha or --alpha-range, not both")
    if args.alpha is not None:
        flags["alpha_list"] = parse_list(args.alpha)
    if args.alpha_range is not None:
        flags["alpha_list"] = parse_range(args.alpha_range)
    if args.eta is not None:
        flags["eta_list"] = parse_list(args.eta)
    if args.dims is not None:
        flags["dims"] = parse_list(args.dims, int)
    values.update({k: v for k, v in flags.items() if v is not None})
    try:
        cfg = SweepConfig(**values)
    except TypeError as exc:
        raise UsageError(str(exc)) from None
    validate(cfg, args.command)
    return cfg


def validate(cfg: SweepConfig, command: str) -> None:
    if cfg.system not in SYSTEMS:
        raise UsageError(f"--system must be one of {', '.join(SYSTEMS)}")
    if cfg.theta_points < 2:
        raise UsageError("--theta-points must be at least 2")
    if not math.isfinite(cfg.beta) or cfg.beta < 0:
        raise UsageError("--beta must be finite and non-negative")
    if cfg.epsilon < 0:
        raise UsageError("--epsilon must be non-negative")
    if not cfg.alpha_list:
        raise UsageError("empty alpha list")
    if any(a < 1.0 for a in cfg.alpha_list):
        raise UsageError("Leggett-Garg commands need every alpha >= 1")
    if any(not 0.0 <= e <= 1.0 for e in cfg.eta_list):
        raise UsageError("efficiencies must lie in [0, 1]")
    if cfg.models < 0:
        raise UsageError("--models must be non-negative")
    if cfg.threads is not None and cfg.threads < 1:
        raise UsageError("--threads must be positive")


def threads_of(cfg: SweepConfig) -> int:
    return cfg.threads or os.cpu_count() or 1


def write_text(path: str | None, text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
        return
    try:
        with open(path, "w", newline="") as fh:
            fh.write(text)
    except OSError as exc:
        raise OSError(f"cannot write {path}: {exc.strerror}") from None


def csv_text(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([fmt(v) for v in row])
    return buf.getvalue()


def json_text(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=False) + "\n"


def cmd_sweep(cfg: SweepConfig) -> int:
    thetas = lg.theta_grid(cfg.theta_points)

    def rows_at(theta):
        spec = make_protocol(SystemFamily(cfg.system, float(theta), cfg.beta))
        out = []
        for a in cfg.alpha_list:
            r = lg.lg_report(spec, a)
            out.append((theta / math.pi, a, cfg.beta, cfg.system, r.C_alpha, r.C_tilde,
                        r.H_W10, r.H_W21, r.H_W20, r.H_E1))
        return out

    with ThreadPoolExecutor(max_workers=threads_of(cfg)) as pool:
        blocks = list(pool.map(rows_at, thetas))
    rows = [row for block in blocks for row in block]
    write_text(cfg.out, csv_text(SWEEP_COLUMNS, rows))
    if cfg.svg:
        series = []
        for j, a in enumerate(cfg.alpha_list):
            series.append((f"alpha={a:g}", [b[j][0] for b in blocks], [b[j][5] for b in blocks]))
        write_text(cfg.svg, line_chart(
            series, title=f"{cfg.system}, beta={cfg.beta:g}", xlabel="theta/pi",
            ylabel="rescaled C_alpha"))
    return EXIT_OK


def cmd_extension(cfg: SweepConfig) -> int:
    alphas = np.asarray(cfg.alpha_list, dtype=float)
    base = {"system": cfg.system, "beta": cfg.beta,
            "alpha_range": [float(alphas.min()), float(alphas.max()), len(alphas)],
            "epsilon": cfg.epsilon}
    try:
        ext = lg.domain_extension(cfg.system, cfg.beta, alphas, cfg.theta_points,
                                  cfg.epsilon, threads=threads_of(cfg))
    except (DomainError, ParameterError) as exc:
        write_text(cfg.out, json_text({**base, "error": str(exc)}))
        return EXIT_USAGE
    write_text(cfg.out, json_text({
        **base,
        "domain_alpha1_measure": ext.measure_alpha1,
        "domain_union_measure": ext.measure_union,
        "extension_percent": ext.percent,
    }))
    return EXIT_OK


def ratio_rows(cfg: SweepConfig) -> list[tuple]:
    theta = cfg.theta_over_pi * math.pi
    spec = make_protocol(SystemFamily(cfg.system, theta, cfg.beta))
    rows = []
    for a in cfg.alpha_list:
        rep = lg.lg_report(spec, a)
        if rep.C_alpha <= cfg.epsilon:
            raise DomainError(f"C_alpha = {rep.C_alpha:.3g} <= epsilon at alpha={a:g}, "
                              f"theta/pi={cfg.theta_over_pi:g}: no violation to dilute")
        for e in cfg.eta_list:
            r = lg_inefficient(spec, a, e, cfg.epsilon)
            rows.append((a, e, r.ratio, 10.0 * rep.C_tilde))
    return rows


def cmd_ratio(cfg: SweepConfig) -> int:
    try:
        rows = ratio_rows(cfg)
    except DomainError as exc:
        write_text(cfg.out, json_text({"system": cfg.system, "beta": cfg.beta,
                                       "theta_over_pi": cfg.theta_over_pi, "error": str(exc)}))
        return EXIT_USAGE
    write_text(cfg.out, csv_text(RATIO_COLUMNS, rows))
    if cfg.svg:
        series = []
        for e in cfg.eta_list:
            pts = [(r[0], r[2]) for r in rows if r[1] == e]
            series.append((f"eta={e:g}", [p[0] for p in pts], [p[1] for p in pts]))
        first = cfg.eta_list[0]
        pts = [(r[0], r[3]) for r in rows if r[1] == first]
        series.append(("10 x C~", [p[0] for p in pts], [p[1] for p in pts]))
        write_text(cfg.svg, line_chart(
            series, title=f"{cfg.system}, beta={cfg.beta:g}, theta/pi={cfg.theta_over_pi:g}",
            xlabel="alpha", ylabel="ratio"))
    return EXIT_OK


def cmd_oracle(cfg: SweepConfig) -> int:
    s = fuzz(cfg.models, cfg.seed, dims=cfg.dims, states=FUZZ_STATES, alphas=cfg.alpha_list)
    write_text(cfg.out, json_text({
        "models": s.models, "dims": list(s.dims), "states": list(s.states),
        "alpha_grid": list(s.alphas), "max_C_alpha": s.max_C_alpha,
        "violations": s.violations, "seed": s.seed,
    }))
    return EXIT_VIOLATION if s.violations else EXIT_OK


def cmd_inefficiency(cfg: SweepConfig) -> int:
    spec = make_protocol(SystemFamily(cfg.system, cfg.theta_over_pi * math.pi, cfg.beta))
    rows = []
    for a in cfg.alpha_list:
        for e in cfg.eta_list:
            r = lg_inefficient(spec, a, e, cfg.epsilon)
            rows.append((a, e, r.C_alpha, r.C_eta, r.C_eta_direct, r.Delta, r.marginal_term,
                         r.C_eta_direct - r.C_eta - r.marginal_term))
    write_text(cfg.out, csv_text(AUDIT_COLUMNS, rows))
    return EXIT_OK


COMMANDS = {
    "sweep": cmd_sweep,
    "extension": cmd_extension,
    "ratio": cmd_ratio,
    "oracle": cmd_oracle,
    "inefficiency": cmd_inefficiency,
}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--system", choices=SYSTEMS)
    common.add_argument("--beta", type=float, help="inverse temperature in units of 1/dE")
    common.add_argument("--alpha", help="comma-separated entropic orders")
    common.add_argument("--alpha-range", help="lo:hi:step, inclusive")
    common.add_argument("--theta-points", type=int)
    common.add_argument("--theta-over-pi", type=float)
    common.add_argument("--eta", help="comma-separated detector efficiencies")
    common.add_argument("--epsilon", type=float)
    common.add_argument("--seed", type=int)
    common.add_argument("--models", type=int, help="oracle: number of random models")
    common.add_argument("--dims", help="oracle: comma-separated outcome counts")
    common.add_argument("--out", help="output file (default stdout)")
    common.add_argument("--svg", help="SVG plot path")
    common.add_argument("--config", help="JSON file with SweepConfig keys")
    common.add_argument("--threads", type=int)

    parser = _Parser(prog="entropic-lg", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    helps = {
        "sweep": "rescaled C_alpha over theta (CSV, optional SVG)",
        "extension": "growth of the violation domain over alpha (JSON)",
        "ratio": "inefficiency penalty ratio over alpha (CSV, optional SVG)",
        "oracle": "fuzz random hidden-variable models against the classical bound (JSON)",
        "inefficiency": "direct vs closed-form lossy-detector audit (CSV)",
    }
    for name, text in helps.items():
        sub.add_parser(name, parents=[common], help=text)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = build_config(args)
        return COMMANDS[args.command](cfg)
    except (UsageError, ParameterError, ValidationError, DomainError) as exc:
        print(f"entropic-lg: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"entropic-lg: error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    raise SystemExit(main())
