"""Command-line front end.

    shgseries expand   --fock 4 --order 2 --format json
    shgseries diagrams --order 12 --list --n 10
    shgseries validate --fock 6 --order 8
    shgseries evaluate --fock 2 --order 6 --gamma 0.1
    shgseries moments  --fock 2 --order 2 --gamma-sweep 0:0.2:5 --format csv

Exit codes: 0 success, 1 validation mismatch, 2 invalid configuration,
3 output not writable.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
import tempfile
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

import mpmath

from . import __version__
from .diagrams import diagram_term, enumerate_pairs, render_ascii, render_latex
from .oracle import taylor_oracle
from .series import (
    DEFAULT_PRECISION,
    InputStateWeights,
    InvalidParameter,
    UndefinedQ,
    assemble_fock,
    assemble_mixture,
    coherent_weights,
    evaluate,
    moments,
    thermal_weights,
    to_mpf,
)

SCHEMA = "shg-perturb/1"

EXIT_OK, EXIT_MISMATCH, EXIT_CONFIG, EXIT_IO = 0, 1, 2, 3


class ConfigError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    fock: int | None = None
    coherent: float | None = None
    thermal: float | None = None
    weights: str | None = None
    order: int = 0
    gamma: float | None = None
    gamma_sweep: str | None = None
    format: str = "text"
    output: str | None = None
    precision: int = DEFAULT_PRECISION
    epsilon: float = 1e-12

    @property
    def input_kind(self) -> str | None:
        for kind in ("fock", "coherent", "thermal", "weights"):
            if getattr(self, kind) is not None:
                return kind
        return None


# -- argument parsing -------------------------------------------------------

def _add_input(p: argparse.ArgumentParser, required=True):
    g = p.add_mutually_exclusive_group(required=required)
    g.add_argument("--fock", type=int, metavar="N", help="pump Fock state |N>")
    g.add_argument("--coherent", type=float, metavar="MEAN", help="coherent pump, mean photon number")
    g.add_argument("--thermal", type=float, metavar="MEAN", help="thermal pump, mean photon number")
    g.add_argument("--weights", metavar="FILE", help='JSON {"weights": [[n, c], ...], "tail_bound": t}')
    p.add_argument("--precision", type=int, default=DEFAULT_PRECISION,
                   help="decimal digits for mixture coefficients (default %(default)s)")
    p.add_argument("--epsilon", type=float, default=1e-12,
                   help="discarded pump tail mass for coherent/thermal input (default %(default)s)")


def _add_common(p: argparse.ArgumentParser, order_required=True):
    p.add_argument("--order", type=int, required=order_required, metavar="R_MAX",
                   help="highest (even) power of gamma")
    p.add_argument("--format", choices=("json", "csv", "text"), default="text")
    p.add_argument("--output", "-o", metavar="PATH", help="write here instead of stdout")


def _add_gamma(p: argparse.ArgumentParser):
    p.add_argument("--gamma", type=float)
    p.add_argument("--gamma-sweep", metavar="LO:HI:STEPS", help="evenly spaced grid, endpoints included")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="shgseries",
        description="Perturbative SH photon-number statistics from double-sided diagrams.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("expand", help="exact expansion coefficients")
    _add_input(p)
    _add_common(p)

    p = sub.add_parser("diagrams", help="list or render canonical diagrams")
    _add_common(p)
    p.add_argument("--from", dest="from_order", type=int, metavar="R0",
                   help="lowest order listed (default: --order only)")
    p.add_argument("--list", action="store_true", help="list pairs (default when --render absent)")
    p.add_argument("--n", type=int, help="also show each pair's coefficient at this pump n")
    p.add_argument("--render", choices=("ascii", "latex"))
    p.add_argument("--outdir", default="diagrams", help="directory for rendered files (default %(default)s)")

    p = sub.add_parser("validate", help="compare diagram expansion with the exact oracle")
    _add_input(p)
    _add_common(p)

    for name, text in (("evaluate", "truncated probabilities"), ("moments", "mean, variance, Mandel Q")):
        p = sub.add_parser(name, help=text)
        _add_input(p)
        _add_common(p)
        _add_gamma(p)
    return parser


def _check(cfg: RunConfig):
    if cfg.order is not None and (cfg.order < 0 or cfg.order % 2):
        raise ConfigError(f"--order must be even and nonnegative, got {cfg.order}")
    if not 0 < cfg.epsilon < 1:
        raise ConfigError("--epsilon must lie in (0, 1)")
    if cfg.precision < 1:
        raise ConfigError("--precision must be positive")
    if cfg.fock is not None and cfg.fock < 0:
        raise ConfigError("--fock must be nonnegative")


# -- inputs and serialization -------------------------------------------------

def _parse_weight(c):
    if isinstance(c, str) and "/" in c:
        return Fraction(c)
    if isinstance(c, int):
        return Fraction(c)
    return mpmath.mpf(c)


def load_weights(path: str, precision: int) -> InputStateWeights:
    try:
        data = json.loads(Path(path).read_text(encoding="utf-8"))
        with mpmath.workdps(precision):
            weights = tuple((int(n), _parse_weight(c)) for n, c in data["weights"])
            if "tail_bound" in data:
                tail = _parse_weight(data["tail_bound"])
            else:
                tail = max(mpmath.mpf(0), 1 - mpmath.fsum(to_mpf(c) for _, c in weights))
        return InputStateWeights(weights, tail, precision)
    except (OSError, ValueError, KeyError, TypeError) as exc:
        raise ConfigError(f"cannot read weights file {path}: {exc}") from exc


def resolve_input(cfg: RunConfig):
    """An ``int`` for Fock input, otherwise :class:`InputStateWeights`."""
    try:
        if cfg.fock is not None:
            return cfg.fock
        if cfg.coherent is not None:
            return coherent_weights(cfg.coherent, cfg.epsilon, cfg.precision)
        if cfg.thermal is not None:
            return thermal_weights(cfg.thermal, cfg.epsilon, cfg.precision)
        return load_weights(cfg.weights, cfg.precision)
    except InvalidParameter as exc:
        raise ConfigError(str(exc)) from exc


def _expansion(cfg: RunConfig):
    origin = resolve_input(cfg)
    if isinstance(origin, int):
        return assemble_fock(origin, cfg.order)
    return assemble_mixture(origin, cfg.order)


def _rational(q: Fraction) -> dict:
    return {"num": str(q.numerator), "den": str(q.denominator)}


def _mp_str(x, precision: int) -> str:
    return mpmath.nstr(x, precision, min_fixed=-5, max_fixed=20)


def _input_meta(cfg: RunConfig, origin) -> dict:
    if isinstance(origin, int):
        return {"kind": "fock", "n": origin}
    meta = {"kind": cfg.input_kind}
    if cfg.coherent is not None or cfg.thermal is not None:
        meta["mean"] = cfg.coherent if cfg.coherent is not None else cfg.thermal
        meta["epsilon"] = cfg.epsilon
    elif cfg.weights is not None:
        meta["file"] = cfg.weights
    meta["cutoff_n"] = origin.cutoff_n
    meta["tail_bound"] = _mp_str(origin.tail_bound, 6)
    return meta


def _header(cfg: RunConfig, origin) -> dict:
    return {
        "schema": SCHEMA,
        "tool_version": __version__,
        "command": cfg.command,
        "input": _input_meta(cfg, origin),
        "max_order": cfg.order,
    }


def _csv(rows, header) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()


def _table(rows, header) -> str:
    rows = [[str(x) for x in r] for r in rows]
    widths = [max(len(h), *(len(r[i]) for r in rows)) if rows else len(h) for i, h in enumerate(header)]
    lines = ["  ".join(h.rjust(w) for h, w in zip(header, widths))]
    lines += ["  ".join(c.rjust(w) for c, w in zip(r, widths)) for r in rows]
    return "\n".join(lines) + "\n"


def _json(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def _fmt_q(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


# -- commands -----------------------------------------------------------------

def cmd_expand(cfg: RunConfig) -> tuple[int, str]:
    e = _expansion(cfg)
    prec = cfg.precision
    if not e.is_mixture:
        n = e.origin
        rows = [(v, n - 2 * v, R, c) for v, R, c in e.sorted_terms()]
        if cfg.format == "json":
            doc = _header(cfg, n)
            doc["terms"] = [{"v": v, "pump": p, "R": R, "coefficient": _rational(c)} for v, p, R, c in rows]
            return EXIT_OK, _json(doc)
        if cfg.format == "csv":
            return EXIT_OK, _csv([(v, p, R, c.numerator, c.denominator) for v, p, R, c in rows],
                                 ["v", "pump", "R", "num", "den"])
        return EXIT_OK, (f"# Pr(n'={n}-2v, v; gamma) = sum_R c(v,R) gamma^R\n"
                         + _table([(v, p, R, _fmt_q(c)) for v, p, R, c in rows], ["v", "pump", "R", "coefficient"]))

    rows = [(v, R, _mp_str(c, prec)) for v, R, c in e.sorted_terms()]
    if cfg.format == "json":
        doc = _header(cfg, e.origin)
        doc["precision"] = prec
        doc["terms"] = [{"v": v, "R": R, "coefficient": c} for v, R, c in rows]
        doc["joint"] = [
            {
                "origin_n": n,
                "weight": _mp_str(_weight_mp(e.origin, n), prec),
                "terms": [{"v": v, "pump": n - 2 * v, "R": R, "coefficient": _rational(c)}
                          for v, R, c in comp.sorted_terms()],
            }
            for n, comp in sorted(e.components.items())
        ]
        return EXIT_OK, _json(doc)
    if cfg.format == "csv":
        return EXIT_OK, _csv(rows, ["v", "R", "coefficient"])
    return EXIT_OK, (f"# SH marginal, pump cutoff n<={e.origin.cutoff_n}, "
                     f"tail bound {_mp_str(e.tail_bound, 6)}\n" + _table(rows, ["v", "R", "coefficient"]))


def _weight_mp(w: InputStateWeights, n: int):
    with mpmath.workdps(w.precision):
        return to_mpf(dict(w.weights)[n])


def cmd_diagrams(cfg: RunConfig, args) -> tuple[int, str]:
    lo = cfg.order if args.from_order is None else args.from_order
    if lo < 0 or lo % 2 or lo > cfg.order:
        raise ConfigError("--from must be even, nonnegative and <= --order")
    pairs = [p for R in range(lo, cfg.order + 1, 2) for p in enumerate_pairs(R)]

    if args.render:
        outdir = Path(args.outdir)
        ext = "txt" if args.render == "ascii" else "tex"
        render = render_ascii if args.render == "ascii" else render_latex
        names = []
        for p in pairs:
            name = f"R{p.order:02d}_k{'-'.join(map(str, p.left.blocks)) or 'I'}__k{'-'.join(map(str, p.right.blocks)) or 'I'}.{ext}"
            _atomic_write(outdir / name, render(p), make_parents=True)
            names.append(name)
        if not args.list:
            return EXIT_OK, "".join(f"{outdir / nm}\n" for nm in names)

    rows = []
    for p in pairs:
        row = [p.order, str(p.left), str(p.right), p.left_order, p.right_order, p.net_v, p.multiplicity]
        if args.n is not None:
            row.append(diagram_term(p, args.n).coefficient)
        rows.append(row)
    header = ["R", "k", "k'", "r", "r'", "v", "mult"] + (["coefficient"] if args.n is not None else [])
    if cfg.format == "json":
        doc = {"schema": SCHEMA, "tool_version": __version__, "command": "diagrams",
               "orders": [lo, cfg.order], "n": args.n, "pairs": []}
        for row, p in zip(rows, pairs):
            item = {"R": p.order, "k": list(p.left.blocks), "k_prime": list(p.right.blocks),
                    "r": p.left_order, "r_prime": p.right_order, "v": p.net_v, "multiplicity": p.multiplicity}
            if args.n is not None:
                item["coefficient"] = _rational(row[-1])
            doc["pairs"].append(item)
        return EXIT_OK, _json(doc)
    if args.n is not None:
        for row in rows:
            row[-1] = _fmt_q(row[-1])
    if cfg.format == "csv":
        return EXIT_OK, _csv(rows, header)
    return EXIT_OK, _table(rows, header)


def cmd_validate(cfg: RunConfig) -> tuple[int, str]:
    if cfg.fock is None:
        raise ConfigError("validate supports Fock input only (--fock N)")
    n = cfg.fock
    ours = assemble_fock(n, cfg.order).terms
    oracle = taylor_oracle(n, cfg.order)
    keys = sorted(set(ours) | set(oracle), key=lambda t: (t[1], t[0]))
    for v, R in keys:
        a, b = ours.get((v, R), Fraction(0)), oracle.get((v, R), Fraction(0))
        if a != b:
            return EXIT_MISMATCH, f"MISMATCH at v={v}, R={R}: diagrams {_fmt_q(a)} != oracle {_fmt_q(b)}\n"
    return EXIT_OK, f"EXACT MATCH ({len(keys)}) coefficients\n"


def _gammas(cfg: RunConfig) -> list[float]:
    if cfg.gamma_sweep is not None:
        try:
            lo, hi, steps = cfg.gamma_sweep.split(":")
            lo, hi, steps = float(lo), float(hi), int(steps)
        except ValueError as exc:
            raise ConfigError(f"--gamma-sweep expects LO:HI:STEPS, got {cfg.gamma_sweep!r}") from exc
        if steps < 1:
            raise ConfigError("--gamma-sweep needs at least one step")
        if steps == 1:
            return [lo]
        return [lo + i * (hi - lo) / (steps - 1) for i in range(steps)]
    if cfg.gamma is None:
        raise ConfigError("--gamma or --gamma-sweep is required")
    return [cfg.gamma]


def cmd_evaluate(cfg: RunConfig) -> tuple[int, str]:
    gammas = _gammas(cfg)
    e = _expansion(cfg)
    rows = [(g, p.v, p.probability, p.remainder_estimate) for g in gammas for p in evaluate(e, g)]
    header = ["gamma", "v", "probability", "remainder_estimate"]
    if cfg.format == "json":
        doc = _header(cfg, e.origin)
        doc["rows"] = [dict(zip(header, r)) for r in rows]
        return EXIT_OK, _json(doc)
    if cfg.format == "csv":
        return EXIT_OK, _csv([(repr(g), v, repr(p), repr(r)) for g, v, p, r in rows], header)
    return EXIT_OK, _table([(g, v, f"{p:.12g}", f"{r:.3g}") for g, v, p, r in rows], header)


def cmd_moments(cfg: RunConfig) -> tuple[int, str]:
    gammas = _gammas(cfg)
    e = _expansion(cfg)
    rows = []
    for g in gammas:
        try:
            m = moments(e, g)
            rows.append((g, m.mean, m.variance, m.mandel_q))
        except UndefinedQ as exc:
            rows.append((g, exc.mean, exc.variance, None))
    header = ["gamma", "mean", "variance", "mandel_q"]
    if cfg.format == "json":
        doc = _header(cfg, e.origin)
        doc["rows"] = [dict(zip(header, r)) for r in rows]
        return EXIT_OK, _json(doc)

    def q(x):
        return "undefined" if x is None else repr(x)

    if cfg.format == "csv":
        return EXIT_OK, _csv([(repr(g), repr(m), repr(v), q(Q)) for g, m, v, Q in rows], header)
    return EXIT_OK, _table([(g, f"{m:.12g}", f"{v:.12g}", "undefined" if Q is None else f"{Q:.12g}")
                            for g, m, v, Q in rows], header)


# -- output -------------------------------------------------------------------

def _atomic_write(path: Path, text: str, make_parents=False):
    if make_parents:
        path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    keys = RunConfig.__dataclass_fields__
    cfg = RunConfig(**{k: v for k, v in vars(args).items() if k in keys})
    try:
        _check(cfg)
        if cfg.command == "expand":
            code, text = cmd_expand(cfg)
        elif cfg.command == "diagrams":
            code, text = cmd_diagrams(cfg, args)
        elif cfg.command == "validate":
            code, text = cmd_validate(cfg)
        elif cfg.command == "evaluate":
            code, text = cmd_evaluate(cfg)
        else:
            code, text = cmd_moments(cfg)
    except ConfigError as exc:
        print(f"{parser.prog} {cfg.command}: error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except OSError as exc:
        print(f"{parser.prog} {cfg.command}: cannot write output: {exc}", file=sys.stderr)
        return EXIT_IO

    if cfg.output:
        try:
            _atomic_write(Path(cfg.output), text)
        except OSError as exc:
            print(f"{parser.prog}: cannot write {cfg.output}: {exc}", file=sys.stderr)
            return EXIT_IO
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    raise SystemExit(main())
