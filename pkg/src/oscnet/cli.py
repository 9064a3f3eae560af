"""Command-line interface: ``oscnet {construct,params,verify,distance,simulate}``.

Exit status: 0 on success, 1 when a verification or consistency check fails,
2 on usage or configuration errors.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from . import __version__
from .channel import ChannelConfig, ChannelError, simulate
from .code import CodeParams, build_code, predicted_params, verify_theorem
from .gf import Field, FieldError
from .linalg import zassenhaus
from .serialize import dumps_code, read_subspace

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2
SEED_ENV = "OSCNET_SEED"
DEFAULT_GRID = {"q": [2, 3, 4, 5], "n": [1, 2], "d": [2, 3, 4]}


class UsageError(Exception):
    pass


def _int_list(text: str) -> list[int]:
    try:
        vals = [int(t) for t in text.replace(" ", "").split(",") if t]
    except ValueError:
        raise UsageError(f"expected comma-separated integers, got {text!r}") from None
    if not vals:
        raise UsageError(f"empty list {text!r}")
    return vals


def parse_grid(spec: str) -> dict[str, list[int]]:
    """Parse ``"q=2,3;n=1,2;d=2,3,4[;k=1,2]"``; unspecified keys take defaults."""
    grid = {key: list(vals) for key, vals in DEFAULT_GRID.items()}
    for part in spec.split(";"):
        if not part.strip():
            continue
        if "=" not in part:
            raise UsageError(f"malformed grid entry {part!r}; expected key=v1,v2,...")
        key, vals = part.split("=", 1)
        key = key.strip()
        if key not in ("q", "n", "d", "k"):
            raise UsageError(f"unknown grid key {key!r}")
        grid[key] = _int_list(vals)
    return grid


def _field(args) -> Field:
    irr = _int_list(args.irreducible) if args.irreducible else None
    if args.q is not None:
        f = Field.of_order(args.q, irr)
        if (args.p is not None and args.p != f.p) or (args.m is not None and args.m != f.m):
            raise UsageError(f"--q {args.q} disagrees with --p/--m")
        return f
    if args.p is None:
        raise UsageError("give --q or --p [--m]")
    return Field(args.p, args.m or 1, irr)


def _need(args, *names):
    missing = [n for n in names if getattr(args, n) is None]
    if missing:
        raise UsageError("missing " + ", ".join("--" + n for n in missing))


def _emit(obj, fmt: str, table: str):
    if fmt == "json":
        print(json.dumps(obj, indent=1))
    else:
        print(table)


def _fmt_frac(x: Fraction) -> str:
    return str(x) if x.denominator != 1 else str(x.numerator)


def cmd_construct(args) -> int:
    _need(args, "n", "d", "k")
    code = build_code(args.n, args.d, args.k, _field(args))
    text = dumps_code(code)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
        print(f"wrote {len(code)} codewords to {args.out}", file=sys.stderr)
    else:
        sys.stdout.write(text)
    return EXIT_OK


_PARAM_ROWS = ("N", "dim", "size", "log_q_size", "D", "weight", "rate", "delta")


def _param_cell(p: CodeParams, name: str) -> str:
    val = getattr(p, name)
    if isinstance(val, Fraction):
        return _fmt_frac(val)
    if isinstance(val, float):
        return f"{val:.6g}"
    return str(val)


def cmd_params(args) -> int:
    _need(args, "n", "d", "k")
    field = _field(args)
    pred = predicted_params(args.n, args.d, args.k, field.q)
    built = build_code(args.n, args.d, args.k, field).params
    agree = pred == built
    lines = [f"{'param':<12}{'predicted':>14}{'constructed':>14}"]
    for name in _PARAM_ROWS:
        label = "lambda" if name == "weight" else name
        lines.append(f"{label:<12}{_param_cell(pred, name):>14}{_param_cell(built, name):>14}")
    lines.append("agree" if agree else "MISMATCH")
    _emit({"q": field.q, "n": args.n, "d": args.d, "k": args.k,
           "predicted": pred.to_dict(), "constructed": built.to_dict(), "agree": agree},
          args.format, "\n".join(lines))
    return EXIT_OK if agree else EXIT_FAIL


def _grid_tuples(args):
    if args.grid is not None:
        grid = parse_grid(args.grid)
    elif args.q is not None or args.p is not None:
        _need(args, "n", "d")
        if args.k is not None and not 1 <= args.k < args.d:
            raise UsageError(f"need 1 <= k < d, got k={args.k}, d={args.d}")
        grid = {"q": [None], "n": [args.n], "d": [args.d]}
        if args.k is not None:
            grid["k"] = [args.k]
    else:
        grid = {key: list(vals) for key, vals in DEFAULT_GRID.items()}
    out = []
    for q in grid["q"]:
        field = _field(args) if q is None else Field.of_order(q)
        for n in grid["n"]:
            for d in grid["d"]:
                ks = grid.get("k", range(1, d))
                out.extend((field, n, d, k) for k in ks if 1 <= k < d)
    if not out:
        raise UsageError("grid contains no valid (q, n, d, k) tuple")
    return sorted(out, key=lambda t: (t[0].q, t[1], t[2], t[3]))


def cmd_verify(args) -> int:
    tuples = _grid_tuples(args)
    reports = [verify_theorem(n, d, k, f) for f, n, d, k in tuples]
    ok = all(r.passed for r in reports)
    names = []
    for r in reports:
        for c in r.checks:
            if c.name not in names:
                names.append(c.name)
    widths = [max(len(nm), 4) for nm in names]
    head = f"{'q':>3}{'n':>3}{'d':>3}{'k':>3}  " + " ".join(f"{nm:>{w}}" for nm, w in zip(names, widths)) + "  result"
    lines = [head]
    for r in reports:
        cells = []
        for nm in names:
            try:
                cells.append("pass" if r.check(nm).passed else "FAIL")
            except KeyError:
                cells.append("-")
        lines.append(f"{r.q:>3}{r.n:>3}{r.d:>3}{r.k:>3}  " + " ".join(f"{c:>{w}}" for c, w in zip(cells, widths))
                     + ("  ok" if r.passed else "  FAIL"))
    lines.append(f"{sum(r.passed for r in reports)}/{len(reports)} passed")
    _emit({"passed": ok, "rows": [r.to_dict() for r in reports]}, args.format, "\n".join(lines))
    return EXIT_OK if ok else EXIT_FAIL


def cmd_distance(args) -> int:
    field = _field(args) if (args.q is not None or args.p is not None) else None
    a = read_subspace(args.path_a, field)
    b = read_subspace(args.path_b, field if field is not None else a.field)
    s, i = zassenhaus(a, b)
    dist = s.dim - i.dim
    _emit({"distance": dist, "dim_a": a.dim, "dim_b": b.dim, "dim_sum": s.dim, "dim_intersection": i.dim},
          args.format, str(dist))
    return EXIT_OK


def cmd_simulate(args) -> int:
    _need(args, "n", "d", "k")
    seed = args.seed
    if seed is None:
        env = os.environ.get(SEED_ENV)
        try:
            seed = int(env) if env else 0
        except ValueError:
            raise UsageError(f"${SEED_ENV} must be an integer, got {env!r}") from None
    code = build_code(args.n, args.d, args.k, _field(args))
    cfg = ChannelConfig(args.erasures, args.errors, seed)
    stats = simulate(code, cfg, args.trials)
    report = stats.to_dict()
    table = (f"trials={stats.trials} correct={stats.correct} wrong={stats.wrong} "
             f"ambiguous={stats.ambiguous} success_rate={stats.success_rate:.6g}")
    fmt = args.format if args.format_given else "json"
    _emit(report, fmt, table)
    return EXIT_OK


def _add_field_args(p):
    p.add_argument("--q", type=int, help="field order (prime power)")
    p.add_argument("--p", type=int, help="characteristic (alternative to --q)")
    p.add_argument("--m", type=int, help="extension degree (with --p)")
    p.add_argument("--irreducible", help="defining polynomial coefficients, lowest degree first, e.g. 1,1,1")


def _add_code_args(p):
    p.add_argument("--n", type=int, help="projective dimension")
    p.add_argument("--d", type=int, help="Veronese degree")
    p.add_argument("--k", type=int, help="osculation order, 1 <= k < d")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="oscnet", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_):
        p = sub.add_parser(name, help=help_)
        p.set_defaults(func=func)
        p.add_argument("--format", choices=("json", "table"), default=None)
        return p

    p = add("construct", cmd_construct, "build a code and write it as JSON")
    _add_field_args(p)
    _add_code_args(p)
    p.add_argument("--out", help="output path (default: stdout)")

    p = add("params", cmd_params, "compare closed-form and constructed parameters")
    _add_field_args(p)
    _add_code_args(p)

    p = add("verify", cmd_verify, "check every claimed property over a parameter grid")
    _add_field_args(p)
    _add_code_args(p)
    p.add_argument("--grid", help='e.g. "q=2,3,4,5;n=1,2;d=2,3,4" (k defaults to 1..d-1)')

    p = add("distance", cmd_distance, "subspace distance between two subspace files")
    p.add_argument("path_a")
    p.add_argument("path_b")
    _add_field_args(p)

    p = add("simulate", cmd_simulate, "operator channel + minimum-distance decoding")
    _add_field_args(p)
    _add_code_args(p)
    p.add_argument("--erasures", type=int, default=0)
    p.add_argument("--errors", type=int, default=0)
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--seed", type=int, default=None, help=f"PRNG seed (default: ${SEED_ENV} or 0)")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    args.format_given = args.format is not None
    if args.format is None:
        args.format = "table"
    try:
        return args.func(args)
    except (UsageError, FieldError, ChannelError, ValueError, OSError) as exc:
        print(f"oscnet {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
