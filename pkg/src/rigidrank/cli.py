"""Command-line front end: ``rigidrank <verb> ...``.

Exit status: 0 success, 1 bound or invariant violation, 2 usage or parse error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path
from typing import Sequence, TextIO

from .families import FamilySpec, ParameterError
from .graph import GraphError, ParseError, parse_edge_list, to_dot, write_edge_list
from .rigidity import (
    ConfigurationError,
    DEFAULT_TRIALS,
    format_configuration,
    generic_rank,
    parse_configuration,
    rank_at,
)
from .trimming import classify, generic_trim, trim
from .verify import check_bounds, survey


class UsageError(Exception):
    pass


def _default_seed() -> int:
    raw = os.environ.get("RIGIDRANK_SEED", "0")
    try:
        return int(raw)
    except ValueError:
        raise UsageError(f"RIGIDRANK_SEED must be an integer, got {raw!r}") from None


def _read(path: str, parser, what: str):
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {what} {path}: {exc.strerror}") from None
    try:
        return parser(text)
    except ParseError as exc:
        raise UsageError(f"{path}: {exc}") from None


def _load_graph(path):
    return _read(path, parse_edge_list, "graph")


def _load_config(path, g):
    p = _read(path, parse_configuration, "configuration")
    if len(p) != g.vertex_count:
        raise UsageError(f"{path}: {len(p)} points for {g.vertex_count} vertices")
    return p


def _dump(obj, out: TextIO) -> None:
    out.write(json.dumps(obj, indent=2, sort_keys=False) + "\n")


def _build_parser(seed: int) -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="rigidrank", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="verb", required=True)

    g = sub.add_parser("gen", help="write a family graph as an edge list")
    g.add_argument("spec", help="e.g. chained-k5me:k=3, k3-prism:n=6, random-regular:d=4,n=20,seed=7")
    g.add_argument("-o", "--output", help="edge-list output file (default stdout)")
    g.add_argument("--config-out", help="also write a general-position configuration here")
    g.add_argument("--seed", type=int, default=seed)
    g.add_argument("--dot", action="store_true", help="emit Graphviz DOT instead of an edge list")

    r = sub.add_parser("rank", help="rank of the rigidity matrix as JSON")
    r.add_argument("-g", "--graph", required=True)
    mode = r.add_mutually_exclusive_group()
    mode.add_argument("-c", "--config")
    mode.add_argument("--generic", action="store_true")
    r.add_argument("--trials", type=int, default=DEFAULT_TRIALS)
    r.add_argument("--seed", type=int, default=seed)

    t = sub.add_parser("trim", help="trimming trace as JSON")
    t.add_argument("-g", "--graph", required=True)
    t.add_argument("--generic", action="store_true")

    c = sub.add_parser("classify", help="trimmed / A4 / B4 flags as JSON")
    c.add_argument("-g", "--graph", required=True)

    k = sub.add_parser("check", help="evaluate the lower bounds as JSON")
    k.add_argument("-g", "--graph", required=True)
    k.add_argument("-c", "--config")
    k.add_argument("--seed", type=int, default=seed)
    k.add_argument("--trials", type=int, default=DEFAULT_TRIALS)

    s = sub.add_parser("survey", help="stream bound checks over family instances as CSV")
    s.add_argument("specs", nargs="*", help="family specs; random-regular gets a fresh seed per instance")
    s.add_argument("--count", type=int, default=1)
    s.add_argument("--seed", type=int, default=seed)
    s.add_argument("--workers", type=int, default=1)
    s.add_argument("-o", "--output")
    return ap


def _dispatch(args, out: TextIO) -> int:
    if args.verb == "gen":
        spec = FamilySpec.parse(args.spec)
        g = spec.build()
        text = to_dot(g) if args.dot else write_edge_list(g)
        if args.output:
            Path(args.output).write_text(text)
        else:
            out.write(text)
        if args.config_out:
            Path(args.config_out).write_text(format_configuration(spec.configuration(args.seed)))
        return 0

    g = _load_graph(args.graph) if getattr(args, "graph", None) else None

    if args.verb == "rank":
        if args.trials < 1:
            raise UsageError("--trials must be positive")
        if args.config:
            res = rank_at(g, _load_config(args.config, g))
        else:
            res = generic_rank(g, args.trials, args.seed)
        _dump(res.to_dict(), out)
        return 0

    if args.verb == "trim":
        tr = generic_trim(g) if args.generic else trim(g)
        _dump(tr.to_dict(), out)
        return 0

    if args.verb == "classify":
        _dump(classify(g).to_dict(), out)
        return 0

    if args.verb == "check":
        p = _load_config(args.config, g) if args.config else None
        rep = check_bounds(g, p, seed=args.seed, trials=args.trials)
        _dump(rep.to_dict(), out)
        return 0 if rep.all_satisfied else 1

    if args.verb == "survey":
        specs = [FamilySpec.parse(s) for s in args.specs]
        if args.output:
            with open(args.output, "w", newline="") as fh:
                rows = survey(specs, args.count, args.seed, fh, args.workers)
        else:
            rows = survey(specs, args.count, args.seed, out, args.workers)
        return 0 if all(r["all_satisfied"] for r in rows) else 1
    raise UsageError(f"unknown verb {args.verb}")


def run(argv: Sequence[str] | None = None, out: TextIO | None = None, err: TextIO | None = None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        ap = _build_parser(_default_seed())
        try:
            args = ap.parse_args(argv)
        except SystemExit as exc:
            return 0 if exc.code == 0 else 2
        return _dispatch(args, out)
    except (UsageError, ParameterError, ParseError) as exc:
        err.write(f"rigidrank: {exc}\n")
        return 2
    except (GraphError, ConfigurationError) as exc:
        err.write(f"rigidrank: {exc}\n")
        return 2


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
