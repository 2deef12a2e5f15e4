"""Command line: witnesses, generators and tiny exhaustive Ramsey numbers.

Exit codes: 0 success, 1 bad input, 2 a proof step failed (a reproducer
bundle is written), 3 cycle search budget exhausted, 64 parameters outside
the proved range.
"""

from __future__ import annotations

import argparse
import io
import json
import logging
import os
import re
import sys
import tarfile
import time
from pathlib import Path

import numpy as np

from . import graph as gr
from .cycles import DEFAULT_BUDGET
from .errors import HypothesisError, SearchBudgetExhausted, TheoremViolation
from .oracle import brute_ramsey, extremal_graph
from .tree_engine import check_tree_hypotheses, find_witness_tree
from .trees import Tree, UnicyclicGraph, load_pattern, near_cycle, random_tree, random_unicyclic
from .unicyclic_engine import check_unicyclic_hypotheses, find_witness_unicyclic

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_VIOLATION = 2
EXIT_BUDGET = 3
EXIT_HYPOTHESIS = 64

log = logging.getLogger("fanramsey")


def _setup_logging() -> None:
    level = os.environ.get("RAMSEY_LOG", "WARNING").upper()
    logging.basicConfig(level=getattr(logging, level, logging.WARNING), format="%(levelname)s %(name)s: %(message)s")


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text + "\n")
    else:
        print(text)


def write_reproducer(path: Path, host: gr.Graph, pattern: Tree | UnicyclicGraph, config: dict, err: TheoremViolation) -> Path:
    """Tarball holding the host (graph6), the pattern (JSON) and the run
    configuration with the failing step's label and context."""
    files = {
        "host.g6": gr.write_graph6(host) + "\n",
        "pattern.json": json.dumps(pattern.to_json()) + "\n",
        "config.json": json.dumps(
            {**config, "step": err.claim, "message": str(err), "context": err.reproducer},
            indent=2,
            sort_keys=True,
            default=str,
        )
        + "\n",
    }
    with tarfile.open(path, "w:gz") as tar:
        for name, text in files.items():
            data = text.encode()
            info = tarfile.TarInfo(name)
            info.size = len(data)
            tar.addfile(info, io.BytesIO(data))
    return path


def solve(host: gr.Graph, pattern: Tree | UnicyclicGraph, m: int, budget: int, strategy: str = "greedy"):
    if isinstance(pattern, Tree):
        return find_witness_tree(host, pattern, m, strategy=strategy)
    return find_witness_unicyclic(host, pattern, m, budget=budget)


def check_hypotheses(pattern: Tree | UnicyclicGraph, m: int) -> None:
    if isinstance(pattern, Tree):
        check_tree_hypotheses(pattern.n, m)
    else:
        check_unicyclic_hypotheses(pattern.n, m)


def _run_one(host, pattern, args, config: dict, label: str) -> tuple[int, str | None]:
    try:
        w = solve(host, pattern, args.m, args.budget, args.strategy)
    except TheoremViolation as err:
        where = Path(args.out).parent if args.out else Path.cwd()
        path = write_reproducer(where / f"reproducer-{label}.tar.gz", host, pattern, config, err)
        print(f"error: {err}; reproducer written to {path}", file=sys.stderr)
        return EXIT_VIOLATION, None
    except SearchBudgetExhausted as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_BUDGET, None
    log.info("%s: %s via %s", label, w.kind, w.route)
    return EXIT_OK, w.to_json()


def cmd_witness(args) -> int:
    try:
        hosts = gr.read_graph6_file(args.host)
        pattern = load_pattern(args.pattern)
    except (OSError, ValueError) as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_INPUT
    if not hosts:
        print("error: host file holds no graph", file=sys.stderr)
        return EXIT_INPUT
    try:
        check_hypotheses(pattern, args.m)
        if hosts[0].order != 2 * pattern.n - 1:
            raise HypothesisError(f"host has {hosts[0].order} vertices, expected 2n - 1 = {2 * pattern.n - 1}")
    except HypothesisError as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_HYPOTHESIS
    config = {"command": "witness", "m": args.m, "seed": args.seed, "budget": args.budget, "strategy": args.strategy}
    code, text = _run_one(hosts[0], pattern, args, config, "witness")
    if text is not None:
        _emit(text, args.out)
    return code


def cmd_batch(args) -> int:
    """Random hosts and patterns from one seed; one witness JSON per line."""
    n = args.n
    kind = args.kind
    try:
        if kind == "tree":
            check_tree_hypotheses(n, args.m)
        else:
            check_unicyclic_hypotheses(n, args.m)
    except HypothesisError as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_HYPOTHESIS
    rng = np.random.default_rng(args.seed)
    lines = []
    worst = EXIT_OK
    for trial in range(args.trials):
        s = int(rng.integers(2**31))
        p = float(rng.choice(args.p))
        host = gr.random_graph(2 * n - 1, p, seed=s)
        pattern = random_tree(n, seed=s + 1) if kind == "tree" else random_unicyclic(n, seed=s + 1)
        config = {"command": "batch", "kind": kind, "n": n, "m": args.m, "seed": args.seed, "trial": trial, "p": p}
        start = time.perf_counter()
        code, text = _run_one(host, pattern, args, config, f"trial{trial}")
        log.info("trial %d finished in %.3fs (exit %d)", trial, time.perf_counter() - start, code)
        if text is not None:
            lines.append(text)
        worst = max(worst, code)
    _emit("\n".join(lines), args.out)
    return worst


def cmd_generate(args) -> int:
    what = args.what
    if what == "extremal":
        text = gr.write_graph6(extremal_graph(args.n))
    elif what == "graph":
        text = gr.write_graph6(gr.random_graph(args.n, args.p, seed=args.seed))
    elif what == "tree":
        text = json.dumps(random_tree(args.n, seed=args.seed).to_json())
    elif what == "unicyclic":
        u = near_cycle(args.n) if args.near_cycle else random_unicyclic(args.n, seed=args.seed)
        text = json.dumps(u.to_json())
    else:  # pragma: no cover - argparse restricts choices
        return EXIT_INPUT
    _emit(text, args.out)
    return EXIT_OK


_NAMED = re.compile(r"^(?:(?P<mult>\d+)K2|(?P<kind>[PKCSF])(?P<size>\d+))$")


def named_graph(name: str) -> tuple[gr.Graph, dict]:
    """Parse ``P4``, ``K3``, ``C5``, ``S4`` (star on 4 vertices), ``F2``
    (fan) or ``2K2`` (matching).  The dict records what kind of family the
    name belongs to."""
    mt = _NAMED.match(name.strip())
    if not mt:
        raise ValueError(f"unknown graph name {name!r}")
    if mt["mult"]:
        k = int(mt["mult"])
        return gr.matching_graph(k), {"matching": k}
    kind, size = mt["kind"], int(mt["size"])
    build = {"P": gr.path_graph, "K": gr.complete_graph, "C": gr.cycle_graph, "S": gr.star_graph, "F": gr.fan_graph}
    g = build[kind](size)
    info: dict = {}
    if kind in "PS" or (kind == "K" and size <= 2):
        info["tree"] = g.order
    return g, info


def cmd_brute(args) -> int:
    try:
        h, hi = named_graph(args.h)
        k, ki = named_graph(args.k)
    except ValueError as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_INPUT
    value = brute_ramsey(h, k, args.n_max)
    shown = str(value) if value is not None else f"> {args.n_max}"
    formula = None
    tree, matching = (hi, ki) if "tree" in hi else (ki, hi)
    # a tree on n vertices against mK2 needs n + m - 1 vertices once n >= 4m - 4
    if "tree" in tree and "matching" in matching:
        n, m = tree["tree"], matching["matching"]
        if n >= 4 * m - 4:
            formula = n + m - 1
    if formula is None:
        print(f"R = {shown}")
    else:
        verdict = "MATCH" if value == formula else "MISMATCH"
        print(f"R = {shown} (formula: {formula}, {verdict})")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="fanramsey", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def engine_flags(p):
        p.add_argument("--m", type=int, required=True, help="fan size")
        p.add_argument("--budget", type=int, default=DEFAULT_BUDGET, help="cycle search step budget")
        p.add_argument("--strategy", choices=("greedy", "structural"), default="greedy")
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--out", help="output file (default: stdout)")

    p = sub.add_parser("witness", help="fan in the host or pattern in its complement")
    p.add_argument("--host", required=True, help="graph6 file")
    p.add_argument("--pattern", required=True, help="tree or unicyclic JSON")
    engine_flags(p)
    p.set_defaults(func=cmd_witness)

    p = sub.add_parser("batch", help="witnesses for random instances")
    p.add_argument("--kind", choices=("tree", "unicyclic"), default="tree")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--trials", type=int, default=10)
    p.add_argument("--p", type=float, nargs="+", default=[0.05, 0.5, 0.95], help="host edge probabilities")
    engine_flags(p)
    p.set_defaults(func=cmd_batch)

    p = sub.add_parser("generate", help="write a graph (graph6) or pattern (JSON)")
    p.add_argument("what", choices=("extremal", "graph", "tree", "unicyclic"))
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--p", type=float, default=0.5)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--near-cycle", action="store_true", help="unicyclic: cycle plus one pendant vertex")
    p.add_argument("--out")
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("brute", help="exhaustive Ramsey number of two small graphs")
    p.add_argument("h", help="e.g. P4, K3, S4, F1, C4, 2K2")
    p.add_argument("k")
    p.add_argument("--n-max", type=int, default=7)
    p.set_defaults(func=cmd_brute)
    return parser


def main(argv: list[str] | None = None) -> int:
    _setup_logging()
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
