"""Command-line interface.

    orthomorph enumerate --group z2xz4 --format text
    orthomorph classify  --group z2xz4 --format cycles
    orthomorph graph     --group z2xz4 --format dot --out orth.dot
    orthomorph clique    --group klein
    orthomorph verify    --group z2xz4
    orthomorph latin     --group cyclic:3

Exit codes: 0 success, 1 verification failure, 2 bad group spec or usage,
3 group too large for exhaustive search.
"""

from __future__ import annotations

import argparse
import itertools
import json
import os
import sys
from collections import Counter
from dataclasses import dataclass
from typing import Callable

from .graph import build_graph, clique_number, describe, graph_document, to_dot
from .groups import EnumerationBoundError, FiniteGroup, GroupError, parse_group_spec
from .latin import latin_orthogonal, to_latin_square
from .orthomorphisms import DEFAULT_MAX_ORDER, enumerate_orthomorphisms
from .verify import Context, format_report, run_checks
from .z2z4 import Form, classify_form, require_z2xz4, table_row

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_BOUND = 0, 1, 2, 3

COMMANDS = ("enumerate", "classify", "graph", "clique", "verify", "latin")
FORMATS = {
    "enumerate": ("text", "json", "cycles"),
    "classify": ("text", "json", "cycles"),
    "graph": ("text", "json", "dot"),
    "clique": ("text", "json"),
    "verify": ("text", "json"),
    "latin": ("text", "json"),
}


@dataclass(frozen=True)
class RunConfig:
    command: str
    group_spec: str
    output_format: str = "text"
    output_path: str | None = None
    max_order: int = DEFAULT_MAX_ORDER
    parallelism: int = 1

    def __post_init__(self) -> None:
        if self.command not in COMMANDS:
            raise ValueError(f"unknown command {self.command!r}")
        if self.output_format not in FORMATS[self.command]:
            allowed = ", ".join(FORMATS[self.command])
            raise ValueError(f"format {self.output_format!r} not available for {self.command} (use {allowed})")


class UsageError(Exception):
    pass


def _dump(doc: dict) -> str:
    return json.dumps(doc, indent=2) + "\n"


def _enumerate(cfg: RunConfig, group: FiniteGroup) -> tuple[int, str]:
    orthos = enumerate_orthomorphisms(group, cfg.max_order, cfg.parallelism)
    if cfg.output_format == "json":
        return EXIT_OK, _dump({
            "schema": 1,
            "group": cfg.group_spec,
            "count": len(orthos),
            "orthomorphisms": [list(t.images) for t in orthos],
        })
    lines = [str(len(orthos))]
    for t in orthos:
        lines.append(t.cycle_notation() if cfg.output_format == "cycles" else " ".join(map(str, t.images)))
    return EXIT_OK, "\n".join(lines) + "\n"


def _classify(cfg: RunConfig, group: FiniteGroup) -> tuple[int, str]:
    try:
        require_z2xz4(group)
    except GroupError as exc:
        raise UsageError(f"classify: {exc}") from None
    orthos = enumerate_orthomorphisms(group, cfg.max_order, cfg.parallelism)
    forms = [classify_form(t) for t in orthos]
    counts = Counter(cf.form for cf in forms)
    lab = group.labels
    if cfg.output_format == "json":
        return EXIT_OK, _dump({
            "schema": 1,
            "group": cfg.group_spec,
            "counts": {f.value: counts[f] for f in Form},
            "orthomorphisms": [
                {
                    "index": i,
                    "images": list(t.images),
                    "form": cf.form.value,
                    "a": lab[cf.a],
                    "x": lab[cf.x],
                    "theta_x": lab[cf.theta_x],
                    "table_row": table_row(cf, group),
                }
                for i, (t, cf) in enumerate(zip(orthos, forms))
            ],
        })
    lines = [" ".join(f"{f.value}:{counts[f]}" for f in Form)]
    for i, (t, cf) in enumerate(zip(orthos, forms)):
        body = t.cycle_notation() if cfg.output_format == "cycles" else " ".join(map(str, t.images))
        lines.append(f"{i} {cf.form.value} a={lab[cf.a]} x={lab[cf.x]} theta_x={lab[cf.theta_x]} {body}")
    return EXIT_OK, "\n".join(lines) + "\n"


def _graph(cfg: RunConfig, group: FiniteGroup) -> tuple[int, str]:
    g = build_graph(enumerate_orthomorphisms(group, cfg.max_order, cfg.parallelism), cfg.parallelism)
    if cfg.output_format == "dot":
        return EXIT_OK, to_dot(g, cycle_labels=True)
    if cfg.output_format == "json":
        return EXIT_OK, _dump(graph_document(g, cfg.group_spec))
    return EXIT_OK, describe(g)


def _clique(cfg: RunConfig, group: FiniteGroup) -> tuple[int, str]:
    g = build_graph(enumerate_orthomorphisms(group, cfg.max_order, cfg.parallelism), cfg.parallelism)
    omega = clique_number(g)
    if cfg.output_format == "json":
        return EXIT_OK, _dump({"schema": 1, "group": cfg.group_spec, "clique_number": omega})
    return EXIT_OK, f"{omega}\n"


def _verify(cfg: RunConfig, group: FiniteGroup) -> tuple[int, str]:
    results = run_checks(Context(group, cfg.max_order, cfg.parallelism))
    code = EXIT_OK if all(r.passed for r in results) else EXIT_FAIL
    if cfg.output_format == "json":
        return code, _dump({
            "schema": 1,
            "group": cfg.group_spec,
            "passed": code == EXIT_OK,
            "results": [{"id": r.statement, "passed": r.passed, "detail": r.detail} for r in results],
        })
    return code, format_report(results)


def _latin(cfg: RunConfig, group: FiniteGroup) -> tuple[int, str]:
    orthos = enumerate_orthomorphisms(group, cfg.max_order, cfg.parallelism)
    g = build_graph(orthos, cfg.parallelism)
    squares = [to_latin_square(group, t) for t in orthos]
    verdicts = []
    for i, j in itertools.combinations(range(len(orthos)), 2):
        lat = latin_orthogonal(squares[i], squares[j])
        verdicts.append((i, j, lat, g.adjacency[i][j]))
    agree = all(lat == orth for _, _, lat, orth in verdicts)
    code = EXIT_OK if agree else EXIT_FAIL
    if cfg.output_format == "json":
        return code, _dump({
            "schema": 1,
            "group": cfg.group_spec,
            "squares": [[list(r) for r in sq.cells] for sq in squares],
            "pairs": [{"i": i, "j": j, "latin": lat, "orthogonal": orth} for i, j, lat, orth in verdicts],
            "agree": agree,
        })
    out = []
    for i, (t, sq) in enumerate(zip(orthos, squares)):
        out.append(f"# {i} {t.cycle_notation()}\n{sq.to_text()}")
    for i, j, lat, orth in verdicts:
        out.append(f"{i} {j} latin={lat} orthogonal={orth} {'agree' if lat == orth else 'DISAGREE'}\n")
    out.append("LATIN-ORACLE " + ("PASS" if agree else "FAIL") + "\n")
    return code, "".join(out)


HANDLERS: dict[str, Callable[[RunConfig, FiniteGroup], tuple[int, str]]] = {
    "enumerate": _enumerate,
    "classify": _classify,
    "graph": _graph,
    "clique": _clique,
    "verify": _verify,
    "latin": _latin,
}


def run(cfg: RunConfig) -> tuple[int, str]:
    """Execute one command; returns (exit code, output text)."""
    try:
        group = parse_group_spec(cfg.group_spec)
    except GroupError as exc:
        return EXIT_USAGE, f"error: {exc}\n"
    try:
        return HANDLERS[cfg.command](cfg, group)
    except UsageError as exc:
        return EXIT_USAGE, f"error: {exc}\n"
    except EnumerationBoundError as exc:
        return EXIT_BOUND, f"error: {exc}\n"


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="orthomorph", description="Orthomorphisms of small finite groups.")
    parser.add_argument("command", choices=COMMANDS)
    parser.add_argument("--group", required=True, help="cyclic:N, product:cyclic:A,cyclic:B, z2xz4 or klein")
    parser.add_argument("--format", default="text", choices=("text", "json", "dot", "cycles"))
    parser.add_argument("--out", help="write output to this file instead of stdout")
    parser.add_argument("--max-order", type=int, default=DEFAULT_MAX_ORDER,
                        help="largest group order searched exhaustively (default %(default)s)")
    parser.add_argument("--jobs", type=int, default=os.cpu_count() or 1, help="worker threads")
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = RunConfig(
            command=args.command,
            group_spec=args.group,
            output_format=args.format,
            output_path=args.out,
            max_order=args.max_order,
            parallelism=max(1, args.jobs),
        )
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    code, text = run(cfg)
    if text.startswith("error:"):
        sys.stderr.write(text)
    elif cfg.output_path:
        with open(cfg.output_path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    if code == EXIT_FAIL and cfg.command == "verify":
        failed = [line.split()[0] for line in text.splitlines() if " FAIL" in line]
        if failed:
            print(f"verification failed: {', '.join(failed)}", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
