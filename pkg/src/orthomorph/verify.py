"""Exhaustive checks behind ``orthomorph verify``.

Each check returns None on success or a counterexample string. The
Z2 x Z4 checks run only when the group is Z2 x Z4.
"""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass
from typing import Callable

from .graph import (
    OrthGraph,
    are_orthogonal,
    build_graph,
    clique_number,
    component_report,
    homology,
    lemma2_orthogonal,
)
from .groups import (
    FiniteGroup,
    GroupError,
    automorphisms,
    compose,
    inverse_map,
)
from .latin import latin_orthogonal, to_latin_square
from .orthomorphisms import (
    DEFAULT_MAX_ORDER,
    Orthomorphism,
    check_lemma1,
    enumerate_orthomorphisms,
    is_orthomorphism,
    order_partition,
)
from .z2z4 import (
    Form,
    VerificationError,
    alpha_of,
    anchor,
    classify_form,
    construct_form,
    four_cycle_decomposition,
    four_cycle_of,
    intersection_adjacency,
    intersection_size,
    predicted_partners,
    require_z2xz4,
    table_row,
)

__all__ = ["CheckResult", "Context", "run_checks", "naive_clique_number", "format_report"]


@dataclass(frozen=True)
class CheckResult:
    statement: str
    passed: bool
    detail: str = ""

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"{self.statement} {status}" + (f" {self.detail}" if self.detail else "")


class Context:
    """Shared, lazily computed data for one group."""

    def __init__(self, group: FiniteGroup, max_order: int = DEFAULT_MAX_ORDER, jobs: int = 1) -> None:
        self.group = group
        self.orthos = enumerate_orthomorphisms(group, max_order=max_order, jobs=jobs)
        self.graph: OrthGraph = build_graph(self.orthos, jobs=jobs)
        self._auts = None
        try:
            require_z2xz4(group)
            self.is_z2xz4 = True
        except GroupError:
            self.is_z2xz4 = False

    @property
    def auts(self):
        if self._auts is None:
            self._auts = automorphisms(self.group)
        return self._auts

    def show(self, theta: Orthomorphism) -> str:
        return theta.cycle_notation()


def naive_clique_number(graph: OrthGraph) -> int:
    """Largest k such that some k-subset is pairwise adjacent, by plain subset search."""
    n = len(graph)
    best = 0
    for k in range(1, n + 1):
        if not any(
            all(graph.adjacency[i][j] for i, j in itertools.combinations(sub, 2))
            for sub in itertools.combinations(range(n), k)
        ):
            break
        best = k
    return best


# generic checks

def _group_axioms(ctx: Context) -> str | None:
    g = ctx.group
    n = g.order
    for a, b, c in itertools.product(g.elements(), repeat=3):
        if g.mul[g.mul[a][b]][c] != g.mul[a][g.mul[b][c]]:
            return f"associativity fails at {(a, b, c)}"
    for i in g.elements():
        if g.mul[i][g.inv[i]] != 0:
            return f"inverse of {g.labels[i]} is wrong"
        if g.power(i, g.elem_order[i]) != 0 or n % g.elem_order[i]:
            return f"order of {g.labels[i]} is wrong"
    return None


def _aut_group(ctx: Context) -> str | None:
    auts = set(ctx.auts)
    for f in auts:
        if inverse_map(f) not in auts:
            return f"inverse of {f} missing"
        if any(ctx.group.elem_order[f[i]] != ctx.group.elem_order[i] for i in ctx.group.elements()):
            return f"{f} changes an element order"
        for h in auts:
            if compose(f, h) not in auts:
                return f"{f} . {h} missing"
    if ctx.is_z2xz4 and len(auts) != 8:
        return f"|Aut| = {len(auts)}, expected 8"
    return None


def _enum_sorted(ctx: Context) -> str | None:
    images = [t.images for t in ctx.orthos]
    if images != sorted(set(images)):
        return "enumeration is not sorted and duplicate-free"
    return None


def _orth_invariants(ctx: Context) -> str | None:
    for t in ctx.orthos:
        if not is_orthomorphism(ctx.group, t.images):
            return ctx.show(t)
        if [i for i, v in enumerate(t.images) if v == i] != [0]:
            return f"{ctx.show(t)} fixes a non-identity element"
    return None


def _graph_symmetry(ctx: Context) -> str | None:
    adj = ctx.graph.adjacency
    for i, j in itertools.product(range(len(ctx.orthos)), repeat=2):
        if adj[i][j] != adj[j][i] or (i == j and adj[i][i]):
            return f"adjacency asymmetric at {(i, j)}"
        if i != j and adj[i][j] != are_orthogonal(ctx.orthos[j], ctx.orthos[i]):
            return f"orthogonality asymmetric at {(i, j)}"
    return None


def _latin_oracle(ctx: Context) -> str | None:
    squares = [to_latin_square(ctx.group, t) for t in ctx.orthos]
    cayley = to_latin_square(ctx.group, range(ctx.group.order))
    for t, sq in zip(ctx.orthos, squares):
        if not latin_orthogonal(cayley, sq):
            return f"square of {ctx.show(t)} is not orthogonal to the Cayley table"
    for i, j in itertools.combinations(range(len(squares)), 2):
        if latin_orthogonal(squares[i], squares[j]) != ctx.graph.adjacency[i][j]:
            return f"disagreement at pair {(i, j)}"
    return None


def _homology(ctx: Context) -> str | None:
    index = {t: k for k, t in enumerate(ctx.orthos)}
    adj = ctx.graph.adjacency
    for f in ctx.auts:
        try:
            mapped = [index[homology(f, t)] for t in ctx.orthos]
        except KeyError:
            return f"H_{f} leaves the orthomorphism set"
        if sorted(mapped) != list(range(len(ctx.orthos))):
            return f"H_{f} is not a bijection"
        for i, j in itertools.combinations(range(len(mapped)), 2):
            if adj[i][j] != adj[mapped[i]][mapped[j]]:
                return f"H_{f} breaks adjacency at {(i, j)}"
    return None


def _clique_oracle(ctx: Context) -> str | None:
    if len(ctx.graph) > 20:
        return None
    fast, slow = clique_number(ctx.graph), naive_clique_number(ctx.graph)
    if fast != slow:
        return f"branch and bound gives {fast}, subset search gives {slow}"
    return None


# Z2 x Z4 checks

def _thm1_count(ctx: Context) -> str | None:
    n = len(ctx.orthos)
    return None if n == 48 else f"|Orth| = {n}"


def _thm1_forms(ctx: Context) -> str | None:
    counts: Counter[Form] = Counter()
    for t in ctx.orthos:
        cf = classify_form(t)
        if construct_form(ctx.group, cf) != t:
            return f"{ctx.show(t)} does not round-trip"
        counts[cf.form] += 1
    got = tuple(counts[f] for f in Form)
    return None if got == (8, 16, 16, 8) else f"form counts {got}"


def _lemma1(ctx: Context) -> str | None:
    g = ctx.group
    for rest in itertools.permutations(range(1, g.order)):
        m = (0,) + rest
        if check_lemma1(g, m) != (True, is_orthomorphism(g, m)):
            return f"disagreement at {list(m)}"
    return None


def _cor1(ctx: Context) -> str | None:
    for t in ctx.orthos:
        part = order_partition(t)
        if part.sizes() != (2, 2, 2, 1):
            return f"{ctx.show(t)} has sizes {part.sizes()}"
        if part.a44 | part.a42 | part.a24 | part.a22 != frozenset(range(1, 8)):
            return f"{ctx.show(t)} partition does not cover"
    return None


def _cor2(ctx: Context) -> str | None:
    g = ctx.group
    for t in ctx.orthos:
        p = order_partition(t)
        img = lambda s: {t(v) for v in s}  # noqa: E731
        units = [p.a44 & img(p.a44), p.a44 & img(p.a24), p.a42 & img(p.a44), p.a42 & img(p.a24)]
        if any(len(s) != 1 for s in units):
            return f"{ctx.show(t)} unit intersections {[len(s) for s in units]}"
        (x,) = p.a22
        tx = t(x)
        if img(p.a42) != {x, g.op(x, tx)} or p.a24 != {tx, g.op(x, tx)}:
            return f"{ctx.show(t)} fails the A42/A24 identities"
        if {t.phi[v] for v in p.a44} != {x, tx}:
            return f"{ctx.show(t)} fails the complete-mapping identity on A44"
    return None


def _prop1(ctx: Context) -> str | None:
    g = ctx.group
    for t in ctx.orthos:
        p = order_partition(t)
        (x,) = p.a22
        tx = t(x)
        outside = p.a44 - {t(v) for v in p.a44}
        for a in outside:
            ax = g.op(a, x)
            if (
                t(a) != ax
                or p.a44 != {a, ax}
                or {t(v) for v in p.a44} != {ax, g.op(ax, tx)}
                or p.a42 != {g.op(ax, tx), g.op(a, tx)}
            ):
                return f"{ctx.show(t)} with a = {g.labels[a]}"
    return None


def _remark1(ctx: Context) -> str | None:
    g = ctx.group
    for t in ctx.orthos:
        a, x = anchor(t)
        tx = t(x)
        if g.elements_of_order(2) != {x, tx, g.op(x, tx)}:
            return f"{ctx.show(t)} order-2 set"
        if g.elements_of_order(4) != {a, g.op(a, x), g.op(a, tx), g.op(a, x, tx)}:
            return f"{ctx.show(t)} order-4 set"
    return None


def _lemma2(ctx: Context) -> str | None:
    for i, j in itertools.combinations(range(len(ctx.orthos)), 2):
        if lemma2_orthogonal(ctx.orthos[i], ctx.orthos[j]) != ctx.graph.adjacency[i][j]:
            return f"disagreement at pair {(i, j)}"
    return None


def _intersection_check(size: int, adjacent: bool) -> Callable[[Context], str | None]:
    def check(ctx: Context) -> str | None:
        seen, bad = 0, []
        for i, j in itertools.combinations(range(len(ctx.orthos)), 2):
            t1, t2 = ctx.orthos[i], ctx.orthos[j]
            if intersection_size(t1, t2) != size:
                continue
            seen += 1
            if ctx.graph.adjacency[i][j] != adjacent or intersection_adjacency(t1, t2) != adjacent:
                bad.append((i, j))
        if not seen:
            return f"no pairs with |A44 & A44'| = {size}"
        if bad:
            i, j = bad[0]
            return (
                f"{len(bad)} of {seen} pairs with |A44 & A44'| = {size} are "
                f"{'not ' if adjacent else ''}orthogonal; first {(i, j)}: "
                f"{ctx.show(ctx.orthos[i])} / {ctx.show(ctx.orthos[j])}"
            )
        return None
    return check


def _table_row(row: int) -> Callable[[Context], str | None]:
    def check(ctx: Context) -> str | None:
        seen = 0
        for i, t in enumerate(ctx.orthos):
            if table_row(classify_form(t), ctx.group) != row:
                continue
            seen += 1
            partners = {ctx.graph.index(p) for p in predicted_partners(t)}
            if partners != set(ctx.graph.neighbors(i)):
                return f"{ctx.show(t)}: predicted {sorted(partners)}, neighbours {ctx.graph.neighbors(i)}"
            for p in predicted_partners(t):
                if t not in predicted_partners(p):
                    return f"{ctx.show(t)} missing from partners of {ctx.show(p)}"
        return None if seen else f"row {row} never used"
    return check


def _cor3(ctx: Context) -> str | None:
    omega = clique_number(ctx.graph)
    if omega != 2:
        return f"clique number {omega}"
    for i, j in ctx.graph.edges():
        common = set(ctx.graph.neighbors(i)) & set(ctx.graph.neighbors(j))
        if common:
            return f"triangle on {(i, j, min(common))}"
    return None


def _cor4_alpha(ctx: Context) -> str | None:
    auts = set(ctx.auts)
    for t in ctx.orthos:
        alpha = alpha_of(t)
        if alpha not in auts:
            return f"alpha of {ctx.show(t)} not in Aut"
        psi1, psi2 = predicted_partners(t)
        if homology(alpha, psi1) != psi2:
            return f"alpha does not conjugate the partners of {ctx.show(t)}"
        quad = four_cycle_of(t)
        if quad[2] != homology(alpha, t):
            return f"theta^alpha is not antipodal for {ctx.show(t)}"
    return None


def _cor4_cycles(ctx: Context) -> str | None:
    report = component_report(ctx.graph)
    if report.degree_histogram != {2: 48}:
        return f"degrees {report.degree_histogram}"
    if report.sizes != [4] * 12 or not all(report.cycle_flags):
        return f"component sizes {report.sizes}"
    quads = four_cycle_decomposition(ctx.orthos)
    got = sorted(tuple(sorted(ctx.graph.index(t) for t in q)) for q in quads)
    if got != sorted(report.components):
        return "4-cycle cover differs from the components"
    return None


GENERIC_CHECKS: list[tuple[str, Callable[[Context], str | None]]] = [
    ("GROUP-AXIOMS", _group_axioms),
    ("AUT-GROUP", _aut_group),
    ("ENUM-SORTED", _enum_sorted),
    ("ORTH-INVARIANTS", _orth_invariants),
    ("GRAPH-SYMMETRY", _graph_symmetry),
    ("LATIN-ORACLE", _latin_oracle),
    ("HOMOLOGY", _homology),
    ("CLIQUE-ORACLE", _clique_oracle),
]

Z2XZ4_CHECKS: list[tuple[str, Callable[[Context], str | None]]] = [
    ("THM1-COUNT", _thm1_count),
    ("THM1-FORMS", _thm1_forms),
    ("REM1", _remark1),
    ("LEM1", _lemma1),
    ("COR1", _cor1),
    ("COR2", _cor2),
    ("PROP1", _prop1),
    ("LEM2", _lemma2),
    ("PROP2", _intersection_check(2, False)),
    ("PROP3", _intersection_check(1, False)),
    ("PROP4", _intersection_check(0, True)),
    *[(f"TAB1-ROW{r}", _table_row(r)) for r in range(1, 7)],
    ("COR3", _cor3),
    ("COR4-ALPHA", _cor4_alpha),
    ("COR4-CYCLES", _cor4_cycles),
]


def run_checks(ctx: Context) -> list[CheckResult]:
    checks = list(GENERIC_CHECKS)
    if ctx.is_z2xz4:
        checks += Z2XZ4_CHECKS
    results = []
    for statement, check in checks:
        try:
            detail = check(ctx)
        except VerificationError as exc:
            detail = str(exc)
        results.append(CheckResult(statement, detail is None, detail or ""))
    return results


def format_report(results: list[CheckResult]) -> str:
    return "".join(r.line() + "\n" for r in results)
