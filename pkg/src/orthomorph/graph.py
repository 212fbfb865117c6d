"""Orthogonality, the orthomorphism graph, its cliques, components and homologies."""

from __future__ import annotations

import json
from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Sequence

from .groups import FiniteGroup, GroupError, GroupMap, inverse_map, is_automorphism
from .orthomorphisms import Orthomorphism, format_cycles, order_partition

__all__ = [
    "OrthGraph",
    "ComponentReport",
    "are_orthogonal",
    "difference_map",
    "lemma2_orthogonal",
    "build_graph",
    "clique_number",
    "component_report",
    "homology",
    "to_dot",
    "to_json",
    "graph_document",
    "describe",
]


def _same_group(t1: Orthomorphism, t2: Orthomorphism) -> FiniteGroup:
    if t1.group != t2.group:
        raise GroupError("orthomorphisms belong to different groups")
    return t1.group


def difference_map(t1: Orthomorphism, t2: Orthomorphism) -> GroupMap:
    """x -> theta1(x)^-1 theta2(x)."""
    g = _same_group(t1, t2)
    mul, inv = g.mul, g.inv
    return tuple(mul[inv[a]][b] for a, b in zip(t1.images, t2.images))


def are_orthogonal(t1: Orthomorphism, t2: Orthomorphism) -> bool:
    return len(set(difference_map(t1, t2))) == len(t1)


def lemma2_orthogonal(t1: Orthomorphism, t2: Orthomorphism) -> bool:
    """Orthogonality decided cell by cell over the two order partitions.

    On the cells where x keeps its order class under both maps, plus where it
    lands in A44 for one map and A42 for the other, the difference values
    must be laid out so the "same target order" cells fill the order-2
    elements exactly once and the "crossed" cells fill the order-4 elements
    exactly once.
    """
    g = _same_group(t1, t2)
    p, q = order_partition(t1), order_partition(t2)
    diff = difference_map(t1, t2)

    def vals(*cells: frozenset[int]) -> list[int]:
        return [diff[x] for cell in cells for x in cell]

    same = vals(p.a44 & q.a44, p.a24 & q.a24, p.a42 & q.a42, p.a22 & q.a22)
    crossed = vals(p.a44 & q.a42, p.a42 & q.a44, p.a24 & q.a22, p.a22 & q.a24)
    return (
        len(same) == len(set(same)) and set(same) == g.elements_of_order(2)
        and len(crossed) == len(set(crossed)) and set(crossed) == g.elements_of_order(4)
    )


@dataclass(frozen=True)
class OrthGraph:
    vertices: tuple[Orthomorphism, ...]
    adjacency: tuple[tuple[bool, ...], ...]

    def __len__(self) -> int:
        return len(self.vertices)

    @property
    def group(self) -> FiniteGroup | None:
        return self.vertices[0].group if self.vertices else None

    def neighbors(self, i: int) -> list[int]:
        return [j for j, adj in enumerate(self.adjacency[i]) if adj]

    def degree(self, i: int) -> int:
        return sum(self.adjacency[i])

    def edges(self) -> list[tuple[int, int]]:
        n = len(self.vertices)
        return [(i, j) for i in range(n) for j in range(i + 1, n) if self.adjacency[i][j]]

    def index(self, theta: Orthomorphism) -> int:
        return self.vertices.index(theta)


def build_graph(orthos: Sequence[Orthomorphism], jobs: int = 1) -> OrthGraph:
    vertices = tuple(orthos)
    if vertices:
        first = vertices[0].group
        if any(v.group != first for v in vertices):
            raise GroupError("all vertices must be orthomorphisms of the same group")
    n = len(vertices)

    def row(i: int) -> list[bool]:
        return [are_orthogonal(vertices[i], vertices[j]) for j in range(i + 1, n)]

    if jobs > 1 and n > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            upper = list(pool.map(row, range(n)))
    else:
        upper = [row(i) for i in range(n)]

    adj = [[False] * n for _ in range(n)]
    for i, r in enumerate(upper):
        for k, flag in enumerate(r):
            j = i + 1 + k
            adj[i][j] = adj[j][i] = flag
    return OrthGraph(vertices, tuple(tuple(r) for r in adj))


def clique_number(graph: OrthGraph) -> int:
    """Size of a largest clique (0 for the empty graph).

    Bron-Kerbosch with Tomita pivoting on integer bitsets, abandoning any
    branch that cannot beat the best clique found so far.
    """
    n = len(graph)
    nbr = [sum(1 << j for j in graph.neighbors(i)) for i in range(n)]
    best = 0

    def expand(size: int, cand: int, excl: int) -> None:
        nonlocal best
        if not cand and not excl:
            best = max(best, size)
            return
        if size + cand.bit_count() <= best:
            return
        pool = cand | excl
        pivot = max(_bits(pool), key=lambda u: (cand & nbr[u]).bit_count())
        for v in _bits(cand & ~nbr[pivot]):
            bit = 1 << v
            expand(size + 1, cand & nbr[v], excl & nbr[v])
            cand &= ~bit
            excl |= bit
            if size + cand.bit_count() <= best:
                return

    expand(0, (1 << n) - 1, 0)
    return best


def _bits(mask: int) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


@dataclass(frozen=True)
class ComponentReport:
    components: tuple[tuple[int, ...], ...]
    cycle_flags: tuple[bool, ...]
    degree_histogram: dict[int, int]

    @property
    def sizes(self) -> list[int]:
        return [len(c) for c in self.components]


def component_report(graph: OrthGraph) -> ComponentReport:
    """Connected components (ordered by least vertex) and which of them are simple cycles."""
    n = len(graph)
    seen = [False] * n
    components = []
    for start in range(n):
        if seen[start]:
            continue
        seen[start] = True
        stack, comp = [start], []
        while stack:
            v = stack.pop()
            comp.append(v)
            for w in graph.neighbors(v):
                if not seen[w]:
                    seen[w] = True
                    stack.append(w)
        components.append(tuple(sorted(comp)))
    # Component vertices only have neighbours inside the component.
    flags = tuple(len(c) >= 3 and all(graph.degree(v) == 2 for v in c) for c in components)
    hist = Counter(graph.degree(v) for v in range(n))
    return ComponentReport(tuple(components), flags, dict(sorted(hist.items())))


def homology(f: Sequence[int], theta: Orthomorphism) -> Orthomorphism:
    """The conjugate f . theta . f^-1 of an orthomorphism by a group automorphism."""
    group = theta.group
    if not is_automorphism(group, f):
        raise GroupError("homology needs an automorphism of the group")
    f_inv = inverse_map(f)
    images = tuple(f[theta.images[f_inv[i]]] for i in group.elements())
    try:
        return Orthomorphism(group, images)
    except ValueError as exc:  # pragma: no cover - would contradict the theory
        raise AssertionError(f"conjugate of {theta} is not an orthomorphism") from exc


def to_dot(graph: OrthGraph, *, cycle_labels: bool = False, name: str = "orth") -> str:
    lines = [f"graph {name} {{"]
    for i, v in enumerate(graph.vertices):
        label = f"{i}: {v.cycle_notation()}" if cycle_labels else str(i)
        lines.append(f'  {i} [label="{label}"];')
    for i, j in graph.edges():
        lines.append(f"  {i} -- {j};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def graph_document(graph: OrthGraph, group_name: str) -> dict:
    report = component_report(graph)
    return {
        "schema": 1,
        "group": group_name,
        "vertices": [list(v.images) for v in graph.vertices],
        "edges": [list(e) for e in graph.edges()],
        "components": [list(c) for c in report.components],
    }


def to_json(graph: OrthGraph, group_name: str) -> str:
    return json.dumps(graph_document(graph, group_name), indent=2) + "\n"


def describe(graph: OrthGraph) -> str:
    """Short text summary: counts, degree histogram and one line per edge."""
    report = component_report(graph)
    g = graph.group
    lines = [
        f"vertices {len(graph)}",
        f"edges {len(graph.edges())}",
        f"components {len(report.components)}",
        "component sizes " + " ".join(str(s) for s in report.sizes),
        f"cycles {sum(report.cycle_flags)}",
        "degrees " + " ".join(f"{d}:{c}" for d, c in report.degree_histogram.items()),
    ]
    for i, j in graph.edges():
        a = format_cycles(g, graph.vertices[i].images) if g else ""
        b = format_cycles(g, graph.vertices[j].images) if g else ""
        lines.append(f"{i} -- {j}  {a}  {b}")
    return "\n".join(lines) + "\n"
