"""Normalized orthomorphisms: validation, enumeration and the order partition."""

from __future__ import annotations

import logging
import re
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Iterable, Sequence

from .groups import EnumerationBoundError, FiniteGroup, GroupError, GroupMap

__all__ = [
    "Orthomorphism",
    "OrderPartition",
    "DEFAULT_MAX_ORDER",
    "complete_mapping",
    "orthomorphism_defect",
    "is_orthomorphism",
    "enumerate_orthomorphisms",
    "order_partition",
    "check_lemma1",
    "cycles",
    "format_cycles",
    "parse_cycles",
    "from_cycles",
]

log = logging.getLogger(__name__)

DEFAULT_MAX_ORDER = 12


def complete_mapping(group: FiniteGroup, theta: Sequence[int]) -> GroupMap:
    """The map x -> x^-1 theta(x). No bijectivity is assumed either way."""
    mul, inv = group.mul, group.inv
    return tuple(mul[inv[i]][t] for i, t in enumerate(theta))


def orthomorphism_defect(group: FiniteGroup, m: Sequence[int]) -> str | None:
    """Why ``m`` is not a normalized orthomorphism of ``group``, or None if it is."""
    n = group.order
    if len(m) != n:
        return f"expected {n} images, got {len(m)}"
    if any(not isinstance(v, int) or not 0 <= v < n for v in m):
        return f"images must be element indices in 0..{n - 1}"
    if len(set(m)) != n:
        return "map is not a bijection"
    if m[0] != 0:
        return "map does not fix the identity"
    phi = complete_mapping(group, m)
    if len(set(phi)) != n:
        return "complete mapping x -> x^-1 theta(x) is not a bijection"
    return None


def is_orthomorphism(group: FiniteGroup, m: Sequence[int]) -> bool:
    defect = orthomorphism_defect(group, m)
    if defect is not None:
        log.debug("not an orthomorphism of %s: %s", group.name or "group", defect)
        return False
    return True


@dataclass(frozen=True)
class Orthomorphism:
    """A normalized orthomorphism; ``images[i]`` is the image of element i."""

    group: FiniteGroup
    images: GroupMap

    def __post_init__(self) -> None:
        images = tuple(self.images)
        object.__setattr__(self, "images", images)
        defect = orthomorphism_defect(self.group, images)
        if defect is not None:
            raise ValueError(f"not an orthomorphism: {defect}")
        # Only the identity may be fixed; this follows from the above, checked anyway.
        fixed = [i for i, v in enumerate(images) if v == i]
        if fixed != [0]:
            raise ValueError(f"orthomorphism fixes non-identity elements {fixed[1:]}")

    def __call__(self, g: int) -> int:
        return self.images[g]

    def __len__(self) -> int:
        return len(self.images)

    @property
    def phi(self) -> GroupMap:
        return complete_mapping(self.group, self.images)

    def cycle_notation(self) -> str:
        return format_cycles(self.group, self.images)

    def __str__(self) -> str:
        return self.cycle_notation()


def _search(group: FiniteGroup, prefix: tuple[int, ...]) -> list[GroupMap]:
    """All orthomorphisms whose images start with ``prefix`` (which begins with 0)."""
    n = group.order
    mul, inv = group.mul, group.inv
    images = list(prefix) + [0] * (n - len(prefix))
    used_img = 0
    used_phi = 0
    for i, t in enumerate(prefix):
        p = mul[inv[i]][t]
        if used_img >> t & 1 or used_phi >> p & 1:
            return []
        used_img |= 1 << t
        used_phi |= 1 << p
    out: list[GroupMap] = []
    rows = [mul[inv[i]] for i in range(n)]

    def extend(i: int, used_img: int, used_phi: int) -> None:
        if i == n:
            out.append(tuple(images))
            return
        row = rows[i]
        for t in range(1, n):
            if used_img >> t & 1:
                continue
            p = row[t]
            if used_phi >> p & 1:
                continue
            images[i] = t
            extend(i + 1, used_img | 1 << t, used_phi | 1 << p)

    extend(len(prefix), used_img, used_phi)
    return out


def enumerate_orthomorphisms(
    group: FiniteGroup,
    max_order: int = DEFAULT_MAX_ORDER,
    jobs: int = 1,
) -> list[Orthomorphism]:
    """Every normalized orthomorphism of ``group``, sorted by image array.

    Images are assigned to elements 1, 2, ... in turn. Two bitmasks track the
    images and complete-mapping values already taken, so a branch dies at the
    first collision. With ``jobs > 1`` the branches for the image of element 1
    are searched on a thread pool and concatenated in order, which gives the
    same result as the serial search.
    """
    n = group.order
    if n > max_order:
        raise EnumerationBoundError("orthomorphism enumeration", n, max_order)
    if n == 1:
        return [Orthomorphism(group, (0,))]
    if jobs > 1:
        prefixes = [(0, t) for t in range(1, n)]
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            chunks = list(pool.map(lambda p: _search(group, p), prefixes))
        found = [m for chunk in chunks for m in chunk]
    else:
        found = _search(group, (0,))
    return [Orthomorphism(group, m) for m in found]


@dataclass(frozen=True)
class OrderPartition:
    """Non-identity elements split by (order of x, order of theta(x))."""

    a44: frozenset[int]
    a42: frozenset[int]
    a24: frozenset[int]
    a22: frozenset[int]

    def sizes(self) -> tuple[int, int, int, int]:
        return len(self.a44), len(self.a42), len(self.a24), len(self.a22)


def _require_exponent_four(group: FiniteGroup) -> None:
    bad = [g for g, o in enumerate(group.elem_order) if o not in (1, 2, 4)]
    if bad:
        raise GroupError(
            f"order partition needs element orders in {{1, 2, 4}}; "
            f"element {group.labels[bad[0]]} has order {group.elem_order[bad[0]]}"
        )


def _partition(group: FiniteGroup, theta: Sequence[int]) -> OrderPartition:
    orders = group.elem_order
    cells: dict[tuple[int, int], set[int]] = {(4, 4): set(), (4, 2): set(), (2, 4): set(), (2, 2): set()}
    for g in group.elements():
        key = (orders[g], orders[theta[g]])
        if key in cells:
            cells[key].add(g)
    return OrderPartition(*(frozenset(cells[k]) for k in ((4, 4), (4, 2), (2, 4), (2, 2))))


def order_partition(theta: Orthomorphism) -> OrderPartition:
    _require_exponent_four(theta.group)
    return _partition(theta.group, theta.images)


def _disjoint_union_is(families: Iterable[Iterable[int]], target: frozenset[int]) -> bool:
    """True when the listed families are pairwise disjoint (as multisets) and cover ``target`` exactly."""
    items = [v for family in families for v in family]
    return len(items) == len(set(items)) and set(items) == target


def check_lemma1(group: FiniteGroup, theta: Sequence[int]) -> tuple[bool, bool]:
    """Evaluate the order-partition criteria for a map on an exponent-4 group.

    Returns ``(bijection_ok, orthomorphism_ok)``. The first says the images of
    the order-4 rows cover the order-4 elements exactly once, and likewise for
    order 2. The second additionally asks the same of the complete-mapping
    values, with the roles of the rows crossed.
    """
    _require_exponent_four(group)
    if len(theta) != group.order or any(not 0 <= v < group.order for v in theta):
        return False, False
    part = _partition(group, theta)
    fours, twos = group.elements_of_order(4), group.elements_of_order(2)
    phi = complete_mapping(group, theta)

    def img(s: frozenset[int]) -> list[int]:
        return [theta[g] for g in s]

    def cm(s: frozenset[int]) -> list[int]:
        return [phi[g] for g in s]

    bijection_ok = (
        _disjoint_union_is([img(part.a44), img(part.a24)], fours)
        and _disjoint_union_is([img(part.a42), img(part.a22)], twos)
    )
    orthomorphism_ok = (
        bijection_ok
        and _disjoint_union_is([cm(part.a42), cm(part.a24)], fours)
        and _disjoint_union_is([cm(part.a44), cm(part.a22)], twos)
    )
    return bijection_ok, orthomorphism_ok


def cycles(perm: Sequence[int]) -> list[tuple[int, ...]]:
    """Nontrivial cycles, each rotated to start at its least element, sorted by that element."""
    seen = [False] * len(perm)
    out = []
    for start in range(len(perm)):
        if seen[start] or perm[start] == start:
            seen[start] = True
            continue
        cyc = []
        g = start
        while not seen[g]:
            seen[g] = True
            cyc.append(g)
            g = perm[g]
        out.append(tuple(cyc))
    return out


def format_cycles(group: FiniteGroup, perm: Sequence[int]) -> str:
    parts = cycles(perm)
    if not parts:
        return "()"
    return "".join("(" + " ".join(group.labels[g] for g in c) + ")" for c in parts)


_LABEL = re.compile(r"\([^()\s]*\)|[^()\s]+")


def parse_cycles(group: FiniteGroup, text: str) -> list[tuple[int, ...]]:
    """Parse cycle notation such as ``((0,1) (1,1))((1,0) (0,2) (1,2))``.

    Labels are the group's display labels; inside a cycle they are separated
    by whitespace.
    """
    out: list[tuple[int, ...]] = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        if text[pos].isspace():
            pos += 1
            continue
        if text[pos] != "(":
            raise ValueError(f"expected '(' at position {pos} in {text!r}")
        depth, end = 0, pos
        for end in range(pos, len(text)):
            depth += {"(": 1, ")": -1}.get(text[end], 0)
            if depth == 0:
                break
        if depth != 0:
            raise ValueError(f"unbalanced parentheses in {text!r}")
        body = text[pos + 1:end]
        out.append(tuple(group.index(tok) for tok in _LABEL.findall(body)))
        pos = end + 1
    return [c for c in out if c]


def from_cycles(group: FiniteGroup, cycle_list: Iterable[Sequence[int]]) -> GroupMap:
    """Permutation with the given disjoint cycles; cycle (c0 c1 ...) sends c0 to c1."""
    perm = list(group.elements())
    touched: set[int] = set()
    for cyc in cycle_list:
        if touched.intersection(cyc) or len(set(cyc)) != len(cyc):
            raise ValueError(f"cycles are not disjoint: {cyc}")
        touched.update(cyc)
        for k, g in enumerate(cyc):
            perm[g] = cyc[(k + 1) % len(cyc)]
    return tuple(perm)
