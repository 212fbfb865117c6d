"""Finite groups given by Cayley tables, with elements indexed 0..n-1.

The identity is always index 0. Direct products index the pair (u, v) as
``u * |H| + v``, so the element labels of ``Z2 x Z4`` come out as
``(0,0), (0,1), ..., (1,3)`` in index order.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Sequence

__all__ = [
    "FiniteGroup",
    "GroupMap",
    "GroupError",
    "EnumerationBoundError",
    "ASSOCIATIVITY_CHECK_BOUND",
    "AUTOMORPHISM_BOUND",
    "build_cyclic",
    "direct_product",
    "element_order",
    "automorphisms",
    "is_automorphism",
    "compose",
    "inverse_map",
    "identity_map",
    "is_bijection",
    "parse_group_spec",
]

# A map G -> G as an array of element indices. Bijectivity is not implied.
GroupMap = tuple[int, ...]

ASSOCIATIVITY_CHECK_BOUND = 32
AUTOMORPHISM_BOUND = 12


class GroupError(ValueError):
    """Malformed group table or group specification."""


class EnumerationBoundError(ValueError):
    """The group is too large for an exhaustive search."""

    def __init__(self, what: str, order: int, bound: int) -> None:
        super().__init__(f"{what}: group order {order} exceeds bound {bound}")
        self.order = order
        self.bound = bound


def _orders_from_table(mul: Sequence[Sequence[int]]) -> tuple[int, ...]:
    orders = []
    for g in range(len(mul)):
        k, cur = 1, g
        while cur != 0:
            cur = mul[cur][g]
            k += 1
            if k > len(mul):
                raise GroupError(f"element {g} never returns to the identity")
        orders.append(k)
    return tuple(orders)


@dataclass(frozen=True)
class FiniteGroup:
    """A group of order n stored as its multiplication table.

    Only ``mul`` (and optionally ``labels``/``name``) is supplied; inverses and
    element orders are derived. All axioms are checked at construction;
    associativity only up to ``ASSOCIATIVITY_CHECK_BOUND`` elements, recorded
    in ``associativity_checked``.
    """

    mul: tuple[tuple[int, ...], ...]
    labels: tuple[str, ...] = ()
    name: str = ""
    inv: tuple[int, ...] = field(init=False, repr=False)
    elem_order: tuple[int, ...] = field(init=False, repr=False)
    associativity_checked: bool = field(init=False, repr=False, compare=False)

    identity = 0

    def __post_init__(self) -> None:
        mul = tuple(tuple(int(v) for v in row) for row in self.mul)
        object.__setattr__(self, "mul", mul)
        n = len(mul)
        if n == 0:
            raise GroupError("a group needs at least one element")
        full = set(range(n))
        for i, row in enumerate(mul):
            if len(row) != n or set(row) != full:
                raise GroupError(f"row {i} is not a permutation of 0..{n - 1}")
        for j in range(n):
            if {mul[i][j] for i in range(n)} != full:
                raise GroupError(f"column {j} is not a permutation of 0..{n - 1}")
        if any(mul[0][j] != j or mul[j][0] != j for j in range(n)):
            raise GroupError("index 0 must be a two-sided identity")

        checked = n <= ASSOCIATIVITY_CHECK_BOUND
        if checked:
            for a in range(n):
                ra = mul[a]
                for b in range(n):
                    rab = mul[ra[b]]
                    for c in range(n):
                        if rab[c] != ra[mul[b][c]]:
                            raise GroupError(f"not associative at ({a}, {b}, {c})")
        object.__setattr__(self, "associativity_checked", checked)

        inv = tuple(row.index(0) for row in mul)
        if any(mul[inv[i]][i] != 0 for i in range(n)):
            raise GroupError("left and right inverses disagree")
        object.__setattr__(self, "inv", inv)
        object.__setattr__(self, "elem_order", _orders_from_table(mul))

        if not self.labels:
            object.__setattr__(self, "labels", tuple(str(i) for i in range(n)))
        elif len(self.labels) != n:
            raise GroupError(f"expected {n} labels, got {len(self.labels)}")
        else:
            object.__setattr__(self, "labels", tuple(self.labels))

    @property
    def order(self) -> int:
        return len(self.mul)

    def __len__(self) -> int:
        return len(self.mul)

    def elements(self) -> range:
        return range(len(self.mul))

    def op(self, *elems: int) -> int:
        """Product of the given elements, left to right."""
        out = 0
        for g in elems:
            out = self.mul[out][g]
        return out

    def power(self, g: int, k: int) -> int:
        out = 0
        for _ in range(k % self.elem_order[g]):
            out = self.mul[out][g]
        return out

    def index(self, label: str) -> int:
        """Element index for a display label; whitespace is ignored."""
        key = re.sub(r"\s+", "", label)
        try:
            return self.labels.index(key)
        except ValueError:
            raise KeyError(f"no element labelled {label!r}") from None

    def elements_of_order(self, k: int) -> frozenset[int]:
        return frozenset(g for g, o in enumerate(self.elem_order) if o == k)

    def is_abelian(self) -> bool:
        m = self.mul
        return all(m[a][b] == m[b][a] for a in self.elements() for b in range(a))


def build_cyclic(n: int) -> FiniteGroup:
    """Z_n with element i at index i."""
    if n < 1:
        raise GroupError(f"cyclic group order must be positive, got {n}")
    mul = tuple(tuple((i + j) % n for j in range(n)) for i in range(n))
    return FiniteGroup(mul, name=f"Z{n}")


def direct_product(g: FiniteGroup, h: FiniteGroup) -> FiniteGroup:
    m = h.order
    mul = []
    for u1 in g.elements():
        for v1 in h.elements():
            mul.append(tuple(
                g.mul[u1][u2] * m + h.mul[v1][v2]
                for u2 in g.elements()
                for v2 in h.elements()
            ))
    labels = tuple(f"({lu},{lv})" for lu in g.labels for lv in h.labels)
    name = f"{g.name}x{h.name}" if g.name and h.name else ""
    return FiniteGroup(tuple(mul), labels=labels, name=name)


def element_order(group: FiniteGroup, g: int) -> int:
    if not 0 <= g < group.order:
        raise IndexError(f"element index {g} out of range for order {group.order}")
    return group.elem_order[g]


def is_bijection(m: Sequence[int], n: int) -> bool:
    return len(m) == n and set(m) == set(range(n))


def identity_map(group: FiniteGroup) -> GroupMap:
    return tuple(group.elements())


def compose(f: Sequence[int], g: Sequence[int]) -> GroupMap:
    """The map x -> f(g(x))."""
    return tuple(f[v] for v in g)


def inverse_map(f: Sequence[int]) -> GroupMap:
    out = [0] * len(f)
    for i, v in enumerate(f):
        out[v] = i
    return tuple(out)


def is_automorphism(group: FiniteGroup, f: Sequence[int]) -> bool:
    if not is_bijection(f, group.order):
        return False
    m = group.mul
    return all(f[m[a][b]] == m[f[a]][f[b]] for a in group.elements() for b in group.elements())


def automorphisms(group: FiniteGroup, bound: int = AUTOMORPHISM_BOUND) -> list[GroupMap]:
    """All automorphisms, in lexicographic order of their image arrays.

    Depth-first over images of 1, 2, ..., n-1. A candidate image must have
    the same element order and must keep every product of already-assigned
    elements consistent.
    """
    n = group.order
    if n > bound:
        raise EnumerationBoundError("automorphism enumeration", n, bound)
    mul, orders = group.mul, group.elem_order
    images = [-1] * n
    images[0] = 0
    used = [False] * n
    used[0] = True
    found: list[GroupMap] = []

    def consistent(i: int) -> bool:
        fi = images[i]
        for j in range(i + 1):
            fj = images[j]
            for a, b, fa, fb in ((i, j, fi, fj), (j, i, fj, fi)):
                p = mul[a][b]
                if images[p] >= 0 and images[p] != mul[fa][fb]:
                    return False
        return True

    def extend(i: int) -> None:
        if i == n:
            found.append(tuple(images))
            return
        for c in range(1, n):
            if used[c] or orders[c] != orders[i]:
                continue
            images[i] = c
            used[c] = True
            if consistent(i):
                extend(i + 1)
            used[c] = False
            images[i] = -1

    extend(1)
    return found


_ALIASES = {
    "z2xz4": "product:cyclic:2,cyclic:4",
    "klein": "product:cyclic:2,cyclic:2",
}
_CYCLIC = re.compile(r"cyclic:(\d+)$")


def _parse_cyclic(text: str) -> FiniteGroup:
    match = _CYCLIC.match(text.strip())
    if not match:
        raise GroupError(f"expected cyclic:N, got {text!r}")
    return build_cyclic(int(match.group(1)))


def parse_group_spec(spec: str) -> FiniteGroup:
    """Build a group from ``cyclic:N``, ``product:cyclic:A,cyclic:B`` or an alias.

    Products of more than two cyclic factors associate to the left.
    """
    text = spec.strip().lower()
    text = _ALIASES.get(text, text)
    if text.startswith("product:"):
        factors = [_parse_cyclic(part) for part in text[len("product:"):].split(",")]
        if len(factors) < 2:
            raise GroupError(f"a product needs at least two factors: {spec!r}")
        group = factors[0]
        for factor in factors[1:]:
            group = direct_product(group, factor)
        return group
    return _parse_cyclic(text)
