"""The orthomorphisms of Z2 x Z4 and the structure of their graph.

Every orthomorphism theta of Z2 x Z4 is pinned down by three elements: the
single order-2 element x that theta sends to an order-2 element, the single
order-4 element a that sends to order 4 but is not itself hit from order 4,
and theta(x). Writing ax for a*x and so on, theta is one of four cycle
templates in (a, ax, ax.tx, x.tx, a.tx, x, tx) where tx = theta(x). Forms I
and IV need x.tx = a^2, forms II and III need x.tx != a^2.

Two distinct orthomorphisms are orthogonal exactly when their A44 sets (the
order-4 elements with order-4 images) are disjoint. Each orthomorphism has
exactly two neighbours, given by explicit templates, and the neighbours are
swapped by conjugating with alpha = (a ax)(ax.tx a.tx). The graph is twelve
disjoint 4-cycles.

Failures here mean the computed structure disagrees with those statements,
so they raise :class:`VerificationError` instead of returning False.
"""

from __future__ import annotations

import enum
from collections import Counter
from dataclasses import dataclass
from typing import Sequence

from .groups import (
    FiniteGroup,
    GroupError,
    GroupMap,
    compose,
    identity_map,
    is_automorphism,
    parse_group_spec,
)
from .graph import are_orthogonal, homology
from .orthomorphisms import Orthomorphism, from_cycles, order_partition

__all__ = [
    "Form",
    "CycleForm",
    "VerificationError",
    "z2xz4",
    "require_z2xz4",
    "anchor",
    "construct_form",
    "classify_form",
    "intersection_size",
    "intersection_adjacency",
    "table_row",
    "predicted_partners",
    "alpha_of",
    "four_cycle_of",
    "four_cycle_decomposition",
]


class VerificationError(AssertionError):
    """A structural statement about Z2 x Z4 failed; ``statement`` names which one."""

    def __init__(self, statement: str, detail: str) -> None:
        super().__init__(f"{statement}: {detail}")
        self.statement = statement
        self.detail = detail


class Form(enum.Enum):
    I = "I"
    II = "II"
    III = "III"
    IV = "IV"

    @property
    def needs_square(self) -> bool:
        """Whether x.theta(x) must equal a^2 for this form."""
        return self in (Form.I, Form.IV)


def z2xz4() -> FiniteGroup:
    return parse_group_spec("z2xz4")


def require_z2xz4(group: FiniteGroup) -> None:
    """Reject groups that are not Z2 x Z4 up to isomorphism.

    Among groups of order 8 only Z2 x Z4 has three involutions and four
    elements of order 4, and it is abelian.
    """
    counts = Counter(group.elem_order)
    if group.order != 8 or counts != Counter({1: 1, 2: 3, 4: 4}) or not group.is_abelian():
        raise GroupError(f"expected Z2 x Z4, got a group of order {group.order}")


@dataclass(frozen=True)
class CycleForm:
    form: Form
    a: int
    x: int
    theta_x: int

    def describe(self, group: FiniteGroup) -> str:
        lab = group.labels
        return f"form {self.form.value} a={lab[self.a]} x={lab[self.x]} theta(x)={lab[self.theta_x]}"


@dataclass(frozen=True)
class _Words:
    """The seven non-identity elements named by a, x and tx = theta(x)."""

    a: int
    ax: int
    axt: int
    xt: int
    at: int
    x: int
    t: int
    a2: int

    @classmethod
    def of(cls, g: FiniteGroup, a: int, x: int, t: int) -> "_Words":
        ax = g.op(a, x)
        return cls(a=a, ax=ax, axt=g.op(ax, t), xt=g.op(x, t), at=g.op(a, t), x=x, t=t, a2=g.op(a, a))


def _validate(group: FiniteGroup, cf: CycleForm) -> _Words:
    orders, lab = group.elem_order, group.labels
    if orders[cf.a] != 4:
        raise ValueError(f"a = {lab[cf.a]} must have order 4")
    if orders[cf.x] != 2 or orders[cf.theta_x] != 2:
        raise ValueError("x and theta(x) must both have order 2")
    if cf.x == cf.theta_x:
        raise ValueError("x and theta(x) must differ")
    w = _Words.of(group, cf.a, cf.x, cf.theta_x)
    if cf.form.needs_square and w.xt != w.a2:
        raise ValueError(f"form {cf.form.value} requires x*theta(x) = a^2")
    if not cf.form.needs_square and w.xt == w.a2:
        raise ValueError(f"form {cf.form.value} requires x*theta(x) != a^2")
    return w


def _template(w: _Words, form: Form) -> list[tuple[int, ...]]:
    if form is Form.I:
        return [(w.a, w.ax, w.axt, w.xt, w.at, w.x, w.t)]
    if form is Form.II:
        return [(w.a, w.ax, w.axt, w.xt), (w.t, w.at, w.x)]
    if form is Form.III:
        return [(w.a, w.ax, w.axt, w.x, w.t), (w.at, w.xt)]
    return [(w.a, w.ax, w.axt, w.x, w.t, w.at, w.xt)]


def construct_form(group: FiniteGroup, cf: CycleForm) -> Orthomorphism:
    """Instantiate one of the four cycle templates; raises ValueError on bad parameters."""
    require_z2xz4(group)
    w = _validate(group, cf)
    perm = from_cycles(group, _template(w, cf.form))
    try:
        return Orthomorphism(group, perm)
    except ValueError as exc:
        raise VerificationError("THM1-FORMS", f"{cf.describe(group)} is not an orthomorphism") from exc


def anchor(theta: Orthomorphism) -> tuple[int, int]:
    """The pair (a, x): x the lone A22 element, a the lone element of A44 outside theta(A44)."""
    require_z2xz4(theta.group)
    part = order_partition(theta)
    if len(part.a22) != 1:
        raise VerificationError("COR1", f"|A22| = {len(part.a22)} for {theta}")
    outside = part.a44 - {theta(g) for g in part.a44}
    if len(outside) != 1:
        raise VerificationError("PROP1", f"|A44 \\ theta(A44)| = {len(outside)} for {theta}")
    (x,) = part.a22
    (a,) = outside
    return a, x


def classify_form(theta: Orthomorphism) -> CycleForm:
    group = theta.group
    a, x = anchor(theta)
    t = theta(x)
    w = _Words.of(group, a, x, t)
    matches = [
        form for form in Form
        if form.needs_square == (w.xt == w.a2)
        and from_cycles(group, _template(w, form)) == theta.images
    ]
    if len(matches) != 1:
        raise VerificationError("THM1-FORMS", f"{len(matches)} templates match {theta}")
    return CycleForm(matches[0], a, x, t)


def intersection_size(t1: Orthomorphism, t2: Orthomorphism) -> int:
    return len(order_partition(t1).a44 & order_partition(t2).a44)


def intersection_adjacency(t1: Orthomorphism, t2: Orthomorphism) -> bool:
    """Orthogonality predicted from A44 sets alone: disjoint means orthogonal."""
    require_z2xz4(t1.group)
    if t1 == t2:
        raise ValueError("intersection adjacency relates distinct orthomorphisms")
    return intersection_size(t1, t2) == 0


def table_row(cf: CycleForm, group: FiniteGroup) -> int:
    """Row 1-6 of the partner table for a classified orthomorphism.

    Forms II and III split on which of x and theta(x) equals a^2; one of
    them must, since a^2 has order 2 and x.theta(x) != a^2.
    """
    if cf.form is Form.I:
        return 1
    if cf.form is Form.IV:
        return 2
    a2 = group.op(cf.a, cf.a)
    if a2 == cf.x:
        side = 0
    elif a2 == cf.theta_x:
        side = 1
    else:
        raise VerificationError("TAB1", f"neither x nor theta(x) is a^2 for {cf.describe(group)}")
    return (3 if cf.form is Form.II else 5) + side


def _partner_templates(w: _Words, row: int) -> tuple[list[tuple[int, ...]], list[tuple[int, ...]]]:
    if row == 1:
        return ([(w.at, w.axt, w.a, w.t), (w.x, w.xt, w.ax)],
                [(w.axt, w.at, w.ax, w.t), (w.x, w.xt, w.a)])
    if row in (2, 3):
        return ([(w.at, w.axt, w.a, w.x, w.xt), (w.ax, w.t)],
                [(w.axt, w.at, w.ax, w.x, w.xt), (w.a, w.t)])
    if row == 4:
        return ([(w.at, w.axt, w.a, w.t, w.ax, w.x, w.xt)],
                [(w.axt, w.at, w.ax, w.t, w.a, w.x, w.xt)])
    if row == 5:
        return ([(w.at, w.axt, w.a, w.t), (w.ax, w.x, w.xt)],
                [(w.axt, w.at, w.ax, w.t), (w.a, w.x, w.xt)])
    if row == 6:
        return ([(w.at, w.axt, w.a, w.x, w.xt, w.ax, w.t)],
                [(w.axt, w.at, w.ax, w.x, w.xt, w.a, w.t)])
    raise ValueError(f"no partner row {row}")


def predicted_partners(theta: Orthomorphism) -> tuple[Orthomorphism, Orthomorphism]:
    """The two orthomorphisms the partner table pairs with ``theta``.

    Both are checked to be orthomorphisms orthogonal to ``theta``.
    """
    group = theta.group
    cf = classify_form(theta)
    row = table_row(cf, group)
    w = _Words.of(group, cf.a, cf.x, cf.theta_x)
    out = []
    for cyc in _partner_templates(w, row):
        perm = from_cycles(group, cyc)
        try:
            psi = Orthomorphism(group, perm)
        except ValueError as exc:
            raise VerificationError(f"TAB1-ROW{row}", f"partner of {theta} is not an orthomorphism") from exc
        if not are_orthogonal(theta, psi):
            raise VerificationError(f"TAB1-ROW{row}", f"{psi} is not orthogonal to {theta}")
        out.append(psi)
    return out[0], out[1]


def alpha_of(theta: Orthomorphism) -> GroupMap:
    """The automorphism (a ax)(ax.theta(x) a.theta(x)) attached to ``theta``."""
    group = theta.group
    cf = classify_form(theta)
    w = _Words.of(group, cf.a, cf.x, cf.theta_x)
    alpha = from_cycles(group, [(w.a, w.ax), (w.axt, w.at)])
    if not is_automorphism(group, alpha):
        raise VerificationError("COR4-ALPHA", f"alpha for {theta} is not an automorphism")
    if compose(alpha, alpha) != identity_map(group):
        raise VerificationError("COR4-ALPHA", f"alpha for {theta} is not an involution")
    return alpha


def four_cycle_of(theta: Orthomorphism) -> tuple[Orthomorphism, Orthomorphism, Orthomorphism, Orthomorphism]:
    """``(theta, psi1, theta^alpha, psi2)``, checked to induce the 4-cycle in that order."""
    psi1, psi2 = predicted_partners(theta)
    conj = homology(alpha_of(theta), theta)
    quad = (theta, psi1, conj, psi2)
    if len(set(quad)) != 4:
        raise VerificationError("COR4-CYCLES", f"4-cycle through {theta} has repeated vertices")
    for i in range(4):
        for j in range(i + 1, 4):
            want = (j - i) % 2 == 1
            if are_orthogonal(quad[i], quad[j]) != want:
                kind = "edge" if want else "non-edge"
                raise VerificationError("COR4-CYCLES", f"expected {kind} between {quad[i]} and {quad[j]}")
    return quad


def four_cycle_decomposition(orthos: Sequence[Orthomorphism]) -> list[tuple[Orthomorphism, ...]]:
    """Walk the vertices in order, emitting the 4-cycle of each not yet covered."""
    covered: set[Orthomorphism] = set()
    out = []
    for theta in orthos:
        if theta in covered:
            continue
        quad = four_cycle_of(theta)
        if covered.intersection(quad):
            raise VerificationError("COR4-CYCLES", f"4-cycle of {theta} overlaps an earlier one")
        covered.update(quad)
        out.append(quad)
    if covered != set(orthos):
        raise VerificationError("COR4-CYCLES", "4-cycles reach outside the given orthomorphisms")
    return out
