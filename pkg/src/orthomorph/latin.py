"""Latin squares built from orthomorphisms, used to re-check orthogonality.

Nothing here calls into :mod:`orthomorph.graph`; orthogonality of two squares
is decided purely by scanning the superimposed symbol pairs.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .groups import FiniteGroup

__all__ = ["LatinSquare", "to_latin_square", "latin_orthogonal", "is_latin"]


def is_latin(cells: Sequence[Sequence[int]]) -> bool:
    n = len(cells)
    symbols = set(range(n))
    if any(len(row) != n or set(row) != symbols for row in cells):
        return False
    return all({cells[i][j] for i in range(n)} == symbols for j in range(n))


@dataclass(frozen=True)
class LatinSquare:
    cells: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        cells = tuple(tuple(row) for row in self.cells)
        object.__setattr__(self, "cells", cells)
        if not is_latin(cells):
            raise ValueError("rows and columns must each be permutations of 0..n-1")

    @property
    def order(self) -> int:
        return len(self.cells)

    def to_text(self) -> str:
        return "\n".join(" ".join(str(v) for v in row) for row in self.cells) + "\n"


def to_latin_square(group: FiniteGroup, theta: Sequence[int]) -> LatinSquare:
    """The square with cell (i, j) = g_i * theta(g_j).

    ``theta`` may be any permutation of the elements; the identity
    permutation gives the Cayley table itself.
    """
    images = theta.images if hasattr(theta, "images") else tuple(theta)
    mul = group.mul
    return LatinSquare(tuple(tuple(mul[i][t] for t in images) for i in group.elements()))


def latin_orthogonal(first: LatinSquare, second: LatinSquare) -> bool:
    """Whether superimposing the squares yields each ordered symbol pair exactly once."""
    if first.order != second.order:
        raise ValueError(f"order mismatch: {first.order} vs {second.order}")
    pairs = {
        (u, v)
        for row1, row2 in zip(first.cells, second.cells)
        for u, v in zip(row1, row2)
    }
    return len(pairs) == first.order ** 2
