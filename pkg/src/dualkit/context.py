"""Incidence structures (formal contexts) and their Galois lattices."""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

from .errors import EmptyError, GroundMismatch, SizeError
from .poset import Poset
from .sets import SetFamily, Subset, full_mask, indices_of

__all__ = [
    "IncidenceStructure",
    "Concept",
    "GaloisLattice",
    "row",
    "col",
    "rows_family",
    "cols_family",
    "column_classes",
    "intent_of",
    "extent_of",
    "galois_lattice",
    "dual_structure",
    "poset_context",
    "random_structure",
]

# Exhaustive concept enumeration walks the power set of the smaller side.
MAX_ENUM_SIDE = 20


@dataclass(frozen=True)
class IncidenceStructure:
    """An m x n 0-1 matrix; ``rows[i]`` is the bitmask of R(i) over J."""

    m: int
    n: int
    rows: tuple[int, ...]

    def __post_init__(self):
        if self.m < 1 or self.n < 1:
            raise EmptyError(f"incidence structure needs m, n >= 1, got {self.m}x{self.n}")
        if len(self.rows) != self.m:
            raise ValueError(f"{len(self.rows)} rows for m={self.m}")
        top = 1 << self.n
        if any(r < 0 or r >= top for r in self.rows):
            raise ValueError("row mask exceeds column count")

    @classmethod
    def from_matrix(cls, matrix: Sequence[Sequence[int]]) -> IncidenceStructure:
        if not matrix:
            raise EmptyError("empty matrix")
        n = len(matrix[0])
        rows = []
        for r in matrix:
            if len(r) != n:
                raise ValueError("ragged matrix")
            rows.append(sum(1 << j for j, v in enumerate(r) if v))
        return cls(len(matrix), n, tuple(rows))

    def incident(self, i: int, j: int) -> bool:
        return bool((self.rows[i] >> j) & 1)

    def matrix(self) -> list[list[int]]:
        return [[int(self.incident(i, j)) for j in range(self.n)] for i in range(self.m)]

    @cached_property
    def cols(self) -> tuple[int, ...]:
        return tuple(
            sum(1 << i for i in range(self.m) if (self.rows[i] >> j) & 1)
            for j in range(self.n)
        )


@dataclass(frozen=True)
class Concept:
    extent: Subset
    intent: Subset


@dataclass(frozen=True)
class GaloisLattice:
    """Concepts sorted by extent mask; ordered by extent inclusion."""

    concepts: tuple[Concept, ...]

    def leq(self, a: int, b: int) -> bool:
        return self.concepts[a].extent <= self.concepts[b].extent

    def as_poset(self) -> Poset:
        k = len(self.concepts)
        ups = tuple(
            sum(1 << b for b in range(k) if self.leq(a, b)) for a in range(k)
        )
        return Poset(k, ups)

    def __len__(self) -> int:
        return len(self.concepts)


def row(R: IncidenceStructure, i: int) -> Subset:
    if not 0 <= i < R.m:
        raise IndexError(f"row {i} outside range({R.m})")
    return Subset(R.n, R.rows[i])


def col(R: IncidenceStructure, j: int) -> Subset:
    if not 0 <= j < R.n:
        raise IndexError(f"column {j} outside range({R.n})")
    return Subset(R.m, R.cols[j])


def rows_family(R: IncidenceStructure) -> SetFamily:
    return SetFamily.from_masks(R.n, R.rows)


def cols_family(R: IncidenceStructure) -> SetFamily:
    return SetFamily.from_masks(R.m, R.cols)


def column_classes(R: IncidenceStructure) -> tuple[list[Subset], int]:
    """Partition J by identical columns; classes ordered by least index."""
    by_col: dict[int, int] = {}
    for j, c in enumerate(R.cols):
        by_col[c] = by_col.get(c, 0) | (1 << j)
    classes = sorted(by_col.values(), key=lambda mask: (mask & -mask))
    return [Subset(R.n, mask) for mask in classes], len(classes)


def _intent_mask(R: IncidenceStructure, extent: int) -> int:
    out = full_mask(R.n)
    for i in indices_of(extent):
        out &= R.rows[i]
    return out


def _extent_mask(R: IncidenceStructure, intent: int) -> int:
    cols = R.cols
    out = full_mask(R.m)
    for j in indices_of(intent):
        out &= cols[j]
    return out


def intent_of(R: IncidenceStructure, X: Subset) -> Subset:
    """Attributes shared by every object of X (all of J when X is empty)."""
    if X.ground != R.m:
        raise GroundMismatch(f"object set over {X.ground}, structure has m={R.m}")
    return Subset(R.n, _intent_mask(R, X.bits))


def extent_of(R: IncidenceStructure, Y: Subset) -> Subset:
    if Y.ground != R.n:
        raise GroundMismatch(f"attribute set over {Y.ground}, structure has n={R.n}")
    return Subset(R.m, _extent_mask(R, Y.bits))


def galois_lattice(R: IncidenceStructure) -> GaloisLattice:
    """All concepts, found by closing every subset of the smaller side."""
    if min(R.m, R.n) > MAX_ENUM_SIDE:
        raise SizeError(f"both sides exceed {MAX_ENUM_SIDE}: {R.m}x{R.n}")
    extents = set()
    if R.m <= R.n:
        for X in range(1 << R.m):
            extents.add(_extent_mask(R, _intent_mask(R, X)))
    else:
        for Y in range(1 << R.n):
            extents.add(_extent_mask(R, Y))
    concepts = tuple(
        Concept(Subset(R.m, e), Subset(R.n, _intent_mask(R, e))) for e in sorted(extents)
    )
    return GaloisLattice(concepts)


def dual_structure(R: IncidenceStructure) -> IncidenceStructure:
    return IncidenceStructure(R.n, R.m, R.cols)


def poset_context(P: Poset) -> IncidenceStructure:
    """The structure (P, <=, P): row i is the up-set of i, column j the down-set of j."""
    return IncidenceStructure(P.size, P.size, P.ups)


def random_structure(
    rng: random.Random, max_m: int, max_n: int, density: float = 0.5
) -> IncidenceStructure:
    m = rng.randint(1, max_m)
    n = rng.randint(1, max_n)
    rows = tuple(
        sum(1 << j for j in range(n) if rng.random() < density) for _ in range(m)
    )
    return IncidenceStructure(m, n, rows)
