"""Finite posets, their segments, and the families derived from them."""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, Optional, Sequence

from .errors import CycleError, EmptyError, GroundMismatch, NotJoinSemilattice, SizeError
from .sets import SetFamily, Subset, full_mask, indices_of

__all__ = [
    "Poset",
    "build_poset",
    "chain",
    "antichain",
    "dual",
    "principal_up",
    "principal_down",
    "up_closure",
    "down_closure",
    "upper_bounds",
    "lower_bounds",
    "up_family",
    "down_family",
    "initial_segments",
    "finitely_generated_initial_segments",
    "ideals",
    "final_segments",
    "finitely_generated_final_segments",
    "filters",
    "is_up_closed",
    "inclusion_poset",
    "join_table",
    "meet_table",
    "least_element",
    "greatest_element",
    "join_irreducibles",
    "join_primes",
    "all_posets",
    "random_poset",
]

# Above this size the subset scans used by some checkers become impractical.
MAX_SCAN = 20


@dataclass(frozen=True)
class Poset:
    """A partial order on ``range(size)``.

    ``ups[x]`` is the bitmask of ``{y : x <= y}``.  Use :func:`build_poset`
    rather than the constructor; the constructor trusts its input.
    """

    size: int
    ups: tuple[int, ...]
    labels: Optional[tuple[str, ...]] = None

    def leq(self, x: int, y: int) -> bool:
        return bool((self.ups[x] >> y) & 1)

    @cached_property
    def downs(self) -> tuple[int, ...]:
        downs = [0] * self.size
        for x, up in enumerate(self.ups):
            for y in indices_of(up):
                downs[y] |= 1 << x
        return tuple(downs)

    def leq_matrix(self) -> list[list[bool]]:
        return [[self.leq(x, y) for y in range(self.size)] for x in range(self.size)]

    def cover_pairs(self) -> list[tuple[int, int]]:
        pairs = []
        for x in range(self.size):
            strict = self.ups[x] & ~(1 << x)
            for y in indices_of(strict):
                between = strict & self.downs[y] & ~(1 << y)
                if not between:
                    pairs.append((x, y))
        return pairs

    def name(self, x: int) -> str:
        return self.labels[x] if self.labels else str(x)

    def __repr__(self) -> str:
        return f"Poset({self.size}, covers={self.cover_pairs()})"


def _closure_rows(n: int, pairs: Iterable[tuple[int, int]]) -> list[int]:
    ups = [1 << x for x in range(n)]
    for x, y in pairs:
        if not (0 <= x < n and 0 <= y < n):
            raise IndexError(f"pair ({x}, {y}) outside range({n})")
        ups[x] |= 1 << y
    # Warshall on bit rows
    for k in range(n):
        bit = 1 << k
        row_k = ups[k]
        for x in range(n):
            if ups[x] & bit:
                ups[x] |= row_k
    return ups


def build_poset(
    n: int,
    relation_pairs: Iterable[tuple[int, int]] = (),
    labels: Optional[Sequence[str]] = None,
) -> Poset:
    """Reflexive-transitive closure of ``relation_pairs`` on ``range(n)``."""
    if n <= 0:
        raise EmptyError("a poset needs at least one element")
    if labels is not None and len(labels) != n:
        raise ValueError(f"{len(labels)} labels for {n} elements")
    ups = _closure_rows(n, relation_pairs)
    for x in range(n):
        for y in indices_of(ups[x] & ~(1 << x)):
            if (ups[y] >> x) & 1:
                raise CycleError(f"{x} <= {y} <= {x} with {x} != {y}")
    return Poset(n, tuple(ups), tuple(labels) if labels is not None else None)


def chain(n: int) -> Poset:
    return build_poset(n, [(i, i + 1) for i in range(n - 1)])


def antichain(n: int) -> Poset:
    return build_poset(n)


def dual(P: Poset) -> Poset:
    return Poset(P.size, P.downs, P.labels)


def _index(P: Poset, x: int) -> None:
    if not 0 <= x < P.size:
        raise IndexError(f"element {x} outside poset of size {P.size}")


def _ground(P: Poset, X: Subset) -> int:
    if X.ground != P.size:
        raise GroundMismatch(f"subset over {X.ground}, poset of size {P.size}")
    return X.bits


def principal_up(P: Poset, x: int) -> Subset:
    _index(P, x)
    return Subset(P.size, P.ups[x])


def principal_down(P: Poset, x: int) -> Subset:
    _index(P, x)
    return Subset(P.size, P.downs[x])


def _up_mask(P: Poset, mask: int) -> int:
    out = 0
    for x in indices_of(mask):
        out |= P.ups[x]
    return out


def _down_mask(P: Poset, mask: int) -> int:
    out = 0
    for x in indices_of(mask):
        out |= P.downs[x]
    return out


def _upper_bounds_mask(P: Poset, mask: int) -> int:
    out = full_mask(P.size)
    for x in indices_of(mask):
        out &= P.ups[x]
    return out


def _lower_bounds_mask(P: Poset, mask: int) -> int:
    out = full_mask(P.size)
    for x in indices_of(mask):
        out &= P.downs[x]
    return out


def up_closure(P: Poset, X: Subset) -> Subset:
    return Subset(P.size, _up_mask(P, _ground(P, X)))


def down_closure(P: Poset, X: Subset) -> Subset:
    return Subset(P.size, _down_mask(P, _ground(P, X)))


def upper_bounds(P: Poset, X: Subset) -> Subset:
    """Common upper bounds of X; the whole poset when X is empty."""
    return Subset(P.size, _upper_bounds_mask(P, _ground(P, X)))


def lower_bounds(P: Poset, X: Subset) -> Subset:
    return Subset(P.size, _lower_bounds_mask(P, _ground(P, X)))


def up_family(P: Poset) -> SetFamily:
    return SetFamily.from_masks(P.size, P.ups)


def down_family(P: Poset) -> SetFamily:
    return SetFamily.from_masks(P.size, P.downs)


def _linear_extension(P: Poset) -> list[int]:
    # number of strict predecessors is a valid sort key for a finite order
    return sorted(range(P.size), key=lambda x: (bin(P.downs[x]).count("1"), x))


def _down_set_masks(P: Poset) -> Iterator[int]:
    order = _linear_extension(P)
    n = P.size

    def extend(k: int, mask: int) -> Iterator[int]:
        if k == n:
            yield mask
            return
        x = order[k]
        yield from extend(k + 1, mask)
        below = P.downs[x] & ~(1 << x)
        if below & mask == below:
            yield from extend(k + 1, mask | (1 << x))

    return extend(0, 0)


def initial_segments(P: Poset) -> SetFamily:
    """All down-closed subsets, including the empty one."""
    return SetFamily.from_masks(P.size, _down_set_masks(P))


def finitely_generated_initial_segments(P: Poset) -> SetFamily:
    # unions of principal initial segments, grown to a fixpoint
    seen = {0}
    frontier = [0]
    while frontier:
        nxt = []
        for mask in frontier:
            for d in P.downs:
                m = mask | d
                if m not in seen:
                    seen.add(m)
                    nxt.append(m)
        frontier = nxt
    return SetFamily.from_masks(P.size, seen)


def _is_up_directed(P: Poset, mask: int) -> bool:
    elems = indices_of(mask)
    for a in elems:
        for b in elems:
            if b > a and not (P.ups[a] & P.ups[b] & mask):
                return False
    return True


def ideals(P: Poset) -> SetFamily:
    """Nonempty up-directed initial segments."""
    return SetFamily.from_masks(
        P.size, (m for m in _down_set_masks(P) if m and _is_up_directed(P, m))
    )


def final_segments(P: Poset) -> SetFamily:
    return initial_segments(dual(P))


def finitely_generated_final_segments(P: Poset) -> SetFamily:
    return finitely_generated_initial_segments(dual(P))


def filters(P: Poset) -> SetFamily:
    return ideals(dual(P))


def is_up_closed(P: Poset) -> bool:
    """Whether every intersection of two principal final segments is
    generated by its minimal elements (a possibly empty union of them)."""
    for x in range(P.size):
        for y in range(x + 1, P.size):
            meet = P.ups[x] & P.ups[y]
            minimal = 0
            for z in indices_of(meet):
                if not (P.downs[z] & ~(1 << z) & meet):
                    minimal |= 1 << z
            if _up_mask(P, minimal) != meet:
                return False
    return True


def inclusion_poset(family: SetFamily) -> Poset:
    """The members of ``family`` ordered by inclusion, indexed canonically."""
    masks = family.masks
    ups = []
    for a in masks:
        up = 0
        for k, b in enumerate(masks):
            if a & ~b == 0:
                up |= 1 << k
        ups.append(up)
    return Poset(len(masks), tuple(ups))


def _least_in(P: Poset, mask: int) -> Optional[int]:
    for z in indices_of(mask):
        if P.ups[z] & mask == mask:
            return z
    return None


def join_table(L: Poset) -> list[list[int]]:
    """``table[a][b]`` is the least upper bound of a and b."""
    n = L.size
    table = [[0] * n for _ in range(n)]
    for a in range(n):
        for b in range(a, n):
            z = _least_in(L, L.ups[a] & L.ups[b])
            if z is None:
                raise NotJoinSemilattice(f"{L.name(a)} and {L.name(b)} have no join")
            table[a][b] = table[b][a] = z
    return table


def meet_table(L: Poset) -> list[list[int]]:
    try:
        return join_table(dual(L))
    except NotJoinSemilattice as exc:
        raise NotJoinSemilattice(f"not a meet-semilattice: {exc}") from None


def least_element(P: Poset) -> Optional[int]:
    return _least_in(P, full_mask(P.size))


def greatest_element(P: Poset) -> Optional[int]:
    return least_element(dual(P))


def join_irreducibles(L: Poset) -> Subset:
    """Elements x other than the least one with x = a v b only for x in {a, b}."""
    table = join_table(L)
    bottom = least_element(L)
    out = 0
    for x in range(L.size):
        if x == bottom:
            continue
        if all(
            table[a][b] != x or x in (a, b)
            for a in range(L.size)
            for b in range(a, L.size)
        ):
            out |= 1 << x
    return Subset(L.size, out)


def join_primes(L: Poset) -> Subset:
    """Elements x other than the least one with x <= a v b forcing x <= a or x <= b."""
    table = join_table(L)
    bottom = least_element(L)
    out = 0
    for x in range(L.size):
        if x == bottom:
            continue
        if all(
            not L.leq(x, table[a][b]) or L.leq(x, a) or L.leq(x, b)
            for a in range(L.size)
            for b in range(a, L.size)
        ):
            out |= 1 << x
    return Subset(L.size, out)


def all_posets(n: int) -> Iterator[Poset]:
    """Every partial order on ``range(n)`` exactly once, for 1 <= n <= 5.

    Element ``n-1`` is added to each order on ``range(n-1)`` with every
    compatible choice of strict down-set D and strict up-set U (D
    down-closed, U up-closed, D entirely below U).
    """
    if not 1 <= n <= 5:
        raise SizeError(f"all_posets supports 1 <= n <= 5, got {n}")
    if n == 1:
        yield Poset(1, (1,))
        return
    new = n - 1
    for Q in all_posets(n - 1):
        segments = list(_down_set_masks(Q))
        finals = list(_down_set_masks(dual(Q)))
        for D in segments:
            above_all = _upper_bounds_mask(Q, D)
            for U in finals:
                if U & D or U & ~above_all:
                    continue
                ups = [Q.ups[x] | ((1 << new) | U if (D >> x) & 1 else 0) for x in range(new)]
                ups.append((1 << new) | U)
                yield Poset(n, tuple(ups))


def random_poset(n: int, rng: random.Random, density: float = 0.3) -> Poset:
    """Random order on ``range(n)``: closure of a random DAG on a shuffled order."""
    perm = list(range(n))
    rng.shuffle(perm)
    pairs = [
        (perm[a], perm[b])
        for a in range(n)
        for b in range(a + 1, n)
        if rng.random() < density
    ]
    return build_poset(n, pairs)
