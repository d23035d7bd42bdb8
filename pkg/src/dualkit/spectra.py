"""Prime filters, ultrafilters and spectra of finite set-lattices.

The map ``phi`` sends a filter U of subsets of J to ``{i : R(i) in U}``;
:func:`verify_duality` checks that it identifies the spectrum of the
generated lattice/algebra with the distinct columns of the structure.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

from .context import IncidenceStructure, cols_family, column_classes, rows_family
from .errors import GroundMismatch, KindError, SizeError
from .poset import Poset
from .sets import Subset, indices_of
from .setfam import DEFAULT_MEMBER_CAP, GeneratedFamily, generate_boolean, generate_bounded_lattice

__all__ = [
    "MAX_SPECTRUM_FAMILY",
    "Filter",
    "Spectrum",
    "DualityReport",
    "is_filter",
    "is_prime",
    "prime_filters",
    "prime_filters_via_irreducibles",
    "ultrafilters",
    "point_filter",
    "phi_map",
    "in_basic_open",
    "spectrum",
    "order_isomorphic_via",
    "verify_duality",
]

MAX_SPECTRUM_FAMILY = 1 << 16


@dataclass(frozen=True)
class Filter:
    """A set of members of ``family``, given by member indices."""

    family: GeneratedFamily
    indices: frozenset[int]

    @property
    def masks(self) -> list[int]:
        ms = self.family.members.masks
        return [ms[k] for k in sorted(self.indices)]

    def __contains__(self, item) -> bool:
        members = self.family.members
        if item not in members:
            return False
        return members.index(item) in self.indices

    def __le__(self, other: Filter) -> bool:
        return self.indices <= other.indices

    def __len__(self) -> int:
        return len(self.indices)

    def key(self) -> tuple[int, ...]:
        return tuple(sorted(self.indices))

    def __repr__(self) -> str:
        body = ", ".join("{" + ",".join(map(str, indices_of(m))) + "}" for m in self.masks)
        return f"Filter([{body}])"


@dataclass(frozen=True)
class Spectrum:
    family: GeneratedFamily
    points: tuple[Filter, ...]
    order: Poset
    phi_images: Optional[tuple[Subset, ...]] = None

    def __len__(self) -> int:
        return len(self.points)


@dataclass
class DualityReport:
    passed: bool
    bijection: list[tuple[int, object]] = field(default_factory=list)
    order_iso: Optional[bool] = None
    failures: list[str] = field(default_factory=list)
    details: dict = field(default_factory=dict)


def _check_size(F: GeneratedFamily) -> None:
    if len(F.members) > MAX_SPECTRUM_FAMILY:
        raise SizeError(f"{len(F.members)} members exceed {MAX_SPECTRUM_FAMILY}")


def is_filter(F: GeneratedFamily, masks: set[int], proper: bool = True) -> bool:
    """Nonempty, (proper,) upward closed within F and closed under intersection."""
    if not masks:
        return False
    if proper and 0 in masks:
        return False
    members = F.members.masks
    for a in masks:
        for x in members:
            if a & ~x == 0 and x not in masks:
                return False
    elems = list(masks)
    for k, a in enumerate(elems):
        for b in elems[k + 1:]:
            if a & b not in masks:
                return False
    return True


def is_prime(F: GeneratedFamily, masks: set[int]) -> bool:
    """A | B in the set forces A or B in it, over all pairs of members."""
    outside = [x for x in F.members.masks if x not in masks]
    for k, a in enumerate(outside):
        for b in outside[k:]:
            if a | b in masks:
                return False
    return True


def _principal(F: GeneratedFamily, a: int) -> set[int]:
    return {x for x in F.members.masks if a & ~x == 0}


def _as_filter(F: GeneratedFamily, masks: set[int]) -> Filter:
    members = F.members
    return Filter(F, frozenset(members.index(m) for m in masks))


def prime_filters(F: GeneratedFamily) -> list[Filter]:
    """Proper prime filters, tested from the definition.

    In a finite family every filter is the up-set of its least member, so
    the candidates are the up-sets of the nonempty members.
    """
    _check_size(F)
    out = []
    for a in F.members.masks:
        if a == 0:
            continue
        cand = _principal(F, a)
        if is_prime(F, cand) and is_filter(F, cand):
            out.append(_as_filter(F, cand))
    out.sort(key=Filter.key)
    return out


def prime_filters_via_irreducibles(F: GeneratedFamily) -> list[Filter]:
    """Up-sets of join-irreducible members: nonempty members that are not the
    union of the members strictly below them."""
    _check_size(F)
    masks = F.members.masks
    out = []
    for a in masks:
        if a == 0:
            continue
        below = 0
        for x in masks:
            if x != a and x & ~a == 0:
                below |= x
        if below != a:
            out.append(_as_filter(F, _principal(F, a)))
    out.sort(key=Filter.key)
    return out


def ultrafilters(B: GeneratedFamily) -> list[Filter]:
    """Up-sets of the atoms of a Boolean family."""
    if B.kind != "boolean":
        raise KindError(f"ultrafilters need a boolean family, got {B.kind}")
    _check_size(B)
    nonempty = [a for a in B.members.masks if a]
    atoms = [a for a in nonempty if not any(x != a and x & ~a == 0 for x in nonempty)]
    out = [_as_filter(B, _principal(B, a)) for a in atoms]
    out.sort(key=Filter.key)
    return out


def point_filter(L: GeneratedFamily, j: int) -> Filter:
    """Members containing the point j."""
    if not 0 <= j < L.ground:
        raise IndexError(f"point {j} outside ground of size {L.ground}")
    return _as_filter(L, {x for x in L.members.masks if (x >> j) & 1})


def phi_map(U: Filter, R: IncidenceStructure) -> Subset:
    """Row indices i whose row R(i) belongs to U."""
    if U.family.ground != R.n:
        raise GroundMismatch(f"filter over ground {U.family.ground}, structure has n={R.n}")
    masks = set(U.masks)
    return Subset(R.m, sum(1 << i for i, r in enumerate(R.rows) if r in masks))


def in_basic_open(X: Subset, F: Subset, G: Subset) -> bool:
    """Membership of X in the basic open set of sets containing F and missing G."""
    return F <= X and not (G & X).bits


def spectrum(F: GeneratedFamily, R: Optional[IncidenceStructure] = None) -> Spectrum:
    points = tuple(prime_filters(F))
    k = len(points)
    ups = tuple(
        sum(1 << b for b in range(k) if points[a].indices <= points[b].indices)
        for a in range(k)
    )
    images = tuple(phi_map(U, R) for U in points) if R is not None else None
    return Spectrum(F, points, Poset(k, ups), images)


def order_isomorphic_via(
    left: Sequence[object], right: Sequence[object], leq_left, leq_right
) -> bool:
    """Whether index-aligned ``left[k] -> right[k]`` is an order isomorphism."""
    n = len(left)
    return all(
        leq_left(left[a], left[b]) == leq_right(right[a], right[b])
        for a in range(n)
        for b in range(n)
    )


def verify_duality(R: IncidenceStructure, cap: int = DEFAULT_MEMBER_CAP) -> DualityReport:
    """Finite duality check for the row-generated algebra and lattice of R.

    (i) the ultrafilters of B(R) are c in number and phi maps them
    bijectively onto the distinct columns; (ii) phi maps the prime filters
    of L(R) bijectively onto the distinct columns, preserving and
    reflecting inclusion.
    """
    gens = rows_family(R)
    B = generate_boolean(gens, cap)
    L = generate_bounded_lattice(gens, cap)
    columns = cols_family(R)
    _, c = column_classes(R)
    failures: list[str] = []

    ultra = ultrafilters(B)
    if [u.key() for u in ultra] != [p.key() for p in prime_filters(B)]:
        failures.append("ultrafilters of B(R) differ from its prime filters")
    ultra_images = [phi_map(u, R) for u in ultra]
    if len(ultra) != c:
        failures.append(f"{len(ultra)} ultrafilters but {c} distinct columns")
    if len({s.bits for s in ultra_images}) != len(ultra_images):
        failures.append("phi is not injective on the ultrafilters")
    if {s.bits for s in ultra_images} != set(columns.masks):
        failures.append("phi(ultrafilters) differs from the distinct columns")

    spec_l = prime_filters(L)
    if [p.key() for p in spec_l] != [p.key() for p in prime_filters_via_irreducibles(L)]:
        failures.append("brute-force and join-irreducible prime filter enumerations disagree")
    lat_images = [phi_map(p, R) for p in spec_l]
    injective = len({s.bits for s in lat_images}) == len(lat_images)
    onto = {s.bits for s in lat_images} == set(columns.masks)
    order_iso = injective and onto and order_isomorphic_via(
        spec_l, lat_images, lambda u, v: u <= v, lambda x, y: x <= y
    )
    if not injective:
        failures.append("phi is not injective on Spec(L(R))")
    if not onto:
        failures.append("phi(Spec(L(R))) differs from the distinct columns")
    if injective and onto and not order_iso:
        failures.append("phi is not an order isomorphism on Spec(L(R))")

    return DualityReport(
        passed=not failures,
        bijection=[(k, img) for k, img in enumerate(ultra_images)],
        order_iso=order_iso,
        failures=failures,
        details={
            "c": c,
            "boolean_size": len(B.members),
            "lattice_size": len(L.members),
            "ultrafilters": len(ultra),
            "spec_lattice": len(spec_l),
            "lattice_images": [s.tolist() for s in lat_images],
        },
    )
