"""Bounded sublattices and Boolean subalgebras of a power set, generated from a family.

Closure is a semi-naive fixpoint: each round combines only the members
discovered in the previous round with everything known so far.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Literal, Optional

from .context import IncidenceStructure, column_classes
from .errors import GroundMismatch, SizeError
from .sets import SetFamily, Subset, full_mask

__all__ = [
    "DEFAULT_MEMBER_CAP",
    "GeneratedFamily",
    "NotMember",
    "generate_bounded_lattice",
    "generate_boolean",
    "boolean_count_via_columns",
    "canonical_boolean_form",
]

DEFAULT_MEMBER_CAP = 1 << 20

Kind = Literal["lattice", "boolean"]


@dataclass(frozen=True)
class GeneratedFamily:
    kind: Kind
    ground: int
    members: SetFamily
    generators: SetFamily

    def __len__(self) -> int:
        return len(self.members)


class _NotMemberType:
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "NotMember"

    def __bool__(self) -> bool:
        return False


NotMember = _NotMemberType()


def _close(ground: int, seeds: set[int], complement: bool, cap: int) -> set[int]:
    top = full_mask(ground)
    known: set[int] = set(seeds)
    if complement:
        known |= {top ^ s for s in seeds}
    if len(known) > cap:
        raise SizeError(f"closure exceeds cap of {cap} members")
    frontier = list(known)
    while frontier:
        snapshot = list(known)
        found: set[int] = set()
        for a in frontier:
            for b in snapshot:
                u = a | b
                i = a & b
                if u not in known:
                    found.add(u)
                if i not in known:
                    found.add(i)
            if complement:
                c = top ^ a
                if c not in known:
                    found.add(c)
        if complement:
            found |= {top ^ f for f in found} - known
        known |= found
        if len(known) > cap:
            raise SizeError(f"closure exceeds cap of {cap} members")
        frontier = list(found)
    return known


def _seeds(gens: SetFamily) -> set[int]:
    return set(gens.masks) | {0, full_mask(gens.ground)}


def generate_bounded_lattice(gens: SetFamily, cap: int = DEFAULT_MEMBER_CAP) -> GeneratedFamily:
    """Least family containing gens, the empty set and the ground set, closed
    under union and intersection."""
    if gens.ground < 1:
        raise GroundMismatch("ground set must be nonempty")
    members = _close(gens.ground, _seeds(gens), complement=False, cap=cap)
    return GeneratedFamily("lattice", gens.ground, SetFamily.from_masks(gens.ground, members), gens)


def generate_boolean(gens: SetFamily, cap: int = DEFAULT_MEMBER_CAP) -> GeneratedFamily:
    """Least family containing gens closed under union and complement
    relative to the ground set."""
    if gens.ground < 1:
        raise GroundMismatch("ground set must be nonempty")
    members = _close(gens.ground, _seeds(gens), complement=True, cap=cap)
    return GeneratedFamily("boolean", gens.ground, SetFamily.from_masks(gens.ground, members), gens)


def boolean_count_via_columns(R: IncidenceStructure) -> int:
    """Size of the Boolean algebra generated by the rows: 2 ** (distinct columns)."""
    _, c = column_classes(R)
    return 1 << c


def canonical_boolean_form(R: IncidenceStructure, S: Subset) -> frozenset[int] | _NotMemberType:
    """Ids of the column classes whose union is S, or NotMember when S splits a class."""
    if S.ground != R.n:
        raise GroundMismatch(f"subset over {S.ground}, structure has n={R.n}")
    classes, _ = column_classes(R)
    ids = []
    for k, cls in enumerate(classes):
        overlap = cls.bits & S.bits
        if overlap == cls.bits:
            ids.append(k)
        elif overlap:
            return NotMember
    return frozenset(ids)


def reclose(family: GeneratedFamily, cap: Optional[int] = None) -> GeneratedFamily:
    """Regenerate ``family`` from its own members (idempotence check helper)."""
    gen = generate_boolean if family.kind == "boolean" else generate_bounded_lattice
    return gen(family.members, cap or DEFAULT_MEMBER_CAP)
