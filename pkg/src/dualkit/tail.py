"""Tail algebras and tail lattices of finite posets, and related checkers.

Every finite poset makes the equivalent ideal/closure conditions hold, so
the checkers here evaluate each condition independently and report whether
they agree rather than assuming it.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator, Optional, Sequence

from .context import poset_context
from .errors import GroundMismatch, NotBounded, NotDistributive, NotMonotone, SizeError
from .poset import (
    MAX_SCAN,
    Poset,
    build_poset,
    finitely_generated_final_segments,
    final_segments,
    greatest_element,
    ideals,
    inclusion_poset,
    initial_segments,
    is_up_closed,
    join_irreducibles,
    join_table,
    least_element,
    meet_table,
    up_family,
    _up_mask,
    _upper_bounds_mask,
)
from .errors import NotJoinSemilattice
from .sets import SetFamily, Subset, full_mask, indices_of
from .setfam import DEFAULT_MEMBER_CAP, GeneratedFamily, generate_boolean, generate_bounded_lattice
from .spectra import (
    DualityReport,
    order_isomorphic_via,
    phi_map,
    prime_filters,
    prime_filters_via_irreducibles,
    ultrafilters,
)

__all__ = [
    "FREE_CAP",
    "FreeBooleanAlgebra",
    "PropositionReport",
    "BirkhoffWitness",
    "tailalg",
    "taillat",
    "closure_member",
    "closure_of_down",
    "closure_of_family",
    "is_closed_family",
    "check_pps",
    "check_prop_ideals",
    "check_cor_ideauxclos",
    "add_least_element",
    "is_distributive",
    "birkhoff_iso",
    "fg_final_ideals_iso",
    "free_boolean",
    "monotone_maps",
    "boolean_extensions",
    "universal_property_check",
]

FREE_CAP = 20


@dataclass(frozen=True)
class FreeBooleanAlgebra:
    """Free Boolean algebra over ``base``, realised on the finitely generated
    final segments ``fg``; ``embed[x]`` is the set of indices of segments
    containing x."""

    base: Poset
    fg: SetFamily
    carrier: GeneratedFamily
    embed: tuple[int, ...]


@dataclass
class PropositionReport:
    clauses: dict[str, bool]
    witnesses: dict[str, object] = field(default_factory=dict)
    raw: dict[str, object] = field(default_factory=dict)

    @property
    def all_equal(self) -> bool:
        return len(set(self.clauses.values())) <= 1

    @property
    def passed(self) -> bool:
        return self.all_equal


@dataclass(frozen=True)
class BirkhoffWitness:
    lattice: Poset
    irreducibles: tuple[int, ...]
    base: Optional[Poset]
    phi: tuple[int, ...]
    is_iso: bool


def tailalg(P: Poset, cap: int = DEFAULT_MEMBER_CAP) -> GeneratedFamily:
    return generate_boolean(up_family(P), cap)


def taillat(P: Poset, cap: int = DEFAULT_MEMBER_CAP) -> GeneratedFamily:
    return generate_bounded_lattice(up_family(P), cap)


def _mask_of(P: Poset, X: Subset) -> int:
    if X.ground != P.size:
        raise GroundMismatch(f"subset over {X.ground}, poset of size {P.size}")
    return X.bits


def closure_member(P: Poset, X: Subset) -> bool:
    """Whether X lies in the closure of the principal initial segments.

    The test over all finite F in X, G outside X reduces to F = X,
    G = complement of X: upper bounds shrink as F grows and the up-set of G
    grows with G.
    """
    x = _mask_of(P, X)
    rest = full_mask(P.size) & ~x
    return bool(_upper_bounds_mask(P, x) & ~_up_mask(P, rest))


def closure_of_down(P: Poset) -> SetFamily:
    if P.size > MAX_SCAN:
        raise SizeError(f"poset of size {P.size} too large to scan")
    return SetFamily.from_masks(
        P.size, (x for x in range(1 << P.size) if closure_member(P, Subset(P.size, x)))
    )


def closure_of_family(family: SetFamily) -> SetFamily:
    """Topological closure in the power set: X is kept when every basic
    neighbourhood O(F, G) of X (F in X, G outside X) meets the family.
    The smallest neighbourhood is F = X, G = complement."""
    ground = family.ground
    if ground > MAX_SCAN:
        raise SizeError(f"ground of size {ground} too large to scan")
    top = full_mask(ground)
    out = []
    for x in range(1 << ground):
        rest = top & ~x
        if any(x & ~y == 0 and not (y & rest) for y in family.masks):
            out.append(x)
    return SetFamily.from_masks(ground, out)


def is_closed_family(family: SetFamily) -> bool:
    return closure_of_family(family) == family


def check_pps(P: Poset, cap: int = DEFAULT_MEMBER_CAP) -> DualityReport:
    """Ultrafilters of Tailalg(P) and the prime-filter order of Taillat(P)
    against the closure of the principal initial segments."""
    R = poset_context(P)
    closure = closure_of_down(P)
    failures: list[str] = []

    A = tailalg(P, cap)
    ultra = ultrafilters(A)
    if [u.key() for u in ultra] != [p.key() for p in prime_filters(A)]:
        failures.append("ultrafilters of Tailalg differ from its prime filters")
    ultra_images = [phi_map(u, R) for u in ultra]
    if len({s.bits for s in ultra_images}) != len(ultra):
        failures.append("phi not injective on ultrafilters of Tailalg")
    if {s.bits for s in ultra_images} != set(closure.masks):
        failures.append("phi(ultrafilters of Tailalg) differs from the closure of down(P)")

    L = taillat(P, cap)
    spec = prime_filters(L)
    if [p.key() for p in spec] != [p.key() for p in prime_filters_via_irreducibles(L)]:
        failures.append("prime filter enumerations of Taillat disagree")
    images = [phi_map(p, R) for p in spec]
    bijective = (
        len({s.bits for s in images}) == len(spec)
        and {s.bits for s in images} == set(closure.masks)
    )
    order_iso = bijective and order_isomorphic_via(
        spec, images, lambda u, v: u <= v, lambda a, b: a <= b
    )
    if not bijective:
        failures.append("phi is not a bijection from Spec(Taillat) onto the closure")
    elif not order_iso:
        failures.append("phi is not an order isomorphism on Spec(Taillat)")

    # Spec(Taillat) against P itself: each image is a principal down-set
    downs = {d: x for x, d in enumerate(P.downs)}
    elements = [downs.get(s.bits) for s in images]
    iso_to_p = (
        None not in elements
        and sorted(elements) == list(range(P.size))
        and order_isomorphic_via(spec, elements, lambda u, v: u <= v, P.leq)
    )
    if not iso_to_p:
        failures.append("Spec(Taillat) is not order-isomorphic to P")

    return DualityReport(
        passed=not failures,
        bijection=[(k, s) for k, s in enumerate(ultra_images)],
        order_iso=order_iso,
        failures=failures,
        details={
            "tailalg_size": len(A.members),
            "taillat_size": len(L.members),
            "closure": closure.tolists(),
            "spec_to_element": elements,
            "spec_iso_to_poset": iso_to_p,
        },
    )


def _is_meet_semilattice(Q: Poset) -> bool:
    try:
        meet_table(Q)
    except NotJoinSemilattice:
        return False
    return True


def check_prop_ideals(P: Poset) -> PropositionReport:
    """Evaluate the five equivalent ideal conditions literally.

    The tail-lattice clause is reported twice: as a literal family equality
    and modulo the bounds that a generated bounded lattice always contains.
    """
    ground = P.size
    top = full_mask(ground)
    J = ideals(P)
    J_empty = J.union(SetFamily(ground, (0,)))
    closure = closure_of_down(P)
    fg = finitely_generated_final_segments(P)
    tl = taillat(P).members

    clause_a = is_closed_family(J_empty)
    clause_b = set(J.masks) == set(closure.masks) - {0}
    clause_c = is_up_closed(P)
    clause_d = _is_meet_semilattice(inclusion_poset(fg))
    expected = set(fg.masks) | {top}
    clause_e = set(tl.masks) == expected
    clause_e_mod = set(tl.masks) | {0, top} == expected | {0, top}

    return PropositionReport(
        clauses={"a": clause_a, "b": clause_b, "c": clause_c, "d": clause_d, "e": clause_e_mod},
        raw={
            "e_literal": clause_e,
            "taillat": tl.tolists(),
            "fg_final_plus_top": SetFamily.from_masks(ground, expected).tolists(),
            "ideals": J.tolists(),
            "closure_of_down": closure.tolists(),
        },
    )


def check_cor_ideauxclos(P: Poset) -> tuple[bool, bool]:
    """(ideals form a closed family, P is finitely generated as a final
    segment and P is up-closed); the two must agree."""
    lhs = is_closed_family(ideals(P))
    rhs = full_mask(P.size) in finitely_generated_final_segments(P) and is_up_closed(P)
    return lhs, rhs


def add_least_element(P: Poset) -> Poset:
    """P with a new least element appended as index ``P.size``."""
    n = P.size
    pairs = [(x, y) for x in range(n) for y in indices_of(P.ups[x]) if x != y]
    pairs += [(n, x) for x in range(n)]
    labels = None
    if P.labels is not None:
        labels = P.labels + ("bottom",)
    return build_poset(n + 1, pairs, labels)


def is_distributive(L: Poset) -> bool:
    join = join_table(L)
    meet = meet_table(L)
    n = L.size
    return all(
        meet[a][join[b][c]] == join[meet[a][b]][meet[a][c]]
        for a in range(n)
        for b in range(n)
        for c in range(n)
    )


def birkhoff_iso(L: Poset) -> BirkhoffWitness:
    """Map each x to the join-irreducibles below it and check the map is an
    isomorphism onto the initial segments of the join-irreducibles."""
    if least_element(L) is None or greatest_element(L) is None:
        raise NotBounded("lattice needs a least and a greatest element")
    try:
        distributive = is_distributive(L)
    except NotJoinSemilattice as exc:
        raise NotDistributive(f"not a lattice: {exc}") from None
    if not distributive:
        raise NotDistributive("distributive law fails")
    q_elems = tuple(join_irreducibles(L))
    pos = {x: k for k, x in enumerate(q_elems)}
    phi = tuple(
        sum(1 << k for k, q in enumerate(q_elems) if L.leq(q, x)) for x in range(L.size)
    )
    if q_elems:
        Q = build_poset(
            len(q_elems), [(pos[a], pos[b]) for a in q_elems for b in q_elems if L.leq(a, b)]
        )
        targets = set(initial_segments(Q).masks)
    else:
        # one-element lattice: no irreducibles, the only segment is empty
        Q = None
        targets = {0}
    is_iso = (
        len(set(phi)) == L.size
        and set(phi) == targets
        and order_isomorphic_via(
            list(range(L.size)), phi, L.leq, lambda a, b: a & ~b == 0
        )
    )
    return BirkhoffWitness(L, q_elems, Q, phi, is_iso)


def fg_final_ideals_iso(P: Poset) -> bool:
    """Final segments of P against ideals of (finitely generated final
    segments, inclusion), via S -> {T in F_fin : T subset of S}."""
    finals = final_segments(P)
    fg = finitely_generated_final_segments(P)
    Q = inclusion_poset(fg)
    targets = set(ideals(Q).masks)
    image = [
        sum(1 << k for k, t in enumerate(fg.masks) if t & ~s == 0) for s in finals.masks
    ]
    return (
        len(set(image)) == len(finals)
        and set(image) == targets
        and order_isomorphic_via(
            finals.masks, image, lambda a, b: a & ~b == 0, lambda a, b: a & ~b == 0
        )
    )


def free_boolean(P: Poset, cap: int = FREE_CAP) -> FreeBooleanAlgebra:
    """Tail algebra of (finitely generated final segments, inclusion)."""
    fg = finitely_generated_final_segments(P)
    if len(fg) > cap:
        raise SizeError(f"{len(fg)} finitely generated final segments exceed cap {cap}")
    Q = inclusion_poset(fg)
    carrier = tailalg(Q)
    embed = tuple(
        sum(1 << k for k, t in enumerate(fg.masks) if (t >> x) & 1) for x in range(P.size)
    )
    return FreeBooleanAlgebra(P, fg, carrier, embed)


def _check_monotone(P: Poset, f: Sequence[int]) -> None:
    for x in range(P.size):
        for y in indices_of(P.ups[x]):
            if f[x] & ~f[y]:
                raise NotMonotone(f"{P.name(x)} <= {P.name(y)} but f({x}) not below f({y})")


def monotone_maps(P: Poset, B: GeneratedFamily) -> Iterator[tuple[int, ...]]:
    """Order-preserving maps from P to the members of B, by backtracking."""
    order = sorted(range(P.size), key=lambda x: (bin(P.downs[x]).count("1"), x))
    members = B.members.masks
    value: dict[int, int] = {}

    def extend(k: int) -> Iterator[tuple[int, ...]]:
        if k == len(order):
            yield tuple(value[x] for x in range(P.size))
            return
        x = order[k]
        below = [value[y] for y in indices_of(P.downs[x]) if y != x]
        for m in members:
            if all(b & ~m == 0 for b in below):
                value[x] = m
                yield from extend(k + 1)
        value.pop(x, None)

    return extend(0)


def _atoms(F: GeneratedFamily) -> list[int]:
    nonempty = [a for a in F.members.masks if a]
    return [a for a in nonempty if not any(x != a and x & ~a == 0 for x in nonempty)]


def _is_boolean_hom(
    A: GeneratedFamily, B: GeneratedFamily, h: dict[int, int], atoms: Sequence[int]
) -> bool:
    # joins with atoms suffice: every member is a union of atoms
    topA, topB = full_mask(A.ground), full_mask(B.ground)
    if h[0] != 0 or h[topA] != topB:
        return False
    for a in A.members.masks:
        if h[topA ^ a] != topB ^ h[a]:
            return False
        for t in atoms:
            if h[a | t] != h[a] | h[t]:
                return False
    return True


def boolean_extensions(
    fb: FreeBooleanAlgebra, B: GeneratedFamily, f: Sequence[int]
) -> list[dict[int, int]]:
    """Every Boolean homomorphism from the free algebra to B that agrees with
    f on the embedded poset.

    A homomorphism is fixed by its values on the atoms, which must be
    pairwise disjoint with union the top of B; the search assigns atoms in
    order and prunes with the constraint h(embed(x)) = f(x).
    """
    A = fb.carrier
    atoms = _atoms(A)
    topB = full_mask(B.ground)
    P = fb.base
    allowed = []
    for a in atoms:
        opts = []
        for y in B.members.masks:
            ok = True
            for x in range(P.size):
                if a & ~fb.embed[x] == 0:
                    ok = y & ~f[x] == 0
                else:
                    ok = not (y & f[x])
                if not ok:
                    break
            if ok:
                opts.append(y)
        allowed.append(opts)

    found = []
    images = [0] * len(atoms)

    def search(k: int, used: int) -> None:
        if k == len(atoms):
            if used != topB:
                return
            h = {}
            for z in A.members.masks:
                v = 0
                for a, img in zip(atoms, images):
                    if a & ~z == 0:
                        v |= img
                h[z] = v
            if _is_boolean_hom(A, B, h, atoms) and all(
                h[fb.embed[x]] == f[x] for x in range(P.size)
            ):
                found.append(h)
            return
        for y in allowed[k]:
            if not (y & used):
                images[k] = y
                search(k + 1, used | y)

    search(0, 0)
    return found


def universal_property_check(
    P: Poset,
    B: GeneratedFamily,
    f: Sequence[int | Subset],
    fb: Optional[FreeBooleanAlgebra] = None,
) -> bool:
    """True iff exactly one homomorphism of the free algebra into B extends f."""
    fmasks = [v.bits if isinstance(v, Subset) else v for v in f]
    if len(fmasks) != P.size:
        raise ValueError(f"map has {len(fmasks)} values for {P.size} elements")
    for v in fmasks:
        if v not in B.members:
            raise ValueError(f"value {v:#x} is not a member of B")
    _check_monotone(P, fmasks)
    if fb is None:
        fb = free_boolean(P)
    if len(fb.carrier.members) * len(B.members) > DEFAULT_MEMBER_CAP:
        raise SizeError("free algebra and target too large for exhaustive search")
    return len(boolean_extensions(fb, B, fmasks)) == 1
