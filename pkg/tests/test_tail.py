import itertools

import pytest
from hypothesis import given

from dualkit import poset as po
from dualkit import tail
from dualkit.errors import NotBounded, NotDistributive, NotMonotone
from dualkit.selftest import _m3, _n5, _power_algebra, oracle_closure_member
from dualkit.setfam import generate_bounded_lattice
from dualkit.sets import SetFamily, Subset, full_mask

from conftest import families, posets

N4 = po.build_poset(4, [(0, 2), (1, 2), (1, 3)])


def test_tail_families_of_small_posets():
    C = po.chain(2)
    assert len(tail.tailalg(C).members) == 4
    assert tail.taillat(C).members.tolists() == [[], [1], [0, 1]]
    assert tail.tailalg(po.chain(1)).members.tolists() == [[], [0]]


def test_closure_member_examples():
    C = po.chain(2)
    assert tail.closure_member(C, Subset.of(2, [0]))
    assert not tail.closure_member(C, Subset.of(2, [1]))
    for P in (C, po.antichain(3), N4):
        assert not tail.closure_member(P, Subset.empty(P.size))


def test_closure_of_down_examples():
    assert tail.closure_of_down(po.antichain(2)).tolists() == [[0], [1]]
    assert len(tail.closure_of_down(po.chain(3))) == 3


@pytest.mark.parametrize("P", [po.chain(1), po.chain(2), po.antichain(2), N4])
def test_check_pps_examples(P):
    report = tail.check_pps(P)
    assert report.passed, report.failures
    assert report.details["spec_iso_to_poset"]


@pytest.mark.parametrize("P", [po.antichain(2), N4, po.chain(1)])
def test_prop_ideals_examples(P):
    report = tail.check_prop_ideals(P)
    assert all(report.clauses.values())
    assert tail.check_cor_ideauxclos(P) == (True, True)


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_prop_ideals_exhaustive(n):
    for P in po.all_posets(n):
        report = tail.check_prop_ideals(P)
        assert report.passed and all(report.clauses.values())
        assert report.raw["e_literal"]
        lhs, rhs = tail.check_cor_ideauxclos(P)
        assert lhs == rhs == True  # noqa: E712


def test_birkhoff_examples():
    B2 = po.inclusion_poset(SetFamily.from_masks(2, range(4)))
    w = tail.birkhoff_iso(B2)
    assert w.is_iso and w.base == po.antichain(2)
    w = tail.birkhoff_iso(po.chain(3))
    assert w.is_iso and w.base == po.chain(2)
    w = tail.birkhoff_iso(po.chain(2))
    assert w.is_iso and w.base.size == 1
    assert tail.birkhoff_iso(po.chain(1)).is_iso


def test_birkhoff_rejections():
    for L in (_m3(), _n5()):
        with pytest.raises(NotDistributive):
            tail.birkhoff_iso(L)
    with pytest.raises(NotBounded):
        tail.birkhoff_iso(po.antichain(2))
    # bounded but not a lattice: two incomparable middles under two tops merged
    bowtie = po.build_poset(6, [(0, 1), (0, 2), (1, 3), (2, 3), (1, 4), (2, 4), (3, 5), (4, 5)])
    with pytest.raises(NotDistributive):
        tail.birkhoff_iso(bowtie)


def test_fg_final_ideals_iso_examples():
    for P in (po.chain(1), po.chain(2), po.antichain(2), N4):
        assert tail.fg_final_ideals_iso(P)


def test_add_least_element():
    P = tail.add_least_element(po.antichain(2))
    assert P.size == 3 and po.least_element(P) is not None


def test_free_boolean_sizes():
    assert [len(tail.free_boolean(po.antichain(n)).carrier.members) for n in (1, 2, 3)] == [4, 16, 256]
    assert len(tail.free_boolean(po.chain(2)).carrier.members) == 8


def _all_monotone(P, B):
    ms = B.members.masks
    return [
        f for f in itertools.product(ms, repeat=P.size)
        if all(f[x] & ~f[y] == 0 for x in range(P.size) for y in range(P.size) if P.leq(x, y))
    ]


def _brute_extensions(fb, B, f):
    """Count Boolean homs FB -> B agreeing with f, over every map FB -> B."""
    A = fb.carrier.members.masks
    topA, topB = full_mask(fb.carrier.ground), full_mask(B.ground)
    count = 0
    for values in itertools.product(B.members.masks, repeat=len(A)):
        h = dict(zip(A, values))
        if h[0] != 0 or h[topA] != topB:
            continue
        if any(h[a | b] != h[a] | h[b] or h[a & b] != h[a] & h[b] for a in A for b in A):
            continue
        if any(h[topA ^ a] != topB ^ h[a] for a in A):
            continue
        if all(h[fb.embed[x]] == f[x] for x in range(fb.base.size)):
            count += 1
    return count


def test_universal_property_matches_brute_force():
    C = po.chain(2)
    B = _power_algebra(2)
    fb = tail.free_boolean(C)
    maps = _all_monotone(C, B)
    assert len(maps) == 9 == sum(1 for _ in tail.monotone_maps(C, B))
    for f in maps:
        assert _brute_extensions(fb, B, f) == 1
        assert tail.universal_property_check(C, B, f, fb)


def test_universal_property_examples():
    point = po.chain(1)
    B1 = _power_algebra(1)
    for f in ([0], [1]):
        assert tail.universal_property_check(point, B1, f)
    A2 = po.antichain(2)
    B2 = _power_algebra(2)
    assert tail.universal_property_check(A2, B2, [1, 1])
    with pytest.raises(NotMonotone):
        tail.universal_property_check(po.chain(2), B2, [3, 1])
    with pytest.raises(ValueError):
        tail.universal_property_check(point, B1, [4])


@given(posets(max_size=5))
def test_closure_criterion_matches_oracle(P):
    for X in range(1 << P.size):
        assert tail.closure_member(P, Subset(P.size, X)) == oracle_closure_member(P, X)
    assert tail.closure_of_down(P) == po.down_family(P)


@given(posets(max_size=5))
def test_pps_on_random_posets(P):
    report = tail.check_pps(P)
    assert report.passed, report.failures


@given(families(max_ground=4, max_size=4))
def test_generated_lattices_are_distributive(F):
    L = po.inclusion_poset(generate_bounded_lattice(F).members)
    assert tail.is_distributive(L)
    assert tail.birkhoff_iso(L).is_iso


@given(families(max_ground=4))
def test_finite_families_are_closed(F):
    assert tail.is_closed_family(F)
