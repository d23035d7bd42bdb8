import pytest
from hypothesis import given

from dualkit import context as ctx
from dualkit import spectra as sp
from dualkit.errors import GroundMismatch, KindError
from dualkit.setfam import generate_boolean, generate_bounded_lattice
from dualkit.sets import SetFamily, Subset

from conftest import families, structures

R0 = ctx.IncidenceStructure.from_matrix([[1, 1, 0], [0, 1, 1]])


def _brute_prime_filters(F):
    """All up-sets of F tested against the filter and primality axioms."""
    ms = list(F.members.masks)
    out = []
    for bits in range(1, 1 << len(ms)):
        S = {ms[k] for k in range(len(ms)) if (bits >> k) & 1}
        if 0 in S:
            continue
        if any(a & ~x == 0 and x not in S for a in S for x in ms):
            continue
        if any(a & b not in S for a in S for b in S):
            continue
        if any(a | b in S and a not in S and b not in S for a in ms for b in ms):
            continue
        out.append(sorted(F.members.index(m) for m in S))
    return sorted(out)


def test_prime_filter_examples():
    chain3 = generate_bounded_lattice(SetFamily.from_masks(2, [0b10]))
    assert chain3.members.tolists() == [[], [1], [0, 1]]
    pf = sp.prime_filters(chain3)
    assert sorted(sorted(p.masks) for p in pf) == [[2, 3], [3]]
    assert len(sp.prime_filters(generate_bounded_lattice(SetFamily(2, ())))) == 1
    power3 = generate_boolean(SetFamily.from_masks(3, [1, 2, 4]))
    assert len(sp.prime_filters(power3)) == 3


def test_ultrafilter_examples():
    assert len(sp.ultrafilters(generate_boolean(SetFamily.from_masks(3, [1, 2, 4])))) == 3
    assert len(sp.ultrafilters(generate_boolean(SetFamily(3, ())))) == 1
    assert len(sp.ultrafilters(generate_boolean(ctx.rows_family(R0)))) == 3
    with pytest.raises(KindError):
        sp.ultrafilters(generate_bounded_lattice(ctx.rows_family(R0)))


def test_phi_examples():
    B = generate_boolean(ctx.rows_family(R0))
    at_middle = [u for u in sp.ultrafilters(B) if min(u.masks, key=int.bit_count) == 0b010]
    assert sp.phi_map(at_middle[0], R0) == ctx.col(R0, 1)
    everything = sp.Filter(B, frozenset(range(len(B.members))))
    assert sp.phi_map(everything, R0).tolist() == [0, 1]
    with pytest.raises(GroundMismatch):
        sp.phi_map(at_middle[0], ctx.dual_structure(R0))


def test_point_filter_examples():
    L = generate_bounded_lattice(ctx.rows_family(R0))
    assert sorted(sp.point_filter(L, 1).masks) == [0b010, 0b011, 0b110, 0b111]
    trivial = generate_bounded_lattice(SetFamily(2, ()))
    assert sp.point_filter(trivial, 0).masks == [0b11]
    B = generate_boolean(ctx.rows_family(R0))
    assert len(sp.point_filter(B, 0)) == 4


def test_spectrum_orders():
    chain3 = generate_bounded_lattice(SetFamily.from_masks(2, [0b10]))
    # up({0,1}) sits inside up({1})
    assert sp.spectrum(chain3).order.cover_pairs() == [(1, 0)]
    power3 = generate_boolean(SetFamily.from_masks(3, [1, 2, 4]))
    assert sp.spectrum(power3).order.cover_pairs() == []


def test_basic_open():
    X = Subset.of(3, [0, 1])
    assert sp.in_basic_open(X, Subset.of(3, [0]), Subset.of(3, [2]))
    assert not sp.in_basic_open(X, Subset.of(3, [2]), Subset.empty(3))


def test_verify_duality_examples():
    report = sp.verify_duality(R0)
    assert report.passed and report.details["c"] == 3 and len(report.bijection) == 3
    ones = ctx.IncidenceStructure.from_matrix([[1, 1], [1, 1]])
    report = sp.verify_duality(ones)
    assert report.passed and report.details["spec_lattice"] == 1


@given(families(max_ground=4, max_size=4))
def test_enumerators_agree_with_brute_force(F):
    for G in (generate_bounded_lattice(F), generate_boolean(F)):
        brute = _brute_prime_filters(G)
        assert [sorted(p.indices) for p in sp.prime_filters(G)] == brute
        assert [sorted(p.indices) for p in sp.prime_filters_via_irreducibles(G)] == brute


@given(families(max_ground=5))
def test_ultrafilters_are_prime_filters(F):
    B = generate_boolean(F)
    assert [u.key() for u in sp.ultrafilters(B)] == [p.key() for p in sp.prime_filters(B)]


@given(families(max_ground=5))
def test_point_filters_are_prime(F):
    L = generate_bounded_lattice(F)
    keys = {p.key() for p in sp.prime_filters(L)}
    for j in range(F.ground):
        assert sp.point_filter(L, j).key() in keys


@given(structures())
def test_duality_on_random_structures(R):
    report = sp.verify_duality(R)
    assert report.passed, report.failures
