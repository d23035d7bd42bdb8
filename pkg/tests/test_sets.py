import pytest
from hypothesis import given
from hypothesis import strategies as st

from dualkit.errors import GroundMismatch
from dualkit.sets import SetFamily, Subset, bits_of, full_mask, indices_of

from conftest import families


@given(st.lists(st.integers(0, 30), unique=True))
def test_bits_round_trip(indices):
    assert indices_of(bits_of(indices)) == sorted(indices)


def test_subset_operations():
    a = Subset.of(4, [0, 1])
    b = Subset.of(4, [1, 2])
    assert (a | b).tolist() == [0, 1, 2]
    assert (a & b).tolist() == [1]
    assert (a - b).tolist() == [0]
    assert a.complement().tolist() == [2, 3]
    assert Subset.of(4, [1]) < a
    assert not a <= b
    assert 1 in a and 3 not in a and 9 not in a
    assert len(Subset.full(4)) == 4 and len(Subset.empty(4)) == 0


def test_subset_rejects_bad_input():
    with pytest.raises(IndexError):
        Subset.of(2, [2])
    with pytest.raises(ValueError):
        Subset(2, 4)
    with pytest.raises(GroundMismatch):
        Subset.of(2, [0]) | Subset.of(3, [0])


@given(families())
def test_family_is_canonical(F):
    assert list(F.masks) == sorted(set(F.masks))
    assert SetFamily.from_masks(F.ground, reversed(F.masks)) == F
    for k, s in enumerate(F):
        assert F.index(s) == k and s in F and F[k] == s


def test_family_rejects_unsorted():
    with pytest.raises(ValueError):
        SetFamily(2, (2, 1))
    with pytest.raises(ValueError):
        SetFamily(1, (2,))


@given(families(), families())
def test_union_and_subfamily(F, G):
    if F.ground != G.ground:
        with pytest.raises(GroundMismatch):
            F.union(G)
        return
    U = F.union(G)
    assert F.issubfamily(U) and G.issubfamily(U)
    assert len(U) == len(set(F.masks) | set(G.masks))


@given(st.integers(0, 8))
def test_complement_involution(n):
    for bits in range(1 << n) if n <= 4 else (0, full_mask(n)):
        s = Subset(n, bits)
        assert s.complement().complement() == s
