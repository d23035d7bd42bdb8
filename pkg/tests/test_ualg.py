import itertools
import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from dualkit import ualg
from dualkit.errors import ArityError, NotHom, NotSubalgebra, SizeError
from dualkit.ualg import FiniteAlgebra, Operation, Relation, ValuedMatrix

MEET = Operation.from_function(2, 2, min, "meet")
JOIN = Operation.from_function(2, 2, max, "join")
NOT = Operation(2, 1, (1, 0), "not")
LEQ = Relation.of(2, 2, [(0, 0), (0, 1), (1, 1)])
MAJ = Operation.from_function(2, 3, lambda x, y, z: int(x + y + z >= 2), "maj")
RUNNING = ValuedMatrix(ualg.lattice2(), ((1, 1, 0), (0, 1, 1)))


def test_apply_examples():
    assert ualg.apply(Operation.projection(2, 2, 0), (0, 1)) == 0
    assert MEET(1, 1) == 1
    assert NOT(0) == 1
    with pytest.raises(ArityError):
        ualg.apply(MEET, (1,))
    with pytest.raises(ValueError):
        ualg.apply(NOT, (2,))


def test_table_is_lexicographic():
    f = Operation.from_function(3, 2, lambda x, y: (2 * x + y) % 3)
    assert f.table[f.index((1, 2))] == 1 and f.index((1, 2)) == 5


def test_preservation_examples():
    full = Relation.of(2, 2, itertools.product(range(2), repeat=2))
    assert all(ualg.preserves(f, full) for f in (MEET, JOIN, NOT, MAJ))
    assert ualg.preserves(MEET, LEQ)
    assert not ualg.preserves(NOT, LEQ)
    assert ualg.preservation_witness(NOT, LEQ) == ((0, 1),)


def test_graph_examples():
    assert ualg.graph(NOT).tuples == ((0, 1), (1, 0))
    assert ualg.graph(Operation.projection(2, 1, 0)).tuples == ((0, 0), (1, 1))
    assert ualg.graph(Operation.constant(2, 0)).tuples == ((0, 0), (1, 0))


def test_commutation_examples():
    ident = Operation.projection(2, 1, 0)
    assert all(ualg.commutes(f, ident) for f in (MEET, JOIN, NOT, MAJ))
    assert ualg.commutes(MEET, MEET)
    # idempotent operations commute with every constant
    assert ualg.commutes(JOIN, Operation.constant(2, 0))
    assert not ualg.commutes(NOT, Operation.constant(2, 0))


def test_classify_examples():
    c = ualg.classify(Operation.projection(2, 3, 1))
    assert c.projection == 1 and c.idempotent and not c.constant
    c = ualg.classify(Operation.constant(2, 1))
    assert c.constant and not c.idempotent and c.projection is None
    c = ualg.classify(MAJ)
    assert c.idempotent and c.projection is None


def test_subalgebra_examples():
    K = ualg.lattice2()
    B = ualg.subalgebra_generate(K, 3, [(1, 1, 0), (0, 1, 1)])
    assert set(B) == {(0, 0, 0), (0, 1, 0), (1, 1, 0), (0, 1, 1), (1, 1, 1)}
    assert ualg.subalgebra_generate(K, 3, []) == [(0, 0, 0), (1, 1, 1)]
    assert ualg.subalgebra_generate(K, 3, B) == B
    assert ualg.is_subuniverse(K, B)
    assert not ualg.is_subuniverse(K, [(0, 0, 0), (1, 1, 0), (0, 1, 1), (1, 1, 1)])


def test_hom_examples():
    K = ualg.lattice2()
    B = ualg.subalgebra_generate(K, 3, [(1, 1, 0), (0, 1, 1)])
    hs = ualg.homs(B, K)
    assert len(hs) == 3 and sorted(ualg.projection_index(h) for h in hs) == [0, 1, 2]
    assert len(ualg.homs([(0, 0, 0), (1, 1, 1)], K)) == 1
    b2 = ualg.boolean2()
    hs = ualg.homs(ualg.power(b2, 2), b2)
    assert sorted(ualg.projection_index(h) for h in hs) == [0, 1]
    with pytest.raises(NotSubalgebra):
        ualg.homs([(0, 1), (1, 0)], K)


def test_presets():
    assert len(ualg.boolean2().ops) == 5
    assert len(ualg.homs(ualg.power(ualg.lattice2(), 2), ualg.lattice2())) == 2
    assert ualg.is_projective(ualg.boolean2(), 1).details["rigid"]


def test_projection_property_examples():
    for K in (ualg.boolean2(), ualg.lattice2()):
        assert ualg.has_projection_property(K, 3).holds
        assert ualg.is_projectively_trivial(K, 2).holds
        assert ualg.is_projective(K, 3).holds
    bare = FiniteAlgebra(2)
    report = ualg.has_projection_property(bare, 2)
    assert not report.holds and report.witnesses
    assert report.witnesses[0]["n"] == 2
    assert not ualg.is_projective(bare, 2).holds
    weak = ualg.is_projectively_trivial(ualg.semilattice2(), 1)
    assert not weak.holds and weak.witnesses


def test_power_bounds():
    with pytest.raises(SizeError):
        ualg.is_projective(ualg.boolean2(), 4)


def test_centralizer_examples():
    consts = FiniteAlgebra(2, (Operation.constant(2, 0), Operation.constant(2, 1)))
    Z = ualg.centralizer(consts, 2)
    assert len(Z) == 5 and all(ualg.classify(f).idempotent for f in Z)
    assert len(ualg.centralizer(FiniteAlgebra(2), 2)) == 4 + 16
    everything = FiniteAlgebra(2, tuple(f for a in (1, 2) for f in ualg.all_operations(2, a)))
    Z = ualg.centralizer(everything, 2)
    assert [(f.arity, ualg.classify(f).projection) for f in Z] == [(1, 0), (2, 0), (2, 1)]


def test_polymorph_of_order():
    pol = ualg.polymorph([LEQ], 2)
    direct = [
        f for a in (1, 2) for f in ualg.all_operations(2, a)
        if all(
            f(*x) <= f(*y)
            for x in itertools.product(range(2), repeat=a)
            for y in itertools.product(range(2), repeat=a)
            if all(u <= v for u, v in zip(x, y))
        )
    ]
    assert pol == direct
    assert [sum(1 for f in pol if f.arity == a) for a in (1, 2)] == [3, 6]


def test_invariant_examples():
    assert [r.tuples for r in ualg.invariants(ualg.boolean2(), 1)] == [((0,), (1,))]
    assert len(ualg.invariants(FiniteAlgebra(2), 1)) == 4


def test_valued_matrix_examples():
    report = ualg.verify_prop3a(RUNNING)
    assert report.passed and report.details["homs"] == 3 == report.details["distinct_columns"]
    B = ualg.row_algebra(RUNNING)
    for j in range(3):
        assert ualg.valued_phi(ualg.evaluation_hom(B, j), RUNNING) == RUNNING.column(j)
    const = ValuedMatrix(ualg.boolean2(), ((1, 1), (1, 1)))
    report = ualg.verify_prop3a(const)
    assert report.passed and report.details["homs"] == 1
    with pytest.raises(NotHom):
        ualg.valued_phi({x: 1 - x[0] for x in B}, RUNNING)


def _brute_homs(L, K):
    L = sorted(L)
    out = []
    for values in itertools.product(range(K.universe), repeat=len(L)):
        h = dict(zip(L, values))
        if ualg.is_hom(h, K):
            out.append(h)
    return out


def _key(h):
    return tuple(sorted(h.items()))


@given(st.sampled_from(["boolean2", "lattice2", "semilattice2"]), st.integers(1, 2), st.data())
def test_hom_search_matches_brute_force(name, n, data):
    K = ualg.PRESETS[name]()
    elems = ualg.power(K, n)
    gens = data.draw(st.lists(st.sampled_from(elems), max_size=3))
    L = ualg.subalgebra_generate(K, n, gens)
    if not L:
        return
    assert sorted(map(_key, ualg.homs(L, K))) == sorted(map(_key, _brute_homs(L, K)))


@given(st.integers(1, 2), st.lists(st.integers(0, 1), min_size=4, max_size=4))
def test_preserves_matches_definition(arity, table_bits):
    f = Operation(2, arity, tuple(table_bits[: 2**arity]))
    for rho in ualg.all_relations(2, 2):
        direct = all(
            tuple(f(*col) for col in zip(*rows)) in rho
            for rows in itertools.product(rho.tuples, repeat=arity)
        )
        assert ualg.preserves(f, rho) == direct


@given(st.integers(0, 10**6))
def test_prop3a_on_random_matrices(seed):
    rng = random.Random(seed)
    K = rng.choice([ualg.boolean2(), ualg.lattice2()])
    A = ualg.random_valued_matrix(rng, K, 5, 5)
    assert ualg.verify_prop3a(A).passed
