import json

import pytest
from hypothesis import given
from hypothesis import strategies as st

from dualkit import formats as fmt
from dualkit import ualg
from dualkit.errors import CycleError

from conftest import posets, structures

names = st.text(
    alphabet=st.characters(blacklist_categories=("Cc", "Cs", "Zl", "Zp")), max_size=8
).filter(lambda s: s.strip() == s)

R0_CXT = "B\n\n2\n3\n\ng1\ng2\nm1\nm2\nm3\nXX.\n.XX\n"


def test_read_cxt_example():
    lc = fmt.read_cxt(R0_CXT)
    assert lc.structure.matrix() == [[1, 1, 0], [0, 1, 1]]
    assert lc.objects == ("g1", "g2") and lc.attributes == ("m1", "m2", "m3")
    assert fmt.write_cxt(lc) == R0_CXT


@pytest.mark.parametrize(
    "text",
    [
        "",
        "A\n\n1\n1\n\na\nb\nX\n",
        "B\n\nx\n1\n\na\nb\nX\n",
        "B\n\n1\n1\n\na\nb\nQ\n",
        "B\n\n1\n2\n\na\nb\nc\nX\n",
        "B\n\n1\n1\n\na\nb\nX\nextra\n",
        "B\n\n0\n1\n\nb\n",
    ],
)
def test_read_cxt_rejects_malformed(text):
    with pytest.raises(fmt.FormatError):
        fmt.read_cxt(text)


@given(structures(), st.data())
def test_cxt_round_trip(R, data):
    objects = tuple(data.draw(st.lists(names, min_size=R.m, max_size=R.m)))
    attributes = tuple(data.draw(st.lists(names, min_size=R.n, max_size=R.n)))
    lc = fmt.LabelledContext(R, objects, attributes)
    assert fmt.read_cxt(fmt.write_cxt(lc)) == lc


@given(structures())
def test_context_json_round_trip(R):
    text = fmt.write_context_json(R)
    assert fmt.read_context(text).structure == R
    assert fmt.read_context(fmt.write_cxt(R)).structure == R


def test_read_context_json_rejects_bad_rows():
    with pytest.raises(fmt.FormatError):
        fmt.read_context_json('{"m": 1, "n": 2, "rows": ["1"]}')


@given(posets())
def test_poset_round_trip(P):
    assert fmt.read_poset(fmt.write_poset(P)).ups == P.ups


def test_poset_by_name_and_closure():
    P = fmt.read_poset('{"elements": ["a", "b", "c"], "relation": [["a", "b"], [1, 2]]}')
    assert P.leq(0, 2) and P.labels == ("a", "b", "c")
    with pytest.raises(CycleError):
        fmt.read_poset('{"elements": ["a", "b"], "relation": [["a", "b"], ["b", "a"]]}')
    with pytest.raises(fmt.FormatError):
        fmt.read_poset('{"elements": ["a"], "relation": [["a", "z"]]}')


@given(st.sampled_from(sorted(ualg.PRESETS)))
def test_algebra_round_trip(name):
    K = ualg.PRESETS[name]()
    assert fmt.read_algebra(fmt.write_algebra(K)) == K
    assert fmt.read_algebra(json.dumps(name)) == K


@given(st.integers(1, 4), st.integers(1, 4), st.data())
def test_valued_matrix_round_trip(m, n, data):
    K = ualg.boolean2()
    rows = data.draw(st.lists(st.lists(st.integers(0, 1), min_size=n, max_size=n), min_size=m, max_size=m))
    A = ualg.ValuedMatrix(K, tuple(map(tuple, rows)))
    assert fmt.read_valued_matrix(fmt.write_valued_matrix(A)) == A
    assert fmt.read_valued_matrix(fmt.write_valued_matrix(A, preset="boolean2")) == A


def test_relations_reader():
    k, rels = fmt.read_relations('{"size": 2, "relations": [[[0, 0], [1, 1]], [[1]]]}')
    assert k == 2 and [r.arity for r in rels] == [2, 1]
    with pytest.raises(fmt.FormatError):
        fmt.read_relations('{"size": 2, "relations": [[]]}')


def test_unknown_preset():
    with pytest.raises(fmt.FormatError):
        fmt.read_algebra('"nope"')
