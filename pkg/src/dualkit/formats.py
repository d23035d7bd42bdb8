"""Readers and writers for contexts, posets, algebras and valued matrices.

Burmeister ``.cxt`` layout::

    B
    <empty>
    m
    n
    <empty>
    m object names
    n attribute names
    m lines of n characters from {'.', 'X'}
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Optional

from .context import IncidenceStructure
from .poset import Poset, build_poset
from .ualg import PRESETS, FiniteAlgebra, Operation, Relation, ValuedMatrix

__all__ = [
    "FormatError",
    "LabelledContext",
    "read_cxt",
    "write_cxt",
    "read_context_json",
    "write_context_json",
    "read_context",
    "read_poset",
    "write_poset",
    "read_algebra",
    "algebra_to_json",
    "write_algebra",
    "read_valued_matrix",
    "write_valued_matrix",
    "read_relations",
]


class FormatError(ValueError):
    pass


@dataclass(frozen=True)
class LabelledContext:
    structure: IncidenceStructure
    objects: tuple[str, ...]
    attributes: tuple[str, ...]


def _default_names(prefix: str, count: int) -> tuple[str, ...]:
    return tuple(f"{prefix}{k + 1}" for k in range(count))


def read_cxt(text: str) -> LabelledContext:
    lines = text.replace("\r\n", "\n").replace("\r", "\n").split("\n")
    if len(lines) < 5 or lines[0].strip() != "B" or lines[1].strip():
        raise FormatError("not a Burmeister context: expected 'B' then an empty line")
    try:
        m, n = int(lines[2]), int(lines[3])
    except ValueError:
        raise FormatError("object/attribute counts must be integers") from None
    if m < 1 or n < 1:
        raise FormatError(f"context needs at least one object and attribute, got {m}x{n}")
    if lines[4].strip():
        raise FormatError("expected an empty line after the counts")
    body = lines[5:]
    if len(body) < 2 * m + n:
        raise FormatError("file ends before the incidence rows")
    objects = tuple(body[:m])
    attributes = tuple(body[m:m + n])
    rows = []
    for k, line in enumerate(body[m + n:2 * m + n]):
        line = line.rstrip()
        if len(line) != n or set(line) - {".", "X"}:
            raise FormatError(f"data line {k + 1} must be {n} characters from '.X': {line!r}")
        rows.append(sum(1 << j for j, ch in enumerate(line) if ch == "X"))
    if any(s.strip() for s in body[2 * m + n:]):
        raise FormatError("trailing content after the incidence rows")
    return LabelledContext(IncidenceStructure(m, n, tuple(rows)), objects, attributes)


def write_cxt(ctx: LabelledContext | IncidenceStructure) -> str:
    if isinstance(ctx, IncidenceStructure):
        ctx = LabelledContext(ctx, _default_names("g", ctx.m), _default_names("m", ctx.n))
    R = ctx.structure
    out = ["B", "", str(R.m), str(R.n), ""]
    out += list(ctx.objects) + list(ctx.attributes)
    out += ["".join("X" if R.incident(i, j) else "." for j in range(R.n)) for i in range(R.m)]
    return "\n".join(out) + "\n"


def read_context_json(text: str) -> LabelledContext:
    data = json.loads(text)
    try:
        m, n, rows = int(data["m"]), int(data["n"]), data["rows"]
    except (KeyError, TypeError):
        raise FormatError("context JSON needs 'm', 'n' and 'rows'") from None
    if len(rows) != m or any(len(r) != n or set(r) - {"0", "1"} for r in rows):
        raise FormatError(f"'rows' must be {m} bitstrings of length {n}")
    R = IncidenceStructure(m, n, tuple(sum(1 << j for j, ch in enumerate(r) if ch == "1") for r in rows))
    return LabelledContext(
        R,
        tuple(data.get("objects") or _default_names("g", m)),
        tuple(data.get("attributes") or _default_names("m", n)),
    )


def write_context_json(ctx: LabelledContext | IncidenceStructure) -> str:
    R = ctx.structure if isinstance(ctx, LabelledContext) else ctx
    rows = ["".join("1" if R.incident(i, j) else "0" for j in range(R.n)) for i in range(R.m)]
    return json.dumps({"m": R.m, "n": R.n, "rows": rows}) + "\n"


def read_context(text: str, as_json: Optional[bool] = None) -> LabelledContext:
    if as_json is None:
        as_json = text.lstrip().startswith("{")
    return read_context_json(text) if as_json else read_cxt(text)


def read_poset(text: str) -> Poset:
    data = json.loads(text)
    try:
        elements = [str(e) for e in data["elements"]]
        relation = data.get("relation", [])
    except (KeyError, TypeError, AttributeError):
        raise FormatError("poset JSON needs 'elements' and 'relation'") from None
    index = {name: k for k, name in enumerate(elements)}
    if len(index) != len(elements):
        raise FormatError("duplicate element names")

    def resolve(v) -> int:
        if isinstance(v, bool):
            raise FormatError(f"bad element reference {v!r}")
        if isinstance(v, int):
            return v
        if v in index:
            return index[v]
        raise FormatError(f"unknown element {v!r}")

    pairs = []
    for pair in relation:
        if len(pair) != 2:
            raise FormatError(f"relation entries are pairs, got {pair!r}")
        pairs.append((resolve(pair[0]), resolve(pair[1])))
    return build_poset(len(elements), pairs, elements)


def write_poset(P: Poset) -> str:
    names = list(P.labels) if P.labels else [str(x) for x in range(P.size)]
    return json.dumps({"elements": names, "relation": [list(p) for p in P.cover_pairs()]}) + "\n"


def _algebra_from_data(data) -> FiniteAlgebra:
    if isinstance(data, str):
        if data not in PRESETS:
            raise FormatError(f"unknown preset {data!r}; choose from {sorted(PRESETS)}")
        return PRESETS[data]()
    try:
        k = int(data["size"])
        ops = tuple(
            Operation(k, int(op["arity"]), tuple(op["table"]), str(op.get("name", "")))
            for op in data.get("ops", [])
        )
    except (KeyError, TypeError):
        raise FormatError("algebra JSON needs 'size' and 'ops' with 'arity' and 'table'") from None
    return FiniteAlgebra(k, ops)


def read_algebra(text: str) -> FiniteAlgebra:
    return _algebra_from_data(json.loads(text))


def algebra_to_json(K: FiniteAlgebra) -> dict:
    return {
        "size": K.universe,
        "ops": [{"name": f.name, "arity": f.arity, "table": list(f.table)} for f in K.ops],
    }


def write_algebra(K: FiniteAlgebra) -> str:
    return json.dumps(algebra_to_json(K)) + "\n"


def read_valued_matrix(text: str) -> ValuedMatrix:
    data = json.loads(text)
    try:
        K = _algebra_from_data(data["algebra"])
        entries = tuple(tuple(int(v) for v in row) for row in data["entries"])
    except (KeyError, TypeError):
        raise FormatError("valued matrix JSON needs 'algebra' and 'entries'") from None
    return ValuedMatrix(K, entries)


def write_valued_matrix(A: ValuedMatrix, preset: Optional[str] = None) -> str:
    algebra = preset if preset is not None else algebra_to_json(A.algebra)
    return json.dumps({"algebra": algebra, "entries": [list(r) for r in A.entries]}) + "\n"


def read_relations(text: str) -> tuple[int, list[Relation]]:
    """``{"size": k, "relations": [[tuple, ...], ...]}``."""
    data = json.loads(text)
    try:
        k = int(data["size"])
        rels = []
        for tuples in data["relations"]:
            if not tuples:
                raise FormatError("empty relation: arity cannot be inferred")
            rels.append(Relation.of(k, len(tuples[0]), tuples))
    except (KeyError, TypeError):
        raise FormatError("relations JSON needs 'size' and 'relations'") from None
    return k, rels
