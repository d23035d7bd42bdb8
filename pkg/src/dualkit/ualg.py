"""Finite universal algebras given by operation tables.

Tables list values in lexicographic order of the argument tuple, leftmost
argument most significant.  Elements of a power ``K^n`` are plain tuples.
Constant operations are treated as nullary: their constant tuple belongs to
every subuniverse, including the one generated by the empty set.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Iterator, Mapping, Optional, Sequence

from .errors import (
    ArityError,
    NotHom,
    NotSubalgebra,
    SizeError,
    UniverseMismatch,
)
from .spectra import DualityReport

__all__ = [
    "DEFAULT_TUPLE_CAP",
    "Operation",
    "Relation",
    "FiniteAlgebra",
    "ValuedMatrix",
    "Classification",
    "AlgebraReport",
    "apply",
    "preserves",
    "preservation_witness",
    "graph",
    "commutes",
    "classify",
    "all_operations",
    "all_relations",
    "power",
    "subalgebra_generate",
    "is_subuniverse",
    "subuniverses",
    "homs",
    "is_hom",
    "projection_index",
    "has_projection_property",
    "is_projectively_trivial",
    "is_projective",
    "centralizer",
    "polymorph",
    "invariants",
    "boolean2",
    "lattice2",
    "semilattice2",
    "row_algebra",
    "evaluation_hom",
    "valued_phi",
    "verify_prop3a",
    "random_valued_matrix",
]

DEFAULT_TUPLE_CAP = 10**6
MAX_UNIVERSE = 4
MAX_POWER = 3
# k^n at or below this: enumerate every subset of K^n as a candidate subuniverse
EXHAUSTIVE_SUBSETS = 16
MAX_OPERATIONS = 1 << 15
MAX_RELATIONS = 1 << 16
HOM_NODE_BUDGET = 2_000_000


@dataclass(frozen=True)
class Operation:
    universe: int
    arity: int
    table: tuple[int, ...]
    name: str = ""

    def __post_init__(self):
        if self.arity < 1:
            raise ArityError("operations have arity >= 1; model constants as unary")
        if len(self.table) != self.universe**self.arity:
            raise ValueError(
                f"table of length {len(self.table)} for k={self.universe}, arity {self.arity}"
            )
        if any(not 0 <= v < self.universe for v in self.table):
            raise ValueError("table value outside the universe")

    @classmethod
    def from_function(cls, k: int, arity: int, fn, name: str = "") -> Operation:
        table = tuple(fn(*args) for args in itertools.product(range(k), repeat=arity))
        return cls(k, arity, table, name)

    @classmethod
    def constant(cls, k: int, c: int, name: str = "") -> Operation:
        return cls(k, 1, (c,) * k, name or f"const{c}")

    @classmethod
    def projection(cls, k: int, n: int, i: int) -> Operation:
        """The n-ary projection onto coordinate i (0-based)."""
        return cls.from_function(k, n, lambda *xs: xs[i], f"e{n}_{i}")

    def index(self, args: Sequence[int]) -> int:
        idx = 0
        for a in args:
            idx = idx * self.universe + a
        return idx

    def __call__(self, *args: int) -> int:
        return apply(self, args)

    def on_columns(self, rows: Sequence[Sequence[int]]) -> tuple[int, ...]:
        """Apply coordinatewise to ``arity`` tuples of equal length."""
        return tuple(self.table[self.index(col)] for col in zip(*rows))


@dataclass(frozen=True)
class Relation:
    universe: int
    arity: int
    tuples: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        for t in self.tuples:
            if len(t) != self.arity or any(not 0 <= v < self.universe for v in t):
                raise ValueError(f"tuple {t} invalid for arity {self.arity}, k={self.universe}")

    @classmethod
    def of(cls, k: int, arity: int, tuples: Iterable[Sequence[int]]) -> Relation:
        return cls(k, arity, tuple(sorted({tuple(t) for t in tuples})))

    @cached_property
    def _set(self) -> frozenset[tuple[int, ...]]:
        return frozenset(self.tuples)

    def __contains__(self, t) -> bool:
        return tuple(t) in self._set

    def __len__(self) -> int:
        return len(self.tuples)


@dataclass(frozen=True)
class FiniteAlgebra:
    universe: int
    ops: tuple[Operation, ...] = ()

    def __post_init__(self):
        for f in self.ops:
            if f.universe != self.universe:
                raise UniverseMismatch(f"op {f.name!r} on {f.universe}, algebra on {self.universe}")

    def op(self, name: str) -> Operation:
        for f in self.ops:
            if f.name == name:
                return f
        raise KeyError(name)

    @cached_property
    def constants(self) -> tuple[int, ...]:
        return tuple(sorted({f.table[0] for f in self.ops if classify(f).constant}))

    @cached_property
    def proper_ops(self) -> tuple[Operation, ...]:
        return tuple(f for f in self.ops if not classify(f).constant)


@dataclass(frozen=True)
class ValuedMatrix:
    algebra: FiniteAlgebra
    entries: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if not self.entries or not self.entries[0]:
            raise ValueError("valued matrix needs m, n >= 1")
        n = len(self.entries[0])
        for r in self.entries:
            if len(r) != n:
                raise ValueError("ragged matrix")
            if any(not 0 <= v < self.algebra.universe for v in r):
                raise ValueError("entry outside the universe")

    @property
    def m(self) -> int:
        return len(self.entries)

    @property
    def n(self) -> int:
        return len(self.entries[0])

    def row(self, i: int) -> tuple[int, ...]:
        return self.entries[i]

    def column(self, j: int) -> tuple[int, ...]:
        return tuple(r[j] for r in self.entries)


@dataclass(frozen=True)
class Classification:
    projection: Optional[int]
    idempotent: bool
    constant: bool


@dataclass
class AlgebraReport:
    """Outcome of a bounded-power property check; ``holds`` covers powers up to ``n_max`` only."""

    holds: bool
    n_max: int
    witnesses: list[dict] = field(default_factory=list)
    details: dict = field(default_factory=dict)

    def __bool__(self) -> bool:
        return self.holds


def apply(f: Operation, args: Sequence[int]) -> int:
    if len(args) != f.arity:
        raise ArityError(f"{f.name or 'operation'} takes {f.arity} arguments, got {len(args)}")
    for a in args:
        if not 0 <= a < f.universe:
            raise ValueError(f"argument {a} outside universe of size {f.universe}")
    return f.table[f.index(args)]


def preservation_witness(f: Operation, rho: Relation) -> Optional[tuple[tuple[int, ...], ...]]:
    """A matrix of rho-rows whose column image leaves rho, or None."""
    if f.universe != rho.universe:
        raise UniverseMismatch(f"operation on {f.universe}, relation on {rho.universe}")
    for rows in itertools.product(rho.tuples, repeat=f.arity):
        if f.on_columns(rows) not in rho:
            return rows
    return None


def preserves(f: Operation, rho: Relation) -> bool:
    return preservation_witness(f, rho) is None


def graph(g: Operation) -> Relation:
    k = g.universe
    return Relation(
        k,
        g.arity + 1,
        tuple(args + (g.table[g.index(args)],) for args in itertools.product(range(k), repeat=g.arity)),
    )


def commutes(f: Operation, g: Operation) -> bool:
    if f.universe != g.universe:
        raise UniverseMismatch(f"universes {f.universe} and {g.universe}")
    return preserves(f, graph(g))


def classify(f: Operation) -> Classification:
    k, n = f.universe, f.arity
    projection = None
    for i in range(n):
        if all(f.table[f.index(args)] == args[i] for args in itertools.product(range(k), repeat=n)):
            projection = i
            break
    idempotent = all(f.table[f.index((x,) * n)] == x for x in range(k))
    return Classification(projection, idempotent, len(set(f.table)) == 1)


def all_operations(k: int, arity: int) -> Iterator[Operation]:
    size = k ** (k**arity)
    if size > MAX_OPERATIONS:
        raise SizeError(f"{size} operations of arity {arity} on {k} elements")
    for table in itertools.product(range(k), repeat=k**arity):
        yield Operation(k, arity, table)


def all_relations(k: int, arity: int) -> Iterator[Relation]:
    """Every relation of the given arity, including the empty one, by bitmask over k^arity."""
    tuples = list(itertools.product(range(k), repeat=arity))
    if 1 << len(tuples) > MAX_RELATIONS:
        raise SizeError(f"{1 << len(tuples)} relations of arity {arity} on {k} elements")
    for mask in range(1 << len(tuples)):
        yield Relation(k, arity, tuple(t for b, t in enumerate(tuples) if (mask >> b) & 1))


def _check_power(K: FiniteAlgebra, n: int) -> None:
    if K.universe > MAX_UNIVERSE or n > MAX_POWER:
        raise SizeError(f"k={K.universe}, n={n} beyond exhaustive bounds k<={MAX_UNIVERSE}, n<={MAX_POWER}")


def power(K: FiniteAlgebra, n: int) -> list[tuple[int, ...]]:
    return list(itertools.product(range(K.universe), repeat=n))


def subalgebra_generate(
    K: FiniteAlgebra, n: int, gens: Iterable[Sequence[int]], cap: int = DEFAULT_TUPLE_CAP
) -> list[tuple[int, ...]]:
    """Least subset of K^n containing gens closed under every operation."""
    k = K.universe
    known: set[tuple[int, ...]] = set()
    for g in gens:
        t = tuple(g)
        if len(t) != n or any(not 0 <= v < k for v in t):
            raise ValueError(f"generator {t} is not an element of K^{n}")
        known.add(t)
    known |= {(c,) * n for c in K.constants}
    frontier = set(known)
    while frontier:
        everything = sorted(known)
        found: set[tuple[int, ...]] = set()
        for f in K.proper_ops:
            for rows in itertools.product(everything, repeat=f.arity):
                if not any(r in frontier for r in rows):
                    continue
                t = f.on_columns(rows)
                if t not in known:
                    found.add(t)
        known |= found
        if len(known) > cap:
            raise SizeError(f"subalgebra exceeds cap of {cap} tuples")
        frontier = found
    return sorted(known)


def is_subuniverse(K: FiniteAlgebra, L: Iterable[Sequence[int]]) -> bool:
    elems = {tuple(t) for t in L}
    if not elems:
        return not K.constants
    n = len(next(iter(elems)))
    if any((c,) * n not in elems for c in K.constants):
        return False
    ordered = sorted(elems)
    for f in K.proper_ops:
        for rows in itertools.product(ordered, repeat=f.arity):
            if f.on_columns(rows) not in elems:
                return False
    return True


def subuniverses(K: FiniteAlgebra, n: int) -> tuple[list[list[tuple[int, ...]]], str]:
    """Subuniverses of K^n and the enumeration strategy used.

    Up to ``EXHAUSTIVE_SUBSETS`` tuples every subset is tested; beyond that
    the closures of all generating sets of size at most 3 are collected.
    """
    elems = power(K, n)
    if len(elems) <= EXHAUSTIVE_SUBSETS:
        out = []
        for mask in range(1 << len(elems)):
            cand = [t for b, t in enumerate(elems) if (mask >> b) & 1]
            if is_subuniverse(K, cand):
                out.append(cand)
        return sorted(out), "exhaustive"
    found = set()
    for size in range(4):
        for gens in itertools.combinations(elems, size):
            found.add(tuple(subalgebra_generate(K, n, gens)))
    return sorted(list(s) for s in found), "generated<=3"


def _hom_search(
    L: Sequence[tuple[int, ...]],
    K: FiniteAlgebra,
    fixed: Optional[Mapping[tuple[int, ...], int]],
    budget: int,
) -> Iterator[dict[tuple[int, ...], int]]:
    k = K.universe
    N = len(L)
    if N == 0:
        yield {}
        return
    n = len(L[0])
    pos = {t: p for p, t in enumerate(L)}
    cons: list[tuple[int, Operation, tuple[int, ...]]] = []
    watch: list[list[int]] = [[] for _ in range(N)]
    for f in K.proper_ops:
        for args in itertools.product(range(N), repeat=f.arity):
            res = f.on_columns([L[a] for a in args])
            if res not in pos:
                raise NotSubalgebra(f"{f.name or 'operation'} leads outside L at {res}")
            cid = len(cons)
            cons.append((pos[res], f, args))
            for a in set(args):
                watch[a].append(cid)
    initial: dict[int, int] = {}
    for c in K.constants:
        t = (c,) * n
        if t not in pos:
            raise NotSubalgebra(f"constant tuple {t} missing from L")
        initial[pos[t]] = c
    for t, v in (fixed or {}).items():
        p = pos[tuple(t)]
        if initial.get(p, v) != v:
            return
        initial[p] = v

    value = [-1] * N
    trail: list[int] = []
    nodes = 0

    def propagate(queue: list[int]) -> bool:
        while queue:
            p = queue.pop()
            for cid in watch[p]:
                res, f, args = cons[cid]
                vals = [value[a] for a in args]
                if min(vals) < 0:
                    continue
                v = f.table[f.index(vals)]
                if value[res] < 0:
                    value[res] = v
                    trail.append(res)
                    queue.append(res)
                elif value[res] != v:
                    return False
        return True

    def assign(p: int, v: int) -> bool:
        if value[p] >= 0:
            return value[p] == v
        value[p] = v
        trail.append(p)
        return propagate([p])

    def undo(mark: int) -> None:
        while len(trail) > mark:
            value[trail.pop()] = -1

    for p, v in initial.items():
        if not assign(p, v):
            return

    def search(start: int) -> Iterator[dict[tuple[int, ...], int]]:
        nonlocal nodes
        p = start
        while p < N and value[p] >= 0:
            p += 1
        if p == N:
            yield {L[q]: value[q] for q in range(N)}
            return
        for v in range(k):
            nodes += 1
            if nodes > budget:
                raise SizeError(f"homomorphism search exceeded {budget} nodes")
            mark = len(trail)
            if assign(p, v):
                yield from search(p + 1)
            undo(mark)

    yield from search(0)


def homs(
    L: Iterable[Sequence[int]],
    K: FiniteAlgebra,
    fixed: Optional[Mapping[tuple[int, ...], int]] = None,
    budget: int = HOM_NODE_BUDGET,
) -> list[dict[tuple[int, ...], int]]:
    """All homomorphisms from the subuniverse L of K^n into K.

    Backtracks over L in sorted order; every operation instance whose
    arguments are all assigned forces the value at its result.  ``fixed``
    pins values in advance (e.g. idempotence on the diagonal).
    """
    elems = sorted({tuple(t) for t in L})
    return list(_hom_search(elems, K, fixed, budget))


def is_hom(h: Mapping[tuple[int, ...], int], K: FiniteAlgebra) -> bool:
    """Check h(g(x1..xr)) = g(h(x1)..h(xr)) for every op g and arguments in dom(h)."""
    dom = sorted(h)
    if not dom:
        return True
    n = len(dom[0])
    for c in K.constants:
        if h.get((c,) * n) != c:
            return False
    for g in K.proper_ops:
        for rows in itertools.product(dom, repeat=g.arity):
            img = g.on_columns(rows)
            if img not in h or h[img] != g(*(h[r] for r in rows)):
                return False
    return True


def projection_index(h: Mapping[tuple[int, ...], int]) -> Optional[int]:
    """A coordinate j with h(x) = x[j] on the whole domain, if any."""
    dom = list(h)
    if not dom:
        return 0
    for j in range(len(dom[0])):
        if all(h[x] == x[j] for x in dom):
            return j
    return None


def _table(h: Mapping[tuple[int, ...], int]) -> list[list[int]]:
    return [list(x) + [h[x]] for x in sorted(h)]


def has_projection_property(K: FiniteAlgebra, n_max: int) -> AlgebraReport:
    """Every idempotent homomorphism K^n -> K is a projection, for n <= n_max."""
    witnesses = []
    counts = {}
    for n in range(1, n_max + 1):
        _check_power(K, n)
        diagonal = {(x,) * n: x for x in range(K.universe)}
        hs = homs(power(K, n), K, fixed=diagonal)
        counts[n] = len(hs)
        for h in hs:
            if projection_index(h) is None:
                witnesses.append({"n": n, "hom": _table(h)})
    return AlgebraReport(not witnesses, n_max, witnesses, {"idempotent_homs": counts})


def is_projectively_trivial(K: FiniteAlgebra, n_max: int) -> AlgebraReport:
    """Every homomorphism from every subuniverse of K^n (n <= n_max) into K is
    the restriction of a projection."""
    witnesses = []
    strategies = {}
    counts = {}
    for n in range(1, n_max + 1):
        _check_power(K, n)
        subs, strategy = subuniverses(K, n)
        strategies[n] = strategy
        counts[n] = len(subs)
        for L in subs:
            for h in homs(L, K):
                if projection_index(h) is None:
                    witnesses.append({"n": n, "subalgebra": [list(t) for t in L], "hom": _table(h)})
    return AlgebraReport(
        not witnesses, n_max, witnesses, {"strategy": strategies, "subalgebras": counts}
    )


def is_projective(K: FiniteAlgebra, n_max: int) -> AlgebraReport:
    """Every homomorphism K^n -> K (n <= n_max) is a projection; also reports
    rigidity (identity is the only endomorphism)."""
    witnesses = []
    rigid = None
    for n in range(1, n_max + 1):
        _check_power(K, n)
        hs = homs(power(K, n), K)
        if n == 1:
            rigid = all(all(h[x] == x[0] for x in h) for h in hs)
        for h in hs:
            if projection_index(h) is None:
                witnesses.append({"n": n, "hom": _table(h)})
    if rigid is None:
        rigid = all(all(h[x] == x[0] for x in h) for h in homs(power(K, 1), K))
    return AlgebraReport(not witnesses, n_max, witnesses, {"rigid": rigid})


def _ops_up_to(k: int, arity_max: int) -> list[Operation]:
    total = sum(k ** (k**a) for a in range(1, arity_max + 1))
    if total > MAX_OPERATIONS:
        raise SizeError(f"{total} operations of arity <= {arity_max} on {k} elements")
    return [f for a in range(1, arity_max + 1) for f in all_operations(k, a)]


def centralizer(F: FiniteAlgebra, arity_max: int) -> list[Operation]:
    """Operations of arity <= arity_max commuting with every operation of F."""
    return [f for f in _ops_up_to(F.universe, arity_max) if all(commutes(f, g) for g in F.ops)]


def polymorph(Gs: Sequence[Relation], arity_max: int, k: Optional[int] = None) -> list[Operation]:
    """Operations of arity <= arity_max preserving every relation in Gs."""
    if k is None:
        if not Gs:
            raise ValueError("universe size needed when no relations are given")
        k = Gs[0].universe
    if any(rho.universe != k for rho in Gs):
        raise UniverseMismatch("relations over different universes")
    return [f for f in _ops_up_to(k, arity_max) if all(preserves(f, rho) for rho in Gs)]


def _invariant(f: Operation, rho: Relation) -> bool:
    if classify(f).constant:
        return (f.table[0],) * rho.arity in rho
    return preserves(f, rho)


def invariants(F: FiniteAlgebra, arity_max: int) -> list[Relation]:
    """Relations of arity <= arity_max preserved by every operation of F.

    Constant operations count as nullary, so a relation must contain the
    constant tuple; the empty relation survives only without constants.
    """
    return [
        rho
        for n in range(1, arity_max + 1)
        for rho in all_relations(F.universe, n)
        if all(_invariant(f, rho) for f in F.ops)
    ]


def _binary(k: int, fn, name: str) -> Operation:
    return Operation.from_function(k, 2, fn, name)


def boolean2() -> FiniteAlgebra:
    return FiniteAlgebra(
        2,
        (
            _binary(2, min, "meet"),
            _binary(2, max, "join"),
            Operation(2, 1, (1, 0), "not"),
            Operation.constant(2, 0, "const0"),
            Operation.constant(2, 1, "const1"),
        ),
    )


def lattice2() -> FiniteAlgebra:
    return FiniteAlgebra(
        2,
        (
            _binary(2, min, "meet"),
            _binary(2, max, "join"),
            Operation.constant(2, 0, "const0"),
            Operation.constant(2, 1, "const1"),
        ),
    )


def semilattice2() -> FiniteAlgebra:
    return FiniteAlgebra(2, (_binary(2, min, "meet"),))


PRESETS = {"boolean2": boolean2, "lattice2": lattice2, "semilattice2": semilattice2}


def row_algebra(A: ValuedMatrix, cap: int = DEFAULT_TUPLE_CAP) -> list[tuple[int, ...]]:
    """Subalgebra of K^J generated by the rows of A."""
    return subalgebra_generate(A.algebra, A.n, A.entries, cap)


def evaluation_hom(B: Sequence[tuple[int, ...]], j: int) -> dict[tuple[int, ...], int]:
    return {x: x[j] for x in B}


def valued_phi(h: Mapping[tuple[int, ...], int], A: ValuedMatrix) -> tuple[int, ...]:
    """The I-vector i -> h(row i)."""
    missing = [i for i in range(A.m) if A.row(i) not in h]
    if missing:
        raise NotHom(f"rows {missing} are outside the domain of h")
    if not is_hom(h, A.algebra):
        raise NotHom("map does not commute with the operations")
    return tuple(h[A.row(i)] for i in range(A.m))


def verify_prop3a(A: ValuedMatrix, cap: int = DEFAULT_TUPLE_CAP) -> DualityReport:
    """phi maps Hom(B, K) bijectively onto the distinct columns of A.

    Meaningful when K is projectively trivial; the report also records the
    evaluation-hom, sandwich and injectivity claims separately.
    """
    K = A.algebra
    B = row_algebra(A, cap)
    H = homs(B, K)
    failures = []
    if not all(is_hom(h, K) for h in H):
        failures.append("hom search returned a non-homomorphism")
    images = [tuple(h[A.row(i)] for i in range(A.m)) for h in H]
    columns = {A.column(j) for j in range(A.n)}

    evals = [evaluation_hom(B, j) for j in range(A.n)]
    claim_eval_in_hom = all(is_hom(e, K) for e in evals)
    claim1 = all(valued_phi(e, A) == A.column(j) for j, e in enumerate(evals))
    same_rows = [
        (i, i2) for i in range(A.m) for i2 in range(i + 1, A.m) if A.row(i) == A.row(i2)
    ]
    in_d = all(g[i] == g[i2] for g in images for i, i2 in same_rows)
    claim2 = columns <= set(images) and in_d
    claim3 = claim_eval_in_hom and len(set(images)) == len(images)
    bijective = len(set(images)) == len(images) and set(images) == columns

    for ok, label in (
        (claim1, "evaluation homs do not map to columns"),
        (claim2, "columns / image / constant-on-equal-rows sandwich fails"),
        (claim3, "phi is not injective on Hom(B, K) or evaluations are not homs"),
        (bijective, "phi is not a bijection onto the distinct columns"),
    ):
        if not ok:
            failures.append(label)
    return DualityReport(
        passed=not failures,
        bijection=[(k, img) for k, img in enumerate(images)],
        failures=failures,
        details={
            "subalgebra_size": len(B),
            "homs": len(H),
            "distinct_columns": len(columns),
            "claim1": claim1,
            "claim2": claim2,
            "claim3": claim3,
        },
    )


def random_valued_matrix(
    rng: random.Random, K: FiniteAlgebra, max_m: int, max_n: int
) -> ValuedMatrix:
    m = rng.randint(1, max_m)
    n = rng.randint(1, max_n)
    return ValuedMatrix(
        K, tuple(tuple(rng.randrange(K.universe) for _ in range(n)) for _ in range(m))
    )
