"""Command-line frontend.

Every subcommand prints one JSON report on stdout (or a text summary with
``--format text``).  Exit codes: 0 pass, 1 verification failure, 2 usage or
input error.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
import time
from dataclasses import dataclass, field
from typing import Any, Callable, Optional, Sequence

from . import context as ctx
from . import poset as po
from . import setfam as sf
from . import spectra as sp
from . import tail
from . import ualg
from . import formats as fmt
from .errors import DualkitError, NotBounded, NotDistributive
from .sets import SetFamily, indices_of

SCHEMA = "dualkit.report/1"
CAPS_ENV = "DUALKIT_CAPS"
TIMING_FIELDS = ("wall_time", "seconds")


@dataclass
class Caps:
    members: int = sf.DEFAULT_MEMBER_CAP
    tuples: int = ualg.DEFAULT_TUPLE_CAP

    @classmethod
    def from_env(cls, text: Optional[str]) -> Caps:
        caps = cls()
        if not text:
            return caps
        for part in text.split(","):
            key, _, value = part.partition("=")
            key = key.strip()
            if key not in ("members", "tuples") or not value.strip().isdigit():
                raise UsageError(f"{CAPS_ENV}: expected members=N,tuples=M, got {part!r}")
            setattr(caps, key, int(value))
        return caps


@dataclass
class Outcome:
    result: Any
    passed: bool = True
    inputs: list[str] = field(default_factory=list)


class UsageError(Exception):
    pass


class VerificationFailed(Exception):
    def __init__(self, result: Any, inputs: Sequence[str] = ()):
        super().__init__("verification failed")
        self.result = result
        self.inputs = list(inputs)


def _jsonable(x: Any) -> Any:
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, (set, frozenset)):
        return sorted(_jsonable(v) for v in x)
    if hasattr(x, "tolist"):
        return x.tolist()
    return x


def _read(path: str) -> str:
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def _digest(paths: Sequence[str]) -> Optional[str]:
    if not paths:
        return None
    h = hashlib.sha256()
    for p in paths:
        with open(p, "rb") as fh:
            h.update(fh.read())
    return h.hexdigest()


def _names(labels: Sequence[str], mask: int) -> list[str]:
    return [labels[i] for i in indices_of(mask)]


def _family(fam: SetFamily) -> list[list[int]]:
    return fam.tolists()


# ---------------------------------------------------------------- context


def _load_context(args) -> fmt.LabelledContext:
    return fmt.read_context(_read(args.file), as_json=True if args.json else None)


def cmd_context_stats(args, caps: Caps) -> Outcome:
    lc = _load_context(args)
    R = lc.structure
    gens = ctx.rows_family(R)
    _, c = ctx.column_classes(R)
    return Outcome(
        {
            "m": R.m,
            "n": R.n,
            "c": c,
            "distinct_rows": len(gens),
            "distinct_columns": len(ctx.cols_family(R)),
            "boolean_size": len(sf.generate_boolean(gens, caps.members).members),
            "lattice_size": len(sf.generate_bounded_lattice(gens, caps.members).members),
        },
        inputs=[args.file],
    )


def cmd_context_galois(args, caps: Caps) -> Outcome:
    lc = _load_context(args)
    G = ctx.galois_lattice(lc.structure)
    concepts = [
        {
            "extent": _names(lc.objects, cpt.extent.bits),
            "intent": _names(lc.attributes, cpt.intent.bits),
        }
        for cpt in G.concepts
    ]
    return Outcome(
        {"concepts": concepts, "size": len(G), "cover_pairs": G.as_poset().cover_pairs()},
        inputs=[args.file],
    )


def cmd_context_dual(args, caps: Caps) -> Outcome:
    lc = _load_context(args)
    D = fmt.LabelledContext(ctx.dual_structure(lc.structure), lc.attributes, lc.objects)
    return Outcome({"cxt": fmt.write_cxt(D)}, inputs=[args.file])


def cmd_context_verify(args, caps: Caps) -> Outcome:
    lc = _load_context(args)
    report = sp.verify_duality(lc.structure, caps.members)
    return Outcome(
        {
            "failures": report.failures,
            "order_iso": report.order_iso,
            "ultrafilter_images": [s.tolist() for _, s in report.bijection],
            **report.details,
        },
        passed=report.passed,
        inputs=[args.file],
    )


# ---------------------------------------------------------------- setfam


def cmd_setfam_generate(args, caps: Caps) -> Outcome:
    R = _load_context(args).structure
    gens = ctx.rows_family(R)
    build = sf.generate_boolean if args.action == "boolean" else sf.generate_bounded_lattice
    F = build(gens, caps.members)
    return Outcome(
        {"kind": F.kind, "ground": F.ground, "size": len(F.members), "members": _family(F.members)},
        inputs=[args.file],
    )


def cmd_setfam_count(args, caps: Caps) -> Outcome:
    R = _load_context(args).structure
    predicted = sf.boolean_count_via_columns(R)
    generated = len(sf.generate_boolean(ctx.rows_family(R), caps.members).members)
    return Outcome(
        {"predicted": predicted, "generated": generated, "c": ctx.column_classes(R)[1]},
        passed=predicted == generated,
        inputs=[args.file],
    )


# ---------------------------------------------------------------- poset


def _load_poset(args) -> po.Poset:
    return fmt.read_poset(_read(args.file))


def _named_family(P: po.Poset, fam: SetFamily) -> list[list[str]]:
    return [[P.name(x) for x in indices_of(m)] for m in fam.masks]


def cmd_poset_segments(args, caps: Caps) -> Outcome:
    P = _load_poset(args)
    return Outcome(
        {
            "initial": _named_family(P, po.initial_segments(P)),
            "initial_finitely_generated": _named_family(P, po.finitely_generated_initial_segments(P)),
            "final": _named_family(P, po.final_segments(P)),
            "final_finitely_generated": _named_family(P, po.finitely_generated_final_segments(P)),
            "up_closed": po.is_up_closed(P),
        },
        inputs=[args.file],
    )


def cmd_poset_ideals(args, caps: Caps) -> Outcome:
    P = _load_poset(args)
    return Outcome(
        {"ideals": _named_family(P, po.ideals(P)), "filters": _named_family(P, po.filters(P))},
        inputs=[args.file],
    )


def cmd_poset_tail(args, caps: Caps) -> Outcome:
    P = _load_poset(args)
    F = (tail.tailalg if args.action == "tailalg" else tail.taillat)(P, caps.members)
    return Outcome(
        {"size": len(F.members), "members": _named_family(P, F.members)}, inputs=[args.file]
    )


def cmd_poset_closure(args, caps: Caps) -> Outcome:
    P = _load_poset(args)
    closure = tail.closure_of_down(P)
    downs = po.down_family(P)
    return Outcome(
        {
            "closure": _named_family(P, closure),
            "down": _named_family(P, downs),
            "empty_in_closure": 0 in closure.masks,
        },
        passed=closure == downs,
        inputs=[args.file],
    )


def cmd_poset_check_pps(args, caps: Caps) -> Outcome:
    P = _load_poset(args)
    report = tail.check_pps(P, caps.members)
    details = dict(report.details)
    details["spec_to_element"] = [
        None if x is None else P.name(x) for x in details["spec_to_element"]
    ]
    return Outcome(
        {"failures": report.failures, "order_iso": report.order_iso, **details},
        passed=report.passed,
        inputs=[args.file],
    )


def cmd_poset_check_ideals(args, caps: Caps) -> Outcome:
    P = _load_poset(args)
    report = tail.check_prop_ideals(P)
    lhs, rhs = tail.check_cor_ideauxclos(P)
    return Outcome(
        {
            "clauses": report.clauses,
            "all_equal": report.all_equal,
            "witnesses": report.witnesses,
            "ideals_closed_vs_up_closed": {"lhs": lhs, "rhs": rhs},
        },
        passed=report.passed and lhs == rhs,
        inputs=[args.file],
    )


def cmd_poset_birkhoff(args, caps: Caps) -> Outcome:
    L = _load_poset(args)
    try:
        w = tail.birkhoff_iso(L)
    except (NotDistributive, NotBounded) as exc:
        raise VerificationFailed({"error": type(exc).__name__, "message": str(exc)}, [args.file])
    return Outcome(
        {
            "irreducibles": [L.name(x) for x in w.irreducibles],
            "phi": [[L.name(w.irreducibles[k]) for k in indices_of(m)] for m in w.phi],
            "is_iso": w.is_iso,
        },
        passed=w.is_iso,
        inputs=[args.file],
    )


def cmd_poset_free_boolean(args, caps: Caps) -> Outcome:
    P = _load_poset(args)
    fb = tail.free_boolean(P)
    return Outcome(
        {
            "generators": len(fb.fg),
            "size": len(fb.carrier.members),
            "final_segments": _named_family(P, fb.fg),
            "embed": [indices_of(e) for e in fb.embed],
        },
        inputs=[args.file],
    )


def _power_set_algebra(k: int, cap: int) -> sf.GeneratedFamily:
    return sf.generate_boolean(SetFamily.from_masks(k, [1 << i for i in range(k)]), cap)


def cmd_poset_universal(args, caps: Caps) -> Outcome:
    P = _load_poset(args)
    if args.ground < 0:
        raise UsageError("--ground must be non-negative")
    B = _power_set_algebra(args.ground, caps.members)
    fb = tail.free_boolean(P)
    if args.map is not None:
        try:
            values = json.loads(args.map)
            f = [sum(1 << v for v in set(vals)) for vals in values]
        except (ValueError, TypeError):
            raise UsageError("--map must be a JSON list of index lists") from None
        ok = tail.universal_property_check(P, B, f, fb)
        return Outcome({"maps": 1, "unique_extension": ok}, passed=ok, inputs=[args.file])
    failures = []
    count = 0
    for f in tail.monotone_maps(P, B):
        count += 1
        if not tail.universal_property_check(P, B, f, fb):
            failures.append([indices_of(v) for v in f])
    return Outcome({"maps": count, "failures": failures}, passed=not failures, inputs=[args.file])


# ---------------------------------------------------------------- alg


def _load_algebra(args) -> tuple[ualg.FiniteAlgebra, list[str]]:
    if args.preset and args.file:
        raise UsageError("give either an algebra file or --preset, not both")
    if args.preset:
        if args.preset not in ualg.PRESETS:
            raise UsageError(f"unknown preset {args.preset!r}; choose from {sorted(ualg.PRESETS)}")
        return ualg.PRESETS[args.preset](), []
    if not args.file:
        raise UsageError("an algebra file or --preset is required")
    return fmt.read_algebra(_read(args.file)), [args.file]


def _op_label(f: ualg.Operation, k: int) -> str:
    return f.name or f"op{k}"


def _op_json(f: ualg.Operation) -> dict:
    return {"name": f.name, "arity": f.arity, "table": list(f.table)}


def _load_relations(args, k: int) -> tuple[list[ualg.Relation], list[str]]:
    if not args.relations:
        raise UsageError("--relations FILE is required")
    size, rels = fmt.read_relations(_read(args.relations))
    if size != k:
        raise UsageError(f"relations over {size} elements, algebra has {k}")
    return rels, [args.relations]


def _report(r: ualg.AlgebraReport, inputs: list[str]) -> Outcome:
    return Outcome(
        {"holds": r.holds, "n_max": r.n_max, "witnesses": r.witnesses, **r.details},
        passed=r.holds,
        inputs=inputs,
    )


def cmd_alg_classify(args, caps: Caps) -> Outcome:
    K, inputs = _load_algebra(args)
    out = {}
    for k, f in enumerate(K.ops):
        c = ualg.classify(f)
        out[_op_label(f, k)] = {
            "arity": f.arity,
            "projection": c.projection,
            "idempotent": c.idempotent,
            "constant": c.constant,
        }
    return Outcome(out, inputs=inputs)


def cmd_alg_preserves(args, caps: Caps) -> Outcome:
    K, inputs = _load_algebra(args)
    rels, more = _load_relations(args, K.universe)
    table = {
        _op_label(f, k): [ualg.preserves(f, rho) for rho in rels] for k, f in enumerate(K.ops)
    }
    passed = all(all(v) for v in table.values())
    return Outcome({"preserves": table}, passed=passed, inputs=inputs + more)


def cmd_alg_commutes(args, caps: Caps) -> Outcome:
    K, inputs = _load_algebra(args)
    labels = [_op_label(f, k) for k, f in enumerate(K.ops)]
    table = {
        labels[a]: {labels[b]: ualg.commutes(K.ops[a], K.ops[b]) for b in range(len(K.ops))}
        for a in range(len(K.ops))
    }
    return Outcome({"commutes": table}, inputs=inputs)


def cmd_alg_subalg(args, caps: Caps) -> Outcome:
    K, inputs = _load_algebra(args)
    subs, strategy = ualg.subuniverses(K, args.n)
    return Outcome(
        {"n": args.n, "strategy": strategy, "count": len(subs), "subuniverses": subs},
        inputs=inputs,
    )


def cmd_alg_homs(args, caps: Caps) -> Outcome:
    K, inputs = _load_algebra(args)
    hs = ualg.homs(ualg.power(K, args.n), K)
    return Outcome(
        {
            "n": args.n,
            "count": len(hs),
            "projections": [ualg.projection_index(h) for h in hs],
            "homs": [[list(x) + [h[x]] for x in sorted(h)] for h in hs],
        },
        inputs=inputs,
    )


def cmd_alg_property(args, caps: Caps) -> Outcome:
    K, inputs = _load_algebra(args)
    check = {
        "projection-property": ualg.has_projection_property,
        "projectively-trivial": ualg.is_projectively_trivial,
        "projective": ualg.is_projective,
    }[args.action]
    return _report(check(K, args.n), inputs)


def cmd_alg_centralizer(args, caps: Caps) -> Outcome:
    K, inputs = _load_algebra(args)
    ops = ualg.centralizer(K, args.arity)
    return Outcome({"count": len(ops), "ops": [_op_json(f) for f in ops]}, inputs=inputs)


def cmd_alg_pol(args, caps: Caps) -> Outcome:
    k = args.size
    inputs: list[str] = []
    if args.file or args.preset:
        K, inputs = _load_algebra(args)
        k = K.universe
    if k is None:
        if not args.relations:
            raise UsageError("pol needs --relations (and --size when no algebra is given)")
        k = json.loads(_read(args.relations)).get("size")
    rels, more = _load_relations(args, k)
    ops = ualg.polymorph(rels, args.arity, k)
    return Outcome({"count": len(ops), "ops": [_op_json(f) for f in ops]}, inputs=inputs + more)


def cmd_alg_inv(args, caps: Caps) -> Outcome:
    K, inputs = _load_algebra(args)
    rels = ualg.invariants(K, args.arity)
    return Outcome(
        {"count": len(rels), "relations": [[list(t) for t in r.tuples] for r in rels]},
        inputs=inputs,
    )


def cmd_alg_verify_3a(args, caps: Caps) -> Outcome:
    if not args.file:
        raise UsageError("verify-3a needs a valued matrix file")
    A = fmt.read_valued_matrix(_read(args.file))
    report = ualg.verify_prop3a(A, caps.tuples)
    return Outcome(
        {
            "failures": report.failures,
            "images": [list(img) for _, img in report.bijection],
            **report.details,
        },
        passed=report.passed,
        inputs=[args.file],
    )


# ---------------------------------------------------------------- meta


def cmd_meta_selftest(args, caps: Caps) -> Outcome:
    from . import selftest

    numbers = sorted(selftest.CRITERIA)
    if args.criteria:
        try:
            numbers = sorted({int(x) for x in args.criteria.split(",")})
        except ValueError:
            raise UsageError("--criteria takes comma-separated numbers") from None
        unknown = [k for k in numbers if k not in selftest.CRITERIA]
        if unknown:
            raise UsageError(f"unknown criteria {unknown}")
    seed = selftest.DEFAULT_SEED if args.seed is None else args.seed
    results = [selftest.run_criterion(k, seed) for k in numbers]
    return Outcome(
        {"seed": seed, "criteria": [r.as_dict() for r in results]},
        passed=all(r.passed for r in results),
    )


# ---------------------------------------------------------------- parser


def _add_context(sub, name: str, fn: Callable, help: str) -> None:
    p = sub.add_parser(name, help=help)
    p.add_argument("file")
    p.add_argument("--json", action="store_true", help="input is JSON rather than Burmeister")
    p.set_defaults(fn=fn, action=name)


def _add_poset(sub, name: str, fn: Callable, help: str):
    p = sub.add_parser(name, help=help)
    p.add_argument("file")
    p.set_defaults(fn=fn, action=name)
    return p


def _add_alg(sub, name: str, fn: Callable, help: str):
    p = sub.add_parser(name, help=help)
    p.add_argument("file", nargs="?")
    p.add_argument("--preset", choices=sorted(ualg.PRESETS))
    p.set_defaults(fn=fn, action=name)
    return p


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="dualkit", description=__doc__.splitlines()[0])
    parser.add_argument("--format", choices=("json", "text"), default="json")
    parser.add_argument("--cap-members", type=int, help="largest generated set family")
    parser.add_argument("--cap-tuples", type=int, help="largest generated subalgebra")
    parser.add_argument("--seed", type=int, help="seed for randomized suites")
    groups = parser.add_subparsers(dest="group", required=True)

    g = groups.add_parser("context", help="incidence structures").add_subparsers(
        dest="cmd", required=True
    )
    _add_context(g, "stats", cmd_context_stats, "sizes, column classes, generated families")
    _add_context(g, "galois", cmd_context_galois, "concepts of the Galois lattice")
    _add_context(g, "dual", cmd_context_dual, "transposed structure as .cxt")
    _add_context(g, "verify-duality", cmd_context_verify, "spectra against distinct columns")

    g = groups.add_parser("setfam", help="families generated by rows").add_subparsers(
        dest="cmd", required=True
    )
    _add_context(g, "lattice", cmd_setfam_generate, "bounded lattice generated by the rows")
    _add_context(g, "boolean", cmd_setfam_generate, "Boolean algebra generated by the rows")
    _add_context(g, "count", cmd_setfam_count, "2^c against the generated Boolean algebra")

    g = groups.add_parser("poset", help="posets, tails and free algebras").add_subparsers(
        dest="cmd", required=True
    )
    _add_poset(g, "segments", cmd_poset_segments, "initial and final segments")
    _add_poset(g, "ideals", cmd_poset_ideals, "ideals and filters")
    _add_poset(g, "tailalg", cmd_poset_tail, "Boolean algebra generated by principal final segments")
    _add_poset(g, "taillat", cmd_poset_tail, "lattice generated by principal final segments")
    _add_poset(g, "closure", cmd_poset_closure, "closure of the principal initial segments")
    _add_poset(g, "check-pps", cmd_poset_check_pps, "spectrum of the tail lattice against P")
    _add_poset(g, "check-ideals", cmd_poset_check_ideals, "equivalent conditions on ideals")
    _add_poset(g, "birkhoff", cmd_poset_birkhoff, "Birkhoff representation of a lattice")
    _add_poset(g, "free-boolean", cmd_poset_free_boolean, "free Boolean algebra over P")
    p = _add_poset(g, "universal", cmd_poset_universal, "unique extension of monotone maps")
    p.add_argument("--ground", type=int, default=2, help="target is the power set of 0..k-1")
    p.add_argument("--map", help="JSON list, one index list per element")

    g = groups.add_parser("alg", help="finite algebras").add_subparsers(dest="cmd", required=True)
    _add_alg(g, "classify", cmd_alg_classify, "projection / idempotent / constant")
    p = _add_alg(g, "preserves", cmd_alg_preserves, "operations against relations")
    p.add_argument("--relations")
    _add_alg(g, "commutes", cmd_alg_commutes, "pairwise commutation of operations")
    for name, fn, help in (
        ("subalg", cmd_alg_subalg, "subuniverses of K^n"),
        ("homs", cmd_alg_homs, "homomorphisms K^n -> K"),
        ("projection-property", cmd_alg_property, "idempotent homs K^n -> K are projections"),
        ("projectively-trivial", cmd_alg_property, "homs from subalgebras of K^n are projections"),
        ("projective", cmd_alg_property, "homs K^n -> K are projections"),
    ):
        p = _add_alg(g, name, fn, help)
        p.add_argument("--n", type=int, default=2)
    p = _add_alg(g, "centralizer", cmd_alg_centralizer, "operations commuting with all of K")
    p.add_argument("--arity", type=int, default=2)
    p = _add_alg(g, "pol", cmd_alg_pol, "polymorphisms of a relation set")
    p.add_argument("--relations")
    p.add_argument("--size", type=int)
    p.add_argument("--arity", type=int, default=2)
    p = _add_alg(g, "inv", cmd_alg_inv, "relations preserved by K")
    p.add_argument("--arity", type=int, default=2)
    _add_alg(g, "verify-3a", cmd_alg_verify_3a, "homs of a row algebra against columns")

    g = groups.add_parser("meta", help="self checks").add_subparsers(dest="cmd", required=True)
    p = g.add_parser("selftest", help="run the acceptance sweeps")
    p.add_argument("--criteria", help="comma-separated criterion numbers")
    p.set_defaults(fn=cmd_meta_selftest, action="selftest")
    return parser


def _text(report: dict) -> str:
    lines = [f"{report['command']}: {'PASS' if report['passed'] else 'FAIL'}"]
    result = report["result"]
    if isinstance(result, dict):
        for key in sorted(result):
            value = result[key]
            rendered = json.dumps(value, sort_keys=True)
            if len(rendered) > 100:
                rendered = rendered[:97] + "..."
            lines.append(f"  {key}: {rendered}")
    return "\n".join(lines) + "\n"


def _caps(args) -> Caps:
    caps = Caps.from_env(os.environ.get(CAPS_ENV))
    if args.cap_members is not None:
        caps.members = args.cap_members
    if args.cap_tuples is not None:
        caps.tuples = args.cap_tuples
    if caps.members < 1 or caps.tuples < 1:
        raise UsageError("caps must be positive")
    return caps


def run(argv: Optional[Sequence[str]] = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 2

    command = f"{args.group} {args.cmd}"
    start = time.perf_counter()
    try:
        caps = _caps(args)
        outcome = args.fn(args, caps)
    except VerificationFailed as exc:
        outcome = Outcome(exc.result, passed=False, inputs=exc.inputs)
    except (UsageError, fmt.FormatError, DualkitError, ValueError, IndexError) as exc:
        print(f"dualkit: error: {exc}", file=err)
        return 2

    report = {
        "schema": SCHEMA,
        "command": command,
        "argv": argv,
        "input_digest": _digest(outcome.inputs),
        "result": _jsonable(outcome.result),
        "passed": outcome.passed,
        "wall_time": round(time.perf_counter() - start, 6),
    }
    if args.format == "text":
        out.write(_text(report))
    else:
        out.write(json.dumps(report, sort_keys=True) + "\n")
    return 0 if outcome.passed else 1


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
