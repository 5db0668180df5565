"""Batch front-end: validate | quiver | strings | classify | ar | verify |
extend | reduce, all emitting deterministic machine-readable artifacts."""

import argparse
import hashlib
import json
import os
import sys

from . import __version__
from .defining_system import (AdmissibleVertex, DefiningSystemError,
                              NotAdmissible, from_json, reduce_to_fundamental,
                              extend as extend_ds)
from .field import PrimeField
from .quiver import build_quiver, build_relations, relations_to_json
from .strings import WordCalculus
from .string_modules import StringModules, check_relations
from .algebra import AlgebraBasis
from .homlab import ArVerifier, is_indecomposable, IndecVerdict
from .vsc import hom_pattern_of_functor, i_lemma_vertices


def _provenance(ds):
    return {
        "tool": "tworay",
        "version": __version__,
        "system": ds.to_json_obj(),
        "system_sha256": hashlib.sha256(ds.to_json().encode()).hexdigest(),
    }


def _dump(obj):
    print(json.dumps(obj, sort_keys=True, indent=2, default=repr))


def _load_system(path):
    with open(path) as fh:
        return from_json(fh.read())


def _threads(args):
    env = os.environ.get("TWORAY_THREADS")
    if env:
        return max(1, int(env))
    return max(1, args.jobs)


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(
        prog="tworay",
        description="defining systems, their bound quiver algebras, and the "
                    "classification of their modules",
    )
    ap.add_argument("-j", "--jobs", type=int, default=1,
                    help="worker threads (TWORAY_THREADS overrides)")
    sub = ap.add_subparsers(dest="cmd", required=True)

    sp = sub.add_parser("validate", help="check the defining-system invariants")
    sp.add_argument("input")

    sp = sub.add_parser("quiver", help="emit the bound quiver and relations")
    sp.add_argument("input")
    sp.add_argument("--dot", action="store_true", help="DOT instead of JSON")

    sp = sub.add_parser("strings", help="enumerate strings with family tags")
    sp.add_argument("input")
    sp.add_argument("--max-len", type=int, required=True)

    sp = sub.add_parser("classify", help="bounded classification inventory")
    sp.add_argument("input")
    sp.add_argument("--max-dim", type=int, required=True)
    sp.add_argument("--lambda", dest="lam", default="2,3,5",
                    help="comma-separated band parameters")
    sp.add_argument("--field", type=int, default=32003)

    sp = sub.add_parser("ar", help="instantiate the almost-split sequence rows")
    sp.add_argument("input")
    sp.add_argument("--max-dim", type=int, required=True)
    sp.add_argument("--field", type=int, default=32003)

    sp = sub.add_parser("verify", help="full verification report")
    sp.add_argument("input")
    sp.add_argument("--max-dim", type=int, required=True)
    sp.add_argument("--field", type=int, default=32003)
    sp.add_argument("--lambda", dest="lam", default="2,3,5")
    sp.add_argument("--lemma-len", type=int, default=None,
                    help="string length for the functor pattern checks")
    sp.add_argument("--from-inventory", default=None,
                    help="classify output to replay; verdicts must agree")

    sp = sub.add_parser("extend", help="apply one admissible insertion")
    sp.add_argument("input")
    sp.add_argument("--vertex", required=True, help="KIND:I:J, e.g. x:1:2")

    sp = sub.add_parser("reduce", help="decompose into fundamental + chain")
    sp.add_argument("input")

    args = ap.parse_args(argv)

    bound = getattr(args, "max_dim", getattr(args, "max_len", 0))
    if bound is not None and bound < 0:
        print(json.dumps({"error": "bound must be nonnegative"}))
        return 2
    try:
        ds = _load_system(args.input)
    except (OSError, json.JSONDecodeError, DefiningSystemError) as exc:
        print(json.dumps({"error": f"{type(exc).__name__}: {exc}"}))
        return 2

    if args.cmd == "validate":
        _dump({"provenance": _provenance(ds), "valid": True})
        return 0

    quiver = build_quiver(ds)
    relations = build_relations(ds, quiver)

    if args.cmd == "quiver":
        if args.dot:
            sys.stdout.write(quiver.to_dot())
        else:
            _dump({
                "provenance": _provenance(ds),
                "vertices": quiver.vertices,
                "arrows": {a: [quiver.source[a], quiver.target[a]]
                           for a in quiver.arrows},
                "q1_primed": sorted(quiver.primed),
                "relations": json.loads(relations_to_json(relations)),
            })
        return 0

    calc = WordCalculus(quiver)

    if args.cmd == "strings":
        sx_keys = {}
        for x in quiver.q0_primed():
            for w in calc.s_x(x, args.max_len):
                sx_keys.setdefault(calc.word_key(w), []).append(x)
        sprime = {calc.word_key(w) for w in calc.s_prime(args.max_len)}
        items = []
        for w in calc.all_strings(args.max_len):
            key = calc.word_key(w)
            items.append({
                "word": calc.to_json_obj(w),
                "terminates_at": calc.terminus(w),
                "starts_at": calc.source(w),
                "length": w.length,
                "in_s_x_of": sorted(sx_keys.get(key, [])),
                "in_s_prime": key in sprime,
            })
        bands = [{"name": n, "word": calc.to_json_obj(b)}
                 for n, b in calc.bands()]
        _dump({"provenance": _provenance(ds), "max_len": args.max_len,
               "strings": items, "bands": bands})
        return 0

    field = PrimeField(getattr(args, "field", 32003))
    modules = StringModules(calc, field)

    if args.cmd in ("classify", "verify"):
        lam = tuple(int(x) for x in args.lam.split(","))
        if any(l % field.p == 0 for l in lam):
            print(json.dumps({"error": "lambda sample must avoid 0 in k*"}))
            return 2

    if args.cmd == "classify":
        entries = modules.theorem_inventory(args.max_dim, lam)
        _dump({
            "provenance": _provenance(ds),
            "max_dim": args.max_dim,
            "field": field.p,
            "lambda_sample": sorted({field.red(l) for l in lam} | {1}),
            "entries": [{"family": e.tag, "params": repr(e.params),
                         "dim": e.rep.total_dim,
                         "dim_vector": {v: d for v, d in
                                        e.rep.dim_vector().items() if d}}
                        for e in entries],
        })
        return 0

    algebra = AlgebraBasis(quiver, relations, field)

    if args.cmd == "ar":
        ver = ArVerifier(modules, algebra)
        rows = ver.rows(args.max_dim)
        _dump({
            "provenance": _provenance(ds),
            "max_dim": args.max_dim,
            "rows": [{"family": r["family"], "key": repr(r["key"]),
                      "left": repr(r["left"]), "middle": repr(r["middle"]),
                      "right": repr(r["right"]),
                      "right_dim": r["right_dim"],
                      "middle_dim": r["middle_dim"]} for r in rows],
        })
        return 0

    if args.cmd == "verify":
        ver = ArVerifier(modules, algebra, lam)
        report = ver.verify(args.max_dim, jobs=_threads(args))
        inv = modules.theorem_inventory(args.max_dim, lam)
        inventory_replayed = None
        if args.from_inventory:
            with open(args.from_inventory) as fh:
                stored = json.load(fh)
            want = [(e["family"], e["params"], e["dim"])
                    for e in stored["entries"]]
            have = [(e.tag, repr(e.params), e.rep.total_dim) for e in inv]
            inventory_replayed = want == have
        relation_failures = []
        indec_failures = []
        for e in inv:
            if check_relations(e.rep, relations):
                relation_failures.append(repr(e.key))
            verdict = is_indecomposable(e.rep)
            if verdict.status != IndecVerdict.LOCAL:
                indec_failures.append((repr(e.key), verdict.status))
        lemma_len = args.lemma_len if args.lemma_len is not None else min(
            6, args.max_dim)
        lemma_reports = []
        from .defining_system import admissible_vertices

        for v in sorted(str(a) for a in admissible_vertices(ds)):
            for which in ("R", "X"):
                _, _, rep = hom_pattern_of_functor(modules, v, which, lemma_len)
                lemma_reports.append({"vertex": v, "lemma": which,
                                      "ok": rep["ok"],
                                      "mismatches": rep["mismatches"]})
        for v in i_lemma_vertices(quiver):
            _, _, rep = hom_pattern_of_functor(modules, v, "I", lemma_len)
            lemma_reports.append({"vertex": v, "lemma": "I", "ok": rep["ok"],
                                  "mismatches": rep["mismatches"]})
        failures = list(report["failures"])
        failures += [f"relations violated by {k}" for k in relation_failures]
        failures += [f"not indecomposable: {k} ({s})"
                     for k, s in indec_failures]
        failures += [f"lemma {r['lemma']} mismatch at {r['vertex']}"
                     for r in lemma_reports if not r["ok"]]
        if inventory_replayed is False:
            failures.append("stored inventory does not replay")
        out = {
            "provenance": _provenance(ds),
            "max_dim": args.max_dim,
            "field": field.p,
            "well_defined": not relation_failures,
            "all_indecomposable": not indec_failures,
            "inventory_replayed": inventory_replayed,
            "ar": {k: report[k] for k in ("rows_enumerated", "rows_checked",
                                          "inventory_size", "coverage")},
            "ar_rows": report["rows"],
            "lemma_checks": lemma_reports,
            "failures": failures,
        }
        _dump(out)
        return 0 if not failures else 1

    if args.cmd == "extend":
        try:
            v = AdmissibleVertex.parse(args.vertex)
            out = extend_ds(ds, v)
        except (ValueError, NotAdmissible) as exc:
            print(json.dumps({"error": f"{type(exc).__name__}: {exc}"}))
            return 2
        _dump({"provenance": _provenance(ds), "vertex": str(v),
               "extended": out.to_json_obj()})
        return 0

    if args.cmd == "reduce":
        fund, chain = reduce_to_fundamental(ds)
        _dump({"provenance": _provenance(ds),
               "fundamental": fund.to_json_obj(),
               "chain": [str(v) for v in chain]})
        return 0

    raise AssertionError("unreachable")


if __name__ == "__main__":
    sys.exit(main())
