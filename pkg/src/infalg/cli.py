"""Command line surface: verify, classify, embed, ci, separoid.

Machine-readable JSON goes to stdout, a human summary to stderr. Exit codes:
0 when every requested check passes, 1 when some check fails, 2 on input or
usage errors. With ``--no-timing`` the JSON output is byte-identical across
runs on the same input.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
import time

from . import embedding as emb
from .algebra import is_commutative, support_lemma_check, verify_axioms
from .errors import InfalgError, MalformedInstance, PreconditionFailed
from .jsonio import load_ci_relation, load_instance, load_json_file, load_poset
from .order import FiniteLattice, is_boolean, meet_table
from .report import Report, jsonable
from .separoid import (CIRelation, check_basic, check_qseparoid,
                       check_separoid, check_strong_separoid, dawid_relation,
                       lattice_relation)

DEFAULT_MAX_IDEALS = 20


class CliReport:
    """Collects checks across library calls and renders the final report."""

    def __init__(self, command: str, path: str, with_timing: bool):
        self.command = command
        self.path = path
        self.with_timing = with_timing
        self.rows = []
        self.extras = {}
        digest = hashlib.sha256()
        try:
            digest.update(open(path, "rb").read())
            self.digest = "sha256:" + digest.hexdigest()
        except OSError:
            self.digest = None

    def timed(self, label: str, fn, *args, **kwargs):
        start = time.perf_counter()
        result = fn(*args, **kwargs)
        self._last_ms = round((time.perf_counter() - start) * 1000, 3)
        return result

    def extend(self, prefix: str, report: Report, time_ms=None):
        ms = self._last_ms if time_ms is None else time_ms
        for c in report.checks:
            row = {"name": f"{prefix}.{c.name}", "verdict": c.verdict}
            if c.witness is not None:
                row["witness"] = jsonable(c.witness)
            if self.with_timing:
                row["time_ms"] = ms
            self.rows.append(row)

    def add(self, name: str, passed: bool, witness=None, verdict=None):
        row = {"name": name,
               "verdict": verdict or ("pass" if passed else "fail")}
        if witness is not None:
            row["witness"] = jsonable(witness)
        if self.with_timing:
            row["time_ms"] = getattr(self, "_last_ms", 0.0)
        self.rows.append(row)

    @property
    def overall(self) -> bool:
        return all(r["verdict"] != "fail" for r in self.rows)

    def emit(self) -> int:
        body = {"command": self.command, "input": self.path}
        if self.digest:
            body["digest"] = self.digest
        body.update(self.extras)
        body["checks"] = self.rows
        body["overall"] = self.overall
        print(json.dumps(body, indent=1, sort_keys=False))
        for r in self.rows:
            mark = {"pass": "PASS", "fail": "FAIL", "n/a": " N/A"}[r["verdict"]]
            line = f"[{mark}] {r['name']}"
            if "witness" in r and r["verdict"] == "fail":
                line += f"  witness={r['witness']}"
            print(line, file=sys.stderr)
        print(f"OVERALL: {'PASS' if self.overall else 'FAIL'}", file=sys.stderr)
        return 0 if self.overall else 1


def _load(args):
    return load_instance(load_json_file(args.file), args.strict_e4)


def _verified(args, rep: CliReport):
    a = _load(args)
    axioms = rep.timed("axioms", verify_axioms, a)
    rep.extend("axioms", axioms)
    if not axioms.passed:
        return a, False
    return a, True


def cmd_verify(args) -> int:
    rep = CliReport("verify", args.file, not args.no_timing)
    a, ok = _verified(args, rep)
    if ok:
        support = rep.timed("support", support_lemma_check, a)
        rep.extend("support", support)
    return rep.emit()


def cmd_classify(args) -> int:
    rep = CliReport("classify", args.file, not args.no_timing)
    a, ok = _verified(args, rep)
    if not ok:
        rep.emit()
        return 1
    atomset = rep.timed("atoms", emb.compute_atoms, a)
    local = emb.classify_locally_atomic(a, atomset)
    boolean, _ = is_boolean(a.carrier_lattice())
    dist_ok, reason, _ = emb.distributive_precondition(a)
    commutative, _, _ = is_commutative(a)
    cls = atomset.classification
    flags = {
        "atomic": cls in ("atomic", "atomistic", "completely_atomistic"),
        "atomistic": cls in ("atomistic", "completely_atomistic"),
        "completely_atomistic": cls == "completely_atomistic",
        **local,
        "boolean": boolean,
        "distributive_lattice_algebra": dist_ok,
        "commutative": commutative,
    }
    if not dist_ok:
        flags["distributive_lattice_algebra_reason"] = reason
    rep.extras["flags"] = flags
    return rep.emit()


def _generating_kinds(a, atomset):
    """Which generating-set kinds apply to this instance."""
    kinds = {"full": emb.full_generating_set(a)}
    if atomset.classification in ("atomistic", "completely_atomistic"):
        kinds["atoms"] = emb.generating_set(a, atomset.atoms, "atoms")
    ok, _, _ = emb.distributive_precondition(a)
    if ok:
        from .order import meet_irreducibles
        irr = sorted(meet_irreducibles(a.carrier_lattice()))
        kinds["meet_irreducibles"] = emb.generating_set(
            a, irr, "meet_irreducibles")
    return kinds


def cmd_embed(args) -> int:
    rep = CliReport("embed", args.file, not args.no_timing)
    a, ok = _verified(args, rep)
    if not ok:
        rep.emit()
        return 1
    atomset = emb.compute_atoms(a)
    kind = args.generating
    try:
        if kind == "full":
            result = rep.timed("embed", emb.build_embedding, a,
                               emb.full_generating_set(a))
        elif kind == "atoms":
            if atomset.classification not in ("atomistic",
                                              "completely_atomistic"):
                rep.add("embed.applicable", False,
                        witness=atomset.classification)
                rep.emit()
                return 1
            result = rep.timed("embed", emb.build_embedding, a,
                               emb.generating_set(a, atomset.atoms, "atoms"))
        elif kind == "meet-irreducible":
            result = rep.timed("embed",
                               emb.finite_distributive_representation, a)
        else:
            local = emb.classify_locally_atomic(a, atomset)
            if not local["locally_atomistic"]:
                rep.add("embed.applicable", False, witness=local)
                rep.emit()
                return 1
            _, result = rep.timed("embed", emb.build_tuple_system, a,
                                  atomset.relative)
    except PreconditionFailed as exc:
        rep.add("embed.applicable", False,
                witness=(exc.reason, jsonable(exc.witness)))
        rep.emit()
        return 1
    rep.extend("embed", result.report)
    rep.extras["embedding"] = result.to_json(a)
    if args.check_uniqueness:
        induced = {name: emb.induced_ci(a, g)
                   for name, g in _generating_kinds(a, atomset).items()}
        unique = rep.timed("uniqueness", emb.ci_uniqueness_check, a, induced)
        rep.extend("uniqueness", unique)
    return rep.emit()


def cmd_ci(args) -> int:
    rep = CliReport("ci", args.file, not args.no_timing)
    a, ok = _verified(args, rep)
    if not ok:
        rep.emit()
        return 1
    try:
        x = a.domain_index(args.x)
        y = a.domain_index(args.y)
        z = a.domain_index(args.z)
    except KeyError as exc:
        raise MalformedInstance(str(exc)) from exc
    if args.relation == "induced":
        rel = rep.timed("ci", emb.induced_ci, a, emb.full_generating_set(a))
        verdict = (x, y, z) in rel
        rep.add("ci.triple_independent", verdict)
    else:
        mt, _ = meet_table(a.domains)
        if mt is None:
            rep.add("ci.triple_independent", True, verdict="n/a",
                    witness="domain order is not a lattice")
            verdict = None
        else:
            lat = FiniteLattice(a.domains, a.domain_join, mt)
            rel = (lattice_relation(lat) if args.relation == "lattice"
                   else dawid_relation(lat))
            verdict = (x, y, z) in rel
            rep.add("ci.triple_independent", verdict)
    rep.extras["triple"] = {"x": args.x, "y": args.y, "z": args.z,
                            "independent": verdict}
    if args.properties:
        single = CIRelation(a.domains, [(x, y, z)])
        props = rep.timed("properties", emb.verify_comb_extr_properties,
                          a, single)
        rep.extend("properties", props)
    return rep.emit()


def _axioms_requested(spec: str) -> set:
    out = set()
    for token in spec.split(","):
        token = token.strip().lower()
        if not token:
            continue
        if token == "basic":
            out.add("basic")
        elif "-" in token:
            lo, hi = token.split("-")
            out.update(f"c{i}" for i in range(int(lo[1:]), int(hi[1:]) + 1))
        else:
            out.add(token)
    return out


def cmd_separoid(args) -> int:
    rep = CliReport("separoid", args.file, not args.no_timing)
    data = load_json_file(args.file)
    if isinstance(data, dict) and "kind" in data:
        a = load_instance(data, args.strict_e4)
        order = a.domains
    else:
        order = load_poset(data)
    mt, _ = meet_table(order)
    lat = None
    if mt is not None:
        from .order import join_table
        jt, _ = join_table(order)
        if jt is not None:
            lat = FiniteLattice(order, jt, mt)

    if args.relation == "from-file":
        if not args.relation_file:
            raise MalformedInstance("--relation-file required")
        rel = load_ci_relation(load_json_file(args.relation_file), order)
    else:
        if lat is None:
            rep.add("relation.applicable", True, verdict="n/a",
                    witness="order is not a lattice")
            return rep.emit()
        rel = (lattice_relation(lat) if args.relation == "lattice"
               else dawid_relation(lat))

    wanted = _axioms_requested(args.axioms)
    if wanted & {"c1", "c2", "c3", "c4"}:
        q = rep.timed("axioms", check_qseparoid, rel)
        rep.extend("axioms", Report(q.title, tuple(
            c for c in q.checks if c.name in wanted)))
    if wanted & {"c5", "c6"}:
        s = rep.timed("axioms", check_separoid, rel)
        rep.extend("axioms", Report(s.title, tuple(
            c for c in s.checks if c.name in wanted)))
    if "c7" in wanted:
        rep.extend("axioms", rep.timed("axioms", check_strong_separoid, rel))
    if "basic" in wanted:
        rep.extend("axioms", rep.timed("axioms", check_basic, rel))
    return rep.emit()


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="infalg",
        description="Verify, classify and represent finite information algebras.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("file", help="instance or order description (JSON)")
    common.add_argument("--no-timing", action="store_true",
                        help="omit timing fields for reproducible output")
    common.add_argument("--strict-e4", action=argparse.BooleanOptionalAction,
                        default=None,
                        help="force the support axiom on or off")
    common.add_argument("--max-ideals", type=int,
                        default=int(os.environ.get("INFALG_MAX_IDEALS",
                                                   DEFAULT_MAX_IDEALS)),
                        help="carrier bound for ideal enumeration")
    sub = parser.add_subparsers(dest="cmd", required=True)

    p = sub.add_parser("verify", parents=[common],
                       help="check the axioms and the support facts")
    p.set_defaults(func=cmd_verify)
    p = sub.add_parser("classify", parents=[common],
                       help="report the structural classification flags")
    p.set_defaults(func=cmd_classify)
    p = sub.add_parser("embed", parents=[common],
                       help="build and verify a set-algebra embedding")
    p.add_argument("--generating", default="full",
                   choices=["full", "atoms", "meet-irreducible", "tuple"])
    p.add_argument("--check-uniqueness", action="store_true",
                   help="compare induced independence across generating sets")
    p.set_defaults(func=cmd_embed)
    p = sub.add_parser("ci", parents=[common],
                       help="test one conditional-independence triple")
    p.add_argument("--x", required=True)
    p.add_argument("--y", required=True)
    p.add_argument("--z", required=True)
    p.add_argument("--relation", default="induced",
                   choices=["induced", "lattice", "dawid"])
    p.add_argument("--properties", action="store_true",
                   help="also check the combination/extraction properties")
    p.set_defaults(func=cmd_ci)
    p = sub.add_parser("separoid", parents=[common],
                       help="check separoid axioms of a relation")
    p.add_argument("--relation", default="lattice",
                   choices=["lattice", "dawid", "from-file"])
    p.add_argument("--relation-file")
    p.add_argument("--axioms", default="c1-c7,basic")
    p.set_defaults(func=cmd_separoid)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except json.JSONDecodeError as exc:
        print(f"error: invalid JSON at line {exc.lineno} column {exc.colno}: "
              f"{exc.msg}", file=sys.stderr)
        return 2
    except (MalformedInstance, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except InfalgError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
