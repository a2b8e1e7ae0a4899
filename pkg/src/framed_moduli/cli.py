"""Command-line front end.

Results go to stdout as canonical JSON.  Exit status is 0 on success or a true verdict,
1 on a false verdict (``stable``, ``iso``, ``verify``, ``oracle``) and 2 on errors, which
are reported as JSON on stderr.
"""
from __future__ import annotations

import argparse
import sys
from typing import Sequence

from . import atlas, charts, oracle, rep as rep_mod, skeleton
from .errors import FramedModuliError, IndexMismatch, SchemaError
from .fixtures import RELATION_FILES, load_relation_file, loop_example
from .formats import dumps, read_json, rep_from_json, rep_to_json, shape_from_json, shape_to_json
from .kernel import Field
from .quiver import ExtendedQuiver
from .sampling import random_stable


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise SchemaError(f"usage: {message}")


def _skeleton_arg(eq: ExtendedQuiver, alpha, text: str) -> skeleton.Skeleton:
    labels = [t for t in (x.strip() for x in text.split(",")) if t]
    return skeleton.Skeleton.parse(eq, alpha, labels)


def _load_rep(path: str) -> rep_mod.FramedRep:
    return rep_from_json(read_json(path))


def _load_shape(path: str):
    return shape_from_json(read_json(path))


def _load_samples(path: str) -> list[rep_mod.FramedRep]:
    doc = read_json(path)
    if isinstance(doc, list):
        return [rep_from_json(d) for d in doc]
    if isinstance(doc, dict) and "samples" in doc:
        return [rep_from_json(d) for d in doc["samples"]]
    return [rep_from_json(doc)]


def _load_relations(spec: str) -> list[atlas.RelationPoly]:
    if spec in RELATION_FILES:
        return load_relation_file(spec)
    return atlas.load_relations(read_json(spec))


def _chart_point(path: str, eq: ExtendedQuiver, alpha, field: Field) -> charts.ChartPoint:
    doc = read_json(path)
    if not isinstance(doc, dict):
        raise SchemaError("a chart point document is a JSON object")
    if "field" in doc:
        field = Field.from_descriptor(doc["field"])
    return charts.ChartPoint.from_json(eq, alpha, field, doc)


def _chart_doc(c: charts.ChartPoint) -> dict:
    doc = c.to_json()
    doc["field"] = c.field.descriptor()
    return doc


def cmd_stable(args) -> tuple[dict, int]:
    r = _load_rep(args.file)
    sat = rep_mod.saturate(r)
    sub = rep_mod.max_submodule_in_kernel(r)
    ok = sat.ranks == r.shape.alpha
    return {"stable": ok, "ranks": list(sat.ranks), "kernel_submodule_dims": list(sub.dims)}, 0 if ok else 1


def cmd_skeleton(args):
    return skeleton.greedy_skeleton(_load_rep(args.file)).to_json(), 0


def cmd_skeleta(args):
    return {"skeleta": [s.labels() for s in skeleton.skeleta_of_rep(_load_rep(args.file))]}, 0


def cmd_charts(args):
    q, shape, _ = _load_shape(args.file)
    u = skeleton.path_universe(q, shape, args.universe)
    dim = atlas.chart_dimension(q, shape)
    doc = {"skeleta": [s.labels() for s in skeleton.enumerate_abstract_skeleta(q, shape)],
           "gamma": u.to_json()["gamma"], "gamma_tilde": u.to_json()["gamma_tilde"],
           "gamma_tilde_size": len(u.gamma_tilde)}
    doc.update(dim.to_json())
    return doc, 0


def cmd_normal_form(args):
    r = _load_rep(args.file)
    s = _skeleton_arg(r.extended, r.shape.alpha, args.skeleton) if args.skeleton else None
    return rep_to_json(charts.normal_form(r, s)), 0


def cmd_iso(args):
    d = charts.iso_check(_load_rep(args.file1), _load_rep(args.file2), strict=not args.lenient)
    return d.to_json(), 0 if d.isomorphic else 1


def cmd_project(args):
    r = _load_rep(args.file)
    s = _skeleton_arg(r.extended, r.shape.alpha, args.skeleton)
    return _chart_doc(charts.project_chart(r, s)), 0


def cmd_section(args):
    q, shape, field = _load_shape(args.file)
    eq = ExtendedQuiver(q, shape.zeta)
    s = _skeleton_arg(eq, shape.alpha, args.skeleton)
    c = _chart_point(args.coords, eq, shape.alpha, field)
    if c.skeleton != s:
        raise IndexMismatch(f"coordinates are for {c.skeleton}, not {s}")
    return rep_to_json(charts.section(s, c)), 0


def cmd_transition(args):
    q, shape, field = _load_shape(args.file)
    eq = ExtendedQuiver(q, shape.zeta)
    s = _skeleton_arg(eq, shape.alpha, args.source)
    t = _skeleton_arg(eq, shape.alpha, args.target)
    c = _chart_point(args.coords, eq, shape.alpha, field)
    if c.skeleton != s:
        raise IndexMismatch(f"coordinates are for {c.skeleton}, not {s}")
    return _chart_doc(charts.transition(s, t, c)), 0


def cmd_pluecker(args):
    return atlas.pluecker_of_rep(_load_rep(args.file), args.universe).to_json(), 0


def cmd_coords(args):
    q, shape, _ = _load_shape(args.file)
    return atlas.classify_coordinates(q, shape, args.universe).to_json(), 0


def cmd_verify(args):
    report = atlas.verify_relations(_load_relations(args.relations), _load_samples(args.file), args.universe)
    return report.to_json(), 0 if report.all_zero else 1


def cmd_random(args):
    q, shape, field = _load_shape(args.file)
    if args.field:
        field = Field.from_spec(args.field)
    sample = random_stable(q, shape, args.seed, args.entry_bound, field, args.max_tries)
    doc = rep_to_json(sample.rep)
    doc["rejections"] = sample.rejections
    doc["seed"] = sample.seed
    return doc, 0


def _budget(args) -> oracle.OracleBudget:
    return oracle.OracleBudget(args.max_total_dim, args.max_elements)


def cmd_oracle_stable(args):
    ok = oracle.stability_bruteforce(_load_rep(args.file), _budget(args))
    return {"stable": ok}, 0 if ok else 1


def cmd_oracle_iso(args):
    ok, g = oracle.orbit_iso_bruteforce(_load_rep(args.file1), _load_rep(args.file2), _budget(args))
    doc: dict = {"isomorphic": ok}
    if g is not None:
        doc["witness"] = {str(i + 1): m.tolist(as_str=True) for i, m in enumerate(g.mats)}
    return doc, 0 if ok else 1


def cmd_fixtures(args):
    q, shape = loop_example(args.loops, args.framing, args.dim)
    return shape_to_json(q, shape, Field.from_spec(args.field) if args.field else Field()), 0


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="framed-moduli", description="Stable framed quiver representations: "
                "skeleta, normal forms, isomorphism and the chart atlas.")
    p.add_argument("--field", help="rational or prime:P; overrides the document field for generation")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, fn, *files, help=None):
        sp = sub.add_parser(name, help=help)
        for f in files:
            sp.add_argument(f)
        sp.set_defaults(fn=fn)
        return sp

    def universe(sp):
        sp.add_argument("--universe", choices=["exact", "superset"], default="exact")

    add("stable", cmd_stable, "file", help="stability test")
    add("skeleton", cmd_skeleton, "file", help="greedy skeleton")
    add("skeleta", cmd_skeleta, "file", help="all skeleta of a representation")
    universe(add("charts", cmd_charts, "file", help="abstract skeleta, path universe, dimension"))
    add("normal-form", cmd_normal_form, "file").add_argument("--skeleton")
    add("iso", cmd_iso, "file1", "file2").add_argument("--lenient", action="store_true",
                                                       help="report unstable inputs instead of failing")
    add("project", cmd_project, "file").add_argument("--skeleton", required=True)
    sp = add("section", cmd_section, "file")
    sp.add_argument("--skeleton", required=True)
    sp.add_argument("--coords", required=True)
    sp = add("transition", cmd_transition, "file")
    sp.add_argument("--from", dest="source", required=True)
    sp.add_argument("--to", dest="target", required=True)
    sp.add_argument("--coords", required=True)
    universe(add("pluecker", cmd_pluecker, "file"))
    universe(add("coords", cmd_coords, "file", help="essential and exceed coordinates"))
    sp = add("verify", cmd_verify, "file")
    sp.add_argument("--relations", required=True, help=f"a relation file or one of {', '.join(RELATION_FILES)}")
    universe(sp)
    sp = add("random", cmd_random, "file")
    sp.add_argument("--seed", type=int, required=True)
    sp.add_argument("--entry-bound", type=int, default=10)
    sp.add_argument("--max-tries", type=int, default=1000)
    sp = add("fixtures", cmd_fixtures, help="shape document for a loop quiver")
    sp.add_argument("--loops", type=int, default=1)
    sp.add_argument("--framing", type=int, default=1)
    sp.add_argument("--dim", type=int, default=2)

    orc = sub.add_parser("oracle", help="brute-force oracles over prime fields")
    osub = orc.add_subparsers(dest="oracle_command", required=True, parser_class=_Parser)
    for name, fn, files in [("stable", cmd_oracle_stable, ["file"]), ("iso", cmd_oracle_iso, ["file1", "file2"])]:
        sp = osub.add_parser(name)
        for f in files:
            sp.add_argument(f)
        sp.add_argument("--max-total-dim", type=int, default=oracle.OracleBudget.max_total_dim)
        sp.add_argument("--max-elements", type=int, default=oracle.OracleBudget.max_elements)
        sp.set_defaults(fn=fn)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        doc, code = args.fn(args)
    except FramedModuliError as exc:
        sys.stderr.write(dumps(exc.to_json()))
        return 2
    except (ValueError, KeyError, TypeError) as exc:
        sys.stderr.write(dumps({"error": "SchemaError", "message": str(exc)}))
        return 2
    sys.stdout.write(dumps(doc))
    return code


if __name__ == "__main__":
    sys.exit(main())
