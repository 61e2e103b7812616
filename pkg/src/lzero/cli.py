"""Command-line front end.

Exit codes: 0 success / property holds, 1 property refuted (witness on stdout),
2 usage or input error (message on stderr).
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import antibasis, coloring, homomorphisms, metrics, samples, stages
from .errors import (
    InsufficientGrowthError,
    NotBipartiteError,
    ParityViolationError,
    PreconditionError,
)
from .graph import OddPair, check_odd_sequence
from .io import (
    coloring_to_json,
    dumps_graph,
    encode_vertex,
    export_dot,
    hom_from_json,
    hom_to_json,
    loads_graph,
    parse_vertex_arg,
    vertex_set_from_json,
    vertex_set_to_json,
)

OK, REFUTED, USAGE = 0, 1, 2


class InputError(Exception):
    pass


# ---------------------------------------------------------------- argument helpers

def _ints(text: str) -> tuple:
    try:
        return tuple(int(x) for x in text.replace(" ", "").split(",") if x)
    except ValueError:
        raise InputError(f"expected comma-separated integers, got {text!r}") from None


def _json_arg(text: str):
    """Inline JSON when it looks like JSON, otherwise a file path ('-' for stdin)."""
    stripped = text.strip()
    if stripped[:1] in "[{" or stripped in ("null", "true", "false"):
        return json.loads(stripped)
    if text == "-":
        return json.load(sys.stdin)
    path = Path(text)
    if not path.exists():
        raise InputError(f"no such file: {text}")
    return json.loads(path.read_text())


def _graph(text: str):
    return loads_graph(json.dumps(_json_arg(text)))


def _pair(args) -> OddPair:
    c = check_odd_sequence(_ints(args.c))
    d = getattr(args, "d", None)
    if d is None:
        return OddPair.all_plus(c)
    if d == "random":
        return samples.random_odd_pair(samples.rng_from(args.seed), c)
    return OddPair(c, tuple(tuple(w) for w in _json_arg(d)))


def _emit(obj) -> None:
    print(json.dumps(obj, sort_keys=True, default=str))


def _vertices(vs, g) -> list:
    return vertex_set_to_json(vs, g)


# ---------------------------------------------------------------- verbs

def cmd_build(args) -> int:
    if args.kind == "path":
        if args.d is not None:
            g = stages.build_oriented_path(args.n, _json_arg(args.d))
        else:
            g = stages.build_path(args.n)
    else:
        if args.c is None or args.stage is None:
            raise InputError("--c and --stage are required for stage graphs")
        if args.kind == "stage":
            g = stages.build_stage(_ints(args.c), args.stage)
        else:
            g = stages.build_oriented_stage(_pair(args), args.stage)
    sys.stdout.write(export_dot(g) if args.format == "dot" else dumps_graph(g) + "\n")
    return OK


def cmd_verify_stage(args) -> int:
    c = check_odd_sequence(_ints(args.c))
    top = min(len(c) - 1, stages.max_stage()) if args.max_stage is None else args.max_stage
    rng = samples.rng_from(args.seed)
    failures = []
    for n in range(top + 1):
        report = stages.verify_stage(stages.build_stage(c, n))
        if not report.ok:
            failures.append({"stage": n, "check": "structure", "detail": report.failures})
        odd = stages.check_sibling_odd_distance(c, n)
        if odd:
            failures.append({"stage": n, "check": "sibling-odd-distance",
                             "detail": [[str(x), str(y), k] for x, y, k in odd]})
        if not stages.check_symmetrization(samples.random_odd_pair(rng, c[: n + 1]), n):
            failures.append({"stage": n, "check": "symmetrization"})
        if stages.check_copy_separation(c, n):
            failures.append({"stage": n, "check": "copy-separation"})
        if n < top and stages.edge_projection_failures(c, n):
            failures.append({"stage": n, "check": "edge-projection"})
        if not stages.endpoints_project_to_endpoints(c, n):
            failures.append({"stage": n, "check": "endpoint-projection"})
    _emit({"ok": not failures, "stages": top + 1, "failures": failures})
    return REFUTED if failures else OK


def cmd_verify_claims(args) -> int:
    rng = samples.rng_from(args.seed)
    failures = []
    for _ in range(args.forests):
        g = samples.random_forest(rng, args.max_vertices)
        for _ in range(args.walks):
            w = samples.random_walk(rng, g, rng.randint(0, 30))
            k = metrics.didist(g, w.start, w.end)
            if w.dilength != k or (w.length - w.dilength) % 2:
                failures.append({"walk": [encode_vertex(v) for v in w.vertices], "dilength": w.dilength, "didist": k})
    _emit({"ok": not failures, "forests": args.forests, "walks_per_forest": args.walks, "failures": failures[:10]})
    return REFUTED if failures else OK


def cmd_dist(args) -> int:
    g = _graph(args.graph)
    x, y = parse_vertex_arg(args.x, g.stage), parse_vertex_arg(args.y, g.stage)
    _emit({"dist": metrics.dist(g, x, y)})
    return OK


def cmd_didist(args) -> int:
    g = _graph(args.graph)
    x, y = parse_vertex_arg(args.x, g.stage), parse_vertex_arg(args.y, g.stage)
    _emit({"didist": metrics.didist(g, x, y)})
    return OK


def cmd_didist_set(args) -> int:
    g = _graph(args.graph)
    B = vertex_set_from_json(_json_arg(args.set), g.stage)
    _emit({"values": sorted(metrics.didistance_set(g, B))})
    return OK


def cmd_color_two(args) -> int:
    g = _graph(args.graph)
    try:
        col = coloring.two_color(g)
    except NotBipartiteError as e:
        _emit({"bipartite": False, "odd_cycle": [encode_vertex(v) for v in e.cycle]})
        return REFUTED
    _emit({"bipartite": True, "coloring": coloring_to_json(col, g)})
    return OK


def cmd_color_parity(args) -> int:
    g = _graph(args.graph)
    A = vertex_set_from_json(_json_arg(args.set), g.stage)
    try:
        col = coloring.parity_two_color(g, A)
    except ParityViolationError as e:
        _emit({"ok": False, "x": encode_vertex(e.x), "y": encode_vertex(e.y),
               "odd_walk": [encode_vertex(v) for v in e.walk]})
        return REFUTED
    _emit({"ok": True, "coloring": coloring_to_json(col, g)})
    return OK


def cmd_color_bounded(args) -> int:
    g = _graph(args.graph)
    A = vertex_set_from_json(_json_arg(args.set), g.stage)
    result = coloring.bounded_dilength_two_color(g, A)
    proper = coloring.is_proper(g, result.coloring)
    _emit({
        "ok": proper,
        "coloring": coloring_to_json(result.coloring, g),
        "peels": [{"n": p.n, "sign": p.sign, "layer": _vertices(p.layer, g),
                   "opposite": _vertices(p.opposite, g), "rest": _vertices(p.rest, g)} for p in result.peels],
    })
    return OK if proper else REFUTED


def cmd_color_non_onto(args) -> int:
    L, L2 = _graph(args.source), _graph(args.target)
    phi = hom_from_json(_json_arg(args.phi), L.stage, L2.stage)
    M, col = coloring.non_onto_two_color(L, L2, phi)
    proper = coloring.is_proper(L, col)
    _emit({"ok": proper, "M": _vertices(M, L), "coloring": coloring_to_json(col, L)})
    return OK if proper else REFUTED


def cmd_hom_check(args) -> int:
    L, L2 = _graph(args.source), _graph(args.target)
    phi = hom_from_json(_json_arg(args.phi), L.stage, L2.stage)
    bad = homomorphisms.hom_violations(phi, L, L2)
    _emit({"is_hom": not bad, "violations": [[str(x) for x in v] for v in bad]})
    return REFUTED if bad else OK


def cmd_hom_find(args) -> int:
    L, L2 = _graph(args.source), _graph(args.target)
    pins = hom_from_json(_json_arg(args.constraints), L.stage, L2.stage) if args.constraints else None
    found = homomorphisms.find_hom(L, L2, pins)
    if found is None:
        _emit({"found": False})
        return REFUTED
    _emit({"found": True, **hom_to_json(found, L)})
    return OK


def cmd_hom_extend(args) -> int:
    L = _graph(args.graph)
    B = vertex_set_from_json(_json_arg(args.B), L.stage)
    Bp = vertex_set_from_json(_json_arg(args.Bp), L.stage)
    phi = hom_from_json(_json_arg(args.phi), L.stage, args.n)
    out = homomorphisms.extend_hom(L, B, Bp, phi, _ints(args.c), args.n)
    _emit(hom_to_json(out, L))
    return OK


def cmd_hom_pipeline(args) -> int:
    try:
        result = homomorphisms.pipeline_hom(_ints(args.c0), _ints(args.c), args.depth, args.stages)
    except InsufficientGrowthError as e:
        _emit({"ok": False, "step": e.step, "required_mgs_above": e.required, "best_mgs": e.best})
        return REFUTED
    doc = {
        "ok": result.ok,
        "k": result.ks,
        "mgs": [None if v == float("inf") else v for v in result.mgs_values],
        "domain_sizes": [len(m) for m in result.maps],
        "compatibility": result.compatibility,
    }
    if args.emit_maps:
        doc["maps"] = [hom_to_json(m, result.source)["map"] for m in result.maps]
    _emit(doc)
    return OK if result.ok else REFUTED


def _star_pair(args):
    if args.sigmas:
        return None, _ints(args.sigmas)
    b = _pair(args)
    return b, b.sigmas


def cmd_star_check(args) -> int:
    _, sigmas = _star_pair(args)
    if args.f:
        report = antibasis.check_growth_profile(sigmas, _ints(args.f))
    else:
        report = antibasis.check_star_profile(sigmas)
    _emit({"sigmas": list(sigmas), **report.as_dict()})
    return OK if report.holds else REFUTED


def cmd_star_gen(args) -> int:
    f = _ints(args.f) if args.f else None
    b = antibasis.gen_star(args.stages, args.strategy, f)
    _emit({"c": list(b.c), "sigmas": list(b.sigmas), "d": [list(w) for w in b.d]})
    return OK


def _antibasis_pair(args) -> OddPair:
    if args.c is None:
        return antibasis.gen_star(args.depth + 1)
    return _pair(args)


def cmd_antibasis_interval(args) -> int:
    b = _antibasis_pair(args)
    report = antibasis.verify_interval(b, _ints(args.t), args.depth, args.mode)
    _emit(report.as_dict())
    return OK if report.ok else REFUTED


def cmd_antibasis_separation(args) -> int:
    b = _antibasis_pair(args)
    report = antibasis.verify_separation(b, _ints(args.t), _ints(args.t2), args.depth)
    _emit(report.as_dict())
    return OK if report.ok else REFUTED


def cmd_antibasis_pullback(args) -> int:
    L, L2 = _graph(args.source), _graph(args.target)
    phi = hom_from_json(_json_arg(args.phi), L.stage, L2.stage)
    C = vertex_set_from_json(_json_arg(args.set), L2.stage)
    report = antibasis.distance_set_pullback(homomorphisms.PartialHom(phi, L, L2), C)
    _emit(report.as_dict())
    return OK if report.containment else REFUTED


def cmd_export_dot(args) -> int:
    if args.graph:
        sys.stdout.write(export_dot(_graph(args.graph)))
        return OK
    if args.c is None:
        raise InputError("export-dot needs --graph or --c")
    c = _ints(args.c)
    lo, _, hi = args.stages.partition("-")
    span = range(int(lo), int(hi or lo) + 1)
    build = (lambda n: stages.build_oriented_stage(_pair(args), n)) if args.oriented else \
        (lambda n: stages.build_stage(c, n))
    if args.out_dir:
        out = Path(args.out_dir)
        out.mkdir(parents=True, exist_ok=True)
        written = []
        for n in span:
            path = out / f"L_stage{n}.dot"
            path.write_text(export_dot(build(n)))
            written.append(str(path))
        _emit({"written": written})
    else:
        for n in span:
            sys.stdout.write(export_dot(build(n)))
    return OK


# ---------------------------------------------------------------- parser

def _add_pair_args(p, required=True):
    p.add_argument("--c", required=required, help="odd sequence, e.g. 1,1,3")
    p.add_argument("--d", help="direction words as JSON (inline or file), or 'random'")
    p.add_argument("--seed", type=int, default=None)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="lzero", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="verb", required=True)

    p = sub.add_parser("build", help="construct a path or stage graph")
    p.add_argument("--kind", choices=("stage", "oriented", "path"), default="stage")
    _add_pair_args(p, required=False)
    p.add_argument("--stage", type=int)
    p.add_argument("--n", type=int, default=1, help="path length for --kind path")
    p.add_argument("--format", choices=("json", "dot"), default="json")
    p.set_defaults(func=cmd_build)

    verify = sub.add_parser("verify", help="invariant suites").add_subparsers(dest="what", required=True)
    p = verify.add_parser("stage")
    p.add_argument("--c", required=True)
    p.add_argument("--max-stage", type=int)
    p.add_argument("--seed", type=int)
    p.set_defaults(func=cmd_verify_stage)
    p = verify.add_parser("claims", help="walk dilength equals endpoint didistance")
    p.add_argument("--forests", type=int, default=100)
    p.add_argument("--walks", type=int, default=1000)
    p.add_argument("--max-vertices", type=int, default=40)
    p.add_argument("--seed", type=int)
    p.set_defaults(func=cmd_verify_claims)

    for name, func in (("dist", cmd_dist), ("didist", cmd_didist)):
        p = sub.add_parser(name)
        p.add_argument("--graph", required=True)
        p.add_argument("--x", required=True)
        p.add_argument("--y", required=True)
        p.set_defaults(func=func)
    p = sub.add_parser("didist-set")
    p.add_argument("--graph", required=True)
    p.add_argument("--set", required=True)
    p.set_defaults(func=cmd_didist_set)

    color = sub.add_parser("color").add_subparsers(dest="how", required=True)
    p = color.add_parser("two")
    p.add_argument("--graph", required=True)
    p.set_defaults(func=cmd_color_two)
    for name, func in (("parity", cmd_color_parity), ("bounded", cmd_color_bounded)):
        p = color.add_parser(name)
        p.add_argument("--graph", required=True)
        p.add_argument("--set", required=True)
        p.set_defaults(func=func)
    p = color.add_parser("non-onto")
    p.add_argument("--source", required=True)
    p.add_argument("--target", required=True)
    p.add_argument("--phi", required=True)
    p.set_defaults(func=cmd_color_non_onto)

    hom = sub.add_parser("hom").add_subparsers(dest="action", required=True)
    p = hom.add_parser("check")
    for flag in ("--source", "--target", "--phi"):
        p.add_argument(flag, required=True)
    p.set_defaults(func=cmd_hom_check)
    p = hom.add_parser("find")
    p.add_argument("--source", required=True)
    p.add_argument("--target", required=True)
    p.add_argument("--constraints")
    p.set_defaults(func=cmd_hom_find)
    p = hom.add_parser("extend")
    for flag in ("--graph", "--B", "--Bp", "--phi", "--c"):
        p.add_argument(flag, required=True)
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(func=cmd_hom_extend)
    p = hom.add_parser("pipeline")
    p.add_argument("--c0", required=True)
    p.add_argument("--c", required=True)
    p.add_argument("--depth", type=int, required=True)
    p.add_argument("--stages", type=int)
    p.add_argument("--emit-maps", action="store_true")
    p.set_defaults(func=cmd_hom_pipeline)

    star = sub.add_parser("star").add_subparsers(dest="action", required=True)
    p = star.add_parser("check")
    _add_pair_args(p, required=False)
    p.add_argument("--sigmas", help="check a Σ-profile directly")
    p.add_argument("--f", help="growth factors for the f-form condition")
    p.set_defaults(func=cmd_star_check)
    p = star.add_parser("gen")
    p.add_argument("--stages", type=int, required=True)
    p.add_argument("--strategy", choices=("minimal-all-plus", "f-form"), default="minimal-all-plus")
    p.add_argument("--f")
    p.set_defaults(func=cmd_star_gen)

    anti = sub.add_parser("antibasis").add_subparsers(dest="action", required=True)
    p = anti.add_parser("interval")
    _add_pair_args(p, required=False)
    p.add_argument("--t", required=True)
    p.add_argument("--depth", type=int, required=True)
    p.add_argument("--mode", choices=("raw", "tight"))
    p.set_defaults(func=cmd_antibasis_interval)
    p = anti.add_parser("separation")
    _add_pair_args(p, required=False)
    p.add_argument("--t", required=True)
    p.add_argument("--t2", required=True)
    p.add_argument("--depth", type=int, required=True)
    p.set_defaults(func=cmd_antibasis_separation)
    p = anti.add_parser("pullback")
    for flag in ("--source", "--target", "--phi", "--set"):
        p.add_argument(flag, required=True)
    p.set_defaults(func=cmd_antibasis_pullback)

    p = sub.add_parser("export-dot")
    p.add_argument("--graph")
    _add_pair_args(p, required=False)
    p.add_argument("--stages", default="0", help="stage or range, e.g. 0-3")
    p.add_argument("--oriented", action="store_true")
    p.add_argument("--out-dir")
    p.set_defaults(func=cmd_export_dot)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (InputError, PreconditionError, ValueError, KeyError, IndexError, json.JSONDecodeError) as e:
        print(f"lzero: error: {e}", file=sys.stderr)
        return USAGE


if __name__ == "__main__":
    sys.exit(main())
