"""
Command-line surface for spherelab.

Subcommands (`python -m spherelab.main <command> --help` for options):
- gen-punctured   build Sc(M(0,s)) with counts, pants audit and exports
- aut             automorphism group of a graph file or of a Kneser graph
- glued           pants-check / split-spheres / exchange in M(n,0)
- rigid           build / detect / expand / exhaust finite rigid sets
- rank2           build / witness / verify on the Farey graph with fins
- verify-lemma    bundled reproductions of the combinatorial facts
- shell           interactive loop over the same commands

Every command emits a JSON report (stdout, or --json PATH). Exit codes:
0 success, 1 failed verification, 2 usage or input error.
"""

from __future__ import annotations

import argparse
import json
import logging
import shlex
import sys
from collections import Counter
from math import factorial
from pathlib import Path
from typing import Callable, Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

# Allow running as a script by ensuring package is on sys.path.
if __package__ is None or __package__ == "":
    sys.path.append(str(Path(__file__).resolve().parent.parent))

from spherelab.asci_table import checks_table, frame_table, table_draw
from spherelab.autom import FiniteGraph, automorphism_group, is_automorphism, kneser_graph, sym_action_matches
from spherelab.config import DEFAULT_RANK2_DEPTH, DEFAULT_SEED
from spherelab.errors import (
    BudgetExhausted,
    DualGraphError,
    ModelInconsistency,
    NotDetectable,
    NotDisjoint,
    NotMaximal,
    OutOfModel,
    ReducedCaseNote,
    SphereLabError,
)
from spherelab.glued_model import (
    GluedManifold,
    GluedPants,
    SphereClass,
    exchange,
    is_pants,
    make_interior,
    pants_from_json,
    sorted_spheres,
    sphere_from_json,
    sphere_to_json,
    split_spheres_for,
    YSphere,
)
from spherelab.punctured_complex import build_complex, enumerate_pants, is_binary_tree, verify_flag_property, verify_unique
from spherelab.rank2 import (
    FareyFins,
    WitnessMap,
    build_farey_fins,
    find_nonrigidity_witness,
    run_battery,
    subgraph_from_json,
    vertex_str,
    verify_witness,
)
from spherelab.reports import Report, SubgraphPayload, WitnessPayload, canonical_json, new_report
from spherelab.rigid_sets import (
    ExpansionResult,
    build_rigid_set,
    construct_local_split_pairs,
    construct_split_pairs,
    detect_intersection,
    exhaust,
    expand_fully_split,
    fully_split_audit,
    good_pair_certificates,
    redundant_spheres,
    twin_crossing_certificates,
    vertex_set_from_json,
)
from spherelab.splits import canonicalize, double_factorial, essential_splits, intersects, m04_third_sphere, size
from spherelab.store import write_vertex_sets
from spherelab.visualize import write_dot, write_html

logger = logging.getLogger("spherelab")

# failures of a check rather than of the input
VERIFICATION_ERRORS = (BudgetExhausted, DualGraphError, ModelInconsistency, NotDetectable)


class UsageError(SphereLabError):
    pass


def configure_logging(verbose: int) -> None:
    level = logging.WARNING if verbose <= 0 else logging.INFO if verbose == 1 else logging.DEBUG
    logging.basicConfig(
        level=level,
        stream=sys.stderr,
        format="%(levelname)s %(name)s: %(message)s",
        force=True,
    )


def _load_json(value: str) -> object:
    """Inline JSON when it looks like JSON, otherwise a file path."""
    text = value.strip()
    if text.startswith("{") or text.startswith("["):
        return json.loads(text)
    return json.loads(Path(value).read_text(encoding="utf-8"))


def parse_sphere(token: str, M: GluedManifold) -> SphereClass:
    """`A` is a Y-sphere, `1,3` an interior sphere, anything else JSON."""
    text = token.strip()
    if text in M.names:
        return YSphere(text)
    if text and all(part.strip().isdigit() for part in text.split(",")):
        return make_interior({int(part) for part in text.split(",")}, M)
    payload = _load_json(text)
    if not isinstance(payload, dict):
        raise UsageError(f"cannot read a sphere from {token!r}")
    return sphere_from_json(payload, M)


def _default_pants(M: GluedManifold) -> GluedPants:
    if M.n >= 3:
        return build_rigid_set(M.n).base_pants
    return is_pants([YSphere("A"), YSphere("B"), make_interior({1, 3}, M)], M)


def _pants_arg(args: argparse.Namespace, M: GluedManifold) -> GluedPants:
    if getattr(args, "pants", None):
        payload = _load_json(args.pants)
        return pants_from_json(payload, M)  # type: ignore[arg-type]
    if getattr(args, "spheres", None):
        return is_pants([parse_sphere(t, M) for t in args.spheres], M)
    return _default_pants(M)


def _split_label(u) -> str:
    return "".join(str(x) for x in sorted(u.side)) + "|" + "".join(str(x) for x in sorted(u.other))


# gen-punctured


def cmd_gen_punctured(args: argparse.Namespace) -> Report:
    report = new_report("gen-punctured", {"s": args.s, "pants": args.pants})
    cpx = build_complex(args.s)
    vertices = cpx.vertices()
    report.counts.update(vertices=len(vertices), edges=cpx.edge_count())
    report.check("vertex-count", len(vertices) == 2 ** (args.s - 1) - args.s - 1, f"{len(vertices)} vertices")
    if args.s == 4:
        report.check("four-holed-edgeless", cpx.edge_count() == 0)
    if args.pants:
        pants = enumerate_pants(args.s, cpx)
        expected = double_factorial(2 * args.s - 5)
        report.counts["pants"] = len(pants)
        report.check("pants-count", len(pants) == expected, f"{len(pants)} vs (2s-5)!! = {expected}")
        report.check("pants-binary-trees", all(is_binary_tree(p) for p in pants))
        report.check("flag-property", verify_flag_property(cpx, pants))
    report.data["complex"] = cpx.to_json()
    if args.dot:
        write_dot(cpx.graph, Path(args.dot), "punctured", _split_label, sort_key=lambda u: u.key())
    if args.html:
        write_html(cpx.graph, Path(args.html), f"Sc(M(0,{args.s}))", _split_label)
    return report


# aut


def _graph_from_file(path: str) -> FiniteGraph:
    payload = _load_json(path)
    vertices = [json.dumps(v, sort_keys=True) if not isinstance(v, (str, int)) else v for v in payload["vertices"]]  # type: ignore[index]
    edges = {(int(a), int(b)) for a, b in payload["edges"]}  # type: ignore[index]
    return FiniteGraph(vertices=vertices, edges=edges)


def cmd_aut(args: argparse.Namespace) -> Report:
    report = new_report("aut", {"target": args.target, "s": args.s, "expect": args.expect})
    if args.target == "kneser":
        if args.s is None:
            raise UsageError("aut kneser needs --s")
        graph = kneser_graph(args.s)
    else:
        graph = _graph_from_file(args.target)
    group = automorphism_group(graph)
    report.counts.update(vertices=graph.n, edges=len(graph.edges), order=group.order, generators=len(group.generators))
    report.check("generators-preserve-adjacency", all(is_automorphism(graph, g) for g in group.generators))
    if args.expect is not None:
        report.check("order", group.order == args.expect, f"{group.order} vs expected {args.expect}")
    if args.target == "kneser":
        report.check("sym-action", sym_action_matches(args.s), f"Sym({args.s}) has order {factorial(args.s)}")
    report.data["generators"] = [list(g) for g in group.generators]
    return report


# glued


def cmd_glued(args: argparse.Namespace) -> Report:
    M = GluedManifold.standard(args.n)
    report = new_report(f"glued {args.action}", {"n": args.n, "spheres": args.spheres, "pants": args.pants, "sphere": args.sphere, "with": args.other})
    if args.action == "pants-check":
        try:
            P = _pants_arg(args, M)
        except (NotMaximal, NotDisjoint, DualGraphError) as exc:
            report.check("pants", False, str(exc))
            return report
        report.check("pants", True, f"{len(P.spheres)} spheres")
        report.counts.update(spheres=len(P.spheres), pieces=P.dual_graph.number_of_nodes(), loops=len(P.loops()))
        report.data["pants"] = P.to_json()
        report.data["loops"] = [sphere_to_json(x) for x in P.loops()]
        if M.n == 2:
            report.data["shape"] = P.shape()
        return report

    P = _pants_arg(args, M)
    if not args.sphere:
        raise UsageError(f"glued {args.action} needs --sphere")
    a = parse_sphere(args.sphere, M)
    if args.action == "split-spheres":
        try:
            found = split_spheres_for(P, a, M)
        except OutOfModel as exc:
            report.frontier.append(str(exc))
            return report
        report.counts["split_spheres"] = len(found)
        expected = 0 if P.self_adjacent(a) else 2
        report.check("split-sphere-count", len(found) == expected, f"{len(found)} found, {expected} expected")
        report.data["split_spheres"] = [sphere_to_json(x) for x in sorted_spheres(found)]
        return report

    if not args.other:
        raise UsageError("glued exchange needs --with")
    b = parse_sphere(args.other, M)
    Q = exchange(P, a, b, M)
    report.data["pants"] = Q.to_json()
    back = exchange(Q, b, a, M)
    report.check("reversible", back == P)
    return report


# rigid


def _audit_expansion(report: Report, result: ExpansionResult, start: Iterable[SphereClass], M: GluedManifold) -> None:
    missing = fully_split_audit(result.vertices, result.pants, M)
    again = expand_fully_split(result.vertices, result.pants, M, witness=result.witness)
    report.check("frontier-empty", not result.frontier, ", ".join(map(str, result.frontier)))
    report.check("fully-split", not missing, ", ".join(map(str, missing)))
    report.check("idempotent", again.vertices == result.vertices)
    failures = [f for cert in result.certificates for f in cert.verify(M)]
    report.check("certificates-verify", not failures, "; ".join(failures[:3]))
    redundant = redundant_spheres(result, start)
    report.check("minimal", not redundant, ", ".join(map(str, redundant)))


def _rigid_input(args: argparse.Namespace) -> Tuple[GluedManifold, FrozenSet[SphereClass], Dict[str, object]]:
    """Vertex set from --x, or the built set (X, or X_0 with --within x0)."""
    if args.x:
        payload = _load_json(args.x)
        if not isinstance(payload, dict):
            raise UsageError("--x must be a rigid-set JSON object")
        M, vertices = vertex_set_from_json(payload)
        return M, vertices, payload
    X = build_rigid_set(args.n)
    payload = X.to_json()
    return X.M, X.x0() if args.within == "x0" else X.vertices(), payload


def cmd_rigid(args: argparse.Namespace) -> Report:
    arguments = {
        "n": args.n,
        "depth": args.depth,
        "budget": args.budget,
        "alpha": args.alpha,
        "beta": args.beta,
        "within": args.within,
        "x": args.x,
        "pants": args.pants,
        "out": str(args.out) if args.out else None,
    }
    report = new_report(f"rigid {args.action}", arguments)
    if args.action == "exhaust":
        result = exhaust(args.n, args.depth, args.budget)
        for layer in result.layers:
            report.check(f"layer-{layer.index}-contained", layer.contained)
            report.check(f"layer-{layer.index}-split", layer.split)
        nested = all(a <= b for a, b in zip(result.vertex_sets, result.vertex_sets[1:]))
        report.check("nested", nested)
        report.counts.update({f"X{i}": len(v) for i, v in enumerate(result.vertex_sets)})
        report.frontier.extend(result.frontier_events)
        report.data["exhaustion"] = result.to_json()
        if args.out:
            Path(args.out).write_text(canonical_json(result.to_json()), encoding="utf-8")
        if args.db:
            write_vertex_sets({f"X{i}": v for i, v in enumerate(result.vertex_sets)}, GluedManifold.standard(args.n), Path(args.db))
        if args.table:
            print(frame_table(result.to_frame()), file=sys.stderr)
        return report

    if args.action == "build":
        X = build_rigid_set(args.n)
        failures = X.verify()
        report.check("construction", not failures, "; ".join(failures))
        report.counts.update(y=len(X.y), z=len(X.z), vertices=len(X.vertices()))
        report.data["rigid_set"] = X.to_json()
        if args.out:
            Path(args.out).write_text(canonical_json(X.to_json()), encoding="utf-8")
        if args.db:
            write_vertex_sets({"X0": X.x0(), "X": X.vertices()}, X.M, Path(args.db))
        return report

    M, vertices, payload = _rigid_input(args)
    if args.action == "detect":
        if not args.alpha or not args.beta:
            raise UsageError("rigid detect needs --alpha and --beta")
        alpha, beta = parse_sphere(args.alpha, M), parse_sphere(args.beta, M)
        cert = detect_intersection(vertices, alpha, beta, M, args.budget)
        report.check("certificate", cert.verify(vertices))
        report.certificates.append(cert.to_json())
        return report

    witness: Optional[Tuple[SphereClass, SphereClass]] = None
    if args.pants:
        P = pants_from_json(_load_json(args.pants), M)  # type: ignore[arg-type]
    elif "base_pants" in payload:
        P = pants_from_json(payload["base_pants"], M)  # type: ignore[arg-type]
        if payload.get("base_witness"):
            a0, b0 = (sphere_from_json(x, M) for x in payload["base_witness"])  # type: ignore[union-attr]
            witness = (a0, b0)
    else:
        raise UsageError("rigid expand needs --pants when --x has no base pants")
    result = expand_fully_split(vertices, P, M, witness=witness)
    _audit_expansion(report, result, vertices, M)
    report.counts.update(before=len(vertices), after=len(result.vertices), certificates=len(result.certificates))
    report.certificates.extend(c.to_json() for c in result.certificates)
    report.data["layers"] = [[sphere_to_json(x) for x in layer] for layer in result.layers]
    return report


# rank2


def cmd_rank2(args: argparse.Namespace) -> Report:
    report = new_report(f"rank2 {args.action}", {"depth": args.depth, "input": args.input, "witness": args.witness})
    if args.action == "build":
        G = build_farey_fins(args.depth)
        report.counts.update(
            farey_vertices=len(G.farey_vertices()),
            farey_edges=len(G.farey_edges()),
            fin_vertices=len(G.fin_vertices()),
            fin_edges=len(G.fin_edges()),
        )
        report.check("unimodular-reduced-fins", G.check())
        if args.dot:
            Path(args.dot).write_text(G.to_dot(), encoding="utf-8")
        if args.html:
            write_html(G.graph, Path(args.html), f"Farey graph with fins, depth {args.depth}", vertex_str)
        return report
    if args.action == "witness":
        if not args.input:
            raise UsageError("rank2 witness needs --input")
        payload = SubgraphPayload.model_validate(_load_json(args.input)).model_dump()
        X = subgraph_from_json(payload)
        G = FareyFins(args.depth)
        try:
            w = find_nonrigidity_witness(X, G)
        except ReducedCaseNote as note:
            report.data["reduced_case"] = note.case
            return report
        accepted, reason = verify_witness(w, G)
        report.check("witness", accepted, reason)
        report.data["case"] = w.case
        report.certificates.append(w.to_json())
        if args.out:
            Path(args.out).write_text(canonical_json(w.to_json()), encoding="utf-8")
        return report
    if not args.witness:
        raise UsageError("rank2 verify needs --witness")
    raw = _load_json(args.witness)
    WitnessPayload.model_validate(raw)
    w = WitnessMap.from_json(raw)  # type: ignore[arg-type]
    accepted, reason = verify_witness(w, FareyFins(max(args.depth, w.depth)))
    report.check("witness", accepted, reason)
    report.data["case"] = w.case
    return report


# verify-lemma


def lemma_partition_determines(report: Report, args: argparse.Namespace) -> None:
    for s in range(4, max(args.s or 6, 4) + 1):
        cpx = build_complex(s)
        expected = 2 ** (s - 1) - s - 1
        report.counts[f"vertices_s{s}"] = len(cpx.vertices())
        report.check(f"s={s} vertex-count", len(cpx.vertices()) == expected, f"{len(cpx.vertices())} vs {expected}")
        keys = {u.key() for u in essential_splits(s)}
        report.check(f"s={s} distinct-partitions", len(keys) == len(cpx.vertices()))
        if s == 4:
            report.check("s=4 edgeless", cpx.edge_count() == 0)
        if s >= 6:
            large = [u for u in cpx.vertices() if size(u) >= 3]
            report.check(f"s={s} size-2-fingerprint-unique", all(verify_unique(u, cpx) for u in large))


def lemma_kneser(report: Report, args: argparse.Namespace) -> None:
    s = args.s or 5
    order = automorphism_group(kneser_graph(s)).order
    report.counts["order"] = order
    report.check("order", order == factorial(s), f"|Aut K({s},2)| = {order}, {s}! = {factorial(s)}")
    report.check("sym-action", sym_action_matches(s))


def lemma_evil_twins(report: Report, args: argparse.Namespace) -> None:
    a, b, c = canonicalize({1, 2, 3}, 6), canonicalize({1, 6}, 6), canonicalize({3, 4}, 6)
    b_twin, c_twin = m04_third_sphere(a, b), m04_third_sphere(a, c)
    report.data.update(b_twin=b_twin.to_json(), c_twin=c_twin.to_json())
    report.check("b-twin", b_twin == canonicalize({1, 4, 5}, 6), str(b_twin))
    report.check("c-twin", c_twin == canonicalize({3, 5, 6}, 6), str(c_twin))
    report.check("b-and-c-disjoint", not intersects(b, c))
    report.check("twins-cross", intersects(b_twin, c_twin))
    for name, twin in (("b-twin", b_twin), ("c-twin", c_twin)):
        report.check(f"{name}-meets-b-and-c", intersects(twin, b) and intersects(twin, c))


def lemma_split_pairs(report: Report, args: argparse.Namespace) -> None:
    a, b, c = canonicalize({1, 2}, 5), canonicalize({2, 3}, 5), canonicalize({4, 5}, 5)
    certs = construct_local_split_pairs({a, c}, a, c, b, 5)
    pairs = {(cert.first, cert.second) for cert in certs}
    expected = {
        (canonicalize({3, 4}, 5), canonicalize({1, 5}, 5)),
        (canonicalize({3, 5}, 5), canonicalize({1, 4}, 5)),
    }
    report.check("local-pairs", pairs == expected, "; ".join(f"{d} / {e}" for d, e in sorted(pairs)))
    report.check("local-twins", all(cert.twins_meet_pair for cert in certs))
    local_failures = [f for cert in certs for f in cert.verify_local(5)]
    report.check("local-certificates-verify", not local_failures, "; ".join(local_failures))
    report.certificates.extend(cert.to_json() for cert in certs)

    X = build_rigid_set(3)
    M = X.M
    s3 = make_interior({1, 3}, M)
    glued = construct_split_pairs(X.base_pants, YSphere("A"), s3, X.good_pairs["A"][0], X.vertices(), M)
    found = split_spheres_for(X.base_pants, s3, M)
    report.check("glued-pairs-split", all(cert.first in found for cert in glued))
    report.check("glued-twins", all(cert.twins_meet_pair for cert in glued))
    glued_failures = [f for cert in glued for f in cert.verify(M)]
    report.check("glued-certificates-verify", not glued_failures, "; ".join(glued_failures))
    report.certificates.extend(cert.to_json() for cert in glued)


def lemma_good_pairs(report: Report, args: argparse.Namespace) -> None:
    X = build_rigid_set(args.n)
    failures = X.verify()
    report.check("construction", not failures, "; ".join(failures))
    certs = good_pair_certificates(X, args.budget)
    report.counts["certificates"] = len(certs)
    report.check("certificate-count", len(certs) == 2 * args.n)
    report.check("certificates-verify", all(c.verify(X.vertices()) for c in certs))
    report.certificates.extend(c.to_json() for c in certs)
    twins = twin_crossing_certificates(X)
    twin_failures = []
    for i, cert in enumerate(twins):
        remainders = [certs[2 * i].remainder(), certs[2 * i + 1].remainder()]
        twin_failures.extend(cert.verify(X.M, remainders))
    report.counts["twin_certificates"] = len(twins)
    report.check("twins-cross", not twin_failures, "; ".join(twin_failures))
    report.certificates.extend(cert.to_json() for cert in twins)


def lemma_fully_split(report: Report, args: argparse.Namespace) -> None:
    X = build_rigid_set(args.n)
    result = expand_fully_split(X.vertices(), X.base_pants, X.M, witness=X.base_witness)
    report.counts.update(before=len(X.vertices()), after=len(result.vertices), certificates=len(result.certificates))
    _audit_expansion(report, result, X.vertices(), X.M)


def lemma_rank2_battery(report: Report, args: argparse.Namespace) -> None:
    result = run_battery(count=args.count, seed=args.seed, depth=args.depth)
    for row in result.rows:
        if not row.accepted:
            report.check(f"input-{row.index}", False, row.reason)
    report.check("battery", result.passed, f"{sum(r.accepted for r in result.rows)}/{len(result.rows)} accepted")
    report.counts.update(Counter(row.case for row in result.rows))
    report.data["rows"] = [vars(row) for row in result.rows]


LEMMAS: Dict[str, Callable[[Report, argparse.Namespace], None]] = {
    "partition-determines": lemma_partition_determines,
    "kneser": lemma_kneser,
    "evil-twins": lemma_evil_twins,
    "split-pairs": lemma_split_pairs,
    "good-pairs": lemma_good_pairs,
    "fully-split": lemma_fully_split,
    "rank2-battery": lemma_rank2_battery,
}


def cmd_verify_lemma(args: argparse.Namespace) -> Report:
    report = new_report(
        "verify-lemma",
        {"lemma": args.lemma, "s": args.s, "n": args.n, "seed": args.seed, "depth": args.depth, "count": args.count},
    )
    LEMMAS[args.lemma](report, args)
    return report


# parser


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", type=Path, default=None, help="Write the report here instead of stdout.")
    common.add_argument("-v", "--verbose", action="count", default=0, help="-v for INFO, -vv for DEBUG logging.")

    parser = argparse.ArgumentParser(
        prog="spherelab",
        description="Sphere complexes, finite rigid sets and rank-two witnesses.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen-punctured", parents=[common], help="Build Sc(M(0,s)).")
    p.add_argument("--s", type=int, required=True)
    p.add_argument("--pants", action="store_true", help="Enumerate pants decompositions too.")
    p.add_argument("--dot", type=Path, default=None)
    p.add_argument("--html", type=Path, default=None)
    p.set_defaults(handler=cmd_gen_punctured)

    p = sub.add_parser("aut", parents=[common], help="Automorphism group of a graph.")
    p.add_argument("target", help="`kneser` or a graph JSON file with vertices and index edges.")
    p.add_argument("--s", type=int, default=None)
    p.add_argument("--expect", type=int, default=None)
    p.set_defaults(handler=cmd_aut)

    p = sub.add_parser("glued", parents=[common], help="Pants decompositions of M(n,0).")
    p.add_argument("action", choices=["pants-check", "split-spheres", "exchange"])
    p.add_argument("--n", type=int, default=3)
    p.add_argument("--pants", default=None, help="Pants JSON (file or inline).")
    p.add_argument("--spheres", nargs="+", default=None, help="Sphere tokens: A, 1,3 or JSON.")
    p.add_argument("--sphere", default=None)
    p.add_argument("--with", dest="other", default=None)
    p.set_defaults(handler=cmd_glued)

    p = sub.add_parser("rigid", parents=[common], help="Finite rigid sets in M(n,0).")
    p.add_argument("action", choices=["build", "detect", "expand", "exhaust"])
    p.add_argument("--n", type=int, default=3)
    p.add_argument("--depth", type=int, default=0)
    p.add_argument("--budget", type=int, default=None)
    p.add_argument("--alpha", default=None)
    p.add_argument("--beta", default=None)
    p.add_argument("--within", choices=["x0", "x"], default="x")
    p.add_argument("--x", default=None, help="Rigid-set JSON (file or inline) to detect or expand in.")
    p.add_argument("--pants", default=None, help="Pants JSON (file or inline) to expand.")
    p.add_argument("--out", "--report", dest="out", type=Path, default=None, help="Write the rigid set or exhaustion JSON here.")
    p.add_argument("--db", type=Path, default=None, help="Persist vertex sets to SQLite.")
    p.add_argument("--table", action="store_true", help="Print the layer table to stderr.")
    p.set_defaults(handler=cmd_rigid)

    p = sub.add_parser("rank2", parents=[common], help="Farey graph with fins.")
    p.add_argument("action", choices=["build", "witness", "verify"])
    p.add_argument("--depth", type=int, default=DEFAULT_RANK2_DEPTH)
    p.add_argument("--dot", type=Path, default=None)
    p.add_argument("--html", type=Path, default=None)
    p.add_argument("--input", default=None)
    p.add_argument("--out", type=Path, default=None)
    p.add_argument("--witness", default=None)
    p.set_defaults(handler=cmd_rank2)

    p = sub.add_parser("verify-lemma", parents=[common], help="Reproduce a bundled fact.")
    p.add_argument("lemma", choices=sorted(LEMMAS))
    p.add_argument("--s", type=int, default=None)
    p.add_argument("--n", type=int, default=3)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--depth", type=int, default=DEFAULT_RANK2_DEPTH)
    p.add_argument("--count", type=int, default=50)
    p.add_argument("--budget", type=int, default=None)
    p.set_defaults(handler=cmd_verify_lemma)

    p = sub.add_parser("shell", parents=[common], help="Interactive command loop.")
    p.set_defaults(handler=None)
    return parser


def emit(report: Report, target: Optional[Path]) -> None:
    if target is None:
        sys.stdout.write(report.dumps())
        return
    Path(target).write_text(report.dumps(), encoding="utf-8")
    print(checks_table(report.checks) if report.checks else f"Wrote {target}")


def run(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    configure_logging(args.verbose)
    if args.handler is None:
        run_loop()
        return 0
    try:
        report = args.handler(args)
    except VERIFICATION_ERRORS as exc:
        print(f"Error: {exc}")
        return 1
    except (SphereLabError, OSError, json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
        print(f"Error: {exc}")
        return 2
    emit(report, args.json)
    failing = report.failing()
    if failing:
        logger.warning("verification failed: %s", ", ".join(c.name for c in failing))
        return 1
    return 0


def help_command() -> None:
    header = [("Command", "Description", "Args")]
    commands = [
        ("help", "List commands", "n/a"),
        ("quit", "Exit the shell", "n/a"),
        ("gen-punctured", "Build Sc(M(0,s))", "--s S [--pants] [--dot F]"),
        ("aut", "Automorphism group", "kneser --s S | graph.json"),
        ("glued", "Pants in M(n,0)", "pants-check|split-spheres|exchange"),
        ("rigid", "Rigid sets", "build|detect|expand|exhaust [--x F] [--out F]"),
        ("rank2", "Farey graph with fins", "build|witness|verify"),
        ("verify-lemma", "Bundled reproductions", ", ".join(sorted(LEMMAS))),
    ]
    print(table_draw(header + commands))


def run_loop(command_source: Optional[Iterable[str]] = None) -> None:
    print("\nspherelab shell\nType 'help' for commands, 'quit' to exit.\n")
    commands_iter = iter(command_source) if command_source is not None else None

    while True:
        try:
            raw = next(commands_iter) if commands_iter is not None else input(">>> ")
        except (StopIteration, EOFError):
            print("Goodbye!")
            break
        try:
            parts: List[str] = shlex.split(raw)
        except ValueError as exc:
            print(f"Error parsing input: {exc}")
            continue
        if not parts:
            continue

        cmd = parts[0]
        try:
            if cmd == "help":
                help_command()
            elif cmd == "quit":
                print("Goodbye!")
                break
            elif cmd == "shell":
                print("Already in the shell.")
            else:
                code = run(parts)
                if code:
                    print(f"exit {code}")
        except Exception as exc:
            print(f"Error: {exc}")


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
