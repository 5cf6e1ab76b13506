"""
The rigid set X of Sc(M(n,0)) and its split-pair expansion.

X is the join of the Y-spheres with every interior sphere, plus one good pair
of once-crossing spheres per Y-sphere. Everything the rigidity argument uses
is produced here as a certificate that can be re-checked independently:
detectable intersections, split pairs, fully split expansions and the
layered exhaustion over exchanged pants decompositions.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field, replace
from typing import Callable, Dict, FrozenSet, Iterable, List, Optional, Sequence, Set, Tuple, Union

import networkx as nx
import pandas as pd

from .autom import is_locally_injective
from .config import node_budget
from .disk_calculus import GoodnessData, good_pair_check, goodness
from .errors import (
    BudgetExhausted,
    CannotPlaceGoodPairs,
    DomainError,
    NotDetectable,
    NotIntersecting,
    NotMember,
    NotSplit,
    OutOfModel,
    SphereLabError,
    SplitPairError,
)
from .glued_model import (
    GluedManifold,
    GluedPants,
    Interior,
    OnceCrossing,
    SphereClass,
    YSphere,
    disjoint,
    disjointness_graph,
    exchange,
    is_pants,
    make_once_crossing,
    sorted_spheres,
    sphere_from_json,
    sphere_key,
    sphere_to_json,
    split_spheres_for,
    validate_sphere,
)
from .splits import Split, essential_splits, is_nested

logger = logging.getLogger(__name__)

VertexSet = FrozenSet[SphereClass]

# reason codes carried by SplitPairError
NOT_A_SPLIT_SPHERE = "not-a-split-sphere"
NOT_ADJACENT = "not-adjacent"
SELF_ADJACENT = "self-adjacent"
SELF_ADJACENT_AFTER_EXCHANGE = "self-adjacent-after-exchange"
OUT_OF_MODEL = "out-of-model"
NO_UNIQUE_PARTNER = "no-unique-partner"


@dataclass
class RigidSetX:
    M: GluedManifold
    y: List[YSphere]
    z: List[Interior]
    good_pairs: Dict[str, Tuple[OnceCrossing, OnceCrossing]]
    goodness: Dict[str, Tuple[GoodnessData, GoodnessData]]
    base_pants: GluedPants
    base_witness: Tuple[SphereClass, SphereClass]

    def x0(self) -> VertexSet:
        return frozenset([*self.y, *self.z])

    def vertices(self) -> VertexSet:
        good = [x for pair in self.good_pairs.values() for x in pair]
        return frozenset([*self.y, *self.z, *good])

    def verify(self) -> List[str]:
        """Re-check the construction; returns the list of failures."""
        failures: List[str] = []
        for a in self.y:
            for u in self.z:
                if not disjoint(a, u, self.M):
                    failures.append(f"join broken at {a}, {u}")
        for label, (g1, g2) in self.goodness.items():
            if not good_pair_check(g1, g2):
                failures.append(f"good pair for {label} fails the boundary check")
            a1, a2 = self.good_pairs[label]
            if not disjoint(a1, a2, self.M):
                failures.append(f"good pair for {label} intersects")
        if not self.base_pants.spheres <= self.vertices():
            failures.append("base pants leave X")
        for cert in twin_crossing_certificates(self):
            failures.extend(cert.verify(self.M))
        return failures

    def to_json(self) -> Dict[str, object]:
        return {
            "manifold": self.M.to_json(),
            "vertices": [sphere_to_json(x) for x in sorted_spheres(self.vertices())],
            "good_pairs": {
                label: [sphere_to_json(x) for x in pair] for label, pair in sorted(self.good_pairs.items())
            },
            "base_pants": self.base_pants.to_json(),
            "base_witness": [sphere_to_json(x) for x in self.base_witness],
        }


def vertex_set_from_json(payload: Dict[str, object]) -> Tuple[GluedManifold, VertexSet]:
    """Manifold and vertex set of a rigid-set payload (any mapping with "manifold" and "vertices")."""
    M = GluedManifold.from_json(payload["manifold"])  # type: ignore[arg-type]
    vertices = [sphere_from_json(x, M) for x in payload["vertices"]]  # type: ignore[union-attr]
    for x in vertices:
        validate_sphere(x, M)
    return M, frozenset(vertices)


def good_spheres_for(M: GluedManifold, label: str) -> Tuple[OnceCrossing, OnceCrossing]:
    """Straight good spheres on `label` capped by the next two orbits, cyclically."""
    k = M.names.index(label)
    found = []
    for step in (1, 2):
        cap_plus, cap_minus = M.sides(M.names[(k + step) % M.n])
        found.append(make_once_crossing(label, {cap_plus}, {cap_minus}, M))
    return found[0], found[1]


def _greedy_completion(chosen: List[Split], s: int) -> List[Split]:
    out = list(chosen)
    for u in essential_splits(s):
        if u not in out and all(is_nested(u, v) for v in out):
            out.append(u)
    return out


def find_split_witness(P: GluedPants, X: Iterable[SphereClass], M: GluedManifold) -> Tuple[SphereClass, SphereClass]:
    """Least (a, b) in canonical order with b in X a split sphere for (a, P)."""
    members = set(X)
    if not P.spheres <= members:
        raise NotSplit("pants decomposition is not contained in X")
    for a in sorted_spheres(P.spheres):
        try:
            found = split_spheres_for(P, a, M)
        except OutOfModel:
            continue
        inside = sorted_spheres(found & members)
        if inside:
            return a, inside[0]
    raise NotSplit("no sphere of P has a split sphere in X")


def is_x_split(P: GluedPants, X: Iterable[SphereClass], M: GluedManifold) -> bool:
    try:
        find_split_witness(P, X, M)
    except NotSplit:
        return False
    return True


def build_rigid_set(n: int) -> RigidSetX:
    if n < 3:
        raise CannotPlaceGoodPairs(f"good pairs need three pairing orbits, got n={n}")
    M = GluedManifold.standard(n)
    y = [YSphere(name) for name in M.names]
    z = [Interior(u) for u in essential_splits(M.s)]
    good_pairs: Dict[str, Tuple[OnceCrossing, OnceCrossing]] = {}
    data: Dict[str, Tuple[GoodnessData, GoodnessData]] = {}
    for name in M.names:
        a1, a2 = good_spheres_for(M, name)
        plus, minus = M.sides(name)
        g1 = goodness(plus, minus, a1.d_plus, a1.d_minus)
        g2 = goodness(plus, minus, a2.d_plus, a2.d_minus)
        if not good_pair_check(g1, g2):
            raise CannotPlaceGoodPairs(f"canonical caps for {name} do not form a good pair")
        good_pairs[name] = (a1, a2)
        data[name] = (g1, g2)

    s3, s4 = data[M.names[0]][0].interior_boundary
    interior = _greedy_completion([s3, s4], M.s)
    base = is_pants([*y, *(Interior(u) for u in interior)], M)
    vertices = {*y, *z, *(x for pair in good_pairs.values() for x in pair)}
    witness = find_split_witness(base, vertices, M)
    X = RigidSetX(M=M, y=y, z=z, good_pairs=good_pairs, goodness=data, base_pants=base, base_witness=witness)
    logger.info("n=%d: |X| = %d, witness %s by %s", n, len(X.vertices()), *X.base_witness)
    return X


@dataclass
class DetectabilityCertificate:
    alpha: SphereClass
    beta: SphereClass
    p_alpha: GluedPants
    p_beta: GluedPants

    def remainder(self) -> VertexSet:
        return self.p_alpha.spheres - {self.alpha}

    def verify(self, X: Iterable[SphereClass]) -> bool:
        """Both decompositions, alpha and beta included, lie in X."""
        members = set(X)
        return (
            self.alpha in self.p_alpha
            and self.beta in self.p_beta
            and self.p_alpha.spheres - {self.alpha} == self.p_beta.spheres - {self.beta}
            and self.p_alpha.spheres <= members
            and self.p_beta.spheres <= members
        )

    def to_json(self) -> Dict[str, object]:
        return {
            "alpha": sphere_to_json(self.alpha),
            "beta": sphere_to_json(self.beta),
            "P_alpha": self.p_alpha.to_json(),
            "P_beta": self.p_beta.to_json(),
        }


def detect_intersection(
    X: Iterable[SphereClass],
    alpha: SphereClass,
    beta: SphereClass,
    M: GluedManifold,
    budget: Optional[int] = None,
) -> DetectabilityCertificate:
    """Find pants decompositions P_alpha, P_beta in X with P_alpha - alpha = P_beta - beta."""
    members = set(X)
    for x in (alpha, beta):
        if x not in members:
            raise NotMember(f"{x} is not in X")
    if alpha == beta or disjoint(alpha, beta, M):
        raise NotIntersecting(f"{alpha} and {beta} do not intersect")
    limit = node_budget(budget)
    candidates = [x for x in members if x not in (alpha, beta) and disjoint(x, alpha, M) and disjoint(x, beta, M)]
    graph = disjointness_graph(candidates, M)
    target = 3 * M.n - 4
    seen = 0
    for clique in nx.enumerate_all_cliques(graph):
        if len(clique) < target:
            continue
        if len(clique) > target:
            break
        seen += 1
        if seen > limit:
            raise BudgetExhausted(limit)
        try:
            p_alpha = is_pants([*clique, alpha], M)
            p_beta = is_pants([*clique, beta], M)
        except SphereLabError:
            continue
        logger.debug("detected %s / %s after %d remainders", alpha, beta, seen)
        return DetectabilityCertificate(alpha=alpha, beta=beta, p_alpha=p_alpha, p_beta=p_beta)
    raise NotDetectable(f"no common remainder for {alpha} and {beta} in X ({seen} tried)")


def map_certificate(
    cert: DetectabilityCertificate, f: Dict[SphereClass, SphereClass], M: GluedManifold
) -> DetectabilityCertificate:
    """Push a certificate through a simplicial map; fails if an image is not a pants decomposition."""
    image = [f[x] for x in cert.remainder()]
    return DetectabilityCertificate(
        alpha=f[cert.alpha],
        beta=f[cert.beta],
        p_alpha=is_pants([*image, f[cert.alpha]], M),
        p_beta=is_pants([*image, f[cert.beta]], M),
    )


Sphere = Union[SphereClass, Split]


def _encode(x: Sphere) -> Dict[str, object]:
    if isinstance(x, Split):
        return {"tag": "split", "split": x.to_json()}
    return sphere_to_json(x)


@dataclass
class SplitPairCertificate:
    """(first, second) is a split pair for `sphere`, witnessed by two pants decompositions."""

    sphere: Sphere
    first: Sphere
    second: Sphere
    first_pants: FrozenSet[Sphere]
    second_pants: FrozenSet[Sphere]
    twins: Tuple[Sphere, Sphere]
    twins_cross: bool
    twins_meet_pair: bool

    def spheres(self) -> Tuple[Sphere, Sphere]:
        return self.first, self.second

    def lies_in(self, X: Iterable[Sphere]) -> bool:
        """The pair, its twins and both decompositions are vertices of X."""
        members = set(X)
        return {self.first, self.second, *self.twins} <= members and (self.first_pants | self.second_pants) <= members

    def verify(self, M: GluedManifold) -> List[str]:
        """Re-check the certificate in M(n,0); returns the failures."""
        try:
            before = split_spheres_for(is_pants(self.first_pants, M), self.sphere, M)  # type: ignore[arg-type]
            after = split_spheres_for(is_pants(self.second_pants, M), self.sphere, M)  # type: ignore[arg-type]
        except SphereLabError as exc:
            return [f"{self.sphere}: {exc}"]
        return self._audit(before, after, lambda x, y: disjoint(x, y, M))  # type: ignore[arg-type]

    def verify_local(self, s: int) -> List[str]:
        """Re-check a certificate built inside M(0,s)."""
        failures = []
        for pants in (self.first_pants, self.second_pants):
            if len(pants) != s - 3 or not all(is_nested(u, v) for u in pants for v in pants):  # type: ignore[arg-type]
                failures.append(f"{sorted(map(str, pants))} is not a pants decomposition of M(0,{s})")
        if failures:
            return failures
        try:
            before = local_split_spheres(self.first_pants, self.sphere, s)  # type: ignore[arg-type]
            after = local_split_spheres(self.second_pants, self.sphere, s)  # type: ignore[arg-type]
        except SplitPairError as exc:
            return [f"{self.sphere}: {exc}"]
        return self._audit(before, after, is_nested)  # type: ignore[arg-type]

    def _audit(
        self, before: FrozenSet[Sphere], after: FrozenSet[Sphere], apart: Callable[[Sphere, Sphere], bool]
    ) -> List[str]:
        failures = []
        if len(self.first_pants ^ self.second_pants) != 2:
            failures.append("decompositions are not one exchange apart")
        if self.first not in before:
            failures.append(f"{self.first} is not a split sphere of {self.sphere} before the exchange")
        if self.second not in after:
            failures.append(f"{self.second} is not a split sphere of {self.sphere} after the exchange")
        if self.first == self.second or not apart(self.first, self.second):
            failures.append(f"{self.first} and {self.second} are not disjoint")
        if (before - {self.first}, after - {self.second}) != ({self.twins[0]}, {self.twins[1]}):
            failures.append("twins are not the remaining split spheres")
        d_twin, e_twin = self.twins
        if self.twins_cross != (d_twin != e_twin and not apart(d_twin, e_twin)):
            failures.append("recorded twins_cross does not match")
        if self.twins_meet_pair != all(not apart(t, x) for t in self.twins for x in self.spheres()):
            failures.append("recorded twins_meet_pair does not match")
        return failures

    def to_json(self) -> Dict[str, object]:
        order = lambda xs: sorted(xs, key=lambda x: str(_encode(x)))  # noqa: E731
        return {
            "sphere": _encode(self.sphere),
            "pair": [_encode(self.first), _encode(self.second)],
            "pants": [[_encode(x) for x in order(self.first_pants)], [_encode(x) for x in order(self.second_pants)]],
            "twins": [_encode(x) for x in self.twins],
            "twins_cross": self.twins_cross,
            "twins_meet_pair": self.twins_meet_pair,
        }


def _pair_up(
    c: Sphere,
    before: FrozenSet[Sphere],
    after: FrozenSet[Sphere],
    pants_before: FrozenSet[Sphere],
    pants_after: FrozenSet[Sphere],
    apart: Callable[[Sphere, Sphere], bool],
) -> Tuple[SplitPairCertificate, SplitPairCertificate]:
    """Match each split sphere of c before the exchange with its disjoint partner after it."""
    pairs: List[Tuple[Sphere, Sphere]] = []
    for d in sorted(before, key=_sort_key):
        partners = [e for e in after if e != d and apart(d, e)]
        if len(partners) != 1:
            raise SplitPairError(NO_UNIQUE_PARTNER, f"{d} has {len(partners)} partners")
        pairs.append((d, partners[0]))
    certs = []
    for d, e in pairs:
        (d_twin,) = before - {d}
        (e_twin,) = after - {e}
        certs.append(
            SplitPairCertificate(
                sphere=c,
                first=d,
                second=e,
                first_pants=pants_before,
                second_pants=pants_after,
                twins=(d_twin, e_twin),
                twins_cross=d_twin != e_twin and not apart(d_twin, e_twin),
                twins_meet_pair=all(not apart(t, x) for t in (d_twin, e_twin) for x in (d, e)),
            )
        )
    return certs[0], certs[1]


def _sort_key(x: Sphere) -> Tuple:
    if isinstance(x, Split):
        return (-1, x.key())
    return sphere_key(x)


def construct_split_pairs(
    P: GluedPants,
    a: SphereClass,
    c: SphereClass,
    b: SphereClass,
    X: Iterable[SphereClass],
    M: GluedManifold,
) -> Tuple[SplitPairCertificate, SplitPairCertificate]:
    """
    Split pairs for c from P split at a by b.

    Each split sphere d of (c, P) is paired with the split sphere of c in
    (P - a) + b that is disjoint from it.
    """
    if b not in set(X):
        raise SplitPairError(NOT_A_SPLIT_SPHERE, f"{b} is not in X")
    try:
        if b not in split_spheres_for(P, a, M):
            raise SplitPairError(NOT_A_SPLIT_SPHERE, f"{b} does not split P at {a}")
    except OutOfModel as exc:
        raise SplitPairError(OUT_OF_MODEL, str(exc)) from exc
    if c == a or not P.adjacent(a, c):
        raise SplitPairError(NOT_ADJACENT, f"{c} is not adjacent to {a}")
    if P.self_adjacent(c):
        raise SplitPairError(SELF_ADJACENT, f"{c} is self-adjacent and has no split sphere")
    swapped = exchange(P, a, b, M)
    if swapped.self_adjacent(c):
        raise SplitPairError(SELF_ADJACENT_AFTER_EXCHANGE, f"{c} is self-adjacent after exchanging {a}")
    try:
        before = split_spheres_for(P, c, M)
        after = split_spheres_for(swapped, c, M)
    except OutOfModel as exc:
        raise SplitPairError(OUT_OF_MODEL, str(exc)) from exc
    return _pair_up(c, before, after, P.spheres, swapped.spheres, lambda x, y: disjoint(x, y, M))  # type: ignore[arg-type]


def local_split_spheres(splits: Iterable[Split], a: Split, s: int) -> FrozenSet[Split]:
    """Split spheres for a in a pants decomposition of M(0,s)."""
    members = set(splits)
    if a not in members:
        raise SplitPairError(NOT_A_SPLIT_SPHERE, f"{a} is not in the pants decomposition")
    rest = members - {a}
    return frozenset(u for u in essential_splits(s) if u not in members and all(is_nested(u, v) for v in rest))


def construct_local_split_pairs(
    splits: Iterable[Split], a: Split, c: Split, b: Split, s: int
) -> Tuple[SplitPairCertificate, SplitPairCertificate]:
    """The same construction inside a punctured sphere M(0,s)."""
    members = frozenset(splits)
    if b not in local_split_spheres(members, a, s):
        raise SplitPairError(NOT_A_SPLIT_SPHERE, f"{b} does not split at {a}")
    if c not in members or c == a:
        raise SplitPairError(NOT_ADJACENT, f"{c} is not a second sphere of the decomposition")
    swapped = (members - {a}) | {b}
    before = local_split_spheres(members, c, s)
    after = local_split_spheres(swapped, c, s)
    return _pair_up(c, before, after, members, swapped, is_nested)  # type: ignore[arg-type]


@dataclass
class ExpansionResult:
    vertices: VertexSet
    pants: GluedPants
    witness: Tuple[SphereClass, SphereClass]
    layers: List[List[SphereClass]]
    certificates: List[SplitPairCertificate]
    frontier: List[SphereClass]

    def added(self) -> VertexSet:
        found: Set[SphereClass] = set()
        for cert in self.certificates:
            found.update(cert.spheres())  # type: ignore[arg-type]
            found.update(cert.twins)  # type: ignore[arg-type]
        return frozenset(found)


def expand_fully_split(
    X: Iterable[SphereClass],
    P: GluedPants,
    M: GluedManifold,
    witness: Optional[Tuple[SphereClass, SphereClass]] = None,
) -> ExpansionResult:
    """
    Grow X until P is fully X-split.

    Layer 0 is the witness sphere. A later layer holds the non-self-adjacent
    spheres adjacent to an already split sphere; each is processed against
    the least such neighbour whose exchange keeps it splittable. Spheres with
    no usable neighbour wait for the next layer, and spheres that never get
    one are returned as frontier events.
    """
    current: Set[SphereClass] = set(X)
    a0, b0 = witness if witness is not None else find_split_witness(P, current, M)
    if not P.spheres <= current or b0 not in current:
        raise NotSplit("witness does not lie in X")
    splitters: Dict[SphereClass, SphereClass] = {a0: b0}
    todo = [x for x in sorted_spheres(P.spheres) if not P.self_adjacent(x)]
    done: Set[SphereClass] = set()
    layers: List[List[SphereClass]] = [[a0]]
    certificates: List[SplitPairCertificate] = []

    while True:
        snapshot = dict(splitters)
        layer: List[SphereClass] = []
        for c in todo:
            if c in done:
                continue
            for a in sorted_spheres(snapshot):
                if a == c or not P.adjacent(a, c):
                    continue
                try:
                    pair = construct_split_pairs(P, a, c, snapshot[a], current, M)
                except SplitPairError as exc:
                    logger.debug("defer %s via %s: %s", c, a, exc.reason)
                    continue
                for cert in pair:
                    current.update([cert.first, cert.second])  # type: ignore[list-item]
                    certificates.append(cert)
                splitters.setdefault(c, pair[0].first)  # type: ignore[arg-type]
                done.add(c)
                layer.append(c)
                break
        if not layer:
            break
        layers.append(layer)

    frontier = [c for c in todo if c not in done]
    if frontier:
        logger.info("expansion left %d frontier spheres: %s", len(frontier), ", ".join(map(str, frontier)))
    return ExpansionResult(
        vertices=frozenset(current),
        pants=P,
        witness=(a0, b0),
        layers=layers,
        certificates=certificates,
        frontier=frontier,
    )


def fully_split_audit(X: Iterable[SphereClass], P: GluedPants, M: GluedManifold) -> List[SphereClass]:
    """Split spheres of P missing from X; OutOfModel propagates."""
    members = set(X)
    missing: List[SphereClass] = []
    for a in sorted_spheres(P.spheres):
        if P.self_adjacent(a):
            continue
        missing.extend(sorted_spheres(split_spheres_for(P, a, M) - members))
    return missing


def redundant_spheres(result: ExpansionResult, start: Iterable[SphereClass]) -> List[SphereClass]:
    """Added spheres whose removal keeps every certificate inside X; empty for a minimal expansion."""
    added = result.vertices - set(start)
    redundant = []
    for x in sorted_spheres(added):
        trimmed = result.vertices - {x}
        if all(cert.lies_in(trimmed) for cert in result.certificates):
            redundant.append(x)
    return redundant


@dataclass
class LayerReport:
    index: int
    pants: int
    next_pants: int
    vertices: int
    contained: bool
    split: bool
    frontier: int


@dataclass
class ExhaustionReport:
    n: int
    depth: int
    witness: Tuple[SphereClass, SphereClass]
    layers: List[LayerReport] = field(default_factory=list)
    vertex_sets: List[VertexSet] = field(default_factory=list)
    frontier_events: List[str] = field(default_factory=list)

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame([vars(layer) for layer in self.layers])

    def to_json(self) -> Dict[str, object]:
        return {
            "n": self.n,
            "depth": self.depth,
            "witness": [sphere_to_json(x) for x in self.witness],
            "layers": [vars(layer) for layer in self.layers],
            "frontier_events": list(self.frontier_events),
        }


def _exchange_layer(
    previous: Sequence[GluedPants], M: GluedManifold, events: List[str], limit: int
) -> List[GluedPants]:
    found: Dict[Tuple, GluedPants] = {}
    for P in previous:
        for a in sorted_spheres(P.spheres):
            if P.self_adjacent(a):
                continue
            try:
                options = split_spheres_for(P, a, M)
            except OutOfModel as exc:
                events.append(f"exchange at {a}: {exc}")
                continue
            for b in sorted_spheres(options):
                Q = exchange(P, a, b, M)
                found.setdefault(Q.key(), Q)
                if len(found) > limit:
                    raise BudgetExhausted(limit, partial=list(found.values()))
    return [found[key] for key in sorted(found)]


def exhaust(n: int, depth: int, budget: Optional[int] = None) -> ExhaustionReport:
    """
    Nested sets X_0 in X_1 in ... in X_depth.

    Pants layer i holds every exchange of a layer i-1 decomposition. X_i folds
    the fully split expansion over layer i, and each X_i is audited against
    layer i+1: every decomposition there must lie in X_i and be X_i-split.
    """
    if depth < 0:
        raise DomainError("depth must be non-negative")
    limit = node_budget(budget)
    X = build_rigid_set(n)
    M = X.M
    report = ExhaustionReport(n=n, depth=depth, witness=X.base_witness)

    base = expand_fully_split(X.vertices(), X.base_pants, M, witness=X.base_witness)
    report.frontier_events.extend(f"layer 0: {c} unprocessed" for c in base.frontier)
    current = base.vertices
    pants_layers: List[List[GluedPants]] = [[X.base_pants]]
    for i in range(depth + 1):
        if i > 0:
            events_before = len(report.frontier_events)
            for P in pants_layers[i]:
                if not P.spheres <= current or not is_x_split(P, current, M):
                    report.frontier_events.append(f"layer {i}: {P.key()} not split by X_{i - 1}")
                    continue
                result = expand_fully_split(current, P, M)
                report.frontier_events.extend(f"layer {i}: {c} unprocessed" for c in result.frontier)
                current = result.vertices
            logger.info("layer %d: %d new events", i, len(report.frontier_events) - events_before)
        report.vertex_sets.append(current)
        pants_layers.append(_exchange_layer(pants_layers[i], M, report.frontier_events, limit))
        upcoming = pants_layers[i + 1]
        report.layers.append(
            LayerReport(
                index=i,
                pants=len(pants_layers[i]),
                next_pants=len(upcoming),
                vertices=len(current),
                contained=all(P.spheres <= current for P in upcoming),
                split=all(is_x_split(P, current, M) for P in upcoming if P.spheres <= current),
                frontier=len(report.frontier_events),
            )
        )
        logger.info("layer %d: %d pants, |X| = %d", i, len(pants_layers[i]), len(current))
    return report


def x_graph(X: Iterable[SphereClass], M: GluedManifold) -> nx.Graph:
    return disjointness_graph(X, M)


def check_local_injectivity(f: Dict[SphereClass, SphereClass], X: Iterable[SphereClass], M: GluedManifold) -> bool:
    """f is simplicial into the model complex and injective on closed stars of X."""
    members = sorted_spheres(X)
    missing = [x for x in members if x not in f]
    if missing:
        raise DomainError(f"map undefined on {len(missing)} vertices, first {missing[0]}")
    return is_locally_injective(x_graph(members, M), f, lambda x, y: disjoint(x, y, M))


def y_permutation_map(X: RigidSetX, perm: Dict[str, str]) -> Dict[SphereClass, SphereClass]:
    """Permute the Y-spheres of X_0 and fix every interior sphere."""
    if sorted(perm) != sorted(X.M.names) or sorted(perm.values()) != sorted(X.M.names):
        raise DomainError("perm must be a permutation of the Y labels")
    mapping: Dict[SphereClass, SphereClass] = {YSphere(a): YSphere(b) for a, b in perm.items()}
    mapping.update({u: u for u in X.z})
    return mapping


def good_pair_certificates(X: RigidSetX, budget: Optional[int] = None) -> List[DetectabilityCertificate]:
    """Each good sphere has X-detectable intersection with its Y-sphere."""
    certs = []
    for label, pair in sorted(X.good_pairs.items()):
        for good in pair:
            certs.append(detect_intersection(X.vertices(), YSphere(label), good, X.M, budget))
    return certs


def twin_sphere(x: OnceCrossing) -> OnceCrossing:
    """The sphere of N(A + x) other than A and x: same disks, other gluing."""
    return replace(x, twisted=not x.twisted)


@dataclass
class TwinCrossingCertificate:
    """Twins of a good pair cross each other and both good spheres."""

    label: str
    good: Tuple[OnceCrossing, OnceCrossing]
    twins: Tuple[OnceCrossing, OnceCrossing]

    def verify(self, M: GluedManifold, remainders: Sequence[Iterable[SphereClass]] = ()) -> List[str]:
        """
        Re-check the crossing pattern. `remainders` are the pants remainders
        P_A - A detecting each good sphere; each twin must sit in the same
        four-holed piece as its good sphere.
        """
        failures: List[str] = []
        for a, e in zip(self.good, self.twins):
            if a.label != self.label or e != twin_sphere(a):
                failures.append(f"{e} is not the twin of {a}")
        if not disjoint(*self.good, M):
            failures.append(f"good pair for {self.label} intersects")
        if disjoint(*self.twins, M):
            failures.append(f"twins for {self.label} are disjoint")
        for e in self.twins:
            for a in self.good:
                if disjoint(e, a, M):
                    failures.append(f"{e} misses {a}")
        for e, rest in zip(self.twins, remainders):
            outside = [x for x in rest if not disjoint(e, x, M)]
            if outside:
                failures.append(f"{e} leaves its piece at {outside[0]}")
        return failures

    def to_json(self) -> Dict[str, object]:
        return {
            "label": self.label,
            "good": [sphere_to_json(x) for x in self.good],
            "twins": [sphere_to_json(x) for x in self.twins],
        }


def twin_crossing_certificates(X: RigidSetX) -> List[TwinCrossingCertificate]:
    certs = []
    for label, (a1, a2) in sorted(X.good_pairs.items()):
        certs.append(TwinCrossingCertificate(label=label, good=(a1, a2), twins=(twin_sphere(a1), twin_sphere(a2))))
    return certs
