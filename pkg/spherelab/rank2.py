"""
Sc(M(2,0)) as the Farey graph with fins, and witnesses that no finite
subgraph of it is rigid.

Farey vertices are reduced slopes (p, q) with q >= 0 and infinity stored as
(1, 0); every Farey edge {a, b} gets a fin vertex ("fin", a, b) joined to
both ends. The infinite graph is replaced by a mediant ball around the base
triangle {0/1, 1/1, 1/0}; Farey vertices carry kind "farey" (infinite
valence in the full graph) and fin vertices kind "fin" (valence 2).
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple, Union

import networkx as nx
import numpy as np
import pandas as pd

from .autom import is_locally_injective
from .config import DEFAULT_RANK2_DEPTH, DEFAULT_SEED
from .errors import BallTooSmall, DomainError, ReducedCaseNote
from .visualize import to_dot

logger = logging.getLogger(__name__)

Slope = Tuple[int, int]
Fin = Tuple[str, Slope, Slope]
Vertex = Union[Slope, Fin]

FAREY = "farey"
FIN = "fin"
MAX_GROWTH = 4

# witness cases, in the order the case analysis tries them
PENDANT_EDGE = "pendant-edge"
PENDANT_FIN_PATH = "pendant-fin-path"
BARE_FIN_PATH = "bare-fin-path"
EAR_FAREY_TO_FIN = "ear-farey-to-fin"
EAR_FIN_TO_FAREY = "ear-fin-to-farey"


def normalize(p: int, q: int) -> Slope:
    if q < 0 or (q == 0 and p < 0):
        p, q = -p, -q
    g = gcd(abs(p), q) or 1
    return p // g, q // g


def slope_key(a: Slope) -> Tuple[int, Fraction]:
    """Order on the circle R + {infinity}, infinity last."""
    p, q = a
    return (1, Fraction(0)) if q == 0 else (0, Fraction(p, q))


def is_fin(v: Vertex) -> bool:
    return len(v) == 3 and v[0] == FIN


def vertex_key(v: Vertex) -> Tuple:
    if is_fin(v):
        return (1, slope_key(v[1]), slope_key(v[2]))  # type: ignore[arg-type]
    return (0, slope_key(v))  # type: ignore[arg-type]


def fin_of(a: Slope, b: Slope) -> Fin:
    low, high = sorted((a, b), key=slope_key)
    return (FIN, low, high)


def unimodular(a: Slope, b: Slope) -> bool:
    return abs(a[0] * b[1] - a[1] * b[0]) == 1


def apexes(a: Slope, b: Slope) -> Tuple[Slope, Slope]:
    """The two Farey vertices completing a triangle on the edge {a, b}."""
    return normalize(a[0] + b[0], a[1] + b[1]), normalize(a[0] - b[0], a[1] - b[1])


def slope_str(a: Slope) -> str:
    return "inf" if a[1] == 0 else f"{a[0]}/{a[1]}"


def vertex_str(v: Vertex) -> str:
    if is_fin(v):
        return f"fin({slope_str(v[1])},{slope_str(v[2])})"  # type: ignore[arg-type]
    return slope_str(v)  # type: ignore[arg-type]


def vertex_to_json(v: Vertex) -> object:
    if is_fin(v):
        return {"fin": [list(v[1]), list(v[2])]}  # type: ignore[arg-type]
    return list(v)


def vertex_from_json(payload: object) -> Vertex:
    if isinstance(payload, dict):
        a, b = payload["fin"]
        return fin_of(normalize(*a), normalize(*b))
    p, q = payload  # type: ignore[misc]
    return normalize(int(p), int(q))


class FareyFins:
    """Mediant ball of the given depth with a fin on every Farey edge."""

    def __init__(self, depth: int = DEFAULT_RANK2_DEPTH) -> None:
        if depth < 0:
            raise DomainError("depth must be non-negative")
        self.depth = depth
        self.graph = nx.Graph()
        self.triangles: List[Tuple[Slope, Slope, Slope]] = []
        base = ((0, 1), (1, 1), (1, 0))
        self._add_triangle(*base)
        boundary: Dict[Tuple[Slope, Slope], Slope] = {
            (base[0], base[1]): base[2],
            (base[1], base[2]): base[0],
            (base[0], base[2]): base[1],
        }
        for _ in range(depth):
            grown: Dict[Tuple[Slope, Slope], Slope] = {}
            for (a, b), opposite in boundary.items():
                plus, minus = apexes(a, b)
                apex = minus if plus == opposite else plus
                self._add_triangle(a, b, apex)
                grown[(a, apex)] = b
                grown[(apex, b)] = a
            boundary = grown
        self.boundary = boundary

    def _add_triangle(self, a: Slope, b: Slope, c: Slope) -> None:
        self.triangles.append(tuple(sorted((a, b, c), key=slope_key)))  # type: ignore[arg-type]
        for x, y in ((a, b), (b, c), (a, c)):
            if self.graph.has_edge(x, y):
                continue
            self.graph.add_node(x, kind=FAREY, valence="infinite")
            self.graph.add_node(y, kind=FAREY, valence="infinite")
            self.graph.add_edge(x, y, kind=FAREY)
            f = fin_of(x, y)
            self.graph.add_node(f, kind=FIN, valence=2)
            self.graph.add_edge(x, f, kind=FIN)
            self.graph.add_edge(y, f, kind=FIN)

    def grow(self) -> "FareyFins":
        return FareyFins(self.depth + 1)

    def farey_vertices(self) -> List[Slope]:
        return sorted((v for v, k in self.graph.nodes(data="kind") if k == FAREY), key=slope_key)

    def fin_vertices(self) -> List[Fin]:
        return sorted((v for v, k in self.graph.nodes(data="kind") if k == FIN), key=vertex_key)

    def farey_edges(self) -> List[Tuple[Slope, Slope]]:
        return [(a, b) for a, b, k in self.graph.edges(data="kind") if k == FAREY]

    def fin_edges(self) -> List[Tuple[Vertex, Vertex]]:
        return [(a, b) for a, b, k in self.graph.edges(data="kind") if k == FIN]

    def kind(self, v: Vertex) -> str:
        return FIN if is_fin(v) else FAREY

    def edge_kind(self, a: Vertex, b: Vertex) -> str:
        return FIN if is_fin(a) or is_fin(b) else FAREY

    def valence_class(self, v: Vertex) -> str:
        return "2" if is_fin(v) else "infinite"

    def __contains__(self, v: object) -> bool:
        return v in self.graph

    def farey_neighbours(self, v: Slope) -> List[Slope]:
        return sorted((u for u in self.graph.neighbors(v) if not is_fin(u)), key=slope_key)

    def check(self) -> bool:
        """Unimodular Farey edges, reduced slopes and valence-2 fins."""
        for a, b in self.farey_edges():
            if not unimodular(a, b):
                return False
        for v in self.farey_vertices():
            if normalize(*v) != v:
                return False
        return all(self.graph.degree(f) == 2 for f in self.fin_vertices())

    def to_dot(self) -> str:
        return to_dot(self.graph, "farey_fins", vertex_str, vertex_key)


def build_farey_fins(depth: int) -> FareyFins:
    G = FareyFins(depth)
    logger.info(
        "depth %d: %d Farey vertices, %d Farey edges, %d fins",
        depth,
        len(G.farey_vertices()),
        len(G.farey_edges()),
        len(G.fin_vertices()),
    )
    return G


def _in_arc(v: Slope, start: Slope, end: Slope) -> bool:
    """v lies on the closed arc running forward from start to end."""
    kv, ks, ke = slope_key(v), slope_key(start), slope_key(end)
    if ks <= ke:
        return ks <= kv <= ke
    return kv >= ks or kv <= ke


@dataclass
class FareyHull:
    vertices: FrozenSet[Slope]
    triangles: List[Tuple[Slope, Slope, Slope]]
    graph: nx.Graph

    def ears(self) -> List[Slope]:
        if not self.triangles:
            return sorted(self.graph.nodes(), key=slope_key)
        return sorted((v for v in self.graph if self.graph.degree(v) == 2), key=slope_key)


def convex_hull_farey(V: Iterable[Slope], G: FareyFins) -> FareyHull:
    """Union of the tessellation triangles whose vertices separate V."""
    points = frozenset(V)
    if len(points) < 2:
        raise DomainError("the hull needs at least two Farey vertices")
    outside = [v for v in points if v not in G or is_fin(v)]
    if outside:
        raise BallTooSmall(f"{vertex_str(outside[0])} is not a Farey vertex of the depth-{G.depth} ball")
    chosen = []
    for tri in G.triangles:
        a, b, c = tri
        arcs = ((a, b), (b, c), (c, a))
        if any(all(_in_arc(v, s, e) for v in points) for s, e in arcs):
            continue
        chosen.append(tri)
    hull = nx.Graph()
    hull.add_nodes_from(points)
    for a, b, c in chosen:
        hull.add_edges_from(((a, b), (b, c), (a, c)))
    for a in points:
        for b in points:
            if a != b and G.graph.has_edge(a, b):
                hull.add_edge(a, b)
    return FareyHull(vertices=points, triangles=chosen, graph=hull)


@dataclass
class TypeSwap:
    edge: Tuple[Vertex, Vertex]
    image: Tuple[Vertex, Vertex]


@dataclass
class EmbeddingFamily:
    edge: Tuple[Vertex, Vertex]
    moved: Tuple[Vertex, ...]
    maps: List[Dict[Vertex, Vertex]]


Certificate = Union[TypeSwap, EmbeddingFamily]


@dataclass
class WitnessMap:
    domain: nx.Graph
    mapping: Dict[Vertex, Vertex]
    certificate: Certificate
    case: str
    depth: int

    def to_json(self) -> Dict[str, object]:
        def edge_json(edge: Tuple[Vertex, Vertex]) -> List[object]:
            return [vertex_to_json(x) for x in edge]

        def map_json(m: Dict[Vertex, Vertex]) -> List[List[object]]:
            return [[vertex_to_json(k), vertex_to_json(m[k])] for k in sorted(m, key=vertex_key)]

        cert: Dict[str, object]
        if isinstance(self.certificate, TypeSwap):
            cert = {"type": "type-swap", "edge": edge_json(self.certificate.edge), "image": edge_json(self.certificate.image)}
        else:
            cert = {
                "type": "embedding-family",
                "edge": edge_json(self.certificate.edge),
                "moved": [vertex_to_json(x) for x in self.certificate.moved],
                "maps": [map_json(m) for m in self.certificate.maps],
            }
        return {
            "case": self.case,
            "depth": self.depth,
            "domain": subgraph_to_json(self.domain),
            "map": map_json(self.mapping),
            "certificate": cert,
        }

    @classmethod
    def from_json(cls, payload: Dict[str, object]) -> "WitnessMap":
        def edge(raw: Sequence[object]) -> Tuple[Vertex, Vertex]:
            return vertex_from_json(raw[0]), vertex_from_json(raw[1])

        def mapping(raw: Sequence[Sequence[object]]) -> Dict[Vertex, Vertex]:
            return {vertex_from_json(k): vertex_from_json(v) for k, v in raw}

        cert_raw: Dict[str, object] = payload["certificate"]  # type: ignore[assignment]
        cert: Certificate
        if cert_raw["type"] == "type-swap":
            cert = TypeSwap(edge=edge(cert_raw["edge"]), image=edge(cert_raw["image"]))  # type: ignore[arg-type]
        else:
            cert = EmbeddingFamily(
                edge=edge(cert_raw["edge"]),  # type: ignore[arg-type]
                moved=tuple(vertex_from_json(x) for x in cert_raw["moved"]),  # type: ignore[union-attr]
                maps=[mapping(m) for m in cert_raw["maps"]],  # type: ignore[union-attr]
            )
        return cls(
            domain=subgraph_from_json(payload["domain"]),  # type: ignore[arg-type]
            mapping=mapping(payload["map"]),  # type: ignore[arg-type]
            certificate=cert,
            case=str(payload["case"]),
            depth=int(payload["depth"]),  # type: ignore[arg-type]
        )


def subgraph_to_json(X: nx.Graph) -> Dict[str, object]:
    vertices = sorted(X.nodes(), key=vertex_key)
    index = {v: i for i, v in enumerate(vertices)}
    edges = sorted(tuple(sorted((index[a], index[b]))) for a, b in X.edges())
    return {"vertices": [vertex_to_json(v) for v in vertices], "edges": [list(e) for e in edges]}


def subgraph_from_json(payload: Dict[str, object]) -> nx.Graph:
    vertices = [vertex_from_json(v) for v in payload["vertices"]]  # type: ignore[union-attr]
    X = nx.Graph()
    X.add_nodes_from(vertices)
    X.add_edges_from((vertices[i], vertices[j]) for i, j in payload["edges"])  # type: ignore[union-attr]
    return X


def subgraph(G: FareyFins, edges: Iterable[Tuple[Vertex, Vertex]]) -> nx.Graph:
    X = nx.Graph()
    for a, b in edges:
        if not G.graph.has_edge(a, b):
            raise BallTooSmall(f"{vertex_str(a)}-{vertex_str(b)} is not an edge of the depth-{G.depth} ball")
        X.add_edge(a, b)
    return X


def _identity_but(X: nx.Graph, changes: Dict[Vertex, Vertex]) -> Dict[Vertex, Vertex]:
    mapping = {v: v for v in X.nodes()}
    mapping.update(changes)
    return mapping


def _valid(X: nx.Graph, mapping: Dict[Vertex, Vertex], G: FareyFins) -> bool:
    if any(image not in G for image in mapping.values()):
        return False
    return is_locally_injective(X, mapping, G.graph.has_edge)


def _grown_until(G: FareyFins, needed: Iterable[Vertex]) -> FareyFins:
    wanted = list(needed)
    for _ in range(MAX_GROWTH):
        if all(v in G for v in wanted):
            return G
        G = G.grow()
    if all(v in G for v in wanted):
        return G
    raise BallTooSmall(f"witness target outside the depth-{G.depth} ball")


def _reaim(X: nx.Graph, G: FareyFins, pivot: Slope, same_kind_as: Vertex, leaf: Vertex, via: Optional[Vertex]) -> Tuple[List[Dict[Vertex, Vertex]], FareyFins]:
    """Three maps that fix X off the pendant part and send it to new edges at pivot."""
    for _ in range(MAX_GROWTH + 1):
        maps: List[Dict[Vertex, Vertex]] = []
        for t in G.farey_neighbours(pivot):
            if via is None:
                target = fin_of(pivot, t) if is_fin(same_kind_as) else t
                if target in X:
                    continue
                changes = {leaf: target}
            else:
                f = fin_of(pivot, t)
                if t in X or f in X:
                    continue
                changes = {leaf: t, via: f}
            mapping = _identity_but(X, changes)
            if _valid(X, mapping, G):
                maps.append(mapping)
            if len(maps) == 3:
                return maps, G
        G = G.grow()
    raise BallTooSmall(f"fewer than three re-aimings at {vertex_str(pivot)}")


def _outside_apex(X: nx.Graph, hull_vertices: Iterable[Slope], a: Slope, b: Slope) -> Slope:
    blocked = set(hull_vertices) | set(X.nodes())
    options = sorted((z for z in apexes(a, b) if z not in blocked), key=slope_key)
    if not options:
        raise DomainError(f"no free triangle on {slope_str(a)}-{slope_str(b)}")
    return options[0]


def _fin_path_swap(X: nx.Graph, G: FareyFins, f: Fin, z: Slope, case: str) -> WitnessMap:
    G = _grown_until(G, [z])
    mapping = _identity_but(X, {f: z})
    _, a, b = f
    return WitnessMap(
        domain=X,
        mapping=mapping,
        certificate=TypeSwap(edge=(a, f), image=(a, z)),
        case=case,
        depth=G.depth,
    )


def find_nonrigidity_witness(X: nx.Graph, G: FareyFins) -> WitnessMap:
    """
    A locally injective simplicial map on X that no automorphism extends.

    Leaves are handled first: a pendant edge at a Farey vertex, then a
    pendant fin path. Without leaves an ear of the Farey hull gives a map
    that swaps Farey and fin edges.
    """
    if X.number_of_nodes() == 0 or not nx.is_connected(X):
        raise ReducedCaseNote("disconnected")
    if X.number_of_edges() < 2:
        raise ReducedCaseNote("single-edge")
    missing = [v for v in X.nodes() if v not in G]
    if missing:
        G = _grown_until(G, missing)
    for a, b in X.edges():
        if not G.graph.has_edge(a, b):
            raise DomainError(f"{vertex_str(a)}-{vertex_str(b)} is not an edge of Sc(M(2,0))")

    leaves = sorted((v for v in X.nodes() if X.degree(v) == 1), key=vertex_key)
    for v in leaves:
        (u,) = X.neighbors(v)
        if not is_fin(u):
            maps, G = _reaim(X, G, u, v, v, None)  # type: ignore[arg-type]
            family = EmbeddingFamily(edge=(u, v), moved=(v,), maps=maps)
            return WitnessMap(domain=X, mapping=maps[0], certificate=family, case=PENDANT_EDGE, depth=G.depth)
    for v in leaves:
        (u,) = X.neighbors(v)
        (w,) = [x for x in X.neighbors(u) if x != v]
        if X.number_of_edges() == 2:
            z = _outside_apex(X, [], v, w)  # type: ignore[arg-type]
            return _fin_path_swap(X, G, u, z, BARE_FIN_PATH)  # type: ignore[arg-type]
        maps, G = _reaim(X, G, w, v, v, u)  # type: ignore[arg-type]
        family = EmbeddingFamily(edge=(u, w), moved=(v, u), maps=maps)
        return WitnessMap(domain=X, mapping=maps[0], certificate=family, case=PENDANT_FIN_PATH, depth=G.depth)

    farey = [v for v in X.nodes() if not is_fin(v)]
    hull = convex_hull_farey(farey, G)
    ear = hull.ears()[0]
    sides = sorted(hull.graph.neighbors(ear), key=slope_key)
    fins_at_ear = [fin_of(ear, t) for t in sides if fin_of(ear, t) in X]
    if hull.triangles and not fins_at_ear and all(X.has_edge(ear, t) for t in sides):
        u, w = sides
        f = fin_of(u, w)
        changes = {ear: f}
        if f in X:
            changes[f] = ear
        mapping = _identity_but(X, changes)
        if _valid(X, mapping, G):
            return WitnessMap(
                domain=X,
                mapping=mapping,
                certificate=TypeSwap(edge=(ear, u), image=(f, u)),
                case=EAR_FAREY_TO_FIN,
                depth=G.depth,
            )
    for f in fins_at_ear:
        _, a, b = f
        z = _outside_apex(X, hull.vertices | set(hull.graph.nodes()), a, b)
        witness = _fin_path_swap(X, G, f, z, EAR_FIN_TO_FAREY)
        if _valid(X, witness.mapping, _grown_until(G, [z])):
            return witness
    raise DomainError(f"no case of the analysis applies at ear {slope_str(ear)}")


def verify_witness(w: WitnessMap, G: FareyFins) -> Tuple[bool, str]:
    """Recheck a witness; returns (accepted, reason)."""
    if G.depth < w.depth:
        G = FareyFins(w.depth)
    X = w.domain
    if set(w.mapping) != set(X.nodes()):
        return False, "map is not defined on exactly the domain"
    if not _valid(X, w.mapping, G):
        return False, "map is not simplicial and locally injective"
    cert = w.certificate
    if isinstance(cert, TypeSwap):
        a, b = cert.edge
        if not X.has_edge(a, b):
            return False, "swapped edge is not in the domain"
        if (w.mapping[a], w.mapping[b]) != cert.image:
            return False, "certificate image disagrees with the map"
        if G.edge_kind(a, b) == G.edge_kind(*cert.image):
            return False, "edge type is preserved, nothing swapped"
        return True, "edge type swapped"
    if len(cert.maps) < 3:
        return False, f"only {len(cert.maps)} embeddings; automorphisms fixing a Farey edge number two"
    fixed = [v for v in X.nodes() if v not in cert.moved]
    for m in cert.maps:
        if set(m) != set(X.nodes()) or not _valid(X, m, G):
            return False, "family member is not a locally injective simplicial map"
        if any(m[v] != v for v in fixed):
            return False, "family member moves a vertex outside the re-aimed part"
    images = {tuple(m[v] for v in cert.moved) for m in cert.maps}
    if len(images) != len(cert.maps):
        return False, "family members coincide"
    pinned = any(is_fin(v) for v in fixed) or any(X.has_edge(a, b) for a in fixed for b in fixed if not is_fin(a) and not is_fin(b))
    if not pinned:
        return False, "fixed part does not pin a Farey edge"
    return True, f"{len(cert.maps)} embeddings agree off the re-aimed edge"


def random_connected_subgraph(G: FareyFins, size: int, rng: np.random.Generator) -> nx.Graph:
    """Grow a connected subgraph by random neighbour steps, then keep some chords."""
    if size < 3:
        raise DomainError("battery subgraphs need at least three vertices")
    inner = [v for v in G.farey_vertices() if G.graph.degree(v) > 4]
    start = inner[int(rng.integers(len(inner)))]
    X = nx.Graph()
    X.add_node(start)
    while X.number_of_nodes() < size:
        nodes = sorted(X.nodes(), key=vertex_key)
        v = nodes[int(rng.integers(len(nodes)))]
        options = sorted(G.graph.neighbors(v), key=vertex_key)
        u = options[int(rng.integers(len(options)))]
        X.add_edge(v, u)
    for a, b in G.graph.subgraph(list(X.nodes())).edges():
        if not X.has_edge(a, b) and rng.random() < 0.5:
            X.add_edge(a, b)
    return X


@dataclass
class BatteryRow:
    index: int
    vertices: int
    edges: int
    case: str
    accepted: bool
    reason: str


@dataclass
class BatteryResult:
    seed: int
    depth: int
    rows: List[BatteryRow] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(row.accepted for row in self.rows)

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame([vars(row) for row in self.rows])


def run_battery(count: int = 50, seed: int = DEFAULT_SEED, depth: int = DEFAULT_RANK2_DEPTH, max_size: int = 15) -> BatteryResult:
    rng = np.random.default_rng(seed)
    G = build_farey_fins(depth)
    result = BatteryResult(seed=seed, depth=depth)
    for index in range(count):
        size = int(rng.integers(3, max_size + 1))
        X = random_connected_subgraph(G, size, rng)
        witness = find_nonrigidity_witness(X, G)
        accepted, reason = verify_witness(witness, G)
        result.rows.append(
            BatteryRow(
                index=index,
                vertices=X.number_of_nodes(),
                edges=X.number_of_edges(),
                case=witness.case,
                accepted=accepted,
                reason=reason,
            )
        )
        if not accepted:
            logger.warning("battery input %d rejected: %s", index, reason)
    return result
