"""
Combinatorial model of the sphere complex of M(n,0), the connect sum of n
copies of S^1 x S^2.

Cutting M(n,0) along a maximal system Y of n non-separating spheres leaves a
punctured 3-sphere N = M(0,2n) whose boundary labels come in pairs
{A+, A-}, one pair per Y-sphere A. The model represents three kinds of
spheres:

- YSphere(A): a sphere of Y.
- Interior(split): a sphere inside N, given by an essential split of [2n].
- OnceCrossing(A, D+, D-, twisted): a sphere meeting A in one circle. Cut
  along A it is a disk D+ with boundary on A+ and a disk D- on A-. The
  `twisted` bit records which hemisphere of A+ is glued to which hemisphere
  of A- along the circle: straight glues the outer pieces (the pieces not
  containing the partner label) to each other.

Pants decompositions get their dual graph from a cut procedure: every
interior sphere and every crossing disk is a bipartition of the boundary
patches of N, the resulting laminar family gives the chambers of N, and the
chambers are glued back across every Y-sphere that is not in the
decomposition.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations, product
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Set, Tuple, Union

import networkx as nx
from networkx.utils import UnionFind

from .disk_calculus import Disk, disk_sphere_disjoint, disks_disjoint, make_disk
from .errors import (
    DualGraphError,
    ManifoldMismatch,
    ModelInconsistency,
    NotDisjoint,
    NotMaximal,
    NotMember,
    NotSplitSphere,
    OutOfModel,
    SphereLabError,
)
from .splits import Split, canonicalize, essential_splits, is_nested

logger = logging.getLogger(__name__)


def _label_name(k: int) -> str:
    return chr(ord("A") + k) if k < 26 else f"Y{k + 1}"


def label_order(label: str) -> Tuple[int, str]:
    return (len(label), label)


@dataclass(frozen=True)
class GluedManifold:
    """M(n,0) presented as M(0,2n) with its boundary labels paired."""

    n: int
    pairs: Tuple[Tuple[int, int], ...]
    names: Tuple[str, ...]

    def __post_init__(self) -> None:
        if self.n < 2:
            raise ManifoldMismatch(f"n must be at least 2, got {self.n}")
        flat = sorted(x for pair in self.pairs for x in pair)
        if flat != list(range(1, 2 * self.n + 1)) or len(self.pairs) != self.n:
            raise ManifoldMismatch("pairing must be a fixed-point-free involution of [2n]")
        if len(set(self.names)) != self.n:
            raise ManifoldMismatch("one distinct name per pairing orbit is required")

    @classmethod
    def standard(cls, n: int) -> "GluedManifold":
        """Pair 2k-1 with 2k and name the orbits A, B, C, ..."""
        pairs = tuple((2 * k + 1, 2 * k + 2) for k in range(n))
        return cls(n=n, pairs=pairs, names=tuple(_label_name(k) for k in range(n)))

    @property
    def s(self) -> int:
        return 2 * self.n

    def sides(self, label: str) -> Tuple[int, int]:
        """(A+, A-) with A+ the smaller boundary label."""
        try:
            pair = self.pairs[self.names.index(label)]
        except ValueError as exc:
            raise ManifoldMismatch(f"unknown Y-sphere {label!r}") from exc
        return min(pair), max(pair)

    def label_of(self, boundary: int) -> str:
        for name, pair in zip(self.names, self.pairs):
            if boundary in pair:
                return name
        raise ManifoldMismatch(f"boundary label {boundary} outside 1..{self.s}")

    def partner(self, boundary: int) -> int:
        plus, minus = self.sides(self.label_of(boundary))
        return minus if boundary == plus else plus

    def to_json(self) -> Dict[str, object]:
        return {
            "n": self.n,
            "pairing": [list(pair) for pair in self.pairs],
            "labels": {name: list(pair) for name, pair in zip(self.names, self.pairs)},
        }

    @classmethod
    def from_json(cls, payload: Dict[str, object]) -> "GluedManifold":
        labels: Dict[str, List[int]] = payload.get("labels") or {}  # type: ignore[assignment]
        if labels:
            names = tuple(sorted(labels, key=label_order))
            pairs = tuple(tuple(sorted(labels[name])) for name in names)
        else:
            pairs = tuple(tuple(sorted(p)) for p in payload["pairing"])  # type: ignore[union-attr]
            names = tuple(_label_name(k) for k in range(len(pairs)))
        return cls(n=int(payload["n"]), pairs=pairs, names=names)  # type: ignore[arg-type]


@dataclass(frozen=True)
class YSphere:
    label: str

    def __str__(self) -> str:
        return self.label


@dataclass(frozen=True)
class Interior:
    split: Split

    def __str__(self) -> str:
        return str(self.split)


@dataclass(frozen=True)
class OnceCrossing:
    label: str
    d_plus: Disk
    d_minus: Disk
    twisted: bool = False

    def __str__(self) -> str:
        bit = "x" if self.twisted else "="
        return f"{self.label}<{self.d_plus}{bit}{self.d_minus}>"


SphereClass = Union[YSphere, Interior, OnceCrossing]


def sphere_key(x: SphereClass) -> Tuple:
    """Total order: Y-spheres, then interior spheres, then crossing spheres."""
    if isinstance(x, YSphere):
        return (0, label_order(x.label))
    if isinstance(x, Interior):
        return (1, x.split.key())
    return (2, label_order(x.label), x.d_plus.key(), x.d_minus.key(), x.twisted)


def sorted_spheres(spheres: Iterable[SphereClass]) -> List[SphereClass]:
    return sorted(spheres, key=sphere_key)


def sphere_to_json(x: SphereClass) -> Dict[str, object]:
    if isinstance(x, YSphere):
        return {"tag": "Y", "label": x.label}
    if isinstance(x, Interior):
        return {"tag": "interior", "split": x.split.to_json()}
    return {
        "tag": "once-crossing",
        "label": x.label,
        "D_plus": x.d_plus.to_json(),
        "D_minus": x.d_minus.to_json(),
        "twisted": x.twisted,
    }


def sphere_from_json(payload: Dict[str, object], M: GluedManifold) -> SphereClass:
    tag = payload.get("tag")
    if tag == "Y":
        return YSphere(str(payload["label"]))
    if tag == "interior":
        split = payload["split"]
        return make_interior(split["side"], M)  # type: ignore[index]
    if tag == "once-crossing":
        return OnceCrossing(
            label=str(payload["label"]),
            d_plus=Disk.from_json(payload["D_plus"]),  # type: ignore[arg-type]
            d_minus=Disk.from_json(payload["D_minus"]),  # type: ignore[arg-type]
            twisted=bool(payload.get("twisted", False)),
        )
    raise ValueError(f"unknown sphere tag {tag!r}")


def make_interior(side: Iterable[int], M: GluedManifold) -> SphereClass:
    """Sphere inside N; a peripheral split is the Y-sphere of that boundary."""
    u = canonicalize(side, M.s)
    for piece in u.pieces():
        if len(piece) == 1:
            (boundary,) = piece
            return YSphere(M.label_of(boundary))
    return Interior(u)


def make_once_crossing(
    label: str,
    plus_piece: Iterable[int],
    minus_piece: Iterable[int],
    M: GluedManifold,
    twisted: bool = False,
) -> OnceCrossing:
    plus, minus = M.sides(label)
    x = OnceCrossing(
        label=label,
        d_plus=make_disk(plus, plus_piece, M.s),
        d_minus=make_disk(minus, minus_piece, M.s),
        twisted=twisted,
    )
    validate_sphere(x, M)
    return x


def outer_pieces(x: OnceCrossing, M: GluedManifold) -> Tuple[FrozenSet[int], FrozenSet[int]]:
    """Pieces of D+ and D- that avoid the partner label."""
    plus, minus = M.sides(x.label)
    return x.d_plus.piece_avoiding(minus), x.d_minus.piece_avoiding(plus)


def validate_sphere(x: SphereClass, M: GluedManifold) -> None:
    if isinstance(x, YSphere):
        M.sides(x.label)
        return
    if isinstance(x, Interior):
        if x.split.s != M.s or not x.split.essential:
            raise ManifoldMismatch(f"{x} is not an interior sphere of N = M(0,{M.s})")
        return
    plus, minus = M.sides(x.label)
    if x.d_plus.s != M.s or x.d_minus.s != M.s:
        raise ManifoldMismatch(f"{x} has disks over the wrong ground set")
    if x.d_plus.on != plus or x.d_minus.on != minus:
        raise ManifoldMismatch(f"{x} must have its disks on {plus} and {minus}")
    out_plus, out_minus = outer_pieces(x, M)
    if out_plus & out_minus:
        raise ManifoldMismatch(f"{x}: outer pieces overlap, not an embedded sphere")


def _glued(x: OnceCrossing, piece: FrozenSet[int], M: GluedManifold) -> FrozenSet[int]:
    """The piece of D- whose hemisphere is glued to the hemisphere of `piece` of D+."""
    out_plus, out_minus = outer_pieces(x, M)
    in_minus = x.d_minus.rest - out_minus
    is_outer = piece == out_plus
    if is_outer != x.twisted:
        return out_minus
    return in_minus


def _unglued(x: OnceCrossing, piece: FrozenSet[int], M: GluedManifold) -> FrozenSet[int]:
    for candidate in x.d_plus.pieces():
        if _glued(x, candidate, M) == piece:
            return candidate
    raise DualGraphError(f"{sorted(piece)} is not a piece of {x.d_minus}")


def _facing(d1: Disk, d2: Disk) -> FrozenSet[int]:
    """The piece of d1 on whose side the distinct, disjoint disk d2 sits."""
    for piece in d1.pieces():
        if any(q <= piece for q in d2.pieces()):
            return piece
    raise DualGraphError(f"{d1} and {d2} are not nested")


def _away(d1: Disk, d2: Disk) -> FrozenSet[int]:
    facing = _facing(d1, d2)
    return d1.rest - facing


def _away_options(d1: Disk, d2: Disk) -> List[Tuple[FrozenSet[int], FrozenSet[int]]]:
    if d1 == d2:
        p, q = d1.pieces()
        return [(p, q), (q, p)]
    return [(_away(d1, d2), _away(d2, d1))]


def _gluing_consistent(x: OnceCrossing, y: OnceCrossing, M: GluedManifold) -> bool:
    """Circles of x and y on their common Y-sphere can be separated compatibly."""
    for away_x, away_y in _away_options(x.d_plus, y.d_plus):
        for away_x_minus, away_y_minus in _away_options(x.d_minus, y.d_minus):
            if _glued(x, away_x, M) == away_x_minus and _glued(y, away_y, M) == away_y_minus:
                return True
    return False


@lru_cache(maxsize=65536)
def _validated(x: SphereClass, M: GluedManifold) -> bool:
    validate_sphere(x, M)
    return True


def disjoint(x: SphereClass, y: SphereClass, M: GluedManifold) -> bool:
    """Edge relation of the model; equal classes are not an edge."""
    _validated(x, M)
    _validated(y, M)
    if x == y:
        return False
    if isinstance(y, YSphere) and not isinstance(x, YSphere):
        x, y = y, x
    elif isinstance(x, OnceCrossing) and isinstance(y, Interior):
        x, y = y, x
    if isinstance(x, YSphere):
        if isinstance(y, OnceCrossing):
            return x.label != y.label
        return True
    if isinstance(x, Interior):
        if isinstance(y, Interior):
            return is_nested(x.split, y.split)
        return disk_sphere_disjoint(y.d_plus, x.split) and disk_sphere_disjoint(y.d_minus, x.split)
    assert isinstance(x, OnceCrossing) and isinstance(y, OnceCrossing)
    if not all(disks_disjoint(a, b) for a in (x.d_plus, x.d_minus) for b in (y.d_plus, y.d_minus)):
        return False
    if x.label != y.label:
        return True
    return _gluing_consistent(x, y, M)


@lru_cache(maxsize=8)
def _model_vertices(M: GluedManifold) -> Tuple[SphereClass, ...]:
    found: List[SphereClass] = [YSphere(name) for name in M.names]
    found.extend(Interior(u) for u in essential_splits(M.s))
    for name in M.names:
        plus, minus = M.sides(name)
        rest = [x for x in range(1, M.s + 1) if x not in (plus, minus)]
        for assignment in product((0, 1, 2), repeat=len(rest)):
            out_plus = {x for x, side in zip(rest, assignment) if side == 1}
            out_minus = {x for x, side in zip(rest, assignment) if side == 2}
            if not out_plus or not out_minus:
                continue
            d_plus = make_disk(plus, out_plus, M.s)
            d_minus = make_disk(minus, out_minus, M.s)
            for twisted in (False, True):
                found.append(OnceCrossing(name, d_plus, d_minus, twisted))
    return tuple(sorted(found, key=sphere_key))


def model_vertices(M: GluedManifold) -> List[SphereClass]:
    """Every in-model sphere class of M in canonical order."""
    return list(_model_vertices(M))


@dataclass(frozen=True)
class GluedPants:
    """Pants decomposition of M(n,0) with its dual multigraph."""

    n: int
    spheres: FrozenSet[SphereClass]
    dual_graph: nx.MultiGraph = field(compare=False, hash=False, repr=False)
    ends: Dict[SphereClass, Tuple[int, int]] = field(compare=False, hash=False, repr=False)

    def key(self) -> Tuple:
        return tuple(sorted(sphere_key(x) for x in self.spheres))

    def __contains__(self, x: object) -> bool:
        return x in self.spheres

    def _require(self, x: SphereClass) -> None:
        if x not in self.spheres:
            raise NotMember(f"{x} is not in the pants decomposition")

    def self_adjacent(self, x: SphereClass) -> bool:
        self._require(x)
        a, b = self.ends[x]
        return a == b

    def adjacent(self, x: SphereClass, y: SphereClass) -> bool:
        self._require(x)
        self._require(y)
        if x == y:
            return self.self_adjacent(x)
        return bool(set(self.ends[x]) & set(self.ends[y]))

    def neighbours(self, x: SphereClass) -> List[SphereClass]:
        self._require(x)
        return sorted_spheres(y for y in self.spheres if y != x and self.adjacent(x, y))

    def loops(self) -> List[SphereClass]:
        return sorted_spheres(x for x in self.spheres if self.self_adjacent(x))

    def shape(self) -> str:
        """Name of the dual graph for n = 2 (theta or dumbbell)."""
        loops = len(self.loops())
        if self.n == 2:
            return {0: "theta", 2: "dumbbell"}.get(loops, "other")
        return f"{loops}-loop"

    def to_json(self) -> Dict[str, object]:
        ordered = sorted_spheres(self.spheres)
        return {
            "n": self.n,
            "spheres": [sphere_to_json(x) for x in ordered],
            "dual_graph": [list(self.ends[x]) for x in ordered],
        }


Element = Tuple[int, int]


def _patches(label: str, crossing: List[OnceCrossing], M: GluedManifold) -> List[Tuple[FrozenSet[int], ...]]:
    """
    Regions of the Y-sphere cut by the circles of the crossing spheres.

    A region is recorded by the D+ piece on whose side it lies, per circle.
    """
    k = len(crossing)
    side: Dict[Tuple[int, int], FrozenSet[int]] = {}
    for j, m in combinations(range(k), 2):
        for a, b in ((j, m), (m, j)):
            x, y = crossing[a], crossing[b]
            plus_side = None if x.d_plus == y.d_plus else _facing(x.d_plus, y.d_plus)
            minus_side = None if x.d_minus == y.d_minus else _facing(x.d_minus, y.d_minus)
            if plus_side is None and minus_side is None:
                raise DualGraphError(f"{x} and {y} are parallel on both sides of {label}")
            if plus_side is None:
                plus_side = _unglued(x, minus_side, M)  # type: ignore[arg-type]
            elif minus_side is not None and _glued(x, plus_side, M) != minus_side:
                raise DualGraphError(f"{x} and {y} cross on {label}")
            side[(a, b)] = plus_side
    vectors: Set[Tuple[FrozenSet[int], ...]] = set()
    for j in range(k):
        for piece in crossing[j].d_plus.pieces():
            vectors.add(tuple(piece if m == j else side[(m, j)] for m in range(k)))
    if len(vectors) != k + 1:
        raise DualGraphError(f"{label}: {len(vectors)} regions for {k} circles")
    return sorted(vectors, key=lambda v: tuple(tuple(sorted(p)) for p in v))


def _dual_graph(spheres: Sequence[SphereClass], M: GluedManifold) -> Tuple[nx.MultiGraph, Dict[SphereClass, Tuple[int, int]]]:
    crossing: Dict[str, List[OnceCrossing]] = {}
    for x in spheres:
        if isinstance(x, OnceCrossing):
            crossing.setdefault(x.label, []).append(x)
    for group in crossing.values():
        group.sort(key=sphere_key)
    in_pants_y = {x.label for x in spheres if isinstance(x, YSphere)}

    patches = {label: _patches(label, group, M) for label, group in crossing.items()}
    elements: List[Element] = []
    for boundary in range(1, M.s + 1):
        label = M.label_of(boundary)
        if label in patches:
            elements.extend((boundary, idx) for idx in range(len(patches[label])))
        else:
            elements.append((boundary, -1))
    elements.sort()
    root = elements[0]

    def cut_from_split(u: Split) -> FrozenSet[Element]:
        piece = u.piece_containing(root[0])
        return frozenset(e for e in elements if e[0] not in piece)

    def cut_from_disk(x: OnceCrossing, plus_side: bool) -> FrozenSet[Element]:
        d = x.d_plus if plus_side else x.d_minus
        j = crossing[x.label].index(x)
        vectors = patches[x.label]

        def piece_of(e: Element) -> FrozenSet[int]:
            if e[0] != d.on:
                return d.piece_containing(e[0])
            piece = vectors[e[1]][j]
            return piece if plus_side else _glued(x, piece, M)

        root_piece = piece_of(root)
        return frozenset(e for e in elements if piece_of(e) != root_piece)

    cuts: Dict[Tuple[SphereClass, str], FrozenSet[Element]] = {}
    for x in spheres:
        if isinstance(x, Interior):
            cuts[(x, "")] = cut_from_split(x.split)
        elif isinstance(x, OnceCrossing):
            cuts[(x, "+")] = cut_from_disk(x, True)
            cuts[(x, "-")] = cut_from_disk(x, False)
    clusters = list(cuts.values())
    if len(set(clusters)) != len(clusters):
        raise DualGraphError("two cuts bound the same region")

    def parent_of(cluster: FrozenSet[Element]) -> object:
        bigger = [c for c in clusters if cluster < c]
        if not bigger:
            return "root"
        return min(bigger, key=len)

    def chamber_of(e: Element) -> object:
        holding = [c for c in clusters if e in c]
        return min(holding, key=len) if holding else "root"

    chambers = UnionFind(["root", *clusters])
    for label, vectors in patches.items():
        plus, minus = M.sides(label)
        for idx in range(len(vectors)):
            chambers.union(chamber_of((plus, idx)), chamber_of((minus, idx)))
    for label in M.names:
        if label in patches or label in in_pants_y:
            continue
        plus, minus = M.sides(label)
        chambers.union(chamber_of((plus, -1)), chamber_of((minus, -1)))

    ids: Dict[object, int] = {}

    def vertex(chamber: object) -> int:
        root_chamber = chambers[chamber]
        return ids.setdefault(root_chamber, len(ids))

    ends: Dict[SphereClass, Tuple[int, int]] = {}
    for x in sorted_spheres(spheres):
        if isinstance(x, YSphere):
            plus, minus = M.sides(x.label)
            pair = (vertex(chamber_of((plus, -1))), vertex(chamber_of((minus, -1))))
        elif isinstance(x, Interior):
            c = cuts[(x, "")]
            pair = (vertex(c), vertex(parent_of(c)))
        else:
            c_plus, c_minus = cuts[(x, "+")], cuts[(x, "-")]
            pair = (vertex(c_plus), vertex(parent_of(c_plus)))
            other = (vertex(c_minus), vertex(parent_of(c_minus)))
            if sorted(pair) != sorted(other):
                raise DualGraphError(f"{x}: its two disks bound different chambers")
        ends[x] = (min(pair), max(pair))
    # chambers that no sphere touches still count as vertices
    for c in ["root", *clusters]:
        vertex(c)

    graph = nx.MultiGraph()
    graph.add_nodes_from(range(len(ids)))
    for x, (a, b) in ends.items():
        graph.add_edge(a, b, key=sphere_key(x), sphere=x)
    return graph, ends


def is_pants(spheres: Iterable[SphereClass], M: GluedManifold) -> GluedPants:
    """Validate a candidate pants decomposition and build its dual graph."""
    members = sorted_spheres(set(spheres))
    for x in members:
        validate_sphere(x, M)
    for x, y in combinations(members, 2):
        if not disjoint(x, y, M):
            raise NotDisjoint((x, y))
    expected = 3 * M.n - 3
    if len(members) != expected:
        raise NotMaximal(f"{len(members)} spheres, a pants decomposition of M({M.n},0) has {expected}")
    graph, ends = _dual_graph(members, M)
    n_vertices = graph.number_of_nodes()
    if n_vertices != 2 * M.n - 2:
        raise DualGraphError(f"dual graph has {n_vertices} vertices, expected {2 * M.n - 2}")
    if not nx.is_connected(graph):
        raise DualGraphError("dual graph is disconnected")
    if any(d != 3 for _, d in graph.degree()):
        raise DualGraphError("dual graph is not trivalent")
    betti = graph.number_of_edges() - n_vertices + 1
    if betti != M.n:
        raise DualGraphError(f"dual graph has first Betti number {betti}, expected {M.n}")
    return GluedPants(n=M.n, spheres=frozenset(members), dual_graph=graph, ends=ends)


def adjacency(P: GluedPants, a: SphereClass, b: SphereClass) -> bool:
    return P.adjacent(a, b)


def self_adjacent(P: GluedPants, a: SphereClass) -> bool:
    return P.self_adjacent(a)


def split_spheres_for(P: GluedPants, a: SphereClass, M: GluedManifold) -> FrozenSet[SphereClass]:
    """
    Spheres other than a that are disjoint from every sphere of P minus a.

    There are exactly two when a is not self-adjacent; fewer means the
    required sphere is outside the model.
    """
    if a not in P:
        raise NotMember(f"{a} is not in the pants decomposition")
    rest = [x for x in P.spheres if x != a]
    found = frozenset(
        c for c in _model_vertices(M) if c != a and c not in P and all(disjoint(c, x, M) for x in rest)
    )
    if P.self_adjacent(a):
        if found:
            raise ModelInconsistency(f"self-adjacent {a} has split spheres {sorted_spheres(found)}")
        return found
    if len(found) < 2:
        raise OutOfModel(f"split spheres of {a} lie outside the model ({len(found)} found)")
    if len(found) > 2:
        raise ModelInconsistency(f"{a} has {len(found)} split spheres in the model")
    return found


def exchange(P: GluedPants, a: SphereClass, b: SphereClass, M: GluedManifold) -> GluedPants:
    """Replace a by its split sphere b."""
    if b not in split_spheres_for(P, a, M):
        raise NotSplitSphere(f"{b} is not a split sphere for {a}")
    return is_pants((P.spheres - {a}) | {b}, M)


def pants_from_json(payload: Dict[str, object], M: GluedManifold) -> GluedPants:
    return is_pants((sphere_from_json(x, M) for x in payload["spheres"]), M)  # type: ignore[union-attr]


def disjointness_graph(vertices: Iterable[SphereClass], M: GluedManifold) -> nx.Graph:
    ordered = sorted_spheres(vertices)
    graph = nx.Graph()
    graph.add_nodes_from(ordered)
    for x, y in combinations(ordered, 2):
        if disjoint(x, y, M):
            graph.add_edge(x, y)
    return graph


def enumerate_model_pants(M: GluedManifold, vertices: Optional[Iterable[SphereClass]] = None) -> List[GluedPants]:
    """Every pants decomposition made of model spheres, in canonical order."""
    graph = disjointness_graph(vertices if vertices is not None else _model_vertices(M), M)
    target = 3 * M.n - 3
    found: List[GluedPants] = []
    short = 0
    for clique in nx.find_cliques(graph):
        if len(clique) != target:
            short += 1
            continue
        try:
            found.append(is_pants(clique, M))
        except SphereLabError as exc:
            raise ModelInconsistency(f"maximal clique failed the cut procedure: {exc}") from exc
    if short:
        logger.info("n=%d: %d maximal cliques below pants size (completion out of model)", M.n, short)
    found.sort(key=GluedPants.key)
    return found
