"""
Automorphisms and locally injective maps of small finite graphs.

The automorphism search is individualization/refinement: colours are refined
by neighbour-colour multisets on the source and target side together, a
non-singleton cell is individualized, and discrete colourings are checked
against the adjacency matrix. The group order comes from a stabilizer chain
(product of basic orbit lengths).
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from itertools import permutations
from typing import Callable, Dict, Hashable, Iterable, List, Optional, Sequence, Set, Tuple

import networkx as nx
import numpy as np

from .config import DEFAULT_AUT_VERTEX_BOUND, DEFAULT_MAP_BUDGET, DEFAULT_MAP_SOURCE_BOUND
from .errors import DomainError, TooLarge

logger = logging.getLogger(__name__)

Perm = Tuple[int, ...]


@dataclass
class FiniteGraph:
    """Simple graph on indexed vertices with optional integer colours."""

    vertices: List[Hashable]
    edges: Set[Tuple[int, int]]
    colors: Optional[List[int]] = None
    _adj: np.ndarray = field(init=False, repr=False)
    _nbrs: List[List[int]] = field(init=False, repr=False)

    def __post_init__(self) -> None:
        n = len(self.vertices)
        self._adj = np.zeros((n, n), dtype=bool)
        self._nbrs = [[] for _ in range(n)]
        normalized: Set[Tuple[int, int]] = set()
        for a, b in self.edges:
            if a == b:
                raise DomainError("loops are not allowed in a FiniteGraph")
            low, high = sorted((a, b))
            normalized.add((low, high))
            self._adj[low, high] = self._adj[high, low] = True
        self.edges = normalized
        for i in range(n):
            self._nbrs[i] = [int(j) for j in np.flatnonzero(self._adj[i])]
        if self.colors is not None and len(self.colors) != n:
            raise DomainError("one colour per vertex is required")

    @classmethod
    def from_networkx(
        cls,
        graph: nx.Graph,
        order: Optional[Sequence[Hashable]] = None,
        color: Optional[Callable[[Hashable], int]] = None,
    ) -> "FiniteGraph":
        vertices = list(order) if order is not None else list(graph.nodes())
        index = {v: i for i, v in enumerate(vertices)}
        edges = {(index[a], index[b]) for a, b in graph.edges()}
        colors = [int(color(v)) for v in vertices] if color is not None else None
        return cls(vertices=vertices, edges=edges, colors=colors)

    @property
    def n(self) -> int:
        return len(self.vertices)

    @property
    def adjacency(self) -> np.ndarray:
        return self._adj

    def neighbors(self, i: int) -> List[int]:
        return self._nbrs[i]

    def has_edge(self, a: int, b: int) -> bool:
        return bool(self._adj[a, b])

    def index_of(self, vertex: Hashable) -> int:
        return self.vertices.index(vertex)


def kneser_graph(s: int) -> FiniteGraph:
    """K(s,2) with vertices the sorted 2-subsets of [s]."""
    pairs = [(i, j) for i in range(1, s + 1) for j in range(i + 1, s + 1)]
    edges = {
        (a, b)
        for a in range(len(pairs))
        for b in range(a + 1, len(pairs))
        if not set(pairs[a]) & set(pairs[b])
    }
    return FiniteGraph(vertices=list(pairs), edges=edges)


@dataclass
class AutomorphismGroup:
    generators: List[Perm]
    order: int
    base: List[int]
    orbit_lengths: List[int]


def is_automorphism(graph: FiniteGraph, perm: Sequence[int]) -> bool:
    p = np.asarray(perm, dtype=np.intp)
    if sorted(p.tolist()) != list(range(graph.n)):
        return False
    if graph.colors is not None and any(graph.colors[i] != graph.colors[p[i]] for i in range(graph.n)):
        return False
    return bool(np.array_equal(graph.adjacency[np.ix_(p, p)], graph.adjacency))


def _refine(graph: FiniteGraph, left: List[int], right: List[int]) -> Optional[Tuple[List[int], List[int]]]:
    """Jointly refine two colourings of the same graph; None when they diverge."""
    while True:
        sig_l = [(left[v], tuple(sorted(left[u] for u in graph.neighbors(v)))) for v in range(graph.n)]
        sig_r = [(right[v], tuple(sorted(right[u] for u in graph.neighbors(v)))) for v in range(graph.n)]
        if sorted(sig_l) != sorted(sig_r):
            return None
        relabel = {sig: k for k, sig in enumerate(sorted(set(sig_l)))}
        new_l = [relabel[sig] for sig in sig_l]
        new_r = [relabel[sig] for sig in sig_r]
        if len(relabel) == len(set(left)):
            return new_l, new_r
        left, right = new_l, new_r


def _individualize(colors: List[int], vertex: int) -> List[int]:
    out = list(colors)
    out[vertex] = max(colors) + 1
    return out


def _search(graph: FiniteGraph, left: List[int], right: List[int]) -> Optional[Perm]:
    refined = _refine(graph, left, right)
    if refined is None:
        return None
    left, right = refined
    cells: Dict[int, List[int]] = {}
    for v, c in enumerate(left):
        cells.setdefault(c, []).append(v)
    target_cells: Dict[int, List[int]] = {}
    for v, c in enumerate(right):
        target_cells.setdefault(c, []).append(v)
    open_cells = [c for c in sorted(cells) if len(cells[c]) > 1]
    if not open_cells:
        perm = [0] * graph.n
        for c, (v,) in cells.items():
            perm[v] = target_cells[c][0]
        return tuple(perm) if is_automorphism(graph, perm) else None
    cell = open_cells[0]
    x = cells[cell][0]
    for y in target_cells[cell]:
        found = _search(graph, _individualize(left, x), _individualize(right, y))
        if found is not None:
            return found
    return None


def _orbit(point: int, gens: List[Perm]) -> Set[int]:
    orbit = {point}
    frontier = [point]
    while frontier:
        current = frontier.pop()
        for g in gens:
            image = g[current]
            if image not in orbit:
                orbit.add(image)
                frontier.append(image)
    return orbit


def automorphism_group(graph: FiniteGraph, bound: int = DEFAULT_AUT_VERTEX_BOUND) -> AutomorphismGroup:
    """Generators and exact order of the (colour-preserving) automorphism group."""
    if graph.n > bound:
        raise TooLarge(f"{graph.n} vertices exceeds the automorphism bound {bound}")
    base_colors = list(graph.colors) if graph.colors is not None else [0] * graph.n
    if graph.n == 0:
        return AutomorphismGroup(generators=[], order=1, base=[], orbit_lengths=[])

    generators: List[Perm] = []
    base: List[int] = []
    orbit_lengths: List[int] = []
    fixed = base_colors
    while True:
        refined = _refine(graph, fixed, fixed)
        assert refined is not None
        colors = refined[0]
        counts: Dict[int, int] = {}
        for c in colors:
            counts[c] = counts.get(c, 0) + 1
        candidates = [v for v in range(graph.n) if counts[colors[v]] > 1]
        if not candidates:
            break
        point = candidates[0]
        level_gens: List[Perm] = []
        orbit = {point}
        for target in range(graph.n):
            if target in orbit or colors[target] != colors[point]:
                continue
            perm = _search(graph, _individualize(fixed, point), _individualize(fixed, target))
            if perm is None:
                continue
            level_gens.append(perm)
            orbit = _orbit(point, level_gens)
        logger.debug("base point %d: orbit length %d", point, len(orbit))
        generators.extend(level_gens)
        base.append(point)
        orbit_lengths.append(len(orbit))
        fixed = _individualize(fixed, point)

    order = 1
    for length in orbit_lengths:
        order *= length
    return AutomorphismGroup(generators=generators, order=order, base=base, orbit_lengths=orbit_lengths)


def sym_action_matches(s: int) -> bool:
    """Sym(s) acting on 2-subsets gives exactly Aut(K(s,2))."""
    if s < 5:
        raise DomainError("the Sym(s) comparison needs s >= 5")
    kneser = kneser_graph(s)
    index = {pair: i for i, pair in enumerate(kneser.vertices)}
    group = automorphism_group(kneser)
    images: Set[Perm] = set()
    for sigma in permutations(range(1, s + 1)):
        perm = tuple(index[tuple(sorted((sigma[a - 1], sigma[b - 1])))] for a, b in kneser.vertices)
        if not is_automorphism(kneser, perm):
            return False
        images.add(perm)
    logger.info("s=%d: |Aut(K(s,2))| = %d, Sym(s) image = %d", s, group.order, len(images))
    return len(images) == group.order


@dataclass
class MapSearchResult:
    maps: List[Dict[Hashable, Hashable]]
    complete: bool
    nodes: int


def is_locally_injective(
    source: nx.Graph,
    mapping: Dict[Hashable, Hashable],
    target_adjacent: Callable[[Hashable, Hashable], bool],
) -> bool:
    """Edges go to edges and every closed star is mapped injectively."""
    for a, b in source.edges():
        if not target_adjacent(mapping[a], mapping[b]):
            return False
    for v in source.nodes():
        star = [v, *source.neighbors(v)]
        images = [mapping[x] for x in star]
        if len(set(images)) != len(images):
            return False
    return True


def _within_two(graph: nx.Graph, v: Hashable) -> Set[Hashable]:
    near = set(graph.neighbors(v))
    for u in list(near):
        near.update(graph.neighbors(u))
    near.discard(v)
    return near


def enumerate_locally_injective_maps(
    source: FiniteGraph,
    target: FiniteGraph,
    budget: int = DEFAULT_MAP_BUDGET,
    source_bound: int = DEFAULT_MAP_SOURCE_BOUND,
) -> MapSearchResult:
    """Backtracking over simplicial, star-injective maps in vertex order."""
    if source.n > source_bound:
        raise TooLarge(f"source has {source.n} vertices, bound is {source_bound}")
    g = nx.Graph()
    g.add_nodes_from(range(source.n))
    g.add_edges_from(source.edges)
    order = list(nx.dfs_preorder_nodes(g)) if source.n else []
    seen: Set[int] = set(order)
    order += [v for v in range(source.n) if v not in seen]
    near = {v: _within_two(g, v) for v in range(source.n)}

    assignment: Dict[int, int] = {}
    maps: List[Dict[Hashable, Hashable]] = []
    nodes = 0
    complete = True

    def extend(depth: int) -> bool:
        nonlocal nodes, complete
        if depth == len(order):
            maps.append({source.vertices[v]: target.vertices[t] for v, t in sorted(assignment.items())})
            return True
        v = order[depth]
        for t in range(target.n):
            nodes += 1
            if nodes > budget:
                complete = False
                return False
            if any(u in assignment and not target.has_edge(assignment[u], t) for u in source.neighbors(v)):
                continue
            if any(assignment.get(u) == t for u in near[v]):
                continue
            assignment[v] = t
            keep_going = extend(depth + 1)
            del assignment[v]
            if not keep_going:
                return False
        return True

    extend(0)
    if not complete:
        logger.warning("map search stopped after %d nodes with %d maps", budget, len(maps))
    return MapSearchResult(maps=maps, complete=complete, nodes=nodes)
