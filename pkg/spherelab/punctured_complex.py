"""
The sphere complex of a punctured 3-sphere M(0,s) as a finite flag complex.

Vertices are the essential splits of [s]; two vertices span an edge when the
splits are nested. Only the 1-skeleton is stored, higher faces are the
cliques of that graph. Pants decompositions are maximal cliques and carry
their dual tree.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from itertools import combinations
from typing import Dict, FrozenSet, Iterator, List, Optional, Set, Tuple

import networkx as nx

from .errors import (
    BelowWhitneyRegime,
    InvalidSplit,
    NoEssentialSpheres,
    SizeTwoInput,
)
from .splits import Split, canonicalize, essential_splits, is_nested, size

logger = logging.getLogger(__name__)

TreeNode = Tuple


class PuncturedComplex:
    """
    Sc(M(0,s)) stored as its 1-skeleton.

    Vertices are kept in canonical order and addressed by index; edges are
    held once per unordered pair in a networkx Graph.
    """

    def __init__(self, s: int) -> None:
        if s < 4:
            raise NoEssentialSpheres(f"M(0,{s}) has no essential spheres (need s >= 4)")
        self.s = s
        self._vertices: List[Split] = essential_splits(s)
        self._index: Dict[Split, int] = {u: i for i, u in enumerate(self._vertices)}
        self.graph = nx.Graph()
        self.graph.add_nodes_from(self._vertices)
        for u, v in combinations(self._vertices, 2):
            if is_nested(u, v):
                self.graph.add_edge(u, v)

    def vertices(self) -> List[Split]:
        return list(self._vertices)

    def index_of(self, u: Split) -> int:
        return self._index[u]

    def __contains__(self, u: object) -> bool:
        return u in self._index

    def adjacent(self, u: Split, v: Split) -> bool:
        return self.graph.has_edge(u, v)

    def neighbors(self, u: Split) -> List[Split]:
        return sorted(self.graph.neighbors(u), key=Split.key)

    def iter_edges(self) -> Iterator[Tuple[Split, Split]]:
        """Yield each edge once as (lower, higher) in canonical vertex order."""
        for u, v in self.graph.edges():
            if self._index[u] < self._index[v]:
                yield u, v
            else:
                yield v, u

    def edge_count(self) -> int:
        return self.graph.number_of_edges()

    def faces(self, max_size: Optional[int] = None) -> Iterator[FrozenSet[Split]]:
        """Faces of the flag complex read off the 1-skeleton."""
        for clique in nx.enumerate_all_cliques(self.graph):
            if max_size is not None and len(clique) > max_size:
                break
            yield frozenset(clique)

    def to_json(self) -> Dict[str, object]:
        return {
            "s": self.s,
            "vertices": [u.to_json() for u in self._vertices],
            "edges": [[self._index[u], self._index[v]] for u, v in self.iter_edges()],
        }


def build_complex(s: int) -> PuncturedComplex:
    cpx = PuncturedComplex(s)
    logger.info(
        "built Sc(M(0,%d)): %d vertices, %d edges",
        s,
        len(cpx.vertices()),
        cpx.edge_count(),
    )
    return cpx


@dataclass(frozen=True)
class TreePants:
    """A pants decomposition of M(0,s) with its dual tree."""

    s: int
    splits: FrozenSet[Split]
    dual_tree: nx.Graph = field(compare=False, hash=False, repr=False)

    def key(self) -> Tuple:
        return tuple(sorted(u.key() for u in self.splits))

    def splits_from_tree(self) -> Set[Split]:
        """Recover the splits from the internal edges of the dual tree."""
        found: Set[Split] = set()
        tree = self.dual_tree
        for a, b in tree.edges():
            if a[0] == "leaf" or b[0] == "leaf":
                continue
            cut = tree.copy()
            cut.remove_edge(a, b)
            component = nx.node_connected_component(cut, ("leaf", 1))
            side = {node[1] for node in component if node[0] == "leaf"}
            found.add(canonicalize(side, self.s))
        return found


def dual_tree(splits: FrozenSet[Split], s: int) -> nx.Graph:
    """
    Build the dual tree of a pairwise-nested split family.

    Each split contributes its side avoiding label 1 as a cluster. Together
    with singletons and the root cluster [s] minus {1} the clusters form a
    laminar family; every cluster hangs from its least strict superset and
    leaf 1 hangs from the root.
    """
    root = frozenset(range(2, s + 1))
    clusters: Dict[FrozenSet[int], TreeNode] = {root: ("root",)}
    for u in sorted(splits, key=Split.key):
        clusters[u.other] = ("cut", tuple(sorted(u.other)))
    for label in range(2, s + 1):
        clusters.setdefault(frozenset({label}), ("leaf", label))

    tree = nx.Graph()
    tree.add_edge(("leaf", 1), ("root",))
    ordered = sorted(clusters, key=len)
    for cluster in ordered:
        if cluster == root:
            continue
        parent = min((c for c in ordered if cluster < c), key=len)
        tree.add_edge(clusters[cluster], clusters[parent])
    return tree


def _tree_pants(splits: FrozenSet[Split], s: int) -> TreePants:
    return TreePants(s=s, splits=splits, dual_tree=dual_tree(splits, s))


def enumerate_pants(s: int, cpx: Optional[PuncturedComplex] = None) -> List[TreePants]:
    """All pants decompositions of M(0,s) as maximal cliques of size s-3."""
    cpx = cpx if cpx is not None else build_complex(s)
    found: List[TreePants] = []
    for clique in nx.find_cliques(cpx.graph):
        if len(clique) != s - 3:
            logger.warning("maximal clique of unexpected size %d in s=%d", len(clique), s)
            continue
        found.append(_tree_pants(frozenset(clique), s))
    found.sort(key=TreePants.key)
    logger.info("s=%d: %d pants decompositions", s, len(found))
    return found


def is_binary_tree(pants: TreePants) -> bool:
    tree = pants.dual_tree
    if not nx.is_tree(tree):
        return False
    leaves = [node for node in tree if node[0] == "leaf"]
    if len(leaves) != pants.s or any(tree.degree(node) != 1 for node in leaves):
        return False
    return all(tree.degree(node) == 3 for node in tree if node[0] != "leaf")


def verify_flag_property(cpx: PuncturedComplex, pants: Optional[List[TreePants]] = None) -> bool:
    """
    Compare cliques of the 1-skeleton with sets of simultaneously realizable
    splits (subsets of some pants decomposition).
    """
    pants = pants if pants is not None else enumerate_pants(cpx.s, cpx)
    realizable: Set[FrozenSet[Split]] = set()
    for p in pants:
        members = sorted(p.splits, key=Split.key)
        for k in range(1, len(members) + 1):
            realizable.update(frozenset(c) for c in combinations(members, k))
    from_graph = set(cpx.faces())
    return from_graph == realizable


def kneser_subgraph(s: int, cpx: Optional[PuncturedComplex] = None) -> nx.Graph:
    """
    Induced subgraph on size-2 splits, relabelled by their two-element piece.

    The result is the Kneser graph K(s,2).
    """
    if s < 5:
        raise BelowWhitneyRegime(f"size-2 subcomplex is only Kneser for s >= 5, got {s}")
    cpx = cpx if cpx is not None else build_complex(s)
    small = [u for u in cpx.vertices() if size(u) == 2]
    relabel = {u: tuple(sorted(min(u.pieces(), key=len))) for u in small}
    sub = cpx.graph.subgraph(small)
    return nx.relabel_nodes(sub, relabel, copy=True)


def size2_fingerprint(u: Split, cpx: PuncturedComplex) -> FrozenSet[Split]:
    """Size-2 vertices nested with u (u itself counts when it has size 2)."""
    if u not in cpx:
        raise InvalidSplit(f"{u} is not a vertex of Sc(M(0,{cpx.s}))")
    return frozenset(v for v in cpx.vertices() if size(v) == 2 and is_nested(u, v))


def reconstruct_from_size2(u: Split, cpx: PuncturedComplex) -> FrozenSet[Split]:
    """The size-2 spheres disjoint from a sphere of size at least 3."""
    if cpx.s < 5:
        raise BelowWhitneyRegime(f"reconstruction needs s >= 5, got {cpx.s}")
    if size(u) < 3:
        raise SizeTwoInput(f"{u} has size 2; only size >= 3 spheres are reconstructed")
    return size2_fingerprint(u, cpx)


def verify_unique(u: Split, cpx: PuncturedComplex) -> bool:
    """True when no other vertex shares u's size-2 fingerprint."""
    target = size2_fingerprint(u, cpx)
    return all(size2_fingerprint(v, cpx) != target for v in cpx.vertices() if v != u)
