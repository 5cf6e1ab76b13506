import math
import sys
import unittest
from pathlib import Path

ROOT = Path(__file__).resolve().parents[1]
if str(ROOT) not in sys.path:
    sys.path.insert(0, str(ROOT))

import networkx as nx

from spherelab.autom import (
    FiniteGraph,
    automorphism_group,
    enumerate_locally_injective_maps,
    is_automorphism,
    kneser_graph,
    sym_action_matches,
)
from spherelab.errors import TooLarge
from spherelab.punctured_complex import build_complex, kneser_subgraph


class AutomorphismGroupTests(unittest.TestCase):
    def test_petersen_graph(self) -> None:
        group = automorphism_group(kneser_graph(5))
        self.assertEqual(group.order, 120)

    def test_kneser_six(self) -> None:
        self.assertEqual(automorphism_group(kneser_graph(6)).order, 720)

    def test_kneser_seven(self) -> None:
        self.assertEqual(automorphism_group(kneser_graph(7)).order, 5040)

    def test_four_holed_sphere_complex(self) -> None:
        cpx = build_complex(4)
        graph = FiniteGraph.from_networkx(cpx.graph, order=cpx.vertices())
        self.assertEqual(automorphism_group(graph).order, 6)

    def test_generators_preserve_adjacency_and_order_divides_factorial(self) -> None:
        for graph in (kneser_graph(5), FiniteGraph.from_networkx(nx.cycle_graph(6))):
            group = automorphism_group(graph)
            for gen in group.generators:
                self.assertTrue(is_automorphism(graph, gen))
            self.assertEqual(math.factorial(graph.n) % group.order, 0)

    def test_cycle_and_path(self) -> None:
        self.assertEqual(automorphism_group(FiniteGraph.from_networkx(nx.cycle_graph(6))).order, 12)
        self.assertEqual(automorphism_group(FiniteGraph.from_networkx(nx.path_graph(4))).order, 2)

    def test_colours_are_preserved(self) -> None:
        g = nx.cycle_graph(4)
        graph = FiniteGraph.from_networkx(g, color=lambda v: 1 if v == 0 else 0)
        self.assertEqual(automorphism_group(graph).order, 2)

    def test_kneser_subcomplex_matches_direct_kneser_graph(self) -> None:
        sub = kneser_subgraph(6)
        graph = FiniteGraph.from_networkx(sub, order=sorted(sub.nodes()))
        self.assertEqual(automorphism_group(graph).order, 720)

    def test_bound(self) -> None:
        big = FiniteGraph.from_networkx(nx.path_graph(70))
        with self.assertRaises(TooLarge):
            automorphism_group(big)


class SymActionTests(unittest.TestCase):
    def test_action_matches_for_five_six_seven(self) -> None:
        for s in (5, 6, 7):
            self.assertTrue(sym_action_matches(s))


class LocallyInjectiveMapTests(unittest.TestCase):
    def test_edge_into_triangle(self) -> None:
        edge = FiniteGraph.from_networkx(nx.path_graph(2))
        triangle = FiniteGraph.from_networkx(nx.complete_graph(3))
        result = enumerate_locally_injective_maps(edge, triangle)
        self.assertTrue(result.complete)
        self.assertEqual(len(result.maps), 6)

    def test_isolated_vertices(self) -> None:
        cpx = build_complex(4)
        graph = FiniteGraph.from_networkx(cpx.graph, order=cpx.vertices())
        result = enumerate_locally_injective_maps(graph, graph)
        self.assertEqual(len(result.maps), 27)

    def test_maps_contain_every_automorphism(self) -> None:
        petersen = kneser_graph(5)
        result = enumerate_locally_injective_maps(petersen, petersen)
        self.assertTrue(result.complete)
        found = {tuple(petersen.index_of(m[v]) for v in petersen.vertices) for m in result.maps}
        group = automorphism_group(petersen)
        for gen in group.generators:
            self.assertIn(gen, found)
        self.assertEqual(len(found), 120)

    def test_budget_exhaustion_is_reported(self) -> None:
        petersen = kneser_graph(5)
        result = enumerate_locally_injective_maps(petersen, petersen, budget=50)
        self.assertFalse(result.complete)
        self.assertLessEqual(len(result.maps), 120)

    def test_source_bound(self) -> None:
        big = FiniteGraph.from_networkx(nx.path_graph(13))
        with self.assertRaises(TooLarge):
            enumerate_locally_injective_maps(big, big)


if __name__ == "__main__":
    unittest.main()
