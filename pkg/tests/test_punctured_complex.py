import sys
import unittest
from pathlib import Path

ROOT = Path(__file__).resolve().parents[1]
if str(ROOT) not in sys.path:
    sys.path.insert(0, str(ROOT))

from spherelab.errors import BelowWhitneyRegime, NoEssentialSpheres, SizeTwoInput
from spherelab.punctured_complex import (
    build_complex,
    enumerate_pants,
    is_binary_tree,
    kneser_subgraph,
    reconstruct_from_size2,
    size2_fingerprint,
    verify_flag_property,
    verify_unique,
)
from spherelab.splits import canonicalize, double_factorial, size


def sp(side, s=6):
    return canonicalize(side, s)


class BuildComplexTests(unittest.TestCase):
    def test_small_vertex_counts(self) -> None:
        self.assertEqual(len(build_complex(4).vertices()), 3)
        self.assertEqual(len(build_complex(5).vertices()), 10)
        self.assertEqual(len(build_complex(6).vertices()), 25)

    def test_four_holed_sphere_is_edgeless(self) -> None:
        cpx = build_complex(4)
        self.assertEqual(cpx.edge_count(), 0)

    def test_vertex_count_formula_up_to_nine(self) -> None:
        for s in range(4, 10):
            self.assertEqual(len(build_complex(s).vertices()), 2 ** (s - 1) - s - 1)

    def test_too_few_labels_raise(self) -> None:
        with self.assertRaises(NoEssentialSpheres):
            build_complex(3)

    def test_adjacency_is_nesting(self) -> None:
        cpx = build_complex(6)
        self.assertTrue(cpx.adjacent(sp({1, 6}), sp({3, 4})))
        self.assertFalse(cpx.adjacent(sp({1, 2, 3}), sp({1, 6})))
        for u, v in cpx.iter_edges():
            self.assertLess(cpx.index_of(u), cpx.index_of(v))

    def test_json_lists_vertices_and_edges(self) -> None:
        payload = build_complex(5).to_json()
        self.assertEqual(payload["s"], 5)
        self.assertEqual(len(payload["vertices"]), 10)
        self.assertEqual(len(payload["edges"]), 15)


class PantsTests(unittest.TestCase):
    def test_pants_counts_match_double_factorial(self) -> None:
        for s in range(4, 9):
            self.assertEqual(len(enumerate_pants(s)), double_factorial(2 * s - 5))

    def test_each_pants_has_s_minus_three_splits(self) -> None:
        for p in enumerate_pants(6):
            self.assertEqual(len(p.splits), 3)

    def test_dual_tree_round_trip(self) -> None:
        for s in (4, 5, 6, 7):
            for p in enumerate_pants(s):
                self.assertTrue(is_binary_tree(p))
                self.assertEqual(p.splits_from_tree(), set(p.splits))

    def test_flag_property(self) -> None:
        for s in (4, 5, 6, 7):
            self.assertTrue(verify_flag_property(build_complex(s)))


class KneserTests(unittest.TestCase):
    def test_petersen_graph(self) -> None:
        g = kneser_subgraph(5)
        self.assertEqual(g.number_of_nodes(), 10)
        self.assertEqual(g.number_of_edges(), 15)
        self.assertTrue(all(d == 3 for _, d in g.degree()))
        self.assertTrue(g.has_edge((1, 2), (3, 4)))

    def test_six_labels(self) -> None:
        g = kneser_subgraph(6)
        self.assertEqual(g.number_of_nodes(), 15)
        self.assertTrue(all(d == 6 for _, d in g.degree()))

    def test_below_whitney_regime_rejected(self) -> None:
        with self.assertRaises(BelowWhitneyRegime):
            kneser_subgraph(4)


class ReconstructionTests(unittest.TestCase):
    def test_size_three_sphere_in_six_holed_sphere(self) -> None:
        cpx = build_complex(6)
        got = reconstruct_from_size2(sp({1, 2, 3}), cpx)
        expected = {sp(p) for p in ({1, 2}, {1, 3}, {2, 3}, {4, 5}, {4, 6}, {5, 6})}
        self.assertEqual(got, expected)

    def test_five_holed_fingerprint(self) -> None:
        cpx = build_complex(5)
        u = sp({1, 2, 3}, 5)
        expected = {sp(p, 5) for p in ({1, 2}, {1, 3}, {2, 3}, {4, 5})}
        self.assertEqual(size2_fingerprint(u, cpx), expected)
        # {1,2,3}|{4,5} is itself a size-2 sphere.
        with self.assertRaises(SizeTwoInput):
            reconstruct_from_size2(u, cpx)

    def test_uniqueness_over_size_three_spheres(self) -> None:
        cpx = build_complex(6)
        for u in cpx.vertices():
            if size(u) == 3:
                self.assertTrue(verify_unique(u, cpx))

    def test_uniqueness_in_seven_holed_sphere(self) -> None:
        cpx = build_complex(7)
        for u in cpx.vertices():
            if size(u) >= 3:
                self.assertTrue(verify_unique(u, cpx))


if __name__ == "__main__":
    unittest.main()
