import sys
import unittest
from pathlib import Path

ROOT = Path(__file__).resolve().parents[1]
if str(ROOT) not in sys.path:
    sys.path.insert(0, str(ROOT))

from spherelab.config import slow_checks_enabled
from spherelab.errors import ManifoldMismatch, NotDisjoint, NotMaximal, NotMember, NotSplitSphere, OutOfModel
from spherelab.glued_model import (
    GluedManifold,
    Interior,
    YSphere,
    disjoint,
    enumerate_model_pants,
    exchange,
    is_pants,
    make_interior,
    make_once_crossing,
    model_vertices,
    sphere_from_json,
    sphere_to_json,
    split_spheres_for,
)

M2 = GluedManifold.standard(2)
M3 = GluedManifold.standard(3)
A, B, C = YSphere("A"), YSphere("B"), YSphere("C")


def inner(side, M=M3):
    return make_interior(side, M)


class ManifoldTests(unittest.TestCase):
    def test_standard_pairing(self) -> None:
        self.assertEqual(M3.sides("B"), (3, 4))
        self.assertEqual(M3.label_of(6), "C")
        self.assertEqual(M3.partner(5), 6)
        self.assertEqual(M3.to_json()["labels"], {"A": [1, 2], "B": [3, 4], "C": [5, 6]})
        self.assertEqual(GluedManifold.from_json(M3.to_json()), M3)

    def test_bad_pairing_rejected(self) -> None:
        with self.assertRaises(ManifoldMismatch):
            GluedManifold(n=2, pairs=((1, 2), (2, 3)), names=("A", "B"))
        with self.assertRaises(ManifoldMismatch):
            GluedManifold.standard(1)


class SphereClassTests(unittest.TestCase):
    def test_peripheral_split_is_a_y_sphere(self) -> None:
        self.assertEqual(inner({1}), A)
        self.assertEqual(inner({1, 2, 3, 5, 6}), YSphere("B"))
        self.assertIsInstance(inner({1, 2}), Interior)

    def test_overlapping_outer_pieces_rejected(self) -> None:
        with self.assertRaises(ManifoldMismatch):
            make_once_crossing("A", {3, 4}, {4}, M3)

    def test_json(self) -> None:
        x = make_once_crossing("A", {3}, {4}, M3, twisted=True)
        payload = sphere_to_json(x)
        self.assertEqual(payload["tag"], "once-crossing")
        self.assertEqual(sphere_from_json(payload, M3), x)
        self.assertEqual(sphere_from_json(sphere_to_json(inner({1, 3})), M3), inner({1, 3}))

    def test_model_vertex_counts(self) -> None:
        self.assertEqual(len(model_vertices(M2)), 13)
        vertices = model_vertices(M3)
        self.assertEqual(len(vertices), 328)
        self.assertEqual(len(set(vertices)), 328)
        self.assertEqual(vertices[:3], [A, B, C])


class DisjointnessTests(unittest.TestCase):
    def test_case_table(self) -> None:
        a1 = make_once_crossing("A", {3}, {4}, M3)
        self.assertTrue(disjoint(A, B, M3))
        self.assertTrue(disjoint(A, inner({1, 2}), M3))
        self.assertFalse(disjoint(A, a1, M3))
        self.assertTrue(disjoint(B, a1, M3))
        self.assertFalse(disjoint(a1, a1, M3))

    def test_good_spheres_are_disjoint(self) -> None:
        a1 = make_once_crossing("A", {3}, {4}, M3)
        a2 = make_once_crossing("A", {5}, {6}, M3)
        self.assertTrue(disjoint(a1, a2, M3))

    def test_gluing_bit_separates_twins(self) -> None:
        straight = make_once_crossing("A", {3}, {4}, M3)
        twisted = make_once_crossing("A", {3}, {4}, M3, twisted=True)
        self.assertNotEqual(straight, twisted)
        self.assertFalse(disjoint(straight, twisted, M3))

    def test_spheres_of_another_manifold_rejected(self) -> None:
        with self.assertRaises(ManifoldMismatch):
            disjoint(YSphere("Q"), inner({1, 2}), M3)
        with self.assertRaises(ManifoldMismatch):
            disjoint(inner({1, 2}), C, M2)
        with self.assertRaises(ManifoldMismatch):
            disjoint(inner({1, 3}, M2), inner({1, 2}), M3)

    def test_symmetric_for_two_handles(self) -> None:
        vertices = model_vertices(M2)
        for x in vertices:
            for y in vertices:
                self.assertEqual(disjoint(x, y, M2), disjoint(y, x, M2))

    @unittest.skipUnless(slow_checks_enabled(), "exhaustive n=3 sweep")
    def test_symmetric_for_three_handles(self) -> None:
        vertices = model_vertices(M3)
        for x in vertices:
            for y in vertices:
                self.assertEqual(disjoint(x, y, M3), disjoint(y, x, M3))


class PantsTests(unittest.TestCase):
    def setUp(self) -> None:
        self.p_a = is_pants([A, B, C, inner({1, 3}), inner({2, 4}), inner({5, 6})], M3)
        self.a1 = make_once_crossing("A", {3}, {4}, M3)
        self.e1 = make_once_crossing("A", {3}, {4}, M3, twisted=True)

    def test_theta_and_dumbbell(self) -> None:
        theta = is_pants([A, B, inner({1, 3}, M2)], M2)
        dumbbell = is_pants([A, B, inner({1, 2}, M2)], M2)
        self.assertEqual(theta.shape(), "theta")
        self.assertEqual(dumbbell.shape(), "dumbbell")
        self.assertTrue(all(theta.adjacent(x, y) for x in theta.spheres for y in theta.spheres if x != y))
        self.assertEqual(dumbbell.loops(), [A, B])

    def test_once_crossing_pants_for_two_handles(self) -> None:
        straight = make_once_crossing("A", {3}, {4}, M2)
        twisted = make_once_crossing("A", {3}, {4}, M2, twisted=True)
        self.assertEqual(is_pants([straight, B, inner({1, 3}, M2)], M2).shape(), "dumbbell")
        self.assertEqual(is_pants([twisted, B, inner({1, 3}, M2)], M2).shape(), "theta")

    def test_dual_graph_invariants(self) -> None:
        graph = self.p_a.dual_graph
        self.assertEqual(graph.number_of_nodes(), 4)
        self.assertEqual(graph.number_of_edges(), 6)
        self.assertTrue(all(d == 3 for _, d in graph.degree()))
        self.assertEqual(self.p_a.loops(), [C])
        self.assertTrue(self.p_a.adjacent(A, B))
        self.assertFalse(self.p_a.self_adjacent(A))

    def test_failures(self) -> None:
        with self.assertRaises(NotMaximal):
            is_pants([A, B, C], M3)
        with self.assertRaises(NotDisjoint) as ctx:
            is_pants([A, self.a1, B, C, inner({1, 3}), inner({2, 4})], M3)
        self.assertEqual(set(ctx.exception.pair), {A, self.a1})
        with self.assertRaises(NotMember):
            self.p_a.adjacent(A, self.a1)

    def test_split_spheres(self) -> None:
        self.assertEqual(split_spheres_for(self.p_a, A, M3), frozenset({self.a1, self.e1}))
        self.assertEqual(split_spheres_for(self.p_a, C, M3), frozenset())

    def test_exchange_is_reversible(self) -> None:
        swapped = exchange(self.p_a, A, self.a1, M3)
        self.assertEqual(len(self.p_a.spheres ^ swapped.spheres), 2)
        self.assertTrue(swapped.self_adjacent(B))
        self.assertIn(A, split_spheres_for(swapped, self.a1, M3))
        self.assertEqual(exchange(swapped, self.a1, A, M3), self.p_a)
        twisted = exchange(self.p_a, A, self.e1, M3)
        self.assertFalse(twisted.self_adjacent(B))

    def test_exchange_needs_split_sphere(self) -> None:
        with self.assertRaises(NotSplitSphere):
            exchange(self.p_a, A, make_once_crossing("A", {5}, {6}, M3), M3)

    def test_json(self) -> None:
        payload = self.p_a.to_json()
        self.assertEqual(len(payload["spheres"]), 6)
        self.assertEqual(payload["spheres"][0], {"tag": "Y", "label": "A"})


def split_counts(pants, M):
    """(in-model checks, frontier events); raises on any inconsistency."""
    checked = frontier = 0
    for p in pants:
        for x in p.spheres:
            try:
                found = split_spheres_for(p, x, M)
            except OutOfModel:
                frontier += 1
                continue
            if len(found) != (0 if p.self_adjacent(x) else 2):
                raise AssertionError(f"{x}: {len(found)} split spheres")
            checked += 1
    return checked, frontier


class EnumerationTests(unittest.TestCase):
    def test_two_handles(self) -> None:
        pants = enumerate_model_pants(M2)
        self.assertEqual(len(pants), 11)
        self.assertEqual({p.shape() for p in pants}, {"theta", "dumbbell"})
        checked, _ = split_counts(pants, M2)
        self.assertGreater(checked, 0)

    def test_y_pants_have_two_split_spheres_everywhere(self) -> None:
        for u in ({1, 2}, {1, 3}, {1, 4}):
            p = is_pants([A, B, inner(u, M2)], M2)
            checked, frontier = split_counts([p], M2)
            self.assertEqual((checked, frontier), (3, 0))

    @unittest.skipUnless(slow_checks_enabled(), "exhaustive n=3 enumeration")
    def test_three_handles(self) -> None:
        pants = enumerate_model_pants(M3)
        for p in pants:
            self.assertEqual(p.dual_graph.number_of_nodes(), 4)
        checked, _ = split_counts(pants, M3)
        self.assertGreater(checked, 0)


if __name__ == "__main__":
    unittest.main()
