import sys
import unittest
from dataclasses import replace
from pathlib import Path

ROOT = Path(__file__).resolve().parents[1]
if str(ROOT) not in sys.path:
    sys.path.insert(0, str(ROOT))

from spherelab.errors import CannotPlaceGoodPairs, DomainError, NotIntersecting, NotMember, SplitPairError
from spherelab.glued_model import YSphere, disjoint, make_interior, make_once_crossing, split_spheres_for
from spherelab.rigid_sets import (
    SELF_ADJACENT_AFTER_EXCHANGE,
    build_rigid_set,
    check_local_injectivity,
    construct_local_split_pairs,
    construct_split_pairs,
    detect_intersection,
    exhaust,
    expand_fully_split,
    fully_split_audit,
    good_pair_certificates,
    map_certificate,
    redundant_spheres,
    twin_crossing_certificates,
    twin_sphere,
    vertex_set_from_json,
    y_permutation_map,
)
from spherelab.splits import canonicalize, intersects

A, B, C = YSphere("A"), YSphere("B"), YSphere("C")


class BuildTests(unittest.TestCase):
    def test_three_handles(self) -> None:
        X = build_rigid_set(3)
        self.assertEqual(len(X.y), 3)
        self.assertEqual(len(X.z), 25)
        self.assertEqual(len(X.vertices()), 34)
        self.assertEqual(X.verify(), [])
        a1 = make_once_crossing("A", {3}, {4}, X.M)
        self.assertEqual(X.good_pairs["A"][0], a1)
        self.assertEqual(X.good_pairs["A"][1], make_once_crossing("A", {5}, {6}, X.M))
        self.assertEqual(X.base_witness, (A, a1))
        expected = {A, B, C, *(make_interior(side, X.M) for side in ({1, 3}, {2, 4}, {5, 6}))}
        self.assertEqual(X.base_pants.spheres, frozenset(expected))

    def test_four_handles(self) -> None:
        X = build_rigid_set(4)
        self.assertEqual(len(X.z), 119)
        self.assertEqual(len(X.vertices()), 131)
        self.assertEqual(X.verify(), [])

    def test_vertex_set_json(self) -> None:
        X = build_rigid_set(3)
        M, vertices = vertex_set_from_json(X.to_json())
        self.assertEqual(M, X.M)
        self.assertEqual(vertices, X.vertices())

    def test_two_handles_cannot_place_good_pairs(self) -> None:
        with self.assertRaises(CannotPlaceGoodPairs):
            build_rigid_set(2)


class DetectabilityTests(unittest.TestCase):
    def setUp(self) -> None:
        self.X = build_rigid_set(3)
        self.M = self.X.M

    def test_y_sphere_and_good_sphere(self) -> None:
        a1 = self.X.good_pairs["A"][0]
        cert = detect_intersection(self.X.vertices(), A, a1, self.M)
        self.assertTrue(cert.verify(self.X.vertices()))
        self.assertEqual(len(cert.remainder()), 5)

    def test_every_good_sphere_is_detectable(self) -> None:
        certs = good_pair_certificates(self.X)
        self.assertEqual(len(certs), 6)
        self.assertTrue(all(c.verify(self.X.vertices()) for c in certs))

    def test_spheres_outside_x_are_rejected(self) -> None:
        a1 = self.X.good_pairs["A"][0]
        with self.assertRaises(NotMember):
            detect_intersection(self.X.x0(), A, a1, self.M)

    def test_certificate_does_not_verify_in_a_smaller_set(self) -> None:
        a1 = self.X.good_pairs["A"][0]
        cert = detect_intersection(self.X.vertices(), A, a1, self.M)
        self.assertFalse(cert.verify(self.X.x0()))

    def test_disjoint_inputs(self) -> None:
        with self.assertRaises(NotIntersecting):
            detect_intersection(self.X.vertices(), A, B, self.M)

    def test_interior_pair_and_image_under_y_permutation(self) -> None:
        alpha = make_interior({1, 2, 3}, self.M)
        beta = make_interior({1, 6}, self.M)
        cert = detect_intersection(self.X.x0(), alpha, beta, self.M)
        self.assertTrue(cert.verify(self.X.x0()))
        f = y_permutation_map(self.X, {"A": "B", "B": "A", "C": "C"})
        image = map_certificate(cert, f, self.M)
        self.assertEqual(image.remainder(), cert.remainder())


class TwinCrossingTests(unittest.TestCase):
    def setUp(self) -> None:
        self.X = build_rigid_set(3)
        self.M = self.X.M

    def test_twins_cross_each_other_and_the_good_pair(self) -> None:
        certs = twin_crossing_certificates(self.X)
        self.assertEqual([c.label for c in certs], ["A", "B", "C"])
        for cert in certs:
            self.assertEqual(cert.verify(self.M), [])
        a1 = self.X.good_pairs["A"][0]
        self.assertEqual(twin_sphere(a1), make_once_crossing("A", {3}, {4}, self.M, twisted=True))
        self.assertEqual(twin_sphere(twin_sphere(a1)), a1)

    def test_twins_stay_in_the_detecting_piece(self) -> None:
        detected = good_pair_certificates(self.X)
        for i, cert in enumerate(twin_crossing_certificates(self.X)):
            remainders = [detected[2 * i].remainder(), detected[2 * i + 1].remainder()]
            self.assertEqual(cert.verify(self.M, remainders), [])

    def test_tampered_certificate_fails(self) -> None:
        cert = twin_crossing_certificates(self.X)[0]
        self.assertTrue(replace(cert, twins=cert.good).verify(self.M))
        self.assertTrue(replace(cert, label="B").verify(self.M))


class SplitPairTests(unittest.TestCase):
    def test_local_five_holed_picture(self) -> None:
        sp = lambda side: canonicalize(side, 5)  # noqa: E731
        a, b, c = sp({1, 2}), sp({2, 3}), sp({4, 5})
        first, second = construct_local_split_pairs({a, c}, a, c, b, 5)
        pairs = {(cert.first, cert.second) for cert in (first, second)}
        self.assertEqual(pairs, {(sp({3, 4}), sp({1, 5})), (sp({3, 5}), sp({1, 4}))})
        for cert in (first, second):
            d_twin, e_twin = cert.twins
            self.assertTrue(intersects(d_twin, cert.first) and intersects(d_twin, cert.second))
            self.assertTrue(intersects(e_twin, cert.first) and intersects(e_twin, cert.second))
            self.assertTrue(cert.twins_meet_pair)
            self.assertFalse(cert.twins_cross)
            self.assertEqual(cert.verify_local(5), [])
        self.assertTrue(replace(first, second=first.first).verify_local(5))
        self.assertTrue(replace(first, second_pants=first.first_pants).verify_local(5))

    def test_glued_split_pairs(self) -> None:
        X = build_rigid_set(3)
        M = X.M
        a1 = X.good_pairs["A"][0]
        s3 = make_interior({1, 3}, M)
        first, second = construct_split_pairs(X.base_pants, A, s3, a1, X.vertices(), M)
        expected = {
            (make_interior({1, 2, 4}, M), make_once_crossing("A", {3, 5, 6}, {4}, M)),
            (make_interior({1, 5, 6}, M), make_once_crossing("A", {5, 6}, {4}, M, twisted=True)),
        }
        self.assertEqual({(c.first, c.second) for c in (first, second)}, expected)
        for cert in (first, second):
            self.assertTrue(disjoint(cert.first, cert.second, M))
            self.assertIn(cert.first, split_spheres_for(X.base_pants, s3, M))
            self.assertTrue(cert.twins_meet_pair)
            self.assertEqual(cert.verify(M), [])
        self.assertTrue(replace(first, second=first.twins[1]).verify(M))
        self.assertTrue(replace(first, twins_meet_pair=not first.twins_meet_pair).verify(M))
        self.assertTrue(replace(first, sphere=C).verify(M))

    def test_parallel_sphere_is_deferred(self) -> None:
        X = build_rigid_set(3)
        with self.assertRaises(SplitPairError) as ctx:
            construct_split_pairs(X.base_pants, A, B, X.good_pairs["A"][0], X.vertices(), X.M)
        self.assertEqual(ctx.exception.reason, SELF_ADJACENT_AFTER_EXCHANGE)

    def test_non_adjacent_sphere_rejected(self) -> None:
        X = build_rigid_set(3)
        with self.assertRaises(SplitPairError):
            construct_split_pairs(X.base_pants, A, C, X.good_pairs["A"][0], X.vertices(), X.M)


class ExpansionTests(unittest.TestCase):
    def setUp(self) -> None:
        self.X = build_rigid_set(3)
        self.M = self.X.M
        self.result = expand_fully_split(self.X.vertices(), self.X.base_pants, self.M, witness=self.X.base_witness)

    def test_fully_split_audit(self) -> None:
        self.assertEqual(self.result.frontier, [])
        self.assertEqual(fully_split_audit(self.result.vertices, self.X.base_pants, self.M), [])
        self.assertTrue(self.result.vertices > self.X.vertices())

    def test_layers(self) -> None:
        s3 = make_interior({1, 3}, self.M)
        s4 = make_interior({2, 4}, self.M)
        self.assertEqual(self.result.layers[0], [A])
        self.assertEqual(self.result.layers[1], [s3, s4])
        processed = {c for layer in self.result.layers[1:] for c in layer}
        non_loops = {x for x in self.X.base_pants.spheres if not self.X.base_pants.self_adjacent(x)}
        self.assertEqual(processed, non_loops)

    def test_every_added_sphere_has_a_certificate(self) -> None:
        added = self.result.vertices - self.X.vertices()
        self.assertTrue(added <= self.result.added())

    def test_certificates_verify_and_lie_in_x(self) -> None:
        for cert in self.result.certificates:
            self.assertEqual(cert.verify(self.M), [])
            self.assertTrue(cert.lies_in(self.result.vertices))

    def test_expansion_is_minimal(self) -> None:
        self.assertEqual(redundant_spheres(self.result, self.X.vertices()), [])
        added = self.result.vertices - self.X.vertices()
        self.assertTrue(added)
        for x in added:
            trimmed = self.result.vertices - {x}
            self.assertTrue(any(not cert.lies_in(trimmed) for cert in self.result.certificates), str(x))
        for cert in self.result.certificates:
            if cert.first in added:
                trimmed = self.result.vertices - {cert.first}
                self.assertIn(cert.first, fully_split_audit(trimmed, self.X.base_pants, self.M))

    def test_idempotent(self) -> None:
        again = expand_fully_split(self.result.vertices, self.X.base_pants, self.M, witness=self.X.base_witness)
        self.assertEqual(again.vertices, self.result.vertices)


class ExhaustionTests(unittest.TestCase):
    def test_depth_zero(self) -> None:
        report = exhaust(3, 0)
        self.assertEqual(len(report.layers), 1)
        layer = report.layers[0]
        self.assertEqual(layer.pants, 1)
        self.assertEqual(layer.next_pants, 10)
        self.assertTrue(layer.contained)
        self.assertTrue(layer.split)
        frame = report.to_frame()
        self.assertEqual(list(frame["index"]), [0])
        self.assertEqual(report.to_json()["depth"], 0)

    def test_negative_depth(self) -> None:
        with self.assertRaises(DomainError):
            exhaust(3, -1)

    def test_depth_one(self) -> None:
        report = exhaust(3, 1)
        self.assertEqual([len(v) for v in report.vertex_sets], [43, 89])
        self.assertTrue(report.vertex_sets[0] <= report.vertex_sets[1])
        self.assertEqual([layer.pants for layer in report.layers], [1, 10])
        self.assertEqual([layer.next_pants for layer in report.layers], [10, 79])
        self.assertEqual([layer.vertices for layer in report.layers], [43, 89])
        self.assertTrue(all(layer.contained and layer.split for layer in report.layers))
        self.assertEqual(report.layers[0].frontier, 0)
        self.assertEqual(report.layers[1].frontier, len(report.frontier_events))
        for event in report.frontier_events:
            self.assertTrue(event.startswith("layer 1:") or event.startswith("exchange at "), event)
        self.assertFalse(any("not split" in event for event in report.frontier_events))


class LocalInjectivityTests(unittest.TestCase):
    def setUp(self) -> None:
        self.X = build_rigid_set(3)

    def test_identity(self) -> None:
        x0 = self.X.x0()
        self.assertTrue(check_local_injectivity({x: x for x in x0}, x0, self.X.M))

    def test_y_permutation_shows_x0_is_not_rigid(self) -> None:
        f = y_permutation_map(self.X, {"A": "B", "B": "C", "C": "A"})
        self.assertTrue(check_local_injectivity(f, self.X.x0(), self.X.M))
        self.assertNotEqual(f[A], A)

    def test_constant_map(self) -> None:
        x0 = self.X.x0()
        self.assertFalse(check_local_injectivity({x: A for x in x0}, x0, self.X.M))

    def test_partial_map(self) -> None:
        with self.assertRaises(DomainError):
            check_local_injectivity({A: A}, self.X.x0(), self.X.M)


if __name__ == "__main__":
    unittest.main()
