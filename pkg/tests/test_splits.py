import sys
import unittest
from pathlib import Path

# Ensure project root is on sys.path for `spherelab` imports when tests run from anywhere.
ROOT = Path(__file__).resolve().parents[1]
if str(ROOT) not in sys.path:
    sys.path.insert(0, str(ROOT))

from spherelab.errors import GroundMismatch, InvalidSplit, NotIntersecting
from spherelab.splits import (
    Split,
    canonicalize,
    double_factorial,
    essential_splits,
    intersects,
    is_nested,
    m04_third_sphere,
    size,
)


def sp(side, s=6):
    return canonicalize(side, s)


class CanonicalizeTests(unittest.TestCase):
    def test_complement_is_normalized_to_side_with_label_one(self) -> None:
        self.assertEqual(sp({4, 5, 6}).side, frozenset({1, 2, 3}))
        self.assertEqual(sp({1, 6}).side, frozenset({1, 6}))

    def test_split_without_label_one_is_stored_by_complement(self) -> None:
        u = sp({3, 4})
        self.assertEqual(u.side, frozenset({1, 2, 5, 6}))
        self.assertEqual(u, sp({1, 2, 5, 6}))

    def test_empty_or_full_side_is_rejected(self) -> None:
        with self.assertRaises(InvalidSplit):
            canonicalize(set(), 6)
        with self.assertRaises(InvalidSplit):
            canonicalize(range(1, 7), 6)

    def test_constructor_requires_canonical_side(self) -> None:
        with self.assertRaises(InvalidSplit):
            Split(6, frozenset({2, 3}))

    def test_idempotent_and_complement_invariant(self) -> None:
        for s in range(4, 8):
            for u in essential_splits(s):
                self.assertEqual(canonicalize(u.side, s), u)
                self.assertEqual(canonicalize(u.other, s), u)

    def test_json_encoding_is_sorted_canonical_side(self) -> None:
        self.assertEqual(sp({4, 5, 6}).to_json(), {"s": 6, "side": [1, 2, 3]})
        self.assertEqual(Split.from_json({"s": 6, "side": [3, 4]}), sp({3, 4}))


class NestingTests(unittest.TestCase):
    def test_examples(self) -> None:
        self.assertTrue(is_nested(sp({1, 2}), sp({1, 2, 3})))
        self.assertFalse(is_nested(sp({1, 2, 3}), sp({1, 6})))
        self.assertFalse(is_nested(sp({1, 4, 5}), sp({3, 5, 6})))

    def test_intersects_examples(self) -> None:
        a, b, c = sp({1, 2, 3}), sp({1, 6}), sp({3, 4})
        self.assertTrue(intersects(a, b))
        self.assertFalse(intersects(a, a))
        self.assertFalse(intersects(b, c))

    def test_mismatched_ground_sizes_raise(self) -> None:
        with self.assertRaises(GroundMismatch):
            is_nested(sp({1, 2}, 5), sp({1, 2}, 6))
        with self.assertRaises(GroundMismatch):
            intersects(sp({1, 2}, 5), sp({1, 2}, 6))

    def test_symmetry_and_reflexivity_exhaustively(self) -> None:
        for s in range(4, 8):
            splits = essential_splits(s)
            for u in splits:
                self.assertTrue(is_nested(u, u))
                self.assertFalse(intersects(u, u))
                for v in splits:
                    self.assertEqual(is_nested(u, v), is_nested(v, u))
                    self.assertEqual(intersects(u, v), intersects(v, u))


class SizeTests(unittest.TestCase):
    def test_examples(self) -> None:
        self.assertEqual(size(sp({1, 6})), 2)
        self.assertEqual(size(sp({1, 2, 3})), 3)
        self.assertEqual(size(sp({1, 4, 5})), 3)

    def test_peripheral_split_has_no_size(self) -> None:
        with self.assertRaises(InvalidSplit):
            size(sp({3}))


class ThirdSphereTests(unittest.TestCase):
    def test_six_holed_twins(self) -> None:
        a, b, c = sp({1, 2, 3}), sp({1, 6}), sp({3, 4})
        b_twin = m04_third_sphere(a, b)
        c_twin = m04_third_sphere(a, c)
        self.assertEqual(b_twin, sp({1, 4, 5}))
        self.assertEqual(c_twin, sp({3, 5, 6}))
        self.assertTrue(intersects(b_twin, c_twin))
        for twin in (b_twin, c_twin):
            self.assertTrue(intersects(twin, b))
            self.assertTrue(intersects(twin, c))

    def test_five_holed_block_formula(self) -> None:
        u, v = sp({1, 2}, 5), sp({2, 3}, 5)
        self.assertEqual(m04_third_sphere(u, v), sp({1, 3}, 5))

    def test_nested_inputs_raise(self) -> None:
        with self.assertRaises(NotIntersecting):
            m04_third_sphere(sp({1, 2}), sp({1, 2, 3}))

    def test_third_sphere_properties_exhaustively(self) -> None:
        for s in range(4, 8):
            splits = essential_splits(s)
            for u in splits:
                for v in splits:
                    if not intersects(u, v):
                        continue
                    w = m04_third_sphere(u, v)
                    self.assertTrue(intersects(w, u))
                    self.assertTrue(intersects(w, v))
                    self.assertEqual(w, m04_third_sphere(v, u))
                    a, a_rest = u.pieces()
                    b, b_rest = v.pieces()
                    alternative = canonicalize((a & b_rest) | (a_rest & b), s)
                    self.assertEqual(alternative, w)


class EnumerationTests(unittest.TestCase):
    def test_essential_split_counts(self) -> None:
        for s in range(4, 10):
            self.assertEqual(len(essential_splits(s)), 2 ** (s - 1) - s - 1)

    def test_double_factorial(self) -> None:
        self.assertEqual([double_factorial(2 * s - 5) for s in (4, 5, 6, 7)], [3, 15, 105, 945])


if __name__ == "__main__":
    unittest.main()
