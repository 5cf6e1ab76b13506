import sqlite3
import sys
import tempfile
import unittest
from pathlib import Path

ROOT = Path(__file__).resolve().parents[1]
if str(ROOT) not in sys.path:
    sys.path.insert(0, str(ROOT))

from spherelab.glued_model import GluedManifold, YSphere, make_once_crossing
from spherelab.rigid_sets import build_rigid_set
from spherelab.store import load_vertex_sets, write_vertex_sets


class VertexSetStoreTests(unittest.TestCase):
    def test_rigid_set_survives_a_round_trip(self) -> None:
        X = build_rigid_set(3)
        with tempfile.TemporaryDirectory() as tmpdir:
            db = Path(tmpdir) / "sets.sqlite"
            write_vertex_sets({"X0": X.x0(), "X": X.vertices()}, X.M, db)
            M, sets = load_vertex_sets(db)
        self.assertEqual(M, X.M)
        self.assertEqual(list(sets), ["X0", "X"])
        self.assertEqual(sets["X"], X.vertices())
        self.assertEqual(len(sets["X0"]), 28)

    def test_schema_and_overwrite(self) -> None:
        M = GluedManifold.standard(2)
        twisted = make_once_crossing("A", {3}, {4}, M, twisted=True)
        with tempfile.TemporaryDirectory() as tmpdir:
            db = Path(tmpdir) / "nested" / "sets.sqlite"
            write_vertex_sets({"old": [YSphere("A")]}, M, db)
            write_vertex_sets({"pair": [YSphere("B"), twisted]}, M, db)
            conn = sqlite3.connect(db)
            try:
                cur = conn.cursor()
                cur.execute("SELECT name FROM vertex_sets")
                names = [row[0] for row in cur.fetchall()]
                cur.execute("SELECT COUNT(*) FROM spheres")
                (count,) = cur.fetchone()
            finally:
                conn.close()
            _, sets = load_vertex_sets(db)
        self.assertEqual(names, ["pair"])
        self.assertEqual(count, 2)
        self.assertIn(twisted, sets["pair"])


if __name__ == "__main__":
    unittest.main()
