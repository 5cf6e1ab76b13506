"""
Persist named vertex sets of a glued manifold in a SQLite file.

Tables:
- manifolds: the boundary pairing of M(n,0)
- vertex_sets: one row per named set (rigid set, exhaustion layer)
- spheres: the members of each set as canonical JSON
"""

from __future__ import annotations

import json
import logging
import sqlite3
from pathlib import Path
from typing import Dict, FrozenSet, Iterable, Mapping, Tuple

from .glued_model import GluedManifold, SphereClass, sorted_spheres, sphere_from_json, sphere_to_json

logger = logging.getLogger(__name__)


def write_vertex_sets(
    sets: Mapping[str, Iterable[SphereClass]],
    M: GluedManifold,
    out_path: Path,
) -> None:
    out_path = Path(out_path)
    if out_path.exists():
        out_path.unlink()
    out_path.parent.mkdir(parents=True, exist_ok=True)

    conn = sqlite3.connect(out_path)
    try:
        cur = conn.cursor()
        cur.executescript(
            """
            PRAGMA foreign_keys = ON;
            CREATE TABLE manifolds (
                id INTEGER PRIMARY KEY,
                payload TEXT NOT NULL
            );
            CREATE TABLE vertex_sets (
                id INTEGER PRIMARY KEY,
                name TEXT UNIQUE NOT NULL,
                manifold_id INTEGER NOT NULL,
                FOREIGN KEY (manifold_id) REFERENCES manifolds(id)
            );
            CREATE TABLE spheres (
                set_id INTEGER NOT NULL,
                position INTEGER NOT NULL,
                payload TEXT NOT NULL,
                PRIMARY KEY (set_id, position),
                FOREIGN KEY (set_id) REFERENCES vertex_sets(id)
            );
            """
        )
        cur.execute("INSERT INTO manifolds(id, payload) VALUES (1, ?)", (json.dumps(M.to_json(), sort_keys=True),))
        names = list(sets)
        cur.executemany(
            "INSERT INTO vertex_sets(id, name, manifold_id) VALUES (?, ?, 1)",
            [(idx + 1, name) for idx, name in enumerate(names)],
        )
        rows = [
            (idx + 1, pos, json.dumps(sphere_to_json(x), sort_keys=True))
            for idx, name in enumerate(names)
            for pos, x in enumerate(sorted_spheres(sets[name]))
        ]
        cur.executemany("INSERT INTO spheres(set_id, position, payload) VALUES (?, ?, ?)", rows)
        conn.commit()
        logger.info("wrote %d vertex sets (%d spheres) to %s", len(names), len(rows), out_path)
    finally:
        conn.close()


def load_vertex_sets(db_path: Path) -> Tuple[GluedManifold, Dict[str, FrozenSet[SphereClass]]]:
    """Read back the manifold and every named set, in insertion order."""
    conn = sqlite3.connect(Path(db_path))
    try:
        cur = conn.cursor()
        cur.execute("SELECT payload FROM manifolds WHERE id = 1")
        (raw,) = cur.fetchone()
        M = GluedManifold.from_json(json.loads(raw))

        cur.execute("SELECT id, name FROM vertex_sets ORDER BY id")
        id_to_name = {row[0]: row[1] for row in cur.fetchall()}
        members: Dict[str, set] = {name: set() for _, name in sorted(id_to_name.items())}

        cur.execute("SELECT set_id, payload FROM spheres ORDER BY set_id, position")
        for set_id, payload in cur.fetchall():
            members[id_to_name[set_id]].add(sphere_from_json(json.loads(payload), M))

        return M, {name: frozenset(spheres) for name, spheres in members.items()}
    finally:
        conn.close()
