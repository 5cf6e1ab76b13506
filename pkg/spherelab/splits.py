"""
Split arithmetic for spheres in a punctured 3-sphere M(0,s).

A sphere in M(0,s) is determined by the bipartition it induces on the
boundary labels 1..s. A Split stores that bipartition through its canonical
side, the piece that contains label 1, so equal spheres compare equal and
hash alike.

Two spheres are disjoint exactly when their bipartitions are nested: some
piece of one is contained in some piece of the other.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Dict, FrozenSet, Iterable, List, Tuple

from .errors import GroundMismatch, InvalidSplit, NotIntersecting


@dataclass(frozen=True)
class Split:
    """
    Bipartition of [s] stored by the piece containing label 1.

    Use canonicalize() to build one from either piece; the constructor only
    accepts a side that is already canonical.
    """

    s: int
    side: FrozenSet[int]

    def __post_init__(self) -> None:
        if self.s < 2:
            raise InvalidSplit(f"ground size must be at least 2, got {self.s}")
        if 1 not in self.side:
            raise InvalidSplit("canonical side must contain label 1")
        if len(self.side) >= self.s:
            raise InvalidSplit("split side cannot be the whole ground set")
        if any(label < 1 or label > self.s for label in self.side):
            raise InvalidSplit(f"labels must lie in 1..{self.s}")

    @property
    def ground(self) -> FrozenSet[int]:
        return frozenset(range(1, self.s + 1))

    @property
    def other(self) -> FrozenSet[int]:
        """The piece not containing label 1."""
        return self.ground - self.side

    def pieces(self) -> Tuple[FrozenSet[int], FrozenSet[int]]:
        return self.side, self.other

    def piece_containing(self, label: int) -> FrozenSet[int]:
        return self.side if label in self.side else self.other

    def piece_avoiding(self, label: int) -> FrozenSet[int]:
        return self.other if label in self.side else self.side

    @property
    def essential(self) -> bool:
        return 2 <= len(self.side) <= self.s - 2

    def key(self) -> Tuple[int, Tuple[int, ...]]:
        return (self.s, tuple(sorted(self.side)))

    def __lt__(self, other: "Split") -> bool:
        return self.key() < other.key()

    def to_json(self) -> Dict[str, object]:
        return {"s": self.s, "side": sorted(self.side)}

    @classmethod
    def from_json(cls, payload: Dict[str, object]) -> "Split":
        return canonicalize(payload["side"], int(payload["s"]))  # type: ignore[arg-type]

    def __str__(self) -> str:
        left = ",".join(str(x) for x in sorted(self.side))
        right = ",".join(str(x) for x in sorted(self.other))
        return f"{{{left}}}|{{{right}}}"


def canonicalize(raw_side: Iterable[int], s: int) -> Split:
    """Return the Split with the given piece, stored by the side holding 1."""
    side = frozenset(int(x) for x in raw_side)
    if not side or len(side) >= s:
        raise InvalidSplit(f"split side must be a nonempty proper subset of [{s}]")
    if any(label < 1 or label > s for label in side):
        raise InvalidSplit(f"labels must lie in 1..{s}")
    if 1 not in side:
        side = frozenset(range(1, s + 1)) - side
    return Split(s, side)


def _check_ground(u: Split, v: Split) -> None:
    if u.s != v.s:
        raise GroundMismatch(f"ground sizes differ: {u.s} vs {v.s}")


def is_nested(u: Split, v: Split) -> bool:
    """True when some piece of u is disjoint from some piece of v."""
    _check_ground(u, v)
    return any(not (p & q) for p in u.pieces() for q in v.pieces())


def intersects(u: Split, v: Split) -> bool:
    _check_ground(u, v)
    return u != v and not is_nested(u, v)


def size(u: Split) -> int:
    if not u.essential:
        raise InvalidSplit(f"size is defined for essential splits only: {u}")
    return min(len(u.side), u.s - len(u.side))


def m04_third_sphere(u: Split, v: Split) -> Split:
    """
    Third essential sphere of the four-holed sphere N(u ∪ v).

    With pieces A|A' and B|B' all four blocks are nonempty; the answer
    regroups them as (A∩B) ∪ (A'∩B').
    """
    if not intersects(u, v):
        raise NotIntersecting(f"{u} and {v} do not intersect")
    a, a_rest = u.pieces()
    b, b_rest = v.pieces()
    return canonicalize((a & b) | (a_rest & b_rest), u.s)


def essential_splits(s: int) -> List[Split]:
    """All essential splits of [s] in canonical order (2^(s-1) - s - 1 of them)."""
    rest = range(2, s + 1)
    found: List[Split] = []
    for k in range(1, s - 2):
        for extra in combinations(rest, k):
            found.append(Split(s, frozenset((1,) + extra)))
    found.sort(key=Split.key)
    return found


def double_factorial(k: int) -> int:
    result = 1
    while k > 1:
        result *= k
        k -= 2
    return result
