"""
Essential disks with boundary on a boundary sphere of M(0,s).

A disk D with boundary on sphere i splits the remaining labels [s] minus {i}
into two nonempty pieces, exactly as a sphere splits [s]. The regular
neighbourhood of D together with sphere i is a pair of pants whose two other
cuffs are the spheres cutting off each piece.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, FrozenSet, Iterable, List, Tuple

from .errors import GroundMismatch, InvalidDisk, InvalidSplit, LabelMismatch, NotGood
from .splits import Split, canonicalize, is_nested

NO_PERIPHERAL_CAP = "no-peripheral-cap"
COINCIDENT_SPHERES = "coincident-spheres"


@dataclass(frozen=True)
class Disk:
    """Disk on boundary sphere `on`, stored by the piece holding the least other label."""

    s: int
    on: int
    side: FrozenSet[int]

    def __post_init__(self) -> None:
        if not 1 <= self.on <= self.s:
            raise InvalidDisk(f"boundary label {self.on} outside 1..{self.s}")
        rest = self.rest
        if not self.side or not self.side < rest:
            raise InvalidDisk("disk pieces must both be nonempty (boundary-parallel disk)")
        if min(rest) not in self.side:
            raise InvalidDisk("canonical disk side must contain the least remaining label")

    @property
    def rest(self) -> FrozenSet[int]:
        return frozenset(range(1, self.s + 1)) - {self.on}

    @property
    def other(self) -> FrozenSet[int]:
        return self.rest - self.side

    def pieces(self) -> Tuple[FrozenSet[int], FrozenSet[int]]:
        return self.side, self.other

    def piece_containing(self, label: int) -> FrozenSet[int]:
        return self.side if label in self.side else self.other

    def piece_avoiding(self, label: int) -> FrozenSet[int]:
        return self.other if label in self.side else self.side

    def key(self) -> Tuple[int, int, Tuple[int, ...]]:
        return (self.s, self.on, tuple(sorted(self.side)))

    def to_json(self) -> Dict[str, object]:
        return {"s": self.s, "on": self.on, "side": sorted(self.side)}

    @classmethod
    def from_json(cls, payload: Dict[str, object]) -> "Disk":
        return make_disk(int(payload["on"]), payload["side"], int(payload["s"]))  # type: ignore[arg-type]

    def __str__(self) -> str:
        left = ",".join(str(x) for x in sorted(self.side))
        right = ",".join(str(x) for x in sorted(self.other))
        return f"D{self.on}[{{{left}}}|{{{right}}}]"


def make_disk(on: int, piece: Iterable[int], s: int) -> Disk:
    """Build a disk on `on` from either of its pieces."""
    side = frozenset(int(x) for x in piece)
    rest = frozenset(range(1, s + 1)) - {on}
    if not side or not side < rest:
        raise InvalidDisk(f"piece {sorted(side)} must be a nonempty proper subset of {sorted(rest)}")
    if min(rest) not in side:
        side = rest - side
    return Disk(s, on, side)


@dataclass(frozen=True)
class Cuff:
    """Boundary sphere of P(i, D) other than i itself."""

    split: Split
    piece: FrozenSet[int]
    peripheral: bool

    def to_json(self) -> Dict[str, object]:
        return {"split": self.split.to_json(), "peripheral": self.peripheral}


def pants_boundary(i: int, d: Disk) -> Tuple[Cuff, Cuff]:
    if d.on != i:
        raise LabelMismatch(f"disk sits on {d.on}, not on {i}")
    return tuple(  # type: ignore[return-value]
        Cuff(split=canonicalize(piece, d.s), piece=piece, peripheral=len(piece) == 1)
        for piece in d.pieces()
    )


def disks_disjoint(d1: Disk, d2: Disk) -> bool:
    """
    Disjointness of two disks.

    On the same sphere the circles are disjoint iff the partitions nest. On
    different spheres i and j, some piece of D' must sit inside the piece of D
    holding j (with j removed).
    """
    if d1.s != d2.s:
        raise GroundMismatch(f"ground sizes differ: {d1.s} vs {d2.s}")
    if d1.on == d2.on:
        return any(not (p & q) for p in d1.pieces() for q in d2.pieces())
    around = d1.piece_containing(d2.on) - {d2.on}
    return any(piece <= around for piece in d2.pieces())


def disk_sphere_disjoint(d: Disk, z: Split) -> bool:
    if d.s != z.s:
        raise GroundMismatch(f"ground sizes differ: {d.s} vs {z.s}")
    if not z.essential:
        raise InvalidSplit(f"{z} is not essential")
    away = z.piece_avoiding(d.on)
    return any(away <= piece for piece in d.pieces())


def cap_consistency_oracle(d: Disk, z: Split) -> bool:
    """z is disjoint from D iff it is disjoint from both capped cuffs of P(i, D)."""
    return all(is_nested(z, cuff.split) for cuff in pants_boundary(d.on, d))


@dataclass(frozen=True)
class GoodnessData:
    a_plus: int
    a_minus: int
    d_plus: Disk
    d_minus: Disk
    peripheral: Tuple[int, int]
    interior_boundary: Tuple[Split, Split]
    partial_boundary: FrozenSet[Split]
    full_boundary: FrozenSet[Split]

    def to_json(self) -> Dict[str, object]:
        s = self.d_plus.s
        spheres: List[Dict[str, object]] = []
        for label in (self.a_plus, self.a_minus, *self.peripheral):
            spheres.append({"split": canonicalize({label}, s).to_json(), "peripheral": True})
        for u in self.interior_boundary:
            spheres.append({"split": u.to_json(), "peripheral": False})
        return {
            "A_plus": self.a_plus,
            "A_minus": self.a_minus,
            "D_plus": self.d_plus.to_json(),
            "D_minus": self.d_minus.to_json(),
            "boundary": spheres,
        }


def _cap(d: Disk) -> Tuple[int, Split]:
    singles = [piece for piece in d.pieces() if len(piece) == 1]
    if len(singles) != 1:
        raise NotGood(NO_PERIPHERAL_CAP, str(d))
    (cap,) = singles[0]
    return cap, canonicalize(d.rest - singles[0], d.s)


def goodness(a_plus: int, a_minus: int, d_plus: Disk, d_minus: Disk) -> GoodnessData:
    """Boundary data of the union P(A+, D+) and P(A-, D-) for a candidate good sphere."""
    if d_plus.on != a_plus or d_minus.on != a_minus or a_plus == a_minus:
        raise LabelMismatch("disks must sit on the two distinct sides of the Y-sphere")
    if d_plus.s != d_minus.s:
        raise GroundMismatch("disks live over different ground sets")
    s = d_plus.s
    cap_plus, s3 = _cap(d_plus)
    cap_minus, s4 = _cap(d_minus)
    labels = {a_plus, a_minus, cap_plus, cap_minus}
    partial = frozenset(canonicalize({label}, s) for label in labels)
    full = partial | {s3, s4}
    if len(labels) != 4 or len(full) != 6:
        raise NotGood(COINCIDENT_SPHERES, f"caps {cap_plus},{cap_minus}")
    return GoodnessData(
        a_plus=a_plus,
        a_minus=a_minus,
        d_plus=d_plus,
        d_minus=d_minus,
        peripheral=(cap_plus, cap_minus),
        interior_boundary=(s3, s4),
        partial_boundary=partial,
        full_boundary=full,
    )


def good_pair_check(g1: GoodnessData, g2: GoodnessData) -> bool:
    if (g1.a_plus, g1.a_minus) != (g2.a_plus, g2.a_minus):
        raise LabelMismatch("good pair members must share the Y-sphere sides")
    s = g1.d_plus.s
    expected = {canonicalize({g1.a_plus}, s), canonicalize({g1.a_minus}, s)}
    if g1.full_boundary & g2.full_boundary != expected:
        return False
    return all(
        disks_disjoint(x, y)
        for x in (g1.d_plus, g1.d_minus)
        for y in (g2.d_plus, g2.d_minus)
    )
