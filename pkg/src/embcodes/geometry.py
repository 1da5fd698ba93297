"""Abstract point-line geometries: collinearity, geometric hyperplanes, and
connectivity of hyperplane complements.

Points are the integers ``0 .. num_points-1``.  Point sets are passed around
either as iterables of indices or as python-int bitsets (bit ``i`` set when
point ``i`` is a member); adjacency rows are stored as bitsets too, so the
breadth-first search advances a whole frontier with a few big-int ORs.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Any, Iterable, Sequence


def to_mask(points: Iterable[int] | int) -> int:
    if isinstance(points, int):
        return points
    m = 0
    for i in points:
        m |= 1 << i
    return m


def mask_members(mask: int) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


@dataclass(frozen=True, eq=False)
class PointLineGeometry:
    """Points ``0..num_points-1`` and lines given as sorted tuples of points.

    ``payloads[i]``, when present, is the object point ``i`` stands for
    (a subspace, a pair of projective points, ...).
    """

    num_points: int
    lines: tuple[tuple[int, ...], ...]
    payloads: tuple[Any, ...] | None = None
    name: str = ""
    check: bool = field(default=True, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "lines", tuple(tuple(sorted(l)) for l in self.lines))
        if self.payloads is not None and len(self.payloads) != self.num_points:
            raise ValueError("payloads must be aligned with points")
        if self.check:
            self.validate()

    def validate(self) -> None:
        seen: set[tuple[int, int]] = set()
        for line in self.lines:
            if len(line) < 2:
                raise ValueError(f"line {line} has fewer than two points")
            if len(set(line)) != len(line):
                raise ValueError(f"line {line} repeats a point")
            if line[0] < 0 or line[-1] >= self.num_points:
                raise ValueError(f"line {line} uses an unknown point")
            for a in range(len(line)):
                for b in range(a + 1, len(line)):
                    pair = (line[a], line[b])
                    if pair in seen:
                        raise ValueError(f"points {pair} lie on two distinct lines")
                    seen.add(pair)

    @cached_property
    def line_masks(self) -> tuple[int, ...]:
        return tuple(to_mask(l) for l in self.lines)

    @cached_property
    def all_mask(self) -> int:
        return (1 << self.num_points) - 1

    @cached_property
    def adjacency(self) -> tuple[int, ...]:
        """Collinearity graph as one neighbour bitset per point."""
        rows = [0] * self.num_points
        for line, mask in zip(self.lines, self.line_masks):
            for p in line:
                rows[p] |= mask
        return tuple(r & ~(1 << i) for i, r in enumerate(rows))

    def line_sizes(self) -> set[int]:
        return {len(l) for l in self.lines}

    def lines_through(self, point: int) -> list[int]:
        return [i for i, m in enumerate(self.line_masks) if m >> point & 1]

    def to_text(self) -> str:
        """Dump as ``points N`` followed by one line of sorted indices per line."""
        out = [f"points {self.num_points}"]
        out.extend(" ".join(map(str, l)) for l in self.lines)
        return "\n".join(out) + "\n"

    @classmethod
    def from_text(cls, text: str, name: str = "") -> "PointLineGeometry":
        rows = [r.split() for r in text.splitlines() if r.strip()]
        if not rows or rows[0][0] != "points" or len(rows[0]) != 2:
            raise ValueError("geometry dump must start with 'points N'")
        n = int(rows[0][1])
        return cls(n, tuple(tuple(int(x) for x in r) for r in rows[1:]), name=name)


def collinearity_graph(g: PointLineGeometry) -> list[set[int]]:
    """Neighbour sets of the collinearity graph (no loops, symmetric)."""
    return [set(mask_members(row)) for row in g.adjacency]


def is_geometric_hyperplane(g: PointLineGeometry, h: Iterable[int] | int) -> bool:
    """Proper, non-empty point set meeting every line in one point or containing it."""
    hm = to_mask(h) & g.all_mask
    if hm == 0 or hm == g.all_mask:
        return False
    for lm in g.line_masks:
        meet = lm & hm
        if meet != lm and (meet == 0 or meet & (meet - 1)):
            return False
    return True


def complement_connected(g: PointLineGeometry, h: Iterable[int] | int) -> bool:
    """Whether the collinearity graph induced on the complement of ``h`` is connected.

    An empty complement counts as connected.
    """
    rest = g.all_mask & ~to_mask(h)
    if rest == 0:
        return True
    adj = g.adjacency
    start = rest & -rest
    seen = frontier = start
    while frontier:
        reach = 0
        f = frontier
        while f:
            low = f & -f
            reach |= adj[low.bit_length() - 1]
            f ^= low
        frontier = reach & rest & ~seen
        seen |= frontier
    return seen == rest


@dataclass(frozen=True)
class MaximalityReport:
    is_hyperplane: bool
    complement_connected: bool
    is_maximal: bool


def maximality_report(g: PointLineGeometry, h: Iterable[int] | int) -> MaximalityReport:
    """A hyperplane is maximal exactly when its complement is connected."""
    hm = to_mask(h)
    hyp = is_geometric_hyperplane(g, hm)
    conn = complement_connected(g, hm)
    return MaximalityReport(hyp, conn, hyp and conn)


def is_subspace(g: PointLineGeometry, h: Iterable[int] | int) -> bool:
    """Non-empty and containing every line it meets in two or more points."""
    hm = to_mask(h)
    if hm == 0:
        return False
    for lm in g.line_masks:
        meet = lm & hm
        if meet & (meet - 1) and meet != lm:
            return False
    return True


def points_on_common_line(g: PointLineGeometry, points: Sequence[int]) -> bool:
    target = to_mask(points)
    return any(lm & target == target for lm in g.line_masks)
