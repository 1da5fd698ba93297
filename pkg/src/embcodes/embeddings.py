"""Projective systems obtained by embedding point-line geometries.

A :class:`ProjectiveSystem` keeps its points index-aligned with the source
geometry: ``system.points[i]`` is the image of geometry point ``i``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .geometry import PointLineGeometry
from .gf import GF, field_of_order
from .linalg import Subspace, as_matrix, combine, normalize_rows, plucker, span_dimension


@dataclass(frozen=True, eq=False)
class ProjectiveSystem:
    """Normalised nonzero vectors of F^ambient_dim, one row per point."""

    field: GF
    points: np.ndarray

    def __post_init__(self):
        pts = as_matrix(self.points)
        if pts.ndim != 2 or pts.shape[0] == 0:
            raise ValueError("a projective system needs at least one point")
        if not (pts != 0).any(axis=1).all():
            raise ValueError("projective points must be nonzero")
        pts = normalize_rows(self.field, pts)
        pts.setflags(write=False)
        object.__setattr__(self, "points", pts)

    @property
    def ambient_dim(self) -> int:
        return self.points.shape[1]

    @property
    def num_points(self) -> int:
        return self.points.shape[0]

    @cached_property
    def span_dim(self) -> int:
        return span_dimension(self.field, self.points.tolist())

    @cached_property
    def is_injective(self) -> bool:
        return len({row.tobytes() for row in self.points}) == self.num_points

    def to_text(self) -> str:
        """``ambient D points N q Q`` header, then one vector per line."""
        head = f"ambient {self.ambient_dim} points {self.num_points} q {self.field.q}"
        body = "\n".join(" ".join(map(str, row)) for row in self.points.tolist())
        return head + "\n" + body + "\n"

    @classmethod
    def from_text(cls, text: str) -> "ProjectiveSystem":
        rows = [r.split() for r in text.splitlines() if r.strip() and not r.lstrip().startswith("#")]
        if not rows:
            raise ValueError("empty system file")
        head = rows[0]
        if len(head) != 6 or head[0::2] != ["ambient", "points", "q"]:
            raise ValueError("system file must start with 'ambient D points N q Q'")
        d, n, q = int(head[1]), int(head[3]), int(head[5])
        vecs = [[int(x) for x in r] for r in rows[1:]]
        if len(vecs) != n or any(len(v) != d for v in vecs):
            raise ValueError(f"expected {n} vectors of length {d}")
        F = field_of_order(q)
        if any(not 0 <= x < q for v in vecs for x in v):
            raise ValueError(f"entries must be field indices in [0, {q})")
        return cls(F, np.array(vecs, dtype=np.int64))


@dataclass(frozen=True)
class EmbeddingReport:
    injective: bool
    spans_ambient: bool
    lines_to_lines: bool
    effective_dimension: int


def grassmann_embedding(g: PointLineGeometry) -> ProjectiveSystem:
    """Plücker image of a geometry whose payloads are subspaces."""
    if not g.payloads or not isinstance(g.payloads[0], Subspace):
        raise ValueError("Grassmann embedding needs subspace payloads")
    F = g.payloads[0].field
    return ProjectiveSystem(F, np.array([plucker(F, s) for s in g.payloads], dtype=np.int64))


def _tensor_rows(F: GF, left: np.ndarray, right: np.ndarray) -> np.ndarray:
    # row r: left[r] (x) right[r], flattened with the right index fastest
    return F.mul(left[:, :, None], right[:, None, :]).reshape(left.shape[0], -1)


def _check_sigma(F: GF, j: int) -> None:
    if not 0 <= j < F.h:
        raise ValueError(f"Frobenius exponent must lie in [0, {F.h}), got {j}")


def segre_embedding(g: PointLineGeometry, F: GF, sigma: int = 0) -> ProjectiveSystem:
    """``([p], [r]) -> [p (x) r^sigma]`` with ``sigma: x -> x^(p^j)``."""
    _check_sigma(F, sigma)
    left = np.array([a for a, _ in g.payloads], dtype=np.int64)
    right = np.array([b for _, b in g.payloads], dtype=np.int64)
    return ProjectiveSystem(F, _tensor_rows(F, left, F.frobenius(right, sigma)))


def point_hyperplane_embedding(g: PointLineGeometry, F: GF, sigma: int = 0) -> ProjectiveSystem:
    """Flag ``(x, xi) -> [x (x) xi^sigma]``, read as a row-major square matrix.

    The functional ``xi`` is normalised (first nonzero entry 1) before twisting.
    """
    _check_sigma(F, sigma)
    x = np.array([a for a, _ in g.payloads], dtype=np.int64)
    xi = normalize_rows(F, np.array([b for _, b in g.payloads], dtype=np.int64))
    return ProjectiveSystem(F, _tensor_rows(F, x, F.frobenius(xi, sigma)))


def trace_of_image(F: GF, vec, n1: int) -> int:
    """Trace of a flattened ``n1 x n1`` matrix."""
    m = np.asarray(vec).reshape(n1, n1)
    t = 0
    for i in range(n1):
        t = F.add(t, int(m[i, i]))
    return t


def validate_embedding(g: PointLineGeometry, sys: ProjectiveSystem) -> EmbeddingReport:
    """Injectivity, spanning, and whether every line fills a projective line."""
    if sys.num_points != g.num_points:
        raise ValueError("system is not aligned with the geometry")
    F, pts = sys.field, sys.points.tolist()
    full_line = F.q + 1
    lines_ok = True
    for line in g.lines:
        if len(line) != full_line or span_dimension(F, (pts[i] for i in line)) != 2:
            lines_ok = False
            break
    return EmbeddingReport(
        injective=sys.is_injective,
        spans_ambient=sys.span_dim == sys.ambient_dim,
        lines_to_lines=lines_ok and sys.is_injective,
        effective_dimension=sys.span_dim,
    )


def hyperplane_preimage(sys: ProjectiveSystem, functional) -> frozenset[int]:
    """Indices of the points on the hyperplane ``functional . x = 0``."""
    f = np.asarray(functional, dtype=np.int64).reshape(-1)
    if f.shape[0] != sys.ambient_dim:
        raise ValueError(f"functional has length {f.shape[0]}, ambient dimension is {sys.ambient_dim}")
    if not f.any():
        raise ValueError("the zero functional defines no hyperplane")
    values = combine(sys.field, sys.points, f.reshape(-1, 1)).ravel()
    return frozenset(np.flatnonzero(values == 0).tolist())


def same_point_set(a: ProjectiveSystem, b: ProjectiveSystem) -> bool:
    return {r.tobytes() for r in a.points} == {r.tobytes() for r in b.points}


