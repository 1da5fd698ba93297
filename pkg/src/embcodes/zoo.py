"""Concrete point-line geometries: Grassmannians, polar Grassmannians,
Segre geometries and the point-hyperplane geometry of a projective space.

Every constructor returns a :class:`~embcodes.geometry.PointLineGeometry`
whose payloads record what each point is, in a fixed enumeration order.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable

import numpy as np

from .geometry import PointLineGeometry
from .gf import GF
from .linalg import (
    SUBSPACE_CAP,
    EnumerationCapExceeded,
    Subspace,
    combine,
    gaussian_binomial,
    iter_subspaces,
)

FORM_KINDS = ("alternating", "quadratic_parabolic", "quadratic_hyperbolic", "hermitian")


@dataclass(frozen=True, eq=False)
class FormSpec:
    """A non-degenerate reflexive form in hyperbolic-pair normal form.

    ``gram`` is the Gram matrix of the bilinear (alternating), polar
    (quadratic) or sesquilinear (hermitian) form.  Quadratic kinds also carry
    ``quad``, the upper-triangular coefficients of ``Q(x) = sum quad[i,j] x_i x_j``.
    """

    kind: str
    dim: int
    field: GF
    witt_index: int
    gram: np.ndarray
    quad: np.ndarray | None = None

    def conj(self, x):
        return self.field.conj(x) if self.kind == "hermitian" else x

    def pairing(self, u, v) -> np.ndarray:
        """Form values ``f(u_r, v_r)`` for matching rows of ``u`` and ``v``."""
        F = self.field
        u = np.atleast_2d(u)
        v = self.conj(np.atleast_2d(v))
        out = np.zeros(max(u.shape[0], v.shape[0]), dtype=np.int64)
        for i, j in zip(*np.nonzero(self.gram)):
            out = F.add(out, F.mul(F.mul(u[:, i], int(self.gram[i, j])), v[:, j]))
        return out

    def quadratic(self, x) -> np.ndarray:
        if self.quad is None:
            raise ValueError(f"{self.kind} form has no quadratic form")
        F = self.field
        x = np.atleast_2d(x)
        out = np.zeros(x.shape[0], dtype=np.int64)
        for i, j in zip(*np.nonzero(self.quad)):
            out = F.add(out, F.mul(F.mul(x[:, i], int(self.quad[i, j])), x[:, j]))
        return out


def standard_form(kind: str, dim: int, F: GF) -> FormSpec:
    """Form on F^dim with hyperbolic pairs ``(e1,e2), (e3,e4), ...``.

    ``dim`` is the vector dimension: ``2n`` for alternating and hyperbolic
    quadratic forms, ``2n+1`` for parabolic quadratic forms, and any ``m >= 2``
    for hermitian forms (over a field of square order).
    """
    if kind not in FORM_KINDS:
        raise ValueError(f"unknown form kind {kind!r}")
    gram = np.zeros((dim, dim), dtype=np.int64)
    quad = None
    if kind in ("alternating", "quadratic_hyperbolic"):
        if dim < 2 or dim % 2:
            raise ValueError(f"{kind} forms need even dimension, got {dim}")
    elif kind == "quadratic_parabolic":
        if dim < 3 or dim % 2 == 0:
            raise ValueError(f"parabolic quadratic forms need odd dimension >= 3, got {dim}")
    elif kind == "hermitian":
        if dim < 2:
            raise ValueError("hermitian forms need dimension >= 2")
        if F.h % 2:
            raise ValueError(f"hermitian forms need a field of square order, got {F!r}")
    n = dim // 2
    for i in range(n):
        a, b = 2 * i, 2 * i + 1
        if kind == "alternating":
            gram[a, b], gram[b, a] = 1, F.neg(1)
        else:
            gram[a, b] = gram[b, a] = 1
    if kind.startswith("quadratic"):
        quad = np.zeros((dim, dim), dtype=np.int64)
        for i in range(n):
            quad[2 * i, 2 * i + 1] = 1
        if kind == "quadratic_parabolic":
            quad[dim - 1, dim - 1] = 1
            gram[dim - 1, dim - 1] = F.add(1, 1)
    if kind == "hermitian" and dim % 2:
        gram[dim - 1, dim - 1] = 1
    form = FormSpec(kind, dim, F, n, gram, quad)
    witness = Subspace(F, dim, tuple(tuple(int(c == 2 * i) for c in range(dim)) for i in range(n)))
    if not is_totally_isotropic(witness, form):
        raise AssertionError("standard form lost its maximal totally isotropic subspace")
    return form


def is_totally_isotropic(s: Subspace, f: FormSpec) -> bool:
    """Whether the form vanishes identically on ``s``.

    Quadratic forms in characteristic 2 are evaluated on every vector of ``s``;
    otherwise basis values and pairwise polar values are checked.
    """
    if s.n != f.dim:
        raise ValueError(f"subspace lives in dimension {s.n}, form in {f.dim}")
    if s.dim == 0:
        return True
    b = s.matrix
    k = s.dim
    if f.quad is not None:
        if f.field.p == 2:
            return not f.quadratic(s.vectors()).any()
        if f.quadratic(b).any():
            return False
        if k == 1:
            return True
    iu, ju = np.triu_indices(k, 0 if f.kind == "hermitian" else 1)
    return not f.pairing(b[iu], b[ju]).any()


def witt_index_by_search(f: FormSpec, cap: int = SUBSPACE_CAP) -> int:
    """Largest dimension of a totally isotropic subspace, by exhaustive search."""
    best = 0
    for k in range(1, f.dim + 1):
        if gaussian_binomial(f.dim, k, f.field.q) > cap:
            raise EnumerationCapExceeded("Witt index search exceeds the cap")
        if any(is_totally_isotropic(s, f) for s in iter_subspaces(f.field, f.dim, k)):
            best = k
        else:
            break
    return best


# -- constructors -------------------------------------------------------------

@lru_cache(maxsize=None)
def _local_template(F: GF, k: int) -> tuple[list[Subspace], list[tuple[int, ...]]]:
    """k-subspaces of F^(k+1) and, per (k-1)-subspace, those containing it."""
    tops = list(iter_subspaces(F, k + 1, k))
    lines = []
    for w in iter_subspaces(F, k + 1, k - 1):
        lines.append(tuple(i for i, z in enumerate(tops) if z.contains_subspace(w)))
    return tops, lines


def _image(F: GF, local: Subspace, frame: Subspace) -> Subspace:
    return Subspace.span(F, combine(F, local.matrix, frame.matrix), frame.n)


def _lines_via_frames(F: GF, points: list[Subspace], frames: Iterable[Subspace], k: int):
    index = {p.basis: i for i, p in enumerate(points)}
    tops, template = _local_template(F, k)
    lines = []
    for t in frames:
        glob = [index[_image(F, z, t).basis] for z in tops]
        lines.extend(tuple(sorted(glob[i] for i in tl)) for tl in template)
    return lines


def _lines_via_residues(F: GF, points: list[Subspace], k: int):
    """Lines {X : X > W} for each (k-1)-subspace W lying in at least two points."""
    groups: dict[tuple, list[int]] = {}
    locals_ = list(iter_subspaces(F, k, k - 1))
    for i, x in enumerate(points):
        for w in locals_:
            groups.setdefault(_image(F, w, x).basis, []).append(i)
    return [tuple(sorted(g)) for g in groups.values() if len(g) >= 2]


def _check_cap(count: int, cap: int, what: str) -> None:
    if count > cap:
        raise EnumerationCapExceeded(f"{what}: {count} objects exceeds cap {cap}")


def grassmann_geometry(n: int, k: int, F: GF, cap: int = SUBSPACE_CAP) -> PointLineGeometry:
    """k-subspaces of F^n with lines {X : W < X < T}, dim W = k-1, dim T = k+1."""
    if not 1 <= k <= n - 1:
        raise ValueError(f"need 1 <= k <= n-1, got n={n}, k={k}")
    _check_cap(gaussian_binomial(n, k, F.q), cap, "Grassmann points")
    points = list(iter_subspaces(F, n, k))
    lines = _lines_via_frames(F, points, iter_subspaces(F, n, k + 1), k)
    return PointLineGeometry(len(points), tuple(lines), tuple(points), f"G({n},{k}) over {F!r}", check=False)


def projective_space(F: GF, vdim: int) -> PointLineGeometry:
    """PG(vdim-1, q) as a point-line geometry (payloads are normalised vectors)."""
    g = grassmann_geometry(vdim, 1, F)
    return PointLineGeometry(
        g.num_points, g.lines, tuple(p.basis[0] for p in g.payloads), f"PG({vdim - 1},{F.q})", check=False
    )


def polar_grassmannian(f: FormSpec, k: int, cap: int = SUBSPACE_CAP) -> PointLineGeometry:
    """Totally isotropic k-subspaces of ``f``.

    For ``k`` below the Witt index the lines are the ``{X : W < X < T}`` with ``T``
    totally isotropic of dimension ``k+1``; for ``k`` equal to it (dual polar
    space) the lines are the generators through a fixed isotropic
    ``(k-1)``-subspace.
    """
    n = f.witt_index
    if not 1 <= k <= n:
        raise ValueError(f"need 1 <= k <= Witt index {n}, got k={k}")
    F = f.field
    _check_cap(gaussian_binomial(f.dim, k, F.q), cap, "candidate subspaces")
    points = [s for s in iter_subspaces(F, f.dim, k) if is_totally_isotropic(s, f)]
    if k < n:
        frames = (t for t in iter_subspaces(F, f.dim, k + 1) if is_totally_isotropic(t, f))
        lines = _lines_via_frames(F, points, frames, k)
    elif k == 1:
        lines = []
    else:
        lines = _lines_via_residues(F, points, k)
    name = f"polar({f.kind},dim={f.dim},k={k}) over {F!r}"
    return PointLineGeometry(len(points), tuple(lines), tuple(points), name, check=False)


def segre_geometry(m: int, n: int, F: GF) -> PointLineGeometry:
    """PG(m,q) x PG(n,q) with lines {p1} x l2 and l1 x {p2}.

    Point ``(i, j)`` has index ``i * |PG(n,q)| + j``; payloads are vector pairs.
    """
    if m < 1 or n < 1:
        raise ValueError("Segre factors need dimension >= 1")
    g1, g2 = projective_space(F, m + 1), projective_space(F, n + 1)
    n1, n2 = g1.num_points, g2.num_points
    lines = [tuple(i * n2 + j for j in l2) for i in range(n1) for l2 in g2.lines]
    lines += [tuple(i * n2 + j for i in l1) for j in range(n2) for l1 in g1.lines]
    payloads = tuple((g1.payloads[i], g2.payloads[j]) for i in range(n1) for j in range(n2))
    return PointLineGeometry(n1 * n2, tuple(lines), payloads, f"S({m},{n}) over {F!r}", check=False)


def point_hyperplane_geometry(n: int, F: GF) -> PointLineGeometry:
    """Incident (point, hyperplane) flags of PG(n,q).

    Flags are ordered by point, then by hyperplane; hyperplanes are named by
    normalised functionals.  Payloads are ``(x, xi)`` vector pairs with ``xi(x) = 0``.
    """
    if n < 2:
        raise ValueError("point-hyperplane geometry needs n >= 2")
    pg = projective_space(F, n + 1)
    vecs = np.array(pg.payloads, dtype=np.int64)
    # incidence[i, j]: point i lies on the hyperplane with functional j
    incidence = np.zeros((len(vecs), len(vecs)), dtype=bool)
    for i, x in enumerate(vecs):
        incidence[i] = combine(F, vecs, x.reshape(-1, 1)).ravel() == 0
    flags = [(i, j) for i in range(len(vecs)) for j in range(len(vecs)) if incidence[i, j]]
    index = {f: t for t, f in enumerate(flags)}
    lines = []
    for j in range(len(vecs)):
        for r in pg.lines:
            if all(incidence[i, j] for i in r):
                lines.append(tuple(sorted(index[i, j] for i in r)))
    for i in range(len(vecs)):
        for d in pg.lines:  # pencils of functionals, i.e. hyperplanes through a codim-2 space
            if all(incidence[i, j] for j in d):
                lines.append(tuple(sorted(index[i, j] for j in d)))
    payloads = tuple((pg.payloads[i], pg.payloads[j]) for i, j in flags)
    return PointLineGeometry(len(flags), tuple(lines), payloads, f"PH({n}) over {F!r}", check=False)
