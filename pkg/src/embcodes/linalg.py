"""Dense linear algebra and subspace combinatorics over a :class:`~embcodes.gf.GF`.

Matrices are numpy integer arrays of field elements (their enumeration
indices) and every routine takes the field as its first argument.  The small
matrices met here are reduced with nested-list loops over the field's scalar
tables, which beats per-row numpy dispatch at these sizes.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import combinations, product
from math import comb
from typing import Iterable, Iterator, Sequence

import numpy as np

from .gf import GF

#: Default bound on the number of subspaces :func:`enumerate_subspaces` builds.
SUBSPACE_CAP = 1 << 20


class EnumerationCapExceeded(RuntimeError):
    """Raised when an exhaustive enumeration would exceed its configured cap."""


def as_matrix(rows) -> np.ndarray:
    m = np.asarray(rows, dtype=np.int64)
    if m.ndim == 1:
        m = m.reshape(1, -1) if m.size else m.reshape(0, 0)
    return m


def _rref_lists(F: GF, rows: list[list[int]], ncols: int) -> tuple[list[list[int]], list[int]]:
    add, mul, neg, inv = F.add, F.mul, F.neg, F.inv
    rows = [list(r) for r in rows]
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        s = inv(rows[r][c])
        if s != 1:
            rows[r] = [mul(s, x) for x in rows[r]]
        pr = rows[r]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                f = neg(rows[i][c])
                ri = rows[i]
                rows[i] = [add(x, mul(f, y)) if y else x for x, y in zip(ri, pr)]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows[:r], pivots


def rref(F: GF, m) -> tuple[np.ndarray, int]:
    """Reduced row echelon form of ``m`` (zero rows kept at the bottom) and its rank."""
    m = as_matrix(m)
    nrows, ncols = m.shape
    reduced, pivots = _rref_lists(F, m.tolist(), ncols)
    out = np.zeros((nrows, ncols), dtype=np.int64)
    if reduced:
        out[: len(reduced)] = reduced
    return out, len(pivots)


def rank(F: GF, m) -> int:
    m = as_matrix(m)
    if m.size == 0:
        return 0
    return len(_rref_lists(F, m.tolist(), m.shape[1])[1])


class EchelonBasis:
    """Incrementally grown echelon basis; used for spanning tests with early exit."""

    def __init__(self, F: GF, dim: int):
        self.F = F
        self.dim = dim
        self.rows: list[list[int]] = []
        self.pivots: list[int] = []

    def __len__(self) -> int:
        return len(self.rows)

    def reduce(self, v: Sequence[int]) -> list[int]:
        F = self.F
        v = [int(x) for x in v]
        for row, p in zip(self.rows, self.pivots):
            c = v[p]
            if c:
                f = F.neg(c)
                v = [F.add(x, F.mul(f, y)) if y else x for x, y in zip(v, row)]
        return v

    def insert(self, v: Sequence[int]) -> bool:
        """Add ``v``; return whether it enlarged the span."""
        v = self.reduce(v)
        p = next((i for i, x in enumerate(v) if x), None)
        if p is None:
            return False
        s = self.F.inv(v[p])
        self.rows.append([self.F.mul(s, x) for x in v])
        self.pivots.append(p)
        return True

    def contains(self, v: Sequence[int]) -> bool:
        return not any(self.reduce(v))


def span_dimension(F: GF, vectors: Iterable[Sequence[int]], stop_at: int | None = None) -> int:
    """Dimension of the span of ``vectors``; 0 for an empty collection.

    Stops reading vectors once ``stop_at`` (or the ambient dimension) is reached.
    """
    basis: EchelonBasis | None = None
    for v in vectors:
        if basis is None:
            basis = EchelonBasis(F, len(v))
            limit = basis.dim if stop_at is None else min(stop_at, basis.dim)
        basis.insert(v)
        if len(basis) >= limit:
            break
    return 0 if basis is None else len(basis)


@dataclass(frozen=True)
class Subspace:
    """A subspace of F^n stored by its (unique) reduced row echelon basis."""

    field: GF
    n: int
    basis: tuple[tuple[int, ...], ...]

    @property
    def dim(self) -> int:
        return len(self.basis)

    @cached_property
    def matrix(self) -> np.ndarray:
        if not self.basis:
            return np.zeros((0, self.n), dtype=np.int64)
        return np.array(self.basis, dtype=np.int64)

    @cached_property
    def pivots(self) -> tuple[int, ...]:
        return tuple(next(i for i, x in enumerate(r) if x) for r in self.basis)

    @classmethod
    def span(cls, F: GF, vectors, n: int | None = None) -> "Subspace":
        m = as_matrix(vectors)
        if n is None:
            n = m.shape[1]
        reduced, _ = _rref_lists(F, m.tolist(), n) if m.size else ([], [])
        return cls(F, n, tuple(tuple(r) for r in reduced))

    def vectors(self) -> np.ndarray:
        """All ``q**dim`` vectors of the subspace, in message order."""
        F = self.field
        if self.dim == 0:
            return np.zeros((1, self.n), dtype=np.int64)
        coeffs = np.array(list(product(range(F.q), repeat=self.dim)), dtype=np.int64)
        return combine(F, coeffs, self.matrix)

    def contains(self, v: Sequence[int]) -> bool:
        b = EchelonBasis(self.field, self.n)
        b.rows = [list(r) for r in self.basis]
        b.pivots = list(self.pivots)
        return b.contains(v)

    def __contains__(self, v) -> bool:
        return self.contains(v)

    def contains_subspace(self, other: "Subspace") -> bool:
        return all(self.contains(r) for r in other.basis)

    def __str__(self) -> str:
        return matrix_to_text(self.matrix)


def combine(F: GF, coeffs: np.ndarray, basis: np.ndarray) -> np.ndarray:
    """Row-wise linear combinations ``coeffs @ basis`` over F (vectorised)."""
    coeffs = np.atleast_2d(coeffs)
    out = np.zeros((coeffs.shape[0], basis.shape[1]), dtype=np.int64)
    for i in range(basis.shape[0]):
        out = F.add(out, F.mul(coeffs[:, i : i + 1], basis[i : i + 1, :]))
    return out


def matmul(F: GF, a, b) -> np.ndarray:
    a, b = as_matrix(a), as_matrix(b)
    if a.shape[1] != b.shape[0]:
        raise ValueError(f"shape mismatch {a.shape} x {b.shape}")
    return combine(F, a, b)


def kernel(F: GF, m) -> Subspace:
    """Right null space ``{v : m v = 0}``."""
    m = as_matrix(m)
    ncols = m.shape[1]
    reduced, pivots = _rref_lists(F, m.tolist(), ncols) if m.size else ([], [])
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [0] * ncols
        v[f] = 1
        for row, p in zip(reduced, pivots):
            v[p] = F.neg(row[f])
        basis.append(v)
    if not basis:
        return Subspace(F, ncols, ())
    return Subspace.span(F, basis, ncols)


def inverse(F: GF, m) -> np.ndarray:
    m = as_matrix(m)
    n = m.shape[0]
    if m.shape != (n, n):
        raise ValueError("matrix must be square")
    aug = np.concatenate([m, np.eye(n, dtype=np.int64)], axis=1)
    reduced, pivots = _rref_lists(F, aug.tolist(), 2 * n)
    if pivots[:n] != list(range(n)) or len(pivots) < n:
        raise ZeroDivisionError("matrix is singular")
    return np.array(reduced, dtype=np.int64)[:, n:]


def det(F: GF, m) -> int:
    """Determinant by elimination."""
    rows = as_matrix(m).tolist()
    n = len(rows)
    result = 1
    for c in range(n):
        piv = next((i for i in range(c, n) if rows[i][c]), None)
        if piv is None:
            return 0
        if piv != c:
            rows[c], rows[piv] = rows[piv], rows[c]
            result = F.neg(result)
        pc = rows[c][c]
        result = F.mul(result, pc)
        s = F.inv(pc)
        for i in range(c + 1, n):
            if rows[i][c]:
                f = F.neg(F.mul(rows[i][c], s))
                rows[i] = [F.add(x, F.mul(f, y)) for x, y in zip(rows[i], rows[c])]
    return result


def gaussian_binomial(n: int, k: int, q: int) -> int:
    """Exact q-binomial coefficient ``[n choose k]_q``."""
    if not 0 <= k <= n:
        raise ValueError(f"need 0 <= k <= n, got n={n}, k={k}")
    if q < 2:
        raise ValueError("q must be >= 2")
    num = den = 1
    for i in range(k):
        num *= q ** (n - i) - 1
        den *= q ** (i + 1) - 1
    return num // den


def iter_subspaces(F: GF, n: int, k: int) -> Iterator[Subspace]:
    """All k-subspaces of F^n: pivot patterns lexicographically, then free entries."""
    q = F.q
    for pivots in combinations(range(n), k):
        pivset = set(pivots)
        free = [(i, c) for i, p in enumerate(pivots) for c in range(p + 1, n) if c not in pivset]
        for values in product(range(q), repeat=len(free)):
            rows = [[0] * n for _ in range(k)]
            for i, p in enumerate(pivots):
                rows[i][p] = 1
            for (i, c), v in zip(free, values):
                rows[i][c] = v
            yield Subspace(F, n, tuple(tuple(r) for r in rows))


def enumerate_subspaces(F: GF, n: int, k: int, cap: int = SUBSPACE_CAP) -> list[Subspace]:
    total = gaussian_binomial(n, k, F.q)
    if total > cap:
        raise EnumerationCapExceeded(f"[{n} {k}]_{F.q} = {total} subspaces exceeds cap {cap}")
    return list(iter_subspaces(F, n, k))


def projective_points(F: GF, n: int) -> np.ndarray:
    """Normalised representatives of the points of PG(n-1, q), in enumeration order."""
    return np.array([s.basis[0] for s in iter_subspaces(F, n, 1)], dtype=np.int64)


def normalize(F: GF, v) -> np.ndarray:
    """Scale ``v`` so that its first nonzero entry is 1."""
    v = np.asarray(v, dtype=np.int64)
    nz = np.flatnonzero(v)
    if nz.size == 0:
        raise ValueError("cannot normalise the zero vector")
    lead = int(v[nz[0]])
    return v if lead == 1 else F.mul(F.inv(lead), v)


def normalize_rows(F: GF, m: np.ndarray) -> np.ndarray:
    m = np.asarray(m, dtype=np.int64)
    nonzero = m != 0
    if not nonzero.any(axis=1).all():
        raise ValueError("cannot normalise a zero row")
    lead = m[np.arange(m.shape[0]), nonzero.argmax(axis=1)]
    return F.mul(F.inv(lead)[:, None], m)


def plucker(F: GF, s: Subspace | np.ndarray, normalized: bool = True) -> np.ndarray:
    """All k x k minors of a basis, column subsets in lexicographic order."""
    basis = s.matrix if isinstance(s, Subspace) else as_matrix(s)
    k, n = basis.shape
    if k < 1:
        raise ValueError("Plücker coordinates need a subspace of dimension >= 1")
    if k == 1:
        out = basis[0].copy()
    else:
        out = np.array([det(F, basis[:, cols]) for cols in combinations(range(n), k)], dtype=np.int64)
    if not out.any():
        raise ValueError("basis rows are linearly dependent")
    return normalize(F, out) if normalized else out


def plucker_index(n: int, k: int) -> list[tuple[int, ...]]:
    """Column subsets labelling Plücker coordinates, in coordinate order."""
    return list(combinations(range(n), k))


def matrix_to_text(m) -> str:
    """One row per line, entries as element indices separated by spaces."""
    return "\n".join(" ".join(str(int(x)) for x in row) for row in as_matrix(m))


def matrix_from_text(text: str) -> np.ndarray:
    rows = [[int(x) for x in line.split()] for line in text.splitlines() if line.strip()]
    if len({len(r) for r in rows}) > 1:
        raise ValueError("ragged matrix text")
    return as_matrix(rows)


def dimension_count(n: int, k: int) -> int:
    """Number of Plücker coordinates, ``C(n, k)``."""
    return comb(n, k)
