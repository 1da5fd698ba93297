"""Linear codes of projective systems: weight distributions, minimum
distance, minimality and the Ashikhmin-Barg condition.

Two independent routes produce weight distributions.  ``message_enum``
forms every codeword ``mG`` (vectorised meet-in-the-middle over two halves
of the message) and counts nonzero entries.  ``hyperplane_count`` walks the
functional classes up to scalars with a compiled Gray-code kernel, counts
the points of the system on each hyperplane and converts zero counts into
weights.  The same kernel decides minimality: a codeword is minimal exactly
when the columns it vanishes on span a (K-1)-space.
"""

from __future__ import annotations

import logging
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from itertools import product
from typing import Any, Sequence

import numpy as np

from .embeddings import ProjectiveSystem
from .gf import GF
from .linalg import (
    EchelonBasis,
    EnumerationCapExceeded,
    as_matrix,
    combine,
    inverse,
    kernel,
    matmul,
    rank,
)

log = logging.getLogger(__name__)

#: Largest message space ``q**K`` enumerated codeword by codeword.
MESSAGE_CAP = 1 << 26
#: Largest number of functional classes ``(q**K - 1)/(q - 1)`` swept.
FUNCTIONAL_CAP = 1 << 22
#: Target number of classes handled by one kernel call.
CHUNK_CLASSES = 1 << 14
THREADS_ENV = "EMBCODES_THREADS"


def default_threads() -> int:
    try:
        return max(1, int(os.environ.get(THREADS_ENV, "1")))
    except ValueError:
        return 1


@dataclass(frozen=True, eq=False)
class LinearCode:
    """Code generated by the rows of ``generator`` (K x N, rank K)."""

    field: GF
    generator: np.ndarray
    source: Any = None
    _cache: dict = field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self):
        g = as_matrix(self.generator)
        g.setflags(write=False)
        object.__setattr__(self, "generator", g)

    @property
    def K(self) -> int:
        return self.generator.shape[0]

    @property
    def N(self) -> int:
        return self.generator.shape[1]

    @property
    def q(self) -> int:
        return self.field.q

    def encode(self, message) -> np.ndarray:
        m = np.asarray(message, dtype=np.int64).reshape(1, -1)
        if m.shape[1] != self.K:
            raise ValueError(f"message must have length {self.K}")
        return combine(self.field, m, self.generator)[0]


def code_from_system(sys: ProjectiveSystem) -> LinearCode:
    """Columns are the system's points, written in a basis of their span.

    When the points span the ambient space they are used as they are;
    otherwise the first K independent points (in index order) become the
    coordinate basis, so those points turn into unit columns.
    """
    F = sys.field
    pts = sys.points
    if not sys.is_injective:
        raise ValueError("projective system has repeated points")
    if sys.span_dim == sys.ambient_dim:
        return LinearCode(F, pts.T.copy())
    basis = EchelonBasis(F, sys.ambient_dim)
    chosen = []
    for i, row in enumerate(pts.tolist()):
        if basis.insert(row):
            chosen.append(i)
            if len(chosen) == sys.span_dim:
                break
    b = pts[chosen]  # K x D, rows independent
    k, d = b.shape
    aug = np.concatenate([b, np.eye(k, dtype=np.int64)], axis=1)
    from .linalg import _rref_lists

    red, pivots = _rref_lists(F, aug.tolist(), d + k)
    red = np.array(red, dtype=np.int64)
    change = red[:, d:]  # R = change @ b
    piv = pivots[:k]
    # p = p[piv] @ R = p[piv] @ change @ b
    coords = matmul(F, pts[:, piv], change)
    return LinearCode(F, coords.T.copy())


@dataclass(frozen=True)
class WeightDistribution:
    """Number of codewords of each weight; ``counts[0] == 1``."""

    counts: dict[int, int]
    q: int
    K: int
    N: int

    def __post_init__(self):
        object.__setattr__(self, "counts", {int(w): int(c) for w, c in sorted(self.counts.items()) if c})

    @property
    def total(self) -> int:
        return sum(self.counts.values())

    @property
    def weights(self) -> list[int]:
        return [w for w in self.counts if w > 0]

    @property
    def min_weight(self) -> int:
        return min(self.weights)

    @property
    def max_weight(self) -> int:
        return max(self.weights)

    def __getitem__(self, w: int) -> int:
        return self.counts.get(w, 0)

    def check(self) -> None:
        if self.counts.get(0) != 1:
            raise AssertionError("exactly one codeword of weight 0 expected")
        if self.total != self.q**self.K:
            raise AssertionError(f"counts sum to {self.total}, expected {self.q}^{self.K}")
        if max(self.counts) > self.N:
            raise AssertionError("weight exceeds the length")


# -- message enumeration ------------------------------------------------------

def _all_messages(q: int, k: int) -> np.ndarray:
    if k == 0:
        return np.zeros((1, 0), dtype=np.int64)
    return np.array(list(product(range(q), repeat=k)), dtype=np.int64)


def _word_dtype(q: int):
    return np.uint8 if q <= 256 else np.int64


def _message_enum(code: LinearCode, cap: int) -> WeightDistribution:
    F, q, K, N, G = code.field, code.q, code.K, code.N, code.generator
    if q**K > cap:
        raise EnumerationCapExceeded(f"{q}^{K} messages exceeds cap {cap}")
    k1 = K // 2
    dt = _word_dtype(q)
    low = combine(F, _all_messages(q, k1), G[:k1]).astype(dt) if k1 else np.zeros((1, N), dtype=dt)
    high = combine(F, _all_messages(q, K - k1), G[k1:]).astype(dt)
    hist = np.zeros(N + 1, dtype=np.int64)
    if F.p == 2:
        combine_rows = np.bitwise_xor
    elif F.h == 1:
        def combine_rows(a, b):
            s = a.astype(np.int16) + b
            s[s >= q] -= q
            return s
    else:
        table = F.add_table

        def combine_rows(a, b):
            return table[a, b]

    for b in high:
        words = combine_rows(low, b)
        hist += np.bincount(np.count_nonzero(words, axis=1), minlength=N + 1)
    return WeightDistribution(dict(enumerate(hist.tolist())), q, K, N)


# -- functional sweeps --------------------------------------------------------

@dataclass(frozen=True)
class SweepResult:
    """Outcome of a pass over all functional classes."""

    zero_counts: dict[int, int]  # |Omega cap H| -> number of hyperplanes H
    classes: int
    checked_minimality: bool
    non_minimal_classes: int = 0
    witness: tuple[int, ...] | None = None

    @property
    def minimal(self) -> bool:
        if not self.checked_minimality:
            raise ValueError("sweep did not test minimality")
        return self.non_minimal_classes == 0


def functional_classes(q: int, k: int) -> int:
    return (q**k - 1) // (q - 1)


def _chunks(q: int, k: int) -> list[tuple[np.ndarray, int]]:
    out = []
    for lead in range(k):
        tail = k - 1 - lead
        n_low = tail
        while n_low > 0 and q**n_low > CHUNK_CLASSES:
            n_low -= 1
        mids = tail - n_low
        for digits in product(range(q), repeat=mids):
            m0 = np.zeros(k, dtype=np.int64)
            m0[lead] = 1
            m0[lead + 1 : lead + 1 + mids] = digits
            out.append((m0, n_low))
    return out


def _key_to_vector(key: int, q: int, k: int) -> tuple[int, ...]:
    digits = []
    for _ in range(k):
        key, d = divmod(key, q)
        digits.append(d)
    return tuple(reversed(digits))


def hyperplane_sweep(
    code: LinearCode,
    check_minimality: bool = True,
    cap: int = FUNCTIONAL_CAP,
    threads: int | None = None,
) -> SweepResult:
    """Visit every functional class once; count zeros and (optionally) test spans.

    Chunks are independent; results are merged in chunk order, so the output
    does not depend on the number of worker threads.
    """
    F, q, K, N = code.field, code.q, code.K, code.N
    classes = functional_classes(q, K)
    if classes > cap:
        raise EnumerationCapExceeded(f"{classes} functional classes exceeds cap {cap}")
    key = ("sweep", check_minimality)
    cached = code._cache.get(key) or (code._cache.get(("sweep", True)) if not check_minimality else None)
    if cached is not None:
        return cached
    if not F.has_tables:
        raise EnumerationCapExceeded(f"sweeps need operation tables; {F!r} is too large")
    from ._kernels import sweep_chunk

    gt = np.ascontiguousarray(code.generator.T, dtype=np.int64)
    tables = (F.add_table, F.mul_table, F.neg_table, F.inv_table)
    chunks = _chunks(q, K)

    def run(chunk):
        m0, n_low = chunk
        return sweep_chunk(gt, *tables, F.p, m0, n_low, check_minimality)

    threads = threads or default_threads()
    if threads > 1 and len(chunks) > 1:
        with ThreadPoolExecutor(threads) as pool:
            results = list(pool.map(run, chunks))
    else:
        results = [run(c) for c in chunks]
    hist = np.zeros(N + 1, dtype=np.int64)
    fails, best = 0, -1
    for h, f, b in results:
        hist += h
        fails += int(f)
        if b >= 0 and (best < 0 or b < best):
            best = int(b)
    assert int(hist.sum()) == classes
    witness = _key_to_vector(best, q, K) if best >= 0 else None
    result = SweepResult(
        {z: int(c) for z, c in enumerate(hist.tolist()) if c}, classes, check_minimality, fails, witness
    )
    code._cache[key] = result
    return result


def weight_distribution(
    code: LinearCode,
    strategy: str = "message_enum",
    cap: int | None = None,
    threads: int | None = None,
) -> WeightDistribution:
    """Full weight distribution by ``message_enum`` or ``hyperplane_count``."""
    if strategy == "message_enum":
        dist = _message_enum(code, MESSAGE_CAP if cap is None else cap)
    elif strategy == "hyperplane_count":
        sweep = hyperplane_sweep(code, False, FUNCTIONAL_CAP if cap is None else cap, threads)
        counts = {0: 1}
        for z, c in sweep.zero_counts.items():
            counts[code.N - z] = counts.get(code.N - z, 0) + c * (code.q - 1)
        dist = WeightDistribution(counts, code.q, code.K, code.N)
    else:
        raise ValueError(f"unknown strategy {strategy!r}")
    dist.check()
    return dist


def minimum_distance(code: LinearCode, cap: int = FUNCTIONAL_CAP, threads: int | None = None) -> int:
    """``N`` minus the largest number of points on a hyperplane."""
    sweep = hyperplane_sweep(code, False, cap, threads)
    return code.N - max(sweep.zero_counts)


@dataclass(frozen=True)
class MinimalityResult:
    minimal: bool
    witness: tuple[int, ...] | None
    non_minimal_classes: int
    classes: int


def is_minimal_code(code: LinearCode, cap: int = FUNCTIONAL_CAP, threads: int | None = None) -> MinimalityResult:
    """Cutting-set test: every hyperplane section must span its hyperplane.

    On failure the witness is the lexicographically first normalised
    functional whose zero columns span less than a (K-1)-space.
    """
    sweep = hyperplane_sweep(code, True, cap, threads)
    return MinimalityResult(sweep.minimal, sweep.witness, sweep.non_minimal_classes, sweep.classes)


def zero_columns(code: LinearCode, message) -> np.ndarray:
    return np.flatnonzero(code.encode(message) == 0)


def is_minimal_codeword(code: LinearCode, message) -> bool:
    """Whether ``mG`` is determined up to scalars by its support.

    The zero message is rejected: its empty support makes the notion vacuous.
    """
    m = np.asarray(message, dtype=np.int64).reshape(-1)
    if not m.any():
        raise ValueError("minimality is not defined for the zero codeword")
    if code.K == 1:
        return True
    basis = EchelonBasis(code.field, code.K)
    for j in zero_columns(code, m):
        basis.insert(code.generator[:, j].tolist())
        if len(basis) == code.K - 1:
            return True
    return False


def ab_bound_satisfied(dist: WeightDistribution, q: int | None = None) -> bool:
    """``w_max / w_min < q / (q - 1)``, compared in integers."""
    q = dist.q if q is None else q
    if not dist.weights:
        raise ValueError("distribution has no nonzero weights")
    return dist.max_weight * (q - 1) < dist.min_weight * q


def alternating_functional(
    F: GF, s: np.ndarray, index: Sequence[tuple[int, ...]] | None = None
) -> np.ndarray:
    """Plücker-coordinate functional ``sum_{i<j} S[i,j] p_ij`` of an alternating matrix."""
    s = as_matrix(s)
    t = s.shape[0]
    pairs = index or [(i, j) for i in range(t) for j in range(i + 1, t)]
    return np.array([s[i, j] for i, j in pairs], dtype=np.int64)


def symplectic_minweight_predicate(F: GF, s, gram) -> bool:
    """Whether ``gram^-1 s`` has exactly two eigenspaces, of dimensions 2n-2 and 2.

    Eigenvalues are found by scanning the field for singular ``A - lambda I``.
    When the eigenspaces fail to fill the space (eigenvalues outside F_q)
    the predicate is false.
    """
    s, gram = as_matrix(s), as_matrix(gram)
    t = gram.shape[0]
    if s.shape != (t, t) or t % 2:
        raise ValueError("need square alternating matrices of even size")
    a = matmul(F, inverse(F, gram), s)
    dims = []
    for lam in range(F.q):
        shifted = a.copy()
        for i in range(t):
            shifted[i, i] = F.sub(int(shifted[i, i]), lam)
        d = t - rank(F, shifted)
        if d:
            dims.append(d)
    if sum(dims) < t:
        log.info("characteristic polynomial does not split over %r", F)
    return sorted(dims) == sorted([t - 2, 2])


def null_space(code: LinearCode):
    """Dual code as a subspace (parity checks)."""
    return kernel(code.field, code.generator)
