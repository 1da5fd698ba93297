"""Compiled inner loops for sweeps over functional classes.

A chunk fixes the leading coordinate of the functional to 1 (earlier ones
to 0) together with some middle coordinates, and walks the last ``n_low``
coordinates in p-ary Gray order.  Each coordinate is read as ``h`` base-p
digits (the additive group of F_{p^h}); step ``t`` adds ``x^(v mod h)`` to
coordinate ``K-1-v//h`` where ``v`` is the number of trailing base-p zeros of
``t``.  Each step therefore updates the running codeword with a single
scaled row of the generator matrix.
"""

from __future__ import annotations

import numpy as np
from numba import njit


@njit(cache=True, nogil=True)
def sweep_chunk(gt, add, mul, neg, inv, char, m0, n_low, check_rank):
    """Sweep one chunk of functional classes.

    ``gt`` is the transposed generator matrix (N x K).  Returns the histogram
    of zero counts (length N+1), the number of classes whose zero columns do
    not span a (K-1)-space, and the smallest lexicographic key among them
    (-1 when there is none).  ``char`` is the field characteristic.  Keys
    read the functional as a base-q integer, first coordinate most
    significant.
    """
    n, k = gt.shape
    q = add.shape[0]
    m = m0.copy()
    c = np.zeros(n, dtype=np.int64)
    for i in range(k):
        if m[i] != 0:
            for j in range(n):
                c[j] = add[c[j], mul[m[i], gt[j, i]]]
    hist = np.zeros(n + 1, dtype=np.int64)
    fails = 0
    best = np.int64(-1)
    basis = np.zeros((k, k), dtype=np.int64)
    piv = np.zeros(k, dtype=np.int64)
    v = np.zeros(k, dtype=np.int64)
    h = 0
    e = 1
    while e < q:
        e *= char
        h += 1
    pw = np.ones(h, dtype=np.int64)
    for i in range(1, h):
        pw[i] = pw[i - 1] * char
    total = 1
    for _ in range(n_low):
        total *= q
    for t in range(total):
        if t > 0:
            s = t
            dig = 0
            while s % char == 0:
                s //= char
                dig += 1
            pos = k - 1 - dig // h
            e = pw[dig % h]
            m[pos] = add[m[pos], e]
            for j in range(n):
                c[j] = add[c[j], mul[e, gt[j, pos]]]
        zeros = 0
        for j in range(n):
            if c[j] == 0:
                zeros += 1
        hist[zeros] += 1
        if check_rank and k > 1:
            r = 0
            for j in range(n):
                if c[j] != 0:
                    continue
                for x in range(k):
                    v[x] = gt[j, x]
                for b in range(r):
                    pv = v[piv[b]]
                    if pv != 0:
                        f = neg[pv]
                        for x in range(k):
                            if basis[b, x] != 0:
                                v[x] = add[v[x], mul[f, basis[b, x]]]
                p = -1
                for x in range(k):
                    if v[x] != 0:
                        p = x
                        break
                if p < 0:
                    continue
                sc = inv[v[p]]
                for x in range(k):
                    basis[r, x] = mul[sc, v[x]]
                piv[r] = p
                r += 1
                if r == k - 1:
                    break
            if r < k - 1:
                fails += 1
                key = np.int64(0)
                for x in range(k):
                    key = key * q + m[x]
                if best < 0 or key < best:
                    best = key
    return hist, fails, best
