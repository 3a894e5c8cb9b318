"""Compiled twin of the elimination-based NICG decider.

The search engine burns millions of these tests; the numba kernel runs the
same fraction-free elimination + bounded enumeration as
``nicg._is_nicg_gauss_masks`` on int64 arrays.  int64 is safe for the guarded
range (d <= 10, n <= 24): Bareiss intermediates are minors of a 0/1 matrix
with one count column, far below 2^63.  Import failure or an out-of-range
instance silently falls back to the pure-Python twin.
"""

from __future__ import annotations

from typing import Sequence

import numpy as np

from .nicg import _is_nicg_gauss_masks

FAST_DIM_MAX = 10
FAST_SET_MAX = 24

try:
    from numba import njit

    HAVE_NUMBA = True
except Exception:  # pragma: no cover - environment without numba
    njit = None
    HAVE_NUMBA = False


if HAVE_NUMBA:

    @njit(cache=True)
    def _kernel(masks, n, d):  # pragma: no cover - exercised via wrapper
        a = np.zeros((d, n + 1), dtype=np.int64)
        bsum = np.zeros(d, dtype=np.int64)
        for i in range(d):
            s = 0
            for j in range(n):
                bit = (masks[j] >> i) & np.int64(1)
                a[i, j] = bit
                s += bit
            a[i, n] = s
            bsum[i] = s

        prev = np.int64(1)
        rank = 0
        rowof = np.full(n, -1, dtype=np.int64)
        for c in range(n):
            pr = -1
            for i in range(rank, d):
                if a[i, c] != 0:
                    pr = i
                    break
            if pr < 0:
                continue
            if pr != rank:
                for j in range(n + 1):
                    t = a[rank, j]
                    a[rank, j] = a[pr, j]
                    a[pr, j] = t
            p = a[rank, c]
            for i in range(rank + 1, d):
                f = a[i, c]
                for j in range(c, n + 1):
                    a[i, j] = (p * a[i, j] - f * a[rank, j]) // prev
            prev = p
            rowof[c] = rank
            rank += 1
            if rank == d:
                break
        if n == rank:
            return True

        bound = np.empty(n, dtype=np.int64)
        for j in range(n):
            bb = np.int64(n)
            m = masks[j]
            for i in range(d):
                if (m >> i) & np.int64(1) and bsum[i] < bb:
                    bb = bsum[i]
            bound[j] = bb

        val = np.zeros(n, dtype=np.int64)
        idx = 0
        forward = True
        while True:
            if idx == n:
                for j in range(n):
                    if val[j] == 0:
                        return False
                forward = False
                idx -= 1
                continue
            if idx < 0:
                return True
            c = n - 1 - idx
            rr = rowof[c]
            if rr >= 0:
                if forward:
                    s = a[rr, n]
                    for j in range(c + 1, n):
                        if a[rr, j] != 0:
                            s -= a[rr, j] * val[j]
                    p = a[rr, c]
                    if p < 0:
                        p = -p
                        s = -s
                    if s < 0 or s % p != 0 or s // p > bound[c]:
                        forward = False
                        idx -= 1
                        continue
                    val[c] = s // p
                    idx += 1
                else:
                    idx -= 1
            else:
                if forward:
                    val[c] = 0
                    idx += 1
                elif val[c] < bound[c]:
                    val[c] += 1
                    forward = True
                    idx += 1
                else:
                    idx -= 1


if HAVE_NUMBA:

    @njit(cache=True)
    def _filter_kernel(cands, nc, xbuf, nx, qpiv, qmat, nq, d, flags):
        """Verdicts for every candidate next to the set in xbuf[:nx].

        flags[t]: 0 = extension not NICG, 1 = NICG (dependent column,
        decided by elimination), 2 = NICG (independent column, inherited).
        The echelon residue is gcd-normalized after every row step so the
        intermediate values stay far below the int64 range.
        """
        v = np.empty(d, dtype=np.int64)
        for t in range(nc):
            c = cands[t]
            for i in range(d):
                v[i] = (c >> i) & np.int64(1)
            for r in range(nq):
                piv = qpiv[r]
                if v[piv] != 0:
                    p = qmat[r, piv]
                    f = v[piv]
                    for j in range(d):
                        v[j] = p * v[j] - f * qmat[r, j]
                    g = np.int64(0)
                    for j in range(d):
                        a = v[j]
                        if a < 0:
                            a = -a
                        while a != 0:
                            g, a = a, g % a
                    if g > 1:
                        for j in range(d):
                            v[j] = v[j] // g
            indep = False
            for j in range(d):
                if v[j] != 0:
                    indep = True
                    break
            if indep:
                flags[t] = 2
            else:
                xbuf[nx] = c
                flags[t] = 1 if _kernel(xbuf, nx + 1, d) else 0


class GaussTester:
    """Per-run NICG tester with a reusable scratch buffer.

    ``filter_batch`` evaluates all candidates of one search node in a single
    compiled call; ``__call__`` tests one set.  Both fall back to the pure
    twin outside the guarded (d, n) range or without numba.
    """

    def __init__(self, d: int, force_pure: bool = False):
        self.d = d
        self.fast = HAVE_NUMBA and not force_pure and d <= FAST_DIM_MAX
        self.backend = "gauss-compiled" if self.fast else "gauss-python"
        if self.fast:
            self._scratch = np.zeros(FAST_SET_MAX, dtype=np.int64)
            self._cands = np.zeros(1 << d, dtype=np.int64)
            self._flags = np.zeros(1 << d, dtype=np.int8)
            self._qpiv = np.zeros(d, dtype=np.int64)
            self._qmat = np.zeros((d, d), dtype=np.int64)

    def __call__(self, masks: Sequence[int]) -> bool:
        n = len(masks)
        if self.fast and n <= FAST_SET_MAX:
            buf = self._scratch
            for i in range(n):
                buf[i] = masks[i]
            return bool(_kernel(buf, n, self.d))
        return _is_nicg_gauss_masks(masks, self.d)

    def filter_batch(self, x, qrows, cands):
        """flags per candidate (0 fail, 1 NICG-dependent, 2 NICG-independent),
        or None when this instance cannot take the compiled path."""
        nx = len(x)
        if not self.fast or nx + 1 > FAST_SET_MAX or len(qrows) > self.d:
            return None
        buf = self._scratch
        for i, m in enumerate(x):
            buf[i] = m
        qpiv, qmat = self._qpiv, self._qmat
        for r, (piv, row) in enumerate(qrows):
            qpiv[r] = piv
            for j in range(self.d):
                qmat[r, j] = row[j]
        nc = len(cands)
        carr = self._cands
        for t, c in enumerate(cands):
            carr[t] = c
        _filter_kernel(
            carr, nc, buf, nx, qpiv, qmat, len(qrows), self.d, self._flags
        )
        return self._flags[:nc]
