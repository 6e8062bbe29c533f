"""Pure-numpy fallback kernels (no numba).

Same contracts and results as the numba backend, implemented as batched
vectorized passes: digit decoding, a single matmul to assemble all slice
matrices of a batch, and a lockstep batched Gaussian elimination for
ranks.
"""

import numpy as np

NAME = "numpy"

_BATCH = 1 << 14


def _digits(idx: np.ndarray, p: int, n: int) -> np.ndarray:
    out = np.empty((idx.shape[0], n), dtype=np.int64)
    rem = idx.copy()
    for i in range(n - 1, -1, -1):
        out[:, i] = rem % p
        rem //= p
    return out


def _batch_rank_mod_p(mats: np.ndarray, p: int) -> np.ndarray:
    """Ranks of a (B, m, n) stack over F_p, eliminating all B matrices in
    lockstep column by column."""
    a = mats % p
    nb, m, n = a.shape
    rank = np.zeros(nb, dtype=np.int64)
    row = np.zeros(nb, dtype=np.int64)
    ridx = np.arange(m)
    for col in range(n):
        nz = (a[:, :, col] != 0) & (ridx[None, :] >= row[:, None])
        has = nz.any(axis=1)
        if not has.any():
            continue
        sel = np.nonzero(has)[0]
        k = sel.shape[0]
        ar = a[sel]
        r = row[sel]
        piv = np.argmax(nz[sel], axis=1)
        kidx = np.arange(k)
        tmp = ar[kidx, r].copy()
        ar[kidx, r] = ar[kidx, piv]
        ar[kidx, piv] = tmp
        pivval = ar[kidx, r, col]
        pivrow = ar[kidx, r]
        below = ridx[None, :] > r[:, None]
        elim = (ar * pivval[:, None, None] - ar[:, :, col][:, :, None] * pivrow[:, None, :]) % p
        a[sel] = np.where(below[:, :, None], elim, ar)
        rank[sel] += 1
        row[sel] += 1
    return rank


def rank_histogram(slabs, p, start, stop):
    """Histogram of rank(sum_i x_i slabs[i]) over x with odometer index in
    [start, stop)."""
    slabs = np.asarray(slabs, dtype=np.int64)
    na, nbr, ncc = slabs.shape
    maxr = min(nbr, ncc)
    hist = np.zeros(maxr + 1, dtype=np.int64)
    flat = slabs.reshape(na, -1)
    pos = int(start)
    stop = int(stop)
    while pos < stop:
        cnt = min(_BATCH, stop - pos)
        digs = _digits(np.arange(pos, pos + cnt, dtype=np.int64), p, na)
        mats = (digs @ flat) % p
        ranks = _batch_rank_mod_p(mats.reshape(cnt, nbr, ncc), p)
        hist += np.bincount(ranks, minlength=maxr + 1)
        pos += cnt
    return hist


def bruteforce_count(slabs, p, start, stop):
    """Number of (x, y) with x-index in [start, stop) and x^T M_k y = 0 for
    every slice k (slabs indexed (i, j, k))."""
    slabs = np.asarray(slabs, dtype=np.int64)
    n1, n2, n3 = slabs.shape
    ny = p**n2
    ydigs = _digits(np.arange(ny, dtype=np.int64), p, n2)
    flat = slabs.reshape(n1, -1)
    count = 0
    pos = int(start)
    stop = int(stop)
    xchunk = max(1, _BATCH // max(1, ny))
    while pos < stop:
        cnt = min(xchunk, stop - pos)
        xdigs = _digits(np.arange(pos, pos + cnt, dtype=np.int64), p, n1)
        bx = (xdigs @ flat).reshape(cnt, n2, n3) % p
        w = np.einsum("yj,xjk->xyk", ydigs, bx) % p
        count += int((w == 0).all(axis=2).sum())
        pos += cnt
    return count


def value_histogram(slabs, p, start, stop):
    """Histogram over F_p of the trilinear value T(x, y, z), x-index
    restricted to [start, stop), y and z full."""
    slabs = np.asarray(slabs, dtype=np.int64)
    n1, n2, n3 = slabs.shape
    ny = p**n2
    nz = p**n3
    ydigs = _digits(np.arange(ny, dtype=np.int64), p, n2)
    zdigs = _digits(np.arange(nz, dtype=np.int64), p, n3)
    flat = slabs.reshape(n1, -1)
    hist = np.zeros(p, dtype=np.int64)
    pos = int(start)
    stop = int(stop)
    xchunk = max(1, _BATCH // max(1, ny))
    rowchunk = max(1, _BATCH // max(1, nz))
    while pos < stop:
        cnt = min(xchunk, stop - pos)
        xdigs = _digits(np.arange(pos, pos + cnt, dtype=np.int64), p, n1)
        bx = (xdigs @ flat).reshape(cnt, n2, n3) % p
        w = (np.einsum("yj,xjk->xyk", ydigs, bx) % p).reshape(-1, n3)
        for lo in range(0, w.shape[0], rowchunk):
            vals = (w[lo : lo + rowchunk] @ zdigs.T) % p
            hist += np.bincount(vals.reshape(-1), minlength=p)
        pos += cnt
    return hist
