"""numba-jitted counting kernels.

All kernels enumerate base-p odometers with amortized partial-sum updates,
so each step touches one changed digit (plus carries) and the slice
assembly is a fused multiply-accumulate mod p.  Entries must already be
reduced to [0, p) with p < 2**31 so every intermediate product fits int64.
"""

import numpy as np
from numba import njit

NAME = "numba"


@njit(cache=True, nogil=True)
def _rank_mod_p(a, p):
    # destructive Gaussian elimination; no pivot normalization needed for
    # rank (scale-and-subtract keeps everything in [0, p))
    m, n = a.shape
    r = 0
    for c in range(n):
        if r == m:
            break
        piv = -1
        for i in range(r, m):
            if a[i, c] != 0:
                piv = i
                break
        if piv < 0:
            continue
        if piv != r:
            for j in range(c, n):
                t = a[r, j]
                a[r, j] = a[piv, j]
                a[piv, j] = t
        pv = a[r, c]
        for i in range(r + 1, m):
            f = a[i, c]
            if f != 0:
                for j in range(c, n):
                    a[i, j] = (a[i, j] * pv - a[r, j] * f) % p
        r += 1
    return r


@njit(cache=True, nogil=True)
def _init_odometer(digits, start, p):
    idx = start
    for i in range(digits.shape[0] - 1, -1, -1):
        digits[i] = idx % p
        idx //= p


@njit(cache=True, nogil=True)
def _rank_histogram(slabs, p, start, stop):
    na, nb, nc = slabs.shape
    maxr = min(nb, nc)
    hist = np.zeros(maxr + 1, dtype=np.int64)
    if stop <= start:
        return hist
    digits = np.zeros(na, dtype=np.int64)
    _init_odometer(digits, start, p)
    ps = np.zeros((na, nb, nc), dtype=np.int64)
    for j in range(na):
        for b in range(nb):
            for c in range(nc):
                v = digits[j] * slabs[j, b, c]
                if j > 0:
                    v += ps[j - 1, b, c]
                ps[j, b, c] = v % p
    work = np.empty((nb, nc), dtype=np.int64)
    n_steps = stop - start
    for step in range(n_steps):
        for b in range(nb):
            for c in range(nc):
                work[b, c] = ps[na - 1, b, c]
        hist[_rank_mod_p(work, p)] += 1
        if step == n_steps - 1:
            break
        i = na - 1
        while True:
            digits[i] += 1
            if digits[i] < p:
                break
            digits[i] = 0
            i -= 1
        for j in range(i, na):
            for b in range(nb):
                for c in range(nc):
                    v = digits[j] * slabs[j, b, c]
                    if j > 0:
                        v += ps[j - 1, b, c]
                    ps[j, b, c] = v % p
    return hist


@njit(cache=True, nogil=True)
def _bruteforce_count(slabs, p, start, stop):
    n1, n2, n3 = slabs.shape
    count = 0
    if stop <= start:
        return count
    xdig = np.zeros(n1, dtype=np.int64)
    _init_odometer(xdig, start, p)
    psx = np.zeros((n1, n2, n3), dtype=np.int64)
    for j in range(n1):
        for b in range(n2):
            for c in range(n3):
                v = xdig[j] * slabs[j, b, c]
                if j > 0:
                    v += psx[j - 1, b, c]
                psx[j, b, c] = v % p
    ydig = np.zeros(n2, dtype=np.int64)
    psy = np.zeros((n2, n3), dtype=np.int64)
    total_y = 1
    for _ in range(n2):
        total_y *= p
    n_steps = stop - start
    for step in range(n_steps):
        # enumerate every y against the current x-contraction psx[n1-1]
        for j in range(n2):
            ydig[j] = 0
            for k in range(n3):
                psy[j, k] = 0
        for ystep in range(total_y):
            ok = True
            for k in range(n3):
                if psy[n2 - 1, k] != 0:
                    ok = False
                    break
            if ok:
                count += 1
            if ystep == total_y - 1:
                break
            i = n2 - 1
            while True:
                ydig[i] += 1
                if ydig[i] < p:
                    break
                ydig[i] = 0
                i -= 1
            for j in range(i, n2):
                for k in range(n3):
                    v = ydig[j] * psx[n1 - 1, j, k]
                    if j > 0:
                        v += psy[j - 1, k]
                    psy[j, k] = v % p
        if step == n_steps - 1:
            break
        i = n1 - 1
        while True:
            xdig[i] += 1
            if xdig[i] < p:
                break
            xdig[i] = 0
            i -= 1
        for j in range(i, n1):
            for b in range(n2):
                for c in range(n3):
                    v = xdig[j] * slabs[j, b, c]
                    if j > 0:
                        v += psx[j - 1, b, c]
                    psx[j, b, c] = v % p
    return count


@njit(cache=True, nogil=True)
def _value_histogram(slabs, p, start, stop):
    n1, n2, n3 = slabs.shape
    hist = np.zeros(p, dtype=np.int64)
    if stop <= start:
        return hist
    xdig = np.zeros(n1, dtype=np.int64)
    _init_odometer(xdig, start, p)
    psx = np.zeros((n1, n2, n3), dtype=np.int64)
    for j in range(n1):
        for b in range(n2):
            for c in range(n3):
                v = xdig[j] * slabs[j, b, c]
                if j > 0:
                    v += psx[j - 1, b, c]
                psx[j, b, c] = v % p
    ydig = np.zeros(n2, dtype=np.int64)
    psy = np.zeros((n2, n3), dtype=np.int64)
    zdig = np.zeros(n3, dtype=np.int64)
    psz = np.zeros(n3, dtype=np.int64)
    total_y = 1
    for _ in range(n2):
        total_y *= p
    total_z = 1
    for _ in range(n3):
        total_z *= p
    n_steps = stop - start
    for step in range(n_steps):
        for j in range(n2):
            ydig[j] = 0
            for k in range(n3):
                psy[j, k] = 0
        for ystep in range(total_y):
            # w = psy[n2-1] is the z-linear form at (x, y)
            for k in range(n3):
                zdig[k] = 0
                psz[k] = 0
            for zstep in range(total_z):
                hist[psz[n3 - 1]] += 1
                if zstep == total_z - 1:
                    break
                i = n3 - 1
                while True:
                    zdig[i] += 1
                    if zdig[i] < p:
                        break
                    zdig[i] = 0
                    i -= 1
                for k in range(i, n3):
                    v = zdig[k] * psy[n2 - 1, k]
                    if k > 0:
                        v += psz[k - 1]
                    psz[k] = v % p
            if ystep == total_y - 1:
                break
            i = n2 - 1
            while True:
                ydig[i] += 1
                if ydig[i] < p:
                    break
                ydig[i] = 0
                i -= 1
            for j in range(i, n2):
                for k in range(n3):
                    v = ydig[j] * psx[n1 - 1, j, k]
                    if j > 0:
                        v += psy[j - 1, k]
                    psy[j, k] = v % p
        if step == n_steps - 1:
            break
        i = n1 - 1
        while True:
            xdig[i] += 1
            if xdig[i] < p:
                break
            xdig[i] = 0
            i -= 1
        for j in range(i, n1):
            for b in range(n2):
                for c in range(n3):
                    v = xdig[j] * slabs[j, b, c]
                    if j > 0:
                        v += psx[j - 1, b, c]
                    psx[j, b, c] = v % p
    return hist


def _prep(slabs):
    return np.ascontiguousarray(np.asarray(slabs, dtype=np.int64))


def rank_histogram(slabs, p, start, stop):
    """Histogram of rank(sum_i x_i slabs[i]) over x with odometer index in
    [start, stop)."""
    return _rank_histogram(_prep(slabs), np.int64(p), np.int64(start), np.int64(stop))


def bruteforce_count(slabs, p, start, stop):
    """Number of (x, y) with x-index in [start, stop) and x^T M_k y = 0 for
    every slice k (slabs indexed (i, j, k))."""
    return int(_bruteforce_count(_prep(slabs), np.int64(p), np.int64(start), np.int64(stop)))


def value_histogram(slabs, p, start, stop):
    """Histogram over F_p of the trilinear value T(x, y, z), x-index
    restricted to [start, stop), y and z full."""
    return _value_histogram(_prep(slabs), np.int64(p), np.int64(start), np.int64(stop))
