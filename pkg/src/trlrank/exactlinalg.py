"""Exact linear algebra foundations.

Arbitrary-precision integers are plain Python ``int``; exact rationals are
``fractions.Fraction`` (always lowest terms, positive denominator).  On top
of those this module provides matrix rank over prime fields and over the
rationals, counts of fixed-rank matrices over F_q, and base-p logarithms of
big naturals accurate enough for the 1e-9 tolerances used downstream.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

import mpmath

from .errors import ValidationError

# Deterministic Miller-Rabin witnesses for every n < 3.3e24 (covers 2**64).
_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)

_PRIME_LIMIT = 2**64


def is_prime(n: int) -> bool:
    """Deterministic primality test for 0 <= n < 2**64 (Miller-Rabin)."""
    n = int(n)
    if n < 0 or n >= _PRIME_LIMIT:
        raise ValidationError(f"primality test supports 0 <= n < 2**64, got {n}")
    if n < 2:
        return False
    for small in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n == small:
            return True
        if n % small == 0:
            return False
    d = n - 1
    s = 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_WITNESSES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


@lru_cache(maxsize=1024)
def check_prime(p: int) -> int:
    """Return ``p`` as int after verifying it is prime; raise otherwise."""
    p = int(p)
    if not is_prime(p):
        raise ValidationError(f"modulus {p} is not prime")
    return p


def _as_rows(mat) -> list[list]:
    rows = [list(r) for r in mat]
    if not rows or not rows[0]:
        raise ValidationError("matrix must have at least one row and one column")
    ncols = len(rows[0])
    if any(len(r) != ncols for r in rows):
        raise ValidationError("ragged matrix")
    return rows


def fp_rank(mat, p: int) -> int:
    """Rank of a matrix over F_p by Gaussian elimination.

    ``mat`` is any nested sequence of integers; entries are reduced mod p.
    Works for any prime p < 2**64 (pure Python ints, no overflow).
    """
    p = check_prime(p)
    rows = [[int(x) % p for x in r] for r in _as_rows(mat)]
    m, n = len(rows), len(rows[0])
    rank = 0
    for c in range(n):
        piv = -1
        for i in range(rank, m):
            if rows[i][c]:
                piv = i
                break
        if piv < 0:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        pr = rows[rank]
        inv = pow(pr[c], -1, p)
        for i in range(rank + 1, m):
            f = rows[i][c]
            if f:
                f = f * inv % p
                ri = rows[i]
                for j in range(c, n):
                    ri[j] = (ri[j] - f * pr[j]) % p
        rank += 1
        if rank == m:
            break
    return rank


def q_rank(mat) -> int:
    """Exact rank over Q via fraction-free Bareiss elimination.

    Entries may be ints or Fractions; each row is scaled to integers first
    (does not change rank), keeping all intermediate arithmetic in Z.
    """
    rows = []
    for r in _as_rows(mat):
        fr = [Fraction(x) for x in r]
        scale = 1
        for x in fr:
            scale = scale * x.denominator // _gcd(scale, x.denominator)
        rows.append([int(x * scale) for x in fr])
    m, n = len(rows), len(rows[0])
    rank = 0
    prev = 1
    for c in range(n):
        piv = -1
        for i in range(rank, m):
            if rows[i][c]:
                piv = i
                break
        if piv < 0:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        pr = rows[rank]
        for i in range(rank + 1, m):
            ri = rows[i]
            f = ri[c]
            for j in range(c + 1, n):
                num = ri[j] * pr[c] - f * pr[j]
                q, r = divmod(num, prev)
                if r:
                    # Bareiss division is exact by the Sylvester identity;
                    # a remainder can only mean corrupted input
                    raise ValidationError("non-exact division in Bareiss elimination")
                ri[j] = q
            ri[c] = 0
        prev = pr[c]
        rank += 1
        if rank == m:
            break
    return rank


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


def gaussian_binomial(m: int, r: int, q: int) -> int:
    """q-binomial coefficient [m choose r]_q (number of r-dim subspaces)."""
    if r < 0 or r > m:
        return 0
    acc = 1
    for i in range(1, r + 1):
        acc = acc * (q ** (m - r + i) - 1)
        acc //= q**i - 1
    return acc


def count_rank_matrices(m: int, n: int, r: int, q: int) -> int:
    """Exact number of m x n matrices over F_q of rank exactly r.

    [m choose r]_q * prod_{i<r} (q^n - q^i): choose the row space, then an
    injective map onto it.  Summing over r gives q^(m*n).
    """
    q = check_prime(q)
    m, n, r = int(m), int(n), int(r)
    if m < 1 or n < 1:
        raise ValidationError("matrix dimensions must be >= 1")
    if r < 0 or r > min(m, n):
        raise ValidationError(f"rank {r} out of range for a {m}x{n} matrix")
    count = gaussian_binomial(m, r, q)
    for i in range(r):
        count *= q**n - q**i
    return count


def log_base(n: int, p: int) -> float:
    """log_p(n) for a big natural n >= 1, relative error < 1e-12.

    Computed with mpmath at a working precision that exceeds the bit length
    of n, so the final rounding to float is the only loss.
    """
    n = int(n)
    p = int(p)
    if n < 1:
        raise ValidationError(f"log_base requires n >= 1, got {n}")
    if p < 2:
        raise ValidationError(f"log_base requires base >= 2, got {p}")
    prec = max(n.bit_length(), p.bit_length(), 64) + 32
    with mpmath.workprec(prec):
        return float(mpmath.log(n) / mpmath.log(p))
