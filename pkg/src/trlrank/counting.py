"""Exact point counts of the slice variety over F_p and analytic rank.

The stratified counter enumerates one axis, computes the rank of the
contracted matrix for each vector, and adds p^(corank); the brute-force
counter enumerates pairs directly and exists as the independent oracle.
Counts are exact Python ints (they overflow 64 bits quickly), only the
derived analytic-rank values are floats.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from ._kernels import get_backend
from .errors import BudgetExceededError, InvariantViolationError, ValidationError
from .exactlinalg import check_prime, count_rank_matrices, log_base
from .tensor import Tensor3

__all__ = [
    "PointCount",
    "ScanRow",
    "DEFAULT_MAX_VECTORS",
    "DEFAULT_MAX_POINTS",
    "point_count_stratified",
    "point_count_bruteforce",
    "bias_bruteforce",
    "analytic_rank",
    "liminf_scan",
    "matmul_point_count",
]

DEFAULT_MAX_VECTORS = 10**8
DEFAULT_MAX_POINTS = 10**7


@dataclass(frozen=True)
class PointCount:
    """(prime, exact |V(T_p)(F_p)|, ambient dimension, analytic rank)."""

    prime: int
    count: int
    ambient: int
    ar: float

    def __post_init__(self):
        if not 1 <= self.count <= self.prime**self.ambient:
            raise InvariantViolationError(
                f"count {self.count} outside [1, p^{self.ambient}] for p={self.prime}"
            )

    @property
    def bias(self) -> Fraction:
        return Fraction(self.count, self.prime**self.ambient)


@dataclass(frozen=True)
class ScanRow:
    prime: int
    point_count: PointCount | None
    error: str | None = None


def _make_point_count(p: int, count: int, ambient: int) -> PointCount:
    return PointCount(prime=p, count=count, ambient=ambient, ar=ambient - log_base(count, p))


def _enum_plan(dims: tuple[int, int, int], enum_axis: int | None) -> tuple[int, int]:
    """Pick (enumeration axis, solution axis).

    The solution axis is the smaller-index remaining axis, so axes 0 and 1
    both count the variety over (axis0, axis1) coordinates and axis 2
    counts the one over (axis0, axis2); the third axis is eliminated.
    Auto picks the cheaper of axes 0 and 1, never 2, so that the default
    always counts the canonical (x, y) variety of the AR identity and
    agrees with the brute-force oracle.
    """
    if enum_axis is None:
        enum_axis = 0 if dims[0] <= dims[1] else 1
    if enum_axis not in (0, 1, 2):
        raise ValidationError(f"enumeration axis must be 0, 1 or 2, got {enum_axis}")
    sol_axis = min(a for a in (0, 1, 2) if a != enum_axis)
    return enum_axis, sol_axis


def _chunks(total: int, workers: int) -> list[tuple[int, int]]:
    n = max(1, min(workers, total))
    step = (total + n - 1) // n
    return [(lo, min(lo + step, total)) for lo in range(0, total, step)]


def _run_chunked(fn, slabs, p, total, workers):
    spans = _chunks(total, workers)
    if len(spans) == 1:
        return [fn(slabs, p, *spans[0])]
    with ThreadPoolExecutor(max_workers=len(spans)) as pool:
        futs = [pool.submit(fn, slabs, p, lo, hi) for lo, hi in spans]
        return [f.result() for f in futs]


def point_count_stratified(
    t: Tensor3,
    p: int,
    enum_axis: int | None = None,
    max_vectors: int = DEFAULT_MAX_VECTORS,
    workers: int = 1,
) -> PointCount:
    """Exact |V| by corank stratification: enumerate vectors on one axis,
    add p^(n_sol - rank of the contracted matrix) for each.

    The default enumeration axis is the cheaper of axes 0 and 1 (both
    count the canonical (x, y) variety; pass enum_axis=2 explicitly for
    the (x, z) one).  Integer tensors only; raises BudgetExceededError
    when p^n_enum > max_vectors.
    """
    p = check_prime(p)
    a, s = _enum_plan(t.dims, enum_axis)
    total = p ** t.dims[a]
    if total > max_vectors:
        raise BudgetExceededError(
            f"stratified enumeration needs {total} vectors > budget {max_vectors}"
        )
    slabs = np.ascontiguousarray(np.moveaxis(t.mod_p(p), a, 0))
    backend = get_backend()
    hists = _run_chunked(backend.rank_histogram, slabs, p, total, workers)
    hist = np.sum(hists, axis=0)
    n_sol = t.dims[s]
    count = sum(int(hist[r]) * p ** (n_sol - r) for r in range(hist.shape[0]))
    return _make_point_count(p, count, t.dims[a] + n_sol)


def point_count_bruteforce(
    t: Tensor3,
    p: int,
    max_points: int = DEFAULT_MAX_POINTS,
    workers: int = 1,
) -> PointCount:
    """Exact |V| over the (axis0, axis1) coordinates by direct enumeration
    of all pairs.  Oracle for the stratified counter."""
    p = check_prime(p)
    n1, n2, _ = t.dims
    ambient = n1 + n2
    if p**ambient > max_points:
        raise BudgetExceededError(
            f"brute force needs {p**ambient} points > budget {max_points}"
        )
    slabs = np.ascontiguousarray(t.mod_p(p))
    backend = get_backend()
    parts = _run_chunked(backend.bruteforce_count, slabs, p, p**n1, workers)
    return _make_point_count(p, sum(int(c) for c in parts), ambient)


def bias_bruteforce(
    t: Tensor3, p: int, max_points: int = DEFAULT_MAX_POINTS
) -> Fraction:
    """Exact bias of T over F_p, tiny instances only.

    Evaluates the full character sum: the value histogram of T(x, y, z) is
    collapsed using sum_v hist[v] w^v = hist[0] - hist[1] (all nonzero
    residues are equally frequent for a trilinear form), and the result is
    cross-checked against the indicator identity count / p^(n1+n2).
    """
    p = check_prime(p)
    n1, n2, n3 = t.dims
    full = p ** (n1 + n2 + n3)
    if full > max_points:
        raise BudgetExceededError(f"bias enumeration needs {full} points > budget {max_points}")
    slabs = np.ascontiguousarray(t.mod_p(p))
    backend = get_backend()
    hist = backend.value_histogram(slabs, p, 0, p**n1)
    if int(hist.sum()) != full:
        raise InvariantViolationError("value histogram does not cover the whole space")
    if len(set(int(v) for v in hist[1:])) > 1:
        raise InvariantViolationError(
            "nonzero residues of a trilinear form must be equidistributed"
        )
    # sum_v hist[v] w^v with equal nonzero classes collapses to hist0 - hist1
    bias = Fraction(int(hist[0]) - int(hist[1]), full)
    pair_count = point_count_bruteforce(t, p, max_points=max_points).count
    indicator = Fraction(pair_count, p ** (n1 + n2))
    if bias != indicator:
        raise InvariantViolationError(
            f"character sum {bias} != indicator identity {indicator}"
        )
    return bias


def analytic_rank(
    t: Tensor3,
    p: int,
    enum_axis: int | None = None,
    max_vectors: int = DEFAULT_MAX_VECTORS,
    workers: int = 1,
) -> float:
    """AR(T_p) = ambient - log_p |V|, via the stratified counter."""
    return point_count_stratified(
        t, p, enum_axis=enum_axis, max_vectors=max_vectors, workers=workers
    ).ar


def liminf_scan(
    t: Tensor3,
    primes,
    enum_axis: int | None = None,
    max_vectors: int = DEFAULT_MAX_VECTORS,
    workers: int = 1,
) -> list[ScanRow]:
    """Per-prime exact counts and AR values, sorted by prime.

    Budget failures are reported per row instead of aborting the scan; no
    convergence is asserted.
    """
    rows = []
    for p in sorted(set(int(q) for q in primes)):
        check_prime(p)
        try:
            pc = point_count_stratified(
                t, p, enum_axis=enum_axis, max_vectors=max_vectors, workers=workers
            )
            rows.append(ScanRow(prime=p, point_count=pc))
        except BudgetExceededError as exc:
            rows.append(ScanRow(prime=p, point_count=None, error=str(exc)))
    return rows


def matmul_point_count(e: int, h: int, l: int, p: int) -> PointCount:
    """Closed-form |V| for the matrix multiplication tensor: pairs (X, Y)
    with XY = 0, summed over rank(X) = r as N_r(e, h; p) * p^((h-r)*l).

    Polynomial in e, h, l, log p; no enumeration.  Must agree with the
    stratified counter on the same tensor.
    """
    e, h, l = int(e), int(h), int(l)
    if min(e, h, l) < 1:
        raise ValidationError("matrix multiplication tensor needs e, h, l >= 1")
    p = check_prime(p)
    count = sum(
        count_rank_matrices(e, h, r, p) * p ** ((h - r) * l)
        for r in range(min(e, h) + 1)
    )
    return _make_point_count(p, count, e * h + h * l)
