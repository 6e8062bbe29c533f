"""Flattening ranks, bound chains, and the combinatorial lower bounds.

The chain assembled here is

    diagonal-subtensor lower bound <= GR <= slice-rank upper bound
                                          <= min flattening rank

and any emitted report re-checks it; a violation aborts loudly because it
can only mean a bug.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .counting import DEFAULT_MAX_VECTORS, ScanRow, liminf_scan
from .errors import BudgetExceededError, InvariantViolationError, ValidationError
from .exactlinalg import q_rank
from .geometric import GrResult, gr_exact, gr_modular
from .groebner import Budget
from .tensor import Hypergraph3, Tensor3, flatten

__all__ = [
    "ChainReport",
    "flattening_ranks",
    "slice_rank_upper",
    "subrank_diag_lower",
    "independence_number",
    "matmul_gr_formula",
    "strassen_border_lower",
    "chain_report",
]

SEARCH_SIZE_LIMIT = 20


def flattening_ranks(t: Tensor3) -> tuple[int, int, int]:
    """Exact ranks over Q of the three flattening matrices."""
    return tuple(q_rank(flatten(t, a)) for a in (0, 1, 2))


def slice_rank_upper(t: Tensor3) -> int:
    """Upper bound on slice rank: the minimum flattening rank."""
    return min(flattening_ranks(t))


def subrank_diag_lower(t: Tensor3) -> int:
    """Lower bound on subrank by monomial restriction to a diagonal.

    Searches for the largest family of nonzero entries (i_t, j_t, k_t) with
    distinct coordinates on every axis such that every mixed combination
    (i_t, j_u, k_v), not all from the same member, is zero; selecting those
    rows/columns/slices and relabeling exhibits I_s as a restriction.
    Exact backtracking; cubic tensors with n <= 20 only.
    """
    n1, n2, n3 = t.dims
    if not n1 == n2 == n3:
        raise ValidationError(f"diagonal search needs a cubic tensor, got {t.dims}")
    if n1 > SEARCH_SIZE_LIMIT:
        raise ValidationError(f"diagonal search supports n <= {SEARCH_SIZE_LIMIT}")
    zero = Fraction(0)
    support = sorted(t.nonzeros())
    m = len(support)

    def compatible(chosen: list[tuple[int, int, int]], cand: tuple[int, int, int]) -> bool:
        ci, cj, ck = cand
        for (i, j, k) in chosen:
            if i == ci or j == cj or k == ck:
                return False
        # every mixed coordinate combination outside the family must vanish
        group = chosen + [cand]
        members = set(group)
        for (ai, _, _) in group:
            for (_, bj, _) in group:
                for (_, _, ck2) in group:
                    mixed = (ai, bj, ck2)
                    if mixed not in members and t.entries[mixed] != zero:
                        return False
        return True

    best = 0

    def extend(start: int, chosen: list[tuple[int, int, int]]):
        nonlocal best
        best = max(best, len(chosen))
        if len(chosen) + (m - start) <= best:
            return
        for idx in range(start, m):
            cand = support[idx]
            if compatible(chosen, cand):
                chosen.append(cand)
                extend(idx + 1, chosen)
                chosen.pop()

    extend(0, [])
    return best


def independence_number(hg: Hypergraph3) -> int:
    """Exact independence number of a symmetric 3-uniform hypergraph;
    backtracking over vertices, n <= 20."""
    if hg.n > SEARCH_SIZE_LIMIT:
        raise ValidationError(f"independence search supports n <= {SEARCH_SIZE_LIMIT}")
    edges = [tuple(e) for e in hg.edges]
    degree = {v: 0 for v in range(hg.n)}
    for e in edges:
        for v in set(e):
            degree[v] += 1
    order = sorted(range(hg.n), key=lambda v: -degree[v])
    best = 0

    def closes_edge(sel: set[int], v: int) -> bool:
        for e in edges:
            if v in e and all(u in sel or u == v for u in e):
                return True
        return False

    def walk(pos: int, sel: set[int]):
        nonlocal best
        best = max(best, len(sel))
        if len(sel) + (hg.n - pos) <= best:
            return
        v = order[pos]
        if not closes_edge(sel, v):
            sel.add(v)
            walk(pos + 1, sel)
            sel.remove(v)
        walk(pos + 1, sel)

    walk(0, set())
    return best


def matmul_gr_formula(e: int, h: int, l: int) -> int:
    """Closed-form geometric rank of the matrix multiplication tensor:
    with sorted e <= h <= l, eh - floor((e+h-l)^2 / 4) when e + h >= l,
    else eh."""
    if min(e, h, l) < 1:
        raise ValidationError("arguments must be >= 1")
    e, h, l = sorted((int(e), int(h), int(l)))
    delta = e + h - l
    if delta >= 0:
        return e * h - delta * delta // 4
    return e * h


def strassen_border_lower(e: int, h: int, l: int) -> int:
    """Classical lower bound on the border subrank of matrix
    multiplication; coincides with the geometric-rank value."""
    return matmul_gr_formula(e, h, l)


@dataclass(frozen=True)
class ChainReport:
    """Assembled bound chain for one tensor, with optional AR samples."""

    dims: tuple[int, int, int]
    flattening: tuple[int, int, int]
    sr_upper: int
    subrank_lower: int | None
    gr: GrResult | None
    ar_samples: tuple[ScanRow, ...] | None = None
    matmul_oracle: int | None = None
    missing: dict = field(default_factory=dict)

    def check_chain(self):
        if self.sr_upper > min(self.flattening):
            raise InvariantViolationError("slice-rank upper bound exceeds a flattening rank")
        if self.gr is not None:
            if self.gr.gr > self.sr_upper:
                raise InvariantViolationError(
                    f"GR {self.gr.gr} exceeds slice-rank upper bound {self.sr_upper}"
                )
            if self.subrank_lower is not None and self.subrank_lower > self.gr.gr:
                raise InvariantViolationError(
                    f"subrank lower bound {self.subrank_lower} exceeds GR {self.gr.gr}"
                )


def chain_report(
    t: Tensor3,
    primes=None,
    budget: Budget | None = None,
    matmul_dims: tuple[int, int, int] | None = None,
    max_vectors: int = DEFAULT_MAX_VECTORS,
    workers: int = 1,
) -> ChainReport:
    """Compute every bound that applies to ``t`` and assemble the chain.

    Exact GR is attempted first; on budget failure an integer tensor falls
    back to the modular estimate.  Fields whose preconditions or budgets
    fail are reported as None with the reason in ``missing``: a partial
    report is still a report.  The chain invariant is re-checked and a
    violation raises (it would be a bug, not a finding).
    """
    missing: dict = {}
    flat = flattening_ranks(t)
    sr_up = min(flat)

    sub_low: int | None = None
    try:
        sub_low = subrank_diag_lower(t)
    except ValidationError as exc:
        missing["subrank_lower"] = str(exc)

    gr: GrResult | None = None
    try:
        gr = gr_exact(t, budget=budget)
    except BudgetExceededError as exc:
        if t.is_integer:
            try:
                gr = gr_modular(t, max_vectors=max_vectors, workers=workers)
            except BudgetExceededError as exc2:
                missing["gr"] = f"exact: {exc}; modular: {exc2}"
        else:
            missing["gr"] = str(exc)

    ar_rows: tuple[ScanRow, ...] | None = None
    if primes:
        if t.is_integer:
            ar_rows = tuple(liminf_scan(t, primes, max_vectors=max_vectors, workers=workers))
        else:
            missing["ar_samples"] = "tensor has non-integer coefficients"

    oracle = None
    if matmul_dims is not None:
        oracle = matmul_gr_formula(*matmul_dims)

    report = ChainReport(
        dims=t.dims,
        flattening=flat,
        sr_upper=sr_up,
        subrank_lower=sub_low,
        gr=gr,
        ar_samples=ar_rows,
        matmul_oracle=oracle,
        missing=missing,
    )
    report.check_chain()
    return report
