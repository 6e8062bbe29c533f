"""Buchberger's algorithm, ideal dimension, and radical membership over Q.

Everything here is deterministic for a fixed generator order: S-pairs are
processed in normal strategy (by lcm degree, then grevlex key of the lcm,
then pair indices) with the coprimality and chain criteria.  A ``Budget``
guards against blowup; tripping it raises instead of returning a wrong
answer.
"""

from __future__ import annotations

import heapq
import itertools
import time
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import BudgetExceededError, ValidationError
from .poly import MultiPoly, PolyRing, grevlex_key

__all__ = [
    "Budget",
    "GroebnerBasis",
    "buchberger",
    "normal_form",
    "ideal_dimension",
    "radical_membership",
    "verify_groebner",
]

DEFAULT_MAX_PAIRS = 1_000_000
DIMENSION_VAR_LIMIT = 24


@dataclass
class Budget:
    """Resource guard shared across Groebner computations.

    ``max_pairs`` bounds the number of S-pairs processed; ``seconds``
    (wall clock) is measured from construction.
    """

    max_pairs: int = DEFAULT_MAX_PAIRS
    seconds: float | None = None
    _t0: float = field(default_factory=time.monotonic)
    pairs_used: int = 0

    def charge_pair(self):
        self.pairs_used += 1
        if self.pairs_used > self.max_pairs:
            raise BudgetExceededError(
                f"S-pair budget exceeded ({self.max_pairs} pairs)"
            )
        self.check_time()

    def check_time(self):
        if self.seconds is not None and time.monotonic() - self._t0 > self.seconds:
            raise BudgetExceededError(f"wall-clock budget exceeded ({self.seconds}s)")


@dataclass(frozen=True)
class GroebnerBasis:
    """Reduced Groebner basis (grevlex, monic, auto-reduced)."""

    ring: PolyRing
    polys: tuple[MultiPoly, ...]

    def leading_monomials(self) -> list[tuple[int, ...]]:
        return [g.lead()[0] for g in self.polys]

    def contains_one(self) -> bool:
        return any(sum(g.lead()[0]) == 0 for g in self.polys)

    def __iter__(self):
        return iter(self.polys)

    def __len__(self):
        return len(self.polys)


def _divides(m1: tuple[int, ...], m2: tuple[int, ...]) -> bool:
    return all(a <= b for a, b in zip(m1, m2))


def _mono_lcm(m1, m2):
    return tuple(max(a, b) for a, b in zip(m1, m2))


def _mono_sub(m1, m2):
    return tuple(a - b for a, b in zip(m1, m2))


def _coprime(m1, m2) -> bool:
    return all(a == 0 or b == 0 for a, b in zip(m1, m2))


def _heap_key(mono):
    # heapq pops smallest; componentwise negation of the grevlex key
    # reverses the order, so the grevlex-largest monomial pops first.
    return (-sum(mono), tuple(reversed(mono)))


def normal_form(f: MultiPoly, basis, budget: Budget | None = None) -> MultiPoly:
    """Full remainder of multivariate division of f by the given polynomials.

    Zero iff f lies in the ideal when ``basis`` is a Groebner basis.  The
    reducer tried first is always the earliest in the list, which keeps the
    result deterministic.
    """
    if isinstance(basis, GroebnerBasis):
        basis = basis.polys
    divisors = [(g.lead()[0], g.lead()[1], g) for g in basis if not g.is_zero]
    ring = f.ring
    for _, _, g in divisors:
        if g.ring != ring:
            raise ValidationError("polynomials from different rings")
    work = dict(f.terms)
    heap = [(_heap_key(m), m) for m in work]
    heapq.heapify(heap)
    remainder: dict = {}
    steps = 0
    while heap:
        _, m = heapq.heappop(heap)
        c = work.get(m)
        if not c:
            continue            # stale heap entry
        steps += 1
        if budget is not None and steps % 256 == 0:
            budget.check_time()
        for lm, lc, g in divisors:
            if _divides(lm, m):
                shift = _mono_sub(m, lm)
                factor = c / lc
                for gm, gc in g.terms.items():
                    tm = tuple(a + b for a, b in zip(gm, shift))
                    prev = work.get(tm, 0)
                    nv = prev - factor * gc
                    if nv:
                        if not prev:
                            heapq.heappush(heap, (_heap_key(tm), tm))
                        work[tm] = nv
                    else:
                        work.pop(tm, None)
                break
        else:
            remainder[m] = c
            del work[m]
    return MultiPoly(ring, remainder)


def s_polynomial(f: MultiPoly, g: MultiPoly) -> MultiPoly:
    fm, fc = f.lead()
    gm, gc = g.lead()
    lcm = _mono_lcm(fm, gm)
    one = Fraction(1)
    return f.term_mul(one / fc, _mono_sub(lcm, fm)) - g.term_mul(
        one / gc, _mono_sub(lcm, gm)
    )


def buchberger(
    gens,
    budget: Budget | None = None,
    certify: bool = True,
    pair_strategy: str = "normal",
) -> GroebnerBasis:
    """Reduced Groebner basis of the ideal generated by ``gens`` (grevlex).

    ``pair_strategy`` is "normal" (degree order) or "fifo" (insertion
    order); the reduced result is identical, the option exists to exercise
    order-independence in tests.  Raises BudgetExceededError when the
    budget trips.
    """
    gens = [g for g in gens if not g.is_zero]
    if not gens:
        raise ValidationError("cannot take a Groebner basis of no nonzero generators")
    ring = gens[0].ring
    for g in gens:
        if g.ring != ring:
            raise ValidationError("generators from different rings")
    if budget is None:
        budget = Budget()
    if pair_strategy not in ("normal", "fifo"):
        raise ValidationError(f"unknown pair strategy {pair_strategy!r}")

    basis: list[MultiPoly] = []
    lms: list[tuple[int, ...]] = []

    def pair_key(i: int, j: int, seq: int):
        lcm = _mono_lcm(lms[i], lms[j])
        if pair_strategy == "fifo":
            return (seq,)
        ksum, krev = grevlex_key(lcm)
        return (ksum, krev, i, j)

    pairs: list = []          # heap of (key, i, j)
    seq = itertools.count()
    done_pairs: set[tuple[int, int]] = set()

    def add_poly(p: MultiPoly):
        p = p.primitive()
        k = len(basis)
        basis.append(p)
        lms.append(p.lead()[0])
        for i in range(k):
            heapq.heappush(pairs, (pair_key(i, k, next(seq)), i, k))

    for g in gens:
        add_poly(g)

    while pairs:
        _, i, j = heapq.heappop(pairs)
        budget.charge_pair()
        done_pairs.add((i, j))
        if _coprime(lms[i], lms[j]):
            continue
        lcm = _mono_lcm(lms[i], lms[j])
        # chain criterion: some k with LM_k | lcm and both (i,k), (j,k) done
        skip = False
        for k in range(len(basis)):
            if k in (i, j) or not _divides(lms[k], lcm):
                continue
            if (min(i, k), max(i, k)) in done_pairs and (
                min(j, k),
                max(j, k),
            ) in done_pairs:
                skip = True
                break
        if skip:
            continue
        s = s_polynomial(basis[i], basis[j])
        h = normal_form(s, basis, budget)
        if not h.is_zero:
            add_poly(h)

    reduced = _reduce_basis(basis, budget)
    gb = GroebnerBasis(ring, tuple(reduced))
    if certify:
        verify_groebner(gb, budget)
    return gb


def _reduce_basis(basis: list[MultiPoly], budget: Budget | None) -> list[MultiPoly]:
    # minimal: drop polys whose LM is divisible by another's LM
    order = sorted(range(len(basis)), key=lambda i: grevlex_key(basis[i].lead()[0]))
    kept: list[MultiPoly] = []
    kept_lms: list[tuple[int, ...]] = []
    for i in order:
        lm = basis[i].lead()[0]
        if any(_divides(k, lm) for k in kept_lms):
            continue
        kept.append(basis[i])
        kept_lms.append(lm)
    # reduced: replace each by its normal form against the others
    out = []
    for i, g in enumerate(kept):
        others = out + kept[i + 1 :]
        r = normal_form(g, others, budget)
        if not r.is_zero:
            out.append(r.monic())
    out.sort(key=lambda g: grevlex_key(g.lead()[0]))
    return out


def verify_groebner(gb: GroebnerBasis, budget: Budget | None = None):
    """Self-certification: every S-polynomial reduces to zero.

    Pairs with coprime leading monomials reduce to zero by the product
    criterion and are skipped.  Raises InvariantViolationError on failure.
    """
    from .errors import InvariantViolationError

    polys = gb.polys
    for i in range(len(polys)):
        for j in range(i + 1, len(polys)):
            if budget is not None:
                budget.check_time()
            if _coprime(polys[i].lead()[0], polys[j].lead()[0]):
                continue
            r = normal_form(s_polynomial(polys[i], polys[j]), polys, budget)
            if not r.is_zero:
                raise InvariantViolationError(
                    f"S-polynomial of basis elements {i}, {j} does not reduce to zero"
                )


def ideal_dimension(gb: GroebnerBasis, nvars: int | None = None) -> int:
    """Affine dimension of V(I) from the leading-term ideal.

    dim = max size of a variable subset U such that no leading monomial is
    supported inside U; equivalently nvars minus a minimum hitting set of
    the leading-monomial supports.  Affine convention: the zero ideal in n
    variables has dimension n.
    """
    n = gb.ring.nvars if nvars is None else int(nvars)
    if n > DIMENSION_VAR_LIMIT:
        raise ValidationError(
            f"dimension search supports at most {DIMENSION_VAR_LIMIT} variables, got {n}"
        )
    supports = []
    for lm in gb.leading_monomials():
        s = frozenset(i for i, e in enumerate(lm) if e)
        if not s:
            raise ValidationError("unit ideal has empty variety; dimension undefined")
        supports.append(s)
    return n - _min_hitting_set(supports)


def _min_hitting_set(supports: list[frozenset[int]]) -> int:
    # prune supersets: hitting a subset hits the superset for free
    supports = sorted(set(supports), key=len)
    minimal: list[frozenset[int]] = []
    for s in supports:
        if not any(t <= s for t in minimal):
            minimal.append(s)
    best = len({v for s in minimal for v in s})

    def bb(remaining: list[frozenset[int]], size: int):
        nonlocal best
        if size >= best:
            return
        if not remaining:
            best = size
            return
        pivot = min(remaining, key=len)
        for v in sorted(pivot):
            bb([s for s in remaining if v not in s], size + 1)

    bb(minimal, 0)
    return best


def radical_membership(
    f: MultiPoly, gens, budget: Budget | None = None
) -> bool:
    """True iff f vanishes on V(gens), i.e. f is in the radical of <gens>.

    Rabinowitsch trick: adjoin t and test whether 1 lies in
    <gens, 1 - t*f>.
    """
    gens = [g for g in gens if not g.is_zero]
    if not gens:
        raise ValidationError("radical membership needs at least one generator")
    ring = gens[0].ring
    if f.ring != ring:
        raise ValidationError("polynomial and generators from different rings")
    if f.is_zero:
        return True
    name = "_t"
    while name in ring.names:
        name = "_" + name
    ext = ring.extend([name])
    t = ext.var(ext.nvars - 1)
    lifted = [g.lift(ext) for g in gens]
    lifted.append(ext.one() - t * f.lift(ext))
    gb = buchberger(lifted, budget=budget, certify=False)
    return gb.contains_one()
