"""Geometric rank: exact (Groebner dimension), modular (point-count
estimate), and witness verification for the bi-homogeneous upper bound.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass

from .counting import DEFAULT_MAX_VECTORS, PointCount, point_count_stratified
from .errors import InvariantViolationError, ValidationError
from .exactlinalg import log_base
from .groebner import Budget, buchberger, ideal_dimension, radical_membership
from .poly import MultiPoly, PolyRing
from .tensor import Tensor3

__all__ = [
    "GrResult",
    "DEFAULT_MODULAR_PRIMES",
    "slice_ring",
    "slice_forms",
    "gr_exact",
    "gr_symmetry_check",
    "gr_modular",
    "modular_gr_from_counts",
    "zr_witness_check",
]

DEFAULT_MODULAR_PRIMES = (53, 59, 61, 67, 71)

# variable-name prefixes for the two kept axes, per eliminated axis
_AXIS_VARS = {2: ("x", "y"), 1: ("x", "z"), 0: ("y", "z")}


@dataclass(frozen=True)
class GrResult:
    """Geometric-rank value plus how it was obtained.

    ``gr = ambient - dim`` always holds; for the modular method ``evidence``
    carries the per-prime point counts and ``consensus_ok`` records whether
    all primes voted for the same dimension.
    """

    gr: int
    method: str
    ambient: int
    dim: int
    evidence: tuple[PointCount, ...] | None = None
    consensus_ok: bool | None = None

    def __post_init__(self):
        if self.gr != self.ambient - self.dim:
            raise InvariantViolationError("gr != ambient - dim")
        if not 0 <= self.gr <= self.ambient:
            raise InvariantViolationError(f"gr {self.gr} outside [0, {self.ambient}]")


def slice_ring(t: Tensor3, axis: int = 2) -> PolyRing:
    """Polynomial ring in the two non-eliminated axes' variables."""
    if axis not in (0, 1, 2):
        raise ValidationError(f"axis must be 0, 1 or 2, got {axis}")
    kept = [a for a in (0, 1, 2) if a != axis]
    pa, pb = _AXIS_VARS[axis]
    names = [f"{pa}{i}" for i in range(t.dims[kept[0]])] + [
        f"{pb}{i}" for i in range(t.dims[kept[1]])
    ]
    return PolyRing(names)


def slice_forms(t: Tensor3, axis: int = 2) -> tuple[PolyRing, list[MultiPoly]]:
    """The bilinear forms cut out by the slices along ``axis``.

    For axis=2 these are g_k(x, y) = sum_{i,j} T[i,j,k] x_i y_j, one per
    slice; zero slices yield no generator.
    """
    ring = slice_ring(t, axis)
    kept = [a for a in (0, 1, 2) if a != axis]
    na = t.dims[kept[0]]
    forms = []
    for s in range(t.dims[axis]):
        terms = {}
        for a in range(t.dims[kept[0]]):
            for b in range(t.dims[kept[1]]):
                idx = [0, 0, 0]
                idx[axis] = s
                idx[kept[0]] = a
                idx[kept[1]] = b
                c = t.entries[tuple(idx)]
                if c:
                    mono = [0] * ring.nvars
                    mono[a] = 1
                    mono[na + b] = 1
                    terms[tuple(mono)] = c
        poly = MultiPoly(ring, terms)
        if not poly.is_zero:
            forms.append(poly)
    return ring, forms


def gr_exact(t: Tensor3, axis: int = 2, budget: Budget | None = None) -> GrResult:
    """Exact geometric rank: ambient minus the Groebner dimension of the
    slice-form ideal.  Default eliminated axis is 2 (the 3-slices)."""
    ring, forms = slice_forms(t, axis)
    ambient = ring.nvars
    if not forms:
        return GrResult(gr=0, method=f"exact-axis-{axis}", ambient=ambient, dim=ambient)
    gb = buchberger(forms, budget=budget)
    dim = ideal_dimension(gb)
    return GrResult(gr=ambient - dim, method=f"exact-axis-{axis}", ambient=ambient, dim=dim)


def gr_symmetry_check(t: Tensor3, budget: Budget | None = None) -> tuple[int, int, int]:
    """Exact geometric rank via each of the three eliminated axes.

    The three values must coincide; a mismatch is a bug and raises."""
    g = tuple(gr_exact(t, axis=a, budget=budget).gr for a in (0, 1, 2))
    if len(set(g)) != 1:
        raise InvariantViolationError(f"axis-wise geometric ranks differ: {g}")
    return g


def modular_gr_from_counts(counts) -> GrResult:
    """Consensus geometric-rank estimate from per-prime point counts.

    Per prime: d_hat = round(log_p count); the estimate is ambient minus
    the mode of the d_hat values (ties broken toward the largest prime,
    whose estimate is the most reliable).  Disagreement across primes is
    flagged in ``consensus_ok``, never hidden.
    """
    counts = sorted(counts, key=lambda pc: pc.prime)
    if not counts:
        raise ValidationError("need at least one point count")
    ambients = {pc.ambient for pc in counts}
    if len(ambients) != 1:
        raise ValidationError(f"point counts with mixed ambient dimensions {ambients}")
    ambient = ambients.pop()
    dhats = [round(log_base(pc.count, pc.prime)) for pc in counts]
    freq = Counter(dhats)
    top = max(freq.values())
    mode = next(d for pc, d in zip(reversed(counts), reversed(dhats)) if freq[d] == top)
    return GrResult(
        gr=ambient - mode,
        method="modular",
        ambient=ambient,
        dim=mode,
        evidence=tuple(counts),
        consensus_ok=len(freq) == 1,
    )


def gr_modular(
    t: Tensor3,
    primes=DEFAULT_MODULAR_PRIMES,
    enum_axis: int | None = None,
    max_vectors: int = DEFAULT_MAX_VECTORS,
    workers: int = 1,
) -> GrResult:
    """Point-counting estimate of the geometric rank of an integer tensor.

    For each prime computes the exact |V(T_p)(F_p)| and rounds log_p of it
    to a dimension estimate; see ``modular_gr_from_counts`` for the
    consensus rule.  The per-prime evidence is always attached.
    """
    if not t.is_integer:
        raise ValidationError("modular geometric rank needs an integer tensor")
    primes = sorted(set(int(p) for p in primes))
    if not primes:
        raise ValidationError("need at least one prime")
    counts = [
        point_count_stratified(
            t, p, enum_axis=enum_axis, max_vectors=max_vectors, workers=workers
        )
        for p in primes
    ]
    return modular_gr_from_counts(counts)


def _bidegree_class(f: MultiPoly, nx: int) -> tuple[int, int]:
    """The common (x-degree, y-degree) of a witness, which must be
    bi-homogeneous of bidegree (0,1), (1,0) or (1,1)."""
    if f.is_zero:
        raise ValidationError("zero polynomial is not a valid witness")
    n = f.ring.nvars
    degs = {(sum(m[:nx]), sum(m[nx:n])) for m in f.terms}
    if len(degs) != 1:
        raise ValidationError(f"witness is not bi-homogeneous: degrees {sorted(degs)}")
    d = degs.pop()
    if d not in ((0, 1), (1, 0), (1, 1)):
        raise ValidationError(f"witness bidegree {d} is not (0,1), (1,0) or (1,1)")
    return d


def zr_witness_check(t: Tensor3, witnesses, budget: Budget | None = None) -> bool:
    """Verify a bi-homogeneous witness set for the zero-set upper bound.

    True iff every slice form of T vanishes on V(witnesses) (radical
    membership via the Rabinowitsch trick); in that case the number of
    witnesses upper-bounds the geometric rank.  Witnesses must live in the
    (x, y) ring of T and be bi-homogeneous of bidegree (0,1), (1,0) or
    (1,1); anything else is rejected.
    """
    witnesses = list(witnesses)
    if not witnesses:
        raise ValidationError("need at least one witness")
    ring, forms = slice_forms(t, axis=2)
    for w in witnesses:
        if w.ring != ring:
            raise ValidationError(
                f"witness ring {w.ring!r} does not match the tensor's slice ring {ring!r}"
            )
        _bidegree_class(w, t.dims[0])
    return all(radical_membership(g, witnesses, budget=budget) for g in forms)
