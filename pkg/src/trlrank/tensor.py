"""Dense 3-tensors over exact rationals, and the constructions built on them.

A ``Tensor3`` stores a numpy object array of ``Fraction`` entries, indexed
(i, j, k), 0-based.  All operations return new tensors; instances are
treated as immutable values.
"""

from __future__ import annotations

import itertools
import random
from fractions import Fraction

import numpy as np

from .errors import ValidationError

__all__ = [
    "Tensor3",
    "Hypergraph3",
    "identity_tensor",
    "w_tensor",
    "matmul_tensor",
    "hypergraph_tensor",
    "random_tensor",
    "restrict",
    "direct_sum",
    "entrywise_sum",
    "kron",
    "permute_axes",
    "flatten",
    "contract_x",
    "contract_axis",
    "evaluate",
]


def _as_fraction_array(arr) -> np.ndarray:
    out = np.empty(np.shape(arr), dtype=object)
    flat_out = out.reshape(-1)
    for idx, v in enumerate(np.asarray(arr, dtype=object).reshape(-1)):
        flat_out[idx] = Fraction(v)
    return out


class Tensor3:
    """Dense n1 x n2 x n3 coefficient array with Fraction entries."""

    __slots__ = ("dims", "entries")

    def __init__(self, entries):
        arr = _as_fraction_array(entries)
        if arr.ndim != 3:
            raise ValidationError(f"expected a 3-dimensional array, got ndim={arr.ndim}")
        if min(arr.shape) < 1:
            raise ValidationError(f"tensor dimensions must all be >= 1, got {arr.shape}")
        object.__setattr__(self, "dims", tuple(int(d) for d in arr.shape))
        object.__setattr__(self, "entries", arr)

    def __setattr__(self, name, value):
        raise AttributeError("Tensor3 is immutable")

    @classmethod
    def zeros(cls, n1: int, n2: int, n3: int) -> "Tensor3":
        if min(n1, n2, n3) < 1:
            raise ValidationError("tensor dimensions must all be >= 1")
        return cls(np.full((n1, n2, n3), Fraction(0), dtype=object))

    @classmethod
    def from_entries(cls, dims, triples) -> "Tensor3":
        """Build from {(i, j, k): value} pairs; unlisted entries are zero."""
        arr = np.full(tuple(dims), Fraction(0), dtype=object)
        for (i, j, k), v in dict(triples).items():
            arr[i, j, k] = Fraction(v)
        return cls(arr)

    def __getitem__(self, idx):
        return self.entries[idx]

    def __eq__(self, other):
        if not isinstance(other, Tensor3):
            return NotImplemented
        return self.dims == other.dims and bool((self.entries == other.entries).all())

    def __hash__(self):
        return hash((self.dims, tuple(self.entries.reshape(-1))))

    def __add__(self, other):
        return entrywise_sum(self, other)

    def __neg__(self):
        return Tensor3(-self.entries)

    def __sub__(self, other):
        return entrywise_sum(self, -other)

    def scale(self, c) -> "Tensor3":
        return Tensor3(self.entries * Fraction(c))

    @property
    def is_integer(self) -> bool:
        """True iff every entry has denominator 1 (required for mod-p work)."""
        return all(v.denominator == 1 for v in self.entries.reshape(-1))

    def nonzeros(self) -> list[tuple[int, int, int]]:
        return [tuple(int(v) for v in ix) for ix in np.argwhere(self.entries != Fraction(0))]

    def nnz(self) -> int:
        return len(self.nonzeros())

    def to_int_array(self) -> np.ndarray:
        """Entries as a Python-int object array; rejects non-integer tensors."""
        if not self.is_integer:
            raise ValidationError("tensor has non-integer coefficients")
        out = np.empty(self.dims, dtype=object)
        flat = out.reshape(-1)
        for idx, v in enumerate(self.entries.reshape(-1)):
            flat[idx] = int(v)
        return out

    def mod_p(self, p: int) -> np.ndarray:
        """Entries reduced mod p as a contiguous int64 array (needs p < 2**31)."""
        if p >= 2**31:
            raise ValidationError("mod-p reduction kernels require p < 2**31")
        ints = self.to_int_array()
        out = np.empty(self.dims, dtype=np.int64)
        flat_in = ints.reshape(-1)
        flat_out = out.reshape(-1)
        for idx in range(flat_in.shape[0]):
            flat_out[idx] = flat_in[idx] % p
        return out

    def __repr__(self):
        return f"Tensor3(dims={self.dims}, nnz={self.nnz()})"


class Hypergraph3:
    """Symmetric 3-uniform hypergraph on [n]: edge set closed under all
    6 coordinate permutations."""

    __slots__ = ("n", "edges")

    def __init__(self, n: int, edges):
        n = int(n)
        if n < 1:
            raise ValidationError("hypergraph needs n >= 1 vertices")
        edge_set = frozenset(tuple(int(v) for v in e) for e in edges)
        for e in edge_set:
            if len(e) != 3 or not all(0 <= v < n for v in e):
                raise ValidationError(f"edge {e} out of range for n={n}")
            for perm in itertools.permutations(e):
                if perm not in edge_set:
                    raise ValidationError(
                        f"edge set not closed under permutations: {perm} missing"
                    )
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "edges", edge_set)

    def __setattr__(self, name, value):
        raise AttributeError("Hypergraph3 is immutable")

    @classmethod
    def from_generators(cls, n: int, triples) -> "Hypergraph3":
        """Close the given triples under coordinate permutations."""
        closed = set()
        for e in triples:
            closed.update(itertools.permutations(tuple(int(v) for v in e)))
        return cls(n, closed)

    def __eq__(self, other):
        if not isinstance(other, Hypergraph3):
            return NotImplemented
        return self.n == other.n and self.edges == other.edges

    def __repr__(self):
        return f"Hypergraph3(n={self.n}, edges={len(self.edges)})"


# ---------------------------------------------------------------------------
# constructions


def identity_tensor(r: int) -> Tensor3:
    """r x r x r diagonal tensor with ones at (i, i, i)."""
    r = int(r)
    if r < 1:
        raise ValidationError("identity tensor needs r >= 1")
    arr = np.full((r, r, r), Fraction(0), dtype=object)
    for i in range(r):
        arr[i, i, i] = Fraction(1)
    return Tensor3(arr)


def w_tensor() -> Tensor3:
    """The 2x2x2 W-tensor: x0*y0*z1 + x0*y1*z0 + x1*y0*z0."""
    return Tensor3.from_entries(
        (2, 2, 2), {(0, 0, 1): 1, (0, 1, 0): 1, (1, 0, 0): 1}
    )


def matmul_tensor(e: int, h: int, l: int) -> Tensor3:
    """Matrix multiplication tensor of the trilinear form trace(X Y Z)
    for X: e x h, Y: h x l, Z: l x e.

    Index encoding is row-major: x-index = i*h + j, y-index = j*l + k,
    z-index = k*e + i.
    """
    e, h, l = int(e), int(h), int(l)
    if min(e, h, l) < 1:
        raise ValidationError("matrix multiplication tensor needs e, h, l >= 1")
    arr = np.full((e * h, h * l, l * e), Fraction(0), dtype=object)
    for i in range(e):
        for j in range(h):
            for k in range(l):
                arr[i * h + j, j * l + k, k * e + i] = Fraction(1)
    return Tensor3(arr)


def hypergraph_tensor(hg: Hypergraph3) -> Tensor3:
    """n x n x n 0/1 tensor supported on the edges plus the full diagonal."""
    n = hg.n
    arr = np.full((n, n, n), Fraction(0), dtype=object)
    for i in range(n):
        arr[i, i, i] = Fraction(1)
    for (i, j, k) in hg.edges:
        arr[i, j, k] = Fraction(1)
    return Tensor3(arr)


def random_tensor(dims, lo: int, hi: int, seed: int) -> Tensor3:
    """Uniform integer entries in [lo, hi]; deterministic for a given seed."""
    n1, n2, n3 = (int(d) for d in dims)
    if lo > hi:
        raise ValidationError(f"empty coefficient range {lo}..{hi}")
    rng = random.Random(seed)
    arr = np.empty((n1, n2, n3), dtype=object)
    for idx in np.ndindex(n1, n2, n3):
        arr[idx] = Fraction(rng.randint(lo, hi))
    return Tensor3(arr)


# ---------------------------------------------------------------------------
# operations


def _as_matrix(mat) -> np.ndarray:
    arr = _as_fraction_array(mat)
    if arr.ndim != 2:
        raise ValidationError("expected a 2-dimensional matrix")
    return arr


def restrict(t: Tensor3, a, b, c) -> Tensor3:
    """Apply matrices on the three axes: out[i,j,k] = sum A[i,a] B[j,b] C[k,c] T[a,b,c]."""
    am, bm, cm = _as_matrix(a), _as_matrix(b), _as_matrix(c)
    if (am.shape[1], bm.shape[1], cm.shape[1]) != t.dims:
        raise ValidationError(
            f"restriction shapes {am.shape}, {bm.shape}, {cm.shape} do not match dims {t.dims}"
        )
    cur = np.tensordot(am, t.entries, axes=(1, 0))      # (m1, n2, n3)
    cur = np.tensordot(bm, cur, axes=(1, 1))            # (m2, m1, n3)
    cur = np.tensordot(cm, cur, axes=(1, 2))            # (m3, m2, m1)
    return Tensor3(cur.transpose(2, 1, 0))


def direct_sum(s: Tensor3, t: Tensor3) -> Tensor3:
    """Block-diagonal tensor with blocks s and t."""
    d = tuple(ds + dt for ds, dt in zip(s.dims, t.dims))
    arr = np.full(d, Fraction(0), dtype=object)
    arr[: s.dims[0], : s.dims[1], : s.dims[2]] = s.entries
    arr[s.dims[0]:, s.dims[1]:, s.dims[2]:] = t.entries
    return Tensor3(arr)


def entrywise_sum(s: Tensor3, t: Tensor3) -> Tensor3:
    if s.dims != t.dims:
        raise ValidationError(f"dimension mismatch: {s.dims} vs {t.dims}")
    return Tensor3(s.entries + t.entries)


def kron(s: Tensor3, t: Tensor3) -> Tensor3:
    """Kronecker product with row-major pair encoding on every axis:
    out[(a,i),(b,j),(c,k)] = s[a,b,c] * t[i,j,k]."""
    outer = np.multiply.outer(s.entries, t.entries)      # (s1,s2,s3,t1,t2,t3)
    arr = outer.transpose(0, 3, 1, 4, 2, 5).reshape(
        s.dims[0] * t.dims[0], s.dims[1] * t.dims[1], s.dims[2] * t.dims[2]
    )
    return Tensor3(arr)


def permute_axes(t: Tensor3, perm) -> Tensor3:
    """Relocate coefficients: out[i0,i1,i2] = t[i_{perm[0]}, i_{perm[1]}, i_{perm[2]}]."""
    perm = tuple(int(x) for x in perm)
    if sorted(perm) != [0, 1, 2]:
        raise ValidationError(f"{perm} is not a permutation of (0, 1, 2)")
    return Tensor3(t.entries.transpose(perm))


def flatten(t: Tensor3, axis: int) -> np.ndarray:
    """Matrix with rows along ``axis``, columns = row-major pairing of the
    other two axes in increasing order.  Returns a Fraction object array."""
    if axis not in (0, 1, 2):
        raise ValidationError(f"axis must be 0, 1 or 2, got {axis}")
    return np.moveaxis(t.entries, axis, 0).reshape(t.dims[axis], -1)


def contract_axis(t: Tensor3, vec, axis: int) -> np.ndarray:
    """Contract one axis with a vector of exact scalars; returns the matrix
    over the two remaining axes (in increasing axis order)."""
    if axis not in (0, 1, 2):
        raise ValidationError(f"axis must be 0, 1 or 2, got {axis}")
    v = _as_fraction_array(vec)
    if v.ndim != 1 or v.shape[0] != t.dims[axis]:
        raise ValidationError(f"vector length {v.shape} does not match axis {axis} of {t.dims}")
    return np.tensordot(v, np.moveaxis(t.entries, axis, 0), axes=(0, 0))


def contract_x(t: Tensor3, vec) -> np.ndarray:
    """The n2 x n3 matrix (sum_i x_i T[i, :, :])."""
    return contract_axis(t, vec, 0)


def evaluate(t: Tensor3, x, y, z) -> Fraction:
    """Trilinear value sum T[i,j,k] x_i y_j z_k."""
    xm = contract_x(t, x)
    yv = _as_fraction_array(y)
    zv = _as_fraction_array(z)
    if yv.shape != (t.dims[1],) or zv.shape != (t.dims[2],):
        raise ValidationError("vector lengths do not match tensor dims")
    total = np.tensordot(np.tensordot(yv, xm, axes=(0, 0)), zv, axes=(0, 0))
    return Fraction(total.item() if isinstance(total, np.ndarray) else total)
