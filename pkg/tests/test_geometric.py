import random
from fractions import Fraction

import numpy as np
import pytest

from trlrank import (
    Budget,
    Tensor3,
    direct_sum,
    entrywise_sum,
    gr_exact,
    gr_modular,
    gr_symmetry_check,
    identity_tensor,
    matmul_point_count,
    matmul_tensor,
    modular_gr_from_counts,
    random_tensor,
    restrict,
    w_tensor,
    zr_witness_check,
)
from trlrank.errors import BudgetExceededError, ValidationError
from trlrank.geometric import slice_forms, slice_ring


def rand_small(rng, max_dim=3):
    dims = tuple(rng.randint(1, max_dim) for _ in range(3))
    return random_tensor(dims, -2, 2, rng.randrange(10**9))


def test_slice_forms_w():
    ring, forms = slice_forms(w_tensor())
    assert ring.names == ("x0", "x1", "y0", "y1")
    assert sorted(str(f) for f in forms) == ["x0*y0", "x1*y0 + x0*y1"]


def test_gr_exact_w():
    res = gr_exact(w_tensor())
    assert res.gr == 2 and res.ambient == 4 and res.dim == 2
    assert res.method == "exact-axis-2"


def test_gr_exact_identity():
    for r in range(1, 6):
        assert gr_exact(identity_tensor(r)).gr == r


def test_gr_exact_matmul222():
    assert gr_exact(matmul_tensor(2, 2, 2)).gr == 3


def test_gr_exact_zero_and_single_slice():
    assert gr_exact(Tensor3.zeros(2, 3, 4)).gr == 0
    # one nonzero slice: slice rank 1 forces GR 1
    t = Tensor3.from_entries((1, 3, 3), {(0, j, j): 1 for j in range(3)})
    assert gr_exact(t).gr == 1


def test_gr_matmul_degenerate_shapes():
    for m in (2, 3, 4):
        assert gr_exact(matmul_tensor(m, 1, 1)).gr == 1
        assert gr_exact(matmul_tensor(1, m, 1)).gr == 1
        assert gr_exact(matmul_tensor(1, 1, m)).gr == 1


def test_gr_symmetry_examples():
    assert gr_symmetry_check(w_tensor()) == (2, 2, 2)
    assert gr_symmetry_check(identity_tensor(2)) == (2, 2, 2)
    rng = random.Random(17)
    t = random_tensor((2, 2, 2), -2, 2, rng.randrange(10**9))
    g = gr_symmetry_check(t)
    assert g[0] == g[1] == g[2] == gr_exact(t).gr


def test_gr_modular_w():
    res = gr_modular(w_tensor(), primes=[53, 59, 61])
    assert res.gr == 2 and res.method == "modular"
    assert res.consensus_ok is True
    assert [pc.prime for pc in res.evidence] == [53, 59, 61]
    for pc in res.evidence:
        assert pc.count == pc.prime * (3 * pc.prime - 2)


def test_gr_modular_identity2():
    res = gr_modular(identity_tensor(2), primes=[53])
    assert res.gr == 2
    assert res.evidence[0].count == (2 * 53 - 1) ** 2 == 11025


def test_gr_modular_matmul333_closed_form():
    counts = [matmul_point_count(3, 3, 3, p) for p in (101, 211, 499)]
    res = modular_gr_from_counts(counts)
    assert res.dim == 11 and res.gr == 18 - 11 == 7
    assert res.consensus_ok is True


def test_gr_modular_validation():
    half = Tensor3.from_entries((1, 1, 1), {(0, 0, 0): Fraction(1, 2)})
    with pytest.raises(ValidationError):
        gr_modular(half)
    with pytest.raises(ValidationError):
        gr_modular(w_tensor(), primes=[])


def test_gr_modular_flags_disagreement():
    # synthetic evidence with a split vote: largest-prime mode wins and
    # consensus is flagged false
    from trlrank.counting import PointCount

    fake = [
        PointCount(prime=5, count=5**3, ambient=4, ar=1.0),
        PointCount(prime=7, count=7**2, ambient=4, ar=2.0),
        PointCount(prime=11, count=11**2, ambient=4, ar=2.0),
    ]
    res = modular_gr_from_counts(fake)
    assert res.dim == 2 and res.consensus_ok is False


def test_gr_exact_rational_coefficients():
    # GR is invariant under nonzero scaling; rational entries go through
    # the exact path unchanged
    half_w = w_tensor().scale(Fraction(1, 2))
    assert not half_w.is_integer
    assert gr_exact(half_w).gr == 2
    mixed = Tensor3.from_entries(
        (2, 2, 2), {(0, 0, 0): Fraction(1, 3), (1, 1, 1): Fraction(-2, 5)}
    )
    assert gr_exact(mixed).gr == 2


def test_gr_modular_explicit_axis():
    res = gr_modular(w_tensor(), primes=[53, 59], enum_axis=2)
    assert res.gr == 2 and res.ambient == 4


def test_gr_symmetry_on_rational_tensors():
    rng = random.Random(61803)
    for _ in range(10):
        dims = tuple(rng.randint(1, 3) for _ in range(3))
        arr = np.empty(dims, dtype=object)
        for idx in np.ndindex(*dims):
            arr[idx] = Fraction(rng.randint(-4, 4), rng.randint(1, 4))
        g = gr_symmetry_check(Tensor3(arr))
        assert g[0] == g[1] == g[2]


def test_gr_modular_agrees_with_exact_random():
    rng = random.Random(2024)
    for _ in range(12):
        t = rand_small(rng, max_dim=2)
        exact = gr_exact(t).gr
        est = gr_modular(t, primes=[53, 59, 61]).gr
        assert est == exact, t.entries.tolist()


def test_gr_monotone_under_restriction():
    rng = random.Random(31337)
    for _ in range(12):
        t = rand_small(rng)
        mats = []
        for axis in range(3):
            rows = rng.randint(1, 3)
            mats.append(
                np.array(
                    [
                        [Fraction(rng.randint(-2, 2), rng.randint(1, 2)) for _ in range(t.dims[axis])]
                        for _ in range(rows)
                    ],
                    dtype=object,
                )
            )
        s = restrict(t, *mats)
        assert gr_exact(s).gr <= gr_exact(t).gr


def test_gr_additive_and_subadditive():
    rng = random.Random(7311)
    for _ in range(10):
        s = rand_small(rng, max_dim=2)
        t = rand_small(rng, max_dim=2)
        assert gr_exact(direct_sum(s, t)).gr == gr_exact(s).gr + gr_exact(t).gr
        u = random_tensor(s.dims, -2, 2, rng.randrange(10**9))
        assert gr_exact(entrywise_sum(s, u)).gr <= gr_exact(s).gr + gr_exact(u).gr


def test_gr_budget_propagates():
    with pytest.raises(BudgetExceededError):
        gr_exact(matmul_tensor(2, 2, 2), budget=Budget(max_pairs=1))


def test_zr_witness_examples():
    w = w_tensor()
    ring = slice_ring(w)
    x0, x1, y0, y1 = ring.gens()
    assert zr_witness_check(w, [x0, y0]) is True
    i1 = identity_tensor(1)
    r1 = slice_ring(i1)
    assert zr_witness_check(i1, [r1.var(0)]) is True
    i2 = identity_tensor(2)
    r2 = slice_ring(i2)
    assert zr_witness_check(i2, [r2.var(0)]) is False


def test_zr_witness_bidegree_validation():
    w = w_tensor()
    ring = slice_ring(w)
    x0, x1, y0, y1 = ring.gens()
    assert zr_witness_check(w, [x0 * y0 + x1 * y1, x0]) in (True, False)  # (1,1) ok
    with pytest.raises(ValidationError):
        zr_witness_check(w, [x0 * x1])             # bidegree (2,0)
    with pytest.raises(ValidationError):
        zr_witness_check(w, [x0 + y0])             # not bi-homogeneous
    with pytest.raises(ValidationError):
        zr_witness_check(w, [ring.one()])          # bidegree (0,0)
    with pytest.raises(ValidationError):
        zr_witness_check(w, [])
    from trlrank import PolyRing

    other = PolyRing(["a", "b", "c", "d"])
    with pytest.raises(ValidationError):
        zr_witness_check(w, [other.var(0)])


def test_zr_bound_dominates_gr():
    # a passing witness set upper-bounds GR
    w = w_tensor()
    ring = slice_ring(w)
    x0, x1, y0, y1 = ring.gens()
    assert zr_witness_check(w, [x0, y0])
    assert gr_exact(w).gr <= 2
