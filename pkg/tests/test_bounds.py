import random

import pytest

from trlrank import (
    Budget,
    Hypergraph3,
    Tensor3,
    chain_report,
    flattening_ranks,
    gr_exact,
    hypergraph_tensor,
    identity_tensor,
    independence_number,
    matmul_gr_formula,
    matmul_tensor,
    random_tensor,
    slice_rank_upper,
    strassen_border_lower,
    subrank_diag_lower,
    w_tensor,
)
from trlrank.errors import ValidationError

CAPSET3 = Hypergraph3.from_generators(3, [(0, 1, 2)])
SUNFLOWER2 = Hypergraph3.from_generators(2, [(0, 0, 1)])


def test_flattening_ranks():
    for r in (1, 2, 4):
        assert flattening_ranks(identity_tensor(r)) == (r, r, r)
    assert flattening_ranks(w_tensor()) == (2, 2, 2)
    assert flattening_ranks(matmul_tensor(2, 2, 2)) == (4, 4, 4)
    # <1,2,3> has dims (2, 6, 3); the middle flattening has one nonzero
    # per row in distinct columns, hence full rank 6
    assert flattening_ranks(matmul_tensor(1, 2, 3)) == (2, 6, 3)


def test_slice_rank_upper():
    assert slice_rank_upper(w_tensor()) == 2
    for r in (1, 3):
        assert slice_rank_upper(identity_tensor(r)) == r
    for m in (2, 3):
        assert slice_rank_upper(matmul_tensor(m, m, m)) == m * m


def test_subrank_diag_lower():
    for r in (1, 2, 4):
        assert subrank_diag_lower(identity_tensor(r)) == r
    assert subrank_diag_lower(w_tensor()) == 1
    assert subrank_diag_lower(hypergraph_tensor(CAPSET3)) == 2
    assert subrank_diag_lower(hypergraph_tensor(SUNFLOWER2)) == 1
    assert subrank_diag_lower(matmul_tensor(2, 2, 2)) == 2
    assert subrank_diag_lower(Tensor3.zeros(2, 2, 2)) == 0
    with pytest.raises(ValidationError):
        subrank_diag_lower(Tensor3.zeros(1, 2, 2))


def test_independence_number():
    assert independence_number(Hypergraph3(5, [])) == 5
    assert independence_number(CAPSET3) == 2
    assert independence_number(SUNFLOWER2) == 1
    # loop edge (i,i,i) excludes the vertex
    loops = Hypergraph3.from_generators(3, [(0, 0, 0)])
    assert independence_number(loops) == 2


def test_alpha_lower_bounds_gr():
    for hg in (CAPSET3, SUNFLOWER2, Hypergraph3(4, [])):
        t = hypergraph_tensor(hg)
        assert independence_number(hg) <= gr_exact(t).gr


def test_alpha_diag_gr_chain_random_hypergraphs():
    # an independent set S names the diagonal family {(i,i,i): i in S},
    # so alpha <= diagonal lower bound <= GR on every hypergraph tensor
    rng = random.Random(140)
    for _ in range(15):
        n = rng.randint(2, 4)
        gens = [
            tuple(rng.randrange(n) for _ in range(3))
            for _ in range(rng.randint(0, 3))
        ]
        hg = Hypergraph3.from_generators(n, gens)
        t = hypergraph_tensor(hg)
        alpha = independence_number(hg)
        diag = subrank_diag_lower(t)
        assert alpha <= diag <= gr_exact(t).gr


def test_matmul_gr_formula_values():
    assert matmul_gr_formula(2, 2, 2) == 3
    assert matmul_gr_formula(3, 3, 3) == 7
    assert matmul_gr_formula(1, 1, 3) == 1
    assert matmul_gr_formula(2, 3, 3) == 5
    assert matmul_gr_formula(2, 2, 5) == 4
    # ceil(3 m^2 / 4) on the cube diagonal
    for m in range(1, 12):
        assert matmul_gr_formula(m, m, m) == -((-3 * m * m) // 4)
    with pytest.raises(ValidationError):
        matmul_gr_formula(0, 1, 1)


def test_matmul_formula_symmetric_and_strassen_equal():
    import itertools

    for e, h, l in itertools.product(range(1, 5), repeat=3):
        vals = {matmul_gr_formula(*perm) for perm in itertools.permutations((e, h, l))}
        assert len(vals) == 1
        assert strassen_border_lower(e, h, l) == matmul_gr_formula(e, h, l)


def test_gr_slice_rank_gap():
    for m in (2, 3):
        assert matmul_gr_formula(m, m, m) < slice_rank_upper(matmul_tensor(m, m, m))


def test_chain_report_w():
    rep = chain_report(w_tensor(), primes=[2, 3, 5])
    assert rep.subrank_lower == 1
    assert rep.gr.gr == 2 and rep.gr.method == "exact-axis-2"
    assert rep.sr_upper == 2
    assert rep.flattening == (2, 2, 2)
    assert [r.prime for r in rep.ar_samples] == [2, 3, 5]
    assert not rep.missing
    rep.check_chain()


def test_chain_report_identity3():
    rep = chain_report(identity_tensor(3))
    assert (rep.subrank_lower, rep.gr.gr, rep.sr_upper) == (3, 3, 3)
    assert rep.flattening == (3, 3, 3)


def test_chain_report_matmul222():
    rep = chain_report(matmul_tensor(2, 2, 2), matmul_dims=(2, 2, 2))
    assert rep.subrank_lower <= 3
    assert rep.gr.gr == 3
    assert rep.sr_upper == 4
    assert rep.flattening == (4, 4, 4)
    assert rep.matmul_oracle == 3


def test_chain_report_noncubic_marks_missing():
    rep = chain_report(matmul_tensor(1, 2, 3))
    assert rep.subrank_lower is None
    assert "subrank_lower" in rep.missing
    assert rep.gr is not None


def test_chain_report_budget_falls_back_to_modular():
    rep = chain_report(matmul_tensor(2, 2, 2), budget=Budget(max_pairs=1))
    assert rep.gr is not None and rep.gr.method == "modular"
    assert rep.gr.gr == 3


def test_chain_report_rational_tensor_skips_ar():
    from fractions import Fraction

    t = w_tensor().scale(Fraction(1, 2))
    rep = chain_report(t, primes=[2, 3])
    assert rep.ar_samples is None
    assert "ar_samples" in rep.missing
    assert rep.gr.gr == 2                  # exact path still works


def test_chain_invariant_random():
    rng = random.Random(90210)
    for _ in range(20):
        n = rng.randint(1, 3)
        t = random_tensor((n, n, n), -2, 2, rng.randrange(10**9))
        rep = chain_report(t)
        low = rep.subrank_lower
        assert low <= rep.gr.gr <= rep.sr_upper <= min(rep.flattening)
