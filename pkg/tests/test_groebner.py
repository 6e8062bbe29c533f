import random
from fractions import Fraction

import pytest

from trlrank import (
    Budget,
    MultiPoly,
    PolyRing,
    buchberger,
    ideal_dimension,
    normal_form,
    radical_membership,
)
from trlrank.errors import BudgetExceededError, ValidationError
from trlrank.groebner import s_polynomial, verify_groebner
from trlrank.poly import grevlex_key


@pytest.fixture
def xyz():
    ring = PolyRing(["x", "y", "z"])
    return (ring, *ring.gens())


@pytest.fixture
def ex1():
    """The 4-variable ideal <x0*y0, x1*y0 + x0*y1> whose variety has
    dimension 2 (three linear-plane components)."""
    ring = PolyRing(["x0", "x1", "y0", "y1"])
    x0, x1, y0, y1 = ring.gens()
    return ring, [x0 * y0, x1 * y0 + x0 * y1]


def test_grevlex_order():
    # grevlex on (x, y, z): x^2 > xy > y^2 > xz > yz > z^2 at degree 2
    order = [(2, 0, 0), (1, 1, 0), (0, 2, 0), (1, 0, 1), (0, 1, 1), (0, 0, 2)]
    assert sorted(order, key=grevlex_key, reverse=True) == order
    assert grevlex_key((0, 0, 3)) > grevlex_key((2, 0, 0))   # degree first


def test_poly_arithmetic(xyz):
    ring, x, y, z = xyz
    p = (x + y) * (x - y)
    assert p == x * x - y * y
    assert (p - p).is_zero
    assert (2 * x + 1).lead() == ((1, 0, 0), Fraction(2))
    assert (x * y + z * z * z).lead()[0] == (0, 0, 3)
    with pytest.raises(ValidationError):
        x + PolyRing(["a"]).var(0)


def test_buchberger_single_and_already_basis(xyz):
    ring, x, y, z = xyz
    gb = buchberger([x])
    assert [g for g in gb] == [x]
    gb2 = buchberger([x * y, x * z])
    assert sorted(str(g) for g in gb2) == ["x*y", "x*z"]


def test_buchberger_example1_dimension(ex1):
    ring, gens = ex1
    gb = buchberger(gens)
    assert ideal_dimension(gb) == 2
    # the reduced basis gains x0^2*y1 beyond the generators
    lms = {g.lead()[0] for g in gb}
    assert (1, 0, 1, 0) in lms and (0, 1, 1, 0) in lms and (2, 0, 0, 1) in lms


def test_buchberger_matches_sympy_reduced_basis():
    import sympy

    xs = sympy.symbols("x0 x1 y0 y1")
    ring = PolyRing(["x0", "x1", "y0", "y1"])
    x0, x1, y0, y1 = ring.gens()
    cases = [
        [x0 * y0, x1 * y0 + x0 * y1],
        [x0 * x0 - y1, x1 * y0 - 1],
        [x0 * y1 + x1 * y0, x0 * x1 - y0 * y1, y0 * y0 - y1 * y1],
    ]
    sym_cases = [
        [xs[0] * xs[2], xs[1] * xs[2] + xs[0] * xs[3]],
        [xs[0] ** 2 - xs[3], xs[1] * xs[2] - 1],
        [xs[0] * xs[3] + xs[1] * xs[2], xs[0] * xs[1] - xs[2] * xs[3], xs[2] ** 2 - xs[3] ** 2],
    ]

    def poly_to_sympy(g):
        expr = 0
        for mono, c in g.terms.items():
            term = sympy.Rational(c.numerator, c.denominator)
            for v, e in zip(xs, mono):
                term *= v**e
            expr += term
        return sympy.expand(expr)

    for gens, sgens in zip(cases, sym_cases):
        ours = {poly_to_sympy(g) for g in buchberger(gens)}
        theirs = {
            sympy.expand(sympy.Poly(p, *xs).monic().as_expr())
            for p in sympy.groebner(sgens, *xs, order="grevlex").exprs
        }
        assert ours == theirs


def test_normal_form(xyz):
    ring, x, y, z = xyz
    gb = buchberger([x * y - 1, y * y - x])
    for g in gb:
        assert normal_form(g, gb).is_zero
    assert normal_form(ring.one(), buchberger([x])) == ring.one()
    assert normal_form(x * x * y, buchberger([x * y])).is_zero
    # remainder contains no monomial divisible by a leading monomial
    r = normal_form(x * x * y + z, gb)
    lms = gb.leading_monomials()
    for m in r.terms:
        assert not any(all(a <= b for a, b in zip(lm, m)) for lm in lms)


def test_ideal_dimension_extremes():
    from trlrank import GroebnerBasis

    for n in (1, 3, 6):
        ring = PolyRing([f"v{i}" for i in range(n)])
        assert ideal_dimension(GroebnerBasis(ring, ())) == n      # zero ideal
        assert ideal_dimension(buchberger([ring.var(0)])) == n - 1
        assert ideal_dimension(buchberger(ring.gens())) == 0
    ring = PolyRing(["a", "b", "c", "d"])
    a, b, c, d = ring.gens()
    assert ideal_dimension(buchberger([a * b * c * d])) == 3


def test_ideal_dimension_invariances(ex1):
    ring, gens = ex1
    base = ideal_dimension(buchberger(gens))
    assert ideal_dimension(buchberger(list(reversed(gens)))) == base
    redundant = gens + [gens[0] * gens[1], gens[0].term_mul(Fraction(3), (1, 1, 0, 0))]
    assert ideal_dimension(buchberger(redundant)) == base
    assert ideal_dimension(buchberger(gens, pair_strategy="fifo")) == base
    # reduced bases are unique: both strategies give identical polynomials
    assert list(buchberger(gens)) == list(buchberger(gens, pair_strategy="fifo"))


def test_ideal_dimension_var_guard():
    ring = PolyRing([f"v{i}" for i in range(25)])
    gb = buchberger([ring.var(0)])
    with pytest.raises(ValidationError):
        ideal_dimension(gb)


def test_self_certification(ex1):
    ring, gens = ex1
    gb = buchberger(gens, certify=False)
    verify_groebner(gb)       # must not raise
    bad = type(gb)(ring, tuple(gens))    # raw generators are not a basis
    with pytest.raises(Exception):
        verify_groebner(bad)


def test_s_polynomial_cancels_leads(xyz):
    ring, x, y, z = xyz
    f = x * x * y + z
    g = x * y * y - 1
    s = s_polynomial(f, g)
    assert grevlex_key(s.lead()[0]) < grevlex_key((2, 2, 0))


def test_budget_pairs_and_time(ex1):
    ring, gens = ex1
    with pytest.raises(BudgetExceededError):
        buchberger(gens, budget=Budget(max_pairs=0))
    with pytest.raises(BudgetExceededError):
        buchberger(gens, budget=Budget(seconds=-1.0))


def test_radical_membership(xyz):
    ring, x, y, z = xyz
    assert radical_membership(x, [x * x])
    assert not radical_membership(y, [x])
    assert radical_membership(x * y + y * z, [x, z])
    assert radical_membership(ring.zero(), [x])
    # closure: every generator is in the radical of the ideal
    gens = [x * y - z, y * y + x]
    for g in gens:
        assert radical_membership(g, gens)


def test_radical_membership_w_slices():
    # both slice forms of the W-tensor vanish on V(x0, y0)
    ring = PolyRing(["x0", "x1", "y0", "y1"])
    x0, x1, y0, y1 = ring.gens()
    assert radical_membership(x0 * y0, [x0, y0])
    assert radical_membership(x1 * y0 + x0 * y1, [x0, y0])
    assert not radical_membership(x1 * y1, [x0, y0])


def test_zero_generators_rejected(xyz):
    ring, x, y, z = xyz
    with pytest.raises(ValidationError):
        buchberger([ring.zero()])
    gb = buchberger([x, ring.zero(), y])      # zeros are dropped
    assert len(gb) == 2


def test_random_ideals_certify_and_stay_stable():
    rng = random.Random(101)
    ring = PolyRing(["x", "y", "z"])
    gens_vars = ring.gens()
    for _ in range(20):
        gens = []
        for _ in range(rng.randint(1, 3)):
            terms = {}
            for _ in range(rng.randint(1, 4)):
                mono = tuple(rng.randint(0, 2) for _ in range(3))
                terms[mono] = terms.get(mono, 0) + rng.randint(-3, 3)
            p = MultiPoly(ring, terms)
            if not p.is_zero:
                gens.append(p)
        if not gens:
            continue
        gb = buchberger(gens)            # certify=True re-checks S-pairs
        shuffled = gens[:]
        rng.shuffle(shuffled)
        assert list(buchberger(shuffled)) == list(gb)
        for g in gens:
            assert normal_form(g, gb).is_zero
