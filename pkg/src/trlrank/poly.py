"""Exact multivariate polynomials over Q under graded reverse-lex order.

Monomials are plain exponent tuples (one slot per ring variable); a
polynomial is a dict {exponents: Fraction}.  The term order is fixed to
grevlex throughout the package.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import ValidationError

__all__ = ["PolyRing", "MultiPoly", "grevlex_key"]


def grevlex_key(mono: tuple[int, ...]):
    """Sort key: m1 > m2 in grevlex iff grevlex_key(m1) > grevlex_key(m2)."""
    return (sum(mono), tuple(-e for e in reversed(mono)))


class PolyRing:
    """A polynomial ring fixed by its ordered variable names."""

    __slots__ = ("names",)

    def __init__(self, names):
        names = tuple(str(s) for s in names)
        if len(set(names)) != len(names):
            raise ValidationError("duplicate variable names")
        object.__setattr__(self, "names", names)

    def __setattr__(self, name, value):
        raise AttributeError("PolyRing is immutable")

    @property
    def nvars(self) -> int:
        return len(self.names)

    def __eq__(self, other):
        return isinstance(other, PolyRing) and self.names == other.names

    def __hash__(self):
        return hash(self.names)

    def __repr__(self):
        return f"PolyRing({', '.join(self.names)})"

    def zero(self) -> "MultiPoly":
        return MultiPoly(self, {})

    def const(self, c) -> "MultiPoly":
        c = Fraction(c)
        if c == 0:
            return self.zero()
        return MultiPoly(self, {(0,) * self.nvars: c})

    def one(self) -> "MultiPoly":
        return self.const(1)

    def var(self, i: int) -> "MultiPoly":
        if not 0 <= i < self.nvars:
            raise ValidationError(f"variable index {i} out of range")
        mono = tuple(1 if j == i else 0 for j in range(self.nvars))
        return MultiPoly(self, {mono: Fraction(1)})

    def gens(self) -> list["MultiPoly"]:
        return [self.var(i) for i in range(self.nvars)]

    def extend(self, extra_names) -> "PolyRing":
        return PolyRing(self.names + tuple(str(s) for s in extra_names))


class MultiPoly:
    """Immutable polynomial: {exponent tuple: nonzero Fraction}."""

    __slots__ = ("ring", "terms", "_lead")

    def __init__(self, ring: PolyRing, terms: dict):
        clean = {}
        for m, c in terms.items():
            c = Fraction(c)
            if c:
                m = tuple(int(e) for e in m)
                if len(m) != ring.nvars or any(e < 0 for e in m):
                    raise ValidationError(f"bad exponent vector {m} for {ring}")
                clean[m] = c
        object.__setattr__(self, "ring", ring)
        object.__setattr__(self, "terms", clean)
        object.__setattr__(self, "_lead", None)

    def __setattr__(self, name, value):
        raise AttributeError("MultiPoly is immutable")

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def lead(self) -> tuple[tuple[int, ...], Fraction]:
        """(leading monomial, leading coefficient) under grevlex."""
        if self.is_zero:
            raise ValidationError("zero polynomial has no leading term")
        if self._lead is None:
            lm = max(self.terms, key=grevlex_key)
            object.__setattr__(self, "_lead", (lm, self.terms[lm]))
        return self._lead

    def total_degree(self) -> int:
        if self.is_zero:
            return -1
        return max(sum(m) for m in self.terms)

    def sorted_terms(self) -> list[tuple[tuple[int, ...], Fraction]]:
        return sorted(self.terms.items(), key=lambda t: grevlex_key(t[0]), reverse=True)

    def _same_ring(self, other: "MultiPoly"):
        if self.ring != other.ring:
            raise ValidationError("polynomials from different rings")

    def __add__(self, other):
        other = self._coerce(other)
        self._same_ring(other)
        res = dict(self.terms)
        for m, c in other.terms.items():
            s = res.get(m, 0) + c
            if s:
                res[m] = s
            else:
                res.pop(m, None)
        return MultiPoly(self.ring, res)

    def __neg__(self):
        return MultiPoly(self.ring, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    __radd__ = __add__

    def _coerce(self, other) -> "MultiPoly":
        if isinstance(other, MultiPoly):
            return other
        return self.ring.const(other)

    def __mul__(self, other):
        other = self._coerce(other)
        self._same_ring(other)
        res: dict = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                s = res.get(m, 0) + c1 * c2
                if s:
                    res[m] = s
                else:
                    res.pop(m, None)
        return MultiPoly(self.ring, res)

    __rmul__ = __mul__

    def term_mul(self, coeff: Fraction, mono: tuple[int, ...]) -> "MultiPoly":
        """Multiply by a single term coeff * x^mono."""
        if coeff == 0:
            return self.ring.zero()
        return MultiPoly(
            self.ring,
            {tuple(a + b for a, b in zip(m, mono)): c * coeff for m, c in self.terms.items()},
        )

    def monic(self) -> "MultiPoly":
        if self.is_zero:
            return self
        _, lc = self.lead()
        if lc == 1:
            return self
        return MultiPoly(self.ring, {m: c / lc for m, c in self.terms.items()})

    def primitive(self) -> "MultiPoly":
        """Integer-content normalization with positive leading coefficient."""
        if self.is_zero:
            return self
        num_gcd = 0
        den_lcm = 1
        for c in self.terms.values():
            num_gcd = _gcd(num_gcd, abs(c.numerator))
            den_lcm = den_lcm * c.denominator // _gcd(den_lcm, c.denominator)
        factor = Fraction(den_lcm, num_gcd)
        if self.lead()[1] < 0:
            factor = -factor
        return MultiPoly(self.ring, {m: c * factor for m, c in self.terms.items()})

    def lift(self, bigger: PolyRing) -> "MultiPoly":
        """Reinterpret in a ring extended by extra trailing variables."""
        if bigger.names[: self.ring.nvars] != self.ring.names:
            raise ValidationError("target ring does not extend this ring")
        pad = (0,) * (bigger.nvars - self.ring.nvars)
        return MultiPoly(bigger, {m + pad: c for m, c in self.terms.items()})

    def degrees_in_block(self, lo: int, hi: int) -> set[int]:
        """Set of per-monomial total degrees in variables lo..hi-1."""
        return {sum(m[lo:hi]) for m in self.terms} if self.terms else set()

    def __eq__(self, other):
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return self.ring == other.ring and self.terms == other.terms

    def __hash__(self):
        return hash((self.ring, tuple(sorted(self.terms.items()))))

    def __repr__(self):
        if self.is_zero:
            return "0"
        parts = []
        for m, c in self.sorted_terms():
            mono = "*".join(
                f"{self.ring.names[i]}^{e}" if e > 1 else self.ring.names[i]
                for i, e in enumerate(m)
                if e
            )
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append(f"-{mono}")
            else:
                parts.append(f"{c}*{mono}")
        out = " + ".join(parts)
        return out.replace("+ -", "- ")


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a
