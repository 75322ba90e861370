"""
Exact polynomials in Z[q, t] and truncated power series in Z[q][[t]].

Coefficients are Python integers, so arithmetic never wraps around.

>>> q, t = BiPoly.q(), BiPoly.t()
>>> str((1 + t * q) * (1 + t * q**2))
'1 + t*q + t*q^2 + t^2*q^3'
>>> str(delta_t(t**3))
't^2 + t^2*q + t^2*q^2'
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping

__all__ = [
    "BiPoly", "TruncSeries", "Discrepancy", "DEFAULT_ORDER",
    "q_integer", "poly_add", "poly_mul", "poly_eq", "delta_t", "subs_t_qt",
    "evaluate", "series_reciprocal", "series_mul_poly", "series_eq",
    "series_first_discrepancy", "poly_first_discrepancy", "carlitz_lhs",
    "product_one_plus_tq", "denominator_flag", "denominator_carlitz",
]

DEFAULT_ORDER = 20

Monomial = tuple[int, int]  # (deg_q, deg_t)


class BiPoly:
    """
    A polynomial in q and t with integer coefficients, in canonical form:
    a mapping ``(deg_q, deg_t) -> coeff`` without zero coefficients.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Monomial, int] | Iterable[tuple[Monomial, int]] = ()):
        acc: dict[Monomial, int] = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for (a, b), c in items:
            if a < 0 or b < 0:
                raise ValueError(f"negative exponent in monomial q^{a} t^{b}")
            acc[(a, b)] = acc.get((a, b), 0) + int(c)
        self._terms = {m: c for m, c in acc.items() if c}
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict[Monomial, int]) -> BiPoly:
        # terms must already be canonical
        p = cls.__new__(cls)
        p._terms = terms
        p._hash = None
        return p

    @classmethod
    def const(cls, c: int) -> BiPoly:
        return cls._raw({(0, 0): c} if c else {})

    @classmethod
    def q(cls, k: int = 1) -> BiPoly:
        return cls._raw({(k, 0): 1})

    @classmethod
    def t(cls, k: int = 1) -> BiPoly:
        return cls._raw({(0, k): 1})

    @classmethod
    def monomial(cls, deg_q: int, deg_t: int, c: int = 1) -> BiPoly:
        return cls({(deg_q, deg_t): c})

    @property
    def terms(self) -> dict[Monomial, int]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def coeff(self, deg_q: int, deg_t: int = 0) -> int:
        return self._terms.get((deg_q, deg_t), 0)

    def is_zero(self) -> bool:
        return not self._terms

    def deg_t(self) -> int:
        return max((b for _, b in self._terms), default=-1)

    def deg_q(self) -> int:
        return max((a for a, _ in self._terms), default=-1)

    def t_coeff(self, r: int) -> BiPoly:
        """The coefficient of t^r, a polynomial in q alone."""
        return BiPoly._raw({(a, 0): c for (a, b), c in self._terms.items() if b == r})

    def t_coeffs(self) -> list[BiPoly]:
        return [self.t_coeff(r) for r in range(self.deg_t() + 1)]

    @staticmethod
    def _coerce(other) -> BiPoly:
        if isinstance(other, BiPoly):
            return other
        if isinstance(other, int) and not isinstance(other, bool):
            return BiPoly.const(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self._terms)
        for m, c in other._terms.items():
            s = out.get(m, 0) + c
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        return BiPoly._raw(out)

    __radd__ = __add__

    def __neg__(self):
        return BiPoly._raw({m: -c for m, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out: dict[Monomial, int] = {}
        for (a1, b1), c1 in self._terms.items():
            for (a2, b2), c2 in other._terms.items():
                m = (a1 + a2, b1 + b2)
                out[m] = out.get(m, 0) + c1 * c2
        return BiPoly._raw({m: c for m, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative powers are not polynomials")
        result, base = BiPoly.const(1), self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def sorted_terms(self) -> list[tuple[int, int, int]]:
        """Triples ``[deg_t, deg_q, coeff]`` in ascending (deg_t, deg_q) order."""
        return sorted((b, a, c) for (a, b), c in self._terms.items())

    def __str__(self):
        if not self._terms:
            return "0"
        out = []
        for b, a, c in self.sorted_terms():
            factors = []
            if b:
                factors.append("t" if b == 1 else f"t^{b}")
            if a:
                factors.append("q" if a == 1 else f"q^{a}")
            mono = "*".join(factors)
            mag = abs(c)
            if not mono:
                body = str(mag)
            elif mag == 1:
                body = mono
            else:
                body = f"{mag}*{mono}"
            if not out:
                out.append(body if c > 0 else f"-{body}")
            else:
                out.append(("+ " if c > 0 else "- ") + body)
        return " ".join(out)

    def __repr__(self):
        return f"BiPoly({str(self)!r})"


def q_integer(i: int) -> BiPoly:
    """[i]_q = 1 + q + ... + q^(i-1), with [0]_q = 0."""
    if i < 0:
        raise ValueError("q-integers are defined for i >= 0")
    return BiPoly._raw({(k, 0): 1 for k in range(i)})


def poly_add(a: BiPoly, b: BiPoly) -> BiPoly:
    return a + b


def poly_mul(a: BiPoly, b: BiPoly) -> BiPoly:
    return a * b


def poly_eq(a: BiPoly, b: BiPoly) -> bool:
    return a == b


def subs_t_qt(p: BiPoly) -> BiPoly:
    """P(q, t) -> P(q, q t)."""
    return BiPoly._raw({(a + b, b): c for (a, b), c in p.items()})


def _exact_div_t_qminus1(p: BiPoly) -> BiPoly:
    # divide by t*(q - 1), one t-degree at a time, failing on a remainder
    out: dict[Monomial, int] = {}
    for r in range(p.deg_t() + 1):
        col = p.t_coeff(r)
        if col.is_zero():
            continue
        if r == 0:
            raise ArithmeticError("not divisible by t: nonzero t^0 part")
        # synthetic division of sum c_a q^a by (q - 1), highest degree first
        deg = col.deg_q()
        carry = 0
        for a in range(deg, 0, -1):
            carry += col.coeff(a)
            if carry:
                out[(a - 1, r - 1)] = carry
        if carry + col.coeff(0) != 0:
            raise ArithmeticError("not divisible by (q - 1)")
    return BiPoly._raw(out)


def delta_t(p: BiPoly) -> BiPoly:
    """The q-difference operator (P(q, qt) - P(q, t)) / (qt - t), by exact division."""
    return _exact_div_t_qminus1(subs_t_qt(p) - p)


def evaluate(p: BiPoly, q0: int, t0: int) -> int:
    return sum(c * q0 ** a * t0 ** b for (a, b), c in p.items())


@dataclass(frozen=True)
class Discrepancy:
    t_degree: int
    q_degree: int
    lhs: int
    rhs: int

    def as_list(self) -> list[int]:
        return [self.t_degree, self.q_degree, self.lhs, self.rhs]


def poly_first_discrepancy(lhs: BiPoly, rhs: BiPoly) -> Discrepancy | None:
    """The smallest (deg_t, deg_q) where the coefficients differ, if any."""
    diff = lhs - rhs
    if diff.is_zero():
        return None
    b, a, _ = diff.sorted_terms()[0]
    return Discrepancy(b, a, lhs.coeff(a, b), rhs.coeff(a, b))


class TruncSeries:
    """
    A power series in t, truncated after t^order; coefficients are
    polynomials in q (BiPoly with no t).
    """

    __slots__ = ("order", "coeffs")

    def __init__(self, coeffs: Iterable[BiPoly], order: int | None = None):
        coeffs = list(coeffs)
        if order is None:
            order = len(coeffs) - 1
        if order < 0:
            raise ValueError("truncation order must be >= 0")
        coeffs = coeffs[:order + 1]
        coeffs += [BiPoly()] * (order + 1 - len(coeffs))
        for r, c in enumerate(coeffs):
            if c.deg_t() > 0:
                raise ValueError(f"coefficient of t^{r} contains t")
        self.order = order
        self.coeffs = tuple(coeffs)

    @classmethod
    def from_poly(cls, p: BiPoly, order: int) -> TruncSeries:
        return cls([p.t_coeff(r) for r in range(order + 1)], order)

    def __getitem__(self, r: int) -> BiPoly:
        return self.coeffs[r]

    def __len__(self):
        return len(self.coeffs)

    def __eq__(self, other):
        if not isinstance(other, TruncSeries):
            return NotImplemented
        return series_eq(self, other)

    def __hash__(self):
        return hash((self.order, self.coeffs))

    def to_poly(self) -> BiPoly:
        out = BiPoly()
        for r, c in enumerate(self.coeffs):
            out = out + BiPoly._raw({(a, r): v for (a, _), v in c.items()})
        return out

    def __repr__(self):
        body = ", ".join(str(c) for c in self.coeffs)
        return f"TruncSeries([{body}], order={self.order})"


def series_reciprocal(d: BiPoly, order: int = DEFAULT_ORDER) -> TruncSeries:
    """
    X with d * X = 1 mod t^(order+1). The t^0 coefficient of d must be 1.

    >>> series_reciprocal(1 - BiPoly.t() * BiPoly.q(), 2).coeffs
    (BiPoly('1'), BiPoly('q'), BiPoly('q^2'))
    """
    if d.t_coeff(0) != BiPoly.const(1):
        raise ValueError(f"reciprocal needs t^0 coefficient 1, got {d.t_coeff(0)}")
    dk = [d.t_coeff(k) for k in range(min(d.deg_t(), order) + 1)]
    x = [BiPoly.const(1)]
    for r in range(1, order + 1):
        acc = BiPoly()
        for k in range(1, min(r, len(dk) - 1) + 1):
            if not dk[k].is_zero():
                acc = acc + dk[k] * x[r - k]
        x.append(-acc)
    return TruncSeries(x, order)


def series_mul_poly(x: TruncSeries, p: BiPoly) -> TruncSeries:
    order = x.order
    pk = [p.t_coeff(k) for k in range(min(p.deg_t(), order) + 1)]
    out = []
    for r in range(order + 1):
        acc = BiPoly()
        for k in range(min(r, len(pk) - 1) + 1):
            if not pk[k].is_zero() and not x[r - k].is_zero():
                acc = acc + pk[k] * x[r - k]
        out.append(acc)
    return TruncSeries(out, order)


def series_first_discrepancy(x: TruncSeries, y: TruncSeries) -> Discrepancy | None:
    """Compare through the smaller of the two orders."""
    for r in range(min(x.order, y.order) + 1):
        d = poly_first_discrepancy(x[r], y[r])
        if d is not None:
            return Discrepancy(r, d.q_degree, d.lhs, d.rhs)
    return None


def series_eq(x: TruncSeries, y: TruncSeries) -> bool:
    return series_first_discrepancy(x, y) is None


def carlitz_lhs(n: int, order: int = DEFAULT_ORDER) -> TruncSeries:
    """Coefficients [r+1]_q^n for r = 0..order."""
    if n < 1:
        raise ValueError("carlitz_lhs needs n >= 1")
    return TruncSeries([q_integer(r + 1) ** n for r in range(order + 1)], order)


def product_one_plus_tq(n: int, start: int = 1) -> BiPoly:
    """prod_{i=start}^{n} (1 + t q^i)."""
    out = BiPoly.const(1)
    for i in range(start, n + 1):
        out = out * (1 + BiPoly.monomial(i, 1))
    return out


def denominator_carlitz(n: int) -> BiPoly:
    """prod_{i=0}^{n} (1 - t q^i)."""
    out = BiPoly.const(1)
    for i in range(n + 1):
        out = out * (1 - BiPoly.monomial(i, 1))
    return out


def denominator_flag(n: int) -> BiPoly:
    """(1 - t) prod_{i=1}^{n} (1 - t^2 q^(2i))."""
    out = 1 - BiPoly.t()
    for i in range(1, n + 1):
        out = out * (1 - BiPoly.monomial(2 * i, 2))
    return out
