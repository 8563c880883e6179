"""Truncated polynomials over exact rationals, and a small multivariate
polynomial engine.

TruncPoly models R[x]/(x^(n+1)) with Fraction coefficients; integrality
is a checkable property of a value, not a separate type, since the same
carrier has to hold integer cohomology classes and rational character
expansions.  MultiPoly is a sparse exact multivariate polynomial used as
the brute-force side of symmetric-function identities.
"""

from __future__ import annotations

import re
from fractions import Fraction
from itertools import combinations
from math import factorial
from typing import Sequence

from .linalg import IntegerMatrix

_Scalar = (int, Fraction)


class TruncPoly:
    """Element of Q[x]/(x^(order+1)); coeffs[k] is the degree-k coefficient."""

    __slots__ = ("order", "coeffs")

    def __init__(self, order: int, coeffs: Sequence):
        if order < 0:
            raise ValueError("truncation order must be nonnegative")
        coeffs = tuple(c if type(c) is Fraction else Fraction(c) for c in coeffs)
        if len(coeffs) != order + 1:
            raise ValueError(f"expected {order + 1} coefficients, got {len(coeffs)}")
        self.order = order
        self.coeffs = coeffs

    # -- constructors ---------------------------------------------------

    @classmethod
    def constant(cls, order: int, value) -> "TruncPoly":
        return cls(order, (value,) + (0,) * order)

    @classmethod
    def one(cls, order: int) -> "TruncPoly":
        return cls.constant(order, 1)

    @classmethod
    def zero(cls, order: int) -> "TruncPoly":
        return cls(order, (0,) * (order + 1))

    @classmethod
    def monomial(cls, order: int, degree: int, coefficient=1) -> "TruncPoly":
        if not 0 <= degree <= order:
            raise ValueError("monomial degree outside the truncation range")
        coeffs = [0] * (order + 1)
        coeffs[degree] = coefficient
        return cls(order, coeffs)

    @classmethod
    def variable(cls, order: int) -> "TruncPoly":
        return cls.monomial(order, 1)

    # -- structure ------------------------------------------------------

    def coefficient(self, degree: int) -> Fraction:
        if not 0 <= degree <= self.order:
            raise ValueError("degree outside the truncation range")
        return self.coeffs[degree]

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def is_integral(self) -> bool:
        """Whether every coefficient has denominator one."""
        return all(c.denominator == 1 for c in self.coeffs)

    def __eq__(self, other) -> bool:
        if not isinstance(other, TruncPoly):
            return NotImplemented
        return self.order == other.order and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash((self.order, self.coeffs))

    def __repr__(self) -> str:
        return f"TruncPoly(order={self.order}, {self.render()!r})"

    def _check_order(self, other: "TruncPoly"):
        if self.order != other.order:
            raise ValueError("truncation orders do not match")

    # -- arithmetic -------------------------------------------------------

    def __add__(self, other):
        if isinstance(other, _Scalar):
            other = TruncPoly.constant(self.order, other)
        if not isinstance(other, TruncPoly):
            return NotImplemented
        self._check_order(other)
        return TruncPoly(self.order, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return TruncPoly(self.order, tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        if isinstance(other, _Scalar):
            other = TruncPoly.constant(self.order, other)
        if not isinstance(other, TruncPoly):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, _Scalar):
            return TruncPoly(self.order, tuple(c * other for c in self.coeffs))
        if not isinstance(other, TruncPoly):
            return NotImplemented
        self._check_order(other)
        n = self.order
        out = [Fraction(0)] * (n + 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j in range(0, n + 1 - i):
                    b = other.coeffs[j]
                    if b:
                        out[i + j] += a * b
        return TruncPoly(n, out)

    __rmul__ = __mul__

    def __pow__(self, exponent: int):
        if exponent < 0:
            raise ValueError("negative powers are not defined here")
        result = TruncPoly.one(self.order)
        base = self
        e = exponent
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    # -- rendering --------------------------------------------------------

    def render(self) -> str:
        terms = [(k, c) for k, c in enumerate(self.coeffs) if c != 0]
        if not terms:
            return "0"
        parts = []
        for index, (k, c) in enumerate(terms):
            if index == 0:
                sign, mag = ("-", -c) if c < 0 else ("", c)
            else:
                sign, mag = (" - ", -c) if c < 0 else (" + ", c)
            parts.append(sign + _render_term(mag, k))
        return "".join(parts)

    def __str__(self) -> str:
        return self.render()

    @classmethod
    def parse(cls, text: str, order: int | None = None) -> "TruncPoly":
        """Inverse of render; also accepts loose input like "1+2x+x^2".

        If order is omitted, it is taken to be the highest degree present.
        """
        compact = re.sub(r"\s+", "", text)
        if not compact:
            raise ValueError("empty polynomial text")
        coeffs: dict[int, Fraction] = {}
        for match in re.finditer(r"[+-]?[^+-]+", compact):
            term = match.group(0)
            sign = Fraction(1)
            if term[0] in "+-":
                if term[0] == "-":
                    sign = Fraction(-1)
                term = term[1:]
            m = re.fullmatch(
                r"(?:(?P<c>\d+(?:/\d+)?)\*?)?(?P<v>x(?:\^(?P<e>\d+))?)?", term
            )
            if not m or (m.group("c") is None and m.group("v") is None):
                raise ValueError(f"cannot parse polynomial term {term!r}")
            coeff = Fraction(m.group("c")) if m.group("c") else Fraction(1)
            if m.group("v") is None:
                degree = 0
            else:
                degree = int(m.group("e")) if m.group("e") else 1
            coeffs[degree] = coeffs.get(degree, Fraction(0)) + sign * coeff
        top = max(coeffs) if coeffs else 0
        if order is None:
            order = top
        if top > order:
            raise ValueError("term degree exceeds the requested truncation order")
        out = [Fraction(0)] * (order + 1)
        for k, c in coeffs.items():
            out[k] = c
        return cls(order, out)


def _render_term(c: Fraction, k: int, var: str = "x") -> str:
    if k == 0:
        return str(c)
    v = var if k == 1 else f"{var}^{k}"
    if c == 1:
        return v
    return f"{c}*{v}"


def exp_nilpotent(p: TruncPoly) -> TruncPoly:
    """Exponential of a polynomial with zero constant term.

    The argument is nilpotent in the truncated ring, so the series stops
    at the truncation order and every coefficient is an exact rational.
    """
    if p.coeffs[0] != 0:
        raise ValueError("exp requires a zero constant term")
    result = TruncPoly.one(p.order)
    term = TruncPoly.one(p.order)
    for k in range(1, p.order + 1):
        term = term * p * Fraction(1, k)
        result = result + term
    return result


def pairing_matrix(n: int) -> IntegerMatrix:
    """Top-coefficient multiplication pairing of the degree-n truncated ring.

    Entry (p, q) is the degree-n coefficient of x^p * x^q, extracted by an
    honest product in the ring; the matrix is antidiagonal ones and serves
    as the unimodularity witness for the cup-product pairing.
    """
    if n < 0:
        raise ValueError("order must be nonnegative")
    rows = []
    for p in range(n + 1):
        xp = TruncPoly.monomial(n, p)
        row = []
        for q in range(n + 1):
            c = (xp * TruncPoly.monomial(n, q)).coefficient(n)
            if c.denominator != 1:
                raise RuntimeError("pairing produced a non-integer")
            row.append(int(c))
        rows.append(row)
    return IntegerMatrix.from_rows(rows, cols=n + 1)


# ----------------------------------------------------------------------
# sparse multivariate polynomials
# ----------------------------------------------------------------------


class MultiPoly:
    """Exact multivariate polynomial, sparse over exponent vectors."""

    __slots__ = ("variable_count", "terms")

    def __init__(self, variable_count: int, terms=None):
        if variable_count < 0:
            raise ValueError("variable count must be nonnegative")
        self.variable_count = variable_count
        cleaned: dict[tuple[int, ...], Fraction] = {}
        for exps, c in (terms or {}).items():
            exps = tuple(int(e) for e in exps)
            if len(exps) != variable_count:
                raise ValueError("exponent vector has the wrong length")
            if any(e < 0 for e in exps):
                raise ValueError("exponents must be nonnegative")
            c = Fraction(c)
            if c:
                cleaned[exps] = cleaned.get(exps, Fraction(0)) + c
        self.terms = {e: c for e, c in cleaned.items() if c}

    @classmethod
    def _make(cls, variable_count: int, terms: dict) -> "MultiPoly":
        # internal constructor for arithmetic results whose terms are
        # already canonical (tuple keys, Fraction values, no zeros)
        obj = object.__new__(cls)
        obj.variable_count = variable_count
        obj.terms = terms
        return obj

    # -- constructors ---------------------------------------------------

    @classmethod
    def zero(cls, variable_count: int) -> "MultiPoly":
        return cls(variable_count)

    @classmethod
    def constant(cls, variable_count: int, value) -> "MultiPoly":
        return cls(variable_count, {(0,) * variable_count: value})

    @classmethod
    def variable(cls, variable_count: int, index: int) -> "MultiPoly":
        if not 0 <= index < variable_count:
            raise ValueError("variable index out of range")
        exps = tuple(1 if i == index else 0 for i in range(variable_count))
        return cls(variable_count, {exps: 1})

    @classmethod
    def monomial(cls, variable_count: int, exponents, coefficient=1) -> "MultiPoly":
        return cls(variable_count, {tuple(exponents): coefficient})

    # -- structure --------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=0)

    def extend(self, variable_count: int) -> "MultiPoly":
        """Reinterpret in a larger variable set (new variables unused)."""
        if variable_count < self.variable_count:
            raise ValueError("cannot shrink the variable set")
        pad = (0,) * (variable_count - self.variable_count)
        return MultiPoly(variable_count, {e + pad: c for e, c in self.terms.items()})

    def __eq__(self, other) -> bool:
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return (self.variable_count == other.variable_count
                and self.terms == other.terms)

    def __hash__(self) -> int:
        return hash((self.variable_count, tuple(sorted(self.terms.items()))))

    def __repr__(self) -> str:
        return f"MultiPoly({self.variable_count}, {self.render()!r})"

    def _check_vars(self, other: "MultiPoly"):
        if self.variable_count != other.variable_count:
            raise ValueError("variable counts do not match")

    # -- arithmetic -------------------------------------------------------

    def __add__(self, other):
        if isinstance(other, _Scalar):
            other = MultiPoly.constant(self.variable_count, other)
        if not isinstance(other, MultiPoly):
            return NotImplemented
        self._check_vars(other)
        terms = dict(self.terms)
        for e, c in other.terms.items():
            s = terms.get(e, 0) + c
            if s:
                terms[e] = s
            elif e in terms:
                del terms[e]
        return MultiPoly._make(self.variable_count, terms)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly._make(self.variable_count,
                               {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, _Scalar):
            other = MultiPoly.constant(self.variable_count, other)
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, _Scalar):
            if not other:
                return MultiPoly._make(self.variable_count, {})
            factor = other if type(other) is Fraction else Fraction(other)
            return MultiPoly._make(self.variable_count,
                                   {e: c * factor for e, c in self.terms.items()})
        if not isinstance(other, MultiPoly):
            return NotImplemented
        self._check_vars(other)
        terms: dict[tuple[int, ...], Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                s = terms.get(e, 0) + c1 * c2
                if s:
                    terms[e] = s
                else:
                    terms.pop(e, None)
        return MultiPoly._make(self.variable_count, terms)

    __rmul__ = __mul__

    def __pow__(self, exponent: int):
        if exponent < 0:
            raise ValueError("negative powers are not defined here")
        result = MultiPoly.constant(self.variable_count, 1)
        base = self
        e = exponent
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    # -- substitution and evaluation ---------------------------------------

    def substitute(self, values: Sequence["MultiPoly"]) -> "MultiPoly":
        """Plug a polynomial in for each variable (all in a common ring)."""
        if len(values) != self.variable_count:
            raise ValueError("need one substitution value per variable")
        if not values:
            nvars = 0
        else:
            nvars = values[0].variable_count
            for v in values:
                if v.variable_count != nvars:
                    raise ValueError("substitution values live in different rings")
        power_cache: dict[tuple[int, int], MultiPoly] = {}

        def power(i: int, e: int) -> MultiPoly:
            key = (i, e)
            if key not in power_cache:
                power_cache[key] = values[i] ** e
            return power_cache[key]

        acc = MultiPoly.zero(nvars)
        for exps, c in self.terms.items():
            term = MultiPoly.constant(nvars, c)
            for i, e in enumerate(exps):
                if e:
                    term = term * power(i, e)
            acc = acc + term
        return acc

    def evaluate(self, values: Sequence, one):
        """Evaluate in any commutative ring given its multiplicative unit.

        values[i] replaces variable i; `one` supplies the ring so that
        constant terms and the empty product have somewhere to live.
        """
        if len(values) != self.variable_count:
            raise ValueError("need one value per variable")
        acc = 0 * one
        for exps, c in self.terms.items():
            term = one
            for i, e in enumerate(exps):
                if e:
                    term = term * (values[i] ** e)
            acc = acc + c * term
        return acc

    # -- rendering ----------------------------------------------------------

    def render(self, names: Sequence[str] | None = None) -> str:
        if names is None:
            names = [f"x{i + 1}" for i in range(self.variable_count)]
        if len(names) != self.variable_count:
            raise ValueError("need one name per variable")
        if not self.terms:
            return "0"
        ordered = sorted(self.terms,
                         key=lambda e: (-sum(e), tuple(-x for x in e)))
        parts = []
        for index, exps in enumerate(ordered):
            c = self.terms[exps]
            if index == 0:
                sign, mag = ("-", -c) if c < 0 else ("", c)
            else:
                sign, mag = (" - ", -c) if c < 0 else (" + ", c)
            factors = []
            for name, e in zip(names, exps):
                if e == 1:
                    factors.append(name)
                elif e > 1:
                    factors.append(f"{name}^{e}")
            if not factors:
                parts.append(f"{sign}{mag}")
            elif mag == 1:
                parts.append(sign + "*".join(factors))
            else:
                parts.append(f"{sign}{mag}*" + "*".join(factors))
        return "".join(parts)

    def __str__(self) -> str:
        return self.render()


def elementary_symmetric(k: int, n: int) -> MultiPoly:
    """k-th elementary symmetric polynomial in n variables (zero for k > n)."""
    if k < 0:
        raise ValueError("index must be nonnegative")
    if k == 0:
        return MultiPoly.constant(n, 1)
    if k > n:
        return MultiPoly.zero(n)
    terms = {}
    for subset in combinations(range(n), k):
        exps = tuple(1 if i in subset else 0 for i in range(n))
        terms[exps] = 1
    return MultiPoly(n, terms)


def power_sum(k: int, n: int) -> MultiPoly:
    """k-th power sum x_1^k + .. + x_n^k."""
    if k < 1:
        raise ValueError("index must be at least 1")
    terms = {}
    for i in range(n):
        exps = tuple(k if j == i else 0 for j in range(n))
        terms[exps] = 1
    return MultiPoly(n, terms)


def factorial_fraction(k: int) -> Fraction:
    """1/k! as an exact rational."""
    return Fraction(1, factorial(k))
