"""Newton power-sum polynomials and the Chern character of formal bundles.

A formal bundle is a rank together with a total Chern class: an integer
truncated polynomial with constant term 1 whose degree-k coefficient
stands for the class in cohomological degree 2k.  That degree-halving
convention matters: the spaces served here have no odd cohomology, so one
polynomial degree per even cohomological degree keeps everything dense
and small, and a truncation order of n reaches cohomological degree 2n.

The character is assembled from the Newton polynomials s_k, the unique
integer polynomials expressing the k-th power sum in the elementary
symmetric polynomials.  Only the first few instances are classical
lore; the general ones come out of the standard recurrence

    p_k = e_1 p_{k-1} - e_2 p_{k-2} + ... + (-1)^k e_{k-1} p_1
          + (-1)^{k-1} k e_k

and are certified against brute-force expansion in the test suite.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial

from .truncpoly import MultiPoly, TruncPoly


@dataclass(frozen=True)
class NewtonPolynomial:
    """The polynomial s_k with p_k = s_k(e_1, .., e_k) identically."""

    k: int
    expression: MultiPoly

    def variable_names(self) -> list[str]:
        return [f"e{i + 1}" for i in range(self.expression.variable_count)]

    def render(self) -> str:
        return self.expression.render(self.variable_names())


@lru_cache(maxsize=None)
def newton_s(k: int) -> NewtonPolynomial:
    """Newton polynomial s_k in the formal variables e_1 .. e_k."""
    if k < 1:
        raise ValueError("index must be at least 1")
    if k == 1:
        return NewtonPolynomial(1, MultiPoly.variable(1, 0))
    expr = MultiPoly.zero(k)
    for j in range(1, k):
        e_j = MultiPoly.variable(k, j - 1)
        p_prev = newton_s(k - j).expression.extend(k)
        term = e_j * p_prev
        expr = expr + term if j % 2 == 1 else expr - term
    e_k = MultiPoly.variable(k, k - 1)
    tail = k * e_k
    expr = expr + tail if k % 2 == 1 else expr - tail
    return NewtonPolynomial(k, expr)


@dataclass(frozen=True)
class FormalBundle:
    """A rank plus a total Chern class, the formal input to the character.

    The class is an integer polynomial with constant coefficient exactly 1
    and nothing above the rank: classes in degrees beyond the rank vanish
    by definition, and here they are simply not allowed in.  Where the
    classes come from geometrically is outside this module; they are taken
    as given.
    """

    dimension: int
    total_chern: TruncPoly

    def __post_init__(self):
        if self.dimension < 0:
            raise ValueError("bundle dimension must be nonnegative")
        if not self.total_chern.is_integral():
            raise ValueError("Chern classes must have integer coefficients")
        if self.total_chern.coefficient(0) != 1:
            raise ValueError("the total Chern class must have constant term 1")
        for k in range(self.dimension + 1, self.total_chern.order + 1):
            if self.total_chern.coefficient(k):
                raise ValueError(
                    f"class in degree {k} is nonzero beyond the bundle rank"
                )

    @property
    def order(self) -> int:
        return self.total_chern.order

    def chern_class(self, k: int) -> int:
        if k > self.order:
            return 0
        return int(self.total_chern.coefficient(k))


def trivial_bundle(rank: int, order: int) -> FormalBundle:
    return FormalBundle(rank, TruncPoly.one(order))


def line_bundle(order: int, c1: int = 1) -> FormalBundle:
    """Rank-1 bundle with the given first class (1 recovers the Hopf class)."""
    if order == 0:
        return FormalBundle(1, TruncPoly.one(0))
    return FormalBundle(1, TruncPoly.one(order) + TruncPoly.monomial(order, 1, c1))


def chern_character(bundle: FormalBundle, truncation: int) -> TruncPoly:
    """Total Chern character: rank + sum of s_k(c_1, .., c_k)/k!.

    Computed in Q[x]/(x^(truncation+1)); the degree-0 coefficient is the
    rank by construction.
    """
    if bundle.order != truncation:
        raise ValueError("bundle truncation does not match the requested order")
    n = truncation
    one = TruncPoly.one(n)
    values = [TruncPoly.monomial(n, k, bundle.chern_class(k)) if k <= n
              else TruncPoly.zero(n) for k in range(1, n + 1)]
    result = TruncPoly.constant(n, bundle.dimension)
    for k in range(1, n + 1):
        s_k = newton_s(k).expression
        result = result + Fraction(1, factorial(k)) * s_k.evaluate(values[:k], one)
    return result


def whitney_sum(a: FormalBundle, b: FormalBundle) -> FormalBundle:
    """Direct sum: ranks add, total classes multiply in the truncated ring."""
    if a.order != b.order:
        raise ValueError("truncation orders do not match")
    return FormalBundle(a.dimension + b.dimension, a.total_chern * b.total_chern)


def tensor_line(a: FormalBundle, b: FormalBundle) -> FormalBundle:
    """Tensor product of two line bundles: the first classes add.

    Higher-rank tensor products need the full splitting principle and are
    deliberately not provided; the character multiplicativity they would
    encode is exercised on lines, where c_1 addition is the whole story.
    """
    if a.dimension != 1 or b.dimension != 1:
        raise ValueError("tensor products are implemented for line bundles only")
    if a.order != b.order:
        raise ValueError("truncation orders do not match")
    return line_bundle(a.order, a.chern_class(1) + b.chern_class(1))
