"""
Recovering the dimensions n_1, ..., n_r of P^{n_1} x ... x P^{n_r} from its Poincaré polynomial

    P(t) = prod_i (1 + t + ... + t^{n_i}).

The coefficient of t is r. Multiplying by (1 - t)^r gives prod_i (1 - t^{n_i + 1}); the smallest
positive exponent with a non-zero coefficient is min(n_i) + 1, so the factors can be peeled off
one at a time, smallest first.
"""
from typing import Iterable

from algebra.graded_ring import multiprojective_space_ring, poincare_polynomial
from algebra.intpoly import IntPoly
from decide.verdict import MultisetOfDims
from errors import NotAProductError


def _divide_by_one_minus_power(coefficients: list[int], d: int) -> list[int] | None:
    """Exact division of a dense polynomial by (1 - t^d), or None when it leaves a remainder."""
    quotient_length = len(coefficients) - d
    if quotient_length <= 0:
        return None
    quotient = [0] * quotient_length
    for k in range(quotient_length):
        quotient[k] = coefficients[k] + (quotient[k - d] if k >= d else 0)
    for k in range(quotient_length, len(coefficients)):
        expected = -quotient[k - d] if 0 <= k - d < quotient_length else 0
        if coefficients[k] != expected:
            return None
    return quotient


def multiset_from_poincare(P: IntPoly) -> MultisetOfDims:
    """The multiset {n_1, ..., n_r} with P = prod (1 + ... + t^{n_i})."""
    coefficients = P.univariate_coefficients() if not P.is_zero() else []
    if not coefficients or coefficients[0] != 1 or any(c < 0 for c in coefficients):
        raise NotAProductError(
            f"{P.render(['t'])} does not have constant term 1 and non-negative coefficients."
        )
    r = coefficients[1] if len(coefficients) > 1 else 0
    Q = P * (IntPoly.univariate([1, -1]) ** r)
    remaining = Q.univariate_coefficients()
    dims = []
    while remaining != [1]:
        d = next(k for k in range(1, len(remaining)) if remaining[k] != 0)
        if d == 1 or len(dims) == r:
            raise NotAProductError(f"{P.render(['t'])} is not a product of 1 + t + ... + t^n.")
        quotient = _divide_by_one_minus_power(remaining, d)
        if quotient is None:
            raise NotAProductError(
                f"{P.render(['t'])} is not a product of 1 + t + ... + t^n: (1 - t^{d}) does not "
                "divide exactly."
            )
        dims.append(d - 1)
        while len(quotient) > 1 and quotient[-1] == 0:
            quotient.pop()
        remaining = quotient
    if len(dims) != r:
        raise NotAProductError(f"{P.render(['t'])} has {r} factors by its linear term.")
    return MultisetOfDims.of(dims)


def multiset_of_product(dims: Iterable[int]) -> MultisetOfDims:
    """The multiset recovered from the Poincaré polynomial of prod P^{n_i}; P^0 factors vanish."""
    ring = multiprojective_space_ring([n for n in dims if n > 0])
    return multiset_from_poincare(poincare_polynomial(ring))
