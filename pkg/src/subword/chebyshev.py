"""Chebyshev polynomials of the first kind, the generalized one-parameter
family, and coefficient cross-checks against word-interval Mobius values."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import DomainError, IntegerOverflowError
from .mobius import mobius_main, mobius_oracle
from .poset import builtin_poset


def binom(n: int, k: int) -> int:
    """Binomial coefficient with C(n,k) = 0 for n < 0, k < 0 or k > n."""
    if n < 0 or k < 0 or k > n:
        return 0
    out = 1
    for i in range(k):
        out = out * (n - i) // (i + 1)
    return out


@dataclass(frozen=True)
class IntPolynomial:
    """Dense integer polynomial; coefficients ascending, trailing zeros trimmed."""

    coefficients: tuple[int, ...]

    def __post_init__(self):
        trimmed = list(self.coefficients)
        while trimmed and trimmed[-1] == 0:
            trimmed.pop()
        object.__setattr__(self, "coefficients", tuple(trimmed))

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def coeff(self, m: int) -> int:
        if 0 <= m < len(self.coefficients):
            return self.coefficients[m]
        return 0


def chebyshev_T(n: int) -> IntPolynomial:
    """T_n via T_0 = 1, T_1 = x, T_n = 2x T_{n-1} - T_{n-2}."""
    if n < 0:
        raise DomainError("chebyshev_T requires n >= 0")
    prev, cur = [1], [0, 1]
    if n == 0:
        return IntPolynomial((1,))
    for _ in range(n - 1):
        nxt = [0] + [2 * c for c in cur]
        for i, c in enumerate(prev):
            nxt[i] -= c
        prev, cur = cur, nxt
    return IntPolynomial(tuple(cur))


def chebyshev_T_closed(n: int) -> IntPolynomial:
    """T_n from the alternating binomial closed form, exact rationals inside."""
    if n < 0:
        raise DomainError("chebyshev_T_closed requires n >= 0")
    if n == 0:
        return IntPolynomial((1,))
    if n == 1:
        return IntPolynomial((0, 1))
    coeffs = [Fraction(0)] * (n + 1)
    for k in range(n // 2 + 1):
        term = (
            Fraction(n, 2)
            * Fraction((-1) ** k, n - k)
            * binom(n - k, k)
            * 2 ** (n - 2 * k)
        )
        coeffs[n - 2 * k] += term
    return IntPolynomial(tuple(_as_int(c, f"chebyshev_T_closed({n})") for c in coeffs))


def tomie_T(s: int, n: int) -> IntPolynomial:
    """The generalized family T^s_n; s = 2 recovers the classical T_n."""
    if s < 1 or n < 0:
        raise DomainError("tomie_T requires s >= 1 and n >= 0")
    coeffs = [Fraction(0)] * (n + 1)
    for k in range(n // 2 + 1):
        bracket = binom(n - k, k) * s - binom(n - k - 1, k)
        coeffs[n - 2 * k] += (-1) ** k * Fraction(s) ** (n - 2 * k - 1) * bracket
    return IntPolynomial(tuple(_as_int(c, f"tomie_T({s},{n})") for c in coeffs))


def _as_int(value: Fraction, context: str) -> int:
    if value.denominator != 1:
        raise IntegerOverflowError(f"{context}: non-integer coefficient {value}")
    return int(value)


@dataclass(frozen=True)
class ChebyshevCheck:
    i: int
    j: int
    s: int
    mu: int
    coeff: int
    equal: bool


def mobius_closed_form(i: int, j: int) -> int:
    """mu of the standard intervals for s = 2 in closed form, valid for j >= 1."""
    if j < 1:
        raise DomainError("closed form requires j >= 1")
    value = Fraction((-1) ** i) * Fraction(2) ** (j - i - 1) * Fraction(i + j, j) * binom(j, i)
    return _as_int(value, f"mobius_closed_form({i},{j})")


def verify_chebyshev(i: int, j: int, s: int = 2, use_oracle: bool = False) -> ChebyshevCheck:
    """Compare mu(1^i, top^j) over the s-antichain-plus-top poset with the
    x^(j-i) coefficient of the degree-(i+j) generalized Chebyshev polynomial."""
    if not 0 <= i <= j:
        raise DomainError("verify_chebyshev requires 0 <= i <= j")
    if s < 1:
        raise DomainError("verify_chebyshev requires s >= 1")
    poset = builtin_poset(f"lambda:{s}")
    bottom_letter = 0  # id of element named "1"
    top_letter = s  # id of the top element
    u = (bottom_letter,) * i
    w = (top_letter,) * j
    mu = (
        mobius_oracle(poset, u, w)
        if use_oracle
        else mobius_main(poset, u, w).value
    )
    coeff = tomie_T(s, i + j).coeff(j - i)
    return ChebyshevCheck(i, j, s, mu, coeff, mu == coeff)
