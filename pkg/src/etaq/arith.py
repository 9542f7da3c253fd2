"""Exact integer and rational building blocks.

Everything here is pure and deterministic: Bernoulli numbers by the
defining recurrence, divisor power sums, elementary number theory
helpers, and the SL2(Z) completions used to move q-expansions between
cusps.  Rational values are ``fractions.Fraction`` throughout; nothing
in this module (or anywhere in the certified computation path) touches
floating point.
"""

from __future__ import annotations

import threading
from fractions import Fraction
from math import comb, gcd, isqrt
from typing import NamedTuple

__all__ = [
    "bernoulli",
    "sigma",
    "sigma_range",
    "divisors",
    "totient",
    "factorize",
    "prime_power",
    "xgcd",
    "lcm",
    "SL2Matrix",
    "sl2_complete",
    "efgh_complete",
]


_bernoulli_cache: list[Fraction] = [Fraction(1)]
_bernoulli_lock = threading.Lock()


def bernoulli(k: int) -> Fraction:
    """B_k for even k >= 0, in the convention with B_1 = -1/2.

    Computed by the defining recurrence sum_{j<=n} C(n+1, j) B_j = 0,
    so B_2 = 1/6 and B_4 = -1/30.  Odd or negative k is a domain error
    (the odd values are never needed: B_1 only enters the recurrence).
    """
    if k < 0 or k % 2:
        raise ValueError(f"bernoulli is defined here for even k >= 0, got {k}")
    with _bernoulli_lock:
        while len(_bernoulli_cache) <= k:
            n = len(_bernoulli_cache)
            s = sum(comb(n + 1, j) * _bernoulli_cache[j] for j in range(n))
            _bernoulli_cache.append(Fraction(-s, n + 1))
        return _bernoulli_cache[k]


def sigma(power: int, n: int) -> int:
    """Divisor power sum sigma_power(n) = sum of d**power over d | n."""
    if n <= 0:
        raise ValueError(f"sigma requires n >= 1, got {n}")
    return sum(d**power for d in divisors(n))


def sigma_range(power: int, limit: int) -> list[int]:
    """Sieve of sigma_power(n) for 1 <= n <= limit; index 0 is unused."""
    table = [0] * (limit + 1)
    for d in range(1, limit + 1):
        dp = d**power
        for n in range(d, limit + 1, d):
            table[n] += dp
    return table


def divisors(n: int) -> list[int]:
    """Sorted positive divisors of n >= 1."""
    if n <= 0:
        raise ValueError(f"divisors requires n >= 1, got {n}")
    small, large = [], []
    for d in range(1, isqrt(n) + 1):
        if n % d == 0:
            small.append(d)
            if d != n // d:
                large.append(n // d)
    return small + large[::-1]


def factorize(n: int) -> dict[int, int]:
    """Prime factorization of n >= 1 as {p: exponent}."""
    if n <= 0:
        raise ValueError(f"factorize requires n >= 1, got {n}")
    out: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def prime_power(n: int) -> tuple[int, int] | None:
    """(p, m) with n = p^m and m >= 1, or (1, 0) for n = 1, else None."""
    if n == 1:
        return (1, 0)
    fac = factorize(n)
    if len(fac) != 1:
        return None
    ((p, m),) = fac.items()
    return (p, m)


def totient(n: int) -> int:
    """Euler phi."""
    out = n
    for p in factorize(n):
        out -= out // p
    return out


def lcm(a: int, b: int) -> int:
    return abs(a * b) // gcd(a, b) if a and b else 0


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """(g, x, y) with a*x + b*y = g = gcd(a, b), g >= 0."""
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        return -a, -x0, -y0
    return a, x0, y0


class SL2Matrix(NamedTuple):
    """Integer matrix (a b; c d) with determinant 1."""

    a: int
    b: int
    c: int
    d: int

    @property
    def det(self) -> int:
        return self.a * self.d - self.b * self.c


def sl2_complete(a: int, c: int) -> SL2Matrix:
    """Complete a coprime pair (a, c) to (a b; c d) in SL2(Z).

    Deterministic choice: for c != 0 take the least positive d with
    a*d == 1 (mod c); for c == 0 (so a = +-1) take b = 0.  Any other
    valid completion differs by (b, d) -> (b + j*a, d + j*c); cusp
    orders computed downstream must not depend on the choice.
    """
    g, x, _y = xgcd(a, c)
    if g != 1:
        raise ValueError(f"sl2_complete requires gcd(a, c) = 1, got ({a}, {c})")
    if c == 0:
        return SL2Matrix(a, 0, 0, a)  # a = +-1
    d = (x - 1) % abs(c) + 1
    b = (a * d - 1) // c
    m = SL2Matrix(a, b, c, d)
    assert m.det == 1
    return m


def efgh_complete(t: int, a: int, c: int) -> tuple[int, int, int, int]:
    """The auxiliary completion used for expanding E_k(tz) at a/c.

    Returns (e, f, g, h) with e = a*t/gcd(t, c), g = c/gcd(t, c) and
    e*h - f*g = 1, with the same deterministic (f, h) choice as
    sl2_complete.
    """
    g0 = gcd(t, c)
    e = a * t // g0
    g = c // g0
    m = sl2_complete(e, g)  # (e, f; g, h) with e*h - f*g = 1
    return e, m.b, g, m.d
