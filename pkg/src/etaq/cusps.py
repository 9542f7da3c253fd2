"""Cusps of Gamma0(N) and Fourier expansions of Eisenstein elements there.

A cusp a/c (gcd(a,c) = 1, c | N) carries its width N/gcd(c^2, N) and an
SL2(Z) completion M = (a b; c d).  For f = sum_t r_t E_k(tz) the
expansion of (cz+d)^(-k) f(Mz) is supported on integral powers of the
local variable q_{c,N} = e^(2 pi i gcd(c^2,N) z / N):

    coefficient of q_{c,N}^(n * step_t)  gains  r_t * a_n(c,t) * omega_t^n,

with step_t = gcd(t,c)^2 N / (t gcd(c^2, N)), the rational prefactors
a_0 = (gcd(t,c)/t)^k (-B_k/2k) and a_n = (gcd(t,c)/t)^k sigma_{k-1}(n),
and omega_t a root of unity of order t/gcd(t,c) built from the chosen
completions.  Coefficients therefore live in Q(zeta_L) with L the lcm
of the t/gcd(t,c); vanishing is decided by the exact cyclotomic zero
test, and the computed order of vanishing must be independent of every
completion choice (only omega_t changes).

For weight 2 the non-holomorphic correction of E_2 under slashing
cancels across the sum because elements satisfy sum_t r_t/t = 0; it is
never represented.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Callable

from .arith import (
    SL2Matrix,
    bernoulli,
    divisors,
    efgh_complete,
    lcm,
    prime_power,
    sigma,
    sl2_complete,
    totient,
)
from .cyclotomic import CycNumber
from .eisenstein import EisensteinElement, MembershipTag, sturm_bound
from .series import QSeries, SeriesDomainError

__all__ = [
    "Cusp",
    "cusp_reps",
    "cusp_count",
    "denominator_multiplicity",
    "CuspExpansion",
    "expansion_at_cusp",
    "order_at_cusp",
    "order_sum_bound",
    "OrderBoundReport",
    "check_order_bound",
]

EfghChooser = Callable[[int, int, int], tuple[int, int, int, int]]


@dataclass(frozen=True)
class Cusp:
    """Cusp a/c of Gamma0(level) with a chosen SL2(Z) completion."""

    a: int
    c: int
    level: int
    completion: SL2Matrix

    def __init__(self, a: int, c: int, level: int, completion: SL2Matrix | None = None):
        if c < 1 or level % c:
            raise ValueError(f"denominator {c} must be a positive divisor of {level}")
        if gcd(a, c) != 1:
            raise ValueError(f"cusp needs gcd(a, c) = 1, got {a}/{c}")
        if completion is None:
            completion = sl2_complete(a, c)
        elif (completion.a, completion.c) != (a, c) or completion.det != 1:
            raise ValueError("completion must extend (a, c) with determinant 1")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "c", c)
        object.__setattr__(self, "level", level)
        object.__setattr__(self, "completion", completion)

    @property
    def width(self) -> int:
        return self.level // gcd(self.c * self.c, self.level)

    def key(self) -> tuple[int, int]:
        """Gamma0(level)-equivalence key: (c, a mod gcd(c, N/c))."""
        g = gcd(self.c, self.level // self.c)
        return (self.c, self.a % g if g > 1 else 0)

    def label(self) -> str:
        return f"{self.a}/{self.c}"

    def __repr__(self):
        return f"Cusp({self.label()} on Gamma0({self.level}))"


def denominator_multiplicity(level: int, c: int) -> int:
    """Number of inequivalent cusps of Gamma0(level) with denominator c."""
    if level % c:
        raise ValueError(f"{c} does not divide {level}")
    return totient(gcd(c, level // c))


def cusp_count(level: int) -> int:
    return sum(denominator_multiplicity(level, c) for c in divisors(level))


def cusp_reps(level: int) -> list[Cusp]:
    """Canonical inequivalent cusp representatives, sorted by (c, a).

    For each c | level the numerators run over the residues coprime to
    c modulo gcd(c, level/c), taking the least positive representative
    coprime to c (so a = 1 is always among them).
    """
    out: list[Cusp] = []
    for c in divisors(level):
        g = gcd(c, level // c)
        for res in range(g):
            if g > 1 and gcd(res, g) != 1:
                continue
            a = res if res else g  # least positive member of the class
            while gcd(a, c) != 1:
                a += g
            out.append(Cusp(a, c, level))
    return sorted(out, key=lambda cu: (cu.c, cu.a))


# ---------------------------------------------------------------------------
# expansions
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class _TermData:
    t: int
    r: Fraction
    step: int
    prefactor: Fraction  # (gcd(t,c)/t)^k
    omega_exp: int  # omega_t = zeta_L^omega_exp


@dataclass(frozen=True)
class CuspExpansion:
    cusp: Cusp
    weight: int
    cyc_order: int
    series: QSeries  # scale 1, local variable q_{c,N}
    terms: tuple[_TermData, ...]

    def order(self) -> int:
        v = self.series.valuation()
        if v is None:
            raise SeriesDomainError(
                "precision-exhausted", f"no nonzero coefficient below {self.series.prec}"
            )
        return v

    def leading_coefficient(self) -> CycNumber:
        _, c = self.series.leading()
        return c  # type: ignore[return-value]


def _cusp_terms(f: EisensteinElement, cusp: Cusp, efgh: EfghChooser) -> tuple[int, list[_TermData]]:
    if cusp.level != f.level:
        raise ValueError(f"cusp lives on Gamma0({cusp.level}) but element on Gamma0({f.level})")
    n, c, k = f.level, cusp.c, f.k
    d = cusp.completion.d
    order = 1
    for t in divisors(n):
        order = lcm(order, t // gcd(t, c))
    terms: list[_TermData] = []
    for t, r in f.coeffs.items():
        g0 = gcd(t, c)
        tprime = t // g0
        num = g0 * g0 * n
        den = t * gcd(c * c, n)
        assert num % den == 0, "cusp exponent lattice must be integral for t, c | N"
        step = num // den
        if tprime == 1:
            w = 0
        else:
            _, fv, _, _ = efgh(t, cusp.a, c)
            w = (-d * fv) % tprime  # omega_t = zeta_{t'}^(-d f)
            w *= order // tprime
        terms.append(_TermData(t, r, step, Fraction(g0, t) ** k, w))
    return order, terms


def _coefficient(terms: list[_TermData], order: int, k: int, e: int) -> CycNumber:
    acc: dict[int, Fraction] = {}
    const = Fraction(-bernoulli(k), 2 * k)
    for td in terms:
        if e % td.step:
            continue
        n = e // td.step
        val = td.r * td.prefactor * (const if n == 0 else sigma(k - 1, n))
        j = (n * td.omega_exp) % order
        acc[j] = acc.get(j, Fraction(0)) + val
    return CycNumber(order, acc)


def expansion_at_cusp(
    f: EisensteinElement,
    cusp: Cusp,
    prec: int,
    efgh: EfghChooser = efgh_complete,
) -> CuspExpansion:
    """Expansion of (cz+d)^(-k) f(Mz) in q_{c,N} below exponent prec."""
    if prec < 1:
        raise ValueError("prec must be >= 1")
    order, terms = _cusp_terms(f, cusp, efgh)
    coeffs = [_coefficient(terms, order, f.k, e) for e in range(prec)]
    series = QSeries(1, 0, coeffs, prec)
    return CuspExpansion(cusp, f.k, order, series, tuple(terms))


def _default_order_prec(f: EisensteinElement) -> int:
    # the total number of zeros of a weight-k form is k*mu/12, so the
    # order at a single cusp can never exceed the Sturm bound
    return sturm_bound(f.k, f.level) + 10


def order_at_cusp(
    f: EisensteinElement,
    cusp: Cusp,
    prec: int | None = None,
    efgh: EfghChooser = efgh_complete,
) -> int:
    """Order of vanishing of f at the cusp in the q_{c,N} variable.

    Coefficients are produced lazily from exponent 0 upward and tested
    exactly; raises precision-exhausted if none is nonzero below prec
    (impossible for nonzero elements once prec exceeds the Sturm bound).
    """
    if f.is_zero():
        raise ValueError("order of the zero element is undefined")
    if prec is None:
        prec = _default_order_prec(f)
    order, terms = _cusp_terms(f, cusp, efgh)
    for e in range(prec):
        if not _coefficient(terms, order, f.k, e).is_zero():
            return e
    raise SeriesDomainError("precision-exhausted", f"no nonzero coefficient below {prec}")


# ---------------------------------------------------------------------------
# the order-sum bound
# ---------------------------------------------------------------------------


def order_sum_bound(level: int) -> int:
    """Strict upper bound for the total cusp order of an element that is
    new at a prime-power level (nonzero r_1 and r_{p^m}): 1 at level 1,
    4 at level 4, and the cusp count otherwise."""
    pp = prime_power(level)
    if pp is None:
        raise ValueError(f"bound defined for prime-power levels, got {level}")
    if level == 1:
        return 1
    if level == 4:
        return 4
    return cusp_count(level)


def per_cusp_cap(level: int, c: int) -> int:
    """Per-cusp ceiling on the order: 1 everywhere, except 2 at the
    denominator-2 cusp of level 4."""
    if level == 4 and c == 2:
        return 2
    return 1


@dataclass(frozen=True)
class OrderBoundReport:
    element: EisensteinElement
    level: int
    orders: dict[str, int]  # cusp label -> order
    total: int
    bound: int
    violations: tuple[str, ...] = field(default_factory=tuple)

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_json(self) -> dict:
        return {
            "element": self.element.render(),
            "level": self.level,
            "orders": dict(sorted(self.orders.items())),
            "total": self.total,
            "bound": self.bound,
            "ok": self.ok,
            "violations": list(self.violations),
        }


def check_order_bound(f: EisensteinElement, prec: int | None = None) -> OrderBoundReport:
    """Verify the strict order-sum bound and per-cusp caps for an element
    classified IN_P at a prime-power level; returns the full order vector
    and any violated assertion as a counterexample entry."""
    tag = f.classify()
    if tag is not MembershipTag.IN_P:
        raise ValueError(f"bound check needs an IN_P element, got {tag.value}")
    level = f.level
    bound = order_sum_bound(level)
    orders: dict[str, int] = {}
    violations: list[str] = []
    total = 0
    for cusp in cusp_reps(level):
        v = order_at_cusp(f, cusp, prec)
        orders[cusp.label()] = v
        total += v
        cap = per_cusp_cap(level, cusp.c)
        if v > cap:
            violations.append(f"order {v} at cusp {cusp.label()} exceeds cap {cap}")
    if total >= bound:
        violations.append(f"total order {total} reaches bound {bound}")
    return OrderBoundReport(f, level, orders, total, bound, tuple(violations))
