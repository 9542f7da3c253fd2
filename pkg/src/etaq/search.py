"""Classification searches over prime-power levels.

The enumeration of all eta quotients lying in the weight-k Eisenstein
span works backwards from cusp orders: a candidate is a vector of
orders (one per cusp denominator p^i) on the grid (1/24)Z, capped at 1
per cusp (2 at the denominator-2 cusp of level 4, the one exception
the order bound allows), with multiplicity-weighted total equal to the
valence value (k/12)(p^m + p^(m-1)).  Each candidate order vector is
pushed through the inverse of the exact linear order map to an
exponent vector; integral vectors passing the modularity criteria are
then certified against an Eisenstein combination coefficient-by-
coefficient.  The per-cusp caps are what make the grid finite, so the
search is complete for elements with nonzero r_1 and r_{p^m}.

Also here: antiderivatives pairing weight-2 results with the weight-0
quotients whose derivative they are, and the bounded search for level-4
quotients whose second derivative is again an eta quotient.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .arith import lcm, totient
from .eisenstein import (
    EisensteinElement,
    MembershipTag,
    match_certification_rows,
    match_eta,
)
from .eta import EtaQuotient
from .linalg import mat_inverse

__all__ = [
    "order_matrix",
    "SearchPair",
    "SearchResult",
    "enumerate_eta_in_e",
    "ClassificationReport",
    "verify_classification_lists",
    "DualPair",
    "antiderivative",
    "dual_pairs_prime_power",
    "second_derivative_ratio",
    "SecondDerivSolution",
    "classify_second_derivatives_level4",
]


def order_matrix(p: int, m: int) -> list[list[Fraction]]:
    """Linear map from eta exponents (r_{p^j})_j to width-normalized cusp
    orders (v at denominator p^i)_i; entry (i, j) is the order of
    eta(p^j z) at denominator p^i on Gamma0(p^m)."""
    n = p**m
    rows = []
    for i in range(m + 1):
        c = p**i
        pref = Fraction(n, 24 * gcd(c * c, n))
        rows.append([pref * Fraction(gcd(c, p**j) ** 2, p**j) for j in range(m + 1)])
    return rows


@dataclass(frozen=True)
class SearchPair:
    eta: EtaQuotient
    element: EisensteinElement
    certified_through: int
    eta_primitive: bool

    def to_json(self) -> dict:
        return {
            "eta": self.eta.to_json(),
            "eisenstein": self.element.to_json(),
            "bound": self.certified_through,
            "eta_primitive": self.eta_primitive,
        }


@dataclass(frozen=True)
class SearchResult:
    k: int
    p: int
    m: int
    pairs: tuple[SearchPair, ...]
    candidates_scanned: int

    @property
    def level(self) -> int:
        return self.p**self.m

    def exponent_maps(self) -> list[dict[int, int]]:
        return [sp.eta.exponents for sp in self.pairs]

    def to_json(self) -> dict:
        return {
            "k": self.k,
            "p": self.p,
            "m": self.m,
            "pairs": [sp.to_json() for sp in self.pairs],
        }


def enumerate_eta_in_e(k: int, p: int, m: int) -> SearchResult:
    """All eta quotients equal to an Eisenstein combination of weight k
    and level p^m whose combination has nonzero r_1 and r_{p^m}.

    An empty result is a valid outcome (and the expected one for all but
    six (k, p^m) cells).
    """
    if k < 2 or k % 2:
        raise ValueError("weight must be even >= 2")
    n = p**m
    divs = [p**j for j in range(m + 1)]
    mult = [totient(gcd(p**i, p ** (m - i))) for i in range(m + 1)]
    caps = [24 * (2 if (n == 4 and i == 1) else 1) for i in range(m + 1)]
    target = 2 * k * (n + n // p) if m >= 1 else 2 * k

    ainv = mat_inverse(order_matrix(p, m))
    denom = 1
    for row in ainv:
        for x in row:
            denom = lcm(denom, (x / 24).denominator)
    t_int = [[int(x / 24 * denom) for x in row] for row in ainv]

    suffix = [0] * (m + 2)
    for i in range(m, -1, -1):
        suffix[i] = suffix[i + 1] + mult[i] * caps[i]

    pairs: list[SearchPair] = []
    scanned = 0
    nvec = [0] * (m + 1)

    def consider() -> None:
        rvals = []
        for j in range(m + 1):
            s = sum(t_int[j][i] * nvec[i] for i in range(m + 1))
            if s % denom:
                return
            rvals.append(s // denom)
        if all(v == 0 for v in rvals):
            return
        quotient = EtaQuotient(n, {divs[j]: rvals[j] for j in range(m + 1)})
        if quotient.weight() != k:
            return
        if not quotient.is_modular_on_gamma0().is_modular:
            return
        element = match_eta(quotient)
        if element is None:
            return
        if element.classify() is not MembershipTag.IN_P:
            return
        pairs.append(
            SearchPair(
                quotient, element, match_certification_rows(k, n), quotient.is_primitive()
            )
        )

    def rec(i: int, remaining: int) -> None:
        nonlocal scanned
        if i == m + 1:
            if remaining == 0:
                scanned += 1
                consider()
            return
        lo = max(0, -(-(remaining - suffix[i + 1]) // mult[i]))
        hi = min(caps[i], remaining // mult[i])
        for v in range(lo, hi + 1):
            nvec[i] = v
            rec(i + 1, remaining - mult[i] * v)

    rec(0, target)
    pairs.sort(key=lambda sp: sp.eta.key())
    return SearchResult(k, p, m, tuple(pairs), scanned)


# ---------------------------------------------------------------------------
# published classification lists used as comparison data
# ---------------------------------------------------------------------------

# The twelve weight-2 quotients as printed (first entry verbatim, which
# simplifies to eta(1)^4 and is expected NOT to be reproduced: the
# certified search finds eta(1)^8 * eta(2)^-4 in its place).
REFERENCE_WEIGHT2: list[dict[int, int]] = [
    {1: 4},
    {2: -4, 4: 8},
    {1: -8, 2: 20, 4: -8},
    {1: 4, 2: -6, 4: 10, 8: -4},
    {1: -4, 2: 10, 4: -6, 8: 4},
    {1: -4, 2: 6, 4: 6, 8: -4},
    {1: 4, 2: -2, 4: -2, 8: 4},
    {1: -3, 3: 10, 9: -3},
    {1: 2, 2: -5, 4: 8, 8: 1, 16: -2},
    {1: -2, 2: 1, 4: 8, 8: -5, 16: 2},
    {1: -2, 2: 1, 4: 6, 8: 1, 16: -2},
    {1: 2, 2: -5, 4: 10, 8: -5, 16: 2},
]

REFERENCE_WEIGHT4: list[dict[int, int]] = [
    {1: -8, 2: 16},
    {1: -16, 2: 40, 4: -16},
    {1: 8, 2: -8, 4: 8},
    {1: 16, 2: -8},
]

# The twelve weight-0 quotients whose derivatives are eta quotients.
REFERENCE_ANTIDERIVATIVES: list[dict[int, int]] = [
    {1: 8, 2: -24, 4: 16},
    {1: -2, 2: 3, 4: -1},
    {1: -8, 4: 8},
    {1: 4, 2: -10, 4: 2, 8: 4},
    {1: -2, 2: -1, 4: 5, 8: -2},
    {1: -4, 2: 2, 4: -2, 8: 4},
    {1: -2, 2: 7, 4: -7, 8: 2},
    {1: -3, 9: 3},
    {1: 2, 2: -5, 4: 2, 8: -1, 16: 2},
    {1: -2, 2: 1, 4: -2, 8: 5, 16: -2},
    {1: -2, 2: 1, 8: -1, 16: 2},
    {1: -2, 2: 5, 8: -5, 16: 2},
]

WEIGHT2_CELLS = [(2, 2, 2), (2, 2, 3), (2, 3, 2), (2, 2, 4)]
WEIGHT4_CELLS = [(4, 2, 1), (4, 2, 2)]
# (k, p, m) cells whose searches must come back empty.
EXCLUDED_CELLS = [
    (2, 2, 0),
    (4, 2, 0),
    (6, 2, 0),
    (8, 2, 0),
    (10, 2, 0),
    (2, 2, 1),
    (6, 2, 1),
    (6, 2, 2),
    (2, 3, 1),
    (4, 3, 1),
    (2, 5, 1),
    (2, 5, 2),
    (2, 7, 1),
]


@dataclass(frozen=True)
class ClassificationReport:
    weight2: dict[int, SearchResult]  # level -> result
    weight4: dict[int, SearchResult]
    excluded: dict[tuple[int, int], int]  # (k, level) -> number found
    weight2_matched: list[dict[int, int]]
    weight2_missing: list[dict[int, int]]  # printed but not reproduced
    weight2_extra: list[SearchPair]  # certified but not printed
    weight4_exact: bool

    @property
    def weight2_counts(self) -> dict[int, int]:
        return {n: len(r.pairs) for n, r in sorted(self.weight2.items())}

    @property
    def ok(self) -> bool:
        counts_ok = self.weight2_counts == {4: 3, 8: 4, 9: 1, 16: 4}
        no_excluded = all(v == 0 for v in self.excluded.values())
        return counts_ok and self.weight4_exact and no_excluded

    def to_json(self) -> dict:
        return {
            "weight2": {str(n): r.to_json() for n, r in sorted(self.weight2.items())},
            "weight4": {str(n): r.to_json() for n, r in sorted(self.weight4.items())},
            "excluded": {f"k={k},level={n}": v for (k, n), v in sorted(self.excluded.items())},
            "weight2_counts": {str(n): c for n, c in self.weight2_counts.items()},
            "weight2_matched": [_map_json(e) for e in self.weight2_matched],
            "weight2_missing": [_map_json(e) for e in self.weight2_missing],
            "weight2_extra": [sp.to_json() for sp in self.weight2_extra],
            "weight4_exact": self.weight4_exact,
            "ok": self.ok,
        }


def _map_json(exps: dict[int, int]) -> dict[str, int]:
    return {str(t): r for t, r in sorted(exps.items())}


def verify_classification_lists() -> ClassificationReport:
    """Run the six populated searches and the thirteen empty ones, and
    compare against the published lists.  Discrepancies are surfaced,
    not suppressed: each printed entry that the certified search cannot
    reproduce is reported alongside the certified corrected forms."""
    weight2: dict[int, SearchResult] = {}
    found_maps: list[dict[int, int]] = []
    found_pairs: list[SearchPair] = []
    for k, p, m in WEIGHT2_CELLS:
        res = enumerate_eta_in_e(k, p, m)
        weight2[res.level] = res
        found_maps.extend(res.exponent_maps())
        found_pairs.extend(res.pairs)

    weight4: dict[int, SearchResult] = {}
    w4_maps: list[dict[int, int]] = []
    for k, p, m in WEIGHT4_CELLS:
        res = enumerate_eta_in_e(k, p, m)
        weight4[res.level] = res
        w4_maps.extend(res.exponent_maps())

    excluded = {}
    for k, p, m in EXCLUDED_CELLS:
        res = enumerate_eta_in_e(k, p, m)
        excluded[(k, res.level)] = len(res.pairs)

    def freeze(d: dict[int, int]) -> tuple:
        return tuple(sorted(d.items()))

    printed = {freeze(e): e for e in REFERENCE_WEIGHT2}
    found = {freeze(e): e for e in found_maps}
    matched = [printed[key] for key in printed if key in found]
    missing = [printed[key] for key in printed if key not in found]
    extra = [sp for sp in found_pairs if freeze(sp.eta.exponents) not in printed]

    weight4_exact = {freeze(e) for e in REFERENCE_WEIGHT4} == {freeze(e) for e in w4_maps}

    return ClassificationReport(
        weight2, weight4, excluded, matched, missing, extra, weight4_exact
    )


# ---------------------------------------------------------------------------
# antiderivatives / dual pairs
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class DualPair:
    """Weight (0, 2) pair: D(f) = scalar * g exactly, with g = f * source."""

    f: EtaQuotient
    g: EtaQuotient
    scalar: Fraction
    source: EtaQuotient

    def to_json(self) -> dict:
        return {
            "f": self.f.to_json(),
            "g": self.g.to_json(),
            "scalar": str(self.scalar),
            "source": self.source.to_json(),
        }


def antiderivative(g: EtaQuotient, certify_rel: int = 480) -> DualPair:
    """The weight-0 eta quotient f with D(f) a constant multiple of g
    times f (equivalently: D(f)/f equals lambda * g as a series).

    Writes the certified Eisenstein match of g in the basis
    {E_2(z) - d E_2(dz) : 1 < d | N} with coefficients -rho_d/d, scales
    by the least lambda clearing denominators, and exponentiates: the
    logarithmic-derivative identity D(eta(dz))/eta(dz) = -d E_2(dz)
    turns the basis coefficients into eta exponents.  The resulting
    identity D(f) = lambda * (f*g) is certified by exact series
    arithmetic through certify_rel exponent steps past the offset.
    """
    element = match_eta(g)
    if element is None:
        raise ValueError("quotient is not a weight-2 Eisenstein combination")
    if element.k != 2:
        raise ValueError(f"antiderivatives are defined for weight 2, got {element.k}")
    n = element.level
    basis = {d: -rho / d for d, rho in element.coeffs.items() if d > 1}
    lam = 1
    for v in basis.values():
        lam = lcm(lam, v.denominator)
    exps = {d: int(v * lam) for d, v in basis.items() if v}
    r1 = -sum(exps.values())
    if r1:
        exps[1] = exps.get(1, 0) + r1
    f = EtaQuotient(n, exps)
    g_der = f * g

    prec = max(f.offset(), g_der.offset()) + certify_rel
    lhs = f.expansion(prec).ramanujan_d()
    rhs = g_der.expansion(prec) * Fraction(lam)
    if not (lhs - rhs).is_zero_to_prec():
        raise AssertionError("antiderivative certification failed")
    return DualPair(f, g_der, Fraction(lam), g)


def dual_pairs_prime_power(certify_rel: int = 480) -> list[DualPair]:
    """Antiderivatives of every weight-2 search result (expected: 12)."""
    out = []
    for k, p, m in WEIGHT2_CELLS:
        for sp in enumerate_eta_in_e(k, p, m).pairs:
            out.append(antiderivative(sp.eta, certify_rel))
    return sorted(out, key=lambda dp: dp.f.key())


# ---------------------------------------------------------------------------
# second derivatives at level 4
# ---------------------------------------------------------------------------


def second_derivative_ratio(r: tuple[int, int, int]) -> tuple[Fraction, Fraction, Fraction]:
    """(s_1, s_2, s_4) with D^2(f)/f = sum s_d E_4(dz) for
    f = eta(z)^r1 eta(2z)^r2 eta(4z)^r4, valid when r1+r2+r4 = -2.

    Derived by expanding (r1 E_2(z) + 2 r2 E_2(2z) + 4 r4 E_2(4z))^2
    through the convolution identities of the verify_identities suite;
    the weight constraint makes every D(E_2(dz)) term cancel.
    """
    r1, r2, r4 = r
    if r1 + r2 + r4 != -2:
        raise ValueError("exponents must satisfy r1 + r2 + r4 = -2")
    s1 = Fraction(5, 12) * r1 * r1 + Fraction(1, 3) * r1 * r2 + Fraction(1, 6) * r1 * r4
    s2 = (
        Fraction(5, 3) * r2 * r2
        + Fraction(4, 3) * r1 * r2
        + Fraction(1, 2) * r1 * r4
        + Fraction(4, 3) * r2 * r4
    )
    s4 = Fraction(20, 3) * r4 * r4 + Fraction(8, 3) * r1 * r4 + Fraction(16, 3) * r2 * r4
    return (s1, s2, s4)


@dataclass(frozen=True)
class SecondDerivSolution:
    r: tuple[int, int, int]
    s: tuple[Fraction, Fraction, Fraction]
    f: EtaQuotient
    target: EtaQuotient
    scalar: Fraction  # D^2(f) = scalar * expansion(target) * expansion(f)
    primitive: bool

    def to_json(self) -> dict:
        return {
            "r": list(self.r),
            "s": [str(x) for x in self.s],
            "f": self.f.to_json(),
            "target": self.target.to_json(),
            "scalar": str(self.scalar),
            "primitive": self.primitive,
        }


def level4_targets() -> list[tuple[EtaQuotient, tuple[Fraction, Fraction, Fraction]]]:
    """Weight-4 eta quotients available inside level 4 (the classified
    level-2 quotients, their z -> 2z images, and the level-4 natives),
    each with its certified E_4-coefficient vector over divisors 1,2,4."""
    level2 = [{1: -8, 2: 16}, {1: 16, 2: -8}]
    native = [{1: -16, 2: 40, 4: -16}, {1: 8, 2: -8, 4: 8}]
    quotients = [EtaQuotient(4, e) for e in level2]
    quotients += [EtaQuotient(2, e).rescale(2) for e in level2]
    quotients += [EtaQuotient(4, e) for e in native]
    out = []
    for q in quotients:
        element = match_eta(q)
        assert element is not None and element.k == 4
        s = tuple(element.coeffs.get(d, Fraction(0)) for d in (1, 2, 4))
        out.append((q, s))
    return out


def _certify_second_derivative(
    r: tuple[int, int, int],
    s: tuple[Fraction, Fraction, Fraction],
    target: EtaQuotient,
    scalar: Fraction,
    certify_rel: int,
) -> SecondDerivSolution:
    f = EtaQuotient(4, {1: r[0], 2: r[1], 4: r[2]})
    prec = max(f.offset(), 0) + certify_rel
    ef = f.expansion(prec)
    lhs = ef.ramanujan_d().ramanujan_d()
    combo = EisensteinElement(4, 4, {1: s[0], 2: s[1], 4: s[2]})
    rhs = ef * combo.expansion(-(-certify_rel // 24) + 1, scale=24)
    if not (lhs - rhs).is_zero_to_prec():
        raise AssertionError("second-derivative ratio certification failed")
    rhs2 = ef * target.expansion(target.offset() + certify_rel) * scalar
    if not (lhs - rhs2).is_zero_to_prec():
        raise AssertionError("second-derivative target certification failed")
    return SecondDerivSolution(r, s, f, target, scalar, f.is_primitive())


def classify_second_derivatives_level4(
    bound: int = 60, certify_rel: int = 240
) -> list[SecondDerivSolution]:
    """All integer exponent triples (r1, r2, r4), |r_i| <= bound, with
    r1+r2+r4 = -2 whose second-derivative ratio is a nonzero rational
    multiple of a weight-4 eta quotient available inside level 4.

    The -2 constraint is forced: an eta quotient whose D^2-to-f ratio
    is again an eta quotient must have weight -1 (and the ratio weight
    4).  Output is deterministic: sorted by exponent triple.
    """
    targets = level4_targets()
    solutions: list[SecondDerivSolution] = []
    for r1 in range(-bound, bound + 1):
        for r2 in range(-bound, bound + 1):
            r4 = -2 - r1 - r2
            if abs(r4) > bound:
                continue
            r = (r1, r2, r4)
            s = second_derivative_ratio(r)
            if all(x == 0 for x in s):
                continue
            for q, ts in targets:
                scalar = None
                ok = True
                for sv, tv in zip(s, ts):
                    if tv == 0:
                        if sv != 0:
                            ok = False
                            break
                    else:
                        c = sv / tv
                        if scalar is None:
                            scalar = c
                        elif c != scalar:
                            ok = False
                            break
                if ok and scalar:
                    solutions.append(
                        _certify_second_derivative(r, s, q, scalar, certify_rel)
                    )
                    break
    return sorted(solutions, key=lambda sol: sol.r)
