"""QSeries ring semantics, the Ramanujan operator, and the eta series
against its naive-product oracle (plain integer lists, no QSeries)."""

import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from etaq.cyclotomic import CycNumber
from etaq.series import QSeries, SeriesDomainError, eta_series


def naive_euler_product(nterms: int) -> list[int]:
    """Coefficients of prod_{n=1..nterms} (1 - q^n) through q^nterms,
    computed by repeated sparse multiplication on plain lists."""
    coeffs = [0] * (nterms + 1)
    coeffs[0] = 1
    for n in range(1, nterms + 1):
        for i in range(nterms, n - 1, -1):
            coeffs[i] -= coeffs[i - n]
    return coeffs


def rand_series(rng, scale=1, maxlen=8) -> QSeries:
    offset = rng.randint(-4, 4)
    length = rng.randint(1, maxlen)
    coeffs = [Fraction(rng.randint(-9, 9), rng.randint(1, 4)) for _ in range(length)]
    return QSeries(scale, offset, coeffs)


def test_basic_products():
    one_plus_q = QSeries(1, 0, [1, 1], 5)
    one_minus_q = QSeries(1, 0, [1, -1], 5)
    prod = one_plus_q * one_minus_q
    assert [prod.coeff(i) for i in range(prod.offset, prod.prec)] == [1, 0, -1, 0, 0]

    # q^(1/24) * q^(1/24) = q^(2/24)
    a = QSeries.monomial(1, 1, scale=24, prec=30)
    sq = a * a
    assert sq.offset == 2 and sq.coeff(2) == 1


def test_geometric_inverse():
    one_minus_q = QSeries(1, 0, [1, -1], 12)
    inv = one_minus_q.inverse()
    assert [inv.coeff(i) for i in range(0, inv.prec)] == [1] * inv.prec


def test_pow_zero_and_negative():
    x = QSeries(1, 0, [1, 2, 3], 10)
    assert (x**0).coeff(0) == 1
    xinv = x**-1
    assert (x * xinv).coeff(0) == 1
    assert (x * xinv).coeff(1) == 0
    prod = x**3 * x**-3
    assert prod.coeff(0) == 1 and all(prod.coeff(i) == 0 for i in range(1, prod.prec))


@pytest.mark.parametrize("e", [2, 4])
def test_eta_power_times_inverse_power_is_one(e):
    es = eta_series(24 * 30)
    prod = es**e * es**-e
    assert prod.offset == 0 and prod.coeff(0) == 1
    assert all(prod.coeff(i) == 0 for i in range(1, prod.prec))


def test_negative_pow_requires_unit():
    zero_lead = QSeries(1, 0, [0, 0], 2)
    with pytest.raises(SeriesDomainError):
        zero_lead.inverse()


def test_scale_rescaling_and_mismatch():
    x = QSeries(2, 0, [1, 5], 4)
    y = QSeries(3, 0, [1, 7], 6)
    z = x * y
    assert z.scale == 6
    assert z.coeff(0) == 1 and z.coeff(3) == 5 and z.coeff(2) == 7
    huge = QSeries(1_999_999, 0, [1], 2)
    with pytest.raises(SeriesDomainError):
        _ = huge * QSeries(2, 0, [1], 2)


def test_precision_propagation_pessimistic():
    x = QSeries(1, 0, [1, 1], 3)  # known through q^2
    y = QSeries(1, 2, [1], 9)  # q^2, known through q^8
    p = x * y
    assert p.offset == 2 and p.prec == 5  # min(3 + 2, 9 + 0)
    s = x + y
    assert s.prec == 3
    # coefficients below an offset are exact zeros, so a sum with a
    # late-starting series is still fully known on the early window
    early = QSeries(1, 0, [1], 1) + QSeries(1, 5, [1], 6)
    assert early.prec == 1 and early.coeff(0) == 1


def test_ring_axioms_random():
    rng = random.Random(31)
    for _ in range(60):
        a, b, c = (rand_series(rng) for _ in range(3))
        lhs = (a * b) * c
        rhs = a * (b * c)
        assert lhs.agrees_with(rhs)
        lhs = a * (b + c)
        rhs = a * b + a * c
        assert lhs.agrees_with(rhs)
        assert (a * b).agrees_with(b * a)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 5), st.integers(0, 5), st.data())
def test_pow_additivity(ea, eb, data):
    rng = random.Random(data.draw(st.integers(0, 10**6)))
    x = rand_series(rng)
    if x.coeffs[0] == 0:
        x = x + QSeries.monomial(1, x.offset, x.scale, x.prec)
    lhs = x ** (ea + eb)
    rhs = (x**ea) * (x**eb)
    assert lhs.agrees_with(rhs)


def test_derivation_rule():
    rng = random.Random(17)
    for _ in range(60):
        scale = rng.choice([1, 24])
        x, y = rand_series(rng, scale), rand_series(rng, scale)
        lhs = (x * y).ramanujan_d()
        rhs = x.ramanujan_d() * y + x * y.ramanujan_d()
        assert lhs.agrees_with(rhs)


def test_d_examples():
    one = QSeries.one(1, 5)
    assert one.ramanujan_d().is_zero_to_prec()
    m = QSeries.monomial(1, 1, scale=24, prec=10)
    d = m.ramanujan_d()
    assert d.coeff(1) == Fraction(1, 24)


def test_eta_series_against_naive_product():
    prec_q = 500
    pentagonal = eta_series(24 * prec_q + 1)
    oracle = naive_euler_product(prec_q)
    assert pentagonal.offset == 1
    for e in range(1, pentagonal.prec):
        expected = oracle[(e - 1) // 24] if (e - 1) % 24 == 0 else 0
        assert pentagonal.coeff(e) == expected


def test_eta_series_examples():
    es = eta_series(24 * 21)
    # q^(1/24) (1 - q - q^2 + q^5 + q^7 - q^12 - q^15 + ...)
    got = {(e - 1) // 24: int(es.coeff(e)) for e in range(1, es.prec) if es.coeff(e)}
    assert got == {0: 1, 1: -1, 2: -1, 5: 1, 7: 1, 12: -1, 15: -1}
    assert es.coeff(24 * 3 + 1) == 0


def test_valuation_and_zero_to_prec():
    assert QSeries(1, 0, [1, 8, 24], 3).valuation() == 0
    assert QSeries(1, 2, [1, 1], 4).valuation() == 2
    assert QSeries(1, 0, [0, 0, 0], 3).valuation() is None
    hidden_zero = QSeries(1, 0, [CycNumber(4, [1, 1, 1, 1])], 1)
    assert hidden_zero.valuation() is None  # exact cyclotomic zero


def test_cyclotomic_series_mul():
    z = CycNumber.root_of_unity(4)
    x = QSeries(1, 0, [z, 1], 4)
    y = QSeries(1, 0, [1, z], 4)
    p = x * y
    assert p.coeff(0) == z
    assert p.coeff(1) == (z * z + 1)  # zeta_4^2 + 1 = 0
    assert p.coeff(1) == CycNumber.zero(4)
    assert p.coeff(2) == z


def test_mixed_rational_cyclotomic():
    z = CycNumber.root_of_unity(3)
    x = QSeries(1, 0, [Fraction(1, 2), Fraction(1)], 4)
    y = QSeries(1, 0, [z], 4)
    p = x * y
    assert p.cyc_order == 3
    assert p.coeff(0) == z * Fraction(1, 2)


def test_substitute_power():
    x = QSeries(1, 1, [1, 2], 8)
    s = x.substitute_power(3)
    assert s.offset == 3 and s.coeff(3) == 1 and s.coeff(6) == 2 and s.prec == 24


def test_render_and_json():
    x = QSeries(24, 0, [Fraction(-1, 24), 0] + [0] * 22 + [1], 30)
    text = x.render_text()
    assert "-1/24" in text and "q" in text and "O(" in text
    triples = x.to_json_triples()
    assert [-1, 24, 0] in triples and [1, 1, 24] in triples


def test_truncate_and_coeff_bounds():
    x = QSeries(1, 0, [1, 2, 3, 4], 4)
    t = x.truncate(2)
    assert t.prec == 2
    with pytest.raises(SeriesDomainError):
        t.coeff(3)
    assert x.coeff(-5) == 0
