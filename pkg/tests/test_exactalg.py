import random
from fractions import Fraction

import pytest

from qreals.exactalg import (IntPolynomial, PrecisionError,
                             TruncatedLaurentSeries, poly_exact_div, poly_gcd,
                             series_arith, series_div, series_sqrt)


def rand_poly(rng, max_deg=6, bound=9):
    return IntPolynomial([rng.randint(-bound, bound)
                          for _ in range(rng.randint(0, max_deg))])


def test_ring_axioms_on_random_polynomials():
    rng = random.Random(1)
    for _ in range(300):
        a, b, c = (rand_poly(rng) for _ in range(3))
        assert (a + b) + c == a + (b + c)
        assert a * (b + c) == a * b + a * c
        assert a * b == b * a
        assert a + b == b + a


def test_polynomial_basics():
    p = IntPolynomial([1, 2, 0, 0])
    assert p.coeffs == (1, 2)
    assert p.degree == 1
    assert IntPolynomial().degree == -1
    assert IntPolynomial([0, 0, 3]).valuation() == 2
    assert IntPolynomial().valuation() is None
    assert IntPolynomial([1, 1])(Fraction(1, 2)) == Fraction(3, 2)
    assert IntPolynomial.monomial(3, 2).coeffs == (0, 0, 0, 2)
    with pytest.raises(ValueError):
        IntPolynomial([0, 1]).q_power_divided(2)
    assert IntPolynomial([0, 0, 5]).q_power_divided(2) == IntPolynomial([5])


def test_poly_gcd_and_exact_div():
    a = IntPolynomial([1, 1]) * IntPolynomial([1, 0, 1])
    b = IntPolynomial([1, 1]) * IntPolynomial([2, 3])
    g = poly_gcd(a, b)
    assert g == IntPolynomial([1, 1])
    assert poly_exact_div(a, g) == IntPolynomial([1, 0, 1])
    with pytest.raises(ValueError):
        poly_exact_div(IntPolynomial([1, 1, 1]), IntPolynomial([1, 1]))
    assert poly_gcd(IntPolynomial(), IntPolynomial([0, 2])) == IntPolynomial([0, 1])


def test_arithmetic_is_deterministic():
    def build():
        a = IntPolynomial(range(1, 8))
        b = IntPolynomial([3, -2, 5])
        return repr((a * b + a - b, series_div(a, IntPolynomial([1, 1]), 9)))

    assert build() == build()


# --- window semantics --------------------------------------------------------

def s(coeffs, min_degree=0, order=None):
    return TruncatedLaurentSeries(coeffs, min_degree, order)


def test_series_add_cancellation():
    a = s([1, 1], order=5)
    b = s([1, -1], order=5)
    out = series_arith(a, b, "add")
    assert out.is_zero_on_window() is False
    assert out.coefficients(0, 5) == [2, 0, 0, 0, 0]
    assert out.order == 5


def test_series_mul_geometric_inverse():
    a = s([1, 1], order=5)
    b = s([1, -1, 1, -1, 1], order=5)
    out = series_arith(a, b, "mul")
    assert out.coefficients(0, 5) == [1, 0, 0, 0, 0]
    assert out.order == 5


def test_series_laurent_shift():
    a = s([1, 1], min_degree=1, order=3)
    out = a.shifted(-1)
    assert out.min_degree == 0
    assert out.coefficients(0, 2) == [1, 1]
    assert out.order == 2


def test_mul_window_rule():
    # order of a product: min over (order of one) + (valuation of the other)
    a = s([1, 1], min_degree=2, order=6)
    b = s([1], min_degree=3, order=4)
    out = a * b
    assert out.order == min(6 + 3, 4 + 2)
    # operands certifying no potentially nonzero coefficient at all cannot
    # produce a usable window
    zero_window = s([1], order=4) - s([1], order=4)
    assert zero_window.is_zero_on_window()
    with pytest.raises(PrecisionError):
        _ = zero_window * zero_window


def test_coefficient_access_is_window_checked():
    a = s([1, 2], order=4)
    assert a.coefficient(3) == 0
    with pytest.raises(PrecisionError):
        a.coefficient(4)
    exact = s([1, 2])
    assert exact.coefficient(10 ** 6) == 0


def test_integer_prefix_rejects_fractions():
    a = s([1, Fraction(1, 2)], order=4)
    with pytest.raises(ValueError):
        a.integer_prefix(2)


# --- division ----------------------------------------------------------------

def long_division_oracle(num, den, order):
    """Brute-force long division over Fractions, as dictionaries."""
    nv = num.valuation()
    v = den.valuation()
    if nv is None:
        return {}
    rem = {nv + i: Fraction(c) for i, c in enumerate(num.coeffs[nv:]) if c}
    d = den.coeffs[v:]
    out = {}
    for k in range(nv - v, order):
        c = rem.get(k + v, Fraction(0)) / d[0]
        if c:
            out[k] = c
        for j, dc in enumerate(d):
            if dc:
                rem[k + v + j] = rem.get(k + v + j, Fraction(0)) - c * dc
    return out


def test_series_div_reference_example():
    num = IntPolynomial([1, 1, 2, 2, 1])
    den = IntPolynomial([1, 1, 2, 1])
    out = series_div(num, den, 13)
    assert out.coefficients(0, 13) == [1, 0, 0, 1, 0, -2, 1, 3, -3, -4, 7, 4,
                                       -14]


def test_series_div_geometric():
    out = series_div(IntPolynomial([1]), IntPolynomial([1, -1]), 4)
    assert out.coefficients(0, 4) == [1, 1, 1, 1]


def test_series_div_laurent_and_oracle():
    num = IntPolynomial([0, 1])
    den = IntPolynomial([1, 1])
    out = series_div(num, den, 4)
    assert out.min_degree == 1
    assert out.coefficients(0, 4) == [0, 1, -1, 1]
    oracle = long_division_oracle(num, den, 4)
    assert {d: Fraction(c) for d, c in zip(range(1, 4), out.coefficients(1, 4))
            if c} == oracle

    # negative leading degree
    out = series_div(IntPolynomial([-1]), IntPolynomial([0, 1, 1]), 3)
    assert out.min_degree == -1
    assert out.coefficients(-1, 3) == [-1, 1, -1, 1]


def test_series_div_round_trip_random():
    rng = random.Random(7)
    for _ in range(60):
        den_c = [1] + [rng.randint(-4, 4) for _ in range(rng.randint(0, 5))]
        num_c = [rng.randint(-6, 6) for _ in range(rng.randint(1, 6))]
        den = IntPolynomial(den_c)
        num = IntPolynomial(num_c)
        order = 12
        out = series_div(num, den, order)
        back = out * TruncatedLaurentSeries.from_polynomial(den)
        for d in range(min(out.min_degree, 0), order):
            assert back.coefficient(d) == num.coefficient(d)


def test_series_div_integrality_when_den_starts_at_one():
    rng = random.Random(11)
    for _ in range(40):
        den = IntPolynomial([1] + [rng.randint(-3, 3) for _ in range(4)])
        num = IntPolynomial([rng.randint(-5, 5) for _ in range(5)])
        out = series_div(num, den, 15)
        assert all(isinstance(c, int) for c in out.coeffs)


def test_series_div_zero_denominator():
    with pytest.raises(ZeroDivisionError):
        series_div(IntPolynomial([1]), IntPolynomial(), 5)


# --- square root ---------------------------------------------------------------

def test_series_sqrt_trivial_and_perfect_square():
    one = TruncatedLaurentSeries.from_polynomial(IntPolynomial([1]))
    assert series_sqrt(one, 5).coefficients(0, 5) == [1, 0, 0, 0, 0]
    sq = TruncatedLaurentSeries.from_polynomial(IntPolynomial([1, 2, 1]))
    assert series_sqrt(sq, 5).coefficients(0, 5) == [1, 1, 0, 0, 0]


def test_series_sqrt_prefix_checked_by_squaring():
    p = TruncatedLaurentSeries.from_polynomial(IntPolynomial([1, 2, -1, 2, 1]))
    root = series_sqrt(p, 3)
    assert root.coefficients(0, 3) == [1, 1, -1]
    sq = root * root
    for d in range(3):
        assert sq.coefficient(d) == p.coefficient(d)


def test_series_sqrt_round_trip_random():
    rng = random.Random(3)
    for _ in range(40):
        base = IntPolynomial([1] + [rng.randint(-3, 3) for _ in range(5)])
        target = TruncatedLaurentSeries.from_polynomial(base * base)
        root = series_sqrt(target, 10)
        sq = root * root
        for d in range(10):
            assert sq.coefficient(d) == target.coefficient(d)


def test_series_sqrt_branch_requires_unit_lead():
    bad = TruncatedLaurentSeries.from_polynomial(IntPolynomial([4, 1]))
    with pytest.raises(ValueError):
        series_sqrt(bad, 5)
    odd = TruncatedLaurentSeries.from_polynomial(IntPolynomial([0, 1]))
    with pytest.raises(ValueError):
        series_sqrt(odd, 5)
