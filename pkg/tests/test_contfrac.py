import random
from fractions import Fraction
from itertools import islice
from math import gcd, isqrt

import pytest

from qreals.contfrac import (CFStream, FiniteCF, PeriodicCF, as_stream,
                             cf_of_rational, cf_of_sqrt, cf_prefix,
                             cf_stream_e, cf_stream_pi, convergents,
                             parse_source, pi_partial_quotients,
                             rational_of_cf)


def test_cf_of_rational_examples():
    assert cf_of_rational(7, 5).terms == (1, 2, 1, 1)
    assert cf_of_rational(2, 1).terms == (1, 1)
    assert cf_of_rational(355, 113).terms == (3, 7, 15, 1)
    assert cf_of_rational(1, 1).terms == (1,)  # the lone odd exception


def test_cf_of_rational_errors():
    with pytest.raises(ValueError):
        cf_of_rational(2, 3)
    with pytest.raises(ZeroDivisionError):
        cf_of_rational(5, 0)


def test_rational_of_cf_examples():
    assert rational_of_cf([1, 1]) == 2
    e15 = [2, 1, 2, 1, 1, 4, 1, 1, 6, 1, 1, 8, 1, 1, 10]
    assert rational_of_cf(e15) == Fraction(517656, 190435)
    assert rational_of_cf([3, 7, 15, 1, 292]) == Fraction(103993, 33102)
    with pytest.raises(ValueError):
        rational_of_cf([])


def test_round_trip_exhaustive_and_sampled():
    for s in range(1, 301):
        for r in range(s, 301):
            if gcd(r, s) == 1:
                assert rational_of_cf(cf_of_rational(r, s).terms) \
                    == Fraction(r, s)
    rng = random.Random(5)
    for _ in range(500):
        s = rng.randint(1, 10 ** 4)
        r = rng.randint(s, 10 ** 4)
        g = gcd(r, s)
        assert rational_of_cf(cf_of_rational(r // g, s // g).terms) \
            == Fraction(r, s)


def test_evenization_is_idempotent_and_value_preserving():
    for terms in [(1, 2, 2), (2, 1, 2), (3, 7, 16), (2,), (5, 1, 1),
                  (1, 1, 1)]:
        cf = FiniteCF(terms)
        even = cf.evenized()
        assert len(even) % 2 == 0
        assert even.value() == cf.value()
        assert even.evenized() == even
    with pytest.raises(ValueError):
        FiniteCF((1,)).evenized()


def test_canonical_form_terms_are_valid():
    for s in range(1, 80):
        for r in range(s + 1, 120):
            if gcd(r, s) == 1:
                cf = cf_of_rational(r, s)
                assert len(cf) % 2 == 0
                assert all(a >= 1 for a in cf.terms)


def test_cf_of_sqrt_examples():
    assert cf_of_sqrt(2) == PeriodicCF((1,), (2,))
    assert cf_of_sqrt(7) == PeriodicCF((2,), (1, 1, 1, 4))
    assert cf_of_sqrt(3) == PeriodicCF((1,), (1, 2))
    assert cf_of_sqrt(5) == PeriodicCF((2,), (4,))
    with pytest.raises(ValueError):
        cf_of_sqrt(16)


def test_cf_of_sqrt_convergents_approximate_the_root():
    # Pell-style bound: |r^2 - d*s^2| stays below 1 + 2*sqrt(d).
    for d in range(2, 51):
        if isqrt(d) ** 2 == d:
            continue
        terms = list(islice(iter(cf_of_sqrt(d).stream()), 12))
        for r, s in convergents(terms):
            assert abs(r * r - d * s * s) <= 2 * isqrt(d) + 1


def test_e_stream_pattern():
    st = cf_stream_e()
    first = st.take(15)
    assert first[:6] == [2, 1, 2, 1, 1, 4]
    assert first[6:9] == [1, 1, 6]
    assert first[14] == 10


def test_e_convergents_alternate_around_the_limit():
    terms = cf_stream_e().take(12)
    vals = [Fraction(r, s) for r, s in convergents(terms)]
    odds = vals[0::2]
    evens = vals[1::2]
    assert all(a < b for a, b in zip(odds, odds[1:]))
    assert all(a > b for a, b in zip(evens, evens[1:]))
    assert max(odds) < min(evens)


def test_cf_prefix_normalization():
    assert cf_prefix(cf_stream_e(), 4).terms == (2, 1, 2, 1)
    sqrt2 = cf_of_sqrt(2).stream()
    assert cf_prefix(sqrt2, 3).terms == (1, 2, 1, 1)
    assert rational_of_cf(cf_prefix(sqrt2, 3).terms) == Fraction(7, 5)
    assert cf_prefix(cf_stream_e(), 2).terms == (2, 1)
    with pytest.raises(ValueError):
        cf_prefix(cf_stream_e(), 0)


def test_pi_stream_is_bundled_and_truncated():
    terms = pi_partial_quotients()
    assert terms[:22] == [3, 7, 15, 1, 292, 1, 1, 1, 2, 1, 3, 1, 14, 2, 1, 1,
                          2, 2, 2, 2, 1, 84]
    assert len(terms) >= 40
    st = cf_stream_pi()
    assert st.truncated is True
    with pytest.raises(ValueError):
        st.take(len(terms) + 1)


def test_streams_are_replayable():
    st = cf_stream_e()
    assert st.take(5) == st.take(5)
    assert as_stream([1, 2, 3]).take(3) == [1, 2, 3]


def test_term_validation():
    with pytest.raises(ValueError):
        FiniteCF((1, 0, 2))
    with pytest.raises(ValueError):
        FiniteCF(())
    with pytest.raises(ValueError):
        PeriodicCF((1,), ())


def test_parse_source_syntax():
    assert parse_source("1,2,1,1") == FiniteCF((1, 2, 1, 1))
    assert parse_source("1;2") == PeriodicCF((1,), (2,))
    assert parse_source(";1,1") == PeriodicCF((), (1, 1))
    assert parse_source("sqrt:7") == PeriodicCF((2,), (1, 1, 1, 4))
    assert parse_source("phi") == PeriodicCF((), (1,))
    assert isinstance(parse_source("e"), CFStream)
    with pytest.raises(ValueError):
        parse_source("tau")
