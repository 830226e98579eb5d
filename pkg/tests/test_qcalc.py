import random
from fractions import Fraction
from math import gcd

import pytest

from qreals.contfrac import FiniteCF, cf_of_rational, cf_of_sqrt, cf_stream_e
from qreals.exactalg import IntPolynomial
from qreals.qcalc import (ConsistencyError, QRational, det_identity,
                          farey_neighbor_relations, farey_walk, q_integer,
                          q_rational, q_rational_cf, q_rational_farey,
                          q_rational_matrix, validate_canonical)


def poly(*coeffs):
    return IntPolynomial(coeffs)


def test_q_integer():
    assert q_integer(3).coefficients(0, 3) == [1, 1, 1]
    assert q_integer(0).is_zero_on_window()
    neg = q_integer(-3)
    assert neg.min_degree == -3
    assert neg.coefficients(-3, 0) == [-1, -1, -1]


def test_matrix_construction_examples():
    assert q_rational_matrix(FiniteCF((1, 1))) == QRational(poly(1, 1), poly(1))
    got = q_rational_matrix(FiniteCF((1, 2, 1, 1)))
    assert got == QRational(poly(1, 1, 2, 2, 1), poly(1, 1, 2, 1))
    phi6 = q_rational_matrix(FiniteCF((1,) * 6))
    assert phi6 == QRational(poly(1, 2, 3, 3, 3, 1), poly(1, 2, 2, 2, 1))
    with pytest.raises(ValueError):
        q_rational_matrix(FiniteCF((1, 2, 2)))


def test_tower_construction_examples():
    assert q_rational_cf(FiniteCF((1, 1))) == QRational(poly(1, 1), poly(1))
    assert q_rational_cf(FiniteCF((1, 2, 1, 1))) \
        == q_rational_matrix(FiniteCF((1, 2, 1, 1)))
    phi8 = q_rational_cf(FiniteCF((1,) * 8))
    assert phi8.num == poly(1, 3, 5, 7, 7, 6, 4, 1)


def test_farey_construction_examples():
    assert q_rational_farey(2, 1) == QRational(poly(1, 1), poly(1))
    assert q_rational_farey(3, 2) == QRational(poly(1, 1, 1), poly(1, 1))
    assert q_rational_farey(7, 5) == QRational(poly(1, 1, 2, 2, 1),
                                               poly(1, 1, 2, 1))
    with pytest.raises(ValueError):
        q_rational_farey(1, 2)


def test_three_constructions_agree():
    for s in range(1, 16):
        for r in range(s, 31 - s):
            if gcd(r, s) != 1:
                continue
            by_matrix = q_rational(r, s, "matrix")
            assert by_matrix == q_rational(r, s, "cf")
            assert by_matrix == q_rational(r, s, "farey")
            assert by_matrix.value() == Fraction(r, s)
            if r != s:
                validate_canonical(by_matrix, cf_of_rational(r, s))


def test_canonical_invariants_checked():
    bad = QRational(poly(1, -1, 1), poly(1))
    with pytest.raises(ConsistencyError):
        validate_canonical(bad)
    with pytest.raises(ConsistencyError):
        validate_canonical(QRational(poly(1, 2), poly(1)))  # top coeff != 1


def test_degree_formulas():
    for terms in [(1, 2, 1, 1), (2, 3), (1, 1, 1, 1, 1, 1), (4, 1, 2, 1)]:
        qr = q_rational_matrix(FiniteCF(terms))
        assert qr.num.degree == sum(terms) - 1
        assert qr.den.degree == sum(terms[1:]) - 1


def test_det_identity_even_depths():
    # exponent a_1 + ... + a_n - 1 at even depths, on several streams
    assert det_identity([1, 1], 2) == 1
    for stream, n in [((1,) * 20, 20), (cf_of_sqrt(2).stream(), 12),
                      (cf_stream_e(), 14), (cf_of_sqrt(7).stream(), 10)]:
        from qreals.contfrac import as_stream
        terms = as_stream(stream).take(n)
        for depth in range(2, n + 1, 2):
            assert det_identity(terms, depth) == sum(terms[:depth]) - 1


def test_det_identity_odd_depths_use_previous_sum():
    # at odd depths the determinant is -q^e with e = a_1+...+a_{n-1}-1;
    # forced by the factor-by-factor determinant of the convergent matrix
    sqrt2 = [1, 2, 2, 2, 2]
    assert det_identity(sqrt2, 3) == sum(sqrt2[:2]) - 1  # == 2
    e_terms = [2, 1, 2, 1, 1]
    assert det_identity(e_terms, 5) == sum(e_terms[:4]) - 1  # == 5
    golden = [1] * 9
    for depth in range(3, 10, 2):
        assert det_identity(golden, depth) == depth - 2


def test_farey_neighbor_relations_examples():
    _, triangles = farey_walk(3, 2)
    last = triangles[-1]
    assert last.mediant() == (3, 2)
    assert farey_neighbor_relations(last) == (2, 1)
    base = triangles[0]
    assert base.left[0] == (0, 1) and base.right[0] == (1, 0)
    assert base.top_edge_exponent == -1
    assert farey_neighbor_relations(base) == (0, 0)


def test_farey_neighbor_relations_fuzz():
    rng = random.Random(99)
    for _ in range(50):
        lo, hi = (1, 1), (1, 0)
        for _ in range(rng.randint(1, 8)):
            med = (lo[0] + hi[0], lo[1] + hi[1])
            if rng.random() < 0.5:
                hi = med
            else:
                lo = med
        target = (lo[0] + hi[0], lo[1] + hi[1])
        _, triangles = farey_walk(*target)
        for tri in triangles:
            farey_neighbor_relations(tri)  # raises on violation


def test_taylor_expansion_of_deformation():
    series = q_rational(7, 5).taylor(13)
    assert series.coefficients(0, 13) == [1, 0, 0, 1, 0, -2, 1, 3, -3, -4, 7,
                                          4, -14]
    assert q_rational(1, 1).taylor(3).coefficients(0, 3) == [1, 0, 0]
