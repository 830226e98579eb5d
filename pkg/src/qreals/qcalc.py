"""The three equivalent q-deformations of a rational number.

A rational r/s >= 1 with canonical even-length expansion [a_1, ..., a_2m]
deforms into a ratio of integer polynomials num/den with positive
coefficients.  The module provides the 2x2 matrix product construction,
the alternating continued-fraction tower, and the recursive weighted-Farey
(Stern-Brocot mediant) construction; all three agree exactly.

Matrix form: the product of per-term factors (odd slots contribute
([a]_q, q^a; 1, 0), even slots (q[a]_q, 1; q^a, 0)) carries q*num, q*den in
its first column and the previous convergent's deformation in its second.
The determinant of each factor is -q^a, which is what makes the consecutive
convergent identities below exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .contfrac import CFSource, FiniteCF, as_stream, cf_of_rational
from .exactalg import IntPolynomial, TruncatedLaurentSeries, series_div


class ConsistencyError(RuntimeError):
    """A structural identity failed; this indicates an implementation bug."""


def q_integer(a: int) -> TruncatedLaurentSeries:
    """[a]_q as an exact Laurent polynomial.

    a >= 0 gives 1 + q + ... + q^(a-1) (zero for a = 0); a < 0 gives
    -q^-1 - q^-2 - ... - q^a.
    """
    if a >= 0:
        return TruncatedLaurentSeries([1] * a, 0)
    return TruncatedLaurentSeries([-1] * (-a), a)


def q_integer_poly(a: int) -> IntPolynomial:
    if a < 0:
        raise ValueError("need a >= 0")
    return IntPolynomial([1] * a)


@dataclass(frozen=True)
class QRational:
    """num/den, the q-deformation of a rational.

    Canonical deformations of r/s >= 1 satisfy: positive coefficients,
    lowest and highest coefficient 1 on both, deg num = a_1+...+a_2m - 1,
    deg den = a_2+...+a_2m - 1, and num(1)/den(1) = r/s.  Instances are not
    auto-validated so that the Farey boundary vertices 0/1 and 1/0 and the
    translation extension below 1 remain representable; call
    validate_canonical where the invariants are required.
    """

    num: IntPolynomial
    den: IntPolynomial

    def value(self) -> Fraction:
        return Fraction(self.num(1), self.den(1))

    def taylor(self, order: int) -> TruncatedLaurentSeries:
        return series_div(self.num, self.den, order)

    def __str__(self) -> str:
        return f"({self.num}) / ({self.den})"


def validate_canonical(qr: QRational, cf: FiniteCF | None = None) -> None:
    """Assert the structural invariants of a canonical deformation."""
    for p in (qr.num, qr.den):
        if p.is_zero() or any(c <= 0 for c in p.coeffs):
            raise ConsistencyError(f"nonpositive coefficient in {p}")
        if p.coeffs[0] != 1 or p.coeffs[-1] != 1:
            raise ConsistencyError(f"extreme coefficients of {p} are not 1")
    if cf is not None:
        terms = cf.terms if len(cf) % 2 == 0 else cf.evenized().terms
        if qr.num.degree != sum(terms) - 1:
            raise ConsistencyError("numerator degree formula violated")
        if qr.den.degree != sum(terms[1:]) - 1:
            raise ConsistencyError("denominator degree formula violated")
        if qr.value() != rational_value(terms):
            raise ConsistencyError("evaluation at q=1 mismatch")


def rational_value(terms: Iterable[int]) -> Fraction:
    num, den = 1, 0
    for a in reversed(list(terms)):
        num, den = a * num + den, num
    return Fraction(num, den)


# --- matrix construction -------------------------------------------------

Mat = tuple[tuple[IntPolynomial, IntPolynomial],
            tuple[IntPolynomial, IntPolynomial]]

_ZERO = IntPolynomial.zero()
_ONE = IntPolynomial.one()

MAT_IDENTITY: Mat = ((_ONE, _ZERO), (_ZERO, _ONE))


def mat_mul(m: Mat, n: Mat) -> Mat:
    (a, b), (c, d) = m
    (e, f), (g, h) = n
    return ((a * e + b * g, a * f + b * h),
            (c * e + d * g, c * f + d * h))


def matrix_factor(a: int, position: int) -> Mat:
    """Per-term factor; `position` is the 1-based slot in the expansion."""
    if a < 1:
        raise ValueError("partial quotients must be >= 1")
    qa = q_integer_poly(a)
    if position % 2 == 1:
        return ((qa, IntPolynomial.monomial(a)), (_ONE, _ZERO))
    return ((qa.shifted(1), _ONE), (IntPolynomial.monomial(a), _ZERO))


def convergent_step(m: Mat, a: int, position: int) -> Mat:
    """m times the factor for term a, using the factors' monomial columns
    (two real multiplications and two shifts instead of a full 2x2 product)."""
    if a < 1:
        raise ValueError("partial quotients must be >= 1")
    (m00, m01), (m10, m11) = m
    qa = q_integer_poly(a)
    if position % 2 == 1:
        return ((m00 * qa + m01, m00.shifted(a)),
                (m10 * qa + m11, m10.shifted(a)))
    qqa = qa.shifted(1)
    return ((m00 * qqa + m01.shifted(a), m00),
            (m10 * qqa + m11.shifted(a), m10))


def convergent_matrix(terms: Iterable[int], start_position: int = 1) -> Mat:
    m = MAT_IDENTITY
    for i, a in enumerate(terms):
        m = convergent_step(m, a, start_position + i)
    return m


def q_rational_matrix(cf: FiniteCF) -> QRational:
    """Deformation of an even-length expansion from the matrix product."""
    if len(cf) % 2:
        raise ValueError("even-length expansion required (evenize first)")
    m = convergent_matrix(cf.terms)
    num = m[0][0].q_power_divided(1)
    den = m[1][0].q_power_divided(1)
    return QRational(num, den)


def q_rational_pair(cf: FiniteCF) -> tuple[QRational, QRational]:
    """(deformation of cf, deformation of the one-shorter convergent).

    Both read off a single matrix product: first column divided by q, and
    the second column as-is.
    """
    if len(cf) % 2:
        raise ValueError("even-length expansion required")
    m = convergent_matrix(cf.terms)
    cur = QRational(m[0][0].q_power_divided(1), m[1][0].q_power_divided(1))
    prev = QRational(m[0][1], m[1][1])
    return cur, prev


# --- continued-fraction tower construction -------------------------------

def q_rational_cf(cf: FiniteCF) -> QRational:
    """Deformation via the alternating tower.

    Odd slots contribute [a]_q with weight q^a over the next level, even
    slots [a]_{q^(-1)} with weight q^(-a).  The tower is evaluated bottom-up
    over exact Laurent-polynomial fractions, then cleared of q-power units
    so both extremes have constant term 1.
    """
    if len(cf) % 2:
        raise ValueError("even-length expansion required (evenize first)")
    terms = cf.terms

    def level_value(a: int, position: int) -> TruncatedLaurentSeries:
        if position % 2 == 1:
            return q_integer(a)
        # [a]_{q^(-1)} = q^(1-a) [a]_q
        return TruncatedLaurentSeries([1] * a, 1 - a)

    n = len(terms)
    num = level_value(terms[-1], n)
    den = TruncatedLaurentSeries.constant(1)
    for i in range(n - 2, -1, -1):
        position = i + 1
        a = terms[i]
        head = level_value(a, position)
        weight = a if position % 2 == 1 else -a
        num, den = head * num + den.shifted(weight), num
    shift = -min(num.min_degree, den.min_degree)
    num, den = num.shifted(shift), den.shifted(shift)
    drop = min(num.min_degree, den.min_degree)
    num, den = num.shifted(-drop), den.shifted(-drop)
    if num.min_degree != 0 or den.min_degree != 0:
        raise ConsistencyError("tower result has no common unit normal form")
    num_p = IntPolynomial([int(c) for c in num.coeffs])
    den_p = IntPolynomial([int(c) for c in den.coeffs])
    return QRational(num_p, den_p)


# --- weighted Farey / Stern-Brocot construction ---------------------------

@dataclass(frozen=True)
class FareyTriangle:
    """One mediant step: boundary vertices with their deformations plus the
    weight exponent of the edge joining them (the triangle's top edge).

    Vertex fractions are raw (numerator, denominator) pairs so that the
    boundary vertex 1/0 is representable.
    """

    left: tuple[tuple[int, int], QRational]
    right: tuple[tuple[int, int], QRational]
    top_edge_exponent: int

    def mediant(self) -> tuple[int, int]:
        (ln, ld), (rn, rd) = self.left[0], self.right[0]
        return ln + rn, ld + rd

    def mediant_qrational(self) -> QRational:
        """Vertex rule: (num' + q^l num'') / (den' + q^l den'') with
        l = top_edge_exponent + 1."""
        ell = self.top_edge_exponent + 1
        lq, rq = self.left[1], self.right[1]
        return QRational(lq.num + rq.num.shifted(ell),
                         lq.den + rq.den.shifted(ell))


def farey_walk(r: int, s: int) -> tuple[QRational, list[FareyTriangle]]:
    """Walk the mediant tree from the base triangle down to r/s.

    Returns the deformation of r/s and every triangle along the path (the
    last one has r/s as its mediant).  The outermost edge, joining 0/1 and
    1/0, carries exponent -1; within a triangle of top exponent l-1 the left
    child edge has exponent 0 and the right child edge exponent l.
    """
    target = Fraction(r, s)
    if target < 1:
        raise ValueError(f"{target} < 1 is outside the walk's range")
    left = ((0, 1), QRational(_ZERO, _ONE))
    right = ((1, 0), QRational(_ONE, _ZERO))
    top = -1
    triangles: list[FareyTriangle] = []
    while True:
        tri = FareyTriangle(left=left, right=right, top_edge_exponent=top)
        mn, md = tri.mediant()
        med_q = tri.mediant_qrational()
        triangles.append(tri)
        if Fraction(mn, md) == target:
            return med_q, triangles
        ell = top + 1
        if target < Fraction(mn, md):
            right = ((mn, md), med_q)
            top = 0
        else:
            left = ((mn, md), med_q)
            top = ell


def q_rational_farey(r: int, s: int) -> QRational:
    qr, _ = farey_walk(r, s)
    return qr


def farey_neighbor_relations(tri: FareyTriangle) -> tuple[int, int]:
    """Check the two asymmetric mediant determinant identities.

    With parents' deformations N'/D' (left) and N''/D'' (right) satisfying
    N''D' - D''N' = q^a, the mediant M/D obeys M*D' - D*N' = q^(a+l) and
    M*D'' - D*N'' = -q^a.  Returns (a + l, a); any violation is fatal.
    """
    lq, rq = tri.left[1], tri.right[1]
    ell = tri.top_edge_exponent + 1
    parent_det = rq.num * lq.den - rq.den * lq.num
    a = _monomial_exponent(parent_det, expect_sign=1,
                           what="parent-edge determinant")
    med = tri.mediant_qrational()
    left_det = med.num * lq.den - med.den * lq.num
    right_det = med.num * rq.den - med.den * rq.num
    got_left = _monomial_exponent(left_det, 1, "left mediant relation")
    got_right = _monomial_exponent(right_det, -1, "right mediant relation")
    if got_left != a + ell or got_right != a:
        raise ConsistencyError(
            f"mediant relations give ({got_left}, {got_right}), "
            f"expected ({a + ell}, {a})")
    return a + ell, a


def _monomial_exponent(p: IntPolynomial, expect_sign: int, what: str) -> int:
    nz = [(i, c) for i, c in enumerate(p.coeffs) if c]
    if len(nz) != 1 or nz[0][1] != expect_sign:
        raise ConsistencyError(f"{what}: {p} is not {expect_sign:+d}*q^e")
    return nz[0][0]


# --- consecutive-convergent determinant ------------------------------------

def q_rational(r: int, s: int, method: str = "matrix") -> QRational:
    """Canonical deformation of r/s >= 1 by the chosen construction."""
    if Fraction(r, s) == 1:
        return QRational(_ONE, _ONE)
    if method == "farey":
        g = Fraction(r, s)
        return q_rational_farey(g.numerator, g.denominator)
    cf = cf_of_rational(r, s)
    if method == "matrix":
        return q_rational_matrix(cf)
    if method == "cf":
        return q_rational_cf(cf)
    raise ValueError(f"unknown method {method!r}")


def det_identity(stream: CFSource | Iterable[int], n: int) -> int:
    """Exponent e of the consecutive-convergent determinant at depth n.

    For the deformations of x_{n-1} and x_n (values of the first n-1 and n
    stream terms), num_n*den_{n-1} - den_n*num_{n-1} is exactly +q^e with
    e = a_1+...+a_n-1 for even n, and -q^e with e = a_1+...+a_{n-1}-1 for
    odd n (the sign and the lowered exponent for odd n follow from the
    factorization of the matrix determinant).  Violations are fatal.
    """
    if n < 2:
        raise ValueError("need n >= 2")
    terms = as_stream(stream).take(n)
    vals = []
    num, den, pnum, pden = 1, 0, 0, 1
    for a in terms:
        num, pnum = a * num + pnum, num
        den, pden = a * den + pden, den
        vals.append((num, den))
    cur = q_rational(*vals[-1])
    prev = q_rational(*vals[-2])
    det = cur.num * prev.den - cur.den * prev.num
    if n % 2 == 0:
        expect = sum(terms) - 1
        sign = 1
    else:
        expect = sum(terms[:-1]) - 1
        sign = -1
    e = _monomial_exponent(det, sign, "consecutive-convergent determinant")
    if e != expect:
        raise ConsistencyError(
            f"determinant exponent {e} != {expect} at depth {n}")
    return e
