"""Stabilized series for real numbers, translations, and negative reals.

The Taylor coefficients of the deformations of a convergent sequence
x_1, x_2, ... become constant one by one; the limit series is the
q-deformation of the limit x.  For the convergents of a continued fraction
the stable prefix is quantified exactly: after an even number n of terms,
the deformations of x_{n-1} and x_n share precisely their first
a_1+...+a_n-1 coefficients and differ by exactly 1 at the next.  stabilize()
certifies coefficients by that bound together with agreement of the two
expansions, so a bug in either half of the argument would abort instead of
mis-certifying.

Translation acts by [x+1] = q[x] + 1 and its inverse [x-1] = ([x]-1)/q;
iterating the inverse extends the construction below 1 and to negative
reals, where the series acquires a Laurent tail: for -k <= x < 1-k the
expansion opens with -q^(-k).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Union

from .contfrac import CFSource, CFStream, FiniteCF, as_stream, rational_of_cf
from .exactalg import TruncatedLaurentSeries
from .qcalc import (MAT_IDENTITY, ConsistencyError, QRational,
                    convergent_step, farey_walk, q_rational)


@dataclass(frozen=True)
class StabilizedSeries:
    """Laurent coefficients with a certified prefix.

    coeffs[i] is the coefficient of q**(min_degree + i).  The first
    guaranteed_terms of them are certified exact; anything beyond (present
    only on explicitly partial results) is the best current approximation.
    """

    min_degree: int
    coeffs: tuple[int, ...]
    guaranteed_terms: int
    source: str = ""

    def __post_init__(self) -> None:
        if self.guaranteed_terms > len(self.coeffs):
            raise ValueError("guarantee exceeds available coefficients")

    def coefficient(self, degree: int) -> int:
        i = degree - self.min_degree
        if i < 0:
            return 0
        if i >= self.guaranteed_terms:
            top = self.min_degree + self.guaranteed_terms - 1
            raise ValueError(f"coefficient of q^{degree} is not certified "
                             f"(certified through q^{top})")
        return self.coeffs[i]

    def certified_prefix(self, n: int) -> tuple[int, ...]:
        if n > self.guaranteed_terms:
            raise ValueError(f"only {self.guaranteed_terms} terms certified, "
                             f"{n} requested")
        return self.coeffs[:n]

    def to_series(self) -> TruncatedLaurentSeries:
        """The certified window as a truncated Laurent series."""
        return TruncatedLaurentSeries(
            self.coeffs[:self.guaranteed_terms], self.min_degree,
            self.min_degree + self.guaranteed_terms)

    def __str__(self) -> str:
        return str(self.to_series())


def stabilize(stream: CFSource | Iterable[int], terms: int,
              source: str | None = None) -> StabilizedSeries:
    """Certified expansion of the value of a partial-quotient stream.

    Consumes terms until an even count n with a_1+...+a_n-1 >= terms, then
    expands the deformations of the last two convergents (both read off one
    matrix product) and returns their common prefix; the two expansions
    must first differ exactly at degree a_1+...+a_n-1 and exactly by 1,
    which is asserted.

    A finite stream that runs out is an exactly known rational: its exact
    expansion is returned with the full requested guarantee.  A stream
    marked truncated=True is a prefix of something longer, so exhaustion
    yields a partial result whose guarantee stops at the last even bound.
    """
    if terms < 1:
        raise ValueError("need terms >= 1")
    st = as_stream(stream)
    label = source if source is not None else (st.description or "stream")
    it = iter(st)
    consumed: list[int] = []
    matrix = MAT_IDENTITY
    even_matrix = None
    total = 0
    while True:
        try:
            a = next(it)
        except StopIteration:
            if st.truncated:
                return _partial_result(even_matrix, consumed, terms, label)
            return _exact_rational_result(consumed, terms, label)
        consumed.append(a)
        total += a
        matrix = convergent_step(matrix, a, len(consumed))
        if len(consumed) % 2 == 0:
            even_matrix = matrix
            if total - 1 >= terms:
                return _certified_from_matrix(matrix, total - 1, label)


def _pair_from_matrix(matrix) -> tuple[QRational, QRational]:
    cur = QRational(matrix[0][0].q_power_divided(1),
                    matrix[1][0].q_power_divided(1))
    prev = QRational(matrix[0][1], matrix[1][1])
    return cur, prev


def _check_prefix_law(a: tuple[int, ...], b: tuple[int, ...],
                      bound: int) -> None:
    if a[:bound] != b[:bound] or a[bound] - b[bound] != 1:
        raise ConsistencyError(
            "consecutive convergents do not realize the certified bound")


def _certified_from_matrix(matrix, bound: int, label: str) -> StabilizedSeries:
    cur, prev = _pair_from_matrix(matrix)
    a = cur.taylor(bound + 1).integer_prefix(bound + 1)
    b = prev.taylor(bound + 1).integer_prefix(bound + 1)
    _check_prefix_law(a, b, bound)
    if a[0] != 1:
        raise ConsistencyError("expansion of a value >= 1 must start at 1")
    return StabilizedSeries(0, a[:bound], bound, label)


def _exact_rational_result(consumed: list[int], terms: int,
                           label: str) -> StabilizedSeries:
    if not consumed:
        raise ValueError("empty stream")
    value = rational_of_cf(consumed)
    qr = q_rational(value.numerator, value.denominator)
    coeffs = qr.taylor(terms).integer_prefix(terms)
    return StabilizedSeries(0, coeffs, terms, f"{label} (exact rational)")


def _partial_result(even_matrix, consumed: list[int], terms: int,
                    label: str) -> StabilizedSeries:
    m = len(consumed) - len(consumed) % 2
    if m < 2 or even_matrix is None:
        raise ValueError(f"stream {label!r} too short to certify anything")
    bound = sum(consumed[:m]) - 1
    cur, prev = _pair_from_matrix(even_matrix)
    n_out = max(terms, bound + 1)
    a = cur.taylor(n_out).integer_prefix(n_out)
    b = prev.taylor(bound + 1).integer_prefix(bound + 1)
    _check_prefix_law(a[:bound + 1], b, bound)
    return StabilizedSeries(0, a[:n_out], bound, f"{label} (partial)")


# --- translation operators -------------------------------------------------

Translatable = Union[StabilizedSeries, QRational, TruncatedLaurentSeries]

_ONE_SERIES = TruncatedLaurentSeries.constant(1)


def translate_up(x: Translatable, k: int = 1) -> Translatable:
    """Apply f -> q*f + 1 k times (the deformation of x -> x + k)."""
    if k < 0:
        return translate_down(x, -k)
    if isinstance(x, StabilizedSeries):
        s = translate_up(x.to_series(), k)
        return _stabilized_from_series(s, x.source)
    if isinstance(x, QRational):
        out = x
        for _ in range(k):
            out = QRational(out.num.shifted(1) + out.den, out.den)
        return out
    s = x
    for _ in range(k):
        s = s.shifted(1) + _ONE_SERIES
    return s


def translate_down(x: Translatable, k: int = 1) -> Translatable:
    """Apply f -> (f - 1)/q k times (the deformation of x -> x - k).

    On rational functions the common q-power of numerator and denominator
    is cancelled, so [1/2] comes out as q/(1+q) and [-1/2] as -1/(q(1+q)).
    """
    if k < 0:
        return translate_up(x, -k)
    if isinstance(x, StabilizedSeries):
        s = translate_down(x.to_series(), k)
        return _stabilized_from_series(s, x.source)
    if isinstance(x, QRational):
        out = x
        for _ in range(k):
            num = out.num - out.den
            den = out.den.shifted(1)
            if num.is_zero():
                drop = den.valuation()
            else:
                drop = min(num.valuation(), den.valuation())
            out = QRational(num.q_power_divided(drop),
                            den.q_power_divided(drop))
        return out
    s = x
    for _ in range(k):
        s = (s - _ONE_SERIES).shifted(-1)
    return s


def _stabilized_from_series(s: TruncatedLaurentSeries,
                            source: str) -> StabilizedSeries:
    assert s.order is not None
    coeffs = tuple(int(c) for c in s.coefficients(s.min_degree, s.order))
    return StabilizedSeries(s.min_degree if coeffs else 0, coeffs,
                            len(coeffs), source)


# --- real numbers given as shifted continued-fraction data ------------------

@dataclass(frozen=True)
class RealSpec:
    """x = value(base) - shift, with value(base) >= 1.

    The constructors pick the smallest shift that puts x + shift into
    [1, inf), which keeps the Laurent tail as short as x's bracket allows.
    """

    shift: int
    base: CFSource
    label: str = ""


def q_real(spec: RealSpec, terms: int) -> StabilizedSeries:
    """Expansion of x = value(base) - shift with at least `terms` certified
    coefficients, starting at the series' lowest nonzero degree.

    Down-translation strips the certified leading zeros it creates, so the
    base is re-stabilized with a wider margin until the stripped result
    still carries `terms` certified coefficients (a truncated base that ran
    out is returned as the partial result it is).
    """
    k = spec.shift
    margin = max(k, 0)
    while True:
        base = stabilize(spec.base, terms + margin, source=spec.label or None)
        shifted = translate_down(base, k)
        assert isinstance(shifted, StabilizedSeries)
        if (shifted.guaranteed_terms >= terms
                or base.guaranteed_terms < terms + margin):
            break  # done, or the base stream is exhausted and cannot improve
        shortfall = terms - shifted.guaranteed_terms
        margin = max(margin + shortfall, 2 * margin + 1)
    if spec.label:
        shifted = StabilizedSeries(shifted.min_degree, shifted.coeffs,
                                   shifted.guaranteed_terms, spec.label)
    return shifted


def real_spec(source: CFSource, negate: bool = False, shift: int = 0,
              label: str = "") -> RealSpec:
    """Spec for x = (+-value(source)) + shift.

    Negating an infinite expansion [b1, b2, ...] uses the reflected stream
    of (b1+2) - x, which is [1, 1, b2-1, b3, ...] when b2 >= 2 and
    [1, 1+b3, b4, ...] when b2 = 1.
    """
    if not negate:
        return RealSpec(-shift, source, label)
    if isinstance(source, FiniteCF):
        raise ValueError("negate rationals through q_real_rational")
    k0, reflected = _negated_stream(as_stream(source))
    return RealSpec(k0 - shift, reflected, label)


def _negated_stream(st: CFStream) -> tuple[int, CFStream]:
    b1, b2 = st.take(2)

    def gen():
        it = iter(st)
        next(it)
        next(it)
        if b2 >= 2:
            yield 1
            yield 1
            yield b2 - 1
        else:
            yield 1
            yield 1 + next(it)
        yield from it

    return b1 + 2, CFStream(gen, truncated=st.truncated,
                            description=f"reflection of {st.description}")


def q_real_rational(r: int, s: int,
                    terms: int) -> tuple[QRational, StabilizedSeries]:
    """Deformation of an arbitrary rational r/s as a rational function plus
    `terms` expansion coefficients, handling r/s < 1 (including negatives)
    by translation."""
    if s == 0:
        raise ZeroDivisionError("zero denominator")
    value = Fraction(r, s)
    k = 0
    while value + k < 1:
        k += 1
    base = q_rational((value + k).numerator, (value + k).denominator)
    qr = translate_down(base, k)
    assert isinstance(qr, QRational)
    if qr.num.is_zero():
        return qr, StabilizedSeries(0, (0,) * terms, terms,
                                    f"{value} (exact rational)")
    lead = qr.num.valuation() - qr.den.valuation()
    series = qr.taylor(lead + terms)
    coeffs = tuple(int(c) for c in series.coefficients(lead, lead + terms))
    return qr, StabilizedSeries(lead, coeffs, terms,
                                f"{value} (exact rational)")


# --- the coefficient gap and one-sided limits ------------------------------

def gap_check(series: StabilizedSeries, k: int) -> bool:
    """True iff the series opens 1 + q + ... + q^(k-1) + 0*q^k, the shape
    forced for k <= x <= k+1."""
    if k < 1:
        raise ValueError("need k >= 1")
    if series.min_degree != 0:
        return False
    if series.guaranteed_terms < k + 1:
        raise ValueError(
            f"need {k + 1} certified terms, have {series.guaranteed_terms}")
    head = series.certified_prefix(k + 1)
    return all(c == 1 for c in head[:k]) and head[k] == 0


def one_sided_probe(target: Fraction, side: str, terms: int,
                    depth: int) -> StabilizedSeries:
    """Empirical stabilization along one-sided rational approximations.

    side="right" walks the neighbor sequence (n*r + r'')/(n*s + s'') built
    from the right mediant parent of target; its expansions converge to the
    expansion of the deformation of target.  side="left" uses the left
    parent; a limit exists experimentally but differs from the deformation
    of target.  Returns the common expansion prefix of the two deepest
    probes; the guarantee is empirical, not a theorem.
    """
    if depth < 2:
        raise ValueError("need depth >= 2")
    if side not in ("left", "right"):
        raise ValueError("side must be 'left' or 'right'")
    if target < 1 or (side == "left" and target == 1):
        raise ValueError("probe target outside the mediant walk's range")
    _, triangles = farey_walk(target.numerator, target.denominator)
    last = triangles[-1]
    pn, pd = last.left[0] if side == "left" else last.right[0]
    r, s = target.numerator, target.denominator
    expansions = []
    for n in (depth - 1, depth):
        expansions.append(
            q_rational(n * r + pn, n * s + pd).taylor(terms).prefix(terms))
    common: list[int] = []
    for x, y in zip(*expansions):
        if x != y:
            break
        common.append(int(x))
    return StabilizedSeries(0, tuple(common), len(common),
                            f"{side} probe of {target} (empirical)")
