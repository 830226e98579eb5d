"""Quadratic functional equations of q-deformed quadratic irrationals.

A value with an eventually periodic expansion is a fixed point of the
Moebius transformation attached to one period, so its deformation X
satisfies alpha*X^2 + beta*X + gamma = 0 with integer polynomial
coefficients: the purely periodic tail Y obeys C*Y^2 + (D-A)*Y - B = 0
where (A, B; C, D) is the period's convergent-matrix product, and the
preperiod conjugates that equation onto X.  The triple is normalized by
dividing out the polynomial gcd, the integer content and the common
q-power, then fixing the sign of the leading coefficient of alpha; for
golden, silver and sqrt(2,3,5,7) this lands exactly on the classically
printed equations, whose alpha is a plain power of q.

Solving for X gives the closed form (-beta +- sqrt(delta)) / (2*alpha) with
delta = beta^2 - 4*alpha*gamma; the correct branch is the one whose series
expansion reproduces the stabilized coefficients.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from pathlib import Path

from .contfrac import PeriodicCF
from .exactalg import (IntPolynomial, TruncatedLaurentSeries, poly_exact_div,
                       poly_gcd, series_sqrt)
from .qcalc import convergent_matrix
from .qreal import StabilizedSeries


@dataclass(frozen=True)
class QQuadraticEquation:
    """alpha*X^2 + beta*X + gamma = 0 over integer polynomials in q.

    Normal form: no common polynomial factor, integer content 1, no common
    q-power, and alpha's leading coefficient positive.
    """

    alpha: IntPolynomial
    beta: IntPolynomial
    gamma: IntPolynomial

    def __post_init__(self) -> None:
        if self.alpha.is_zero():
            raise ValueError("a quadratic equation needs alpha != 0")

    def discriminant(self) -> IntPolynomial:
        return self.beta * self.beta - IntPolynomial((4,)) * self.alpha * self.gamma

    def at_q1(self) -> tuple[int, int, int]:
        return self.alpha(1), self.beta(1), self.gamma(1)

    def __str__(self) -> str:
        return f"({self.alpha})*X^2 + ({self.beta})*X + ({self.gamma}) = 0"


def _normalized_triple(alpha: IntPolynomial, beta: IntPolynomial,
                       gamma: IntPolynomial) -> QQuadraticEquation:
    g = poly_gcd(poly_gcd(alpha, beta), gamma)
    if g.degree > 0:
        alpha = poly_exact_div(alpha, g)
        beta = poly_exact_div(beta, g)
        gamma = poly_exact_div(gamma, g)
    v = min(p.valuation() for p in (alpha, beta, gamma) if not p.is_zero())
    content = 0
    for p in (alpha, beta, gamma):
        content = gcd(content, p.content())
    alpha, beta, gamma = (
        IntPolynomial([c // content for c in p.coeffs[v:]])
        if not p.is_zero() else p
        for p in (alpha, beta, gamma))
    if alpha.coeffs[-1] < 0:
        alpha, beta, gamma = -alpha, -beta, -gamma
    return QQuadraticEquation(alpha, beta, gamma)


def _evenized_presentation(pcf: PeriodicCF) -> tuple[tuple[int, ...],
                                                     tuple[int, ...]]:
    """Rotate/double so the preperiod and the period both have even length.

    The matrix factors alternate by slot parity, so the period must start
    at an odd slot (even preperiod) and pair up internally (even period).
    """
    pre, per = list(pcf.preperiod), list(pcf.period)
    if len(pre) % 2:
        pre.append(per[0])
        per = per[1:] + per[:1]
    if len(per) % 2:
        per = per * 2
    return tuple(pre), tuple(per)


def derive_equation(pcf: PeriodicCF) -> QQuadraticEquation:
    """Functional equation satisfied by the deformation of pcf's value."""
    pre, per = _evenized_presentation(pcf)
    (a, b), (c, d) = convergent_matrix(per)
    alpha, beta, gamma = c, d - a, -b
    if pre:
        (pa, pb), (pc, pd) = convergent_matrix(pre)
        # X = (pa*Y + pb)/(pc*Y + pd)  =>  Y = (pd*X - pb)/(pa - pc*X)
        two = IntPolynomial((2,))
        new_alpha = alpha * pd * pd - beta * pd * pc + gamma * pc * pc
        new_beta = (beta * (pa * pd + pb * pc)
                    - two * alpha * pb * pd - two * gamma * pa * pc)
        new_gamma = alpha * pb * pb - beta * pa * pb + gamma * pa * pa
        alpha, beta, gamma = new_alpha, new_beta, new_gamma
    return _normalized_triple(alpha, beta, gamma)


def unit_equivalent(e1: QQuadraticEquation, e2: QQuadraticEquation) -> bool:
    """Equality of equations up to a unit factor +-q^j (compared through the
    canonical normal form, which strips exactly such units)."""
    n1 = _normalized_triple(e1.alpha, e1.beta, e1.gamma)
    n2 = _normalized_triple(e2.alpha, e2.beta, e2.gamma)
    return n1 == n2


def verify_equation(eq: QQuadraticEquation, series: StabilizedSeries,
                    terms: int) -> bool:
    """Exact residual check of alpha*s^2 + beta*s + gamma on the certified
    window, using the first `terms` certified coefficients of s.

    With s known for degrees below W = min_degree + terms and s, alpha of
    nonnegative valuation, every residual coefficient below W is determined;
    they must all vanish.  The aggregation runs on plain integer lists.
    """
    if series.guaranteed_terms < terms:
        raise ValueError(f"series certifies {series.guaranteed_terms} terms, "
                         f"{terms} required")
    if series.min_degree < 0:
        raise ValueError("residual checks expect a series of a value >= 1")
    s = [0] * series.min_degree + list(series.certified_prefix(terms))
    window = len(s)
    square = [0] * window
    for i in range(window):
        acc = 0
        for j in range(i + 1):
            x = s[j]
            if x:
                acc += x * s[i - j]
        square[i] = acc
    residual = [0] * window
    for poly, source in ((eq.alpha, square), (eq.beta, s)):
        for d, c in enumerate(poly.coeffs):
            if c:
                for k in range(window - d):
                    residual[d + k] += c * source[k]
    for d, c in enumerate(eq.gamma.coeffs):
        if d < window:
            residual[d] += c
    return not any(residual)


@dataclass(frozen=True)
class ClosedForm:
    """Root presentation (linear_part + branch_sign*sqrt(discriminant)) /
    (2*q^denominator_exponent)."""

    linear_part: IntPolynomial          # -beta
    discriminant: IntPolynomial         # beta^2 - 4*alpha*gamma
    denominator_exponent: int           # alpha = q^m
    branch_sign: int

    def expansion(self, terms: int, require_integral: bool = True
                  ) -> TruncatedLaurentSeries:
        """Series of the root, valid through degree terms-1."""
        m = self.denominator_exponent
        order = terms + m
        root = series_sqrt(
            TruncatedLaurentSeries.from_polynomial(self.discriminant), order)
        num = TruncatedLaurentSeries.from_polynomial(self.linear_part,
                                                     order=order)
        out = (num + root.scaled(self.branch_sign)).shifted(-m)
        halves = [Fraction(c, 2) for c in
                  out.coefficients(min(out.min_degree, 0), terms)]
        if require_integral and any(h.denominator != 1 for h in halves):
            raise ValueError("root expansion is not integral")
        return TruncatedLaurentSeries(
            [int(h) if h.denominator == 1 else h for h in halves],
            min(out.min_degree, 0), terms)

    def __str__(self) -> str:
        sign = "+" if self.branch_sign > 0 else "-"
        return (f"(({self.linear_part}) {sign} sqrt({self.discriminant})) / "
                f"(2*q^{self.denominator_exponent})")


def closed_form(eq: QQuadraticEquation,
                reference: StabilizedSeries) -> ClosedForm:
    """Solve the equation and select the branch matching the stabilization.

    Needs alpha to be a plain power of q (true for every derived equation
    this package prints).  The selected branch must agree with at least 10
    certified reference coefficients; the other branch must already differ
    among the first 3, otherwise the pairing equation/series is wrong.
    """
    m = eq.alpha.degree
    if eq.alpha.coeffs != (0,) * m + (1,):
        raise ValueError(f"alpha = {eq.alpha} is not a power of q")
    delta = eq.discriminant()
    want = min(reference.guaranteed_terms, 30)
    if want < 10:
        raise ValueError("need at least 10 certified reference terms")
    agreement = {}
    for sign in (1, -1):
        cf = ClosedForm(-eq.beta, delta, m, sign)
        exp = cf.expansion(want, require_integral=False)
        agreement[sign] = _leading_agreement(exp, reference, want)
    good = [s for s, n in agreement.items() if n >= want]
    if len(good) != 1:
        raise ValueError(
            f"branch selection failed (agreement counts {agreement})")
    if agreement[-good[0]] >= 3:
        raise ValueError("both branches agree on 3+ terms; equation suspect")
    return ClosedForm(-eq.beta, delta, m, good[0])


def _leading_agreement(exp: TruncatedLaurentSeries,
                       reference: StabilizedSeries, want: int) -> int:
    """Number of leading degrees on which the two series agree as functions,
    comparing from the lower of the two starting degrees."""
    rmin = reference.min_degree
    ref = reference.certified_prefix(want)
    lo = min(exp.min_degree, rmin)
    agree = 0
    for i in range(want):
        d = lo + i
        if d >= rmin + want:
            break
        if exp.order is not None and d >= exp.order:
            break
        r = ref[d - rmin] if d >= rmin else 0
        if exp.coefficient(d) != r:
            break
        agree += 1
    return agree


# --- golden-ratio specials --------------------------------------------------

@dataclass(frozen=True)
class GoldenSpecialsReport:
    """Outcome of the signed sequence match and the five-term recurrence."""

    catalan_checked: tuple[int, int]       # inclusive k-range compared
    catalan_mismatches: tuple[int, ...]    # ks where the signed match failed
    recurrence_valid_from: int | None      # smallest k0 with no failure after
    recurrence_checked_through: int

    @property
    def ok(self) -> bool:
        return (not self.catalan_mismatches
                and self.recurrence_valid_from is not None
                and self.recurrence_valid_from <= 3)


def golden_specials(series: StabilizedSeries,
                    bfile_values: dict[int, int]) -> GoldenSpecialsReport:
    """Check the two special identities of the golden-ratio coefficients.

    Signed match: coefficient k equals (-1)^k * a(k-1) for k >= 2, a() being
    the supplied sequence values.  Recurrence: (k+1)c_k + (2k-1)c_{k-1}
    + (2-k)c_{k-2} + (2k-7)c_{k-3} + (k-5)c_{k-4} = 0 with out-of-range
    coefficients read as 0; the report carries the empirical validity range
    instead of hard-coding one.
    """
    if series.min_degree != 0 or series.guaranteed_terms < 25:
        raise ValueError("need a golden stabilization with 25+ certified terms")
    n = series.guaranteed_terms
    coeffs = series.certified_prefix(n)

    ks = [k for k in range(2, n) if (k - 1) in bfile_values]
    mismatches = tuple(k for k in ks
                       if coeffs[k] != (-1) ** k * bfile_values[k - 1])

    def c(i: int) -> int:
        return coeffs[i] if 0 <= i < n else 0

    def holds(k: int) -> bool:
        return ((k + 1) * c(k) + (2 * k - 1) * c(k - 1) + (2 - k) * c(k - 2)
                + (2 * k - 7) * c(k - 3) + (k - 5) * c(k - 4)) == 0

    top = n - 1
    valid_from: int | None = None
    for k0 in range(0, top + 1):
        if all(holds(k) for k in range(k0, top + 1)):
            valid_from = k0
            break
    return GoldenSpecialsReport(
        catalan_checked=(min(ks, default=0), max(ks, default=0)),
        catalan_mismatches=mismatches,
        recurrence_valid_from=valid_from,
        recurrence_checked_through=top)


def read_bfile(path: str | Path) -> dict[int, int]:
    """Parse 'index value' lines; '#' starts a comment.  The index column is
    taken literally, so 0- and 1-offset files both work unchanged."""
    values: dict[int, int] = {}
    for raw in Path(path).read_text(encoding="utf-8").splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 2:
            raise ValueError(f"malformed sequence line: {raw!r}")
        values[int(parts[0])] = int(parts[1])
    if not values:
        raise ValueError(f"no sequence entries in {path}")
    return values
