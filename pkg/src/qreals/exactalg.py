"""Exact polynomial and truncated Laurent-series arithmetic.

Everything here is computed exactly: scalars are Python ints (arbitrary
precision) or fractions.Fraction, polynomials are dense integer coefficient
tuples in ascending degree, and series are windows of exact coefficients.

A TruncatedLaurentSeries knows every coefficient of degree d < order and
stores the nonzero ones starting at min_degree (absent entries are zero).
order=None means the value is exact, i.e. a Laurent polynomial.  Arithmetic
propagates the window, so a result never claims accuracy beyond what its
inputs support; an operation that cannot certify even the leading
coefficient of its result raises PrecisionError.

Multiplication is schoolbook convolution: coefficient growth dominates at
the scale this package works at (a few hundred terms), so there is nothing
to gain from an asymptotically fast kernel.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Iterable, Union

Scalar = Union[int, Fraction]


class PrecisionError(ArithmeticError):
    """An operation cannot produce any certified coefficient."""


def as_exact(x: Scalar) -> Scalar:
    """Normalize a scalar: Fractions with denominator 1 collapse to int."""
    if type(x) is int:
        return x
    if isinstance(x, Fraction):
        return int(x) if x.denominator == 1 else x
    if isinstance(x, int):
        return x
    raise TypeError(f"expected int or Fraction, got {type(x).__name__}")


class IntPolynomial:
    """Dense polynomial over arbitrary-precision integers, ascending degree.

    The zero polynomial has an empty coefficient tuple and degree -1.
    Instances are immutable and hashable.
    """

    __slots__ = ("_coeffs",)

    def __init__(self, coeffs: Iterable[int] = ()):
        cs = list(coeffs)
        for c in cs:
            if not isinstance(c, int):
                raise TypeError("IntPolynomial requires integer coefficients")
        while cs and cs[-1] == 0:
            cs.pop()
        self._coeffs: tuple[int, ...] = tuple(cs)

    @classmethod
    def _make(cls, cs: list[int]) -> IntPolynomial:
        # internal: trusted integer list, trimmed here, no validation
        while cs and cs[-1] == 0:
            cs.pop()
        p = object.__new__(cls)
        p._coeffs = tuple(cs)
        return p

    @classmethod
    def zero(cls) -> IntPolynomial:
        return cls()

    @classmethod
    def one(cls) -> IntPolynomial:
        return cls((1,))

    @classmethod
    def monomial(cls, degree: int, coeff: int = 1) -> IntPolynomial:
        if degree < 0:
            raise ValueError("monomial degree must be >= 0")
        return cls((0,) * degree + (coeff,))

    @property
    def coeffs(self) -> tuple[int, ...]:
        return self._coeffs

    @property
    def degree(self) -> int:
        """Index of the last nonzero coefficient; -1 for the zero polynomial."""
        return len(self._coeffs) - 1

    def is_zero(self) -> bool:
        return not self._coeffs

    def valuation(self) -> int | None:
        """Lowest degree with a nonzero coefficient, None for zero."""
        for i, c in enumerate(self._coeffs):
            if c:
                return i
        return None

    def coefficient(self, degree: int) -> int:
        if 0 <= degree < len(self._coeffs):
            return self._coeffs[degree]
        return 0

    def shifted(self, k: int) -> IntPolynomial:
        """Multiply by q**k (k >= 0)."""
        if k < 0:
            raise ValueError("use q_power_divided for negative shifts")
        if self.is_zero() or k == 0:
            return self
        return IntPolynomial._make([0] * k + list(self._coeffs))

    def q_power_divided(self, k: int) -> IntPolynomial:
        """Exact division by q**k; raises if some removed coefficient is nonzero."""
        if k == 0 or self.is_zero():
            return self
        if any(self._coeffs[:k]):
            raise ValueError(f"not divisible by q^{k}: {self!r}")
        return IntPolynomial._make(list(self._coeffs[k:]))

    def content(self) -> int:
        """Nonnegative gcd of all coefficients (0 for the zero polynomial)."""
        g = 0
        for c in self._coeffs:
            g = gcd(g, c)
        return g

    def __bool__(self) -> bool:
        return bool(self._coeffs)

    def __neg__(self) -> IntPolynomial:
        return IntPolynomial._make([-c for c in self._coeffs])

    def __add__(self, other: IntPolynomial) -> IntPolynomial:
        a, b = self._coeffs, other._coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return IntPolynomial._make(out)

    def __sub__(self, other: IntPolynomial) -> IntPolynomial:
        a, b = self._coeffs, other._coeffs
        out = list(a) + [0] * (len(b) - len(a))
        for i, c in enumerate(b):
            out[i] -= c
        return IntPolynomial._make(out)

    def __mul__(self, other: IntPolynomial) -> IntPolynomial:
        a, b = self._coeffs, other._coeffs
        if not a or not b:
            return IntPolynomial()
        out = [0] * (len(a) + len(b) - 1)
        if len(b) < len(a):
            a, b = b, a
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return IntPolynomial._make(out)

    def __call__(self, x: Scalar) -> Scalar:
        acc: Scalar = 0
        for c in reversed(self._coeffs):
            acc = acc * x + c
        return as_exact(acc)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, IntPolynomial) and self._coeffs == other._coeffs

    def __hash__(self) -> int:
        return hash(("IntPolynomial", self._coeffs))

    def __repr__(self) -> str:
        return f"IntPolynomial({list(self._coeffs)!r})"

    def __str__(self) -> str:
        return format_terms(enumerate(self._coeffs)) or "0"


def format_terms(terms: Iterable[tuple[int, Scalar]]) -> str:
    """Human-readable 'c0 + c1*q + ...' for (degree, coefficient) pairs."""
    parts: list[str] = []
    for d, c in terms:
        if not c:
            continue
        sign = "-" if c < 0 else "+"
        mag = -c if c < 0 else c
        if d == 0:
            body = str(mag)
        else:
            var = "q" if d == 1 else f"q^{d}"
            body = var if mag == 1 else f"{mag}*{var}"
        if not parts:
            parts.append(body if sign == "+" else f"-{body}")
        else:
            parts.append(f"{sign} {body}")
    return " ".join(parts)


def _primitive(p: list[int]) -> list[int]:
    while p and p[-1] == 0:
        p.pop()
    g = 0
    for c in p:
        g = gcd(g, c)
    if g > 1:
        p = [c // g for c in p]
    if p and p[-1] < 0:
        p = [-c for c in p]
    return p


def poly_gcd(a: IntPolynomial, b: IntPolynomial) -> IntPolynomial:
    """Primitive gcd with positive leading coefficient, via the primitive
    pseudo-remainder sequence (all-integer Euclid)."""
    fa = _primitive(list(a.coeffs))
    fb = _primitive(list(b.coeffs))
    while fb:
        # pseudo-remainder of fa modulo fb
        r = list(fa)
        lead = fb[-1]
        while True:
            while r and r[-1] == 0:
                r.pop()
            if len(r) < len(fb):
                break
            c = r[-1]
            sh = len(r) - len(fb)
            for i in range(len(r)):
                r[i] *= lead
            for i, bc in enumerate(fb):
                r[sh + i] -= c * bc
        fa, fb = fb, _primitive(r)
    return IntPolynomial._make(fa)


def poly_exact_div(a: IntPolynomial, b: IntPolynomial) -> IntPolynomial:
    """Quotient a/b, raising ValueError unless b divides a exactly over Z."""
    if b.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    if a.is_zero():
        return a
    r = list(a.coeffs)
    q = [0] * (len(r) - len(b.coeffs) + 1)
    bc = b.coeffs
    while True:
        while r and r[-1] == 0:
            r.pop()
        if len(r) < len(bc):
            break
        if r[-1] % bc[-1]:
            raise ValueError("inexact polynomial division")
        coef = r[-1] // bc[-1]
        sh = len(r) - len(bc)
        q[sh] = coef
        for i, c in enumerate(bc):
            r[sh + i] -= coef * c
    if any(r):
        raise ValueError("inexact polynomial division")
    return IntPolynomial(q)


_INF = object()  # sentinel for an unbounded validity window


def _order_min(*orders: int | None) -> int | None:
    finite = [o for o in orders if o is not None]
    return min(finite) if finite else None


class TruncatedLaurentSeries:
    """Finitely many exact coefficients, valid for all degrees below `order`.

    `coeffs[i]` is the coefficient of q**(min_degree + i); degrees not covered
    by the tuple (including every degree below min_degree) are zero.  With
    order=None the object is an exact Laurent polynomial.
    """

    __slots__ = ("_min_degree", "_coeffs", "_order")

    def __init__(self, coeffs: Iterable[Scalar] = (), min_degree: int = 0,
                 order: int | None = None):
        cs = [as_exact(c) for c in coeffs]
        while cs and cs[0] == 0:
            cs.pop(0)
            min_degree += 1
        while cs and cs[-1] == 0:
            cs.pop()
        if not cs:
            min_degree = 0
        elif order is not None and min_degree + len(cs) > order:
            raise ValueError("coefficients extend past the validity window")
        self._min_degree = min_degree
        self._coeffs: tuple[Scalar, ...] = tuple(cs)
        self._order = order

    @classmethod
    def zero(cls, order: int | None = None) -> TruncatedLaurentSeries:
        return cls((), 0, order)

    @classmethod
    def constant(cls, c: Scalar, order: int | None = None) -> TruncatedLaurentSeries:
        return cls((c,), 0, order)

    @classmethod
    def from_polynomial(cls, p: IntPolynomial, order: int | None = None,
                        shift: int = 0) -> TruncatedLaurentSeries:
        """The exact polynomial p * q**shift, optionally window-limited."""
        return cls(p.coeffs, shift, order)

    @property
    def min_degree(self) -> int:
        return self._min_degree

    @property
    def order(self) -> int | None:
        return self._order

    @property
    def coeffs(self) -> tuple[Scalar, ...]:
        return self._coeffs

    def is_zero_on_window(self) -> bool:
        return not self._coeffs

    def _val_lb(self):
        """Lower bound on the valuation: exact for nonzero, window bound for
        zero-on-window, _INF for the exact zero."""
        if self._coeffs:
            return self._min_degree
        return self._order if self._order is not None else _INF

    def coefficient(self, degree: int) -> Scalar:
        if self._order is not None and degree >= self._order:
            raise PrecisionError(
                f"coefficient of q^{degree} requested, window ends at {self._order}")
        i = degree - self._min_degree
        if 0 <= i < len(self._coeffs):
            return self._coeffs[i]
        return 0

    def coefficients(self, start: int, stop: int) -> list[Scalar]:
        """Coefficients for degrees start..stop-1 (window-checked)."""
        return [self.coefficient(d) for d in range(start, stop)]

    def prefix(self, n: int) -> tuple[Scalar, ...]:
        """The first n coefficients starting at min_degree."""
        return tuple(self.coefficients(self._min_degree, self._min_degree + n))

    def integer_prefix(self, n: int) -> tuple[int, ...]:
        out = self.prefix(n)
        for c in out:
            if not isinstance(c, int):
                raise ValueError(f"non-integer coefficient {c} in window")
        return out  # type: ignore[return-value]

    def shifted(self, k: int) -> TruncatedLaurentSeries:
        """Multiply by q**k (k may be negative)."""
        order = None if self._order is None else self._order + k
        return TruncatedLaurentSeries(self._coeffs, self._min_degree + k, order)

    def truncated(self, order: int) -> TruncatedLaurentSeries:
        """Narrow the validity window to degrees < order."""
        if self._order is not None and order > self._order:
            raise PrecisionError(
                f"cannot widen window from {self._order} to {order}")
        keep = [c for i, c in enumerate(self._coeffs)
                if self._min_degree + i < order]
        return TruncatedLaurentSeries(keep, self._min_degree, order)

    def scaled(self, c: Scalar) -> TruncatedLaurentSeries:
        if c == 0:
            return TruncatedLaurentSeries.zero(self._order)
        return TruncatedLaurentSeries(
            tuple(x * c for x in self._coeffs), self._min_degree, self._order)

    def __neg__(self) -> TruncatedLaurentSeries:
        return self.scaled(-1)

    def _combine(self, other: TruncatedLaurentSeries,
                 sign: int) -> TruncatedLaurentSeries:
        order = _order_min(self._order, other._order)
        lbs = [lb for lb in (self._val_lb(), other._val_lb()) if lb is not _INF]
        if order is not None and lbs and order <= min(lbs):
            raise PrecisionError("empty result window in add/sub")
        if not lbs:
            return TruncatedLaurentSeries.zero(order)
        lo = min(lbs)
        hi_parts = [s._min_degree + len(s._coeffs)
                    for s in (self, other) if s._coeffs]
        hi = max(hi_parts) if hi_parts else lo
        if order is not None:
            hi = min(hi, order)
        out = []
        for d in range(lo, hi):
            a = self._coeffs[d - self._min_degree] \
                if 0 <= d - self._min_degree < len(self._coeffs) else 0
            b = other._coeffs[d - other._min_degree] \
                if 0 <= d - other._min_degree < len(other._coeffs) else 0
            out.append(a + sign * b)
        return TruncatedLaurentSeries(out, lo, order)

    def __add__(self, other: TruncatedLaurentSeries) -> TruncatedLaurentSeries:
        return self._combine(other, 1)

    def __sub__(self, other: TruncatedLaurentSeries) -> TruncatedLaurentSeries:
        return self._combine(other, -1)

    def __mul__(self, other: TruncatedLaurentSeries) -> TruncatedLaurentSeries:
        la, lb = self._val_lb(), other._val_lb()
        if la is _INF or lb is _INF:
            # exact zero absorbs everything
            return TruncatedLaurentSeries.zero()
        cands = []
        if self._order is not None:
            cands.append(self._order + lb)
        if other._order is not None:
            cands.append(other._order + la)
        order = min(cands) if cands else None
        if order is not None and order <= la + lb:
            raise PrecisionError("empty result window in mul")
        if not self._coeffs or not other._coeffs:
            return TruncatedLaurentSeries.zero(order)
        a, b = self._coeffs, other._coeffs
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        out[i + j] += x * y
        lo = self._min_degree + other._min_degree
        if order is not None:
            out = out[: max(0, order - lo)]
        return TruncatedLaurentSeries(out, lo, order)

    def __eq__(self, other: object) -> bool:
        return (isinstance(other, TruncatedLaurentSeries)
                and self._min_degree == other._min_degree
                and self._coeffs == other._coeffs
                and self._order == other._order)

    def __hash__(self) -> int:
        return hash(("TLS", self._min_degree, self._coeffs, self._order))

    def __repr__(self) -> str:
        return (f"TruncatedLaurentSeries({list(self._coeffs)!r}, "
                f"min_degree={self._min_degree}, order={self._order})")

    def __str__(self) -> str:
        body = format_terms(
            (self._min_degree + i, c) for i, c in enumerate(self._coeffs))
        if self._order is None:
            return body or "0"
        return (body or "0") + f" + O(q^{self._order})"


def series_arith(a: TruncatedLaurentSeries, b: TruncatedLaurentSeries,
                 op: str) -> TruncatedLaurentSeries:
    """Window-tracked add/sub/mul dispatch."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown op {op!r}")


def series_div(num: IntPolynomial, den: IntPolynomial,
               order: int) -> TruncatedLaurentSeries:
    """Expansion of num/den at q=0, valid for all degrees below `order`.

    The result starts at valuation(num) - valuation(den), which may be
    negative.  When den(0) = +-1 the computation stays in integers; the
    expansion of a q-deformed rational therefore has integer coefficients
    by construction.
    """
    if den.is_zero():
        raise ZeroDivisionError("series_div by the zero polynomial")
    v = den.valuation()
    assert v is not None
    d = den.coeffs[v:]
    nv = num.valuation()
    if nv is None:
        return TruncatedLaurentSeries.zero(order)
    m0 = nv - v
    n_terms = order - m0
    if n_terms <= 0:
        raise PrecisionError("empty result window in series_div")
    u = num.coeffs[nv:]
    d0 = d[0]
    int_path = d0 in (1, -1)
    out: list[Scalar] = []
    for k in range(n_terms):
        acc: Scalar = u[k] if k < len(u) else 0
        for j in range(1, min(k, len(d) - 1) + 1):
            cj = d[j]
            if cj:
                acc -= cj * out[k - j]
        if int_path:
            out.append(acc if d0 == 1 else -acc)
        else:
            out.append(as_exact(Fraction(acc, d0)))
    return TruncatedLaurentSeries(out, m0, order)


def series_sqrt(s: TruncatedLaurentSeries, order: int) -> TruncatedLaurentSeries:
    """Square root of a series whose leading term is an even power of q with
    coefficient 1.  Coefficients are exact rationals; result**2 == s on the
    returned window.
    """
    lb = s._val_lb()
    if lb is _INF or s.is_zero_on_window():
        raise PrecisionError("series_sqrt needs a known leading coefficient")
    if lb % 2:
        raise ValueError("series_sqrt requires an even leading degree")
    if s.coeffs[0] != 1:
        raise ValueError("series_sqrt requires leading coefficient 1 "
                         "(factor q-powers and sign first)")
    t = lb // 2
    u_window = None if s.order is None else s.order - lb
    n_rel = order - t
    if u_window is not None:
        n_rel = min(n_rel, u_window)
    if n_rel <= 0:
        raise PrecisionError("empty result window in series_sqrt")
    u = s.coeffs
    r: list[Scalar] = [1]
    for k in range(1, n_rel):
        acc = Fraction(u[k]) if k < len(u) else Fraction(0)
        for j in range(1, k):
            acc -= Fraction(r[j]) * Fraction(r[k - j])
        r.append(as_exact(acc / 2))
    return TruncatedLaurentSeries(r, t, t + n_rel)
