"""Continued-fraction types, constructors, and the bundled term streams.

Conventions: all partial quotients are >= 1, so every represented value is
>= 1.  A rational has a unique expansion of even length, except for the
value 1 itself, whose only expansion is the singleton [1]; that exception
is handled explicitly by the q-deformation layer.  Odd-length term lists
are evenized preserving the value: a trailing term a >= 2 splits into
(a-1, 1), a trailing 1 merges into its predecessor.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from math import isqrt
from pathlib import Path
from typing import Callable, Iterable, Iterator, Union


def _validate_terms(terms: tuple[int, ...], what: str) -> None:
    for a in terms:
        if not isinstance(a, int) or a < 1:
            raise ValueError(f"{what} must be integers >= 1, got {a!r}")


@dataclass(frozen=True)
class FiniteCF:
    """A finite continued fraction [a_1, ..., a_n], value >= 1."""

    terms: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "terms", tuple(self.terms))
        if not self.terms:
            raise ValueError("FiniteCF needs at least one term")
        _validate_terms(self.terms, "partial quotients")

    def __len__(self) -> int:
        return len(self.terms)

    def __iter__(self) -> Iterator[int]:
        return iter(self.terms)

    def value(self) -> Fraction:
        return rational_of_cf(self.terms)

    def evenized(self) -> FiniteCF:
        """Value-preserving even-length form (the canonical expansion)."""
        t = list(self.terms)
        if len(t) % 2:
            if t[-1] >= 2:
                t[-1] -= 1
                t.append(1)
            elif len(t) >= 2:
                t[-2] += 1
                t.pop()
            else:
                raise ValueError("the value 1 has no even-length expansion")
        return FiniteCF(tuple(t))

    def stream(self) -> CFStream:
        terms = self.terms
        return CFStream(lambda: iter(terms), truncated=False,
                        description=f"[{','.join(map(str, terms))}]")

    def __str__(self) -> str:
        return ",".join(map(str, self.terms))


@dataclass(frozen=True)
class PeriodicCF:
    """An eventually periodic continued fraction (a quadratic surd >= 1)."""

    preperiod: tuple[int, ...]
    period: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "preperiod", tuple(self.preperiod))
        object.__setattr__(self, "period", tuple(self.period))
        if not self.period:
            raise ValueError("PeriodicCF needs a nonempty period")
        _validate_terms(self.preperiod, "preperiod terms")
        _validate_terms(self.period, "period terms")

    def stream(self) -> CFStream:
        pre, per = self.preperiod, self.period

        def gen() -> Iterator[int]:
            yield from pre
            while True:
                yield from per

        return CFStream(gen, truncated=False, description=str(self))

    def __str__(self) -> str:
        return (",".join(map(str, self.preperiod)) + ";"
                + ",".join(map(str, self.period)))


@dataclass(frozen=True)
class CFStream:
    """A replayable source of partial quotients.

    `truncated=True` marks a finite prefix of a longer expansion (the bundled
    pi terms, for instance): exhausting it does NOT mean the value is the
    rational spelled by the consumed terms.
    """

    factory: Callable[[], Iterator[int]]
    truncated: bool = False
    description: str = ""

    def __iter__(self) -> Iterator[int]:
        return self.factory()

    def take(self, n: int) -> list[int]:
        out = list(itertools.islice(self.factory(), n))
        if len(out) < n:
            raise ValueError(
                f"stream {self.description or '?'} exhausted after "
                f"{len(out)} terms, {n} requested")
        return out


CFSource = Union[FiniteCF, PeriodicCF, CFStream]


def as_stream(source: CFSource | Iterable[int]) -> CFStream:
    if isinstance(source, CFStream):
        return source
    if isinstance(source, (FiniteCF, PeriodicCF)):
        return source.stream()
    terms = tuple(source)
    return CFStream(lambda: iter(terms), truncated=False)


def cf_of_rational(r: int, s: int) -> FiniteCF:
    """Canonical expansion of r/s >= 1: even length, except value 1 -> [1]."""
    if s == 0:
        raise ZeroDivisionError("zero denominator")
    if s < 0:
        r, s = -r, -s
    if r < s:
        raise ValueError(f"{r}/{s} < 1: shift into [1, inf) first")
    terms = []
    while s:
        terms.append(r // s)
        r, s = s, r % s
    cf = FiniteCF(tuple(terms))
    if cf.terms == (1,):
        return cf
    return cf.evenized()


def rational_of_cf(terms: Iterable[int]) -> Fraction:
    """Exact value of a term list (all terms >= 1), in lowest terms."""
    ts = list(terms)
    if not ts:
        raise ValueError("empty continued fraction")
    _validate_terms(tuple(ts), "partial quotients")
    num, den = 1, 0
    for a in reversed(ts):
        num, den = a * num + den, num
    return Fraction(num, den)


def convergents(terms: Iterable[int]) -> Iterator[tuple[int, int]]:
    """Successive (numerator, denominator) pairs of the prefix values."""
    r0, s0, r1, s1 = 1, 0, 0, 1
    for a in terms:
        r0, r1 = a * r0 + r1, r0
        s0, s1 = a * s0 + s1, s0
        yield r0, s0


def cf_of_sqrt(d: int) -> PeriodicCF:
    """Periodic expansion of sqrt(d) via the integer (P, Q) surd recurrence."""
    if d < 2:
        raise ValueError("need d >= 2")
    a0 = isqrt(d)
    if a0 * a0 == d:
        raise ValueError(f"{d} is a perfect square")
    period = []
    p, q = a0, d - a0 * a0
    seen = {}
    while (p, q) not in seen:
        seen[(p, q)] = len(period)
        a = (p + a0) // q
        period.append(a)
        p = a * q - p
        q = (d - p * p) // q
    start = seen[(p, q)]
    assert start == 0, "surd recurrence must be purely periodic after a0"
    return PeriodicCF((a0,), tuple(period))


def cf_stream_e() -> CFStream:
    """Terms 2, 1, 2, 1, 1, 4, 1, 1, 6, ...: after the leading 2, blocks
    (1, 2k, 1) for k = 1, 2, 3, ..."""

    def gen() -> Iterator[int]:
        yield 2
        for k in itertools.count(1):
            yield 1
            yield 2 * k
            yield 1

    return CFStream(gen, truncated=False, description="e")


def cf_stream_phi() -> CFStream:
    return CFStream(lambda: itertools.repeat(1), truncated=False,
                    description="phi")


def cf_stream_silver() -> CFStream:
    return CFStream(lambda: itertools.repeat(2), truncated=False,
                    description="silver")


def _bundled(name: str) -> Path:
    return Path(str(resources.files("qreals").joinpath("data", name)))


def pi_partial_quotients(path: str | Path | None = None) -> list[int]:
    """Bundled partial quotients of pi; '#' starts a comment line."""
    p = Path(path) if path is not None else _bundled("pi.cf")
    terms = []
    for line in p.read_text(encoding="utf-8").splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        terms.append(int(line))
    _validate_terms(tuple(terms), "pi partial quotients")
    return terms


def cf_stream_pi(path: str | Path | None = None) -> CFStream:
    terms = tuple(pi_partial_quotients(path))
    return CFStream(lambda: iter(terms), truncated=True, description="pi")


def cf_prefix(stream: CFSource | Iterable[int], n: int) -> FiniteCF:
    """First n raw terms of a stream, evenized for q-evaluation."""
    if n < 1:
        raise ValueError("need n >= 1")
    st = as_stream(stream)
    cf = FiniteCF(tuple(st.take(n)))
    return cf if len(cf) % 2 == 0 else cf.evenized()


def named_source(name: str, pi_path: str | Path | None = None) -> CFSource:
    """Resolve a constant name: phi, e, pi, silver, or sqrt:D."""
    if name == "phi":
        return PeriodicCF((), (1,))
    if name == "silver":
        return PeriodicCF((), (2,))
    if name == "e":
        return cf_stream_e()
    if name == "pi":
        return cf_stream_pi(pi_path)
    if name.startswith("sqrt:"):
        return cf_of_sqrt(int(name.split(":", 1)[1]))
    raise ValueError(f"unknown constant {name!r}")


def parse_source(text: str, pi_path: str | Path | None = None) -> CFSource:
    """CLI syntax: finite "1,2,1,1", periodic "1;2" (preperiod;period),
    names phi/e/pi/silver, or sqrt:D."""
    text = text.strip()
    if ";" in text:
        pre_s, per_s = text.split(";", 1)
        pre = tuple(int(x) for x in pre_s.split(",") if x.strip() != "")
        per = tuple(int(x) for x in per_s.split(",") if x.strip() != "")
        return PeriodicCF(pre, per)
    if "," in text or text.isdigit():
        return FiniteCF(tuple(int(x) for x in text.split(",")))
    return named_source(text, pi_path)
