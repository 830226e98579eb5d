"""Command-line surface: deformations with machine-readable output plus
regression suites over the bundled reference data.

Subcommands: qrat (rationals), qreal (reals from continued-fraction data),
quadratic (functional equations of periodic expansions), verify (named
check suites), compare (signed match against a local OEIS-style b-file).
Coefficients are serialized as decimal strings; several of them pass 64
bits well before the windows this tool prints.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from pathlib import Path

from .contfrac import FiniteCF, PeriodicCF, cf_of_rational, named_source, \
    parse_source
from .exactalg import IntPolynomial
from .qcalc import (FareyTriangle, QRational, det_identity, farey_walk,
                    farey_neighbor_relations, q_rational, validate_canonical)
from .qreal import (StabilizedSeries, gap_check, q_real, q_real_rational,
                    real_spec, stabilize, translate_down, translate_up)
from .quadratic import (QQuadraticEquation, closed_form, derive_equation,
                        read_bfile, unit_equivalent, verify_equation)

PI_CF_ENV = "QREAL_PI_CF"


def _pi_path() -> str | None:
    return os.environ.get(PI_CF_ENV)


def bundled_path(name: str) -> Path:
    return Path(str(resources.files("qreals").joinpath("data", name)))


def load_fixture(name: str) -> tuple[int, list[int]]:
    """(min_degree, coefficients) of a bundled reference expansion."""
    path = Path(str(resources.files("qreals").joinpath("fixtures",
                                                       f"{name}.txt")))
    pairs = []
    for raw in path.read_text(encoding="utf-8").splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        d, c = line.split()
        pairs.append((int(d), int(c)))
    pairs.sort()
    lo = pairs[0][0]
    if [d for d, _ in pairs] != list(range(lo, lo + len(pairs))):
        raise ValueError(f"fixture {name} has degree gaps")
    return lo, [c for _, c in pairs]


# --- output records ---------------------------------------------------------

@dataclass
class OutputRecord:
    input_spec: str
    min_degree: int
    coefficients: list[str]
    guaranteed_terms: int
    metadata: dict[str, str] = field(default_factory=dict)

    def to_json(self) -> str:
        payload = {
            "input_spec": self.input_spec,
            "min_degree": self.min_degree,
            "coefficients": self.coefficients,
            "guaranteed_terms": self.guaranteed_terms,
            "metadata": self.metadata,
        }
        return json.dumps(payload, indent=2, sort_keys=True)

    def to_csv(self) -> str:
        lines = ["degree,coefficient"]
        for i, c in enumerate(self.coefficients):
            lines.append(f"{self.min_degree + i},{c}")
        return "\n".join(lines)

    def to_text(self) -> str:
        lines = [f"input: {self.input_spec}"]
        for key in sorted(self.metadata):
            lines.append(f"{key}: {self.metadata[key]}")
        lines.append(f"guaranteed terms: {self.guaranteed_terms}")
        degs = [str(self.min_degree + i) for i in range(len(self.coefficients))]
        wd = max((len(d) for d in degs), default=1)
        wc = max((len(c) for c in self.coefficients), default=1)
        lines.append(f"{'deg'.rjust(wd)}  coefficient")
        for d, c in zip(degs, self.coefficients):
            lines.append(f"{d.rjust(wd)}  {c.rjust(wc)}")
        return "\n".join(lines)

    def render(self, fmt: str) -> str:
        if fmt == "json":
            return self.to_json()
        if fmt == "csv":
            return self.to_csv()
        return self.to_text()


def _record_from_series(spec_text: str, series: StabilizedSeries, terms: int,
                        metadata: dict[str, str],
                        allow_partial: bool = False) -> OutputRecord:
    n = min(terms, len(series.coeffs)) if allow_partial else terms
    coeffs = series.coeffs[:n]
    return OutputRecord(
        input_spec=spec_text,
        min_degree=series.min_degree if coeffs else 0,
        coefficients=[str(c) for c in coeffs],
        guaranteed_terms=min(series.guaranteed_terms, n),
        metadata=metadata,
    )


# --- qrat --------------------------------------------------------------------

def _parse_fraction(text: str) -> Fraction:
    try:
        if "/" in text:
            num, den = text.split("/", 1)
            return Fraction(int(num), int(den))
        return Fraction(int(text), 1)
    except (ValueError, ZeroDivisionError) as exc:
        raise SystemExit(f"error: malformed fraction {text!r}: {exc}")


def cmd_qrat(args: argparse.Namespace) -> int:
    value = _parse_fraction(args.fraction)
    if value < 0:
        raise SystemExit("error: qrat handles fractions >= 0; negative "
                         "rationals are reached through the library's "
                         "translation API")
    terms = args.terms
    k = 0
    while value + k < 1:
        k += 1
    base = q_rational((value + k).numerator, (value + k).denominator,
                      method=args.method)
    qr = translate_down(base, k)
    assert isinstance(qr, QRational)
    if qr.num.is_zero():
        lead, coeffs = 0, [0] * terms
    else:
        lead = (qr.num.valuation() or 0) - (qr.den.valuation() or 0)
        coeffs = list(qr.taylor(lead + terms).coefficients(lead, lead + terms))
    record = OutputRecord(
        input_spec=args.fraction,
        min_degree=lead,
        coefficients=[str(c) for c in coeffs],
        guaranteed_terms=terms,
        metadata={
            "construction": args.method,
            "numerator": str(qr.num),
            "denominator": str(qr.den),
            "translation": str(-k),
        },
    )
    print(record.render(args.format))
    return 0


# --- qreal -------------------------------------------------------------------

def cmd_qreal(args: argparse.Namespace) -> int:
    text = args.spec
    negate = text.startswith("-")
    source_text = text[1:] if negate else text
    try:
        source = parse_source(source_text, _pi_path())
    except (ValueError, FileNotFoundError) as exc:
        raise SystemExit(f"error: cannot parse spec {text!r}: {exc}")
    terms = args.terms

    if isinstance(source, FiniteCF):
        value = source.value() * (-1 if negate else 1) + args.shift
        qr, series = q_real_rational(value.numerator, value.denominator, terms)
        metadata = {
            "construction": "rational translation",
            "numerator": str(qr.num),
            "denominator": str(qr.den),
            "value": str(value),
        }
        record = _record_from_series(text, series, terms, metadata)
        print(record.render(args.format))
        return 0

    spec = real_spec(source, negate=negate, shift=args.shift, label=text)
    series = q_real(spec, terms)
    if series.guaranteed_terms < terms and not args.unsafe:
        raise SystemExit(
            f"error: only {series.guaranteed_terms} coefficients are "
            f"certified by the available partial quotients, {terms} were "
            f"requested; extend the term stream or pass --unsafe")
    metadata = {
        "construction": "stabilized convergents",
        "source": series.source,
        "shift": str(args.shift),
    }
    record = _record_from_series(text, series, terms, metadata,
                                 allow_partial=args.unsafe)
    print(record.render(args.format))
    return 0


# --- quadratic ---------------------------------------------------------------

def _parse_periodic(text: str) -> PeriodicCF:
    src = parse_source(text, _pi_path())
    if isinstance(src, PeriodicCF):
        return src
    raise SystemExit(f"error: {text!r} does not describe an eventually "
                     "periodic expansion")


def cmd_quadratic(args: argparse.Namespace) -> int:
    pcf = _parse_periodic(args.spec)
    eq = derive_equation(pcf)
    payload: dict[str, object] = {
        "input_spec": args.spec,
        "alpha": str(eq.alpha),
        "beta": str(eq.beta),
        "gamma": str(eq.gamma),
        "equation": str(eq),
    }
    ok = True
    need = max(args.verify or 0, 30 if args.closed_form else 0)
    series = stabilize(pcf.stream(), need) if need else None
    if args.closed_form:
        cf = closed_form(eq, series)
        payload["discriminant"] = str(cf.discriminant)
        payload["denominator"] = f"2*q^{cf.denominator_exponent}"
        payload["branch"] = "+" if cf.branch_sign > 0 else "-"
    if args.verify:
        ok = verify_equation(eq, series, args.verify)
        payload["residual_vanishes_through"] = str(args.verify - 1)
        payload["verified"] = ok
    if args.format == "json":
        print(json.dumps(payload, indent=2, sort_keys=True, default=str))
    else:
        for key, val in payload.items():
            print(f"{key}: {val}")
    return 0 if ok else 1


# --- verification suites ------------------------------------------------------

@dataclass
class Check:
    name: str
    passed: bool
    detail: str = ""


def _stream_table() -> dict[str, object]:
    return {
        "phi": named_source("phi"),
        "silver": named_source("silver"),
        "sqrt2": named_source("sqrt:2"),
        "sqrt3": named_source("sqrt:3"),
        "sqrt5": named_source("sqrt:5"),
        "sqrt7": named_source("sqrt:7"),
        "e": named_source("e"),
        "pi": named_source("pi", _pi_path()),
    }


# The printed functional equations and closed forms for the six quadratic
# constants: (source, alpha, beta, gamma, discriminant, denominator exponent).
REFERENCE_QUADRATICS: dict[str, dict[str, object]] = {
    "phi": {
        "pcf": PeriodicCF((), (1,)),
        "alpha": [0, 1], "beta": [1, -1, -1], "gamma": [-1],
        "delta": [1, 2, -1, 2, 1], "denominator_exponent": 1,
    },
    "silver": {
        "pcf": PeriodicCF((), (2,)),
        "alpha": [0, 1], "beta": [1, -2, 0, -1], "gamma": [-1],
        "delta": [1, 0, 4, -2, 4, 0, 1], "denominator_exponent": 1,
    },
    "sqrt2": {
        "pcf": PeriodicCF((1,), (2,)),
        "alpha": [0, 0, 1], "beta": [1, 0, 0, -1], "gamma": [-1, 0, -1],
        "delta": [1, 0, 4, -2, 4, 0, 1], "denominator_exponent": 2,
    },
    "sqrt3": {
        "pcf": PeriodicCF((1,), (1, 2)),
        "alpha": [0, 0, 1], "beta": [1, 1, -1, -1], "gamma": [-1, -1, -1],
        "delta": [1, 2, 3, 0, 3, 2, 1], "denominator_exponent": 2,
    },
    "sqrt5": {
        "pcf": PeriodicCF((2,), (4,)),
        "alpha": [0, 0, 0, 1], "beta": [1, 0, 1, -1, 0, -1],
        "gamma": [-1, -1, -1, -1, -1],
        "delta": [1, 0, 2, 2, 5, 0, 5, 2, 2, 0, 1],
        "denominator_exponent": 3,
    },
    "sqrt7": {
        "pcf": PeriodicCF((2,), (1, 1, 1, 4)),
        "alpha": [0, 0, 0, 1], "beta": [1, 1, 0, 0, -1, -1],
        "gamma": [-1, -2, -1, -2, -1],
        "delta": [1, 2, 1, 4, 6, 0, 6, 4, 1, 2, 1],
        "denominator_exponent": 3,
    },
}

# Integer bracket k with k <= x <= k+1 for the bundled constants.
GAP_BRACKETS = {"phi": 1, "sqrt2": 1, "sqrt3": 1, "sqrt5": 2, "sqrt7": 2,
                "e": 2, "pi": 3}


def reduced_fractions(max_total: int):
    """All reduced r/s >= 1 with r + s <= max_total."""
    from math import gcd
    for s in range(1, max_total):
        for r in range(s, max_total - s + 1):
            if gcd(r, s) == 1:
                yield r, s


def suite_farey() -> list[Check]:
    checks = []
    count = 0
    for r, s in reduced_fractions(60):
        by_matrix = q_rational(r, s, "matrix")
        by_cf = q_rational(r, s, "cf")
        by_farey = q_rational(r, s, "farey")
        if not (by_matrix == by_cf == by_farey):
            checks.append(Check("three-way construction equality", False,
                                f"first counterexample at {r}/{s}"))
            return checks
        if r != s:
            validate_canonical(by_matrix, cf_of_rational(r, s))
        if by_matrix.value() != Fraction(r, s):
            checks.append(Check("evaluation at q=1", False, f"{r}/{s}"))
            return checks
        count += 1
    checks.append(Check("three-way construction equality", True,
                        f"{count} fractions with r+s <= 60"))
    checks.append(Check("positivity, extreme coefficients, degree formulas",
                        True, "validated on the same set"))
    return checks


def _random_farey_triangles(depth: int, samples: int,
                            seed: int = 20240) -> list[FareyTriangle]:
    """Triangles reached by random left/right mediant paths of bounded depth."""
    rng = random.Random(seed)
    out = []
    for _ in range(samples):
        lo, hi = (1, 1), (1, 0)
        for _ in range(rng.randint(1, depth)):
            med = (lo[0] + hi[0], lo[1] + hi[1])
            if rng.random() < 0.5:
                hi = med
            else:
                lo = med
        target = (lo[0] + hi[0], lo[1] + hi[1])
        _, triangles = farey_walk(*target)
        out.extend(triangles)
    return out


def suite_determinant() -> list[Check]:
    checks = []
    streams = _stream_table()
    for name, src in streams.items():
        for n in range(2, 21):
            det_identity(src, n)  # raises on any violation
    checks.append(Check("consecutive-convergent determinant exponents", True,
                        f"{len(streams)} streams, depths 2..20"))
    triangles = _random_farey_triangles(depth=8, samples=40)
    for tri in triangles:
        farey_neighbor_relations(tri)
    checks.append(Check("mediant neighbor determinant relations", True,
                        f"{len(triangles)} triangles to depth 8"))
    return checks


def suite_translation() -> list[Check]:
    checks = []
    # shift of the deformation matches deformation of the shifted rational
    for r, s in reduced_fractions(40):
        up = translate_up(q_rational(r, s), 1)
        direct = q_rational(r + s, s)
        if up != direct:
            checks.append(Check("shift identity q*f+1", False, f"{r}/{s}"))
            return checks
        down_up = translate_down(translate_up(q_rational(r, s), 3), 3)
        if down_up != q_rational(r, s):
            checks.append(Check("translation round trip", False, f"{r}/{s}"))
            return checks
    checks.append(Check("shift identity [x+1] = q[x]+1 on rationals", True,
                        "all reduced r/s with r+s <= 40"))
    checks.append(Check("translation round trips (k=3)", True, ""))
    half = q_real_rational(1, 2, 6)[0]
    neg_half = q_real_rational(-1, 2, 6)[0]
    ok = (half.num, half.den) == (IntPolynomial([0, 1]), IntPolynomial([1, 1]))
    ok = ok and (neg_half.num, neg_half.den) == (IntPolynomial([-1]),
                                                 IntPolynomial([0, 1, 1]))
    checks.append(Check("half and minus-half rational functions", ok,
                        f"{half} ; {neg_half}"))
    for n in range(1, 11):
        _, series = q_real_rational(-n, 1, n + 2)
        expect = tuple([-1] * n + [0, 0])
        if series.min_degree != -n or series.coeffs != expect:
            checks.append(Check("negative integers", False, f"-{n}"))
            return checks
    checks.append(Check("negative integers -1..-10", True,
                        "-q^-1 - ... - q^-n"))
    return checks


def suite_gap() -> list[Check]:
    checks = []
    streams = _stream_table()
    for name, k in GAP_BRACKETS.items():
        series = stabilize(streams[name], k + 1, source=name)
        ok = gap_check(series, k)
        checks.append(Check(f"gap at q^{k} for {name}", ok,
                            str(series.certified_prefix(k + 1))))
        if not ok:
            return checks
    return checks


def suite_quadratics() -> list[Check]:
    checks = []
    streams = _stream_table()
    for name, ref in REFERENCE_QUADRATICS.items():
        eq = derive_equation(ref["pcf"])
        printed = QQuadraticEquation(IntPolynomial(ref["alpha"]),
                                     IntPolynomial(ref["beta"]),
                                     IntPolynomial(ref["gamma"]))
        same = (eq == printed, unit_equivalent(eq, printed))
        if not all(same):
            checks.append(Check(f"{name} equation", False, str(eq)))
            return checks
        series = stabilize(streams[name], 101, source=name)
        if not verify_equation(eq, series, 101):
            checks.append(Check(f"{name} residual", False, ""))
            return checks
        cf = closed_form(eq, series)
        if cf.discriminant != IntPolynomial(ref["delta"]) \
                or cf.denominator_exponent != ref["denominator_exponent"]:
            checks.append(Check(f"{name} closed form", False, str(cf)))
            return checks
        got = cf.expansion(30)
        if tuple(got.coefficients(0, 30)) != series.certified_prefix(30):
            checks.append(Check(f"{name} branch expansion", False, ""))
            return checks
    checks.append(Check("six printed equations, residuals through q^100, "
                        "discriminants, branch expansions", True,
                        ", ".join(REFERENCE_QUADRATICS)))
    return checks


def suite_paper_series() -> list[Check]:
    checks = []
    streams = _stream_table()

    def series_check(name: str, got_min: int, got: tuple[int, ...]) -> Check:
        lo, expect = load_fixture(name)
        n = len(expect)
        ok = got_min == lo and list(got[:n]) == expect
        detail = f"{n} coefficients from q^{lo}"
        if not ok:
            detail = (f"expected start {lo}:{expect[:6]}..., "
                      f"got {got_min}:{list(got[:6])}...")
        return Check(f"reference series {name}", ok, detail)

    qr75 = q_rational(7, 5)
    checks.append(series_check(
        "qrat_7_5", 0, tuple(qr75.taylor(13).coefficients(0, 13))))
    for name, (r, s) in (("phi6", (13, 8)), ("phi8", (34, 21)),
                         ("phi9", (55, 34))):
        got = q_rational(r, s).taylor(13)
        checks.append(series_check(name, 0, tuple(got.coefficients(0, 13))))
    for name, terms in (("phi", 21), ("silver", 29), ("sqrt2", 26),
                        ("sqrt3", 26), ("sqrt5", 26), ("sqrt7", 26),
                        ("e", 40), ("pi", 80)):
        series = stabilize(streams[name], terms, source=name)
        checks.append(series_check(name, 0, series.certified_prefix(terms)))
    for name, base, terms in (("neg_sqrt2", "sqrt2", 16),
                              ("neg_sqrt7", "sqrt7", 17),
                              ("neg_pi", "pi", 45)):
        spec = real_spec(streams[base], negate=True, label=name)
        series = q_real(spec, terms)
        checks.append(series_check(name, series.min_degree,
                                   series.certified_prefix(terms)))
    return checks


SUITES = {
    "farey": suite_farey,
    "determinant": suite_determinant,
    "translation": suite_translation,
    "gap": suite_gap,
    "quadratics": suite_quadratics,
    "paper-series": suite_paper_series,
}


def cmd_verify(args: argparse.Namespace) -> int:
    names = [args.suite] if args.suite else sorted(SUITES)
    all_checks: list[tuple[str, Check]] = []
    for name in names:
        try:
            for check in SUITES[name]():
                all_checks.append((name, check))
        except Exception as exc:  # a raised consistency error is a failure
            all_checks.append((name, Check("suite aborted", False, str(exc))))
    ok = all(c.passed for _, c in all_checks)
    if args.format == "json":
        payload = {
            "checks": [{"suite": s, "name": c.name, "passed": c.passed,
                        "detail": c.detail} for s, c in all_checks],
            "passed": ok,
        }
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        for s, c in all_checks:
            mark = "ok  " if c.passed else "FAIL"
            detail = f" ({c.detail})" if c.detail else ""
            print(f"{mark} [{s}] {c.name}{detail}")
        print("all checks passed" if ok else "checks FAILED")
    return 0 if ok else 1


# --- compare -----------------------------------------------------------------

def cmd_compare(args: argparse.Namespace) -> int:
    values = read_bfile(args.bfile)
    source = parse_source(args.series, _pi_path())
    series = stabilize(source, args.terms, source=args.series)
    offset = args.signed
    start = args.start
    top = series.guaranteed_terms - 1
    mismatches = []
    compared = []
    for k in range(start, top + 1):
        if (k - offset) not in values:
            continue
        compared.append(k)
        if series.coefficient(k) != (-1) ** k * values[k - offset]:
            mismatches.append(k)
    payload = {
        "bfile": str(args.bfile),
        "series": args.series,
        "signed_offset": offset,
        "compared": f"k = {compared[0]}..{compared[-1]}" if compared else "",
        "mismatches": mismatches,
        "passed": bool(compared) and not mismatches,
    }
    if args.format == "json":
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        for key, val in payload.items():
            print(f"{key}: {val}")
    return 0 if payload["passed"] else 1


# --- argument parsing ----------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qreals",
        description="Exact q-analogues of rationals, quadratic surds and "
                    "reals given by continued-fraction data.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("qrat", help="deform a rational number")
    p.add_argument("fraction", help="r/s with r/s >= 0, e.g. 7/5")
    p.add_argument("--terms", type=int, default=13)
    p.add_argument("--method", choices=("matrix", "cf", "farey"),
                   default="matrix")
    p.add_argument("--format", choices=("text", "json", "csv"),
                   default="text")
    p.set_defaults(func=cmd_qrat)

    p = sub.add_parser("qreal", help="deform a real from CF data")
    p.add_argument("spec",
                   help="phi|e|pi|silver|sqrt:D, a finite list '1,2,1,1', or "
                        "a periodic 'pre;period'; prefix '-' negates")
    p.add_argument("--terms", type=int, default=21)
    p.add_argument("--shift", type=int, default=0,
                   help="integer translation added to the value")
    p.add_argument("--unsafe", action="store_true",
                   help="print coefficients past the certified prefix")
    p.add_argument("--format", choices=("text", "json", "csv"),
                   default="text")
    p.set_defaults(func=cmd_qreal)

    p = sub.add_parser("quadratic",
                       help="functional equation of a periodic expansion")
    p.add_argument("spec", help="'pre;period' or phi|silver|sqrt:D")
    p.add_argument("--verify", type=int, metavar="N",
                   help="check the residual on N certified terms")
    p.add_argument("--closed-form", action="store_true")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=cmd_quadratic)

    p = sub.add_parser("verify", help="run a named check suite")
    p.add_argument("--suite", choices=sorted(SUITES),
                   help="default: every suite")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("compare",
                       help="signed comparison against a local b-file")
    p.add_argument("--bfile", required=True)
    p.add_argument("--series", default="phi",
                   help="series spec to compare (default phi)")
    p.add_argument("--signed", type=int, default=1, metavar="OFFSET",
                   help="match coefficient k against (-1)^k * a(k-OFFSET)")
    p.add_argument("--start", type=int, default=2,
                   help="first k compared (default 2)")
    p.add_argument("--terms", type=int, default=30)
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=cmd_compare)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
