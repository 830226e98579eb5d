"""Exact q-analogues of rationals, quadratic surds and real numbers.

The deformation sends a rational r/s >= 1 to a ratio of integer polynomials
in q, and a real x to an integer power series (a Laurent series once x drops
below 1) obtained as the coefficient-wise limit of the deformations of any
rational sequence converging to x.  Everything is exact: no floats anywhere.
"""

from .contfrac import (CFStream, FiniteCF, PeriodicCF, cf_of_rational,
                       cf_of_sqrt, cf_prefix, cf_stream_e, cf_stream_phi,
                       cf_stream_pi, cf_stream_silver, named_source,
                       rational_of_cf)
from .exactalg import (IntPolynomial, PrecisionError, TruncatedLaurentSeries,
                       series_arith, series_div, series_sqrt)
from .qcalc import (ConsistencyError, FareyTriangle, QRational, det_identity,
                    farey_neighbor_relations, farey_walk, q_integer,
                    q_rational, q_rational_cf, q_rational_farey,
                    q_rational_matrix)
from .qreal import (RealSpec, StabilizedSeries, gap_check, one_sided_probe,
                    q_real, q_real_rational, real_spec, stabilize,
                    translate_down, translate_up)
from .quadratic import (ClosedForm, QQuadraticEquation, closed_form,
                        derive_equation, golden_specials, read_bfile,
                        unit_equivalent, verify_equation)

__all__ = [
    "CFStream", "FiniteCF", "PeriodicCF", "cf_of_rational", "cf_of_sqrt",
    "cf_prefix", "cf_stream_e", "cf_stream_phi", "cf_stream_pi",
    "cf_stream_silver", "named_source", "rational_of_cf",
    "IntPolynomial", "PrecisionError", "TruncatedLaurentSeries",
    "series_arith", "series_div", "series_sqrt",
    "ConsistencyError", "FareyTriangle", "QRational", "det_identity",
    "farey_neighbor_relations", "farey_walk", "q_integer", "q_rational",
    "q_rational_cf", "q_rational_farey", "q_rational_matrix",
    "RealSpec", "StabilizedSeries", "gap_check", "one_sided_probe", "q_real",
    "q_real_rational", "real_spec", "stabilize", "translate_down",
    "translate_up",
    "ClosedForm", "QQuadraticEquation", "closed_form", "derive_equation",
    "golden_specials", "read_bfile", "unit_equivalent", "verify_equation",
]
