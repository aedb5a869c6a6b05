"""Certified zeros of the weight-2 Eisenstein series Etilde_N on Gamma0(N), N = 2, 3, 5, 7."""

from .certify import Verdict, certify_all, certify_point, cusp_check, second_factor_separation
from .evaluate import EvalParams, evaluate_at
from .exactnum import AlgebraicPoint, Base, ComplexEnclosure, Form, RealEnclosure
from .graded import PRINTED_RELATIONS, discover_relation, sturm_order, verify_relation
from .qseries import E2, E4, E6, SeriesId, etilde, series_Etilde

__version__ = "0.1.0"
