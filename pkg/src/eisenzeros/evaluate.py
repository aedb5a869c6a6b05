"""Rigorous evaluation of the Eisenstein q-series at points of the upper half plane.

A value is enclosed as (partial sum through q**m in rectangle arithmetic) plus a
tail radius.  The tail uses a coefficient majorant |a_n| <= C n**p together with
|q| <= |Re q| + |Im q| = r, so sum_{n>m} |a_n q**n| <= sum_{n>m} C n**p r**n.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from fractions import Fraction
from functools import lru_cache

from .exactnum import (AlgebraicPoint, ComplexEnclosure, RealEnclosure, enclose_pi,
                       exp_enclosure, point_enclosure, round_up)
from .qseries import SeriesId


class RegionViolation(ValueError):
    pass


class TailDiverges(ArithmeticError):
    pass


@dataclass(frozen=True)
class CoefficientBound:
    C: Fraction
    p: int


@dataclass(frozen=True)
class EvalParams:
    m: int = 64
    bits: int = 128
    exp_terms: int = 64
    r_max: Fraction = Fraction(9, 10)

    def __post_init__(self):
        if not 0 < self.r_max < 1:
            raise ValueError("r_max must lie strictly between 0 and 1")
        if self.m < 0 or self.bits < 8 or self.exp_terms < 1:
            raise ValueError(f"invalid parameters {self}")

    def doubled(self) -> "EvalParams":
        return replace(self, m=2 * self.m, bits=2 * self.bits, exp_terms=2 * self.exp_terms)


DEFAULT_PARAMS = EvalParams()


def coefficient_bound(sid: SeriesId) -> CoefficientBound:
    """|a_n| <= C n**p for n >= 1.

    sigma_3(n) <= n**4 and sigma_5(n) <= n**6 (at most n divisors, each <= n),
    sigma_1(n) <= n(n+1)/2 <= n**2, and for Etilde_N
    |sigma_1(n) - N sigma_1(n/N)| <= N sigma_1(n) < (N+1) sigma_1(n).
    """
    if sid.kind == "E2":
        return CoefficientBound(Fraction(24), 2)
    if sid.kind == "E4":
        return CoefficientBound(Fraction(240), 4)
    if sid.kind == "E6":
        return CoefficientBound(Fraction(504), 6)
    N = sid.level
    return CoefficientBound(Fraction(24 * (N + 1), N - 1), 2)


def tail_bound(bound: CoefficientBound, m: int, r: Fraction) -> Fraction:
    """Upper bound on sum_{n>m} C n**p r**n.

    Consecutive majorant terms have ratio ((n+1)/n)**p r <= theta for n >= n0,
    so the tail from n0 is at most its first term over (1 - theta). Normally
    n0 = m+1; when that ratio is still >= 1 the terms before the first
    decreasing one are summed exactly.
    """
    r = Fraction(r)
    if m < 0:
        raise ValueError("m must be >= 0")
    if not 0 <= r < 1:
        raise TailDiverges(f"r = {r} is not in [0, 1)")
    C, p = bound.C, bound.p
    head = Fraction(0)
    n0 = m + 1
    while (theta := r * Fraction(n0 + 1, n0) ** p) >= 1:
        head += C * n0 ** p * r ** n0
        n0 += 1
    return head + C * n0 ** p * r ** n0 / (1 - theta)


def as_enclosure(tau, bits: int) -> ComplexEnclosure:
    if isinstance(tau, AlgebraicPoint):
        return point_enclosure(tau, bits)
    return tau


def q_enclosure(tau: ComplexEnclosure, params: EvalParams) -> ComplexEnclosure:
    """Enclosure of q = exp(2 pi i tau)."""
    if tau.im.lo <= 0:
        raise RegionViolation("tau must lie in the upper half plane")
    # q is 1-periodic in Re tau; shift by an integer to keep |2 pi i tau| small
    shift = round(tau.re.mid)
    re = tau.re - shift
    two_pi = enclose_pi(params.bits + 8) * 2
    z = ComplexEnclosure(-(two_pi * tau.im), two_pi * re).rounded(params.bits + 8)
    return exp_enclosure(z, params.exp_terms, bits=params.bits + 8)


def l1_radius(q: ComplexEnclosure) -> Fraction:
    """sup(|Re q| + |Im q|), the quantity the tail estimate is taken at."""
    return q.l1_upper()


def in_region(tau, params: EvalParams = DEFAULT_PARAMS) -> bool:
    q = q_enclosure(as_enclosure(tau, params.bits), params)
    return l1_radius(q) <= params.r_max


def evaluate_series(sid: SeriesId, q: ComplexEnclosure, params: EvalParams) -> ComplexEnclosure:
    r = l1_radius(q)
    if r > params.r_max:
        raise RegionViolation(
            f"sup(|Re q| + |Im q|) = {float(r):.4f} exceeds r_max = {float(params.r_max)}; "
            "relocate the point first")
    tail = tail_bound(coefficient_bound(sid), params.m, round_up(r, 64))
    coeffs = sid.series(params.m).coeffs
    acc = ComplexEnclosure(coeffs[params.m])
    for n in range(params.m - 1, -1, -1):
        acc = (acc * q + coeffs[n]).rounded(params.bits)
    return acc.inflate(round_up(tail, params.bits))


def evaluate_at(sid: SeriesId, tau, params: EvalParams = DEFAULT_PARAMS) -> ComplexEnclosure:
    """Sound enclosure of the series ``sid`` at tau (AlgebraicPoint or enclosure)."""
    tau = as_enclosure(tau, params.bits)
    return evaluate_series(sid, q_enclosure(tau, params), params)


@lru_cache(maxsize=None)
def evaluate_point(sid: SeriesId, p: AlgebraicPoint, params: EvalParams = DEFAULT_PARAMS) -> ComplexEnclosure:
    """Cached evaluate_at for exact algebraic points."""
    return evaluate_at(sid, p, params)


def transport_level1(sid: SeriesId, gamma, base_value: ComplexEnclosure,
                     tau: ComplexEnclosure) -> ComplexEnclosure:
    """Value of a level-one form at gamma(tau) from its value at tau.

    For f of weight k on SL2(Z), f(gamma tau) = (c tau + d)**k f(tau).
    """
    if sid.kind not in ("E4", "E6"):
        raise ValueError("transport applies only to the level-one forms E4 and E6")
    (a, b), (c, d) = gamma
    if a * d - b * c != 1:
        raise ValueError(f"{gamma} is not in SL2(Z)")
    return (tau * c + d) ** sid.weight * base_value


def gamma_image(gamma, tau: ComplexEnclosure) -> ComplexEnclosure:
    (a, b), (c, d) = gamma
    return (tau * a + b) / (tau * c + d)


def decimal_view(x: RealEnclosure, digits: int = 20) -> tuple[str, str]:
    """Outward-rounded decimal strings for an interval."""
    from decimal import ROUND_CEILING, ROUND_FLOOR, Context
    lo = Context(prec=digits, rounding=ROUND_FLOOR).divide(x.lo.numerator, x.lo.denominator)
    hi = Context(prec=digits, rounding=ROUND_CEILING).divide(x.hi.numerator, x.hi.denominator)
    return str(lo), str(hi)
