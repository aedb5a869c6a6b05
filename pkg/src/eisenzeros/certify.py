"""Certify which candidate points are zeros of Etilde_N.

At a candidate the controlling level-one form (E6 for N = 2, 5; E4 for N = 3, 7)
vanishes exactly, so the relation collapses to

    Etilde**L * cofactor(Etilde) = 0.

If an enclosure of the cofactor excludes 0, Etilde vanishes exactly; if an
enclosure of Etilde excludes 0, the point is not a zero.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction

from .exactnum import AlgebraicPoint, ComplexEnclosure, Form, point_enclosure
from .evaluate import (DEFAULT_PARAMS, EvalParams, RegionViolation, evaluate_point,
                       in_region, transport_level1)
from .geometry import candidate_zeros, control_form, fricke_residual, preimage, relocate
from .graded import (DEFAULT_MARGIN, GradedMonomial, RelationComparison, RelationPoly,
                     Verification, compare_with_printed, discover_relation, sturm_order,
                     verify_relation)
from .qseries import E4, E6, SeriesId, check_level, etilde, series_Etilde

MAX_ROUNDS = 4


class ControlMismatch(ValueError):
    pass


class CertificationError(RuntimeError):
    pass


class Verdict(enum.Enum):
    ZERO = "ZERO"
    NONZERO = "NONZERO"
    UNDECIDED = "UNDECIDED"


@dataclass(frozen=True)
class FactoredEquation:
    """Etilde**leading_power * sum_j cofactor[j] Etilde**j = 0 at the candidate.

    cofactor[j] is a list of (coeff, monomial) pairs in the non-control form.
    """

    level: int
    control: str
    leading_power: int
    cofactor: tuple[tuple, ...]

    @property
    def degree(self) -> int:
        return len(self.cofactor) - 1

    def evaluate(self, et: ComplexEnclosure, e4: ComplexEnclosure,
                 e6: ComplexEnclosure, bits: int) -> ComplexEnclosure:
        total = ComplexEnclosure(0)
        et_pow = ComplexEnclosure(1)
        for j, entries in enumerate(self.cofactor):
            if entries:
                c = ComplexEnclosure(0)
                for coeff, mono in entries:
                    c = c + (e4 ** mono.a) * (e6 ** mono.b) * coeff
                total = total + c * et_pow
            if j < self.degree:
                et_pow = (et_pow * et).rounded(bits)
        return total.rounded(bits)

    def describe(self) -> str:
        parts = []
        for j in range(self.degree, -1, -1):
            for coeff, mono in self.cofactor[j]:
                et = "" if j == 0 else ("Et" if j == 1 else f"Et^{j}")
                factors = [str(coeff) if coeff != 1 else "",
                           str(mono) if mono.weight else "", et]
                parts.append("*".join(f for f in factors if f) or "1")
        lead = "Et" if self.leading_power == 1 else f"Et^{self.leading_power}"
        return f"{lead} * ({' + '.join(parts)}) = 0".replace("+ -", "- ")


def build_factored(rel: RelationPoly, control: str) -> FactoredEquation:
    """Drop every term containing the control form and factor out Etilde."""
    N = rel.level
    if control != control_form(N):
        raise ControlMismatch(f"level {N} is controlled by {control_form(N)}, not {control}")
    # Etilde**(N+1) - sum(surviving terms) as {power: [(coeff, monomial)]}
    poly: dict[int, list] = {N + 1: [(Fraction(1), GradedMonomial(0, 0))]}
    for t in rel.terms:
        if t.coeff == 0 or t.monomial.contains(control):
            continue
        poly.setdefault(t.power, []).append((-t.coeff, t.monomial))
    low = min(poly)
    cofactor = tuple(tuple(poly.get(j + low, ())) for j in range(N + 1 - low + 1))
    return FactoredEquation(N, control, low, cofactor)


@dataclass
class Certificate:
    point: AlgebraicPoint
    level: int
    verdict: Verdict
    etilde_enclosure: ComplexEnclosure
    cofactor_enclosure: ComplexEnclosure
    params: EvalParams
    relocated: bool = False
    rounds: int = 1
    narrative: str = ""

    def separation(self, bits: int = 64) -> Fraction | None:
        """Certified lower bound on |cofactor| for ZERO verdicts."""
        if self.verdict is not Verdict.ZERO:
            return None
        return self.cofactor_enclosure.abs_lower(bits)


def etilde_enclosure(N: int, p: AlgebraicPoint, params: EvalParams) -> tuple[ComplexEnclosure, bool]:
    """Etilde_N at p, directly when in region, else through relocate()."""
    sid = etilde(N)
    if in_region(p, params):
        return evaluate_point(sid, p, params), False
    if p.form is not Form.INVERTED:
        raise RegionViolation(f"{p} is outside the evaluation region and cannot be relocated")
    rel = relocate(p, N)
    if not in_region(rel.target, params):
        raise RegionViolation(f"neither {p} nor its relocation {rel.target} is in region")
    value = evaluate_point(sid, rel.target, params)
    return (value / rel.multiplier_enclosure(params.bits)).rounded(params.bits), True


def level1_enclosure(sid: SeriesId, p: AlgebraicPoint, params: EvalParams) -> ComplexEnclosure:
    """E4 or E6 at p, transported from the base point zeta with p = gamma(zeta)."""
    base, gamma = preimage(p)
    base_value = evaluate_point(sid, base, params)
    return transport_level1(sid, gamma, base_value, point_enclosure(base, params.bits)).rounded(params.bits)


def _certify_once(N: int, p: AlgebraicPoint, factored: FactoredEquation, params: EvalParams) -> Certificate:
    et, relocated = etilde_enclosure(N, p, params)
    # the control form is exactly zero at p; only the other one enters the cofactor
    e4 = level1_enclosure(E4, p, params) if factored.control == "E6" else ComplexEnclosure(0)
    e6 = level1_enclosure(E6, p, params) if factored.control == "E4" else ComplexEnclosure(0)
    cof = factored.evaluate(et, e4, e6, params.bits)
    et_nz, cof_nz = et.excludes_zero(), cof.excludes_zero()
    if et_nz and cof_nz:
        raise CertificationError(f"{p}: both factors exclude 0, contradicting the relation")
    if cof_nz:
        verdict = Verdict.ZERO
        story = (f"cofactor excludes 0 (|cofactor| >= {float(cof.abs_lower()):.6g}), "
                 f"so Et^{factored.leading_power} = 0 exactly")
    elif et_nz:
        verdict = Verdict.NONZERO
        story = f"Etilde enclosure excludes 0 (|Etilde| >= {float(et.abs_lower()):.6g})"
    else:
        verdict = Verdict.UNDECIDED
        story = "neither enclosure excludes 0"
    return Certificate(p, N, verdict, et, cof, params, relocated, narrative=story)


def certify_point(N: int, p: AlgebraicPoint, params: EvalParams = DEFAULT_PARAMS,
                  factored: FactoredEquation | None = None,
                  max_rounds: int = MAX_ROUNDS) -> Certificate:
    """Decide ZERO / NONZERO at a candidate, doubling m, bits, exp_terms on UNDECIDED."""
    check_level(N)
    if p not in candidate_zeros(N).points:
        raise ValueError(f"{p} is not a candidate for level {N}")
    if factored is None:
        factored = build_factored(discover_relation(N), control_form(N))
    cert = None
    for round_no in range(1, max_rounds + 1):
        cert = _certify_once(N, p, factored, params)
        cert.rounds = round_no
        if cert.verdict is not Verdict.UNDECIDED:
            break
        params = params.doubled()
    return cert


@dataclass
class Report:
    level: int
    relation: RelationPoly
    verification: Verification
    comparison: RelationComparison
    factored: FactoredEquation
    certificates: list[Certificate] = field(default_factory=list)

    @property
    def zeros(self) -> list[AlgebraicPoint]:
        return [c.point for c in self.certificates if c.verdict is Verdict.ZERO]

    @property
    def undecided(self) -> list[AlgebraicPoint]:
        return [c.point for c in self.certificates if c.verdict is Verdict.UNDECIDED]

    def separation(self) -> Fraction | None:
        seps = [c.separation() for c in self.certificates if c.verdict is Verdict.ZERO]
        return min(seps) if seps else None

    def summary(self) -> str:
        lines = [f"level {self.level}",
                 f"  relation (discovered): {self.relation.nonzero()}",
                 f"  identity check: {self.verification.describe()}"]
        if self.comparison.matches:
            lines.append("  printed relation: identical")
        for power, mono, ours, printed in self.comparison.differences:
            lines.append(f"  printed relation differs at Et^{power}*{mono}: "
                         f"discovered {ours}, printed {printed}")
        lines.append(f"  factored: {self.factored.describe()}")
        for c in self.certificates:
            route = " (relocated)" if c.relocated else ""
            lines.append(f"  {c.point.label():>14}  {c.verdict.value:<9} round {c.rounds}{route}: {c.narrative}")
        lines.append("  zeros: " + ", ".join(p.label() for p in self.zeros))
        return "\n".join(lines)


def certify_all(N: int, params: EvalParams = DEFAULT_PARAMS) -> Report:
    check_level(N)
    rel = discover_relation(N)
    ver = verify_relation(rel, sturm_order(N) + DEFAULT_MARGIN)
    if not ver:
        raise CertificationError(f"discovered relation fails verification: {ver.describe()}")
    factored = build_factored(rel, control_form(N))
    report = Report(N, rel, ver, compare_with_printed(rel), factored)
    for p in candidate_zeros(N).points:
        report.certificates.append(certify_point(N, p, params, factored))
    return report


FRICKE_SAMPLES = (
    ComplexEnclosure(0, Fraction(1, 2)),
    ComplexEnclosure(Fraction(1, 5), Fraction(1, 2)),
    ComplexEnclosure(Fraction(-1, 3), Fraction(2, 3)),
)


@dataclass
class CuspReport:
    level: int
    constant_term: Fraction
    residuals: list[ComplexEnclosure]

    @property
    def constant_term_ok(self) -> bool:
        return self.constant_term == 1

    @property
    def fricke_ok(self) -> bool:
        return all(r.contains_zero() for r in self.residuals)

    def __bool__(self) -> bool:
        return self.constant_term_ok and self.fricke_ok


def cusp_check(N: int, params: EvalParams = DEFAULT_PARAMS, series=None) -> CuspReport:
    """Value 1 at i*infinity and the Fricke antisymmetry linking it to the cusp 0."""
    check_level(N)
    s = series if series is not None else series_Etilde(N, params.m)
    residuals = [fricke_residual(N, tau, params) for tau in FRICKE_SAMPLES]
    return CuspReport(N, s.coeffs[0], residuals)


def second_factor_separation(N: int, params: EvalParams = DEFAULT_PARAMS) -> Fraction | None:
    """min over ZERO candidates of a certified lower bound on |cofactor|."""
    return certify_all(N, params).separation()
