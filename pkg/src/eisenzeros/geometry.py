"""Fundamental domains, candidate zeros and the transformations used to move points."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction

from .exactnum import AlgebraicPoint, Base, ComplexEnclosure, Form, QuadNumber, zeta
from .evaluate import DEFAULT_PARAMS, EvalParams, evaluate_at
from .qseries import check_level, etilde

S = ((0, -1), (1, 0))
T = ((1, 1), (0, 1))
IDENTITY = ((1, 0), (0, 1))


def matmul(x, y):
    return tuple(tuple(sum(x[i][k] * y[k][j] for k in range(2)) for j in range(2)) for i in range(2))


def det(m) -> int:
    return m[0][0] * m[1][1] - m[0][1] * m[1][0]


@dataclass(frozen=True)
class CosetRep:
    matrix: tuple
    k: int | None = None  # None for the identity, else the T-exponent in S T^k

    def __post_init__(self):
        if det(self.matrix) != 1:
            raise ValueError(f"{self.matrix} has determinant {det(self.matrix)}")

    def __str__(self) -> str:
        return "Id" if self.k is None else f"S*T^{self.k}"


def coset_reps(N: int) -> list[CosetRep]:
    """Id and S T^k (0 <= k < N): right coset representatives of Gamma0(N) in SL2(Z)."""
    if N < 2 or any(N % d == 0 for d in range(2, int(N ** 0.5) + 1)):
        raise ValueError(f"level {N} is not prime")
    reps = [CosetRep(IDENTITY)]
    for k in range(N):
        reps.append(CosetRep(matmul(S, ((1, k), (0, 1))), k))
    return reps


def in_gamma0(m, N: int) -> bool:
    return det(m) == 1 and m[1][0] % N == 0


class Membership(enum.Enum):
    INSIDE = "inside"
    OUTSIDE = "outside"
    BOUNDARY_UNDECIDED = "boundary_undecided"


class NotUpperHalfPlane(ValueError):
    pass


def in_F_Gamma(tau: ComplexEnclosure) -> Membership:
    """Membership in {-1/2 <= x < 1/2, x**2 + y**2 >= 1}, decided only when certain."""
    if tau.im.lo <= 0:
        raise NotUpperHalfPlane(f"{tau!r} is not bounded away from the real axis")
    half = Fraction(1, 2)
    norm = tau.abs_sq()
    if tau.re.hi < -half or tau.re.lo >= half or norm.hi < 1:
        return Membership.OUTSIDE
    if tau.re.lo >= -half and tau.re.hi < half and norm.lo >= 1:
        return Membership.INSIDE
    return Membership.BOUNDARY_UNDECIDED


@dataclass(frozen=True)
class CandidateSet:
    level: int
    control: str  # "E6" or "E4": the level-one form vanishing at every candidate
    points: tuple[AlgebraicPoint, ...]


def control_form(N: int) -> str:
    check_level(N)
    return "E6" if N in (2, 5) else "E4"


def candidate_zeros(N: int) -> CandidateSet:
    """zeta and -1/(zeta + k) for 1 <= k <= N-1.

    k = 0 is dropped: -1/i = i, and -1/rho = rho + 1 is a T-translate of rho.
    """
    control = control_form(N)
    base = Base.I if control == "E6" else Base.RHO
    pts = [AlgebraicPoint.base_point(base)] + [AlgebraicPoint(base, k) for k in range(1, N)]
    return CandidateSet(N, control, tuple(pts))


def preimage(p: AlgebraicPoint) -> tuple[AlgebraicPoint, tuple]:
    """(zeta, gamma) with gamma(zeta) = p; gamma = S T^k for inverted points."""
    if p.form is Form.BASE:
        return p, IDENTITY
    return AlgebraicPoint.base_point(p.base), matmul(S, ((1, p.k), (0, 1)))


@dataclass(frozen=True)
class PointRelocation:
    source: AlgebraicPoint
    target: AlgebraicPoint
    multiplier: QuadNumber  # Etilde_N(target) = multiplier * Etilde_N(source)

    def multiplier_enclosure(self, bits: int = 128) -> ComplexEnclosure:
        return self.multiplier.enclosure(bits)


def relocate(p: AlgebraicPoint, N: int) -> PointRelocation:
    """-1/(zeta+k) -> -1/(zeta+k-N) with factor (zeta+k-N)**2 / (zeta+k)**2.

    Uses Etilde_N(-1/w) = -(w**2/N) Etilde_N(w/N) and 1-periodicity in w/N.
    """
    if p.form is not Form.INVERTED or not 0 <= p.k <= N - 1:
        raise ValueError(f"relocate expects -1/(zeta+k) with 0 <= k <= {N - 1}, got {p}")
    z = zeta(p.base)
    mult = (z + (p.k - N)) ** 2 / (z + p.k) ** 2
    return PointRelocation(p, AlgebraicPoint(p.base, p.k - N), mult)


def fricke_image(tau: ComplexEnclosure, N: int) -> ComplexEnclosure:
    return -(tau * N).reciprocal()


def fricke_residual(N: int, tau: ComplexEnclosure, params: EvalParams = DEFAULT_PARAMS) -> ComplexEnclosure:
    """Enclosure of Etilde_N(-1/(N tau)) + N tau**2 Etilde_N(tau); must contain 0."""
    sid = etilde(N)
    lhs = evaluate_at(sid, fricke_image(tau, N), params)
    rhs = evaluate_at(sid, tau, params)
    return (lhs + tau.sqr() * N * rhs).rounded(params.bits)
