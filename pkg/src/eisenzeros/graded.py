"""Relations between Etilde_N and the level-one ring C[E4, E6].

Each relation has the shape

    Etilde_N**(N+1) = sum_i  c * Etilde_N**i * E4**a * E6**b,   2i + 4a + 6b = 2(N+1),

with 0 <= i <= N-1.  Relations can be checked coefficientwise against exact
q-expansions, or recovered from scratch by solving the linear system that
matching coefficients produces.
"""

from __future__ import annotations

import enum
import math
import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .qseries import QSeries, check_level, mul, pow, series_E4, series_E6, series_Etilde

DEFAULT_MARGIN = 20


class NoRelation(ArithmeticError):
    pass


class NotUnique(ArithmeticError):
    pass


@dataclass(frozen=True, order=True)
class GradedMonomial:
    a: int  # power of E4
    b: int  # power of E6

    def __post_init__(self):
        if self.a < 0 or self.b < 0:
            raise ValueError("exponents must be non-negative")

    @property
    def weight(self) -> int:
        return 4 * self.a + 6 * self.b

    def contains(self, control: str) -> bool:
        return (self.a if control == "E4" else self.b) > 0

    def series(self, order: int) -> QSeries:
        return mul(pow(series_E4(order), self.a), pow(series_E6(order), self.b))

    def __str__(self) -> str:
        parts = []
        if self.a:
            parts.append("E4" if self.a == 1 else f"E4^{self.a}")
        if self.b:
            parts.append("E6" if self.b == 1 else f"E6^{self.b}")
        return "*".join(parts) or "1"


def monomial_basis(weight: int) -> list[GradedMonomial]:
    """All E4**a E6**b of the given weight, by descending a."""
    if weight < 0 or weight % 2:
        raise ValueError("weight must be even and non-negative")
    return [GradedMonomial(a, (weight - 4 * a) // 6)
            for a in range(weight // 4, -1, -1) if (weight - 4 * a) % 6 == 0]


@dataclass(frozen=True)
class RelationTerm:
    power: int  # power of Etilde_N
    monomial: GradedMonomial
    coeff: Fraction

    def __str__(self) -> str:
        et = "" if self.power == 0 else ("*Et" if self.power == 1 else f"*Et^{self.power}")
        return f"({self.coeff})*{self.monomial}{et}"


@dataclass(frozen=True)
class RelationPoly:
    """Right-hand side of Etilde_N**(N+1) = sum(terms); the leading term is implicit."""

    level: int
    terms: tuple[RelationTerm, ...]

    def __post_init__(self):
        target = 2 * (self.level + 1)
        for t in self.terms:
            if 2 * t.power + t.monomial.weight != target:
                raise ValueError(f"term {t} is not of weight {target}")
            if not 0 <= t.power <= self.level - 1:
                raise ValueError(f"term {t} has power outside 0..N-1")

    @classmethod
    def build(cls, level: int, entries) -> "RelationPoly":
        """entries: iterable of (power, (a, b), coeff)."""
        return cls(level, tuple(RelationTerm(i, GradedMonomial(*ab), Fraction(c))
                                for i, ab, c in entries))

    def nonzero(self) -> "RelationPoly":
        return RelationPoly(self.level, tuple(t for t in self.terms if t.coeff != 0))

    def coefficient_sum(self) -> Fraction:
        return sum((t.coeff for t in self.terms), Fraction(0))

    def as_dict(self) -> dict[tuple[int, GradedMonomial], Fraction]:
        return {(t.power, t.monomial): t.coeff for t in self.terms if t.coeff != 0}

    def differences(self, other: "RelationPoly") -> list[tuple[int, GradedMonomial, Fraction, Fraction]]:
        """(power, monomial, ours, theirs) for every term where the two disagree."""
        mine, theirs = self.as_dict(), other.as_dict()
        out = []
        for key in sorted(set(mine) | set(theirs), key=lambda k: (k[0], -k[1].a)):
            x, y = mine.get(key, Fraction(0)), theirs.get(key, Fraction(0))
            if x != y:
                out.append((key[0], key[1], x, y))
        return out

    def __str__(self) -> str:
        return f"Et{self.level}^{self.level + 1} = " + " + ".join(str(t) for t in self.terms)


# Relations as printed for N = 2, 3, 5, 7.  The N = 7 entry is kept verbatim,
# including its E4^2 Et^4 coefficient 30/2401; see verify_relation.
PRINTED_RELATIONS: dict[int, RelationPoly] = {
    2: RelationPoly.build(2, [
        (0, (0, 1), Fraction(1, 4)),
        (1, (1, 0), Fraction(3, 4)),
    ]),
    3: RelationPoly.build(3, [
        (0, (2, 0), Fraction(1, 27)),
        (1, (0, 1), Fraction(8, 27)),
        (2, (1, 0), Fraction(2, 3)),
    ]),
    5: RelationPoly.build(5, [
        (0, (0, 2), Fraction(1, 3125)),
        (1, (1, 1), Fraction(24, 3125)),
        (2, (2, 0), Fraction(9, 125)),
        (3, (0, 1), Fraction(8, 25)),
        (4, (1, 0), Fraction(3, 5)),
    ]),
    7: RelationPoly.build(7, [
        (0, (4, 0), Fraction(1, 7 ** 7)),
        (1, (2, 1), Fraction(48, 7 ** 7)),
        (2, (0, 2), Fraction(64, 64827)),
        (2, (3, 0), Fraction(92, 453789)),
        (3, (1, 1), Fraction(32, 2401)),
        (4, (2, 0), Fraction(30, 2401)),
        (5, (0, 1), Fraction(16, 49)),
        (6, (1, 0), Fraction(4, 7)),
    ]),
}


def sturm_order(N: int) -> int:
    """ceil(k * [SL2(Z) : Gamma0(N)] / 12) with k = 2(N+1) and index N+1."""
    check_level(N)
    return math.ceil(Fraction(2 * (N + 1) * (N + 1), 12))


@dataclass
class Verification:
    ok: bool
    order: int
    mismatch: tuple[int, Fraction, Fraction] | None = None  # (n, lhs_n, rhs_n)

    def __bool__(self) -> bool:
        return self.ok

    def describe(self) -> str:
        if self.ok:
            return f"coefficients q^0..q^{self.order} agree"
        n, lhs, rhs = self.mismatch
        return f"first mismatch at q^{n}: lhs {lhs} != rhs {rhs}"


def relation_sides(rel: RelationPoly, order: int) -> tuple[QSeries, QSeries]:
    et = series_Etilde(rel.level, order)
    powers = [QSeries.one(order)]
    for _ in range(rel.level + 1):
        powers.append(mul(powers[-1], et))
    lhs = powers[rel.level + 1]
    rhs = [Fraction(0)] * (order + 1)
    for t in rel.terms:
        if t.coeff == 0:
            continue
        s = mul(powers[t.power], t.monomial.series(order))
        for n in range(order + 1):
            rhs[n] += t.coeff * s.coeffs[n]
    return lhs, QSeries(tuple(rhs))


def verify_relation(rel: RelationPoly, order: int) -> Verification:
    """Exact coefficientwise comparison of both sides up to q**order."""
    if order < sturm_order(rel.level):
        warnings.warn(f"order {order} is below the Sturm bound {sturm_order(rel.level)} "
                      f"for level {rel.level}; agreement would not prove the identity",
                      stacklevel=2)
    lhs, rhs = relation_sides(rel, order)
    for n in range(order + 1):
        if lhs.coeffs[n] != rhs.coeffs[n]:
            return Verification(False, order, (n, lhs.coeffs[n], rhs.coeffs[n]))
    return Verification(True, order)


# -- exact linear algebra -----------------------------------------------------

class SolveStatus(enum.Enum):
    UNIQUE = "unique"
    INCONSISTENT = "inconsistent"
    UNDERDETERMINED = "underdetermined"


@dataclass
class LinearSolution:
    status: SolveStatus
    values: list[Fraction] | None = None
    rank: int = 0


def exact_linear_solve(matrix: Sequence[Sequence], rhs: Sequence) -> LinearSolution:
    """Gauss-Jordan elimination over Q with first-nonzero pivoting."""
    rows = [[Fraction(x) for x in row] + [Fraction(b)] for row, b in zip(matrix, rhs)]
    if len(rows) != len(rhs):
        raise ValueError("matrix and rhs have different row counts")
    ncols = len(matrix[0]) if matrix else 0
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        p = rows[r][c]
        rows[r] = [x / p for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    if any(row[-1] != 0 for row in rows[r:]):
        return LinearSolution(SolveStatus.INCONSISTENT, rank=r)
    if r < ncols:
        return LinearSolution(SolveStatus.UNDERDETERMINED, rank=r)
    values = [Fraction(0)] * ncols
    for i, c in enumerate(pivots):
        values[c] = rows[i][-1]
    return LinearSolution(SolveStatus.UNIQUE, values, rank=r)


def relation_unknowns(N: int) -> list[tuple[int, GradedMonomial]]:
    """All (power, monomial) slots of weight 2(N+1), power 0..N-1, in a fixed order."""
    check_level(N)
    return [(i, mono) for i in range(N) for mono in monomial_basis(2 * (N + 1 - i))]


def discover_relation(N: int, order: int | None = None) -> RelationPoly:
    """Solve for the relation coefficients from the q-expansions alone."""
    check_level(N)
    if order is None:
        order = sturm_order(N) + DEFAULT_MARGIN
    unknowns = relation_unknowns(N)
    et = series_Etilde(N, order)
    powers = [QSeries.one(order)]
    for _ in range(N + 1):
        powers.append(mul(powers[-1], et))
    columns = [mul(powers[i], mono.series(order)).coeffs for i, mono in unknowns]
    matrix = [[col[n] for col in columns] for n in range(order + 1)]
    sol = exact_linear_solve(matrix, powers[N + 1].coeffs)
    if sol.status is SolveStatus.INCONSISTENT:
        raise NoRelation(f"no relation of the expected shape exists for N={N} (order {order})")
    if sol.status is SolveStatus.UNDERDETERMINED:
        raise NotUnique(f"relation for N={N} not determined at order {order} (rank {sol.rank})")
    return RelationPoly(N, tuple(RelationTerm(i, mono, c)
                                 for (i, mono), c in zip(unknowns, sol.values)))


@dataclass
class RelationComparison:
    level: int
    discovered: RelationPoly
    printed: RelationPoly
    differences: list = field(default_factory=list)

    @property
    def matches(self) -> bool:
        return not self.differences


def compare_with_printed(rel: RelationPoly) -> RelationComparison:
    printed = PRINTED_RELATIONS[rel.level]
    return RelationComparison(rel.level, rel, printed, rel.differences(printed))
