"""Truncated q-expansions with exact rational coefficients."""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

SUPPORTED_LEVELS = (2, 3, 5, 7)


class UnsupportedLevel(ValueError):
    pass


def check_level(N: int) -> int:
    if N not in SUPPORTED_LEVELS:
        raise UnsupportedLevel(f"level {N} not in {SUPPORTED_LEVELS}")
    return N


def sigma(k: int, n: int) -> int:
    """Sum of d**k over the positive divisors d of n."""
    if n < 1:
        raise ValueError("n must be positive")
    total = 0
    d = 1
    while d * d <= n:
        if n % d == 0:
            total += d ** k
            e = n // d
            if e != d:
                total += e ** k
        d += 1
    return total


@lru_cache(maxsize=None)
def sigma_table(k: int, order: int) -> tuple[int, ...]:
    """(0, sigma_k(1), ..., sigma_k(order)) by a divisor sieve."""
    table = [0] * (order + 1)
    for d in range(1, order + 1):
        dk = d ** k
        for n in range(d, order + 1, d):
            table[n] += dk
    return tuple(table)


@dataclass(frozen=True)
class QSeries:
    """sum_{n=0}^{order} coeffs[n] q**n + O(q**(order+1))."""

    coeffs: tuple[Fraction, ...]

    def __post_init__(self):
        if not self.coeffs:
            raise ValueError("a series needs at least the constant term")

    @classmethod
    def from_list(cls, values: Iterable) -> "QSeries":
        return cls(tuple(Fraction(v) for v in values))

    @classmethod
    def one(cls, order: int) -> "QSeries":
        return cls((Fraction(1),) + (Fraction(0),) * order)

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, n: int) -> Fraction:
        return self.coeffs[n]

    def __len__(self) -> int:
        return len(self.coeffs)

    def truncate(self, order: int) -> "QSeries":
        if order > self.order:
            raise ValueError(f"cannot extend a series known to O(q^{self.order + 1})")
        return QSeries(self.coeffs[: order + 1])

    def __add__(self, other: "QSeries") -> "QSeries":
        return add(self, other)

    def __sub__(self, other: "QSeries") -> "QSeries":
        return add(self, scale(-1, other))

    def __mul__(self, other: "QSeries") -> "QSeries":
        return mul(self, other)

    def __rmul__(self, c) -> "QSeries":
        return scale(c, self)

    def __pow__(self, e: int) -> "QSeries":
        return pow(self, e)


def add(a: QSeries, b: QSeries) -> QSeries:
    m = min(a.order, b.order)
    return QSeries(tuple(a.coeffs[n] + b.coeffs[n] for n in range(m + 1)))


def scale(c, a: QSeries) -> QSeries:
    c = Fraction(c)
    return QSeries(tuple(c * x for x in a.coeffs))


def mul(a: QSeries, b: QSeries) -> QSeries:
    """Cauchy product truncated at the smaller order."""
    m = min(a.order, b.order)
    # integer fast path: all coefficients in this package are integral
    if all(x.denominator == 1 for x in a.coeffs[: m + 1]) and all(
        x.denominator == 1 for x in b.coeffs[: m + 1]
    ):
        ai = [x.numerator for x in a.coeffs[: m + 1]]
        bi = [x.numerator for x in b.coeffs[: m + 1]]
        out = [sum(ai[j] * bi[n - j] for j in range(n + 1)) for n in range(m + 1)]
        return QSeries(tuple(Fraction(x) for x in out))
    ac, bc = a.coeffs, b.coeffs
    return QSeries(
        tuple(sum((ac[j] * bc[n - j] for j in range(n + 1)), Fraction(0)) for n in range(m + 1))
    )


def pow(a: QSeries, e: int) -> QSeries:
    if e < 0:
        raise ValueError("negative powers are not supported")
    result = QSeries.one(a.order)
    base = a
    while e:
        if e & 1:
            result = mul(result, base)
        e >>= 1
        if e:
            base = mul(base, base)
    return result


def substitute_qN(a: QSeries, N: int) -> QSeries:
    """f(q) -> f(q**N), keeping the original truncation order."""
    if N < 1:
        raise ValueError("N must be >= 1")
    out = [Fraction(0)] * (a.order + 1)
    for n in range(0, a.order // N + 1):
        out[N * n] = a.coeffs[n]
    return QSeries(tuple(out))


# -- Eisenstein series ------------------------------------------------------------

def _eisenstein(k: int, factor: int, order: int) -> QSeries:
    if order < 0:
        raise ValueError("order must be >= 0")
    sig = sigma_table(k, order)
    return QSeries((Fraction(1),) + tuple(Fraction(factor * sig[n]) for n in range(1, order + 1)))


@lru_cache(maxsize=None)
def series_E2(order: int) -> QSeries:
    return _eisenstein(1, -24, order)


@lru_cache(maxsize=None)
def series_E4(order: int) -> QSeries:
    return _eisenstein(3, 240, order)


@lru_cache(maxsize=None)
def series_E6(order: int) -> QSeries:
    return _eisenstein(5, -504, order)


@lru_cache(maxsize=None)
def series_Etilde(N: int, order: int) -> QSeries:
    """(N E2(N tau) - E2(tau)) / (N - 1), coefficientwise."""
    check_level(N)
    if order < 0:
        raise ValueError("order must be >= 0")
    sig = sigma_table(1, order)
    c = Fraction(24, N - 1)
    coeffs = [Fraction(1)]
    for n in range(1, order + 1):
        s = sig[n] - (N * sig[n // N] if n % N == 0 else 0)
        coeffs.append(c * s)
    return QSeries(tuple(coeffs))


@dataclass(frozen=True)
class SeriesId:
    kind: str  # "E2", "E4", "E6" or "ETILDE"
    level: int | None = None

    def __post_init__(self):
        if self.kind not in ("E2", "E4", "E6", "ETILDE"):
            raise ValueError(f"unknown series kind {self.kind!r}")
        if self.kind == "ETILDE":
            check_level(self.level)
        elif self.level is not None:
            raise ValueError("only ETILDE carries a level")

    @property
    def weight(self) -> int:
        return {"E2": 2, "E4": 4, "E6": 6, "ETILDE": 2}[self.kind]

    def series(self, order: int) -> QSeries:
        if self.kind == "E2":
            return series_E2(order)
        if self.kind == "E4":
            return series_E4(order)
        if self.kind == "E6":
            return series_E6(order)
        return series_Etilde(self.level, order)

    def __str__(self) -> str:
        return f"Etilde{self.level}" if self.kind == "ETILDE" else self.kind

    @classmethod
    def parse(cls, text: str) -> "SeriesId":
        m = re.fullmatch(r"(?i)(E2|E4|E6)|(?:Etilde|Et)_?(\d+)", text.strip())
        if not m:
            raise ValueError(f"cannot parse series name {text!r}")
        if m.group(1):
            return cls(m.group(1).upper())
        return cls("ETILDE", int(m.group(2)))


E2 = SeriesId("E2")
E4 = SeriesId("E4")
E6 = SeriesId("E6")


def etilde(N: int) -> SeriesId:
    return SeriesId("ETILDE", N)


ALL_SERIES: Sequence[SeriesId] = (E2, E4, E6) + tuple(etilde(N) for N in SUPPORTED_LEVELS)
