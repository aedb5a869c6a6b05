import random
from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from eisenzeros.exactnum import (AlgebraicPoint, Base, ComplexEnclosure, DivisorContainsZero,
                                 Form, QuadNumber, RealEnclosure, RemainderDiverges, enclose_pi,
                                 enclose_sqrt3, exp_enclosure, point_enclosure, round_down,
                                 round_up, sqrt_lower, sqrt_upper)

from oracles import ORACLE_DPS, encloses, euler_pi_bracket, mp, newton_sqrt3

rationals = st.fractions(min_value=-50, max_value=50, max_denominator=10 ** 6)


@st.composite
def intervals(draw):
    a, b = draw(rationals), draw(rationals)
    return RealEnclosure(min(a, b), max(a, b))


def test_pi_width_bits8():
    pi = enclose_pi(8)
    assert pi.lo < pi.hi
    assert pi.width <= Fraction(1, 256)


def test_pi_against_euler_formula():
    pi = enclose_pi(64)
    lo, hi = euler_pi_bracket(60)
    assert pi.intersects(RealEnclosure(lo, hi))
    assert pi.intersects(_decimal_ball("3.14159265358979323846"))
    with mpmath.workdps(50):
        assert mp(pi.lo) <= mpmath.pi <= mp(pi.hi)


def _decimal_ball(text: str) -> RealEnclosure:
    """Reals within one unit in the last place of a (rounded or truncated) decimal."""
    ulp = Fraction(1, 10 ** len(text.split(".")[1]))
    return RealEnclosure(Fraction(text) - ulp, Fraction(text) + ulp)


def test_pi_refines():
    assert enclose_pi(32).subset_of(enclose_pi(16))
    assert enclose_pi(256).width <= Fraction(1, 2 ** 256)


def test_bits_below_8_rejected():
    with pytest.raises(ValueError):
        enclose_pi(4)


@pytest.mark.parametrize("bits", [8, 16, 64, 200])
def test_sqrt3_defining_property(bits):
    s = enclose_sqrt3(bits)
    assert s.lo ** 2 <= 3 <= s.hi ** 2
    assert s.width <= Fraction(1, 2 ** bits)


def test_sqrt3_against_interval_newton():
    lo, hi = newton_sqrt3(10)
    assert hi - lo < Fraction(1, 10 ** 40)
    assert enclose_sqrt3(64).intersects(RealEnclosure(lo, hi))
    assert enclose_sqrt3(64).intersects(_decimal_ball("1.7320508075688772"))


def test_sqrt3_nested():
    assert enclose_sqrt3(32).subset_of(enclose_sqrt3(8))


def test_exp_of_zero_is_one():
    e = exp_enclosure(ComplexEnclosure(0), 10)
    assert e == ComplexEnclosure(1)


def test_euler_identity():
    z = ComplexEnclosure(0, enclose_pi(64))
    e = exp_enclosure(z, 64, bits=128)
    assert e.contains(-1, 0)
    assert e.width < Fraction(1, 10 ** 15)


def test_exp_minus_pi():
    e = exp_enclosure(ComplexEnclosure(-enclose_pi(64)), 64, bits=128)
    with mpmath.workdps(60):
        v = mpmath.exp(-mpmath.pi)
        assert mp(e.re.lo) <= v <= mp(e.re.hi)
    assert e.im.contains_zero()
    assert abs(float(e.re.lo) - 0.0432139) < 1e-7


def test_exp_remainder_precondition():
    with pytest.raises(RemainderDiverges):
        exp_enclosure(ComplexEnclosure(20), 10)


def test_interval_addition():
    assert RealEnclosure(1, 2) + RealEnclosure(3, 4) == RealEnclosure(4, 6)


def test_even_power_tightening():
    x = RealEnclosure(-1, 1)
    assert x ** 2 == RealEnclosure(0, 1)
    assert x * x == RealEnclosure(-1, 1)


def test_gaussian_fourth_power():
    z = ComplexEnclosure(1, 1) ** 4
    assert z == ComplexEnclosure(-4, 0)


def test_division_by_zero_interval():
    with pytest.raises(DivisorContainsZero):
        RealEnclosure(1) / RealEnclosure(-1, 1)
    with pytest.raises(DivisorContainsZero):
        ComplexEnclosure(1) / ComplexEnclosure(RealEnclosure(-1, 1), RealEnclosure(-1, 1))


def test_rounding_is_outward():
    x = Fraction(1, 3)
    assert round_down(x, 10) <= x <= round_up(x, 10)
    assert round_up(x, 10) - round_down(x, 10) <= Fraction(1, 1024)
    assert round_down(Fraction(3, 4), 10) == Fraction(3, 4)


@given(st.fractions(min_value=0, max_value=1000, max_denominator=10 ** 6))
def test_sqrt_bounds(x):
    lo, hi = sqrt_lower(x, 40), sqrt_upper(x, 40)
    assert lo * lo <= x <= hi * hi


@given(intervals(), intervals())
def test_real_ops_contain_pointwise(a, b):
    for x in (a.lo, a.hi, a.mid):
        for y in (b.lo, b.hi, b.mid):
            assert (a + b).contains(x + y)
            assert (a - b).contains(x - y)
            assert (a * b).contains(x * y)
            if not b.contains_zero():
                assert (a / b).contains(x / y)
    assert (a ** 3).contains(a.mid ** 3)
    assert (a ** 2).contains(a.lo ** 2)


@given(intervals(), intervals(), intervals(), intervals())
def test_complex_ops_contain_pointwise(a, b, c, d):
    z, w = ComplexEnclosure(a, b), ComplexEnclosure(c, d)
    zx = complex(float(a.mid), float(b.mid))
    zp = (a.mid, b.mid)
    wp = (c.mid, d.mid)
    prod = (zp[0] * wp[0] - zp[1] * wp[1], zp[0] * wp[1] + zp[1] * wp[0])
    assert (z * w).contains(*prod)
    assert z.sqr().contains(zp[0] ** 2 - zp[1] ** 2, 2 * zp[0] * zp[1])
    assert (z ** 3).contains(*_exact_pow(zp, 3))
    assert z.abs_lower() <= abs(zx) + 1e-9
    if not w.abs_sq().contains_zero():
        n = wp[0] ** 2 + wp[1] ** 2
        assert (z / w).contains((zp[0] * wp[0] + zp[1] * wp[1]) / n,
                                (zp[1] * wp[0] - zp[0] * wp[1]) / n)


def _exact_pow(z, e):
    r = (Fraction(1), Fraction(0))
    for _ in range(e):
        r = (r[0] * z[0] - r[1] * z[1], r[0] * z[1] + r[1] * z[0])
    return r


def test_soundness_random_rational_inputs_vs_mpmath():
    # 10^4 random rational inputs, every operation, 200-digit reference
    rng = random.Random(20261016)

    def rq():
        return Fraction(rng.randint(-10 ** 6, 10 ** 6), rng.randint(1, 10 ** 4))

    with mpmath.workdps(ORACLE_DPS):
        for _ in range(10 ** 4):
            x, y, u, v = rq(), rq(), rq(), rq()
            a, b = RealEnclosure(x).inflate(Fraction(1, 10 ** 9)), RealEnclosure(y)
            z, w = ComplexEnclosure(x, y), ComplexEnclosure(u, v)
            X, Y = mp(x), mp(y)
            Z, W = mpmath.mpc(X, Y), mpmath.mpc(mp(u), mp(v))
            assert (a + b).contains(x + y)
            assert mp((a * b).lo) <= X * Y <= mp((a * b).hi)
            if y != 0:
                q = (a / b).rounded(64)
                assert mp(q.lo) <= X / Y <= mp(q.hi)
            assert encloses((z * w).rounded(64), Z * W)
            assert encloses((z ** 3).rounded(64), Z ** 3)
            if u or v:
                assert encloses((z / w).rounded(64), Z / W)


def test_exp_soundness_random():
    rng = random.Random(7)
    with mpmath.workdps(ORACLE_DPS):
        for _ in range(200):
            x = Fraction(rng.randint(-700, 700), 100)
            y = Fraction(rng.randint(-400, 400), 100)
            e = exp_enclosure(ComplexEnclosure(x, y), 48, bits=96)
            assert encloses(e, mpmath.exp(mpmath.mpc(mp(x), mp(y))))


def test_exp_refinement_never_disjoint():
    z = ComplexEnclosure(Fraction(-3, 2), Fraction(5, 3))
    coarse = exp_enclosure(z, 24, bits=40)
    fine = exp_enclosure(z, 64, bits=160)
    assert coarse.intersects(fine)
    assert fine.width < coarse.width


def test_point_enclosure_inverted_i():
    assert point_enclosure(AlgebraicPoint(Base.I, 1), 64) == ComplexEnclosure(Fraction(-1, 2), Fraction(1, 2))
    assert point_enclosure(AlgebraicPoint(Base.I, 2), 64) == ComplexEnclosure(Fraction(-2, 5), Fraction(1, 5))


@pytest.mark.parametrize("k", range(-7, 8))
def test_base_i_points_are_exact(k):
    assert point_enclosure(AlgebraicPoint(Base.I, k), 32).is_point()


def test_point_enclosure_rho_plus_2():
    p = point_enclosure(AlgebraicPoint(Base.RHO, 2), 64)
    assert p.re == RealEnclosure(Fraction(-1, 2))
    with mpmath.workdps(50):
        v = mpmath.sqrt(3) / 6
        assert mp(p.im.lo) <= v <= mp(p.im.hi)


def test_quadratic_field_arithmetic():
    rho = QuadNumber.of(0, 1, Base.RHO)
    assert rho ** 3 == QuadNumber.of(1, 0, Base.RHO)
    assert (rho * rho + rho + 1).is_zero()
    i = QuadNumber.of(0, 1, Base.I)
    assert i * i == QuadNumber.of(-1, 0, Base.I)
    assert (i + 2).norm() == 5
    assert (rho + 2).norm() == 3
    x = QuadNumber.of(Fraction(3, 7), -2, Base.RHO)
    assert x * x.inverse() == QuadNumber.of(1, 0, Base.RHO)


def test_base_point_labels():
    assert AlgebraicPoint(Base.RHO, 5).label() == "-1/(rho+5)"
    assert AlgebraicPoint(Base.I, -1).spec() == "inv:i-1"
    assert AlgebraicPoint.base_point(Base.I).form is Form.BASE
    with pytest.raises(ValueError):
        AlgebraicPoint(Base.I, 2, Form.BASE)
