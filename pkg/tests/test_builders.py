from collections import namedtuple
from fractions import Fraction
from typing import List

import pytest
from hypothesis import given, settings, strategies as st

from conftest import Raises, case_name
from qlambert.builders import BilinearSpec, ONE, OrderedDoubleSpec, Param, \
    Q, Weight, build_bilateral, build_bilinear, build_double, build_lambert, \
    build_ordered_double, build_poch, build_special, build_weighted_lambert, \
    sigma_gf
from qlambert.errors import DomainError, UnknownBuilder
from qlambert.qseries import QSeries
from qlambert.scalars import Dual

D = 16

_0 = Fraction(0)


# brute force oracles on plain coefficient lists

def poly_mul(a: List[Fraction], b: List[Fraction]) -> List[Fraction]:
    out = [_0] * len(a)
    for i, ai in enumerate(a):
        for j in range(len(a) - i):
            out[i + j] += ai * b[j]
    return out


def geom(c, k, degree=D) -> List[Fraction]:
    out = [_0] * (degree + 1)
    if k == 0:
        out[0] = 1 / (1 - Fraction(c))
        return out
    for j in range(degree // k + 1):
        out[j * k] = Fraction(c) ** j
    return out


def monomial(c, e, degree=D) -> List[Fraction]:
    out = [_0] * (degree + 1)
    if e <= degree:
        out[e] = Fraction(c)
    return out


def brute_lambert(x: Param, ys, base, weight=None, n0=0) -> List[Fraction]:
    weight = weight or (lambda n: 1)
    total = [_0] * (D + 1)
    n = n0
    while x.e * n <= D:
        term = monomial(weight(n) * x.c ** n, x.e * n)
        for y in ys:
            term = poly_mul(term, geom(y.c, y.e + base * n))
        total = [a + b for a, b in zip(total, term)]
        n += 1
    return total


def divisor_lambert(c, y: Param, base) -> List[Fraction]:
    # L(c, d*q^f; q^b) for a constant x = c, coefficient by coefficient
    d, f = y.c, y.e
    out = [1 / (1 - c) + (d / (1 - d) if f == 0 else 0)]
    for k in range(1, D + 1):
        acc = _0
        for j in range(1, k + 1):
            if k % j:
                continue
            t = k // j - f
            if t >= 0 and t % base == 0:
                acc += c ** (t // base) * d ** j
        out.append(acc)
    return out


def brute_double(x: Param, y: Param, z: Param, w: Param, base) -> List[Fraction]:
    total = [_0] * (D + 1)
    for m in range(D // y.e + 1):
        for n in range(m + 1):
            e = x.e * n + y.e * m
            if e > D:
                continue
            term = monomial(x.c ** n * y.c ** m, e)
            term = poly_mul(term, geom(w.c, w.e + base * n))
            term = poly_mul(term, geom(z.c, z.e + base * m))
            total = [a + b for a, b in zip(total, term)]
    return total


def brute_double_constant_y(x: Param, y: Param, z: Param, w: Param,
                            base) -> List[Fraction]:
    # every z- and w-factor with index above D is 1, so the m > D part
    # sums in closed form
    d = y.c
    total = [_0] * (D + 1)
    for m in range(D + 1):
        for n in range(m + 1):
            if x.e * n > D:
                continue
            term = monomial(x.c ** n * d ** m, x.e * n)
            term = poly_mul(term, geom(w.c, w.e + base * n))
            term = poly_mul(term, geom(z.c, z.e + base * m))
            total = [a + b for a, b in zip(total, term)]
    for n in range(D + 1):
        term = poly_mul(monomial(x.c ** n, x.e * n), geom(w.c, w.e + base * n))
        total = [a + b * d ** (D + 1) / (1 - d) for a, b in zip(total, term)]
    if x.e == 0:
        xy = x.c * d
        total[0] += xy ** (D + 1) / ((1 - xy) * (1 - d))
    return total


def brute_bilateral(c, y: Param, base) -> List[Fraction]:
    total = divisor_lambert(c, y, base)
    m = 1
    while base * m - y.e <= D:
        k = y.e - base * m
        if k >= 0:
            part = geom(y.c, k)
        else:
            # 1/(1 - d q^-s) = -sum_{j >= 1} d^-j q^(j*s)
            part = [_0] * (D + 1)
            for j in range(1, D // -k + 1):
                part[-k * j] = -y.c ** -j
        total = [a + c ** -m * b for a, b in zip(total, part)]
        m += 1
    return total


def brute_bilinear(spec: BilinearSpec) -> List[Fraction]:
    total = [_0] * (D + 1)
    for m in range(1, D + 1):
        for n in range(1, D + 1):
            e = spec.alpha * m * n + (spec.beta + spec.z.e) * m + \
                (spec.gamma + spec.x.e) * n + spec.delta
            if e > D:
                continue
            coeff = spec.sign ** m * spec.x.c ** n * spec.z.c ** m
            term = monomial(coeff, e)
            term = poly_mul(term, geom(spec.u.c, spec.u.e + spec.a * n + spec.a0))
            term = poly_mul(term, geom(spec.v.c, spec.v.e + spec.b * m + spec.b0))
            total = [a + b for a, b in zip(total, term)]
    return total


def brute_ordered_double(spec: OrderedDoubleSpec) -> List[Fraction]:
    # count q^(u*n + v*m + i*n + j*m) over 1 <= n < m and i, j >= 0
    total = [_0] * (D + 1)
    for n in range(1, D + 1):
        for m in range(n + 1, D + 1):
            for i in range(D + 1):
                for j in range(D + 1):
                    k = spec.u * n + spec.v * m + i * n + j * m
                    if k > D:
                        break
                    total[k] += spec.weight(n)
    return total


def brute_poch(a: Param, base, n) -> List[Fraction]:
    # factors past k = D are 1 modulo q^(D+1)
    total = monomial(1, 0)
    for k in range(D + 1 if n is None else n):
        factor = monomial(1, 0)
        if a.e + base * k <= D:
            factor[a.e + base * k] -= a.c
        total = poly_mul(total, factor)
    return total



def strings(series: QSeries) -> List[str]:
    return series.to_strings()


small = st.fractions(min_value=-1, max_value=1, max_denominator=8)
inside = small.filter(lambda c: abs(c) < 1)
lifted = st.builds(Param, small, st.integers(1, 4))
denominators = st.one_of(lifted, st.builds(Param, inside, st.just(0)))
bases = st.integers(1, 3)


class TestLambert:
    @settings(max_examples=25, deadline=None)
    @given(lifted, st.lists(denominators, min_size=1, max_size=3), bases)
    def test_lifted_x_matches_direct_sum(self, x, ys, base):
        assert list(build_lambert(x, ys, base, D).coeffs) == \
            brute_lambert(x, ys, base)

    @settings(max_examples=25, deadline=None)
    @given(inside, denominators, bases)
    def test_constant_x_matches_divisor_sum(self, c, y, base):
        assert list(build_lambert(Param(c), [y], base, D).coeffs) == \
            divisor_lambert(c, y, base)

    def test_no_denominators(self):
        # sum 2^-n over n >= 0
        assert build_lambert(Param(Fraction(1, 2)), [], 1, 3).to_strings() == \
            ['2', '0', '0', '0']

    def test_zero_x(self):
        s = build_lambert(Param(0), [Param(Fraction(1, 2))], 1, 3)
        assert strings(s) == ['2', '0', '0', '0']


BadCase = namedtuple('BC', 'call,raises,name')


def bad_cases():
    half = Param(Fraction(1, 2))
    return [
        BadCase(name='x equals one',
                call=lambda: build_lambert(ONE, [Q], 1, D),
                raises=Raises(exc=DomainError, kwargs=dict(match=r'`x`'))),
        BadCase(name='constant denominator vanishes',
                call=lambda: build_lambert(Q, [ONE], 1, D),
                raises=Raises(exc=DomainError, kwargs=dict(match=r'`y1`'))),
        BadCase(name='analytic region',
                call=lambda: build_lambert(Param(2), [Q], 1, D, analytic=True),
                raises=Raises(exc=DomainError, kwargs=dict(match=r'analytic'))),
        BadCase(name='base zero',
                call=lambda: build_lambert(Q, [Q], 0, D),
                raises=Raises(exc=DomainError, kwargs=dict(match=r'`base`'))),
        BadCase(name='bilateral lifted x',
                call=lambda: build_bilateral(Q, half, 1, D),
                raises=Raises(exc=DomainError, kwargs=dict(match=r'c != 0'))),
        BadCase(name='bilateral zero y',
                call=lambda: build_bilateral(half, Param(0), 1, D),
                raises=Raises(exc=DomainError, kwargs=dict(match=r'`y`'))),
        BadCase(name='double w equals one',
                call=lambda: build_double(Q, Q, Q, ONE, 1, D),
                raises=Raises(exc=DomainError, kwargs=dict(match=r'`w`'))),
        BadCase(name='double tail denominator',
                call=lambda: build_double(Param(2), half, Q, Q, 1, D),
                raises=Raises(exc=DomainError, kwargs=dict(match=r'c_x\*c_y'))),
        BadCase(name='bilinear without hyperbola',
                call=lambda: build_bilinear(D, BilinearSpec(alpha=0)),
                raises=Raises(exc=DomainError, kwargs=dict(match=r'alpha'))),
        BadCase(name='bilinear negative denominator exponent',
                call=lambda: build_bilinear(D, BilinearSpec(u=ONE, a=1, a0=-2)),
                raises=Raises(exc=DomainError, kwargs=dict(match=r'`u`'))),
        BadCase(name='weighted polylog tail',
                call=lambda: build_weighted_lambert(Weight((0, 1)), half, [Q], 1, D),
                raises=Raises(exc=DomainError, kwargs=dict(match=r'polylog'))),
        BadCase(name='ordered double exponents',
                call=lambda: build_ordered_double(D, OrderedDoubleSpec(u=0)),
                raises=Raises(exc=DomainError)),
        BadCase(name='negative q exponent',
                call=lambda: Param(1, -1),
                raises=Raises(exc=DomainError, kwargs=dict(match=r'negative'))),
        BadCase(name='unknown special',
                call=lambda: build_special('Z', D),
                raises=Raises(exc=UnknownBuilder, kwargs=dict(match=r'`Z`'))),
        BadCase(name='negative sigma order',
                call=lambda: sigma_gf(-1, 1, D),
                raises=Raises(exc=DomainError)),
    ]


@pytest.mark.parametrize('case', bad_cases(), ids=case_name)
def test_domain_errors(case: BadCase):
    with pytest.raises(case.raises.exc, **case.raises.kwargs):
        case.call()


class TestParam:
    def test_from_series_monomial(self):
        p = Param.from_series(QSeries.monomial(Fraction(-3), 2, 4))
        assert (p.c, p.e) == (-3, 2)

    def test_from_series_zero(self):
        assert Param.from_series(QSeries.zero(4)).is_zero

    def test_from_series_polynomial(self):
        with pytest.raises(DomainError, match='monomial'):
            Param.from_series(QSeries((Fraction(1), Fraction(1))))

    def test_str(self):
        assert str(Param(Fraction(-1, 2), 3)) == '-1/2*q^3'
        assert str(Param(2)) == '2'


class TestBilateral:
    @settings(max_examples=25, deadline=None)
    @given(inside.filter(bool), st.builds(Param, inside.filter(bool),
                                          st.integers(0, 4)), bases)
    def test_matches_direct_sum(self, c, y, base):
        assert list(build_bilateral(Param(c), y, base, D).coeffs) == \
            brute_bilateral(c, y, base)

    def test_leading_coefficients(self):
        s = build_bilateral(Param(Fraction(1, 2)), Param(Fraction(1, 3)), 1, 1)
        assert strings(s) == ['5/2', '-35/6']

    def test_lifted_y(self):
        # x = 1/2, y = q/3: the n = -1 term is 2/(1 - 1/3)
        x, y = Param(Fraction(1, 2)), Param(Fraction(1, 3), 1)
        s = build_bilateral(x, y, 1, 0)
        # positive part: 1/(1 - q/3) + sum_{n>=1} 2^-n at q^0
        assert s.coeff(0) == 1 + 1 + 3

    def test_pole_on_lattice(self):
        with pytest.raises(DomainError, match='`y`'):
            build_bilateral(Param(Fraction(1, 2)), Q, 1, 4)


class TestDouble:
    @settings(max_examples=25, deadline=None)
    @given(st.builds(Param, small, st.integers(0, 3)), lifted,
           denominators, denominators, bases)
    def test_matches_direct_double_sum(self, x, y, z, w, base):
        assert list(build_double(x, y, z, w, base, D).coeffs) == \
            brute_double(x, y, z, w, base)

    @settings(max_examples=25, deadline=None)
    @given(st.builds(Param, small, st.integers(0, 3)), inside.filter(bool),
           denominators, denominators, bases)
    def test_constant_y_matches_direct_sum(self, x, d, z, w, base):
        y = Param(d)
        assert list(build_double(x, y, z, w, base, D).coeffs) == \
            brute_double_constant_y(x, y, z, w, base)

    @pytest.mark.parametrize('x,y,z,w', [
        (Fraction(1, 2), Fraction(1, 2), Fraction(1, 2), Fraction(1, 2)),
        (Fraction(-1, 3), Fraction(2, 5), Fraction(1, 7), Fraction(-3, 4)),
    ])
    def test_constant_term_closed_form(self, x, y, z, w):
        s = build_double(Param(x), Param(y), Param(z), Param(w), 1, D)
        expected = 1 / ((1 - w) * (1 - z)) + y / ((1 - y) * (1 - w)) + \
            x * y / ((1 - x * y) * (1 - y))
        assert s.coeff(0) == expected

    def test_zero_y(self):
        s = build_double(Q, Param(0), Param(Fraction(1, 2)), Q, 1, 3)
        assert s == QSeries.constant(Fraction(1), 3).div_binomial(
            Fraction(1), 1).div_binomial(Fraction(1, 2), 0)

    def test_double_at_q_base_two(self):
        # 2A(q, q, q^2, -q; q^2) starts 2 + ... + 6 q^2
        s = build_double(Q, Q, Param(1, 2), Param(-1, 1), 2, 4) * 2
        assert s.coeff(0) == 2
        assert s.coeff(2) == 6


class TestSums:
    @settings(max_examples=25, deadline=None)
    @given(st.builds(
        BilinearSpec,
        sign=st.sampled_from([1, -1]), alpha=st.integers(1, 2),
        beta=st.integers(0, 2), gamma=st.integers(0, 2), delta=st.integers(0, 2),
        x=st.builds(Param, small, st.integers(0, 2)),
        z=st.builds(Param, small, st.integers(0, 2)),
        u=st.builds(Param, inside, st.integers(0, 2)),
        a=st.integers(1, 2), a0=st.integers(0, 2),
        v=st.builds(Param, inside, st.integers(0, 2)),
        b=st.integers(1, 2), b0=st.integers(0, 2)))
    def test_bilinear_matches_direct_sum(self, spec):
        assert list(build_bilinear(D, spec).coeffs) == brute_bilinear(spec)

    @settings(max_examples=25, deadline=None)
    @given(st.lists(small, min_size=1, max_size=3), st.integers(1, 3),
           st.integers(1, 3))
    def test_ordered_double_matches_direct_sum(self, coeffs, u, v):
        spec = OrderedDoubleSpec(Weight(tuple(coeffs)), u, v)
        assert list(build_ordered_double(D, spec).coeffs) == \
            brute_ordered_double(spec)

    @settings(max_examples=25, deadline=None)
    @given(st.builds(Param, small, st.integers(0, 3)), bases,
           st.one_of(st.none(), st.integers(0, 6)))
    def test_poch_matches_direct_product(self, a, base, n):
        assert list(build_poch(a, base, n, D).coeffs) == brute_poch(a, base, n)

    def test_ordered_double_a002133(self):
        s = build_ordered_double(8, OrderedDoubleSpec())
        assert strings(s)[3:6] == ['1', '2', '5']

    def test_bilinear_direct(self):
        # sum_{m,n >= 1} q^(mn) is the divisor count generating function
        s = build_bilinear(8, BilinearSpec())
        assert strings(s) == ['0', '1', '2', '2', '3', '2', '4', '2', '4']

    def test_weighted_constant_delegates(self):
        w = Weight((3,))
        assert build_weighted_lambert(w, Q, [Q], 1, D) == \
            build_lambert(Q, [Q], 1, D) * 3

    @settings(max_examples=25, deadline=None)
    @given(st.lists(small, min_size=1, max_size=3), st.integers(0, 3), lifted,
           st.lists(lifted, max_size=2), bases)
    def test_weighted_matches_direct_sum(self, coeffs, n0, x, ys, base):
        weight = Weight(tuple(coeffs), n0)
        assert list(build_weighted_lambert(weight, x, ys, base, D).coeffs) == \
            brute_lambert(x, ys, base, weight, n0)

    def test_infinite_poch_is_pentagonal(self):
        s = build_poch(Q, 1, None, 15)
        nonzero = {k: c for k, c in enumerate(s.coeffs) if c}
        assert nonzero == {0: 1, 1: -1, 2: -1, 5: 1, 7: 1, 12: -1, 15: -1}

    def test_finite_poch(self):
        # (q; q)_2 = (1 - q)(1 - q^2)
        assert strings(build_poch(Q, 1, 2, 4)) == ['1', '-1', '-1', '1', '0']


class TestSpecials:
    def test_sigma_gf(self):
        assert strings(sigma_gf(1, 1, 4)) == ['0', '1', '3', '4', '7']

    def test_sigma_gf_stride(self):
        assert strings(sigma_gf(0, 2, 6)) == ['0', '0', '1', '0', '2', '0', '2']

    def test_y_leading_coefficients(self):
        assert strings(build_special('Y', 5)) == ['0', '0', '0', '-1', '0', '-2']

    def test_f1_equals_f3(self):
        f1, f3 = build_special('f1', 12), build_special('f3', 12)
        assert f1 == f3
        assert f3.coeff(3) == 2

    def test_g_and_h(self):
        g, h = build_special('G', 6), build_special('H', 6)
        assert strings(g) == ['0', '1', '2', '2', '3', '2', '4']
        # sigma_1(n) - sigma_0(n)
        assert strings(h) == ['0', '0', '1', '2', '4', '4', '8']

    def test_low_degrees(self):
        assert build_special('H', 1).is_zero()
        assert build_special('G', 0).is_zero()


class TestAnchors:
    def test_lambert_squared_denominator(self):
        half = Param(Fraction(1, 2))
        assert build_lambert(Param(1, 2), [half, half], 1, 10).coeff(3) == 1

    def test_lambert_divisor_count(self):
        assert build_lambert(Q, [Q], 1, 10).coeff(3) == 3

    def test_double_degenerate_constant(self):
        s = build_double(Param(0), Param(0), Param(Fraction(1, 3)),
                         Param(Fraction(1, 5)), 1, 4)
        assert strings(s) == ['15/8', '0', '0', '0', '0']

    def test_double_three_zones(self):
        half, third = Param(Fraction(1, 2)), Param(Fraction(1, 3))
        assert build_double(half, half, third, third, 1, 4).coeff(0) == \
            Fraction(53, 12)

    def test_x_head(self):
        x = build_special('X', 6)
        assert (x.coeff(0), x.coeff(1), x.coeff(3)) == (1, 2, 3)

    def test_sigma_gf_at_stride_two(self):
        assert sigma_gf(1, 2, 8).coeff(6) == 4

    def test_poch_head(self):
        assert strings(build_poch(Q, 1, None, 5)) == ['1', '-1', '-1', '0', '0', '1']

    def test_poch_of_zero_and_empty(self):
        one = QSeries.constant(Fraction(1), 4)
        assert build_poch(Param(0), 1, None, 4) == one
        assert build_poch(Param(Fraction(1, 2)), 1, 0, 4) == one

    def test_ordered_double_zero_weight(self):
        assert build_ordered_double(10, OrderedDoubleSpec(Weight((0,)))).is_zero()

    def test_y_is_odd(self):
        y = build_special('Y', 30)
        assert not any(y.coeffs[0::2])


class TestDualParameters:
    def test_derivative_of_lambert_is_weighted(self):
        # d/dc sum (c q)^n / (1 - q^(n+1)) at c = 1
        x = Param(Dual(1, 1), 1)
        derivative = build_lambert(x, [Q], 1, D).deriv_part()
        assert derivative == build_weighted_lambert(Weight((0, 1)), Q, [Q], 1, D)

    def test_value_part_unchanged(self):
        x = Param(Dual(Fraction(1, 2), 1), 1)
        assert build_double(x, Q, Q, Q, 1, D).value_part() == \
            build_double(Param(Fraction(1, 2), 1), Q, Q, Q, 1, D)

    def test_constant_dual_tail(self):
        # d/dc sum_{n>=0} c^n = 1/(1-c)^2
        x = Param(Dual(Fraction(1, 2), 1))
        s = build_lambert(x, [Param(0)], 1, 3)
        assert s.coeff(0) == Dual(2, 4)
