from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from qlambert.errors import IllFormedShift
from qlambert.qseries import QSeries, from_coeffs, qs_ring
from qlambert.scalars import Dual

D = 8

series = st.lists(st.fractions(max_denominator=20), min_size=D + 1,
                  max_size=D + 1).map(QSeries)


def geometric(c, k, degree=D):
    # 1/(1 - c q^k) by its definition
    coeffs = [Fraction(0)] * (degree + 1)
    for j in range(0, degree // k + 1):
        coeffs[j * k] = Fraction(c) ** j
    return QSeries(coeffs)


class TestConstruction:
    def test_zero(self):
        z = QSeries.zero(3)
        assert z.degree == 3
        assert z.is_zero()
        assert z.valuation() is None

    def test_monomial_past_degree_is_zero(self):
        assert QSeries.monomial(Fraction(1), 5, 3).is_zero()

    def test_negative_exponent(self):
        with pytest.raises(IllFormedShift):
            QSeries.monomial(Fraction(1), -1, 3)

    def test_from_coeffs_pads(self):
        s = from_coeffs([1, '1/2'], 3)
        assert s.to_strings() == ['1', '1/2', '0', '0']

    def test_coeff_out_of_range(self):
        with pytest.raises(IndexError):
            QSeries.zero(2).coeff(3)

    def test_str(self):
        assert str(from_coeffs([1, 0, -2])) == '1 + -2*q^2 + O(q^3)'


class TestRing:
    @given(series, series, series)
    def test_distributive(self, a, b, c):
        assert a * (b + c) == a * b + a * c

    @given(series, series)
    def test_commutative(self, a, b):
        assert a * b == b * a

    @given(series)
    def test_additive_inverse(self, a):
        assert (a - a).is_zero()

    def test_mixed_degrees_truncate(self):
        a = from_coeffs([1, 1, 1, 1])
        b = from_coeffs([1, 1])
        assert (a + b).degree == 1
        assert (a * b).degree == 1

    def test_power(self):
        # (1 + q)^3
        assert (from_coeffs([1, 1], 4) ** 3).to_strings() == \
            ['1', '3', '3', '1', '0']

    def test_qs_ring(self):
        a = from_coeffs([1, 2])
        assert qs_ring(a, a, 'mul') == a * a
        assert qs_ring(a, None, 'neg') == -a
        with pytest.raises(ValueError):
            qs_ring(a, a, 'div')


class TestGeometric:
    @pytest.mark.parametrize('c,k', [(1, 1), (Fraction(-1, 2), 3),
                                     (Fraction(2, 3), 2), (-1, 1)])
    def test_div_binomial(self, c, k):
        one = QSeries.constant(Fraction(1), D)
        assert one.div_binomial(Fraction(c), k) == geometric(c, k)

    def test_div_binomial_constant(self):
        one = QSeries.constant(Fraction(1), D)
        assert one.div_binomial(Fraction(1, 3), 0).coeff(0) == Fraction(3, 2)

    def test_div_binomial_singular(self):
        with pytest.raises(ZeroDivisionError):
            QSeries.constant(Fraction(1), D).div_binomial(Fraction(1), 0)

    @given(st.fractions(max_denominator=10), st.integers(1, D))
    def test_mul_undoes_div(self, c, k):
        one = QSeries.constant(Fraction(1), D)
        assert one.div_binomial(c, k).mul_binomial(c, k) == one

    @given(series.filter(lambda s: s.coeff(0) != 0))
    def test_unit_reciprocal(self, a):
        assert a * a.unit_reciprocal() == QSeries.constant(Fraction(1), D)

    def test_not_a_unit(self):
        with pytest.raises(ZeroDivisionError):
            from_coeffs([0, 1]).unit_reciprocal()

    def test_geometric_inverse(self):
        assert from_coeffs([0, 1], D).geometric_inverse() == geometric(1, 1)

    def test_geometric_inverse_needs_zero_constant(self):
        with pytest.raises(ValueError):
            from_coeffs([1, 1]).geometric_inverse()

    def test_division_two_term_fast_path(self):
        den = from_coeffs([2, 0, -1], D)
        num = from_coeffs([1], D)
        assert num / den == num * den.unit_reciprocal()


class TestStructural:
    def test_parts(self):
        s = from_coeffs([1, 2, 3, 4])
        assert s.even_part().to_strings() == ['1', '0', '3', '0']
        assert s.odd_part().to_strings() == ['0', '2', '0', '4']
        assert s.subst_neg_q().to_strings() == ['1', '-2', '3', '-4']

    def test_subst_q_pow_keeps_degree(self):
        s = from_coeffs([1, 2, 3, 4, 5])
        assert s.subst_q_pow(2).to_strings() == ['1', '0', '2', '0', '3']

    def test_shift_up_raises_degree(self):
        s = from_coeffs([1, 2]).shift(2)
        assert s.degree == 3
        assert s.to_strings() == ['0', '0', '1', '2']

    def test_shift_down(self):
        s = from_coeffs([0, 0, 5, 6]).shift(-2)
        assert s.to_strings() == ['5', '6']

    def test_shift_down_below_valuation(self):
        with pytest.raises(IllFormedShift):
            from_coeffs([0, 1, 1]).shift(-2)

    def test_dual_parts(self):
        s = QSeries([Dual(1, 2), Fraction(3)])
        assert s.value_part().to_strings() == ['1', '3']
        assert s.deriv_part().to_strings() == ['2', '0']


class TestReciprocals:
    def test_geometric_inverse_of_binomial_sum(self):
        t = from_coeffs([0, 1, 1], 3)
        assert t.geometric_inverse().to_strings() == ['1', '1', '2', '3']

    def test_unit_reciprocal_of_constant(self):
        assert from_coeffs([2], 1).unit_reciprocal().to_strings() == ['1/2', '0']

    def test_unit_reciprocal_of_product(self):
        # (q^2; q^2)_inf^2 = 1 - 2q^2 - q^4 + ... modulo q^5
        u = from_coeffs([1, 0, -2, 0, -1])
        assert u.unit_reciprocal().to_strings() == ['1', '0', '2', '0', '5']

    @given(series)
    def test_parity_split(self, a):
        assert a.even_part() + a.odd_part() == a
        assert a.subst_neg_q().odd_part() == -a.odd_part()
