"""
Truncated formal power series in q over an exact scalar ring.
"""
from fractions import Fraction
from typing import Callable, Iterable, List, Optional, Sequence, Tuple

from qlambert.errors import IllFormedShift
from qlambert.scalars import Scalar, deriv_part, format_rational, value_part

_ZERO = Fraction(0)
_ONE = Fraction(1)


class QSeries:
    """
    An element of ``S[[q]] / (q^(degree+1))``.

    Instances are immutable. Binary operations between series of different
    truncation degrees truncate to the smaller one.
    """

    __slots__ = ('_coeffs',)

    def __init__(self, coeffs: Iterable[Scalar]):
        coeffs = tuple(coeffs)
        if not coeffs:
            raise ValueError('a truncated series needs at least one coefficient')
        self._coeffs: Tuple[Scalar, ...] = coeffs

    @classmethod
    def zero(cls, degree: int) -> 'QSeries':
        return cls((_ZERO,) * (degree + 1))

    @classmethod
    def constant(cls, c: Scalar, degree: int) -> 'QSeries':
        return cls.monomial(c, 0, degree)

    @classmethod
    def monomial(cls, c: Scalar, e: int, degree: int) -> 'QSeries':
        """
        The series ``c*q^e``; zero when ``e`` exceeds the degree.
        """
        if e < 0:
            raise IllFormedShift(e, 0)
        coeffs: List[Scalar] = [_ZERO] * (degree + 1)
        if e <= degree:
            coeffs[e] = c
        return cls(coeffs)

    @property
    def degree(self) -> int:
        return len(self._coeffs) - 1

    @property
    def coeffs(self) -> Tuple[Scalar, ...]:
        return self._coeffs

    def coeff(self, k: int) -> Scalar:
        if not 0 <= k <= self.degree:
            raise IndexError(f'coefficient q^{k} outside 0..{self.degree}')
        return self._coeffs[k]

    def valuation(self) -> Optional[int]:
        """
        Index of the first nonzero coefficient, `None` for the zero series.
        """
        for k, c in enumerate(self._coeffs):
            if c:
                return k
        return None

    def is_zero(self) -> bool:
        return self.valuation() is None

    def truncate(self, degree: int) -> 'QSeries':
        if degree > self.degree:
            raise ValueError(
                f'cannot raise truncation degree {self.degree} to {degree}')
        return QSeries(self._coeffs[:degree + 1])

    def map(self, fn: Callable[[Scalar], Scalar]) -> 'QSeries':
        return QSeries(fn(c) for c in self._coeffs)

    # ring operations

    def _coerce(self, other) -> Optional['QSeries']:
        if isinstance(other, QSeries):
            return other
        try:
            return QSeries.constant(other + _ZERO, self.degree)
        except TypeError:
            return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return QSeries(a + b for a, b in zip(self._coeffs, other._coeffs))

    __radd__ = __add__

    def __neg__(self):
        return QSeries(-c for c in self._coeffs)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return QSeries(a - b for a, b in zip(self._coeffs, other._coeffs))

    def __rsub__(self, other):
        return -self + other

    def __mul__(self, other):
        if not isinstance(other, QSeries):
            try:
                return QSeries(c * other for c in self._coeffs)
            except TypeError:
                return NotImplemented
        degree = min(self.degree, other.degree)
        b = other._coeffs
        out: List[Scalar] = [_ZERO] * (degree + 1)
        for i, ai in enumerate(self._coeffs[:degree + 1]):
            if not ai:
                continue
            for j in range(degree - i + 1):
                bj = b[j]
                if bj:
                    out[i + j] += ai * bj
        return QSeries(out)

    def __rmul__(self, other):
        return self * other

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            return NotImplemented
        result = QSeries.constant(_ONE, self.degree)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __truediv__(self, other):
        """
        Divide by a scalar or by a unit series (nonzero constant term).
        """
        if not isinstance(other, QSeries):
            try:
                return QSeries(c / other for c in self._coeffs)
            except TypeError:
                return NotImplemented
        degree = min(self.degree, other.degree)
        num, den = self.truncate(degree), other.truncate(degree)
        support = [k for k, c in enumerate(den._coeffs) if c]
        if len(support) == 2 and support[0] == 0:
            a0, k = den._coeffs[0], support[1]
            return (num / a0).div_binomial(-den._coeffs[k] / a0, k)
        return num * den.unit_reciprocal()

    def __eq__(self, other):
        if not isinstance(other, QSeries):
            return NotImplemented
        return self._coeffs == other._coeffs

    def __hash__(self):
        return hash(self._coeffs)

    # geometric factors

    def div_binomial(self, c: Scalar, k: int) -> 'QSeries':
        """
        Multiply by ``1/(1 - c*q^k)`` in O(degree).

        :raises ZeroDivisionError: when ``k == 0`` and ``c == 1``.
        """
        if not c or k > self.degree:
            return self
        if k == 0:
            return self * (1 / (1 - c))
        if k < 0:
            raise IllFormedShift(k, None)
        out = list(self._coeffs)
        for j in range(k, len(out)):
            prev = out[j - k]
            if prev:
                out[j] = out[j] + c * prev
        return QSeries(out)

    def mul_binomial(self, c: Scalar, k: int) -> 'QSeries':
        """
        Multiply by ``1 - c*q^k`` in O(degree).
        """
        if not c or k > self.degree:
            return self
        if k == 0:
            return self * (1 - c)
        src = self._coeffs
        out = list(src)
        for j in range(k, len(out)):
            if src[j - k]:
                out[j] = out[j] - c * src[j - k]
        return QSeries(out)

    def geometric_inverse(self) -> 'QSeries':
        """
        ``1/(1 - self)`` for a series with zero constant term.

        :raises ValueError: when the constant term is nonzero.
        """
        if self._coeffs[0]:
            raise ValueError('geometric_inverse needs a zero constant term, '
                             'use unit_reciprocal instead')
        return (QSeries.constant(_ONE, self.degree) - self).unit_reciprocal()

    def unit_reciprocal(self) -> 'QSeries':
        """
        Inverse of a series whose constant term is invertible.

        :raises ZeroDivisionError: when the constant term is zero.
        """
        u = self._coeffs
        if not u[0]:
            raise ZeroDivisionError('series with zero constant term is not a unit')
        inv0 = 1 / u[0]
        out: List[Scalar] = [inv0]
        for n in range(1, len(u)):
            acc = _ZERO
            for k in range(1, n + 1):
                if u[k]:
                    acc = acc + u[k] * out[n - k]
            out.append(-acc * inv0)
        return QSeries(out)

    # structural operations

    def even_part(self) -> 'QSeries':
        return QSeries(c if k % 2 == 0 else _ZERO
                       for k, c in enumerate(self._coeffs))

    def odd_part(self) -> 'QSeries':
        return QSeries(c if k % 2 else _ZERO
                       for k, c in enumerate(self._coeffs))

    def subst_neg_q(self) -> 'QSeries':
        return QSeries(-c if k % 2 else c for k, c in enumerate(self._coeffs))

    def subst_q_pow(self, b: int) -> 'QSeries':
        """
        Substitute ``q -> q^b`` keeping the truncation degree.
        """
        if b < 1:
            raise ValueError(f'q -> q^{b} needs b >= 1')
        out: List[Scalar] = [_ZERO] * (self.degree + 1)
        for k in range(self.degree // b + 1):
            out[b * k] = self._coeffs[k]
        return QSeries(out)

    def shift(self, s: int) -> 'QSeries':
        """
        Multiply by ``q^s``. The result has degree ``degree + s``: a series
        known modulo ``q^(D+1)`` times ``q^s`` is known modulo ``q^(D+s+1)``.

        :raises IllFormedShift: when ``s < 0`` and the valuation is below
          ``|s|`` or the degree would drop below 0.
        """
        if s >= 0:
            return QSeries((_ZERO,) * s + self._coeffs)
        v = self.valuation()
        if self.degree + s < 0 or (v is not None and v < -s):
            raise IllFormedShift(s, v)
        return QSeries(self._coeffs[-s:])

    def value_part(self) -> 'QSeries':
        return self.map(value_part)

    def deriv_part(self) -> 'QSeries':
        return self.map(deriv_part)

    # rendering

    def to_strings(self) -> List[str]:
        return [format_rational(c) for c in self._coeffs]

    def __str__(self):
        terms = []
        for k, c in enumerate(self._coeffs):
            if not c:
                continue
            text = format_rational(c)
            if k == 0:
                terms.append(text)
            else:
                power = 'q' if k == 1 else f'q^{k}'
                terms.append(f'{text}*{power}')
        body = ' + '.join(terms) if terms else '0'
        return f'{body} + O(q^{self.degree + 1})'

    def __repr__(self):
        return f'QSeries({self.to_strings()!r})'


def from_coeffs(coeffs: Sequence, degree: Optional[int] = None) -> QSeries:
    """
    Build a series from leading coefficients, zero-padded up to `degree`.
    """
    values = [Fraction(c) if isinstance(c, (int, str)) else c for c in coeffs]
    if degree is None:
        degree = len(values) - 1
    values = values[:degree + 1]
    values += [_ZERO] * (degree + 1 - len(values))
    return QSeries(values)


def qs_ring(a: QSeries, b: Optional[QSeries], op: str) -> QSeries:
    if op == 'neg':
        return -a
    ops = {'add': QSeries.__add__, 'sub': QSeries.__sub__,
           'mul': QSeries.__mul__}
    if op not in ops:
        raise ValueError(f'unknown ring operation {op!r}')
    return ops[op](a, b)
