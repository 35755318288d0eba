"""
Exact truncations of the Lambert-type series families.

Every parameter is a monomial ``c*q^e``. Infinite outer sums are enumerated
up to the last index at which some inner factor ``1/(1 - y*q^k)`` still
differs from 1 modulo ``q^(D+1)``; past it, residual sums survive only along
``e == 0`` directions and are added in closed geometric form.
"""
import dataclasses
import logging
import math
from fractions import Fraction
from typing import Optional, Sequence, Tuple

from qlambert.errors import DomainError, UnknownBuilder
from qlambert.qseries import QSeries
from qlambert.scalars import Dual, Scalar, format_rational, value_part

logger = logging.getLogger(__name__)

_ZERO = Fraction(0)
_ONE = Fraction(1)


@dataclasses.dataclass(frozen=True)
class Param:
    """
    The monomial ``c*q^e`` standing in for a series parameter.
    """

    c: Scalar
    e: int = 0

    def __post_init__(self):
        if not isinstance(self.c, Dual):
            object.__setattr__(self, 'c', Fraction(self.c))
        if self.e < 0:
            raise DomainError('e', f'negative q-exponent {self.e}')

    @property
    def is_zero(self) -> bool:
        return not self.c

    @property
    def value(self) -> Fraction:
        return value_part(self.c)

    def series(self, degree: int) -> QSeries:
        return QSeries.monomial(self.c, self.e, degree)

    @staticmethod
    def from_series(series: QSeries, name: str = 'argument') -> 'Param':
        """
        Read a monomial back from a series with at most one nonzero term.

        :raises DomainError: when the series has two or more nonzero terms.
        """
        support = [k for k, c in enumerate(series.coeffs) if c]
        if not support:
            return Param(_ZERO, 0)
        if len(support) > 1:
            raise DomainError(name, 'must evaluate to a monomial c*q^e, got a '
                                    f'series with {len(support)} terms')
        return Param(series.coeffs[support[0]], support[0])

    def __str__(self):
        if self.e == 0:
            return format_rational(self.c)
        power = 'q' if self.e == 1 else f'q^{self.e}'
        return f'{format_rational(self.c)}*{power}'


ONE = Param(_ONE, 0)

Q = Param(_ONE, 1)


@dataclasses.dataclass(frozen=True)
class Weight:
    """
    Polynomial ``w(n) = sum(coeffs[i] * n**i)`` with lower index bound `n0`.
    """

    coeffs: Tuple[Scalar, ...] = (_ONE,)
    n0: int = 0

    def __post_init__(self):
        object.__setattr__(self, 'coeffs',
                           tuple(c if isinstance(c, Dual) else Fraction(c)
                                 for c in self.coeffs) or (_ZERO,))

    def __call__(self, n: int) -> Scalar:
        acc = _ZERO
        for c in reversed(self.coeffs):
            acc = acc * n + c
        return acc

    @property
    def is_constant(self) -> bool:
        return not any(self.coeffs[1:])

    @property
    def is_zero(self) -> bool:
        return not any(self.coeffs)


@dataclasses.dataclass(frozen=True)
class BilinearSpec:
    """
    The double sum over m, n >= 1 of
    ``sign^m x^n z^m q^(alpha*m*n + beta*m + gamma*n + delta)``
    over ``(1 - u*q^(a*n + a0)) (1 - v*q^(b*m + b0))``.
    """

    sign: int = 1
    alpha: int = 1
    beta: int = 0
    gamma: int = 0
    delta: int = 0
    x: Param = ONE
    z: Param = ONE
    u: Param = Param(_ZERO)
    a: int = 1
    a0: int = 0
    v: Param = Param(_ZERO)
    b: int = 1
    b0: int = 0


@dataclasses.dataclass(frozen=True)
class OrderedDoubleSpec:
    """
    The sum over ``1 <= n < m`` of
    ``w(n) q^(u*n + v*m) / ((1 - q^n)(1 - q^m))``.
    """

    weight: Weight = Weight()
    u: int = 1
    v: int = 1


def _last_active(y: Param, base: int, degree: int) -> int:
    """
    Largest n with ``1 - y*q^(base*n)`` not congruent to 1, or -1.
    """
    if y.is_zero or y.e > degree:
        return -1
    return (degree - y.e) // base


def _require_unit(y: Param, name: str):
    if y.e == 0 and y.value == 1:
        raise DomainError(name, 'constant term 1 - c vanishes (c = 1)')


def _check_region(name: str, p: Param, analytic: bool):
    if analytic and p.e == 0 and abs(p.value) >= 1:
        raise DomainError(name, f'|c| = {abs(p.value)} is outside the '
                                f'analytic region |c| < 1')


def _check_base(base: int):
    if base < 1:
        raise DomainError('base', f'base q^{base} needs a positive exponent')


def _lambert_sum(x: Param, ys: Sequence[Param], base: int, degree: int,
                 weight: Weight) -> QSeries:
    """
    ``sum_{n >= n0} w(n) x^n / prod(1 - y_i q^(base*n))``.
    """
    n0 = weight.n0
    result = QSeries.zero(degree)
    if weight.is_zero:
        return result

    tail = None
    if x.is_zero:
        n_max = 0
        if n0 > 0:
            return result
    elif x.e >= 1:
        n_max = degree // x.e
    else:
        if not weight.is_constant:
            raise DomainError('x', 'a non-constant weight with e = 0 would '
                                   'need a polylogarithmic tail')
        n_max = max([_last_active(y, base, degree) for y in ys] + [n0 - 1])
        # sum_{n > n_max} w c^n = w c^(n_max+1) / (1 - c)
        tail = weight(0) * x.c ** (n_max + 1) / (1 - x.c)

    for n in range(n0, n_max + 1):
        coeff = weight(n)
        if not coeff or x.e * n > degree:
            continue
        term = QSeries.monomial(coeff * x.c ** n, x.e * n, degree)
        for y in ys:
            term = term.div_binomial(y.c, y.e + base * n)
        result = result + term

    if tail is not None:
        result = result + tail
    logger.debug('lambert sum: %d terms, tail %s', n_max - n0 + 1,
                 'closed' if tail is not None else 'none')
    return result


def build_lambert(x: Param, ys: Sequence[Param], base: int, degree: int, *,
                  analytic: bool = False) -> QSeries:
    """
    ``L(x, y_1, ..., y_k; q^base) = sum_{n >= 0} x^n / prod(1 - y_i q^(base*n))``.

    :raises DomainError: when a constant denominator or the geometric tail
      denominator vanishes.
    """
    _check_base(base)
    for i, y in enumerate(ys, 1):
        _require_unit(y, f'y{i}')
        _check_region(f'y{i}', y, analytic)
    if x.e == 0 and not x.is_zero:
        _require_unit(x, 'x')
        _check_region('x', x, analytic)
    return _lambert_sum(x, ys, base, degree, Weight())


def build_bilateral(x: Param, y: Param, base: int, degree: int, *,
                    analytic: bool = False) -> QSeries:
    """
    ``L*(x, y; q^base) = sum_{n in Z} x^n / (1 - y q^(base*n))``.

    For ``n = -m`` with ``base*m > e_y`` the factor is expanded as
    ``-sum_{j >= 1} c_y^-j q^(j*(base*m - e_y))``.

    :raises DomainError: when `x` is not a constant with ``0 < |c| != 1``
      or `y` has a zero coefficient.
    """
    _check_base(base)
    if x.e != 0 or x.is_zero:
        raise DomainError('x', 'the bilateral series needs x = c with c != 0')
    if y.is_zero:
        raise DomainError('y', 'the bilateral series needs y != 0')
    if y.e % base == 0 and y.value == 1:
        # the term n = -e_y/base has denominator 1 - c_y
        raise DomainError('y', 'constant term 1 - c vanishes (c = 1)')
    _check_region('x', x, analytic)

    result = build_lambert(x, [y], base, degree, analytic=analytic)
    inv_y = 1 / y.c
    for m in range(1, (degree + y.e) // base + 1):
        coeff = x.c ** (-m)
        k = y.e - base * m
        if k >= 0:
            term = QSeries.constant(coeff, degree).div_binomial(y.c, k)
        else:
            term = QSeries.monomial(-coeff * inv_y, -k, degree) \
                .div_binomial(inv_y, -k)
        result = result + term
    return result


def build_double(x: Param, y: Param, z: Param, w: Param, base: int,
                 degree: int, *, analytic: bool = False) -> QSeries:
    """
    ``A(x, y, z, w; q^base)``, the sum over ``0 <= n <= m`` of
    ``x^n y^m / ((1 - w q^(base*n)) (1 - z q^(base*m)))``.

    Inner sums ``T_n = sum_{m >= n} y^m / (1 - z q^(base*m))`` are built
    backwards so every outer term costs O(degree).
    """
    _check_base(base)
    _require_unit(z, 'z')
    _require_unit(w, 'w')
    for name, p in (('x', x), ('y', y), ('z', z), ('w', w)):
        _check_region(name, p, analytic)

    if y.is_zero:
        return QSeries.constant(_ONE, degree) \
            .div_binomial(w.c, w.e).div_binomial(z.c, z.e)
    if y.e == 0:
        _require_unit(y, 'y')
        if x.e == 0 and x.value * y.value == 1:
            raise DomainError('x', 'tail denominator 1 - c_x*c_y vanishes')

    mz = _last_active(z, base, degree)
    if y.e >= 1:
        top = degree // y.e
        inner_tail = QSeries.zero(degree)
    else:
        top = mz
        inner_tail = QSeries.constant(y.c ** (top + 1) / (1 - y.c), degree)

    def inner_closed(n: int) -> QSeries:
        # T_n past the last active z-factor
        if y.e >= 1:
            return QSeries.zero(degree)
        return QSeries.constant(y.c ** n / (1 - y.c), degree)

    suffix = [inner_tail]
    for m in range(top, -1, -1):
        if y.e * m > degree:
            suffix.append(suffix[-1])
            continue
        u_m = QSeries.monomial(y.c ** m, y.e * m, degree) \
            .div_binomial(z.c, z.e + base * m)
        suffix.append(suffix[-1] + u_m)
    suffix.reverse()

    def inner(n: int) -> QSeries:
        return suffix[n] if n <= top else inner_closed(n)

    tail = None
    if x.is_zero:
        n_max = 0
    elif x.e + y.e >= 1:
        n_max = degree // (x.e + y.e)
    else:
        n_max = max(mz, _last_active(w, base, degree), 0)
        xy = x.c * y.c
        tail = xy ** (n_max + 1) / ((1 - y.c) * (1 - xy))

    result = QSeries.zero(degree)
    for n in range(n_max + 1):
        if x.e * n > degree:
            break
        term = inner(n) * QSeries.monomial(x.c ** n, x.e * n, degree)
        result = result + term.div_binomial(w.c, w.e + base * n)
    if tail is not None:
        result = result + tail
    logger.debug('double lambert sum: %d outer terms', n_max + 1)
    return result


def build_bilinear(degree: int, spec: BilinearSpec) -> QSeries:
    """
    Enumerate the hyperbola-bounded index pairs of a :class:`BilinearSpec`.

    :raises DomainError: when ``alpha < 1`` or the exponents are not
      increasing in both indices.
    """
    if spec.alpha < 1:
        raise DomainError('alpha', 'alpha >= 1 is required to bound m*n, '
                                   'use build_ordered_double instead')
    beta = spec.beta + spec.z.e
    gamma = spec.gamma + spec.x.e
    if spec.alpha + beta < 1 or spec.alpha + gamma < 1:
        raise DomainError('beta', 'exponent must grow with both indices')
    if spec.alpha + beta + gamma + spec.delta < 0:
        raise DomainError('delta', 'leading exponent is negative')
    for name, p, step, offset in (('u', spec.u, spec.a, spec.a0),
                                  ('v', spec.v, spec.b, spec.b0)):
        if p.is_zero:
            continue
        k = p.e + step + offset
        if step < 0 or k < 0:
            raise DomainError(name, 'denominator exponent must stay >= 0')
        if k == 0:
            _require_unit(p, name)

    result = QSeries.zero(degree)
    z_c = spec.z.c * spec.sign
    pairs = 0
    m = 1
    while spec.alpha * m + beta * m + gamma + spec.delta <= degree:
        n = 1
        while True:
            e = spec.alpha * m * n + beta * m + gamma * n + spec.delta
            if e > degree:
                break
            coeff = spec.x.c ** n * z_c ** m
            if coeff:
                term = QSeries.monomial(coeff, e, degree)
                term = term.div_binomial(spec.u.c, spec.u.e + spec.a * n + spec.a0)
                term = term.div_binomial(spec.v.c, spec.v.e + spec.b * m + spec.b0)
                result = result + term
                pairs += 1
            n += 1
        m += 1
    logger.debug('bilinear double sum: %d index pairs', pairs)
    return result


def build_ordered_double(degree: int, spec: OrderedDoubleSpec) -> QSeries:
    """
    Direct enumeration of the ordered double sum over ``1 <= n < m``.
    """
    if spec.u < 1 or spec.v < 1:
        raise DomainError('u', 'both numerator exponents must be >= 1')
    result = QSeries.zero(degree)
    n = 1
    while spec.u * n + spec.v * (n + 1) <= degree:
        coeff = spec.weight(n)
        if coeff:
            m = n + 1
            while spec.u * n + spec.v * m <= degree:
                term = QSeries.monomial(coeff, spec.u * n + spec.v * m, degree)
                result = result + term.div_binomial(_ONE, n).div_binomial(_ONE, m)
                m += 1
        n += 1
    return result


def build_weighted_lambert(weight: Weight, x: Param, ys: Sequence[Param],
                           base: int, degree: int, *,
                           analytic: bool = False) -> QSeries:
    """
    ``sum_{n >= n0} w(n) x^n / prod(1 - y_i q^(base*n))``.

    :raises DomainError: for a non-constant weight with ``e_x == 0``.
    """
    if weight.is_constant and weight.n0 == 0:
        return build_lambert(x, ys, base, degree, analytic=analytic) * weight(0)
    _check_base(base)
    for i, y in enumerate(ys, 1):
        if base * weight.n0 + y.e == 0:
            _require_unit(y, f'y{i}')
    if x.e == 0 and not x.is_zero:
        _require_unit(x, 'x')
    return _lambert_sum(x, ys, base, degree, weight)


def build_poch(a: Param, base: int, n: Optional[int], degree: int) -> QSeries:
    """
    ``(a; q^base)_n``; ``n is None`` stands for the infinite product, which
    is finite modulo ``q^(degree+1)``.
    """
    _check_base(base)
    result = QSeries.constant(_ONE, degree)
    if a.is_zero:
        return result
    k = 0
    while (n is None or k < n) and a.e + base * k <= degree:
        result = result.mul_binomial(a.c, a.e + base * k)
        k += 1
    return result


def _lifted(series: QSeries, s: int, degree: int) -> QSeries:
    if degree - s < 0:
        return QSeries.zero(degree)
    return series.shift(s)


def _series_g(degree: int) -> QSeries:
    # q * L(q, q; q) = sum q^k / (1 - q^k)
    if degree < 1:
        return QSeries.zero(degree)
    return build_lambert(Q, [Q], 1, degree - 1).shift(1)


def _series_h(degree: int) -> QSeries:
    # q^2 * L(q^2, q, q; q) = sum q^(2k) / (1 - q^k)^2
    if degree < 2:
        return QSeries.zero(degree)
    return build_lambert(Param(_ONE, 2), [Q, Q], 1, degree - 2).shift(2)


def _series_y(degree: int) -> QSeries:
    return build_bilinear(degree, BilinearSpec(
        sign=-1, alpha=2, beta=1, gamma=0, delta=0,
        u=Param(-_ONE), a=1, a0=0, v=ONE, b=2, b0=-1,
    ))


def _series_x(degree: int) -> QSeries:
    # sum_{n >= 0} (n+1) q^n / (1 + q^(2n+3)),
    # i.e. q^-2 sum_{n >= 2} (n-1) q^n / (1 + q^(2n-1))
    return build_weighted_lambert(Weight((1, 1)), Q, [Param(-_ONE, 3)], 2, degree)


def _series_f1(degree: int) -> QSeries:
    first = _lifted(build_weighted_lambert(
        Weight((0, 1, 1)), Q, [Q], 1, max(degree - 1, 0)), 1, degree)
    second = _lifted(build_weighted_lambert(
        Weight((2, 2)), Param(_ONE, 2), [Q, Q], 1, max(degree - 2, 0)), 2, degree)
    return first - second


def _series_f3(degree: int) -> QSeries:
    return build_ordered_double(degree, OrderedDoubleSpec(weight=Weight((0, 2))))


def sigma_gf(k: int, stride: int, degree: int) -> QSeries:
    """
    ``sum_{n >= 1} sigma_k(n) q^(stride*n)`` as ``q * sum (n+1)^k q^n / (1 - q^(n+1))``.
    """
    if k < 0 or stride < 1:
        raise DomainError('k', f'sigma_{k} at stride {stride} is not defined')
    if degree < 1:
        return QSeries.zero(degree)
    weight = Weight(tuple(math.comb(k, i) for i in range(k + 1)))
    lambert = build_weighted_lambert(weight, Q, [Q], 1, degree - 1).shift(1)
    return lambert.subst_q_pow(stride)


_SPECIALS = {
    'Y': _series_y,
    'X': _series_x,
    'G': _series_g,
    'H': _series_h,
    'f1': _series_f1,
    'f3': _series_f3,
}

SPECIAL_NAMES = tuple(_SPECIALS) + ('sigma_gf',)


def build_special(name: str, degree: int, *args: int) -> QSeries:
    """
    Named series: ``Y``, ``X``, ``G``, ``H``, ``f1``, ``f3`` and
    ``sigma_gf(k, stride)``.

    :raises UnknownBuilder: for any other name.
    """
    if name == 'sigma_gf':
        return sigma_gf(*args, degree=degree)
    if name not in _SPECIALS:
        raise UnknownBuilder(name)
    return _SPECIALS[name](degree)
