"""
Exact scalars: rationals and first-order dual rationals.

Every series coefficient is either a :class:`fractions.Fraction` or a
:class:`Dual`; all downstream code only uses ring operators, so both scalar
kinds flow through the same builders.
"""
import dataclasses
import operator
import re
from fractions import Fraction
from typing import Callable, Union

Rational = Fraction

Scalar = Union[Fraction, 'Dual']

_RATIONAL_RE = re.compile(r'^\s*([+-]?\d+)\s*(?:/\s*(\d+)\s*)?$')


@dataclasses.dataclass(frozen=True)
class Dual:
    """
    Dual rational ``value + deriv*ε`` with ``ε**2 == 0``.
    """

    value: Fraction
    deriv: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, 'value', Fraction(self.value))
        object.__setattr__(self, 'deriv', Fraction(self.deriv))

    @staticmethod
    def lift(other) -> 'Dual':
        if isinstance(other, Dual):
            return other
        if isinstance(other, (int, Fraction)):
            return Dual(Fraction(other))
        raise TypeError(f'cannot lift {type(other).__name__} to a dual number')

    def __add__(self, other):
        try:
            other = Dual.lift(other)
        except TypeError:
            return NotImplemented
        return Dual(self.value + other.value, self.deriv + other.deriv)

    __radd__ = __add__

    def __neg__(self):
        return Dual(-self.value, -self.deriv)

    def __sub__(self, other):
        try:
            other = Dual.lift(other)
        except TypeError:
            return NotImplemented
        return Dual(self.value - other.value, self.deriv - other.deriv)

    def __rsub__(self, other):
        return Dual.lift(other) - self

    def __mul__(self, other):
        try:
            other = Dual.lift(other)
        except TypeError:
            return NotImplemented
        return Dual(self.value * other.value,
                    self.value * other.deriv + self.deriv * other.value)

    __rmul__ = __mul__

    def inverse(self) -> 'Dual':
        if self.value == 0:
            raise ZeroDivisionError(
                'dual division by a number with zero value part')
        return Dual(1 / self.value, -self.deriv / (self.value * self.value))

    def __truediv__(self, other):
        try:
            other = Dual.lift(other)
        except TypeError:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return Dual.lift(other) * self.inverse()

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        if n == 0:
            return Dual(Fraction(1))
        # (a + bε)^n = a^n + n a^(n-1) b ε
        return Dual(self.value ** n, n * self.value ** (n - 1) * self.deriv)

    def __bool__(self):
        return bool(self.value) or bool(self.deriv)

    def __eq__(self, other):
        if isinstance(other, Dual):
            return self.value == other.value and self.deriv == other.deriv
        if isinstance(other, (int, Fraction)):
            return self.deriv == 0 and self.value == other
        return NotImplemented

    def __hash__(self):
        if self.deriv == 0:
            return hash(self.value)
        return hash((self.value, self.deriv))

    def __repr__(self):
        return f'Dual({format_rational(self.value)}, ' \
               f'{format_rational(self.deriv)})'

    def __str__(self):
        return f'{format_rational(self.value)}+{format_rational(self.deriv)}ε'


def value_part(c: Scalar) -> Fraction:
    return c.value if isinstance(c, Dual) else Fraction(c)


def deriv_part(c: Scalar) -> Fraction:
    return c.deriv if isinstance(c, Dual) else Fraction(0)


def parse_rational(text: str) -> Fraction:
    """
    Parse ``"p/r"`` or ``"p"`` into a canonical :class:`Fraction`.

    :raises ValueError: on malformed text or a zero denominator.
    """
    match = _RATIONAL_RE.match(text)
    if not match:
        raise ValueError(f'not a rational number: {text!r}')
    num, den = match.group(1), match.group(2)
    if den is not None and int(den) == 0:
        raise ValueError(f'zero denominator in {text!r}')
    return Fraction(int(num), int(den) if den is not None else 1)


def format_rational(c: Scalar) -> str:
    """
    Render as ``"num/den"``, or ``"num"`` for integers; dual numbers render
    their value and derivative parts separated by ``+`` and ``ε``.
    """
    if isinstance(c, Dual):
        return str(c)
    c = Fraction(c)
    if c.denominator == 1:
        return str(c.numerator)
    return f'{c.numerator}/{c.denominator}'


_ORDERINGS = {'lt': operator.lt, 'le': operator.le, 'eq': operator.eq}


def rat_arith(a: Fraction, b: Fraction, op: str):
    """
    Exact rational arithmetic; ``cmp`` returns -1, 0 or 1.

    :raises ZeroDivisionError: on ``div``/``inv`` of zero.
    """
    a, b = Fraction(a), Fraction(b)
    if op == 'cmp':
        return (a > b) - (a < b)
    if op in _ORDERINGS:
        return _ORDERINGS[op](a, b)
    return _arith(a, b, op)


def dual_arith(a: Dual, b: Dual, op: str) -> Dual:
    """
    Dual arithmetic; value parts follow rationals, derivative parts follow
    the sum, product and quotient rules.
    """
    return _arith(Dual.lift(a), Dual.lift(b), op)


_BINARY: 'dict[str, Callable]' = {
    'add': operator.add,
    'sub': operator.sub,
    'mul': operator.mul,
    'div': operator.truediv,
}


def _arith(a, b, op: str):
    if op in _BINARY:
        return _BINARY[op](a, b)
    if op == 'neg':
        return -a
    if op == 'inv':
        return 1 / a
    raise ValueError(f'unknown arithmetic operation {op!r}')
