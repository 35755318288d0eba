"""
A small expression language over truncated q-series.

Grammar::

    expr     := term (("+" | "-") term)*
    term     := factor (("*" | "/") factor)*
    factor   := "-" factor | power
    power    := atom ("^" exponent)?
    exponent := INT | "$" NAME | "(" expr ")"
    atom     := INT ("/" INT)? | "q" | "$" NAME | "[" expr ("," expr)* "]"
              | NAME "(" expr ("," expr)* (";" expr)? ")" | "(" expr ")"

``-INT`` folds into a negative rational literal, so ``-1/2`` is a single
literal while ``-q^2`` is ``-(q^2)``.
"""
import collections
import dataclasses
import logging
import re
from fractions import Fraction
from typing import Callable, Dict, List, Mapping, Optional, Set, Tuple, Union

from qlambert import builders
from qlambert.builders import BilinearSpec, OrderedDoubleSpec, Param, Weight
from qlambert.errors import DomainError, EvaluationError, IllFormedShift, \
    ParseError, UnboundParameter, UnknownBuilder
from qlambert.qseries import QSeries
from qlambert.scalars import Dual, format_rational

logger = logging.getLogger(__name__)

BUILDERS = (
    'L', 'Lstar', 'A', 'Poch', 'PochN', 'Bilin', 'OrdDouble', 'WL',
    'Y', 'X', 'G', 'H', 'f1', 'f3', 'SigmaGF',
    'EvenPart', 'OddPart', 'NegQ', 'SubstQ', 'Shift', 'D', 'Sum',
)

Binding = Union[Param, int]


class Expr:
    def __str__(self):
        return to_text(self)


@dataclasses.dataclass(frozen=True, eq=True)
class RationalLit(Expr):
    value: Fraction


@dataclasses.dataclass(frozen=True, eq=True)
class QMonomial(Expr):
    """The series variable `q`."""


@dataclasses.dataclass(frozen=True, eq=True)
class ParamRef(Expr):
    name: str


@dataclasses.dataclass(frozen=True, eq=True)
class ListLit(Expr):
    items: Tuple[Expr, ...]


@dataclasses.dataclass(frozen=True, eq=True)
class Call(Expr):
    name: str
    args: Tuple[Expr, ...]
    base: Optional[Expr] = None


@dataclasses.dataclass(frozen=True, eq=True)
class Neg(Expr):
    operand: Expr


@dataclasses.dataclass(frozen=True, eq=True)
class Pow(Expr):
    base: Expr
    exponent: Expr


@dataclasses.dataclass(frozen=True, eq=True)
class BinOp(Expr):
    left: Expr
    right: Expr

    symbol = '?'


class Add(BinOp):
    symbol = '+'


class Sub(BinOp):
    symbol = '-'


class Mul(BinOp):
    symbol = '*'


class Div(BinOp):
    symbol = '/'


_BINOPS = {'+': Add, '-': Sub, '*': Mul, '/': Div}

# tokenizer

Token = collections.namedtuple('Token', 'kind text pos')

_TOKEN_RE = re.compile(r'''
    (?P<ws>\s+)
  | (?P<int>\d+)
  | (?P<param>\$[A-Za-z_][A-Za-z_0-9]*)
  | (?P<name>[A-Za-z_][A-Za-z_0-9]*)
  | (?P<op>[-+*/^(),;\[\]])
''', re.VERBOSE)


def tokenize(text: str) -> List[Token]:
    tokens = []
    pos = 0
    while pos < len(text):
        match = _TOKEN_RE.match(text, pos)
        if not match:
            raise ParseError(text, pos, ['a number, name, parameter or operator'])
        kind = match.lastgroup
        if kind != 'ws':
            value = match.group()
            tokens.append(Token(value if kind == 'op' else kind, value, pos))
        pos = match.end()
    tokens.append(Token('eof', '', len(text)))
    return tokens


class Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = tokenize(text)
        self.index = 0
        self.derivatives = 0

    @property
    def peek(self) -> Token:
        return self.tokens[self.index]

    def lookahead(self, k: int = 1) -> Token:
        return self.tokens[min(self.index + k, len(self.tokens) - 1)]

    def advance(self) -> Token:
        token = self.tokens[self.index]
        self.index += 1
        return token

    def expect(self, kind: str) -> Token:
        if self.peek.kind != kind:
            raise ParseError(self.text, self.peek.pos, [repr(kind)])
        return self.advance()

    def parse(self) -> Expr:
        expr = self.expr()
        if self.peek.kind != 'eof':
            raise ParseError(self.text, self.peek.pos,
                             ["'+'", "'-'", "'*'", "'/'", 'end of input'])
        return expr

    def expr(self) -> Expr:
        node = self.term()
        while self.peek.kind in ('+', '-'):
            op = self.advance().kind
            node = _BINOPS[op](node, self.term())
        return node

    def term(self) -> Expr:
        node = self.factor()
        while self.peek.kind in ('*', '/'):
            op = self.advance().kind
            node = _BINOPS[op](node, self.factor())
        return node

    def factor(self) -> Expr:
        if self.peek.kind == '-':
            self.advance()
            folds = self.peek.kind == 'int'
            operand = self.factor() if not folds else self.power()
            if folds and isinstance(operand, RationalLit):
                return RationalLit(-operand.value)
            return Neg(operand)
        return self.power()

    def power(self) -> Expr:
        base = self.atom()
        if self.peek.kind != '^':
            return base
        self.advance()
        token = self.peek
        if token.kind == 'int':
            self.advance()
            return Pow(base, RationalLit(Fraction(int(token.text))))
        if token.kind == 'param':
            self.advance()
            return Pow(base, ParamRef(token.text[1:]))
        if token.kind == '(':
            self.advance()
            exponent = self.expr()
            self.expect(')')
            return Pow(base, exponent)
        raise ParseError(self.text, token.pos,
                         ['an integer', 'a parameter', "'('"])

    def atom(self) -> Expr:
        token = self.peek
        if token.kind == 'int':
            self.advance()
            value = Fraction(int(token.text))
            if self.peek.kind == '/' and self.lookahead().kind == 'int':
                self.advance()
                den = self.advance()
                if int(den.text) == 0:
                    raise ParseError(self.text, den.pos, ['a nonzero denominator'])
                value /= int(den.text)
            return RationalLit(value)
        if token.kind == 'param':
            self.advance()
            return ParamRef(token.text[1:])
        if token.kind == 'name':
            self.advance()
            if token.text == 'q' and self.peek.kind != '(':
                return QMonomial()
            return self.call(token)
        if token.kind == '(':
            self.advance()
            node = self.expr()
            self.expect(')')
            return node
        if token.kind == '[':
            self.advance()
            items = [self.expr()]
            while self.peek.kind == ',':
                self.advance()
                items.append(self.expr())
            self.expect(']')
            return ListLit(tuple(items))
        raise ParseError(self.text, token.pos,
                         ['a number', "'q'", 'a parameter', 'a builder call',
                          "'('", "'['"])

    def call(self, name: Token) -> Expr:
        if self.peek.kind != '(':
            raise ParseError(self.text, self.peek.pos, ["'('"])
        if name.text not in BUILDERS:
            raise UnknownBuilder(name.text)
        if name.text == 'D':
            self.derivatives += 1
            if self.derivatives > 1:
                raise ParseError(self.text, name.pos,
                                 ['at most one D(...) per expression'])
        self.advance()
        args = [self.expr()]
        while self.peek.kind == ',':
            self.advance()
            args.append(self.expr())
        base = None
        if self.peek.kind == ';':
            self.advance()
            base = self.expr()
        self.expect(')')
        return Call(name.text, tuple(args), base)


def parse(text: str) -> Expr:
    """
    Parse DSL text into an expression tree.

    :raises ParseError: on a syntax error, with line and column.
    :raises UnknownBuilder: on a call to an unknown builder name.
    """
    return Parser(text).parse()


# printer

def _is_call_like(node: Expr) -> bool:
    return isinstance(node, (QMonomial, ParamRef, Call, ListLit))


def _paren(node: Expr) -> str:
    return f'({to_text(node)})'


def _pow_base(node: Expr) -> str:
    if _is_call_like(node):
        return to_text(node)
    if isinstance(node, RationalLit) and node.value >= 0 \
            and node.value.denominator == 1:
        return to_text(node)
    return _paren(node)


def _exponent(node: Expr) -> str:
    if isinstance(node, RationalLit) and node.value >= 0 \
            and node.value.denominator == 1:
        return to_text(node)
    if isinstance(node, ParamRef):
        return to_text(node)
    return _paren(node)


def to_text(node: Expr) -> str:
    """
    Render an expression so that ``parse(to_text(e)) == e``.
    """
    if isinstance(node, RationalLit):
        return format_rational(node.value)
    if isinstance(node, QMonomial):
        return 'q'
    if isinstance(node, ParamRef):
        return f'${node.name}'
    if isinstance(node, ListLit):
        return '[' + ', '.join(map(to_text, node.items)) + ']'
    if isinstance(node, Call):
        args = ', '.join(map(to_text, node.args))
        if node.base is not None:
            args += f'; {to_text(node.base)}'
        return f'{node.name}({args})'
    if isinstance(node, Pow):
        return f'{_pow_base(node.base)}^{_exponent(node.exponent)}'
    if isinstance(node, Neg):
        operand = node.operand
        if isinstance(operand, BinOp) or (
                isinstance(operand, RationalLit) and operand.value >= 0):
            return f'-{_paren(operand)}'
        return f'-{to_text(operand)}'
    if isinstance(node, (Add, Sub)):
        right = node.right
        text = to_text(right)
        if isinstance(right, (Add, Sub)):
            text = _paren(right)
        return f'{to_text(node.left)} {node.symbol} {text}'
    if isinstance(node, (Mul, Div)):
        left, right = node.left, node.right
        lhs = _paren(left) if isinstance(left, (Add, Sub)) else to_text(left)
        if isinstance(node, Div):
            rhs = to_text(right) if _is_call_like(right) else _paren(right)
        elif isinstance(right, BinOp):
            rhs = _paren(right)
        else:
            rhs = to_text(right)
        return f'{lhs}{node.symbol}{rhs}'
    raise TypeError(f'not an expression node: {node!r}')


def free_params(node: Expr) -> Set[str]:
    """
    Names referenced by ``$name`` and not bound by an enclosing ``Sum``.
    """
    if isinstance(node, ParamRef):
        return {node.name}
    if isinstance(node, Call) and node.name == 'Sum' and node.args \
            and isinstance(node.args[0], ParamRef):
        bound = node.args[0].name
        inner = set()
        for arg in node.args[1:3]:
            inner |= free_params(arg)
        for arg in node.args[3:]:
            inner |= free_params(arg) - {bound}
        return inner
    names: Set[str] = set()
    for child in _children(node):
        names |= free_params(child)
    return names


def _children(node: Expr) -> Tuple[Expr, ...]:
    if isinstance(node, BinOp):
        return node.left, node.right
    if isinstance(node, Neg):
        return node.operand,
    if isinstance(node, Pow):
        return node.base, node.exponent
    if isinstance(node, ListLit):
        return node.items
    if isinstance(node, Call):
        return node.args + ((node.base,) if node.base is not None else ())
    return ()


# evaluator

class Evaluator:
    """
    Evaluates expression trees to :class:`QSeries` at a given degree.

    `bindings` maps parameter names to monomials (``Param``) or to integers
    (integer-indexed families and ``Sum`` indices).
    """

    def __init__(self, bindings: Optional[Mapping[str, Binding]] = None, *,
                 analytic: bool = False):
        self.bindings: Dict[str, Binding] = dict(bindings or {})
        self.analytic = analytic

    def evaluate(self, node: Expr, degree: int) -> QSeries:
        if degree < 0:
            raise ValueError(f'truncation degree {degree} is negative')
        method = getattr(self, f'_eval_{type(node).__name__}', None)
        if method is None:
            raise EvaluationError(to_text(node),
                                  TypeError('not a series expression'))
        return method(node, degree)

    def _lookup(self, name: str) -> Binding:
        try:
            return self.bindings[name]
        except KeyError:
            raise UnboundParameter(name) from None

    def _eval_RationalLit(self, node: RationalLit, degree: int) -> QSeries:
        return QSeries.constant(node.value, degree)

    def _eval_QMonomial(self, node: QMonomial, degree: int) -> QSeries:
        return builders.Q.series(degree)

    def _eval_ParamRef(self, node: ParamRef, degree: int) -> QSeries:
        value = self._lookup(node.name)
        if isinstance(value, Param):
            return value.series(degree)
        return QSeries.constant(Fraction(value), degree)

    def _eval_Neg(self, node: Neg, degree: int) -> QSeries:
        return -self.evaluate(node.operand, degree)

    def _eval_Add(self, node: Add, degree: int) -> QSeries:
        return self.evaluate(node.left, degree) + self.evaluate(node.right, degree)

    def _eval_Sub(self, node: Sub, degree: int) -> QSeries:
        return self.evaluate(node.left, degree) - self.evaluate(node.right, degree)

    def _eval_Mul(self, node: Mul, degree: int) -> QSeries:
        return self.evaluate(node.left, degree) * self.evaluate(node.right, degree)

    def _eval_Div(self, node: Div, degree: int) -> QSeries:
        den = self.evaluate(node.right, degree)
        v = den.valuation()
        if v is None:
            raise EvaluationError(to_text(node),
                                  ZeroDivisionError('division by the zero series'))
        try:
            if v == 0:
                return self.evaluate(node.left, degree) / den
            # divide out q^v exactly by working v orders higher
            num = self.evaluate(node.left, degree + v).shift(-v)
            den = self.evaluate(node.right, degree + v).shift(-v)
            return num / den
        except (IllFormedShift, ZeroDivisionError) as e:
            raise EvaluationError(to_text(node), e) from e

    def _eval_Pow(self, node: Pow, degree: int) -> QSeries:
        try:
            n = self.integer(node.exponent)
            if n < 0:
                raise DomainError('exponent', f'{n} is negative')
        except DomainError as e:
            raise EvaluationError(to_text(node), e) from e
        return self.evaluate(node.base, degree) ** n

    def _eval_Call(self, node: Call, degree: int) -> QSeries:
        handler = _CALLS.get(node.name)
        if handler is None:
            raise UnknownBuilder(node.name)
        try:
            return handler(self, node, degree)
        except (DomainError, IllFormedShift, ZeroDivisionError, ValueError) as e:
            raise EvaluationError(to_text(node), e) from e

    # argument coercion

    def integer(self, node: Expr) -> int:
        """
        Evaluate an integer-valued subexpression exactly.
        """
        if isinstance(node, RationalLit):
            if node.value.denominator != 1:
                raise DomainError(to_text(node), 'an integer is expected')
            return node.value.numerator
        if isinstance(node, ParamRef):
            value = self._lookup(node.name)
            if isinstance(value, Param):
                if value.e != 0 or isinstance(value.c, Dual) \
                        or value.c.denominator != 1:
                    raise DomainError(node.name, 'an integer is expected')
                return value.c.numerator
            return value
        if isinstance(node, Neg):
            return -self.integer(node.operand)
        if isinstance(node, (Add, Sub, Mul)):
            a, b = self.integer(node.left), self.integer(node.right)
            return a + b if isinstance(node, Add) else \
                a - b if isinstance(node, Sub) else a * b
        if isinstance(node, Div):
            a, b = self.integer(node.left), self.integer(node.right)
            if b == 0 or a % b:
                raise DomainError(to_text(node),
                                  'an exact integer quotient is expected')
            return a // b
        if isinstance(node, Pow):
            b, n = self.integer(node.base), self.integer(node.exponent)
            if n < 0:
                raise DomainError(to_text(node), 'negative integer power')
            return b ** n
        raise DomainError(to_text(node), 'an integer is expected')

    def monomial(self, node: Expr) -> Optional[Param]:
        """
        Reduce `node` to ``c*q^e`` exactly, whatever the truncation degree.

        Returns None when the expression is not built from monomials by
        products, quotients, powers and like-term sums.
        """
        if isinstance(node, RationalLit):
            return Param(node.value)
        if isinstance(node, QMonomial):
            return builders.Q
        if isinstance(node, ParamRef):
            value = self._lookup(node.name)
            return value if isinstance(value, Param) else Param(value)
        if isinstance(node, Neg):
            m = self.monomial(node.operand)
            return None if m is None else Param(-m.c, m.e)
        if isinstance(node, Pow):
            m = self.monomial(node.base)
            if m is None:
                return None
            n = self.integer(node.exponent)
            if n < 0:
                raise DomainError('exponent', f'{n} is negative')
            return _normalized(m.c ** n, m.e * n)
        if not isinstance(node, BinOp):
            return None
        a, b = self.monomial(node.left), self.monomial(node.right)
        if a is None or b is None:
            return None
        if isinstance(node, Mul):
            return _normalized(a.c * b.c, a.e + b.e)
        if isinstance(node, Div):
            if a.is_zero and not b.is_zero:
                return a
            if b.is_zero or b.e > a.e:
                return None
            return _normalized(a.c / b.c, a.e - b.e)
        if isinstance(node, Sub):
            b = Param(-b.c, b.e)
        if b.is_zero:
            return a
        if a.is_zero:
            return b
        if a.e != b.e:
            return None
        return _normalized(a.c + b.c, a.e)

    def param(self, node: Expr, degree: int, name: str = 'argument') -> Param:
        m = self.monomial(node)
        if m is not None:
            return m
        return Param.from_series(self.evaluate(node, degree), name)

    def base(self, node: Call) -> int:
        if node.base is None:
            return 1
        b = node.base
        if b == QMonomial():
            return 1
        if isinstance(b, Pow) and b.base == QMonomial():
            return self.integer(b.exponent)
        raise DomainError('base', f'`{to_text(b)}` is not of the form q^b')

    def weight(self, node: Expr, n0: int = 0) -> Weight:
        if not isinstance(node, ListLit):
            raise DomainError('weight', 'a coefficient list [w0, w1, ...] is expected')
        coeffs = [self.evaluate(item, 0).coeff(0) for item in node.items]
        return Weight(tuple(coeffs), n0)

    def bound_name(self, node: Expr) -> str:
        if not isinstance(node, ParamRef):
            raise DomainError('variable', f'`{to_text(node)}` is not a $name')
        return node.name

    def with_binding(self, name: str, value: Binding) -> 'Evaluator':
        bindings = dict(self.bindings)
        bindings[name] = value
        return Evaluator(bindings, analytic=self.analytic)


def _normalized(c, e: int) -> Param:
    return Param(c, e) if c else Param(Fraction(0))


def _arity(node: Call, *counts: int):
    if len(node.args) not in counts and not (counts[-1] < 0 and
                                             len(node.args) >= -counts[-1]):
        want = ' or '.join(str(abs(c)) + ('+' if c < 0 else '') for c in counts)
        raise DomainError(node.name, f'expects {want} arguments, '
                                     f'got {len(node.args)}')


def _call_lambert(ev: Evaluator, node: Call, degree: int) -> QSeries:
    _arity(node, -1)
    x = ev.param(node.args[0], degree, 'x')
    ys = [ev.param(a, degree, f'y{i}') for i, a in enumerate(node.args[1:], 1)]
    return builders.build_lambert(x, ys, ev.base(node), degree,
                                  analytic=ev.analytic)


def _call_bilateral(ev: Evaluator, node: Call, degree: int) -> QSeries:
    _arity(node, 2)
    x, y = (ev.param(a, degree, n) for a, n in zip(node.args, 'xy'))
    return builders.build_bilateral(x, y, ev.base(node), degree,
                                    analytic=ev.analytic)


def _call_double(ev: Evaluator, node: Call, degree: int) -> QSeries:
    _arity(node, 4)
    x, y, z, w = (ev.param(a, degree, n) for a, n in zip(node.args, 'xyzw'))
    return builders.build_double(x, y, z, w, ev.base(node), degree,
                                 analytic=ev.analytic)


def _call_poch(ev: Evaluator, node: Call, degree: int) -> QSeries:
    if node.name == 'PochN':
        _arity(node, 2)
        n = ev.integer(node.args[1])
    else:
        _arity(node, 1)
        n = None
    return builders.build_poch(ev.param(node.args[0], degree, 'a'),
                               ev.base(node), n, degree)


def _call_bilinear(ev: Evaluator, node: Call, degree: int) -> QSeries:
    _arity(node, 13)
    fields = [f.name for f in dataclasses.fields(BilinearSpec)]
    values = {}
    for field, arg in zip(fields, node.args):
        if field in ('x', 'z', 'u', 'v'):
            values[field] = ev.param(arg, degree, field)
        else:
            values[field] = ev.integer(arg)
    return builders.build_bilinear(degree, BilinearSpec(**values))


def _call_ordered_double(ev: Evaluator, node: Call, degree: int) -> QSeries:
    _arity(node, 3)
    spec = OrderedDoubleSpec(ev.weight(node.args[0]),
                             ev.integer(node.args[1]), ev.integer(node.args[2]))
    return builders.build_ordered_double(degree, spec)


def _call_weighted(ev: Evaluator, node: Call, degree: int) -> QSeries:
    _arity(node, -3)
    weight = ev.weight(node.args[0], ev.integer(node.args[1]))
    x = ev.param(node.args[2], degree, 'x')
    ys = [ev.param(a, degree, f'y{i}') for i, a in enumerate(node.args[3:], 1)]
    return builders.build_weighted_lambert(weight, x, ys, ev.base(node), degree,
                                           analytic=ev.analytic)


def _call_special(ev: Evaluator, node: Call, degree: int) -> QSeries:
    _arity(node, 1)
    arg = ev.param(node.args[0], max(degree, 1), 'argument')
    if arg.e < 1 or arg.c not in (1, -1):
        raise DomainError('argument', f'{node.name} takes q^e or -q^e, got {arg}')
    series = builders.build_special(node.name, degree)
    if arg.c == -1:
        series = series.subst_neg_q()
    return series.subst_q_pow(arg.e)


def _call_sigma_gf(ev: Evaluator, node: Call, degree: int) -> QSeries:
    _arity(node, 2)
    return builders.build_special('sigma_gf', degree, ev.integer(node.args[0]),
                                  ev.integer(node.args[1]))


def _unary(op: Callable[[QSeries], QSeries]):
    def call(ev: Evaluator, node: Call, degree: int) -> QSeries:
        _arity(node, 1)
        return op(ev.evaluate(node.args[0], degree))

    return call


def _call_subst(ev: Evaluator, node: Call, degree: int) -> QSeries:
    _arity(node, 2)
    return ev.evaluate(node.args[0], degree).subst_q_pow(ev.integer(node.args[1]))


def _call_shift(ev: Evaluator, node: Call, degree: int) -> QSeries:
    _arity(node, 2)
    s = ev.integer(node.args[1])
    if degree - s < 0:
        return QSeries.zero(degree)
    return ev.evaluate(node.args[0], degree - s).shift(s)


def _call_derivative(ev: Evaluator, node: Call, degree: int) -> QSeries:
    _arity(node, 2)
    name = ev.bound_name(node.args[0])
    p = ev._lookup(name)
    if not isinstance(p, Param) or isinstance(p.c, Dual):
        raise DomainError(name, 'D needs a monomial parameter with a rational '
                                'coefficient')
    # d/dc of c*q^e: the dual unit rides on the coefficient
    inner = ev.with_binding(name, Param(Dual(p.c, 1), p.e))
    return inner.evaluate(node.args[1], degree).deriv_part()


def _call_sum(ev: Evaluator, node: Call, degree: int) -> QSeries:
    _arity(node, 4)
    name = ev.bound_name(node.args[0])
    lo, hi = ev.integer(node.args[1]), ev.integer(node.args[2])
    result = QSeries.zero(degree)
    for j in range(lo, hi + 1):
        result = result + ev.with_binding(name, j).evaluate(node.args[3], degree)
    return result


_CALLS: Dict[str, Callable[[Evaluator, Call, int], QSeries]] = {
    'L': _call_lambert,
    'Lstar': _call_bilateral,
    'A': _call_double,
    'Poch': _call_poch,
    'PochN': _call_poch,
    'Bilin': _call_bilinear,
    'OrdDouble': _call_ordered_double,
    'WL': _call_weighted,
    'Y': _call_special,
    'X': _call_special,
    'G': _call_special,
    'H': _call_special,
    'f1': _call_special,
    'f3': _call_special,
    'SigmaGF': _call_sigma_gf,
    'EvenPart': _unary(QSeries.even_part),
    'OddPart': _unary(QSeries.odd_part),
    'NegQ': _unary(QSeries.subst_neg_q),
    'SubstQ': _call_subst,
    'Shift': _call_shift,
    'D': _call_derivative,
    'Sum': _call_sum,
}


def evaluate(expr: Union[Expr, str], degree: int,
             bindings: Optional[Mapping[str, Binding]] = None, *,
             analytic: bool = False) -> QSeries:
    """
    Evaluate an expression (or DSL text) modulo ``q^(degree+1)``.

    :raises UnboundParameter: when a ``$name`` has no binding.
    :raises EvaluationError: when a builder rejects its arguments; the
      message carries the offending call.
    """
    if isinstance(expr, str):
        expr = parse(expr)
    logger.debug('evaluating %s at degree %d', expr, degree)
    return Evaluator(bindings, analytic=analytic).evaluate(expr, degree)
