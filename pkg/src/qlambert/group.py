"""
The group generated by ``S(x,y,z,w) = (z/w, w, xy, y)`` and
``T(x,y,z,w) = (y, x, w, z)`` acting on quadruples of Laurent monomials.

An element is its 4x4 exponent matrix: row i holds the exponents of
``(x, y, z, w)`` in the i-th output component, so composition is the
integer matrix product.
"""
import collections
import dataclasses
import logging
from fractions import Fraction
from typing import Dict, List, Sequence, Tuple

import numpy as np

from qlambert.builders import Param
from qlambert.errors import DomainError

logger = logging.getLogger(__name__)

VARIABLES = ('x', 'y', 'z', 'w')

Params = Tuple[Param, Param, Param, Param]


@dataclasses.dataclass(frozen=True)
class Monomial4:
    rows: Tuple[Tuple[int, ...], ...]
    word: str = ''

    @staticmethod
    def of(matrix, word: str = '') -> 'Monomial4':
        matrix = np.asarray(matrix, dtype=np.int64)
        if matrix.shape != (4, 4):
            raise ValueError(f'expected a 4x4 exponent matrix, got {matrix.shape}')
        return Monomial4(tuple(tuple(int(v) for v in row) for row in matrix),
                         word)

    @property
    def matrix(self) -> np.ndarray:
        return np.array(self.rows, dtype=np.int64)

    def __matmul__(self, other: 'Monomial4') -> 'Monomial4':
        return Monomial4.of(self.matrix @ other.matrix, self.word + other.word)

    def __eq__(self, other):
        if not isinstance(other, Monomial4):
            return NotImplemented
        return self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    @property
    def determinant(self) -> int:
        return _determinant(self.rows)

    def is_identity(self) -> bool:
        return self.rows == IDENTITY.rows

    def components(self) -> List[str]:
        return [format_monomial(row) for row in self.rows]

    def evaluate(self, params: Sequence[Param]) -> Params:
        """
        Apply the monomial map to concrete parameters ``c*q^e``.

        :raises DomainError: when a component would carry a negative q-power
          or divide by a zero coefficient.
        """
        if len(params) != 4:
            raise ValueError('a quadruple (x, y, z, w) is expected')
        out = []
        for name, row in zip(VARIABLES, self.rows):
            c, e = Fraction(1), 0
            for p, k in zip(params, row):
                if k == 0:
                    continue
                if p.is_zero and k < 0:
                    raise DomainError(name, 'component divides by a zero parameter')
                c *= p.c ** k
                e += p.e * k
            out.append(Param(c, e))
        return tuple(out)

    def __str__(self):
        return f'({", ".join(self.components())})'


def _determinant(rows: Sequence[Sequence[int]]) -> int:
    # cofactor expansion along the first row, exact over the integers
    if len(rows) == 1:
        return rows[0][0]
    return sum((-1) ** j * a * _determinant([r[:j] + r[j + 1:] for r in rows[1:]])
               for j, a in enumerate(rows[0]) if a)


def format_monomial(exponents: Sequence[int]) -> str:
    """
    Render e.g. ``(0, 0, 1, -1)`` as ``z/w`` and ``(1, 1, 0, 0)`` as ``x*y``.
    """
    def power(name, k):
        return name if k == 1 else f'{name}^{k}'

    num = [power(v, k) for v, k in zip(VARIABLES, exponents) if k > 0]
    den = [power(v, -k) for v, k in zip(VARIABLES, exponents) if k < 0]
    text = '*'.join(num) or '1'
    if den:
        text += '/' + (den[0] if len(den) == 1 else f'({"*".join(den)})')
    return text


IDENTITY = Monomial4.of(np.eye(4, dtype=np.int64))

S = Monomial4.of([[0, 0, 1, -1],
                  [0, 0, 0, 1],
                  [1, 1, 0, 0],
                  [0, 1, 0, 0]], 'S')

T = Monomial4.of([[0, 1, 0, 0],
                  [1, 0, 0, 0],
                  [0, 0, 0, 1],
                  [0, 0, 1, 0]], 'T')

GENERATORS = {'S': S, 'T': T}


def apply(g: Monomial4, m: Monomial4) -> Monomial4:
    """
    Compose the generator `g` after `m`; the word grows on the left.
    """
    return g @ m


def power(g: Monomial4, n: int) -> Monomial4:
    result = IDENTITY
    for _ in range(n):
        result = result @ g
    return result


def order(g: Monomial4, limit: int = 1000) -> int:
    current = g
    for n in range(1, limit + 1):
        if current.is_identity():
            return n
        current = current @ g
    raise ValueError(f'element {g.word or "I"} has order above {limit}')


def closure(generators: Dict[str, Monomial4] = None) -> List[Monomial4]:
    """
    Breadth-first closure of the generators under composition.

    Each element carries one shortest word; ties are broken by trying the
    generators in the given order (S before T for the default pair).
    """
    generators = generators or GENERATORS
    seen = {IDENTITY: IDENTITY}
    queue = collections.deque([IDENTITY])
    while queue:
        m = queue.popleft()
        for g in generators.values():
            new = apply(g, m)
            if new not in seen:
                seen[new] = new
                queue.append(new)
    logger.debug('group closure has %d elements', len(seen))
    return list(seen.values())


def relations() -> Dict[str, bool]:
    """
    The defining relations, keyed by their printed form.
    """
    st = S @ T
    return {
        'S^2 = I': power(S, 2).is_identity(),
        'T^2 = I': power(T, 2).is_identity(),
        '(ST)^12 = I': power(st, 12).is_identity(),
        'order(ST) = 12': order(st) == 12,
    }
