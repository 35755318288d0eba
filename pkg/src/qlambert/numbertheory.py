"""
Divisor functions backing the divisor-sum comparison modes.
"""
import functools
from fractions import Fraction
from typing import List

from qlambert.errors import DomainError
from qlambert.scalars import Scalar


@functools.lru_cache(maxsize=4096)
def _divisors(n: int) -> tuple:
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
        d += 1
    return tuple(small + large[::-1])


def divisors(n: int) -> List[int]:
    """
    Positive divisors of `n` in increasing order.

    :raises DomainError: when ``n < 1``.
    """
    if n < 1:
        raise DomainError('n', f'divisors of {n} are not defined')
    return list(_divisors(n))


def sigma(k: int, n: int) -> int:
    """
    ``sigma_k(n) = sum_{d | n} d^k``.
    """
    if k < 0:
        raise DomainError('k', 'sigma_k needs k >= 0')
    return sum(d ** k for d in divisors(n))


def weighted_divisor_sum(n: int, z: Scalar) -> Scalar:
    """
    ``sum_{d | n} d * z^d``.
    """
    acc = Fraction(0)
    for d in divisors(n):
        acc = acc + d * z ** d
    return acc
