"""
Arithmetic mod p: base-p digit expansions and binomial coefficients via Lucas.

All operations are pure; integers are capped at 128 bits.
"""

from dataclasses import dataclass
from functools import lru_cache
from itertools import zip_longest
from typing import List, Optional, Tuple
import logging

from sympy import isprime, perfect_power

from ..config import MAX_INT_BITS
from ..errors import DigitOverflowError, InputError, RangeCapError

logger = logging.getLogger(__name__)

# Factorial tables mod p are kept for primes up to this size.
_FACTORIAL_TABLE_LIMIT = 2**20


@dataclass(frozen=True)
class PDigits:
    """Base-p digits of a nonnegative integer, least-significant first."""

    digits: Tuple[int, ...]
    p: int

    def value(self) -> int:
        total = 0
        for digit in reversed(self.digits):
            total = total * self.p + digit
        return total

    def padded(self, width: int) -> "PDigits":
        """Zero-pad to ``width`` digits."""
        if width < len(self.digits):
            raise DigitOverflowError(f"digit overflow: {self.value()} needs {len(self.digits)} digits base {self.p}")
        return PDigits(self.digits + (0,) * (width - len(self.digits)), self.p)

    def __len__(self) -> int:
        return len(self.digits)


@dataclass(frozen=True)
class ResidueModP:
    """An integer residue in [0, p-1]."""

    value: int
    p: int

    def __bool__(self) -> bool:
        return self.value != 0

    def __int__(self) -> int:
        return self.value


@lru_cache(maxsize=256)
def require_prime(p: int) -> int:
    """Return ``p`` if it is prime, else raise InputError."""
    if not isinstance(p, int) or p < 2 or not isprime(p):
        raise InputError(f"{p} is not a prime")
    return p


def check_int_range(n: int, name: str = "n") -> None:
    if n < 0:
        raise InputError(f"{name} must be nonnegative, got {n}")
    if n.bit_length() > MAX_INT_BITS:
        raise RangeCapError(f"{name} exceeds {MAX_INT_BITS} bits")


def split_prime_power(q: int) -> Tuple[int, int]:
    """Decompose a prime power q as (p, m) with q = p^m.

    Raises:
        InputError: q is not a prime power.
    """
    if not isinstance(q, int) or q < 2:
        raise InputError(f"{q} is not a prime power")
    if isprime(q):
        return q, 1
    decomposition = perfect_power(q)
    if decomposition:
        base, exponent = decomposition
        # perfect_power returns the largest exponent, so the base is prime for prime powers
        if isprime(base):
            return int(base), int(exponent)
    raise InputError(f"{q} is not a prime power")


def p_digits(n: int, p: int, width: Optional[int] = None) -> PDigits:
    """Base-p expansion of n, least-significant digit first.

    Args:
        n: Nonnegative integer below 2^128.
        p: Prime base.
        width: Exact number of digits to return; zero-padded.

    Returns:
        PDigits with minimal length (at least 1) unless ``width`` is given.

    Raises:
        DigitOverflowError: n does not fit in ``width`` digits.
    """
    check_int_range(n)
    require_prime(p)
    digits: List[int] = []
    rest = n
    while rest:
        rest, digit = divmod(rest, p)
        digits.append(digit)
    if not digits:
        digits.append(0)
    expansion = PDigits(tuple(digits), p)
    if width is not None:
        if width < 1:
            raise InputError(f"width must be positive, got {width}")
        if n and len(digits) > width:
            raise DigitOverflowError(f"digit overflow: {n} does not fit in {width} base-{p} digits")
        return PDigits(tuple(digits[:width]) + (0,) * max(0, width - len(digits)), p)
    return expansion


@lru_cache(maxsize=32)
def _factorials(p: int) -> Tuple[Tuple[int, ...], Tuple[int, ...]]:
    facts = [1] * p
    for i in range(1, p):
        facts[i] = facts[i - 1] * i % p
    inverse = [1] * p
    inverse[p - 1] = pow(facts[p - 1], p - 2, p)
    for i in range(p - 1, 0, -1):
        inverse[i - 1] = inverse[i] * i % p
    return tuple(facts), tuple(inverse)


def _small_binom_value(a: int, b: int, p: int) -> int:
    if b < 0 or b > a:
        return 0
    if p <= _FACTORIAL_TABLE_LIMIT:
        facts, inverse = _factorials(p)
        return facts[a] * inverse[b] * inverse[a - b] % p
    b = min(b, a - b)
    numerator = denominator = 1
    for i in range(b):
        numerator = numerator * (a - i) % p
        denominator = denominator * (i + 1) % p
    return numerator * pow(denominator, p - 2, p) % p


def small_binom(a: int, b: int, p: int) -> ResidueModP:
    """C(a, b) mod p for a single digit a < p; zero when b > a or b < 0."""
    require_prime(p)
    if not 0 <= a < p:
        raise InputError(f"small_binom needs 0 <= a < p, got a={a}, p={p}")
    return ResidueModP(_small_binom_value(a, b, p), p)


def lucas_binom(n: int, k: int, p: int) -> ResidueModP:
    """C(n, k) mod p as the product of digit-wise binomials (Lucas).

    k > n is allowed and yields 0.
    """
    check_int_range(n)
    check_int_range(k, "k")
    require_prime(p)
    if k > n:
        return ResidueModP(0, p)
    result = 1
    for a, b in zip_longest(p_digits(n, p).digits, p_digits(k, p).digits, fillvalue=0):
        if b > a:
            return ResidueModP(0, p)
        result = result * _small_binom_value(a, b, p) % p
        if not result:
            break
    return ResidueModP(result, p)


def binom_mod_p(n: int, k: int, p: int) -> int:
    """Integer form of lucas_binom for the hot loops of the power-sum engine."""
    if k < 0 or k > n:
        return 0
    result = 1
    while k:
        n, a = divmod(n, p)
        k, b = divmod(k, p)
        if b > a:
            return 0
        result = result * _small_binom_value(a, b, p) % p
    return result
