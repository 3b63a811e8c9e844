"""
Extension fields F_{p^n} in the polynomial basis.

A FieldCtx is built once per (p, n) from the lexicographically smallest monic
irreducible modulus. Small fields additionally carry exponent, logarithm and Zech
tables (numpy arrays) so that exhaustive scans run vector-wise over log-encoded
elements. Element codes are the base-p numerals sum(c_i * p^i).
"""

from dataclasses import dataclass
from functools import lru_cache
from math import isqrt
from typing import Dict, Iterator, List, Optional, Sequence, Tuple
import logging

import numpy as np
from sympy import factorint
from sympy.polys.domains import ZZ
from sympy.polys.galoistools import gf_irreducible_p

from ..config import LOG_TABLE_CAP, MAX_FIELD_ORDER, MAX_INT_BITS
from ..errors import FieldZeroDivisionError, InputError, RangeCapError, ReducibleModulusError
from .prime_field import require_prime

logger = logging.getLogger(__name__)

_TABLE_BLOCK = 4096


@dataclass(frozen=True)
class FieldElem:
    """Coefficient vector over F_p, constant term first."""

    coeffs: Tuple[int, ...]

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __str__(self) -> str:
        return ",".join(str(c) for c in self.coeffs)


def is_irreducible(modulus: Sequence[int], p: int) -> bool:
    """Irreducibility of a constant-first coefficient vector over F_p."""
    degree = len(modulus) - 1
    if degree < 1:
        return False
    if degree == 1:
        return True
    return bool(gf_irreducible_p([ZZ(c % p) for c in reversed(modulus)], p, ZZ))


def _check_order(p: int, n: int) -> int:
    if n < 1:
        raise InputError(f"extension degree must be positive, got {n}")
    order = p**n
    if order > MAX_FIELD_ORDER:
        raise RangeCapError(f"field order {p}^{n} exceeds the cap 2^40")
    return order


def find_irreducible(p: int, n: int) -> Tuple[int, ...]:
    """Lexicographically smallest monic irreducible of degree n over F_p.

    Candidates (c_{n-1}, ..., c_0) are ordered as base-p numerals.

    Returns:
        Constant-first coefficient tuple of length n + 1 ending in 1.
    """
    require_prime(p)
    _check_order(p, n)
    for numeral in range(p**n):
        lower = []
        rest = numeral
        for _ in range(n):
            rest, digit = divmod(rest, p)
            lower.append(digit)
        candidate = tuple(lower) + (1,)
        if is_irreducible(candidate, p):
            logger.debug(f"modulus for F_{p}^{n}: {candidate}")
            return candidate
    raise RangeCapError(f"no irreducible polynomial of degree {n} over F_{p}")  # unreachable


@dataclass(frozen=True)
class SubgroupIter:
    """The subgroup mu_d of d-th roots of unity, generated by primitive^((p^n-1)/d)."""

    ctx: "FieldCtx"
    d: int
    generator: FieldElem

    @property
    def step(self) -> int:
        """omega-exponent stride between consecutive elements."""
        return (self.ctx.order - 1) // self.d

    def __len__(self) -> int:
        return self.d

    def __iter__(self) -> Iterator[FieldElem]:
        current = self.ctx.one
        for _ in range(self.d):
            yield current
            current = self.ctx.mul(current, self.generator)

    def log_values(self) -> np.ndarray:
        """omega-exponents of the elements in iteration order."""
        return np.arange(self.d, dtype=np.int64) * self.step


class FieldCtx:
    """An immutable extension field F_{p^n} with optional discrete-log tables."""

    def __init__(
        self,
        p: int,
        n: int,
        modulus: Sequence[int],
        primitive: Optional[FieldElem] = None,
        exp_table: Optional[np.ndarray] = None,
        log_table: Optional[np.ndarray] = None,
        zech_table: Optional[np.ndarray] = None,
    ):
        self.p = p
        self.n = n
        self.modulus = tuple(modulus)
        self.order = p**n
        self.primitive = primitive
        self.exp_table = exp_table
        self.log_table = log_table
        self.zech_table = zech_table
        self._weights = tuple(p**i for i in range(n))
        self._baby_steps: Optional[Dict[int, int]] = None

    # ------------------------------------------------------------------ basics

    @property
    def has_logs(self) -> bool:
        return self.log_table is not None

    @property
    def zero(self) -> FieldElem:
        return FieldElem((0,) * self.n)

    @property
    def one(self) -> FieldElem:
        return FieldElem((1,) + (0,) * (self.n - 1))

    @property
    def minus_one_log(self) -> int:
        """omega-exponent of -1 (0 in characteristic 2)."""
        return (self.order - 1) // 2 if self.p != 2 else 0

    def element(self, coeffs: Sequence[int]) -> FieldElem:
        if len(coeffs) != self.n:
            raise InputError(f"element needs {self.n} coefficients, got {len(coeffs)}")
        if any(not 0 <= c < self.p for c in coeffs):
            raise InputError(f"coefficients must lie in [0, {self.p - 1}]")
        return FieldElem(tuple(int(c) for c in coeffs))

    def constant(self, value: int) -> FieldElem:
        return FieldElem((value % self.p,) + (0,) * (self.n - 1))

    def to_int(self, x: FieldElem) -> int:
        return sum(c * w for c, w in zip(x.coeffs, self._weights))

    def from_int(self, code: int) -> FieldElem:
        coeffs = []
        for _ in range(self.n):
            code, digit = divmod(code, self.p)
            coeffs.append(digit)
        return FieldElem(tuple(coeffs))

    def describe(self) -> str:
        return f"p={self.p} n={self.n} mod={','.join(str(c) for c in self.modulus)}"

    def parse_elem(self, text: str) -> FieldElem:
        try:
            coeffs = [int(part) for part in text.replace(" ", "").split(",") if part != ""]
        except ValueError as e:
            raise InputError(f"malformed element '{text}': {e}")
        if len(coeffs) < self.n:
            coeffs += [0] * (self.n - len(coeffs))
        return self.element(coeffs)

    # -------------------------------------------------------------- arithmetic

    def add(self, x: FieldElem, y: FieldElem) -> FieldElem:
        return FieldElem(tuple((a + b) % self.p for a, b in zip(x.coeffs, y.coeffs)))

    def sub(self, x: FieldElem, y: FieldElem) -> FieldElem:
        return FieldElem(tuple((a - b) % self.p for a, b in zip(x.coeffs, y.coeffs)))

    def neg(self, x: FieldElem) -> FieldElem:
        return FieldElem(tuple(-a % self.p for a in x.coeffs))

    def scale(self, x: FieldElem, c: int) -> FieldElem:
        c %= self.p
        return FieldElem(tuple(a * c % self.p for a in x.coeffs))

    def mul(self, x: FieldElem, y: FieldElem) -> FieldElem:
        if x.is_zero() or y.is_zero():
            return self.zero
        if self.has_logs:
            total = int(self.log_table[self.to_int(x)]) + int(self.log_table[self.to_int(y)])
            return self.from_int(int(self.exp_table[total % (self.order - 1)]))
        return self._mul_plain(x, y)

    def _mul_plain(self, x: FieldElem, y: FieldElem) -> FieldElem:
        p, n = self.p, self.n
        product = [0] * (2 * n - 1)
        for i, a in enumerate(x.coeffs):
            if a:
                for j, b in enumerate(y.coeffs):
                    product[i + j] += a * b
        for degree in range(2 * n - 2, n - 1, -1):
            top = product[degree] % p
            if top:
                base = degree - n
                for i in range(n):
                    product[base + i] -= top * self.modulus[i]
        return FieldElem(tuple(c % p for c in product[:n]))

    def inv(self, x: FieldElem) -> FieldElem:
        if x.is_zero():
            raise FieldZeroDivisionError("inversion of zero")
        return self.pow(x, -1)

    def pow(self, x: FieldElem, exponent: int) -> FieldElem:
        """x^exponent; negative exponents are reduced mod p^n - 1 for nonzero x."""
        if abs(exponent).bit_length() > MAX_INT_BITS:
            raise RangeCapError(f"exponent exceeds {MAX_INT_BITS} bits")
        if x.is_zero():
            if exponent == 0:
                return self.one
            if exponent < 0:
                raise FieldZeroDivisionError("negative power of zero")
            return self.zero
        group = self.order - 1
        exponent %= group
        if self.has_logs:
            index = int(self.log_table[self.to_int(x)]) * exponent % group
            return self.from_int(int(self.exp_table[index]))
        result = self.one
        base = x
        while exponent:
            if exponent & 1:
                result = self._mul_plain(result, base)
            base = self._mul_plain(base, base)
            exponent >>= 1
        return result

    def frobenius(self, x: FieldElem, q: int) -> FieldElem:
        """x^q for q = p^m with m | n."""
        m = 0
        power = 1
        while power < q:
            power *= self.p
            m += 1
        if power != q or m == 0 or self.n % m:
            raise InputError(f"q={q} is not p^m with m dividing {self.n}")
        return self.pow(x, q)

    # -------------------------------------------------------- discrete logs

    def elem_exp(self, i: int) -> FieldElem:
        """omega^i for the canonical primitive element."""
        if self.has_logs:
            return self.from_int(int(self.exp_table[i % (self.order - 1)]))
        return self.pow(self.primitive, i)

    def elem_log(self, x: FieldElem) -> int:
        """The exponent i in [0, p^n - 2] with omega^i = x."""
        if x.is_zero():
            raise FieldZeroDivisionError("logarithm of zero")
        if self.has_logs:
            return int(self.log_table[self.to_int(x)])
        return self._baby_step_giant_step(x)

    def _baby_step_giant_step(self, x: FieldElem) -> int:
        group = self.order - 1
        stride = isqrt(group) + 1
        if self._baby_steps is None:
            table: Dict[int, int] = {}
            current = self.one
            for j in range(stride):
                table.setdefault(self.to_int(current), j)
                current = self._mul_plain(current, self.primitive)
            self._baby_steps = table
        giant = self.pow(self.primitive, -stride)
        y = x
        for i in range(stride + 1):
            j = self._baby_steps.get(self.to_int(y))
            if j is not None:
                return (i * stride + j) % group
            y = self._mul_plain(y, giant)
        raise InputError(f"no logarithm found for {x}")  # unreachable for a primitive omega

    # ------------------------------------------------- vectorized log kernels

    def require_logs(self) -> None:
        if not self.has_logs:
            raise RangeCapError(f"log tables are not available for order {self.order}")

    def add_logs(self, u: np.ndarray, v) -> np.ndarray:
        """Logs of omega^u + omega^v elementwise; -1 encodes zero on input and output."""
        self.require_logs()
        group = self.order - 1
        u, v = np.broadcast_arrays(np.asarray(u, dtype=np.int64), np.asarray(v, dtype=np.int64))
        result = np.empty(u.shape, dtype=np.int64)
        u_zero = u < 0
        v_zero = v < 0
        both = ~u_zero & ~v_zero
        zech = self.zech_table[(v[both] - u[both]) % group].astype(np.int64)
        result[both] = np.where(zech < 0, -1, (u[both] + zech) % group)
        result[u_zero] = v[u_zero]
        only_v_zero = v_zero & ~u_zero
        result[only_v_zero] = u[only_v_zero]
        return result

    def neg_logs(self, u: np.ndarray) -> np.ndarray:
        u = np.asarray(u, dtype=np.int64)
        return np.where(u < 0, -1, (u + self.minus_one_log) % (self.order - 1))

    def codes_of_logs(self, u: np.ndarray) -> np.ndarray:
        """Element codes of omega^u; zero for -1 entries."""
        self.require_logs()
        u = np.asarray(u, dtype=np.int64)
        codes = self.exp_table[np.where(u < 0, 0, u)].astype(np.int64)
        return np.where(u < 0, 0, codes)

    def power_sum_from_logs(self, logs: np.ndarray, exponent: int) -> FieldElem:
        """Sum of (omega^L)^exponent over the nonnegative entries L; exponent >= 1."""
        self.require_logs()
        group = self.order - 1
        nonzero = np.asarray(logs, dtype=np.int64)
        nonzero = nonzero[nonzero >= 0]
        if nonzero.size == 0:
            return self.zero
        powers = nonzero * (exponent % group) % group
        counts = np.bincount(powers, minlength=group) % self.p
        support = np.nonzero(counts)[0]
        codes = self.exp_table[support].astype(np.int64)
        weights = counts[support].astype(np.int64)
        coeffs = []
        for i in range(self.n):
            digit = (codes // self._weights[i]) % self.p
            coeffs.append(int((digit * weights).sum() % self.p))
        return FieldElem(tuple(coeffs))

    # ------------------------------------------------------ table building

    def _times_x(self, vector: List[int]) -> List[int]:
        top = vector[-1]
        shifted = [0] + vector[:-1]
        if top:
            shifted = [(s - top * m) % self.p for s, m in zip(shifted, self.modulus)]
        return shifted

    def _mul_matrix(self, c: FieldElem) -> np.ndarray:
        rows = []
        current = list(c.coeffs)
        for _ in range(self.n):
            rows.append(current)
            current = self._times_x(current)
        return np.array(rows, dtype=np.int64)

    def build_tables(self) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
        """Exponent, logarithm and Zech tables for the canonical primitive element."""
        group = self.order - 1
        block = min(group, _TABLE_BLOCK)
        base = np.zeros((block, self.n), dtype=np.int64)
        current = self.one
        for k in range(block):
            base[k] = current.coeffs
            current = self._mul_plain(current, self.primitive)
        weights = np.array(self._weights, dtype=np.int64)
        exp_codes = np.empty(group, dtype=np.int64)
        exp_codes[:block] = base @ weights
        shift = current
        start = block
        while start < group:
            rows = (base @ self._mul_matrix(shift)) % self.p
            count = min(block, group - start)
            exp_codes[start:start + count] = rows[:count] @ weights
            shift = self._mul_plain(shift, current)
            start += block
        log_table = np.full(self.order, -1, dtype=np.int64)
        log_table[exp_codes] = np.arange(group, dtype=np.int64)
        if int(np.count_nonzero(log_table >= 0)) != group:
            raise ReducibleModulusError(f"element {self.primitive} does not generate F_{self.p}^{self.n}")
        low_digit = exp_codes % self.p
        plus_one = np.where(low_digit == self.p - 1, exp_codes - (self.p - 1), exp_codes + 1)
        zech_table = log_table[plus_one]
        return exp_codes.astype(np.int32), log_table.astype(np.int32), zech_table.astype(np.int32)


def _group_prime_factors(order: int) -> List[int]:
    return sorted(int(prime) for prime in factorint(order - 1))


def find_primitive(ctx: FieldCtx) -> FieldElem:
    """Smallest element, by code, whose multiplicative order is p^n - 1."""
    group = ctx.order - 1
    if group == 1:
        return ctx.one
    cofactors = [group // prime for prime in _group_prime_factors(ctx.order)]
    for code in range(1, ctx.order):
        candidate = ctx.from_int(code)
        if all(ctx.pow(candidate, c) != ctx.one for c in cofactors):
            return candidate
    raise RangeCapError(f"no primitive element found in F_{ctx.p}^{ctx.n}")  # unreachable


def field_create(
    p: int,
    n: int,
    modulus: Optional[Sequence[int]] = None,
    build_logs: bool = False,
) -> FieldCtx:
    """Construct and validate F_{p^n}.

    Args:
        p: Prime characteristic.
        n: Extension degree.
        modulus: Optional monic degree-n modulus, constant term first.
        build_logs: Build exponent/log/Zech tables (orders up to 2^24 only).

    Raises:
        ReducibleModulusError: the supplied modulus is reducible.
        RangeCapError: the order exceeds the caps.
    """
    require_prime(p)
    order = _check_order(p, n)
    if modulus is None:
        modulus = find_irreducible(p, n)
    else:
        modulus = tuple(int(c) for c in modulus)
        if len(modulus) != n + 1 or modulus[-1] != 1:
            raise InputError(f"modulus must be monic of degree {n}")
        if any(not 0 <= c < p for c in modulus):
            raise InputError(f"modulus coefficients must lie in [0, {p - 1}]")
        if not is_irreducible(modulus, p):
            raise ReducibleModulusError(f"modulus {modulus} is reducible over F_{p}")
    if build_logs and order > LOG_TABLE_CAP:
        raise RangeCapError(f"log tables are limited to orders up to 2^24, got {p}^{n}")

    bare = FieldCtx(p, n, modulus)
    primitive = find_primitive(bare)
    ctx = FieldCtx(p, n, modulus, primitive)
    if build_logs:
        logger.info(f"building log tables for F_{p}^{n} (order {order})")
        exp_table, log_table, zech_table = ctx.build_tables()
        ctx = FieldCtx(p, n, modulus, primitive, exp_table, log_table, zech_table)
    return ctx


@lru_cache(maxsize=8)
def get_field(p: int, n: int, build_logs: Optional[bool] = None) -> FieldCtx:
    """Cached canonical field; log tables are built whenever the order allows."""
    if build_logs is None:
        build_logs = p**n <= LOG_TABLE_CAP
    return field_create(p, n, build_logs=build_logs)


def parse_field(text: str, build_logs: bool = False) -> FieldCtx:
    """Parse the text form 'p=3 n=6 mod=c0,c1,...,c6'."""
    fields = {}
    for token in text.split():
        key, _, value = token.partition("=")
        fields[key] = value
    try:
        p = int(fields["p"])
        n = int(fields["n"])
        modulus = [int(c) for c in fields["mod"].split(",")] if fields.get("mod") else None
    except (KeyError, ValueError) as e:
        raise InputError(f"malformed field description '{text}': {e}")
    return field_create(p, n, modulus, build_logs=build_logs)


def frobenius(ctx: FieldCtx, x: FieldElem, q: int) -> FieldElem:
    return ctx.frobenius(x, q)


def mu_subgroup(ctx: FieldCtx, d: int) -> SubgroupIter:
    """The subgroup of d-th roots of unity; d must divide p^n - 1."""
    group = ctx.order - 1
    if d < 1 or group % d:
        raise InputError(f"d={d} does not divide {group}")
    return SubgroupIter(ctx, d, ctx.pow(ctx.primitive, group // d))


def elem_exp(ctx: FieldCtx, i: int) -> FieldElem:
    return ctx.elem_exp(i)


def elem_log(ctx: FieldCtx, x: FieldElem) -> int:
    return ctx.elem_log(x)


def multiplicative_order(ctx: FieldCtx, x: FieldElem) -> int:
    """Order of a nonzero element, from the factorization of p^n - 1."""
    if x.is_zero():
        raise FieldZeroDivisionError("zero has no multiplicative order")
    order = ctx.order - 1
    for prime, power in factorint(order).items():
        for _ in range(power):
            if ctx.pow(x, order // prime) == ctx.one:
                order //= prime
            else:
                break
    return order


def group_factorization(ctx: FieldCtx) -> Dict[int, int]:
    return {int(prime): int(power) for prime, power in sorted(factorint(ctx.order - 1).items())}
