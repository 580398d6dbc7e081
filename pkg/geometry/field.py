"""Finite fields GF(p^e) with log/antilog (Zech-style) table arithmetic.

Elements are integer indices in ``[0, q)``: the base-p digits of an index are
the coefficients of the element as a polynomial in the field generator ``x``,
constant term in the least significant digit.  Every operation accepts Python
ints or numpy integer arrays; scalar inputs give ``int`` results.
"""

import functools
import logging
from dataclasses import dataclass
from typing import List, Tuple

import numpy as np

from config import MAX_FIELD_ORDER
from errors import DivisionByZero, NoIrreducibleFound, NotPrime, TooLarge, UsageError

logger = logging.getLogger("ogc.field")

# An element of a FieldSpec is its index.
Felt = int


def is_prime(p: int) -> bool:
    """Trial-division primality test (p is at most 2**16 here)."""
    if p < 2:
        return False
    for d in range(2, int(p ** 0.5) + 1):
        if p % d == 0:
            return False
    return True


# ------------------------------------------------------------------
# Polynomials over GF(p): coefficient lists, constant term first
# ------------------------------------------------------------------

def _digits(value: int, p: int, length: int) -> List[int]:
    out = []
    for _ in range(length):
        out.append(value % p)
        value //= p
    return out


def _pack(coeffs: List[int], p: int) -> int:
    value = 0
    for c in reversed(coeffs):
        value = value * p + c
    return value


def _poly_rem(a: List[int], m: List[int], p: int) -> List[int]:
    """Remainder of a modulo the monic polynomial m."""
    a = list(a)
    dm = len(m) - 1
    while len(a) - 1 >= dm:
        lead = a[-1] % p
        if lead:
            shift = len(a) - 1 - dm
            for i, c in enumerate(m):
                a[shift + i] = (a[shift + i] - lead * c) % p
        a.pop()
    return a + [0] * (dm - len(a))


def _poly_mulmod(a: List[int], b: List[int], m: List[int], p: int) -> List[int]:
    prod = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                prod[i + j] = (prod[i + j] + x * y) % p
    return _poly_rem(prod, m, p)


def _is_irreducible(m: List[int], p: int) -> bool:
    """Exhaustive check: no monic factor of degree 1..deg(m)//2 divides m."""
    e = len(m) - 1
    if e <= 1:
        return True
    for d in range(1, e // 2 + 1):
        for tail in range(p ** d):
            factor = _digits(tail, p, d) + [1]
            if not any(_poly_rem(m, factor, p)):
                return False
    return True


def least_irreducible(p: int, e: int) -> Tuple[int, ...]:
    """Lexicographically least monic irreducible polynomial of degree e.

    Candidates are ordered by the integer whose base-p digits are their lower
    coefficients (constant term least significant).
    """
    for tail in range(p ** e):
        m = _digits(tail, p, e) + [1]
        if _is_irreducible(m, p):
            return tuple(m)
    raise NoIrreducibleFound("no irreducible polynomial of degree {} over GF({})".format(e, p))


# ------------------------------------------------------------------
# FieldSpec
# ------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class FieldSpec:
    """GF(p^e) with verified log/antilog tables.

    ``exp`` has length 2(q-1) so that ``exp[log[a] + log[b]]`` needs no
    reduction; ``log[0]`` is an unused placeholder.
    """
    p: int
    e: int
    q: int
    modulus: Tuple[int, ...]
    primitive: int
    exp: np.ndarray
    log: np.ndarray

    def __repr__(self) -> str:
        return "GF({})".format(self.q)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, FieldSpec) and (self.p, self.e) == (other.p, other.e)

    def __hash__(self) -> int:
        return hash((self.p, self.e))

    def __reduce__(self):
        return (field_new, (self.p, self.e))

    @property
    def is_even_char(self) -> bool:
        return self.p == 2

    def elements(self) -> np.ndarray:
        return np.arange(self.q, dtype=np.int64)

    # --- vectorized arithmetic ---

    def _digitwise(self, a: np.ndarray, b: np.ndarray, op) -> np.ndarray:
        p = self.p
        out = np.zeros(np.broadcast(a, b).shape, dtype=np.int64)
        place = 1
        for _ in range(self.e):
            out = out + op((a // place) % p, (b // place) % p) % p * place
            place *= p
        return out

    def add(self, a, b):
        scalar = np.ndim(a) == 0 and np.ndim(b) == 0
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        if self.p == 2:
            out = a ^ b
        elif self.e == 1:
            out = (a + b) % self.p
        else:
            out = self._digitwise(a, b, lambda x, y: x + y)
        return int(out) if scalar else out

    def neg(self, a):
        scalar = np.ndim(a) == 0
        a = np.asarray(a, dtype=np.int64)
        if self.p == 2:
            out = a.copy()
        elif self.e == 1:
            out = (-a) % self.p
        else:
            out = self._digitwise(a, np.zeros_like(a), lambda x, y: self.p - x)
        return int(out) if scalar else out

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        scalar = np.ndim(a) == 0 and np.ndim(b) == 0
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        if self.e == 1:
            out = (a * b) % self.p
        else:
            out = self.exp[self.log[a] + self.log[b]]
            out = np.where((a == 0) | (b == 0), 0, out)
        return int(out) if scalar else out

    def inv(self, a):
        scalar = np.ndim(a) == 0
        a = np.asarray(a, dtype=np.int64)
        if np.any(a == 0):
            raise DivisionByZero("inverse of 0 in {}".format(self))
        out = self.exp[(self.q - 1 - self.log[a]) % (self.q - 1)]
        return int(out) if scalar else out

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pow(self, a, k: int):
        scalar = np.ndim(a) == 0
        a = np.asarray(a, dtype=np.int64)
        if k < 0:
            a = np.asarray(self.inv(a), dtype=np.int64)
            k = -k
        if k == 0:
            out = np.ones_like(a)
        else:
            out = self.exp[(self.log[a] * k) % (self.q - 1)]
            out = np.where(a == 0, 0, out)
        return int(out) if scalar else out

    def matmul(self, A: np.ndarray, B: np.ndarray) -> np.ndarray:
        """Matrix product over GF(q)."""
        A = np.asarray(A, dtype=np.int64)
        B = np.asarray(B, dtype=np.int64)
        if self.e == 1:
            return (A @ B) % self.p
        out = np.zeros((A.shape[0], B.shape[1]), dtype=np.int64)
        for i in range(A.shape[1]):
            out = self.add(out, self.mul(A[:, i:i + 1], B[i:i + 1, :]))
        return out

    def sum(self, a: np.ndarray, axis: int = -1) -> np.ndarray:
        """Field sum along an axis."""
        a = np.asarray(a, dtype=np.int64)
        if self.e == 1:
            return a.sum(axis=axis) % self.p
        a = np.moveaxis(a, axis, 0)
        out = np.zeros(a.shape[1:], dtype=np.int64)
        for row in a:
            out = self.add(out, row)
        return out


def _multiplicative_order(g: List[int], m: List[int], p: int, q: int) -> int:
    one = [1] + [0] * (len(m) - 2)
    x = list(g)
    order = 1
    while x != one:
        x = _poly_mulmod(x, g, m, p)
        order += 1
        if order > q:
            return 0
    return order


@functools.lru_cache(maxsize=None)
def field_new(p: int, e: int = 1) -> FieldSpec:
    """Construct GF(p^e) with the least irreducible modulus and verified tables."""
    if not is_prime(p):
        raise NotPrime("{} is not prime".format(p))
    if e < 1:
        raise UsageError("extension degree must be >= 1, got {}".format(e))
    q = p ** e
    if q > MAX_FIELD_ORDER:
        raise TooLarge("GF({}^{}) exceeds the maximum order {}".format(p, e, MAX_FIELD_ORDER))

    modulus = least_irreducible(p, e)
    m = list(modulus)

    primitive = None
    for cand in range(1, q):
        g = _digits(cand, p, e)
        if _multiplicative_order(g, m, p, q) == q - 1:
            primitive = cand
            break
    if primitive is None:
        raise NoIrreducibleFound("no primitive element in GF({})".format(q))

    exp = np.zeros(2 * (q - 1) if q > 1 else 1, dtype=np.int64)
    log = np.zeros(q, dtype=np.int64)
    g = _digits(primitive, p, e)
    x = [1] + [0] * (e - 1)
    for i in range(q - 1):
        value = _pack(x, p)
        exp[i] = value
        exp[i + q - 1] = value
        log[value] = i
        x = _poly_mulmod(x, g, m, p)

    nonzero = np.arange(1, q)
    if not np.array_equal(exp[log[nonzero]], nonzero):
        raise NoIrreducibleFound("log/antilog tables of GF({}) are inconsistent".format(q))

    logger.debug("built GF(%d) modulus=%s primitive=%d", q, modulus, primitive)
    return FieldSpec(p=p, e=e, q=q, modulus=modulus, primitive=primitive, exp=exp, log=log)


def field_from_order(q: int) -> FieldSpec:
    """GF(q) from the order alone (q must be a prime power)."""
    if q < 2:
        raise NotPrime("field order must be a prime power, got {}".format(q))
    for p in range(2, q + 1):
        if q % p == 0:
            break
    e = 0
    rest = q
    while rest % p == 0:
        rest //= p
        e += 1
    if rest != 1 or not is_prime(p):
        raise NotPrime("{} is not a prime power".format(q))
    return field_new(p, e)
