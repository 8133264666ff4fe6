"""Exact arithmetic in Z[zeta_N].

A :class:`CycInt` stores an integer coefficient vector ``c`` of length ``N``
standing for ``sum_e c[e] * zeta_N**e``.  Representatives are not unique;
equality is decided by reducing modulo the N-th cyclotomic polynomial.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Iterable

import mpmath


class ModulusMismatchError(ValueError):
    pass


# -- integer polynomials, ascending coefficient lists ----------------------


def _trim(p: list[int]) -> list[int]:
    while len(p) > 1 and p[-1] == 0:
        p.pop()
    return p


def _polymul(a: list[int], b: list[int]) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _trim(out)


def _divmod_monic(num: list[int], den: list[int]) -> tuple[list[int], list[int]]:
    """Quotient and remainder of ``num / den`` for a monic ``den``."""
    if den[-1] != 1:
        raise ValueError("divisor must be monic")
    rem = list(num)
    d = len(den) - 1
    if len(rem) <= d:
        return [0], _trim(rem + [0])
    quot = [0] * (len(rem) - d)
    for i in range(len(rem) - 1, d - 1, -1):
        c = rem[i]
        if c:
            quot[i - d] = c
            for j in range(d + 1):
                rem[i - d + j] -= c * den[j]
    return _trim(quot), _trim(rem[:d] or [0])


@lru_cache(maxsize=None)
def cyclotomic_poly(N: int) -> tuple[int, ...]:
    """Coefficients of Phi_N, constant term first.

    Computed as (x^N - 1) divided by Phi_d for every proper divisor d of N.
    """
    if N < 1:
        raise ValueError(f"N must be positive, got {N}")
    num = [-1] + [0] * (N - 1) + [1]
    for d in range(1, N):
        if N % d == 0:
            num, rem = _divmod_monic(num, list(cyclotomic_poly(d)))
            assert rem == [0], f"Phi_{d} does not divide x^{N} - 1"
    return tuple(num)


def euler_phi(N: int) -> int:
    return len(cyclotomic_poly(N)) - 1


@lru_cache(maxsize=None)
def _roots(N: int) -> tuple[complex, ...]:
    return tuple(cmath.exp(2j * math.pi * e / N) for e in range(N))


# -- ring elements ---------------------------------------------------------


@dataclass(frozen=True, eq=False)
class CycInt:
    """An element of Z[zeta_N] given by any representative coefficient vector."""

    modulus: int
    coeffs: tuple[int, ...]

    def __post_init__(self):
        coeffs = tuple(int(c) for c in self.coeffs)
        if len(coeffs) != self.modulus:
            raise ValueError(f"expected {self.modulus} coefficients, got {len(coeffs)}")
        object.__setattr__(self, "coeffs", coeffs)

    # constructors

    @classmethod
    def zero(cls, N: int) -> CycInt:
        return cls(N, (0,) * N)

    @classmethod
    def from_int(cls, N: int, value: int) -> CycInt:
        return cls(N, (value,) + (0,) * (N - 1))

    @classmethod
    def root(cls, N: int, e: int) -> CycInt:
        """``zeta_N ** e``."""
        c = [0] * N
        c[e % N] = 1
        return cls(N, tuple(c))

    @classmethod
    def from_exponents(cls, N: int, exponents: Iterable[int]) -> CycInt:
        """``sum zeta_N ** e`` over the given exponents (with repetition)."""
        c = [0] * N
        for e in exponents:
            c[e % N] += 1
        return cls(N, tuple(c))

    # arithmetic

    def _coerce(self, other) -> CycInt:
        if isinstance(other, int):
            return CycInt.from_int(self.modulus, other)
        if not isinstance(other, CycInt):
            return NotImplemented
        if other.modulus != self.modulus:
            raise ModulusMismatchError(f"moduli {self.modulus} and {other.modulus} differ")
        return other

    def __add__(self, other) -> CycInt:
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return CycInt(self.modulus, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    __radd__ = __add__

    def __neg__(self) -> CycInt:
        return CycInt(self.modulus, tuple(-a for a in self.coeffs))

    def __sub__(self, other) -> CycInt:
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return CycInt(self.modulus, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __rsub__(self, other) -> CycInt:
        return -self + other

    def __mul__(self, other) -> CycInt:
        if isinstance(other, int):
            return CycInt(self.modulus, tuple(other * a for a in self.coeffs))
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        N = self.modulus
        out = [0] * N
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    if b:
                        out[(i + j) % N] += a * b
        return CycInt(N, tuple(out))

    __rmul__ = __mul__

    def conj(self) -> CycInt:
        """Complex conjugate: zeta^e -> zeta^(N - e)."""
        N = self.modulus
        out = [0] * N
        for e, c in enumerate(self.coeffs):
            out[-e % N] += c
        return CycInt(N, tuple(out))

    def abs2(self) -> CycInt:
        return self * self.conj()

    # exact predicates

    @cached_property
    def canonical(self) -> tuple[int, ...]:
        """Coordinates in the basis 1, zeta, ..., zeta^(phi(N)-1)."""
        phi = cyclotomic_poly(self.modulus)
        _, rem = _divmod_monic(list(self.coeffs), list(phi))
        deg = len(phi) - 1
        return tuple(rem + [0] * (deg - len(rem)))

    def is_zero(self) -> bool:
        return not any(self.canonical)

    def is_real(self) -> bool:
        return (self - self.conj()).is_zero()

    def as_integer(self) -> int | None:
        """The value as a Python int when it is a rational integer, else None."""
        c = self.canonical
        if any(c[1:]):
            return None
        return c[0]

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            return self.as_integer() == other
        if not isinstance(other, CycInt):
            return NotImplemented
        return self.modulus == other.modulus and self.canonical == other.canonical

    def __hash__(self) -> int:
        return hash((self.modulus, self.canonical))

    # numerics

    def numeric_eval(self) -> complex:
        roots = _roots(self.modulus)
        return sum((c * roots[e] for e, c in enumerate(self.coeffs) if c), 0j)

    def __complex__(self) -> complex:
        return self.numeric_eval()

    def real_sign(self) -> int:
        """Sign of a real element, decided rigorously.

        Zero is detected exactly.  Otherwise every Galois conjugate is bounded
        by the l1 norm B of the canonical coordinates and the norm is a nonzero
        integer, so |x| >= B**(1 - phi(N)); the working precision is chosen to
        resolve that bound.
        """
        if not self.is_real():
            raise ValueError("real_sign needs a real element")
        if self.is_zero():
            return 0
        c = self.canonical
        bound = max(2, sum(abs(x) for x in c))
        digits = int((len(c) - 1) * math.log10(bound)) + 30
        N = self.modulus
        with mpmath.workdps(digits):
            value = mpmath.fsum(
                x * mpmath.cos(2 * mpmath.pi * e / N) for e, x in enumerate(c) if x
            )
            return 1 if value > 0 else -1

    def __repr__(self) -> str:
        terms = [f"{c}*z^{e}" if e else str(c) for e, c in enumerate(self.coeffs) if c]
        return f"CycInt(N={self.modulus}: {' + '.join(terms) or '0'})"


def compare_real(a: CycInt, b: CycInt) -> int:
    """-1, 0 or 1 according to the order of two real elements."""
    return (a - b).real_sign()


def add(a: CycInt, b: CycInt) -> CycInt:
    return a + b


def mul(a: CycInt, b: CycInt) -> CycInt:
    return a * b


def conj(a: CycInt) -> CycInt:
    return a.conj()


def is_zero(a: CycInt) -> bool:
    return a.is_zero()


def as_integer(a: CycInt) -> int | None:
    return a.as_integer()


def numeric_eval(a: CycInt) -> complex:
    return a.numeric_eval()
