"""Finite abelian groups in product-of-cyclic form and their characters.

Elements are plain tuples of residues, one per cyclic factor.  Characters are
indexed by group elements through the bilinear pairing

    chi_k(h) = zeta_N ** (sum_i (N / n_i) * k_i * h_i),   N = lcm(n_1, ..., n_r)

so that chi_k(h) == chi_h(k) and the identity element indexes the principal
character.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

Element = tuple[int, ...]


class InvalidSpecError(ValueError):
    """Raised for malformed group or graph specifications."""


class InvalidElementError(ValueError):
    """Raised when an element does not belong to the group at hand."""


@dataclass(frozen=True)
class GroupSpec:
    """The group Z_{n_1} x ... x Z_{n_r}."""

    orders: tuple[int, ...]

    def __post_init__(self):
        orders = tuple(int(n) for n in self.orders)
        if not orders:
            raise InvalidSpecError("a group needs at least one cyclic factor")
        if any(n < 1 for n in orders):
            raise InvalidSpecError(f"cyclic factor orders must be >= 1, got {list(orders)}")
        object.__setattr__(self, "orders", orders)

    @property
    def rank(self) -> int:
        return len(self.orders)

    @cached_property
    def size(self) -> int:
        return math.prod(self.orders)

    @cached_property
    def exponent(self) -> int:
        return math.lcm(*self.orders)

    # -- elements -------------------------------------------------------

    def element(self, value: int | Iterable[int]) -> Element:
        """Coerce ``value`` into a reduced residue tuple.

        A bare integer is accepted for single-factor groups.
        """
        if isinstance(value, int):
            value = (value,)
        residues = tuple(int(x) for x in value)
        if len(residues) != self.rank:
            raise InvalidElementError(
                f"element {residues} has arity {len(residues)}, group has {self.rank} factors"
            )
        return tuple(x % n for x, n in zip(residues, self.orders))

    def check(self, a: Sequence[int]) -> None:
        """Raise unless ``a`` is a reduced element of this group."""
        if len(a) != self.rank:
            raise InvalidElementError(
                f"element {tuple(a)} has arity {len(a)}, group has {self.rank} factors"
            )
        for x, n in zip(a, self.orders):
            if not 0 <= x < n:
                raise InvalidElementError(f"residue {x} out of range for factor Z_{n} in {tuple(a)}")

    def identity(self) -> Element:
        return (0,) * self.rank

    def op(self, a: Element, b: Element) -> Element:
        self._same_arity(a, b)
        return tuple((x + y) % n for x, y, n in zip(a, b, self.orders))

    def inverse(self, a: Element) -> Element:
        self._same_arity(a)
        return tuple(-x % n for x, n in zip(a, self.orders))

    def sub(self, a: Element, b: Element) -> Element:
        """``a * b^{-1}`` in multiplicative notation."""
        self._same_arity(a, b)
        return tuple((x - y) % n for x, y, n in zip(a, b, self.orders))

    def scale(self, m: int, a: Element) -> Element:
        return tuple(m * x % n for x, n in zip(a, self.orders))

    def element_order(self, a: Element) -> int:
        self._same_arity(a)
        return math.lcm(*(n // math.gcd(x, n) for x, n in zip(a, self.orders)))

    @cached_property
    def _all(self) -> tuple[Element, ...]:
        return tuple(itertools.product(*(range(n) for n in self.orders)))

    def elements(self) -> list[Element]:
        """All elements in lexicographic order; the identity comes first."""
        return list(self._all)

    def index(self, a: Element) -> int:
        """Position of ``a`` in :meth:`elements`."""
        idx = 0
        for x, n in zip(self.element(a), self.orders):
            idx = idx * n + x
        return idx

    # -- characters -----------------------------------------------------

    def character_exponent(self, k: Element, h: Element) -> int:
        """Exponent ``e`` with ``chi_k(h) = zeta_N ** e``."""
        self._same_arity(k, h)
        N = self.exponent
        return sum((N // n) * x * y for x, y, n in zip(k, h, self.orders)) % N

    def _same_arity(self, *elements: Sequence[int]) -> None:
        for a in elements:
            if len(a) != self.rank:
                raise InvalidElementError(
                    f"element {tuple(a)} has arity {len(a)}, group has {self.rank} factors"
                )


def make_group(orders: Sequence[int]) -> GroupSpec:
    return GroupSpec(tuple(orders))


def enumerate_elements(group: GroupSpec) -> list[Element]:
    return group.elements()


def character_exponent(group: GroupSpec, k: Element, h: Element) -> int:
    return group.character_exponent(k, h)


def order_two_elements(group: GroupSpec) -> list[Element]:
    return [a for a in group.elements() if group.element_order(a) == 2]
