"""Cayley graphs over Z_2-extensions of abelian groups, seen as bi-Cayley graphs.

An extension G~ = G u bG is described by the automorphism phi(g) = b g b^-1 of
the abelian group G and the element b^2 of G.  Elements of G~ are pairs
``(s, g)`` standing for ``b^s g``, with product

    (s, g)(t, h) = (s + t, phi^t(g) + h),   b^2 folded into G when s + t = 2.

Cayley graphs use left multiplication: x ~ y iff y x^-1 lies in the connection
set.  Under ``g -> g_0``, ``bg -> g_1`` the Cayley graph Cay(G~, S~) is
BiCay(G; S~ n G, phi(S~ n G), {g : bg in S~}).
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from .abelian import Element, GroupSpec, InvalidSpecError
from .bicayley import BiCayleySpec, Vertex
from .pst import TimeSet

ExtElement = tuple[int, Element]  # (s, g) for b^s g


class InvalidCayleySetError(InvalidSpecError):
    pass


class UnsupportedError(ValueError):
    pass


@dataclass(frozen=True)
class ExtensionSpec:
    base: GroupSpec
    phi: tuple[tuple[int, ...], ...]  # phi(g)_i = sum_j phi[i][j] * g_j mod n_i
    b_squared: Element

    def __post_init__(self):
        r = self.base.rank
        phi = tuple(tuple(int(x) for x in row) for row in self.phi)
        if len(phi) != r or any(len(row) != r for row in phi):
            raise InvalidSpecError(f"phi must be a {r}x{r} matrix")
        object.__setattr__(self, "phi", phi)
        object.__setattr__(self, "b_squared", self.base.element(self.b_squared))
        self._validate()

    @classmethod
    def build(cls, orders: Sequence[int] | GroupSpec, phi, b_squared) -> ExtensionSpec:
        base = orders if isinstance(orders, GroupSpec) else GroupSpec(tuple(orders))
        return cls(base, tuple(tuple(row) for row in phi), base.element(b_squared))

    def _validate(self) -> None:
        g = self.base
        for j, nj in enumerate(g.orders):
            for i, ni in enumerate(g.orders):
                if (nj * self.phi[i][j]) % ni:
                    raise InvalidSpecError(
                        f"phi is not well defined: generator {j} has order {nj} but its image does not"
                    )
        els = g.elements()
        if len({self.apply(a) for a in els}) != len(els):
            raise InvalidSpecError("phi is not bijective")
        for a in els:
            if self.apply(self.apply(a)) != a:
                raise InvalidSpecError(f"phi is not an involution: phi(phi({a})) != {a}")
        if self.apply(self.b_squared) != self.b_squared:
            raise InvalidSpecError(f"phi must fix b^2 = {self.b_squared}")

    def apply(self, a: Element) -> Element:
        return tuple(
            sum(c * x for c, x in zip(row, a)) % n for row, n in zip(self.phi, self.base.orders)
        )

    # -- group law on G~ ---------------------------------------------------

    def mul(self, x: ExtElement, y: ExtElement) -> ExtElement:
        (s, g), (t, h) = x, y
        g = self.apply(g) if t else g
        prod = self.base.op(g, h)
        if s + t == 2:
            return 0, self.base.op(self.b_squared, prod)
        return s + t, prod

    def inv(self, x: ExtElement) -> ExtElement:
        s, g = x
        if s == 0:
            return 0, self.base.inverse(g)
        return 1, self.base.sub(self.apply(self.base.inverse(g)), self.b_squared)

    def identity(self) -> ExtElement:
        return 0, self.base.identity()

    @cached_property
    def elements(self) -> tuple[ExtElement, ...]:
        els = self.base.elements()
        return tuple((s, g) for s in (0, 1) for g in els)

    def index(self, x: ExtElement) -> int:
        return x[0] * self.base.size + self.base.index(x[1])

    @property
    def is_abelian(self) -> bool:
        return all(self.apply(a) == a for a in self.base.elements())

    def to_json(self) -> dict:
        return {
            "orders": list(self.base.orders),
            "phi": [list(row) for row in self.phi],
            "b_squared": list(self.b_squared),
        }


@dataclass(frozen=True)
class CayleySet:
    """S~ split as S~ n G (``inG``) and {g : bg in S~} (``inBG``)."""

    inG: frozenset
    inBG: frozenset

    @classmethod
    def build(cls, ext: ExtensionSpec, inG: Iterable = (), inBG: Iterable = ()) -> CayleySet:
        g = ext.base
        s = cls(frozenset(g.element(a) for a in inG), frozenset(g.element(a) for a in inBG))
        validate_cayley_set(ext, s)
        return s

    def members(self) -> list[ExtElement]:
        return [(0, a) for a in sorted(self.inG)] + [(1, a) for a in sorted(self.inBG)]


def validate_cayley_set(ext: ExtensionSpec, s: CayleySet) -> None:
    g = ext.base
    for a in s.inG | s.inBG:
        g.check(a)
    if g.identity() in s.inG:
        raise InvalidCayleySetError("S~ contains the identity")
    for a in s.inG:
        if g.inverse(a) not in s.inG:
            raise InvalidCayleySetError(f"S~ not inverse-closed: {a} in S~ n G but its inverse is not")
    for a in s.inBG:
        _, inv = ext.inv((1, a))
        if inv not in s.inBG:
            raise InvalidCayleySetError(f"S~ not inverse-closed: (b {a})^-1 = b {inv} is missing")


def cayley_adjacency(ext: ExtensionSpec, s: CayleySet) -> np.ndarray:
    """Adjacency of Cay(G~, S~) built from the group law, in (0,g)..(1,g) order."""
    els = ext.elements
    A = np.zeros((len(els), len(els)), dtype=np.int64)
    for i, x in enumerate(els):
        for m in s.members():
            A[i, ext.index(ext.mul(m, x))] = 1
    return A


def cayley_to_bicayley(ext: ExtensionSpec, s: CayleySet) -> BiCayleySpec:
    validate_cayley_set(ext, s)
    R = sorted(s.inG)
    L = sorted(ext.apply(a) for a in s.inG)
    T = sorted(s.inBG)
    return BiCayleySpec.build(ext.base, R, L, T)


def bicayley_to_gendihedral_cayley(spec: BiCayleySpec) -> tuple[ExtensionSpec, CayleySet]:
    """The generalized dihedral Cayley graph with S~ = R u bT (needs R = L)."""
    if spec.sets["R"] != spec.sets["L"]:
        raise UnsupportedError("only specs with R = L come from generalized dihedral groups")
    ext = generalized_dihedral(spec.group.orders)
    return ext, CayleySet.build(ext, spec.R, spec.T)


def satisfies_bg_gb(ext: ExtensionSpec, s: CayleySet) -> bool:
    """bg in S~ iff gb in S~; since gb = b phi(g) this is phi-closure of inBG."""
    return all(ext.apply(a) in s.inBG for a in s.inBG)


def is_normal_connection_set(ext: ExtensionSpec, s: CayleySet) -> bool:
    members = set(s.members())
    for x in ext.elements:
        xi = ext.inv(x)
        for m in members:
            if ext.mul(ext.mul(x, m), xi) not in members:
                return False
    return True


# -- group families -----------------------------------------------------------


def _diag(r: int, c: int) -> tuple[tuple[int, ...], ...]:
    return tuple(tuple(c if i == j else 0 for j in range(r)) for i in range(r))


def abelian_extension(orders: Sequence[int]) -> ExtensionSpec:
    """G x Z_2 (phi = identity, b^2 = 1)."""
    return ExtensionSpec.build(orders, _diag(len(orders), 1), (0,) * len(orders))


def generalized_dihedral(orders: Sequence[int]) -> ExtensionSpec:
    return ExtensionSpec.build(orders, _diag(len(orders), -1), (0,) * len(orders))


def dihedral(n: int) -> ExtensionSpec:
    """D_n of order 2n over Z_n."""
    return generalized_dihedral([n])


def semidihedral(k: int) -> ExtensionSpec:
    """Semi-dihedral group over Z_{2^k}: b a b = a^(2^(k-1) - 1)."""
    if k < 3:
        raise UnsupportedError("semi-dihedral groups need k >= 3")
    return ExtensionSpec.build([2**k], [[2 ** (k - 1) - 1]], [0])


def quaternion(m: int) -> ExtensionSpec:
    """Q_{4m}: a^(2m) = 1, b^2 = a^m, b^-1 a b = a^-1."""
    return ExtensionSpec.build([2 * m], [[-1]], [m])


def involutive_automorphisms(group: GroupSpec) -> list[tuple[tuple[int, ...], ...]]:
    """All automorphisms phi with phi^2 = id, as matrices (brute force, small groups)."""
    r = group.rank
    ranges = [range(group.orders[i]) for i in range(r) for _ in range(r)]
    out = []
    for flat in itertools.product(*ranges):
        phi = tuple(tuple(flat[i * r:(i + 1) * r]) for i in range(r))
        try:
            ExtensionSpec(group, phi, group.identity())
        except InvalidSpecError:
            continue
        out.append(phi)
    return out


def random_cayley_set(ext: ExtensionSpec, rng: random.Random, *, closed_bg: bool = True) -> CayleySet:
    """A random valid S~; with ``closed_bg`` also bg in S~ iff gb in S~."""
    g = ext.base
    els = g.elements()
    inG: set = set()
    for a in els:
        if a != g.identity() and a not in inG and rng.random() < 0.4:
            inG |= {a, g.inverse(a)}
    inBG: set = set()
    for a in els:
        if a in inBG or rng.random() >= 0.3:
            continue
        orbit, frontier = {a}, [a]
        while frontier:
            x = frontier.pop()
            images = [ext.inv((1, x))[1]] + ([ext.apply(x)] if closed_bg else [])
            for y in images:
                if y not in orbit:
                    orbit.add(y)
                    frontier.append(y)
        inBG |= orbit
    return CayleySet.build(ext, inG, inBG)


# -- example families -----------------------------------------------------------


@dataclass(frozen=True)
class ExpectedPst:
    """Machine-checkable form of a published PST claim."""

    claim: str
    pairs: tuple[tuple[Vertex, Vertex], ...]  # unordered, canonical order
    times: TimeSet
    periodic: TimeSet

    def to_json(self) -> dict:
        return {
            "claim": self.claim,
            "pairs": [
                [{"part": u.part, "element": list(u.element)}, {"part": v.part, "element": list(v.element)}]
                for u, v in self.pairs
            ],
            "times": self.times.to_json(),
            "periodic": self.periodic.to_json(),
        }


def _same_part_pairs(group: GroupSpec, delta: Element) -> list[tuple[Vertex, Vertex]]:
    out = set()
    for part in (0, 1):
        for a in group.elements():
            b = group.op(a, delta)
            u, v = sorted([Vertex(a, part), Vertex(b, part)], key=lambda x: (x.part, group.index(x.element)))
            out.add((u, v))
    return sorted(out, key=lambda p: (p[0].part, group.index(p[0].element), p[1].part, group.index(p[1].element)))


def example_family(name: str, m: int) -> tuple[ExtensionSpec, CayleySet, ExpectedPst]:
    if m < 1:
        raise UnsupportedError(f"m must be positive, got {m}")
    if name == "dihedral":
        ext = dihedral(8 * m)
        s = CayleySet.build(ext, [2 * j - 1 for j in range(1, 4 * m + 1)], [2 * m, 6 * m])
        expected = ExpectedPst(
            "PST between b^j a^i and b^j a^(i+4m), t in (1+2z)pi/2; periodic on pi Z",
            tuple(_same_part_pairs(ext.base, (4 * m,))),
            TimeSet.odd(2),
            TimeSet.even(2),
        )
    elif name == "gendihedral":
        ext = generalized_dihedral([8 * m, 2])
        inG = [(2 * j - 1, 0) for j in range(1, 4 * m + 1)] + [(4 * m, 1)]
        s = CayleySet.build(ext, inG, [(0, 0)])
        els = ext.base.elements()
        pairs = tuple((Vertex(x, 0), Vertex(y, 1)) for x in els for y in els if y != x)
        expected = ExpectedPst(
            "PST between x in G and y in bG whenever y != bx, t in (1/2+z)pi; periodic on pi Z",
            pairs,
            TimeSet.odd(2),
            TimeSet.even(2),
        )
    elif name == "quaternion":
        if m % 2:
            raise UnsupportedError(f"the quaternion family needs m even, got {m}")
        ext = quaternion(m)
        s = CayleySet.build(ext, [m // 2, 3 * m // 2], range(2 * m))
        expected = ExpectedPst(
            "PST between u and u a^m, t in (1+2z)pi/2; periodic on pi Z",
            tuple(_same_part_pairs(ext.base, (m,))),
            TimeSet.odd(2),
            TimeSet.even(2),
        )
    else:
        raise UnsupportedError(f"unknown family {name!r}")
    return ext, s, expected
