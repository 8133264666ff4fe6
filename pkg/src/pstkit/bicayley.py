"""Bi-Cayley graphs BiCay(G; R, L, T) over finite abelian groups.

Vertices are ``g_0`` (right part) and ``g_1`` (left part) for g in G.  Edges:

* right edges ``{h_0, g_0}`` with ``g - h`` in R,
* left edges ``{h_1, g_1}`` with ``g - h`` in L,
* spokes ``{h_0, g_1}`` with ``g - h`` in T.

The canonical vertex order is G_0 in element order followed by G_1 in
element order; the oracle and the CLI rely on it.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, NamedTuple, Sequence

import numpy as np
from scipy.sparse.csgraph import connected_components

from .abelian import Element, GroupSpec, InvalidElementError, InvalidSpecError


class Vertex(NamedTuple):
    element: Element
    part: int  # 0 = right part G_0, 1 = left part G_1

    def __str__(self) -> str:
        body = ",".join(map(str, self.element))
        return f"({body})_{self.part}"


def _as_elements(group: GroupSpec, items: Iterable, name: str) -> tuple[Element, ...]:
    out = []
    for item in items:
        if isinstance(item, int):
            item = (item,)
        item = tuple(int(x) for x in item)
        if len(item) != group.rank:
            raise InvalidElementError(
                f"{name}: element {item} has arity {len(item)}, group has {group.rank} factors"
            )
        out.append(item)
    return tuple(out)


@dataclass(frozen=True)
class BiCayleySpec:
    group: GroupSpec
    R: tuple[Element, ...]
    L: tuple[Element, ...]
    T: tuple[Element, ...]

    @classmethod
    def build(
        cls,
        group: GroupSpec | Sequence[int],
        R: Iterable = (),
        L: Iterable = (),
        T: Iterable = (),
        *,
        check: bool = True,
    ) -> BiCayleySpec:
        """Build a spec from loose input; elements may be ints for cyclic groups."""
        if not isinstance(group, GroupSpec):
            group = GroupSpec(tuple(group))
        spec = cls(
            group,
            _as_elements(group, R, "R"),
            _as_elements(group, L, "L"),
            _as_elements(group, T, "T"),
        )
        if check:
            spec.validate()
        return spec

    @property
    def n(self) -> int:
        return self.group.size

    @cached_property
    def sets(self) -> dict[str, frozenset]:
        return {"R": frozenset(self.R), "L": frozenset(self.L), "T": frozenset(self.T)}

    def validate(self) -> None:
        g = self.group
        e = g.identity()
        for name in ("R", "L", "T"):
            items = getattr(self, name)
            for a in items:
                try:
                    g.check(a)
                except InvalidElementError as exc:
                    raise InvalidSpecError(f"{name}: {exc}") from None
            if len(set(items)) != len(items):
                dups = sorted({a for a in items if items.count(a) > 1})
                raise InvalidSpecError(f"{name} contains duplicate elements {dups}")
        for name in ("R", "L"):
            members = self.sets[name]
            if e in members:
                raise InvalidSpecError(f"{name} contains the identity {e}")
            for a in getattr(self, name):
                if g.inverse(a) not in members:
                    raise InvalidSpecError(
                        f"{name} is not closed under inverses: {a} in {name} but {g.inverse(a)} is not"
                    )

    # -- vertices -------------------------------------------------------

    def vertices(self) -> list[Vertex]:
        els = self.group.elements()
        return [Vertex(a, 0) for a in els] + [Vertex(a, 1) for a in els]

    def vertex_index(self, v: Vertex) -> int:
        return v.part * self.n + self.group.index(v.element)

    def vertex_at(self, index: int) -> Vertex:
        part, i = divmod(index, self.n)
        if part not in (0, 1):
            raise IndexError(f"vertex index {index} out of range for {2 * self.n} vertices")
        return Vertex(self.group.elements()[i], part)

    def degree(self, part: int) -> int:
        return len(self.R if part == 0 else self.L) + len(self.T)

    def to_json(self) -> dict:
        return {
            "schema": 1,
            "group": {"orders": list(self.group.orders)},
            "R": [list(a) for a in self.R],
            "L": [list(a) for a in self.L],
            "T": [list(a) for a in self.T],
        }

    @classmethod
    def from_json(cls, data: dict) -> BiCayleySpec:
        try:
            orders = data["group"]["orders"]
            return cls.build(orders, data.get("R", []), data.get("L", []), data.get("T", []))
        except (KeyError, TypeError) as exc:
            raise InvalidSpecError(f"malformed spec document: {exc!r}") from None


def validate(spec: BiCayleySpec) -> None:
    spec.validate()


def _cayley_block(group: GroupSpec, conn: frozenset) -> np.ndarray:
    els = group.elements()
    n = len(els)
    block = np.zeros((n, n), dtype=np.int64)
    for i, h in enumerate(els):
        for j, g in enumerate(els):
            if group.sub(g, h) in conn:
                block[i, j] = 1
    return block


def adjacency(spec: BiCayleySpec) -> np.ndarray:
    """The 2n x 2n adjacency matrix [[A, B], [B^T, C]] in canonical order."""
    g = spec.group
    A = _cayley_block(g, spec.sets["R"])
    C = _cayley_block(g, spec.sets["L"])
    B = _cayley_block(g, spec.sets["T"])
    return np.block([[A, B], [B.T, C]])


def is_connected(spec: BiCayleySpec) -> bool:
    ncomp, _ = connected_components(adjacency(spec), directed=False)
    return ncomp == 1
