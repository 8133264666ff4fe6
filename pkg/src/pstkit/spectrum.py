"""Closed-form spectrum of abelian bi-Cayley graphs.

For every character chi_k the adjacency matrix has the eigenvalue pair

    lo, hi = (chi_k(R) + chi_k(L) -/+ sqrt(Delta_k)) / 2,
    Delta_k = (chi_k(R) - chi_k(L))**2 + 4 |chi_k(T)|**2,

with eigenvectors supported on chi_k in each part.  Character sums are kept
exact in Z[zeta_N]; eigenvalues are exact integers when the graph is integral
and doubles always.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .abelian import Element
from .bicayley import BiCayleySpec, Vertex
from .cyclotomic import CycInt, compare_real


@dataclass(frozen=True)
class CharacterSums:
    k: Element
    sR: CycInt
    sL: CycInt
    sT: CycInt
    absT2: CycInt


@dataclass(frozen=True)
class EigenPair:
    """Eigenvalues lo <= hi belonging to one character."""

    k: Element
    lo: float
    hi: float
    lo_exact: int | None
    hi_exact: int | None
    trace: int | None  # chi_k(R) + chi_k(L) when it is a rational integer
    disc: CycInt

    @property
    def exact(self) -> bool:
        return self.lo_exact is not None


@dataclass(frozen=True)
class XiCoefficients:
    k: Element
    case: str  # "T_ZERO_R_GT_L", "T_ZERO_R_LE_L" or "T_NONZERO"
    xi: tuple[complex, complex, complex, complex]
    xi_hat: tuple[complex, complex, complex, complex]


class SpectralData:
    """Per-character tables for one spec, computed once."""

    def __init__(self, spec: BiCayleySpec):
        self.spec = spec
        g = spec.group
        self.N = N = g.exponent
        self.characters = g.elements()
        self.sums: list[CharacterSums] = []
        self.pairs: list[EigenPair] = []
        self.xis: list[XiCoefficients] = []
        for k in self.characters:
            sR, sL, sT = (
                CycInt.from_exponents(N, (g.character_exponent(k, h) for h in part))
                for part in (spec.R, spec.L, spec.T)
            )
            s = CharacterSums(k, sR, sL, sT, sT.abs2())
            self.sums.append(s)
            pair = _eigen_pair(s)
            self.pairs.append(pair)
            self.xis.append(_xi(s, pair))

        self.lo = np.array([p.lo for p in self.pairs])
        self.hi = np.array([p.hi for p in self.pairs])
        xh = np.array([x.xi_hat for x in self.xis])  # shape (n, 4)
        # Weights (on exp(-it lo), exp(-it hi)) for each block of H(t).
        self.weights = {
            (0, 0): (np.abs(xh[:, 0]) ** 2, np.abs(xh[:, 2]) ** 2),
            (1, 1): (np.abs(xh[:, 1]) ** 2, np.abs(xh[:, 3]) ** 2),
            (0, 1): (xh[:, 0] * xh[:, 1].conj(), xh[:, 2] * xh[:, 3].conj()),
            (1, 0): (xh[:, 1] * xh[:, 0].conj(), xh[:, 3] * xh[:, 2].conj()),
        }
        self._roots = np.exp(2j * np.pi * np.arange(N) / N)

    @property
    def integral(self) -> bool:
        return all(p.exact for p in self.pairs)

    def character_values(self, h: Element) -> np.ndarray:
        g = self.spec.group
        return self._roots[[g.character_exponent(k, h) for k in self.characters]]


@lru_cache(maxsize=512)
def spectral_data(spec: BiCayleySpec) -> SpectralData:
    return SpectralData(spec)


def _eigen_pair(s: CharacterSums) -> EigenPair:
    trace = (s.sR + s.sL).as_integer()
    disc = (s.sR - s.sL) * (s.sR - s.sL) + 4 * s.absT2
    d = disc.as_integer()
    lo_exact = hi_exact = None
    if trace is not None and d is not None and d >= 0:
        q = math.isqrt(d)
        if q * q == d and (trace - q) % 2 == 0:
            lo_exact, hi_exact = (trace - q) // 2, (trace + q) // 2
    if lo_exact is not None:
        lo, hi = float(lo_exact), float(hi_exact)
    else:
        r = s.sR.numeric_eval().real
        l = s.sL.numeric_eval().real
        root = math.sqrt(max(disc.numeric_eval().real, 0.0))
        lo, hi = (r + l - root) / 2, (r + l + root) / 2
    return EigenPair(s.k, lo, hi, lo_exact, hi_exact, trace, disc)


def _xi(s: CharacterSums, pair: EigenPair) -> XiCoefficients:
    if s.sT.is_zero():
        if compare_real(s.sR, s.sL) > 0:
            xi = (0j, 1 + 0j, 1 + 0j, 0j)
            case = "T_ZERO_R_GT_L"
        else:
            xi = (1 + 0j, 0j, 0j, 1 + 0j)
            case = "T_ZERO_R_LE_L"
    else:
        r = s.sR.numeric_eval().real
        l = s.sL.numeric_eval().real
        t = s.sT.numeric_eval()
        t2 = s.absT2.numeric_eval().real
        root = pair.hi - pair.lo if pair.exact else math.sqrt(max(pair.disc.numeric_eval().real, 0.0))
        a = l - r
        # lo - chi(R) = (a - root)/2 and hi - chi(L) = (root - a)/2, written to
        # avoid cancellation when |a| dominates.
        den_lo = -2 * t2 / (a + root) if a >= 0 else (a - root) / 2
        den_hi = 2 * t2 / (root + a) if a > 0 else (root - a) / 2
        assert den_lo != 0 and den_hi != 0, "zero denominator with chi_k(T) != 0"
        xi = (t / den_lo, 1 + 0j, 1 + 0j, t.conjugate() / den_hi)
        case = "T_NONZERO"
    n1 = math.hypot(abs(xi[0]), abs(xi[1]))
    n2 = math.hypot(abs(xi[2]), abs(xi[3]))
    xi_hat = (xi[0] / n1, xi[1] / n1, xi[2] / n2, xi[3] / n2)
    return XiCoefficients(s.k, case, xi, xi_hat)


def character_sums(spec: BiCayleySpec) -> list[CharacterSums]:
    return list(spectral_data(spec).sums)


def eigenvalues(spec: BiCayleySpec) -> list[EigenPair]:
    return list(spectral_data(spec).pairs)


def xi_coefficients(spec: BiCayleySpec) -> list[XiCoefficients]:
    return list(spectral_data(spec).xis)


def eigenvalue_multiset(spec: BiCayleySpec) -> np.ndarray:
    """All 2n eigenvalues as sorted doubles."""
    data = spectral_data(spec)
    return np.sort(np.concatenate([data.lo, data.hi]))


def transfer_entry(spec: BiCayleySpec, u: Vertex, v: Vertex, t: float) -> complex:
    """Entry H_{u,v}(t) of exp(-itD), summed character by character."""
    data = spectral_data(spec)
    g = spec.group
    w_lo, w_hi = data.weights[(u.part, v.part)]
    chi = data.character_values(g.sub(u.element, v.element))
    terms = chi * (w_lo * np.exp(-1j * t * data.lo) + w_hi * np.exp(-1j * t * data.hi))
    return complex(terms.sum() / spec.n)


def is_integral(spec: BiCayleySpec) -> bool:
    return spectral_data(spec).integral


def is_weakly_inner_cospectral(spec: BiCayleySpec) -> bool:
    """Compare {chi_k(R)} and {chi_k(L)} as multisets over characters vanishing on T."""
    sums = spectral_data(spec).sums
    left = Counter(s.sR for s in sums if s.sT.is_zero())
    right = Counter(s.sL for s in sums if s.sT.is_zero())
    return left == right


__all__ = [
    "CharacterSums",
    "EigenPair",
    "XiCoefficients",
    "SpectralData",
    "spectral_data",
    "character_sums",
    "eigenvalues",
    "xi_coefficients",
    "eigenvalue_multiset",
    "transfer_entry",
    "is_integral",
    "is_weakly_inner_cospectral",
]
