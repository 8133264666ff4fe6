"""Exact decision procedures for perfect state transfer and periodicity.

Times are represented symbolically as ``t = F * pi`` with ``F`` a
:class:`fractions.Fraction`; every decision below is made in exact integer or
cyclotomic arithmetic on the spectral data of :mod:`pstkit.spectrum`.
"""

from __future__ import annotations

import enum
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterator

from .abelian import Element
from .bicayley import BiCayleySpec, Vertex
from .cyclotomic import CycInt
from .spectrum import SpectralData, is_weakly_inner_cospectral, spectral_data


class PreconditionError(ValueError):
    """The requested exact computation needs data the spec does not provide."""


# -- 2-adic valuation --------------------------------------------------------


def v2(q: int | Fraction) -> int | float:
    """2-adic valuation; ``math.inf`` for zero."""
    q = Fraction(q)
    if q == 0:
        return math.inf
    num, den = abs(q.numerator), q.denominator
    return ((num & -num).bit_length() - 1) - ((den & -den).bit_length() - 1)


def gcd_all(values) -> int:
    """gcd over a family, with gcd() = 0 and gcd(x, 0) = x."""
    return math.gcd(*(abs(v) for v in values)) if values else 0


# -- time sets ---------------------------------------------------------------


class TimeKind(str, enum.Enum):
    ODD = "odd"  # (1 + 2z) pi / d
    EVEN = "even"  # 2 pi z / d
    ALL = "all"  # every real t (edgeless components)


@dataclass(frozen=True)
class TimeSet:
    divisor: int
    kind: TimeKind
    zero_allowed: bool = False

    def __post_init__(self):
        if self.divisor < 1:
            raise ValueError(f"divisor must be >= 1, got {self.divisor}")
        if self.kind is TimeKind.ODD and self.zero_allowed:
            object.__setattr__(self, "zero_allowed", False)

    @classmethod
    def odd(cls, d: int) -> TimeSet:
        return cls(d, TimeKind.ODD)

    @classmethod
    def even(cls, d: int, zero_allowed: bool = False) -> TimeSet:
        return cls(d, TimeKind.EVEN, zero_allowed)

    def contains(self, F: Fraction | int) -> bool:
        """Whether ``t = F * pi`` belongs to the set."""
        F = Fraction(F)
        if F == 0 and not self.zero_allowed:
            return False
        if self.kind is TimeKind.ALL:
            return True
        x = F * self.divisor
        if self.kind is TimeKind.ODD:
            return x.denominator == 1 and x.numerator % 2 == 1
        return x.denominator == 1 and x.numerator % 2 == 0

    def member(self, z: int) -> Fraction:
        """The z-th member as a multiple of pi (z = 0 gives the smallest positive one)."""
        if self.kind is TimeKind.ODD:
            return Fraction(1 + 2 * z, self.divisor)
        if self.kind is TimeKind.EVEN:
            return Fraction(2 * (z + 1), self.divisor)
        return Fraction(z + 1, 1)

    def first(self) -> Fraction:
        return self.member(0)

    def sample(self, count: int = 3) -> list[Fraction]:
        return [self.member(z) for z in range(count)]

    def describe(self) -> str:
        if self.kind is TimeKind.ALL:
            return "all t" + ("" if self.zero_allowed else " != 0")
        if self.kind is TimeKind.ODD:
            return f"(1+2z)pi/{self.divisor}"
        return f"2*pi*z/{self.divisor}" + ("" if self.zero_allowed else ", z != 0")

    def to_json(self) -> dict:
        return {"divisor": self.divisor, "kind": self.kind.value, "zero_allowed": self.zero_allowed}

    @classmethod
    def from_json(cls, data: dict) -> TimeSet:
        return cls(int(data["divisor"]), TimeKind(data["kind"]), bool(data["zero_allowed"]))


# -- verdicts ----------------------------------------------------------------


class FailureReason(str, enum.Enum):
    NOT_INTEGRAL = "NOT_INTEGRAL"
    R_NEQ_L = "R_NEQ_L"
    CHI_T_ZERO = "CHI_T_ZERO"
    V2_MISMATCH = "V2_MISMATCH"
    M_V2 = "M_V2"
    SIGN_MISMATCH = "SIGN_MISMATCH"
    ORDER_NOT_TWO = "ORDER_NOT_TWO"
    MU_INCONSISTENT = "MU_INCONSISTENT"
    MU_BOUND = "MU_BOUND"
    UNDECIDED_NONINTEGRAL = "UNDECIDED_NONINTEGRAL"


@dataclass(frozen=True)
class PstVerdict:
    exists: bool
    times: TimeSet | None = None
    reason: FailureReason | None = None
    k: int | None = None  # character index witnessing the failure
    details: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        if self.exists and self.times is None:
            raise ValueError("an affirmative verdict needs a time set")
        if not self.exists and self.reason is None:
            raise ValueError("a negative verdict needs a failure reason")

    @property
    def undecided(self) -> bool:
        return self.reason is FailureReason.UNDECIDED_NONINTEGRAL

    @classmethod
    def yes(cls, times: TimeSet, **details) -> PstVerdict:
        return cls(True, times, details=details)

    @classmethod
    def no(cls, reason: FailureReason, k: int | None = None, **details) -> PstVerdict:
        return cls(False, None, reason, k, details)

    def to_json(self) -> dict:
        out: dict = {"exists": self.exists}
        out["times"] = self.times.to_json() if self.times else None
        out["reason"] = self.reason.value if self.reason else None
        out["k"] = self.k
        if "mu" in self.details:
            out["mu"] = self.details["mu"]
        return out


@dataclass(frozen=True)
class GcdInvariants:
    H: tuple[int, ...]
    omega_plus: tuple[int, ...] | None
    omega_minus: tuple[int, ...] | None
    M_T: int | None
    M: int | None
    M0: int
    M1: int
    M_X: int | None
    M_emptyX: int | None
    X: str | None  # "R", "L" or None for cross pairs


# -- helpers -------------------------------------------------------------------


def _sign_of_character(data: SpectralData, k: int, delta: Element) -> int | None:
    """chi_k(delta) as +1 or -1, or None when it is neither."""
    g = data.spec.group
    e = g.character_exponent(data.characters[k], delta)
    if e == 0:
        return 1
    if 2 * e == data.N:
        return -1
    return None


def _h_set(data: SpectralData) -> tuple[int, ...]:
    return tuple(k for k, s in enumerate(data.sums) if s.sT.is_zero())


def _x_sums(data: SpectralData, part: int) -> list[int | None]:
    """chi_k(X) for X = R (part 0) or L (part 1); None where it is irrational.

    On an integral spec every k with chi_k(T) = 0 gives an integer here.
    """
    return [(s.sR if part == 0 else s.sL).as_integer() for s in data.sums]


def _all_rational(xs: list[int | None]) -> bool:
    return all(x is not None for x in xs)


def _x_size(spec: BiCayleySpec, part: int) -> int:
    return len(spec.R if part == 0 else spec.L)


def _spectral_gcds(data: SpectralData, part: int | None) -> dict:
    """M0, M1, M_X (and M_emptyX when chi(X) is rational) for an integral spec."""
    pairs = data.pairs
    H = set(_h_set(data))
    lam2 = pairs[0].hi_exact
    out = {
        "M0": gcd_all([p.hi_exact - p.lo_exact for k, p in enumerate(pairs) if k not in H]),
        "M1": gcd_all([lam2 - p.lo_exact for k, p in enumerate(pairs) if k not in H]),
    }
    for side in (0, 1) if part is None else (part,):
        xs = _x_sums(data, side)
        name = "R" if side == 0 else "L"
        out[f"M_{name}"] = gcd_all([lam2 - xs[k] for k in sorted(H)]) if H else 0
        out[f"M_empty{name}"] = (
            gcd_all([_x_size(data.spec, side) - x for x in xs]) if _all_rational(xs) else None
        )
    return out


def _x_only_gcd(data: SpectralData, part: int) -> int | None:
    xs = _x_sums(data, part)
    if not _all_rational(xs):
        return None
    return gcd_all([_x_size(data.spec, part) - x for x in xs])


def _even_or_all(d: int) -> TimeSet:
    return TimeSet.even(d) if d else TimeSet(1, TimeKind.ALL)


# -- invariants ----------------------------------------------------------------


def compute_invariants(spec: BiCayleySpec, u: Vertex, v: Vertex) -> GcdInvariants:
    """The gcd invariants attached to the pair (u, v)."""
    data = spectral_data(spec)
    if not data.integral:
        raise PreconditionError("gcd invariants need an integral spec")
    H = _h_set(data)
    pairs = data.pairs
    lam2 = pairs[0].hi_exact
    delta = spec.group.sub(u.element, v.element)
    signs = [_sign_of_character(data, k, delta) for k in range(spec.n)]
    if any(s is None for s in signs):
        plus = minus = None
    else:
        plus = tuple(k for k, s in enumerate(signs) if s == 1)
        minus = tuple(k for k, s in enumerate(signs) if s == -1)

    abs_t = [Fraction(p.hi_exact - p.lo_exact, 2) for p in pairs] if spec.R == spec.L else None
    M_T = None
    if abs_t is not None and all(a.denominator == 1 for a in abs_t):
        M_T = gcd_all([int(a) for a in abs_t])
    M = gcd_all([lam2 - p.hi_exact for p in pairs])
    if u.part == v.part:
        g = _spectral_gcds(data, u.part)
        name = "R" if u.part == 0 else "L"
        return GcdInvariants(H, plus, minus, M_T, M, g["M0"], g["M1"], g[f"M_{name}"], g[f"M_empty{name}"], name)
    g = _spectral_gcds(data, None)
    return GcdInvariants(H, plus, minus, M_T, M, g["M0"], g["M1"], None, None, None)


# -- cross pairs -----------------------------------------------------------------


def decide_cross(spec: BiCayleySpec, gp: Element, gq: Element) -> PstVerdict:
    """PST between gp in the right part and gq in the left part."""
    return _decide_cross_delta(spec, spec.group.sub(gp, gq))


@lru_cache(maxsize=4096)
def _decide_cross_delta(spec: BiCayleySpec, delta: Element) -> PstVerdict:
    data = spectral_data(spec)
    if not data.integral:
        return PstVerdict.no(FailureReason.NOT_INTEGRAL)
    if spec.sets["R"] != spec.sets["L"]:
        return PstVerdict.no(FailureReason.R_NEQ_L)
    for k, s in enumerate(data.sums):
        if s.sT.is_zero():
            return PstVerdict.no(FailureReason.CHI_T_ZERO, k)
    pairs = data.pairs
    abs_t = [Fraction(p.hi_exact - p.lo_exact, 2) for p in pairs]
    target = v2(len(spec.T))
    for k, a in enumerate(abs_t):
        if v2(a) != target:
            return PstVerdict.no(FailureReason.V2_MISMATCH, k, v2_abs_chi_t=v2(a), v2_T=target)
    M_T = gcd_all([int(a) for a in abs_t])
    lam2 = pairs[0].hi_exact
    M = gcd_all([lam2 - p.hi_exact for p in pairs])
    if M > 0 and not v2(M) > target:
        return PstVerdict.no(FailureReason.M_V2, M=M, M_T=M_T)
    d = math.gcd(2 * M_T, M)

    # Sign condition at t = pi/d; the parity is the same for all odd multiples.
    g = spec.group
    signs = []
    for k, (s, p) in enumerate(zip(data.sums, pairs)):
        sign = -1 if ((lam2 - p.hi_exact) // d) % 2 else 1
        signs.append(sign)
        chi = CycInt.root(data.N, g.character_exponent(data.characters[k], delta))
        if not (chi * s.sT - sign * int(abs_t[k])).is_zero():
            return PstVerdict.no(FailureReason.SIGN_MISMATCH, k, sign_pattern=tuple(signs))
    return PstVerdict.yes(TimeSet.odd(d), M=M, M_T=M_T, sign_pattern=tuple(signs))


# -- same-part pairs -------------------------------------------------------------


def decide_same(spec: BiCayleySpec, part: int, gp: Element, gq: Element) -> PstVerdict:
    """PST between gp and gq inside one part (0 = right, 1 = left)."""
    if part not in (0, 1):
        raise ValueError(f"part must be 0 or 1, got {part}")
    if tuple(gp) == tuple(gq):
        verdict = periodicity(spec, Vertex(tuple(gp), part))
        return PstVerdict(verdict.exists, verdict.times, verdict.reason, verdict.k,
                          {**verdict.details, "note": "same vertex: periodicity"})
    return _decide_same_delta(spec, part, spec.group.sub(gp, gq))


@lru_cache(maxsize=4096)
def _decide_same_delta(spec: BiCayleySpec, part: int, delta: Element) -> PstVerdict:
    data = spectral_data(spec)
    n = spec.n
    signs = [_sign_of_character(data, k, delta) for k in range(n)]
    for k, s in enumerate(signs):
        if s is None:
            return PstVerdict.no(FailureReason.ORDER_NOT_TWO, k)

    t_empty = not spec.T
    xs = _x_sums(data, part)
    if t_empty:
        # The part is the Cayley graph Cay(G, X) on its own.
        if not _all_rational(xs):
            return PstVerdict.no(FailureReason.NOT_INTEGRAL, note="Cay(G, X) is not integral")
    elif not data.integral:
        if is_weakly_inner_cospectral(spec):
            return PstVerdict.no(FailureReason.NOT_INTEGRAL)
        return PstVerdict.no(FailureReason.UNDECIDED_NONINTEGRAL)

    H = set(_h_set(data))
    size_x = _x_size(spec, part)
    # (k, quantity) lists; "minus" must share v2 = mu, "plus" need v2 >= mu + 1.
    minus: list[tuple[int, int]] = []
    plus: list[tuple[int, int]] = []
    if t_empty:
        for k in range(n):
            (minus if signs[k] == -1 else plus).append((k, size_x - xs[k]))
    else:
        pairs = data.pairs
        lam2 = pairs[0].hi_exact
        for k, p in enumerate(pairs):
            q = lam2 - xs[k] if k in H else lam2 - p.lo_exact
            (minus if signs[k] == -1 else plus).append((k, q))
            if k not in H:
                plus.append((k, p.hi_exact - p.lo_exact))

    # delta != identity, so some character takes the value -1.
    k0, q0 = minus[0]
    mu = v2(q0)
    for k, q in minus:
        if v2(q) != mu or mu == math.inf:
            return PstVerdict.no(FailureReason.MU_INCONSISTENT, k)
    for k, q in plus:
        if v2(q) < mu + 1:
            return PstVerdict.no(FailureReason.MU_BOUND, k, mu=mu)

    if t_empty:
        M = gcd_all([size_x - x for x in xs])
        if all(xs[k] == size_x for k, _ in minus):
            return PstVerdict.yes(_even_or_all(M), mu=mu, M_emptyX=M)
        return PstVerdict.yes(TimeSet.odd(M), mu=mu, M_emptyX=M)
    g = _spectral_gcds(data, part)
    name = "R" if part == 0 else "L"
    d = gcd_all([g["M0"], g["M1"], g[f"M_{name}"]])
    return PstVerdict.yes(TimeSet.odd(d), mu=mu, M0=g["M0"], M1=g["M1"], M_X=g[f"M_{name}"])


# -- periodicity -------------------------------------------------------------------


def periodicity(spec: BiCayleySpec, vertex: Vertex | None = None) -> PstVerdict:
    """Periodicity of the whole graph, or at one vertex when given."""
    data = spectral_data(spec)
    if vertex is None:
        if not data.integral:
            return PstVerdict.no(FailureReason.NOT_INTEGRAL)
        g = _spectral_gcds(data, None)
        if not spec.T:
            d = gcd_all([g["M_emptyR"], g["M_emptyL"]])
        else:
            d = gcd_all([g["M0"], g["M1"], g["M_R"], g["M_L"]])
        return PstVerdict.yes(_even_or_all(d))

    part = vertex.part
    if not spec.T:
        d = _x_only_gcd(data, part)
        if d is None:
            return PstVerdict.no(FailureReason.NOT_INTEGRAL, note="Cay(G, X) is not integral")
        return PstVerdict.yes(_even_or_all(d))
    if not data.integral:
        if is_weakly_inner_cospectral(spec):
            return PstVerdict.no(FailureReason.NOT_INTEGRAL)
        return PstVerdict.no(FailureReason.UNDECIDED_NONINTEGRAL)
    g = _spectral_gcds(data, part)
    name = "R" if part == 0 else "L"
    return PstVerdict.yes(_even_or_all(gcd_all([g["M0"], g["M1"], g[f"M_{name}"]])))


# -- fixed-time check -------------------------------------------------------------


def _parity_class(x: Fraction, sign: int) -> bool:
    """x in 2Z when sign = 1, x in 2Z + 1 when sign = -1."""
    if x.denominator != 1:
        return False
    return x.numerator % 2 == (0 if sign == 1 else 1)


def check_conditions_at_time(spec: BiCayleySpec, u: Vertex, v: Vertex, t: Fraction | int) -> bool:
    """Evaluate the per-character PST conditions for (u, v) at t = F * pi exactly."""
    F = Fraction(t)
    data = spectral_data(spec)
    g = spec.group

    if u.part != v.part:
        if not data.integral:
            raise PreconditionError("fixed-time check needs an integral spec")
        if v.part == 0:
            u, v = v, u
        if spec.sets["R"] != spec.sets["L"]:
            return False
        delta = g.sub(u.element, v.element)
        lam2 = data.pairs[0].hi_exact
        for k, (s, p) in enumerate(zip(data.sums, data.pairs)):
            if s.sT.is_zero():
                return False
            if not _parity_class(F * (p.hi_exact - p.lo_exact), -1):
                return False
            phase = F * (lam2 - p.hi_exact)
            if phase.denominator != 1:
                return False
            sign = -1 if phase.numerator % 2 else 1
            chi = CycInt.root(data.N, g.character_exponent(data.characters[k], delta))
            # chi * chi_k(T) == sign * |chi_k(T)|, doubled to stay integral.
            if not (2 * chi * s.sT - sign * (p.hi_exact - p.lo_exact)).is_zero():
                return False
        return True

    part = u.part
    xs = _x_sums(data, part)
    if not (data.integral if spec.T else _all_rational(xs)):
        raise PreconditionError("fixed-time check needs an integral spec")
    delta = g.sub(u.element, v.element)
    size_x = _x_size(spec, part)
    lam2 = data.pairs[0].hi_exact
    for k in range(spec.n):
        sign = _sign_of_character(data, k, delta)
        if sign is None:
            return False
        if not spec.T:
            if not _parity_class(F * (size_x - xs[k]), sign):
                return False
            continue
        p = data.pairs[k]
        if data.sums[k].sT.is_zero():
            if not _parity_class(F * (lam2 - xs[k]), sign):
                return False
        else:
            if not _parity_class(F * (p.hi_exact - p.lo_exact), 1):
                return False
            if not _parity_class(F * (lam2 - p.lo_exact), sign):
                return False
    return True


# -- exhaustive search -------------------------------------------------------------


@dataclass(frozen=True)
class PairResult:
    u: Vertex
    v: Vertex
    verdict: PstVerdict

    def to_json(self) -> dict:
        return {"u": _vertex_json(self.u), "v": _vertex_json(self.v), **self.verdict.to_json()}


def _vertex_json(v: Vertex) -> dict:
    return {"part": v.part, "element": list(v.element)}


def _thread_cap() -> int:
    try:
        return max(1, int(os.environ.get("PSTKIT_THREADS", "1")))
    except ValueError:
        return 1


def _candidate_pairs(spec: BiCayleySpec) -> Iterator[tuple[Vertex, Vertex, tuple]]:
    """Distinct unordered pairs worth deciding, tagged with their cache key."""
    g = spec.group
    els = g.elements()
    for part in (0, 1):
        for i, a in enumerate(els):
            for b in els[i + 1:]:
                delta = g.sub(a, b)
                if g.element_order(delta) == 2:
                    yield Vertex(a, part), Vertex(b, part), ("same", part, delta)
    if spec.sets["R"] == spec.sets["L"] and spec.T:
        for a in els:
            for b in els:
                yield Vertex(a, 0), Vertex(b, 1), ("cross", g.sub(a, b))


def _decide_key(spec: BiCayleySpec, key: tuple) -> PstVerdict:
    if key[0] == "same":
        return _decide_same_delta(spec, key[1], key[2])
    return _decide_cross_delta(spec, key[1])


def pair_verdicts(spec: BiCayleySpec) -> list[PairResult]:
    """Verdicts for every candidate pair (order-2 same-part differences, and
    all cross pairs when R = L), sorted by canonical vertex order."""
    candidates = list(_candidate_pairs(spec))
    keys = sorted({key for _, _, key in candidates}, key=repr)
    spectral_data(spec)  # build the shared tables once, before any threads
    workers = min(_thread_cap(), len(keys)) or 1
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            verdicts = dict(zip(keys, pool.map(lambda key: _decide_key(spec, key), keys)))
    else:
        verdicts = {key: _decide_key(spec, key) for key in keys}
    results = [PairResult(u, v, verdicts[key]) for u, v, key in candidates]
    results.sort(key=lambda r: (spec.vertex_index(r.u), spec.vertex_index(r.v)))
    return results


def pst_pairs(spec: BiCayleySpec) -> list[PairResult]:
    """All unordered distinct-vertex pairs with PST."""
    return [r for r in pair_verdicts(spec) if r.verdict.exists]
