"""Floating-point reference: dense eigendecomposition and H(t) = exp(-itA).

Nothing here looks at characters or group structure, so it can be used to
check the exact engine independently.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np
from scipy.optimize import minimize_scalar

from .bicayley import BiCayleySpec, adjacency
from .pst import PairResult, PstVerdict, TimeSet, pair_verdicts, periodicity

AFFIRM_TOL = 1e-6
REJECT_MARGIN = 1e-4
RECON_TOL = 1e-9


class OracleError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class EigenDecomposition:
    values: np.ndarray
    vectors: np.ndarray

    @property
    def size(self) -> int:
        return len(self.values)

    def transfer_matrix(self, t: float) -> np.ndarray:
        Q = self.vectors
        return (Q * np.exp(-1j * t * self.values)) @ Q.T

    def amplitudes(self, u: int, v: int, times: np.ndarray) -> np.ndarray:
        w = self.vectors[u] * self.vectors[v]
        return np.exp(-1j * np.outer(times, self.values)) @ w

    def entry(self, u: int, v: int, t: float) -> complex:
        return complex(self.amplitudes(u, v, np.array([t]))[0])


def decompose(A: np.ndarray) -> EigenDecomposition:
    A = np.asarray(A, dtype=float)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise OracleError(f"expected a square matrix, got shape {A.shape}")
    if not np.array_equal(A, A.T):
        raise OracleError("adjacency matrix is not symmetric")
    values, vectors = np.linalg.eigh(A)
    recon = np.abs(vectors @ np.diag(values) @ vectors.T - A).max(initial=0.0)
    ortho = np.abs(vectors.T @ vectors - np.eye(len(A))).max(initial=0.0)
    if recon >= RECON_TOL or ortho >= RECON_TOL:
        raise OracleError(f"eigendecomposition inaccurate: reconstruction {recon:.2e}, orthogonality {ortho:.2e}")
    return EigenDecomposition(values, vectors)


def _as_decomposition(obj) -> EigenDecomposition:
    if isinstance(obj, EigenDecomposition):
        return obj
    if isinstance(obj, BiCayleySpec):
        return decompose(adjacency(obj))
    return decompose(obj)


def fidelity(obj, u: int, v: int, t: float) -> float:
    """|H_{u,v}(t)| for an adjacency matrix, a spec or a decomposition."""
    dec = _as_decomposition(obj)
    if not (0 <= u < dec.size and 0 <= v < dec.size):
        raise IndexError(f"vertex index out of range for {dec.size} vertices")
    return abs(dec.entry(u, v, t))


# -- scans ---------------------------------------------------------------------


@dataclass
class FidelityReport:
    pair: tuple[int, int]
    times: np.ndarray
    values: np.ndarray
    peaks: list[tuple[float, float]] = field(default_factory=list)

    @property
    def grid_max(self) -> float:
        return float(self.values.max(initial=0.0))

    @property
    def best(self) -> tuple[float, float]:
        if self.peaks:
            return max(self.peaks, key=lambda p: p[1])
        i = int(self.values.argmax())
        return float(self.times[i]), float(self.values[i])


def _refine(dec: EigenDecomposition, u: int, v: int, lo: float, hi: float) -> tuple[float, float]:
    res = minimize_scalar(
        lambda t: -abs(dec.entry(u, v, t)), bounds=(lo, hi), method="bounded",
        options={"xatol": 1e-10},
    )
    return float(res.x), float(-res.fun)


def _local_maxima(values: np.ndarray, floor: float) -> list[int]:
    padded = np.concatenate([[-np.inf], values, [-np.inf]])
    mask = (values >= padded[:-2]) & (values >= padded[2:]) & (values >= floor)
    return list(np.flatnonzero(mask))


def fidelity_curve(obj, u: int, v: int, t_max: float, steps: int, threshold: float = 0.999) -> FidelityReport:
    """Fidelity on the grid t_i = t_max * i / steps (i = 1..steps), peaks refined."""
    if steps < 2:
        raise ValueError("steps must be >= 2")
    dec = _as_decomposition(obj)
    times = t_max * np.arange(1, steps + 1) / steps
    values = np.abs(dec.amplitudes(u, v, times))
    h = t_max / steps
    peaks = []
    for i in _local_maxima(values, threshold):
        lo, hi = times[i] - h, min(times[i] + h, t_max)
        t, f = _refine(dec, u, v, max(lo, 0.0), hi)
        peaks.append((t, max(f, float(values[i]))))
    return FidelityReport((u, v), times, values, peaks)


def sweep_max(obj, u: int, v: int, t_max: float = 4 * math.pi, step: float = math.pi / 400,
              refine_top: int = 5) -> tuple[float, float]:
    """Largest fidelity over (0, t_max], refining the best few grid maxima."""
    dec = _as_decomposition(obj)
    steps = max(2, round(t_max / step))
    rep = fidelity_curve(dec, u, v, t_max, steps, threshold=math.inf)
    best_t, best_f = rep.best
    h = t_max / steps
    order = [i for i in _local_maxima(rep.values, -math.inf)]
    order.sort(key=lambda i: -rep.values[i])
    for i in order[:refine_top]:
        t, f = _refine(dec, u, v, max(rep.times[i] - h, 0.0), min(rep.times[i] + h, t_max))
        if f > best_f:
            best_t, best_f = t, f
    return best_t, best_f


def scan_pst(obj, t_max: float, steps: int, threshold: float = 0.999,
             include_diagonal: bool = False) -> list[FidelityReport]:
    """Reports for every vertex pair whose fidelity peaks above ``threshold``."""
    dec = _as_decomposition(obj)
    if steps < 2:
        raise ValueError("steps must be >= 2")
    times = t_max * np.arange(1, steps + 1) / steps
    phases = np.exp(-1j * np.outer(times, dec.values))  # (steps, N)
    Q = dec.vectors
    out = []
    for u in range(dec.size):
        # amplitudes to every v at once: (steps, N)
        amp = np.abs((phases * Q[u]) @ Q.T)
        candidates = np.flatnonzero(amp.max(axis=0) >= threshold)
        for v in candidates:
            if v < u or (v == u and not include_diagonal):
                continue
            out.append(fidelity_curve(dec, u, int(v), t_max, steps, threshold))
    return [r for r in out if r.peaks]


# -- verification ----------------------------------------------------------------


@dataclass
class Check:
    kind: str  # "affirmed", "rejected", "periodic" or "undecided"
    pair: tuple[int, int]
    ok: bool
    detail: dict

    def to_json(self) -> dict:
        return {"kind": self.kind, "pair": list(self.pair), "ok": self.ok, **self.detail}


@dataclass
class VerificationReport:
    checks: list[Check]

    @property
    def mismatches(self) -> list[Check]:
        return [c for c in self.checks if not c.ok]

    @property
    def ok(self) -> bool:
        return not self.mismatches

    def summary(self) -> dict:
        kinds: dict = {}
        for c in self.checks:
            entry = kinds.setdefault(c.kind, {"checked": 0, "confirmed": 0})
            entry["checked"] += 1
            entry["confirmed"] += c.ok
        return {"ok": self.ok, "mismatches": len(self.mismatches), "by_kind": kinds}


def check_affirmed(dec: EigenDecomposition, u: int, v: int, times: TimeSet, samples: int = 3) -> Check:
    values = [(F, abs(dec.entry(u, v, float(F) * math.pi))) for F in times.sample(samples)]
    worst = min(f for _, f in values)
    detail = {"times_over_pi": [F for F, _ in values], "min_fidelity": worst}
    return Check("affirmed", (u, v), worst >= 1 - AFFIRM_TOL, detail)


def check_rejected(dec: EigenDecomposition, u: int, v: int) -> Check:
    t, f = sweep_max(dec, u, v)
    return Check("rejected", (u, v), f < 1 - REJECT_MARGIN, {"max_fidelity": f, "at": t})


def verify(spec: BiCayleySpec, results: list[PairResult] | None = None,
           max_rejected: int | None = 64) -> VerificationReport:
    """Check engine verdicts against the numeric transfer matrix.

    Affirmed pairs are sampled at three members of their time set; rejected
    pairs (up to ``max_rejected``, evenly spread) are swept over (0, 4 pi].
    Graph periodicity is checked at its first positive time on every vertex.
    """
    dec = decompose(adjacency(spec))
    if results is None:
        results = pair_verdicts(spec)
    checks = []
    rejected = []
    for r in results:
        u, v = spec.vertex_index(r.u), spec.vertex_index(r.v)
        if r.verdict.exists:
            checks.append(check_affirmed(dec, u, v, r.verdict.times))
        elif r.verdict.undecided:
            t, f = sweep_max(dec, u, v)
            checks.append(Check("undecided", (u, v), True, {"max_fidelity": f, "at": t}))
        else:
            rejected.append((u, v))
    if max_rejected is not None and len(rejected) > max_rejected:
        stride = len(rejected) / max_rejected
        rejected = [rejected[int(i * stride)] for i in range(max_rejected)]
    checks.extend(check_rejected(dec, u, v) for u, v in rejected)
    checks.extend(_periodicity_checks(spec, dec, periodicity(spec)))
    return VerificationReport(checks)


def _periodicity_checks(spec: BiCayleySpec, dec: EigenDecomposition, verdict: PstVerdict) -> list[Check]:
    if not verdict.exists:
        return []
    F: Fraction = verdict.times.first()
    H = dec.transfer_matrix(float(F) * math.pi)
    diag = np.abs(np.diag(H))
    return [Check("periodic", (-1, -1), bool(diag.min() >= 1 - AFFIRM_TOL),
                  {"time_over_pi": F, "min_fidelity": float(diag.min())})]
