"""Exhaustive stable-set enumeration, ratio sweeps and regime claim checks."""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Sequence

import numpy as np

from .dynamics import (
    DEFAULT_MAX_PASSES,
    DynamicsTrace,
    PairOrderPolicy,
    Status,
    prefers_add,
    run_dynamics,
)
from .errors import CapacityError, InputError, PreconditionError, RegimeError
from .model import Network, Params, SocialRangeMatrix, marginal_utility_add, n_pairs, pair_list

MAX_ENUMERATION_AGENTS = 8
_CHUNK = 1 << 16

# Five-agent case study: agents a..e are 0..4; the diagonal is filled with eps.
CASE_STUDY_SIGNS = (
    (0, 1, -1, 1, -1),
    (1, 0, 1, -1, -1),
    (-1, 1, 0, -1, 1),
    (1, -1, -1, 0, 1),
    (-1, -1, 1, 1, 0),
)
CASE_STUDY_PARAMS = Params(c=0.01, beta=0.1, lam=0.2)
CASE_STUDY_EPS = 0.1

PAPER_WINDOW = (0.044, 0.089)
WINDOW_TOLERANCE = 0.005


def case_study_matrix(eps: float = CASE_STUDY_EPS) -> SocialRangeMatrix:
    return SocialRangeMatrix.from_sign_pattern(eps, CASE_STUDY_SIGNS)


# ---------------------------------------------------------------------------
# enumeration


@dataclass
class StableSetReport:
    n_agents: int
    params: Params
    matrix: SocialRangeMatrix
    stable_networks: list[Network]
    total_examined: int

    @property
    def count(self) -> int:
        return len(self.stable_networks)

    @property
    def keys(self) -> list[str]:
        return [net.key for net in self.stable_networks]

    def __contains__(self, net: Network) -> bool:
        return any(net == s for s in self.stable_networks)


def _stable_masks(n: int, F: SocialRangeMatrix, p: Params) -> list[int]:
    # Vectorised over all networks of a chunk. Marginal utilities come from the
    # same scalar function the dynamics use, so tie behaviour is identical.
    e = n_pairs(n)
    pairs = pair_list(n)
    dadd = np.array([marginal_utility_add(p, d) for d in range(n)])
    shifts = np.arange(e, dtype=np.int64)
    incidence = np.zeros((e, n), dtype=np.int64)
    for k, (i, j) in enumerate(pairs):
        incidence[k, i] = incidence[k, j] = 1
    found = []
    total = 1 << e
    for lo in range(0, total, _CHUNK):
        masks = np.arange(lo, min(lo + _CHUNK, total), dtype=np.int64)
        bits = ((masks[:, None] >> shifts) & 1).astype(bool)
        deg = bits.astype(np.int64) @ incidence
        blocked = np.zeros(len(masks), dtype=bool)
        for k, (i, j) in enumerate(pairs):
            present = bits[:, k]
            ni, nj = deg[:, i], deg[:, j]
            du_i = np.where(present, -dadd[np.maximum(ni - 1, 0)], dadd[np.minimum(ni, n - 1)])
            du_j = np.where(present, -dadd[np.maximum(nj - 1, 0)], dadd[np.minimum(nj, n - 1)])
            f_ij = F[i][j]
            g_i = F[i][i] * du_i + f_ij * du_j
            g_j = F[j][j] * du_j + f_ij * du_i
            blocked |= (g_i > 0) & (g_j > 0)
        found.extend(int(m) for m in masks[~blocked])
    return found


def enumerate_stable(n: int, F: SocialRangeMatrix, p: Params) -> StableSetReport:
    """Check every labelled graph on ``n`` agents and keep the bilaterally stable ones.

    Results are ordered by canonical key.
    """
    if n > MAX_ENUMERATION_AGENTS:
        raise CapacityError(f"enumeration is limited to {MAX_ENUMERATION_AGENTS} agents, got {n}")
    if n < 1:
        raise InputError("need at least one agent")
    if F.n_agents != n:
        raise InputError(f"social matrix has {F.n_agents} agents, expected {n}")
    nets = [Network(n, m) for m in _stable_masks(n, F, p)]
    nets.sort(key=lambda net: net.key)
    return StableSetReport(n, p, F, nets, 1 << n_pairs(n))


# ---------------------------------------------------------------------------
# ratio sweeps


def ratio_grid(start: float, end: float, step: float) -> list[float]:
    """Inclusive grid, rounded to suppress accumulated float drift."""
    if step <= 0:
        raise InputError("grid step must be positive")
    if end < start:
        raise InputError("grid end must not precede grid start")
    count = int(math.floor((end - start) / step + 1e-9)) + 1
    return [round(start + k * step, 12) for k in range(count)]


def _params_for_ratio(ratio: float, lam: float, beta_anchor: float) -> Params:
    c = ratio * beta_anchor
    if not 0 < c < 1:
        raise InputError(f"ratio {ratio} with beta {beta_anchor} gives c={c}, outside (0, 1)")
    return Params(c, beta_anchor, lam)


@dataclass(frozen=True)
class SweepPoint:
    ratio: float
    stable_count: int
    example: Network | None


@dataclass
class SweepReport:
    lam: float
    matrix: SocialRangeMatrix
    grid: list[SweepPoint]

    def zero_runs(self) -> list[tuple[float, float]]:
        """Maximal runs of consecutive grid points with no stable network."""
        runs, current = [], None
        for pt in self.grid:
            if pt.stable_count == 0:
                current = (current[0], pt.ratio) if current else (pt.ratio, pt.ratio)
            elif current:
                runs.append(current)
                current = None
        if current:
            runs.append(current)
        return runs

    def to_csv(self) -> str:
        lines = ["ratio,stable_count,example_edges"]
        for pt in self.grid:
            edges = format_edges(pt.example) if pt.example is not None else ""
            lines.append(f"{pt.ratio:.6f},{pt.stable_count},{edges}")
        return "\n".join(lines) + "\n"


def format_edges(net: Network) -> str:
    return ";".join(f"{i}-{j}" for i, j in net.edges)


def sweep_ratio(
    F: SocialRangeMatrix, lam: float, ratios: Sequence[float], beta_anchor: float = 0.1
) -> SweepReport:
    """Stable-set size at each cost/benefit ratio; ``example`` is the first stable network by key."""
    ratios = list(ratios)
    if any(b <= a for a, b in zip(ratios, ratios[1:])):
        raise InputError("sweep ratios must be strictly increasing")
    params = [_params_for_ratio(r, lam, beta_anchor) for r in ratios]
    grid = []
    for r, p in zip(ratios, params):
        report = enumerate_stable(F.n_agents, F, p)
        grid.append(SweepPoint(r, report.count, report.stable_networks[0] if report.count else None))
    return SweepReport(lam, F, grid)


@dataclass(frozen=True)
class DynamicsPoint:
    ratio: float
    trace: DynamicsTrace


def sweep_dynamics(
    F: SocialRangeMatrix,
    lam: float,
    ratios: Sequence[float],
    start: Network | None = None,
    order: PairOrderPolicy | None = None,
    beta_anchor: float = 0.1,
    max_passes: int = DEFAULT_MAX_PASSES,
) -> list[DynamicsPoint]:
    """Run the dynamics (from the empty network by default) at each ratio."""
    start = start or Network.empty(F.n_agents)
    return [
        DynamicsPoint(r, run_dynamics(start, F, _params_for_ratio(r, lam, beta_anchor), order, max_passes))
        for r in ratios
    ]


def cycle_runs(points: Sequence[DynamicsPoint]) -> list[tuple[float, float]]:
    """Maximal runs of consecutive ratios whose run did not end stable."""
    runs, current = [], None
    for pt in points:
        if pt.trace.status is not Status.STABLE:
            current = (current[0], pt.ratio) if current else (pt.ratio, pt.ratio)
        elif current:
            runs.append(current)
            current = None
    if current:
        runs.append(current)
    return runs


@dataclass(frozen=True)
class WindowCheck:
    runs: list[tuple[float, float]]
    target: tuple[float, float]
    tolerance: float

    @property
    def confirmed(self) -> bool:
        if len(self.runs) != 1:
            return False
        (lo, hi), (tlo, thi) = self.runs[0], self.target
        return abs(lo - tlo) <= self.tolerance and abs(hi - thi) <= self.tolerance


def check_window(
    runs: list[tuple[float, float]],
    target: tuple[float, float] = PAPER_WINDOW,
    tolerance: float = WINDOW_TOLERANCE,
) -> WindowCheck:
    """A single contiguous run whose endpoints sit within ``tolerance`` of ``target``."""
    return WindowCheck(list(runs), target, tolerance)


# ---------------------------------------------------------------------------
# sufficiency bound for link addition between friends


@dataclass(frozen=True)
class TheoremBound:
    t1: int
    t2: int
    threshold: float

    def __post_init__(self):
        if not self.t1 >= self.t2 >= 0:
            raise InputError("need t1 >= t2 >= 0")

    @property
    def hypothesis(self) -> bool:
        return self.t1 < self.threshold


def theorem1_threshold(p: Params) -> float:
    """Degree below which two friends always agree to link: ``|ln(c/((1-lam)beta))| / |ln lam|``.

    Only meaningful when ``c < (1 - lam) * beta``; otherwise no degree
    satisfies the underlying inequality even though the expression is positive.
    """
    k = p.c / ((1 - p.lam) * p.beta)
    if not k < 1:
        raise RegimeError(f"bound needs c < (1-lambda)*beta; got c/((1-lambda)beta) = {k}")
    return abs(math.log(k)) / abs(math.log(p.lam))


def theorem1_bound(p: Params, n_i: int, n_j: int) -> TheoremBound:
    return TheoremBound(max(n_i, n_j), min(n_i, n_j), theorem1_threshold(p))


def check_theorem1(p: Params, F: SocialRangeMatrix, i: int, j: int, n_i: int, n_j: int) -> bool:
    """Whether ``max(n_i, n_j) < threshold`` implies the friends ``i, j`` agree to link."""
    if i == j:
        raise InputError("need two distinct agents")
    if not F[i][j] > 0:
        raise RegimeError(f"bound applies to friends only; f[{i}][{j}] = {F[i][j]}")
    bound = theorem1_bound(p, n_i, n_j)
    return (not bound.hypothesis) or prefers_add(F, p, i, j, n_i, n_j)


# ---------------------------------------------------------------------------
# uniqueness regimes


def lemma1_applies(p: Params, n: int) -> bool:
    """All-friends regime where the complete network is the only stable one."""
    if n < 2:
        raise InputError("need at least two agents")
    return p.ratio < (1 - p.lam) * p.lam ** (n - 2)


def lemma2_applies(p: Params) -> bool:
    """All-friends regime where the empty network is the only stable one."""
    return p.ratio > 1 - p.lam


def corollary1_applies(p: Params, f_ii: float) -> bool:
    """Friend/enemy regime where exactly the enemy pairs link."""
    if not 0 < f_ii < 1:
        raise RegimeError(f"self weight must lie in (0, 1), got {f_ii}")
    return p.ratio > (1 - p.lam) / (1 - f_ii)


class RegimeKind(str, Enum):
    COMPLETE = "complete"
    EMPTY = "empty"
    ENEMY_PAIRS = "enemy_pairs"


def expected_network(kind: RegimeKind, n: int, F: SocialRangeMatrix | None = None) -> Network:
    kind = RegimeKind(kind)
    if kind is RegimeKind.COMPLETE:
        return Network.complete(n)
    if kind is RegimeKind.EMPTY:
        return Network.empty(n)
    if F is None:
        raise InputError("the enemy-pairs network needs a social matrix")
    if F.n_agents != n:
        raise InputError(f"social matrix has {F.n_agents} agents, expected {n}")
    return Network.from_edges(n, F.enemy_pairs())


class Outcome(str, Enum):
    CONFIRMED = "confirmed"
    MEMBER_ONLY = "member_only"  # predicted network stable, but not the only one
    REFUTED = "refuted"


@dataclass
class Verdict:
    kind: RegimeKind
    expected: Network
    report: StableSetReport

    @property
    def member(self) -> bool:
        return self.expected in self.report

    @property
    def unique(self) -> bool:
        return self.member and self.report.count == 1

    @property
    def outcome(self) -> Outcome:
        if self.unique:
            return Outcome.CONFIRMED
        return Outcome.MEMBER_ONLY if self.member else Outcome.REFUTED

    @property
    def confirmed(self) -> bool:
        return self.outcome is Outcome.CONFIRMED


def _regime_precondition(kind: RegimeKind, n: int, F: SocialRangeMatrix, p: Params) -> None:
    off = [F[i][j] for i, j in pair_list(n)]
    if kind is RegimeKind.ENEMY_PAIRS:
        if any(f not in (-1.0, 1.0) for f in off):
            raise PreconditionError("enemy-pairs regime needs every off-diagonal entry in {-1, 1}")
        diag = {F[i][i] for i in range(n)}
        if len(diag) != 1:
            raise PreconditionError("enemy-pairs regime needs a uniform diagonal")
        if not corollary1_applies(p, diag.pop()):
            raise PreconditionError("c/beta must exceed (1-lambda)/(1-f_ii)")
        return
    if any(f != 1.0 for f in off):
        raise PreconditionError("friend regimes need every off-diagonal entry equal to 1")
    if kind is RegimeKind.COMPLETE and not lemma1_applies(p, n):
        raise PreconditionError("c/beta must be below (1-lambda)*lambda^(N-2)")
    if kind is RegimeKind.EMPTY and not lemma2_applies(p):
        raise PreconditionError("c/beta must exceed 1-lambda")


def verify_regime_claim(kind: RegimeKind, n: int, F: SocialRangeMatrix, p: Params) -> Verdict:
    """Enumerate the stable set and compare it with the network the regime predicts."""
    kind = RegimeKind(kind)
    if F.n_agents != n:
        raise InputError(f"social matrix has {F.n_agents} agents, expected {n}")
    _regime_precondition(kind, n, F, p)
    return Verdict(kind, expected_network(kind, n, F), enumerate_stable(n, F, p))
