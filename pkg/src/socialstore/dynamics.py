"""Bilateral link moves, bilateral stability and the pairwise formation dynamics.

Decisions are computed from perceived-utility deltas: adding ``(i, j)``
changes agent ``i``'s perceived utility by ``f_ii * du_i + f_ij * du_j`` where
``du`` is the raw-utility change at each endpoint. Every other agent's degree
is untouched, so their terms cancel. ``inequality_sides`` exposes the
equivalent closed-form inequalities (divided through by ``beta * (1 - lam)``)
for cross-checking.

Comparisons are strict and exact: a tie means no move.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from enum import Enum

from .errors import InputError, PreconditionError
from .model import (
    Network,
    Params,
    SocialRangeMatrix,
    canonical_key,
    marginal_utility_add,
    pair_index,
    pair_list,
)

__all__ = [
    "DEFAULT_MAX_PASSES",
    "DynamicsTrace",
    "Move",
    "MoveKind",
    "PairOrderPolicy",
    "Status",
    "Step",
    "add_gains",
    "blocking_moves",
    "canonical_key",
    "delete_gains",
    "inequality_sides",
    "is_bilaterally_stable",
    "prefers_add",
    "prefers_add_inequality",
    "prefers_delete",
    "prefers_delete_inequality",
    "run_dynamics",
    "wants_add",
    "wants_delete",
]

DEFAULT_MAX_PASSES = 10_000


class MoveKind(str, Enum):
    ADD = "add"
    DELETE = "delete"


@dataclass(frozen=True)
class Move:
    kind: MoveKind
    i: int
    j: int

    def __post_init__(self):
        if self.i == self.j:
            raise InputError("a move needs two distinct agents")
        if self.i > self.j:
            a, b = self.j, self.i
            object.__setattr__(self, "i", a)
            object.__setattr__(self, "j", b)

    @property
    def pair(self) -> tuple[int, int]:
        return (self.i, self.j)

    def apply(self, net: Network) -> Network:
        present = net.has_edge(self.i, self.j)
        if present != (self.kind is MoveKind.DELETE):
            raise PreconditionError(f"cannot {self.kind.value} edge {self.pair}: edge {'present' if present else 'absent'}")
        return net.toggled(self.i, self.j)


# ---------------------------------------------------------------------------
# degree-level decisions


def add_gains(F: SocialRangeMatrix, p: Params, i: int, j: int, n_i: int, n_j: int) -> tuple[float, float]:
    """Perceived-utility change for ``i`` and for ``j`` if the absent link is added."""
    du_i = marginal_utility_add(p, n_i)
    du_j = marginal_utility_add(p, n_j)
    f_ij = F[i][j]
    return F[i][i] * du_i + f_ij * du_j, F[j][j] * du_j + f_ij * du_i


def delete_gains(F: SocialRangeMatrix, p: Params, i: int, j: int, n_i: int, n_j: int) -> tuple[float, float]:
    """Perceived-utility change if the present link is deleted; degrees include the link."""
    if n_i < 1 or n_j < 1:
        raise PreconditionError("an existing link gives both endpoints degree >= 1")
    du_i = -marginal_utility_add(p, n_i - 1)
    du_j = -marginal_utility_add(p, n_j - 1)
    f_ij = F[i][j]
    return F[i][i] * du_i + f_ij * du_j, F[j][j] * du_j + f_ij * du_i


def prefers_add(F, p, i, j, n_i, n_j) -> bool:
    g_i, g_j = add_gains(F, p, i, j, n_i, n_j)
    return g_i > 0 and g_j > 0


def prefers_delete(F, p, i, j, n_i, n_j) -> bool:
    g_i, g_j = delete_gains(F, p, i, j, n_i, n_j)
    return g_i > 0 and g_j > 0


def inequality_sides(
    F: SocialRangeMatrix, p: Params, i: int, j: int, n_i: int, n_j: int, kind: MoveKind
) -> tuple[tuple[float, float], tuple[float, float]]:
    """``(lhs, rhs)`` of the closed-form condition for agent ``i`` and for agent ``j``.

    Add needs ``lhs > rhs`` on both sides; delete needs ``lhs < rhs`` on both,
    with the right-hand side scaled by ``lam``. The second condition uses
    ``f_jj``, which reduces to the textbook form when the diagonal is uniform.
    """
    lam = p.lam
    scale = p.c / ((1 - lam) * p.beta)
    if kind is MoveKind.DELETE:
        scale *= lam
    f_ii, f_jj, f_ij = F[i][i], F[j][j], F[i][j]
    li, lj = lam**n_i, lam**n_j
    return (
        (f_ii * li + f_ij * lj, (f_ii + f_ij) * scale),
        (f_jj * lj + f_ij * li, (f_jj + f_ij) * scale),
    )


def prefers_add_inequality(F, p, i, j, n_i, n_j) -> bool:
    (li, ri), (lj, rj) = inequality_sides(F, p, i, j, n_i, n_j, MoveKind.ADD)
    return li > ri and lj > rj


def prefers_delete_inequality(F, p, i, j, n_i, n_j) -> bool:
    (li, ri), (lj, rj) = inequality_sides(F, p, i, j, n_i, n_j, MoveKind.DELETE)
    return li < ri and lj < rj


# ---------------------------------------------------------------------------
# network-level decisions


def _check_pair(net: Network, F: SocialRangeMatrix, i: int, j: int) -> None:
    if F.n_agents != net.n_agents:
        raise InputError(f"social matrix has {F.n_agents} agents but network has {net.n_agents}")
    if i == j:
        raise PreconditionError("a link needs two distinct agents")


def wants_add(net: Network, F: SocialRangeMatrix, p: Params, i: int, j: int) -> bool:
    """Both agents strictly gain perceived utility by adding the absent link ``(i, j)``."""
    _check_pair(net, F, i, j)
    if net.has_edge(i, j):
        raise PreconditionError(f"edge ({i}, {j}) is already present")
    return prefers_add(F, p, i, j, net.degrees[i], net.degrees[j])


def wants_delete(net: Network, F: SocialRangeMatrix, p: Params, i: int, j: int) -> bool:
    """Both agents strictly gain perceived utility by deleting the present link ``(i, j)``."""
    _check_pair(net, F, i, j)
    if not net.has_edge(i, j):
        raise PreconditionError(f"edge ({i}, {j}) is absent")
    return prefers_delete(F, p, i, j, net.degrees[i], net.degrees[j])


def blocking_moves(net: Network, F: SocialRangeMatrix, p: Params) -> list[Move]:
    """Every single-link move both endpoints would agree to, in lexicographic pair order."""
    if F.n_agents != net.n_agents:
        raise InputError(f"social matrix has {F.n_agents} agents but network has {net.n_agents}")
    deg = net.degrees
    moves = []
    for k, (i, j) in enumerate(pair_list(net.n_agents)):
        if net.mask >> k & 1:
            if prefers_delete(F, p, i, j, deg[i], deg[j]):
                moves.append(Move(MoveKind.DELETE, i, j))
        elif prefers_add(F, p, i, j, deg[i], deg[j]):
            moves.append(Move(MoveKind.ADD, i, j))
    return moves


def is_bilaterally_stable(net: Network, F: SocialRangeMatrix, p: Params) -> bool:
    return not blocking_moves(net, F, p)


# ---------------------------------------------------------------------------
# dynamics


@dataclass(frozen=True)
class PairOrderPolicy:
    """Order in which one pass visits agent pairs.

    ``lex`` is the nested ``for i: for j != i`` scan, so every unordered pair
    is examined twice per pass, once as ``(i, j)`` and once as ``(j, i)``.
    ``pairs`` visits each unordered pair once. ``shuffled`` is a fixed,
    seed-determined permutation of the ``lex`` sequence, reused on every pass.
    """

    kind: str = "lex"
    seed: int | None = None

    def __post_init__(self):
        if self.kind not in ("lex", "pairs", "shuffled"):
            raise InputError(f"unknown pair order {self.kind!r}")
        if (self.kind == "shuffled") != (self.seed is not None):
            raise InputError("a seed is required for, and only for, the shuffled order")

    @classmethod
    def lexicographic(cls) -> PairOrderPolicy:
        return cls("lex")

    @classmethod
    def unordered(cls) -> PairOrderPolicy:
        return cls("pairs")

    @classmethod
    def shuffled(cls, seed: int) -> PairOrderPolicy:
        return cls("shuffled", seed)

    def sequence(self, n: int) -> list[tuple[int, int]]:
        if self.kind == "pairs":
            return list(pair_list(n))
        seq = [(i, j) for i in range(n) for j in range(n) if i != j]
        if self.kind == "shuffled":
            random.Random(self.seed).shuffle(seq)
        return seq


class Status(str, Enum):
    STABLE = "stable"
    CYCLE = "cycle"
    ITERATION_CAP = "iteration_cap"


@dataclass(frozen=True)
class Step:
    move: Move
    key: str
    pass_index: int


@dataclass
class DynamicsTrace:
    start: Network
    final: Network
    status: Status
    passes: int
    moves: list[Step] = field(default_factory=list)
    first_repeat_index: int | None = None

    def replay(self) -> Network:
        net = self.start
        for step in self.moves:
            net = step.move.apply(net)
        return net


def run_dynamics(
    start: Network,
    F: SocialRangeMatrix,
    p: Params,
    order: PairOrderPolicy | None = None,
    max_passes: int = DEFAULT_MAX_PASSES,
) -> DynamicsTrace:
    """Repeated greedy passes over agent pairs until nothing changes.

    Within a pass each visited pair gets the add test (absent link) or the
    delete test (present link) against the current network, and an agreed
    move is applied at once. The run ends ``STABLE`` after a pass with no
    move, ``CYCLE`` when a pass-boundary network repeats (``first_repeat_index``
    is the pass count at which it was first seen; 0 is the start), and
    ``ITERATION_CAP`` after ``max_passes`` passes.
    """
    if max_passes < 1:
        raise InputError("max_passes must be at least 1")
    if F.n_agents != start.n_agents:
        raise InputError(f"social matrix has {F.n_agents} agents but network has {start.n_agents}")
    order = order or PairOrderPolicy()
    n = start.n_agents
    visits = [(i, j, 1 << pair_index(i, j, n)) for i, j in order.sequence(n)]

    mask = start.mask
    deg = list(start.degrees)
    steps: list[Step] = []
    seen = {mask: 0}

    for pass_index in range(1, max_passes + 1):
        changed = False
        for i, j, bit in visits:
            if mask & bit:
                if not prefers_delete(F, p, i, j, deg[i], deg[j]):
                    continue
                kind, delta = MoveKind.DELETE, -1
            else:
                if not prefers_add(F, p, i, j, deg[i], deg[j]):
                    continue
                kind, delta = MoveKind.ADD, 1
            mask ^= bit
            deg[i] += delta
            deg[j] += delta
            changed = True
            steps.append(Step(Move(kind, i, j), canonical_key(Network(n, mask)), pass_index))
        final = Network(n, mask)
        if not changed:
            return DynamicsTrace(start, final, Status.STABLE, pass_index, steps)
        if mask in seen:
            return DynamicsTrace(start, final, Status.CYCLE, pass_index, steps, seen[mask])
        seen[mask] = pass_index
    return DynamicsTrace(start, Network(n, mask), Status.ITERATION_CAP, max_passes, steps)
