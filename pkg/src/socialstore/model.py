"""Agents, backup networks, social range matrices and utilities.

A network is stored as a bitmask over unordered agent pairs, with pair
``(i, j), i < j`` occupying bit ``pair_index(i, j, n)`` in lexicographic
pair order. The same ordering defines the canonical key.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Iterable, Sequence

import numpy as np

from .errors import InputError

MAX_AGENTS = 64


def n_pairs(n: int) -> int:
    return n * (n - 1) // 2


@lru_cache(maxsize=None)
def pair_list(n: int) -> tuple[tuple[int, int], ...]:
    """All unordered pairs ``(i, j)`` with ``i < j``, in lexicographic order."""
    return tuple(itertools.combinations(range(n), 2))


def pair_index(i: int, j: int, n: int) -> int:
    if i > j:
        i, j = j, i
    return i * (2 * n - i - 1) // 2 + (j - i - 1)


def _check_agent(n: int, i: int) -> None:
    if not isinstance(i, (int, np.integer)) or isinstance(i, bool):
        raise InputError(f"agent index must be an integer, got {i!r}")
    if not 0 <= i < n:
        raise InputError(f"agent index {i} out of range for {n} agents")


@dataclass(frozen=True)
class Network:
    """Undirected simple graph over ``n_agents`` agents."""

    n_agents: int
    mask: int = 0

    def __post_init__(self):
        if not isinstance(self.n_agents, int) or not 1 <= self.n_agents <= MAX_AGENTS:
            raise InputError(f"n_agents must be an integer in [1, {MAX_AGENTS}], got {self.n_agents!r}")
        if not 0 <= self.mask < (1 << n_pairs(self.n_agents)):
            raise InputError("mask has bits outside the pair range")

    @classmethod
    def empty(cls, n: int) -> Network:
        return cls(n, 0)

    @classmethod
    def complete(cls, n: int) -> Network:
        return cls(n, (1 << n_pairs(n)) - 1)

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Sequence[int]]) -> Network:
        mask = 0
        for edge in edges:
            i, j = edge
            _check_agent(n, i)
            _check_agent(n, j)
            if i == j:
                raise InputError(f"self-loop on agent {i}")
            mask |= 1 << pair_index(int(i), int(j), n)
        return cls(n, mask)

    @classmethod
    def from_key(cls, n: int, key: str) -> Network:
        if len(key) != n_pairs(n) or set(key) - {"0", "1"}:
            raise InputError(f"key must be a {n_pairs(n)}-character bit string")
        mask = sum(1 << k for k, ch in enumerate(key) if ch == "1")
        return cls(n, mask)

    def has_edge(self, i: int, j: int) -> bool:
        _check_agent(self.n_agents, i)
        _check_agent(self.n_agents, j)
        if i == j:
            return False
        return bool(self.mask >> pair_index(i, j, self.n_agents) & 1)

    @cached_property
    def degrees(self) -> tuple[int, ...]:
        deg = [0] * self.n_agents
        for i, j in self.edges:
            deg[i] += 1
            deg[j] += 1
        return tuple(deg)

    def degree(self, i: int) -> int:
        _check_agent(self.n_agents, i)
        return self.degrees[i]

    @cached_property
    def edges(self) -> tuple[tuple[int, int], ...]:
        """Present edges, ``i < j``, sorted lexicographically."""
        mask = self.mask
        return tuple(p for k, p in enumerate(pair_list(self.n_agents)) if mask >> k & 1)

    @property
    def n_edges(self) -> int:
        return self.mask.bit_count()

    @cached_property
    def key(self) -> str:
        """Upper-triangle bit string; character ``k`` is pair ``k`` in lexicographic order."""
        e = n_pairs(self.n_agents)
        return "".join("1" if self.mask >> k & 1 else "0" for k in range(e))

    def toggled(self, i: int, j: int) -> Network:
        _check_agent(self.n_agents, i)
        _check_agent(self.n_agents, j)
        if i == j:
            raise InputError(f"self-loop on agent {i}")
        return Network(self.n_agents, self.mask ^ (1 << pair_index(i, j, self.n_agents)))

    def with_edge(self, i: int, j: int) -> Network:
        return self if self.has_edge(i, j) else self.toggled(i, j)

    def without_edge(self, i: int, j: int) -> Network:
        return self.toggled(i, j) if self.has_edge(i, j) else self

    def adjacency(self) -> np.ndarray:
        a = np.zeros((self.n_agents, self.n_agents), dtype=bool)
        for i, j in self.edges:
            a[i, j] = a[j, i] = True
        return a

    def relabel(self, perm: Sequence[int]) -> Network:
        """Network with agent ``i`` renamed to ``perm[i]``."""
        return Network.from_edges(self.n_agents, ((perm[i], perm[j]) for i, j in self.edges))


def canonical_key(net: Network) -> str:
    return net.key


def degree(net: Network, i: int) -> int:
    return net.degree(i)


@dataclass(frozen=True)
class Params:
    """Link cost ``c``, backup benefit ``beta`` and disk failure probability ``lam``."""

    c: float
    beta: float
    lam: float

    def __post_init__(self):
        for name, label in (("c", "c"), ("beta", "beta"), ("lam", "lambda")):
            value = getattr(self, name)
            if isinstance(value, bool) or not isinstance(value, (int, float)):
                raise InputError(f"{label} must be a real number, got {value!r}")
            if not (0.0 < value < 1.0):
                raise InputError(f"{label} must lie in the open interval (0, 1), got {value!r}")
            object.__setattr__(self, name, float(value))

    @classmethod
    def from_ratio(cls, ratio: float, lam: float, beta: float = 0.1) -> Params:
        return cls(ratio * beta, beta, lam)

    @property
    def ratio(self) -> float:
        return self.c / self.beta


@dataclass(frozen=True)
class SocialRangeMatrix:
    """Symmetric relationship weights: positive friend, negative enemy, zero neutral.

    ``strict_dominance`` additionally requires ``f[i][i] < |f[i][j]|`` for every
    nonzero off-diagonal entry (neutral entries are exempt).
    """

    values: tuple[tuple[float, ...], ...]
    strict_dominance: bool = False

    def __post_init__(self):
        try:
            arr = np.asarray(self.values, dtype=float)
        except (TypeError, ValueError) as exc:
            raise InputError(f"social matrix is not numeric: {exc}") from None
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1] or arr.shape[0] == 0:
            raise InputError(f"social matrix must be square and non-empty, got shape {arr.shape}")
        n = arr.shape[0]
        if n > MAX_AGENTS:
            raise InputError(f"at most {MAX_AGENTS} agents are supported")
        if not np.all(np.isfinite(arr)):
            raise InputError("social matrix entries must be finite")
        if not np.array_equal(arr, arr.T):
            i, j = np.argwhere(arr != arr.T)[0]
            raise InputError(f"social matrix is not symmetric: f[{i}][{j}]={arr[i, j]} but f[{j}][{i}]={arr[j, i]}")
        diag = np.diag(arr)
        if np.any(diag <= 0):
            i = int(np.argmax(diag <= 0))
            raise InputError(f"diagonal entry f[{i}][{i}] must be positive, got {diag[i]}")
        if self.strict_dominance:
            for i, j in pair_list(n):
                if arr[i, j] != 0 and not (arr[i, i] < abs(arr[i, j]) and arr[j, j] < abs(arr[i, j])):
                    raise InputError(f"strict dominance violated at ({i}, {j})")
        object.__setattr__(self, "values", tuple(tuple(float(x) for x in row) for row in arr))

    @classmethod
    def friends_all(cls, n: int, eps: float = 0.1) -> SocialRangeMatrix:
        return cls.from_sign_pattern(eps, [[1] * n for _ in range(n)])

    @classmethod
    def from_sign_pattern(cls, eps: float, signs: Sequence[Sequence[float]]) -> SocialRangeMatrix:
        """Diagonal ``eps``; off-diagonal entries taken verbatim from ``signs``."""
        n = len(signs)
        rows = [[eps if i == j else signs[i][j] for j in range(n)] for i in range(n)]
        return cls(rows)

    @property
    def n_agents(self) -> int:
        return len(self.values)

    def __getitem__(self, i: int) -> tuple[float, ...]:
        return self.values[i]

    def as_array(self) -> np.ndarray:
        return np.array(self.values)

    def relation(self, i: int, j: int) -> str:
        f = self.values[i][j]
        return "friend" if f > 0 else "enemy" if f < 0 else "neutral"

    def enemy_pairs(self) -> list[tuple[int, int]]:
        return [(i, j) for i, j in pair_list(self.n_agents) if self.values[i][j] < 0]

    def relabel(self, perm: Sequence[int]) -> SocialRangeMatrix:
        """Matrix with agent ``i`` renamed to ``perm[i]``."""
        n = self.n_agents
        rows = [[0.0] * n for _ in range(n)]
        for i in range(n):
            for j in range(n):
                rows[perm[i]][perm[j]] = self.values[i][j]
        return SocialRangeMatrix(rows)


def utility(net: Network, p: Params, i: int) -> float:
    """Expected backup benefit minus link cost at agent ``i``'s degree."""
    n = net.degree(i)
    return p.beta * (1 - p.lam**n) - p.c * n


def perceived_utility(net: Network, F: SocialRangeMatrix, p: Params, i: int) -> float:
    """Sum of ``F[i][j] * utility(j)`` over every agent ``j``, ``i`` included."""
    if F.n_agents != net.n_agents:
        raise InputError(f"social matrix has {F.n_agents} agents but network has {net.n_agents}")
    row = F[i] if 0 <= i < F.n_agents else None
    if row is None:
        raise InputError(f"agent index {i} out of range for {net.n_agents} agents")
    return math.fsum(row[j] * utility(net, p, j) for j in range(net.n_agents))


def marginal_utility_add(p: Params, n: int) -> float:
    """Change in an agent's utility when its degree rises from ``n`` to ``n + 1``."""
    if n < 0:
        raise InputError(f"degree must be non-negative, got {n}")
    return p.beta * (1 - p.lam) * p.lam**n - p.c
