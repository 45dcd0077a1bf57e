"""Run configuration: JSON ingestion and validation.

Example document::

    {
      "n": 5, "c": 0.01, "beta": 0.1, "lambda": 0.2,
      "social_matrix": [[0.1, 1, -1, 1, -1], ...],
      "start": "empty",
      "pair_order": "lex",
      "max_passes": 10000
    }

``start`` is ``"empty"``, ``"complete"``, ``{"edges": [[i, j], ...]}`` or
``{"random": {"p_edge": 0.5, "seed": 7}}``. ``pair_order`` is ``"lex"``,
``"pairs"`` or ``{"shuffled": {"seed": 3}}``.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, replace
from typing import Any

from .dynamics import DEFAULT_MAX_PASSES, PairOrderPolicy
from .errors import ConfigError, InputError
from .model import Network, Params, SocialRangeMatrix, pair_list

_REQUIRED = ("n", "c", "beta", "lambda", "social_matrix")
_KNOWN = set(_REQUIRED) | {"start", "pair_order", "max_passes"}


@dataclass(frozen=True)
class StartSpec:
    kind: str  # empty | complete | edges | random
    edges: tuple[tuple[int, int], ...] = ()
    p_edge: float = 0.0
    seed: int | None = None


@dataclass(frozen=True)
class RunConfig:
    n: int
    params: Params
    matrix: SocialRangeMatrix
    start: StartSpec
    order: PairOrderPolicy
    max_passes: int = DEFAULT_MAX_PASSES

    def with_seed(self, seed: int) -> RunConfig:
        """Override every seed in the configuration."""
        start = replace(self.start, seed=seed) if self.start.kind == "random" else self.start
        order = PairOrderPolicy.shuffled(seed) if self.order.kind == "shuffled" else self.order
        return replace(self, start=start, order=order)

    def start_network(self) -> Network:
        return build_start(self.n, self.start)


def build_start(n: int, spec: StartSpec) -> Network:
    if spec.kind == "empty":
        return Network.empty(n)
    if spec.kind == "complete":
        return Network.complete(n)
    if spec.kind == "edges":
        return Network.from_edges(n, spec.edges)
    rng = random.Random(spec.seed)
    return Network.from_edges(n, [pr for pr in pair_list(n) if rng.random() < spec.p_edge])


def _real(doc: dict, key: str, path: str) -> float:
    value = doc[key]
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError(path, f"expected a number, got {value!r}")
    return float(value)


def _seed(value: Any, path: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int) or not 0 <= value < 2**64:
        raise ConfigError(path, f"expected an unsigned 64-bit integer, got {value!r}")
    return value


def _parse_start(value: Any, n: int) -> StartSpec:
    if value in ("empty", "complete"):
        return StartSpec(value)
    if isinstance(value, dict) and len(value) == 1:
        if "edges" in value:
            edges = value["edges"]
            if not isinstance(edges, list):
                raise ConfigError("start.edges", "expected a list of [i, j] pairs")
            out = []
            for k, e in enumerate(edges):
                path = f"start.edges[{k}]"
                if not (isinstance(e, list) and len(e) == 2 and all(isinstance(x, int) and not isinstance(x, bool) for x in e)):
                    raise ConfigError(path, f"expected [i, j], got {e!r}")
                i, j = e
                if not (0 <= i < n and 0 <= j < n) or i == j:
                    raise ConfigError(path, f"invalid edge {e!r} for {n} agents")
                out.append((min(i, j), max(i, j)))
            return StartSpec("edges", tuple(sorted(set(out))))
        if "random" in value:
            r = value["random"]
            if not isinstance(r, dict) or set(r) != {"p_edge", "seed"}:
                raise ConfigError("start.random", "expected {\"p_edge\": ..., \"seed\": ...}")
            p_edge = _real(r, "p_edge", "start.random.p_edge")
            if not 0 <= p_edge <= 1:
                raise ConfigError("start.random.p_edge", f"must lie in [0, 1], got {p_edge}")
            return StartSpec("random", p_edge=p_edge, seed=_seed(r["seed"], "start.random.seed"))
    raise ConfigError("start", f"unrecognised start {value!r}")


def _parse_order(value: Any) -> PairOrderPolicy:
    if value in ("lex", "pairs"):
        return PairOrderPolicy(value)
    if isinstance(value, dict) and set(value) == {"shuffled"} and isinstance(value["shuffled"], dict):
        if set(value["shuffled"]) != {"seed"}:
            raise ConfigError("pair_order.shuffled", "expected {\"seed\": ...}")
        return PairOrderPolicy.shuffled(_seed(value["shuffled"]["seed"], "pair_order.shuffled.seed"))
    raise ConfigError("pair_order", f"unrecognised pair order {value!r}")


def config_from_dict(doc: Any) -> RunConfig:
    if not isinstance(doc, dict):
        raise ConfigError("<root>", "expected a JSON object")
    for key in _REQUIRED:
        if key not in doc:
            raise ConfigError(key, "missing required field")
    unknown = sorted(set(doc) - _KNOWN)
    if unknown:
        raise ConfigError(unknown[0], "unknown field")

    n = doc["n"]
    if isinstance(n, bool) or not isinstance(n, int) or n < 1:
        raise ConfigError("n", f"expected a positive integer, got {n!r}")

    values = {key: _real(doc, key, key) for key in ("c", "beta", "lambda")}
    for key, v in values.items():
        if not 0 < v < 1:
            raise ConfigError(key, f"must lie in the open interval (0, 1), got {v}")
    params = Params(values["c"], values["beta"], values["lambda"])

    rows = doc["social_matrix"]
    if not (isinstance(rows, list) and len(rows) == n and all(isinstance(r, list) and len(r) == n for r in rows)):
        raise ConfigError("social_matrix", f"expected a {n}x{n} list of lists")
    for i, row in enumerate(rows):
        for j, x in enumerate(row):
            if isinstance(x, bool) or not isinstance(x, (int, float)):
                raise ConfigError(f"social_matrix[{i}][{j}]", f"expected a number, got {x!r}")
    try:
        matrix = SocialRangeMatrix(rows)
    except InputError as exc:
        raise ConfigError("social_matrix", str(exc)) from None

    start = _parse_start(doc.get("start", "empty"), n)
    order = _parse_order(doc.get("pair_order", "lex"))
    max_passes = doc.get("max_passes", DEFAULT_MAX_PASSES)
    if isinstance(max_passes, bool) or not isinstance(max_passes, int) or max_passes < 1:
        raise ConfigError("max_passes", f"expected a positive integer, got {max_passes!r}")
    return RunConfig(n, params, matrix, start, order, max_passes)


def parse_config(text: str) -> RunConfig:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError("<root>", f"invalid JSON: {exc}") from None
    return config_from_dict(doc)
