"""Edge-list and Graphviz DOT serialisation."""

from __future__ import annotations

from .errors import InputError
from .model import Network, SocialRangeMatrix


def to_edge_list(net: Network) -> str:
    """One ``i j`` line per edge, ``i < j``, ascending."""
    return "".join(f"{i} {j}\n" for i, j in net.edges)


def parse_edge_list(text: str, n: int) -> Network:
    edges = []
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 2:
            raise InputError(f"line {lineno}: expected 'i j', got {line!r}")
        try:
            edges.append((int(parts[0]), int(parts[1])))
        except ValueError:
            raise InputError(f"line {lineno}: agent indices must be integers") from None
    return Network.from_edges(n, edges)


def to_dot(net: Network, F: SocialRangeMatrix | None = None, name: str = "backup") -> str:
    lines = [f"graph {name} {{"]
    lines.extend(f'  {i} [label="{i}"];' for i in range(net.n_agents))
    for i, j in net.edges:
        if F is None:
            lines.append(f"  {i} -- {j};")
            continue
        rel = F.relation(i, j)
        style = {"friend": "solid", "enemy": "dashed", "neutral": "dotted"}[rel]
        lines.append(f'  {i} -- {j} [relation="{rel}", weight_f="{F[i][j]:g}", style={style}];')
    lines.append("}")
    return "\n".join(lines) + "\n"
