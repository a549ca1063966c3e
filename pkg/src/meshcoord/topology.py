"""Directed communication graphs, named generators, and path metrics.

N_i here is always the in-neighborhood: the agents whose broadcasts agent i
receives. Selections travel the other way, to out-neighbors. Graphs may be
directed and disconnected; the undirected generators emit symmetric edges.
"""

from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Sequence


class MeshGraph:
    """Immutable directed graph over agents 0..n-1 with in/out neighbor maps."""

    def __init__(self, n: int, in_neighbors: Sequence[Iterable[int]]):
        if n < 1:
            raise ValueError("graph needs at least one agent")
        if len(in_neighbors) != n:
            raise ValueError("need one in-neighborhood per agent")
        ins = []
        outs: list[set[int]] = [set() for _ in range(n)]
        for i, nbrs in enumerate(in_neighbors):
            fs = frozenset(int(j) for j in nbrs)
            if i in fs:
                raise ValueError(f"agent {i} lists itself as a neighbor")
            if not fs <= set(range(n)):
                raise ValueError(f"agent {i} lists unknown agent ids")
            ins.append(fs)
            for j in fs:
                outs[j].add(i)
        self.n = n
        self.in_neighbors: tuple[frozenset[int], ...] = tuple(ins)
        self.out_neighbors: tuple[frozenset[int], ...] = tuple(frozenset(s) for s in outs)

    def edge_count(self) -> int:
        return sum(len(s) for s in self.in_neighbors)

    def has_edges(self) -> bool:
        return any(self.in_neighbors)

    def __eq__(self, other) -> bool:
        return isinstance(other, MeshGraph) and self.in_neighbors == other.in_neighbors

    def __hash__(self) -> int:
        return hash(self.in_neighbors)

    def __repr__(self) -> str:
        return f"MeshGraph(n={self.n}, edges={self.edge_count()})"


@dataclass(frozen=True)
class InfoDag:
    """A decision order plus, per position, the earlier agents it may condition on."""

    order: tuple[int, ...]
    access: tuple[frozenset[int], ...]

    def __post_init__(self):
        n = len(self.order)
        if sorted(self.order) != list(range(n)):
            raise ValueError("order must be a permutation of 0..n-1")
        if len(self.access) != n:
            raise ValueError("need one access set per position")
        seen: set[int] = set()
        for pos, agent in enumerate(self.order):
            if not self.access[pos] <= seen:
                raise ValueError(f"access at position {pos} references non-predecessors")
            seen.add(agent)


def full_access_dag(order: Sequence[int]) -> InfoDag:
    """InfoDag in which every agent conditions on all of its predecessors."""
    order = tuple(order)
    access = []
    seen: set[int] = set()
    for agent in order:
        access.append(frozenset(seen))
        seen.add(agent)
    return InfoDag(order=order, access=tuple(access))


def knn_graph(positions: Sequence[tuple[float, float]], k: int, comm_range: float) -> MeshGraph:
    """Each agent receives from its k nearest others within comm_range.

    Fewer than k in range means it takes everyone in range. Distance ties are
    broken toward the lower agent id.
    """
    if k < 0:
        raise ValueError("k may not be negative")
    n = len(positions)
    range2 = comm_range * comm_range
    ins = []
    for i, (xi, yi) in enumerate(positions):
        ranked = sorted(
            ((xj - xi) ** 2 + (yj - yi) ** 2, j)
            for j, (xj, yj) in enumerate(positions)
            if j != i
        )
        ins.append([j for d2, j in ranked if d2 <= range2][:k])
    return MeshGraph(n, ins)


def line_graph(n: int) -> MeshGraph:
    """Undirected path 0-1-...-(n-1)."""
    return from_undirected_edges(n, [(i, i + 1) for i in range(n - 1)])


def star_graph(n: int, center: int) -> MeshGraph:
    """Undirected star: center adjacent to every other agent."""
    if not 0 <= center < n:
        raise ValueError("center must be a valid agent id")
    return from_undirected_edges(n, [(center, i) for i in range(n) if i != center])


def complete_graph(n: int) -> MeshGraph:
    return MeshGraph(n, [[j for j in range(n) if j != i] for i in range(n)])


def edgeless_graph(n: int) -> MeshGraph:
    return MeshGraph(n, [[] for _ in range(n)])


def is_complete(g: MeshGraph) -> bool:
    return all(len(s) == g.n - 1 for s in g.in_neighbors)


def from_undirected_edges(n: int, edges: Iterable[tuple[int, int]]) -> MeshGraph:
    ins: list[set[int]] = [set() for _ in range(n)]
    for u, v in edges:
        if u == v:
            raise ValueError("self-loops are not allowed")
        ins[u].add(v)
        ins[v].add(u)
    return MeshGraph(n, ins)


def strongly_connected_line_plus(n: int, extra_edges: int, seed: int) -> MeshGraph:
    """The undirected line plus extra distinct random undirected edges.

    Strongly connected for every seed because the line alone already is.
    """
    if n < 2:
        raise ValueError("need at least two agents for a line")
    candidates = [
        (i, j) for i in range(n) for j in range(i + 1, n) if j != i + 1
    ]
    if extra_edges > len(candidates):
        raise ValueError(
            f"cannot add {extra_edges} extra edges; only {len(candidates)} non-line pairs exist"
        )
    rng = random.Random(seed)
    chosen = rng.sample(candidates, extra_edges)
    return from_undirected_edges(n, [(i, i + 1) for i in range(n - 1)] + chosen)


def worst_case_cycle(n: int) -> MeshGraph:
    """Directed graph in which every hand-off i -> i+1 costs n-2 hops.

    A backward chain i -> i-1 plus two chords (0 -> n-2 and 1 -> n-1): the
    shortest directed path from any agent i to i+1 then traverses exactly
    n-2 edges, which makes sequential hand-offs in ascending agent order as
    expensive as possible. Strongly connected for every n >= 3.
    """
    if n < 3:
        raise ValueError("worst-case cycle needs at least 3 agents")
    ins: list[set[int]] = [set() for _ in range(n)]
    for i in range(1, n):
        ins[i - 1].add(i)  # edge i -> i-1
    ins[n - 2].add(0)  # edge 0 -> n-2
    ins[n - 1].add(1)  # edge 1 -> n-1
    return MeshGraph(n, ins)


def shortest_hops(g: MeshGraph, src: int, dst: int) -> int | None:
    """Directed BFS hop count from src to dst; None when unreachable."""
    if src == dst:
        return 0
    dist = {src: 0}
    queue = deque([src])
    while queue:
        u = queue.popleft()
        for v in g.out_neighbors[u]:
            if v not in dist:
                dist[v] = dist[u] + 1
                if v == dst:
                    return dist[v]
                queue.append(v)
    return None


def is_strongly_connected(g: MeshGraph) -> bool:
    if g.n == 1:
        return True

    def reaches_all(neighbors) -> bool:
        seen = {0}
        queue = deque([0])
        while queue:
            u = queue.popleft()
            for v in neighbors[u]:
                if v not in seen:
                    seen.add(v)
                    queue.append(v)
        return len(seen) == g.n

    return reaches_all(g.out_neighbors) and reaches_all(g.in_neighbors)


def dfs_order(g: MeshGraph, start: int) -> InfoDag:
    """Depth-first preorder along out-edges, exploring neighbors in ascending id.

    Requires strong connectivity (so the traversal reaches everyone and any
    relayed hand-off has a directed path). Every agent conditions on all of
    its predecessors in the resulting order.
    """
    if not 0 <= start < g.n:
        raise ValueError("start must be a valid agent id")
    if not is_strongly_connected(g):
        raise ValueError("graph is not strongly connected")
    order: list[int] = []
    seen: set[int] = set()

    def visit(u: int) -> None:
        seen.add(u)
        order.append(u)
        for v in sorted(g.out_neighbors[u]):
            if v not in seen:
                visit(v)

    visit(start)
    return full_access_dag(order)


def graph_to_text(g: MeshGraph) -> str:
    """Edge-list form: first line n, then one 'src dst' directed edge per line."""
    lines = [str(g.n)]
    for dst in range(g.n):
        for src in sorted(g.in_neighbors[dst]):
            lines.append(f"{src} {dst}")
    return "\n".join(lines) + "\n"


def graph_from_text(text: str) -> MeshGraph:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise ValueError("graph text is empty")
    try:
        n = int(lines[0])
    except ValueError:
        raise ValueError(f"first line must be the agent count, got {lines[0]!r}") from None
    ins: list[set[int]] = [set() for _ in range(n)]
    for idx, ln in enumerate(lines[1:], start=2):
        parts = ln.split()
        if len(parts) != 2:
            raise ValueError(f"line {idx}: expected 'src dst', got {ln!r}")
        try:
            src, dst = int(parts[0]), int(parts[1])
        except ValueError:
            raise ValueError(f"line {idx}: edge endpoints must be integers, got {ln!r}") from None
        if not (0 <= src < n and 0 <= dst < n):
            raise ValueError(f"line {idx}: edge {src}->{dst} is out of range for n={n}")
        ins[dst].add(src)
    return MeshGraph(n, ins)


def load_graph(path) -> MeshGraph:
    from pathlib import Path

    return graph_from_text(Path(path).read_text())


def save_graph(g: MeshGraph, path) -> None:
    from pathlib import Path

    Path(path).write_text(graph_to_text(g))
