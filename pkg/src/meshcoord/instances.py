"""Seeded random and reference instances for certification runs and tests.

Everything here is deterministic in the supplied random.Random. Coverage
instances guarantee a nonzero value for every singleton action (the structural
measures are undefined otherwise) by carving road under any footprint that
would miss it.
"""

from __future__ import annotations

import random
from typing import Sequence

from meshcoord.objective import (
    CallableObjective,
    GridCoverageObjective,
    GroundElement,
    rect_footprint,
)
from meshcoord.topology import (
    MeshGraph,
    complete_graph,
    edgeless_graph,
    knn_graph,
    line_graph,
    star_graph,
)

MOVES = (
    (1, 0), (1, 1), (0, 1), (-1, 1), (-1, 0), (-1, -1), (0, -1), (1, -1),
)


def random_coverage_instance(
    rng: random.Random,
    max_agents: int = 6,
    max_actions: int = 4,
    min_agents: int = 2,
) -> tuple[GridCoverageObjective, MeshGraph]:
    """A small grid-coverage objective plus a random communication graph.

    Agents sit at random cells of a random-density road map; each action is a
    3x3 field of view displaced by a random move. Graphs are drawn from the
    named generators, k-nearest-neighbor configurations, and sparse random
    digraphs, so connected, disconnected, directed, and empty topologies all
    occur.
    """
    n = rng.randint(min_agents, max_agents)
    width = rng.randint(5, 9)
    height = rng.randint(5, 9)
    density = rng.uniform(0.3, 0.9)
    road = [["#" if rng.random() < density else "." for _ in range(width)] for _ in range(height)]

    positions = [(rng.randrange(width), rng.randrange(height)) for _ in range(n)]
    footprints: list[list[frozenset[tuple[int, int]]]] = []
    for x, y in positions:
        menu = []
        for _ in range(rng.randint(1, max_actions)):
            dx, dy = rng.choice(MOVES + ((0, 0),))
            step = rng.randint(1, 2)
            cx = min(width - 1, max(0, x + dx * step))
            cy = min(height - 1, max(0, y + dy * step))
            cells = rect_footprint(cx, cy, 3, 3, width, height)
            if not any(road[fy][fx] == "#" for fx, fy in cells):
                road[cy][cx] = "#"  # keep every singleton value nonzero
            menu.append(cells)
        footprints.append(menu)

    mask = ["".join(row) for row in road]
    obj = GridCoverageObjective(mask, footprints)
    return obj, _random_graph(rng, n, positions)


def _random_graph(rng: random.Random, n: int, positions: Sequence[tuple[int, int]]) -> MeshGraph:
    kind = rng.randrange(6)
    if kind == 0:
        return edgeless_graph(n)
    if kind == 1:
        return complete_graph(n)
    if kind == 2:
        return line_graph(n)
    if kind == 3:
        return star_graph(n, rng.randrange(n))
    if kind == 4:
        pts = [(float(x), float(y)) for x, y in positions]
        return knn_graph(pts, rng.randint(1, n - 1), comm_range=rng.uniform(2.0, 12.0))
    ins = [
        [j for j in range(n) if j != i and rng.random() < 0.4]
        for i in range(n)
    ]
    return MeshGraph(n, ins)


def _nested_menus(block_start: int, size: int, n_actions: int, row_width: int) -> list[frozenset]:
    """Action menus over one row-block: the full block, then shrinking prefixes.

    Within-agent footprints nest (so the argmax is unique) while staying
    inside the agent's own block, which keeps cross-agent footprints disjoint.
    """
    menu = []
    for j in range(n_actions):
        length = max(1, size - j)
        menu.append(frozenset((block_start + c, 0) for c in range(length)))
    return menu


def reference_line_instance(
    n_actions: int = 4,
) -> tuple[GridCoverageObjective, MeshGraph, tuple[int, ...]]:
    """Five agents on a line with singleton values (5, 10, 4, 9, 3).

    Agents 1 and 3 (0-indexed) hold the local maxima, so the first round
    commits exactly {1, 3} and the second commits {0, 2, 4}: two compute
    phases, one scalar round, one action round. Footprints are disjoint
    across agents, so every value is also the true marginal gain throughout.
    Returns (objective, graph, singleton_values).
    """
    values = (5, 10, 4, 9, 3)
    return _reference_instance(values, line_graph(5), n_actions)


def reference_star_instance(
    n_actions: int = 4,
) -> tuple[GridCoverageObjective, MeshGraph, tuple[int, ...]]:
    """Five agents on a star centered at agent 1, whose value dominates.

    Round one commits the center alone; round two commits every spoke.
    Returns (objective, graph, singleton_values).
    """
    values = (5, 10, 4, 3, 2)
    return _reference_instance(values, star_graph(5, center=1), n_actions)


def _reference_instance(
    values: Sequence[int], g: MeshGraph, n_actions: int
) -> tuple[GridCoverageObjective, MeshGraph, tuple[int, ...]]:
    width = sum(values)
    mask = ["#" * width]
    footprints = []
    start = 0
    for v in values:
        footprints.append(_nested_menus(start, v, n_actions, width))
        start += v
    obj = GridCoverageObjective(mask, footprints)
    return obj, g, tuple(values)


def modular_objective(action_counts: Sequence[int]) -> CallableObjective:
    """f(A) = |A|: the zero-curvature regime."""
    return CallableObjective(action_counts, lambda sel: float(len(sel)))


def supermodular_toy(n_agents: int = 3) -> CallableObjective:
    """f(A) = |A|^2: monotone, strictly supermodular; one action per agent."""
    return CallableObjective([1] * n_agents, lambda sel: float(len(sel) ** 2))


def logdet_toy() -> CallableObjective:
    """log-det of I + sum of rank-one terms over three correlated sensors.

    A classic information-gain style objective: monotone and submodular but
    not a coverage function, useful for exercising the validators on floats.
    """
    vectors = {
        GroundElement(0, 0): (1.0, 0.2, 0.0),
        GroundElement(1, 0): (0.2, 1.0, 0.3),
        GroundElement(2, 0): (0.0, 0.3, 1.0),
    }

    def logdet(sel: frozenset) -> float:
        import math

        m = [[1.0 if r == c else 0.0 for c in range(3)] for r in range(3)]
        for e in sel:
            v = vectors[e]
            for r in range(3):
                for c in range(3):
                    m[r][c] += v[r] * v[c]
        det = (
            m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
            - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
        )
        return math.log(det)

    return CallableObjective([1, 1, 1], logdet)


def scaling_instance(
    rng: random.Random,
    n_agents: int,
    n_actions: int = 8,
    fov: int = 3,
) -> tuple[GridCoverageObjective, list[tuple[float, float]]]:
    """Constant-density deployment for decision-time scaling runs.

    The arena grows with the team so neighborhood structure stays local;
    actions are the 8 unit moves at a random magnitude with a square FOV.
    Returns (objective, positions) so callers can self-configure a graph.
    """
    side = max(8, round((n_agents * 36) ** 0.5))
    density = 0.6
    road = [["#" if rng.random() < density else "." for _ in range(side)] for _ in range(side)]
    positions = [(rng.randrange(side), rng.randrange(side)) for _ in range(n_agents)]
    footprints = []
    for x, y in positions:
        menu = []
        for m in range(n_actions):
            dx, dy = MOVES[m % len(MOVES)]
            step = rng.randint(1, 3)
            cx = min(side - 1, max(0, x + dx * step))
            cy = min(side - 1, max(0, y + dy * step))
            cells = rect_footprint(cx, cy, fov, fov, side, side)
            if not any(road[fy][fx] == "#" for fx, fy in cells):
                road[cy][cx] = "#"
            menu.append(cells)
        footprints.append(menu)
    mask = ["".join(row) for row in road]
    obj = GridCoverageObjective(mask, footprints)
    return obj, [(float(x), float(y)) for x, y in positions]
