"""Ground set, coverage objectives, and structural measures of set functions.

The ground set is the disjoint union of per-agent action menus; a joint
selection assigns at most one element per agent. Objectives are normalized
(f of the empty set is 0), deterministic, and count their own evaluations so
coordination rules can be charged per call.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Iterable, NamedTuple, Sequence

Cell = tuple[int, int]

# tolerance for float-valued objectives in the exhaustive checks; coverage
# values are integer counts and never need it
_EPS = 1e-9


class GroundElement(NamedTuple):
    agent: int
    action: int


class Objective:
    """Normalized non-negative set function over GroundElements.

    Subclasses implement _value(frozenset) -> float, which must be
    deterministic and return 0.0 for the empty set. evaluate() increments
    eval_count by exactly 1 per call; that counter is the only mutable
    state, so concurrent workers should run on their own copies and merge
    tallies afterwards.
    """

    def __init__(self, action_counts: Sequence[int]):
        counts = tuple(int(c) for c in action_counts)
        if not counts or any(c < 1 for c in counts):
            raise ValueError("every agent needs at least one action")
        self.action_counts = counts
        self.eval_count = 0

    @property
    def n_agents(self) -> int:
        return len(self.action_counts)

    def actions(self, agent: int) -> list[GroundElement]:
        return [GroundElement(agent, a) for a in range(self.action_counts[agent])]

    def ground(self) -> list[GroundElement]:
        return [e for i in range(self.n_agents) for e in self.actions(i)]

    def evaluate(self, selection: Iterable[GroundElement]) -> float:
        self.eval_count += 1
        return self._value(frozenset(selection))

    def _value(self, selection: frozenset[GroundElement]) -> float:
        raise NotImplementedError


class CallableObjective(Objective):
    """Objective backed by an arbitrary function of the selection set.

    Used for analytic toys (modular, supermodular, log-det) in tests and
    negative controls. The callable must be normalized and deterministic.
    """

    def __init__(self, action_counts: Sequence[int], fn: Callable[[frozenset], float]):
        super().__init__(action_counts)
        self._fn = fn

    def _value(self, selection: frozenset[GroundElement]) -> float:
        return float(self._fn(selection))


class GridCoverageObjective(Objective):
    """Counts road cells covered by the union of the selection's footprints.

    road_mask rows use '#' for road and '.' for empty. footprints[i][a] is an
    iterable of (x, y) cells covered when agent i takes action a; cells off
    the road (or off the grid) contribute nothing. Values are exact integer
    counts returned as floats.
    """

    def __init__(
        self,
        road_mask: Sequence[str],
        footprints: Sequence[Sequence[Iterable[Cell]]],
    ):
        super().__init__([len(per_agent) for per_agent in footprints])
        rows = list(road_mask)
        if not rows or any(len(r) != len(rows[0]) for r in rows):
            raise ValueError("road mask must be rectangular and non-empty")
        bad = set("".join(rows)) - {"#", "."}
        if bad:
            raise ValueError(f"road mask may contain only '#' and '.', got {sorted(bad)!r}")
        self.width = len(rows[0])
        self.height = len(rows)
        self.road_mask = tuple(rows)
        road_bits = 0
        for y, row in enumerate(rows):
            for x, ch in enumerate(row):
                if ch == "#":
                    road_bits |= 1 << (y * self.width + x)
        self.road_cell_count = road_bits.bit_count()
        self._masks: dict[GroundElement, int] = {}
        self._cells: dict[GroundElement, frozenset[Cell]] = {}
        for i, per_agent in enumerate(footprints):
            for a, cells in enumerate(per_agent):
                cells = frozenset(cells)
                mask = 0
                for x, y in cells:
                    if 0 <= x < self.width and 0 <= y < self.height:
                        mask |= 1 << (y * self.width + x)
                e = GroundElement(i, a)
                self._masks[e] = mask & road_bits
                self._cells[e] = cells

    def footprint(self, element: GroundElement) -> frozenset[Cell]:
        """The raw footprint cells, including any off-road ones."""
        return self._cells[element]

    def covered_cells(self, selection: Iterable[GroundElement]) -> int:
        union = 0
        for e in selection:
            union |= self._masks[e]
        return union.bit_count()

    def _value(self, selection: frozenset[GroundElement]) -> float:
        return float(self.covered_cells(selection))


class DiskCoverageObjective(Objective):
    """Rasterized area (m^2) of the union of sensing disks, clipped to an arena.

    centers[i][a] is the disk center (meters) for agent i's action a; every
    disk has the same sensing_radius. A cell counts as covered when its center
    lies within the radius, so all area equalities hold only up to one
    boundary-cell layer per disk.
    """

    def __init__(
        self,
        centers: Sequence[Sequence[tuple[float, float]]],
        sensing_radius: float,
        arena: tuple[float, float, float, float],
        resolution: int = 10,
    ):
        super().__init__([len(per_agent) for per_agent in centers])
        if sensing_radius <= 0:
            raise ValueError("sensing_radius must be positive")
        if resolution < 1:
            raise ValueError("resolution must be at least 1 cell per meter")
        xmin, ymin, xmax, ymax = arena
        if not (xmax > xmin and ymax > ymin):
            raise ValueError("arena must have positive extent")
        self.sensing_radius = float(sensing_radius)
        self.arena = (float(xmin), float(ymin), float(xmax), float(ymax))
        self.resolution = int(resolution)
        self._nx = math.ceil((xmax - xmin) * resolution)
        self._ny = math.ceil((ymax - ymin) * resolution)
        self.cell_area = 1.0 / (resolution * resolution)
        self._masks: dict[GroundElement, int] = {}
        self.centers = tuple(tuple((float(x), float(y)) for x, y in per_agent) for per_agent in centers)
        for i, per_agent in enumerate(self.centers):
            for a, c in enumerate(per_agent):
                self._masks[GroundElement(i, a)] = self._disk_mask(c)

    def _disk_mask(self, center: tuple[float, float]) -> int:
        cx, cy = center
        xmin, ymin, _, _ = self.arena
        res = self.resolution
        r = self.sensing_radius
        r2 = r * r
        ix_lo = max(0, math.floor((cx - r - xmin) * res))
        ix_hi = min(self._nx - 1, math.ceil((cx + r - xmin) * res))
        iy_lo = max(0, math.floor((cy - r - ymin) * res))
        iy_hi = min(self._ny - 1, math.ceil((cy + r - ymin) * res))
        mask = 0
        for iy in range(iy_lo, iy_hi + 1):
            py = ymin + (iy + 0.5) / res
            dy2 = (py - cy) ** 2
            row_base = iy * self._nx
            for ix in range(ix_lo, ix_hi + 1):
                px = xmin + (ix + 0.5) / res
                if (px - cx) ** 2 + dy2 <= r2:
                    mask |= 1 << (row_base + ix)
        return mask

    def _value(self, selection: frozenset[GroundElement]) -> float:
        union = 0
        for e in selection:
            union |= self._masks[e]
        return union.bit_count() * self.cell_area


@dataclass(frozen=True)
class StructureReport:
    kappa: float
    c_total: float
    is_monotone: bool
    is_submodular: bool
    is_second_order_submodular: bool


def marginal_gain(
    obj: Objective,
    element: GroundElement,
    context: Iterable[GroundElement],
    context_value: float | None = None,
) -> float:
    """f(context + element) - f(context); 2 evaluations, or 1 with a cached context value."""
    ctx = frozenset(context)
    if element in ctx:
        raise ValueError(f"element {element} is already in the context")
    if context_value is None:
        context_value = obj.evaluate(ctx)
    return obj.evaluate(ctx | {element}) - context_value


def curvature(obj: Objective) -> float:
    """Worst-case shrinkage of an element's gain in the largest context.

    kappa = 1 - min over elements a of [f(V) - f(V \\ {a})] / f({a}).

    Valid as the curvature only for monotone submodular f, where the full
    ground set minimizes the marginal gain; exhaustive_curvature is the
    general (exponential) form. Linear in |ground| evaluation count.
    """
    elements = obj.ground()
    f_full = obj.evaluate(elements)
    worst = math.inf
    full = frozenset(elements)
    for a in elements:
        f_single = obj.evaluate([a])
        if f_single == 0:
            raise ValueError(f"curvature undefined: f({a}) = 0")
        ratio = (f_full - obj.evaluate(full - {a})) / f_single
        worst = min(worst, ratio)
    return _clamp_unit(1.0 - worst, "curvature")


def exhaustive_curvature(obj: Objective) -> float:
    """Brute-force curvature: 1 - min over a and all contexts A of f(a|A)/f({a})."""
    elements = obj.ground()
    _size_guard(len(elements), 16)
    table = subset_value_table(obj, elements)
    worst = math.inf
    for j, a in enumerate(elements):
        f_single = table[1 << j]
        if f_single == 0:
            raise ValueError(f"curvature undefined: f({a}) = 0")
        bit = 1 << j
        for mask in range(1 << len(elements)):
            if mask & bit:
                continue
            worst = min(worst, (table[mask | bit] - table[mask]) / f_single)
    return _clamp_unit(1.0 - worst, "curvature")


def total_curvature(obj: Objective) -> float:
    """Curvature generalization for monotone but possibly non-submodular f.

    c = 1 - min over v of [min_A f(v|A) / max_B f(v|B)] with A, B over all
    subsets of ground \\ {v}. Elements whose denominator is zero for every B
    are skipped; if all are skipped the measure is undefined.
    """
    elements = obj.ground()
    _size_guard(len(elements), 16)
    table = subset_value_table(obj, elements)
    worst = math.inf
    skipped = 0
    for j in range(len(elements)):
        bit = 1 << j
        lo = math.inf
        hi = -math.inf
        for mask in range(1 << len(elements)):
            if mask & bit:
                continue
            gain = table[mask | bit] - table[mask]
            lo = min(lo, gain)
            hi = max(hi, gain)
        if hi == 0:
            skipped += 1
            continue
        worst = min(worst, lo / hi)
    if skipped == len(elements):
        raise ValueError("total curvature undefined: every element has zero gain everywhere")
    return _clamp_unit(1.0 - worst, "total curvature")


def subset_value_table(obj: Objective, elements: Sequence[GroundElement]) -> list[float]:
    """f over every subset of elements, indexed by bitmask (bit j = elements[j]).

    Costs 2^len(elements) evaluate calls; the oracle behind the exhaustive
    checks and the measures above.
    """
    m = len(elements)
    table = [0.0] * (1 << m)
    for mask in range(1 << m):
        table[mask] = obj.evaluate(
            [elements[j] for j in range(m) if mask & (1 << j)]
        )
    return table


def validate_structure(obj: Objective) -> StructureReport:
    """Exhaustively checks monotonicity, submodularity, and 2nd-order submodularity.

    All three checks use single-element-extension forms, which are equivalent
    to the fully quantified definitions by telescoping:
      monotone:    f(A + x) >= f(A)
      submodular:  f(s | A) >= f(s | A + y)
      2nd-order:   f(s | A) - f(s | A + x) >= f(s | A + y) - f(s | A + x + y)
    Also computes exhaustive curvature and total curvature; both are NaN when
    the function is not monotone (they presume non-negative gains). Zero-value
    singletons are rejected (curvature is undefined there).
    """
    elements = obj.ground()
    m = len(elements)
    _size_guard(m, 16)
    table = subset_value_table(obj, elements)
    for j, a in enumerate(elements):
        if table[1 << j] == 0:
            raise ValueError(f"structure validation rejected: f({a}) = 0")

    full = 1 << m
    bits = [1 << j for j in range(m)]
    monotone = True
    submodular = True
    second_order = True
    for mask in range(full):
        free = [j for j in range(m) if not mask & bits[j]]
        base = table[mask]
        for sj in free:
            s = bits[sj]
            gain_s = table[mask | s] - base
            if gain_s < -_EPS:
                monotone = False
            for yj in free:
                if yj == sj:
                    continue
                y = bits[yj]
                gain_s_y = table[mask | y | s] - table[mask | y]
                if gain_s - gain_s_y < -_EPS:
                    submodular = False
                # x < y suffices: the 2nd-order inequality is symmetric in x, y
                for xj in free:
                    if xj >= yj or xj == sj:
                        continue
                    x = bits[xj]
                    lhs = gain_s - (table[mask | x | s] - table[mask | x])
                    rhs = gain_s_y - (table[mask | x | y | s] - table[mask | x | y])
                    if lhs - rhs < -_EPS:
                        second_order = False

    if monotone:
        kappa = _table_curvature(table, m)
        c_total = _table_total_curvature(table, m)
    else:
        # both measures presume non-negative marginal gains
        kappa = c_total = math.nan
    return StructureReport(
        kappa=kappa,
        c_total=c_total,
        is_monotone=monotone,
        is_submodular=submodular,
        is_second_order_submodular=second_order,
    )


def _table_curvature(table: list[float], m: int) -> float:
    worst = math.inf
    for j in range(m):
        bit = 1 << j
        f_single = table[bit]
        for mask in range(1 << m):
            if mask & bit:
                continue
            worst = min(worst, (table[mask | bit] - table[mask]) / f_single)
    return _clamp_unit(1.0 - worst, "curvature")


def _table_total_curvature(table: list[float], m: int) -> float:
    worst = math.inf
    skipped = 0
    for j in range(m):
        bit = 1 << j
        lo = math.inf
        hi = -math.inf
        for mask in range(1 << m):
            if mask & bit:
                continue
            gain = table[mask | bit] - table[mask]
            lo = min(lo, gain)
            hi = max(hi, gain)
        if hi == 0:
            skipped += 1
            continue
        worst = min(worst, lo / hi)
    if skipped == m:
        raise ValueError("total curvature undefined: every element has zero gain everywhere")
    return _clamp_unit(1.0 - worst, "total curvature")


def coin(
    obj: Objective,
    agent: int,
    actions: Sequence[GroundElement],
    neighborhood: Iterable[int],
) -> float:
    """How much of an agent's action value its non-neighbors already hold.

    coin = f(a_i) - f(a_i | {a_j : j not in neighborhood, j != i}), evaluated
    at the given joint actions. 0 when the neighborhood covers everyone else;
    grows as the neighborhood shrinks (non-neighbors can pre-empt more of
    a_i's value). Always within [0, f(a_i)] for monotone submodular f.
    """
    nbrs = set(neighborhood)
    if agent in nbrs:
        raise ValueError("agent may not appear in its own neighborhood")
    n = obj.n_agents
    if len(actions) != n:
        raise ValueError("need one selected action per agent")
    if not nbrs <= set(range(n)):
        raise ValueError("neighborhood contains unknown agent ids")
    a_i = actions[agent]
    others = frozenset(actions[j] for j in range(n) if j != agent and j not in nbrs)
    f_single = obj.evaluate([a_i])
    f_ctx = obj.evaluate(others)
    return f_single - (obj.evaluate(others | {a_i}) - f_ctx)


def coin_ring_bound(r_s: float, r_i: float) -> float:
    """Closed-form coin bound for disk sensing with non-neighbors at distance >= r_i.

    max(0, pi * [r_s^2 - (r_i - r_s)^2]): the annulus of agent i's disk that
    disks centered at least r_i away can reach. Meaningful for r_i >= r_s;
    zero from r_i = 2 r_s outward.
    """
    if r_s <= 0:
        raise ValueError("sensing radius must be positive")
    if r_i < 0:
        raise ValueError("separation distance may not be negative")
    return max(0.0, math.pi * (r_s * r_s - (r_i - r_s) ** 2))


def parse_road_mask(text: str) -> list[str]:
    """Road mask from plain text: '#' road, '.' empty, one row per line."""
    rows = [line for line in text.splitlines() if line.strip()]
    if not rows:
        raise ValueError("road mask text is empty")
    width = len(rows[0])
    for idx, row in enumerate(rows):
        if len(row) != width:
            raise ValueError(f"road mask row {idx} has length {len(row)}, expected {width}")
        bad = set(row) - {"#", "."}
        if bad:
            raise ValueError(f"road mask row {idx} contains invalid characters {sorted(bad)!r}")
    return rows


def random_road_mask(rng, width: int, height: int, density: float, corridor_width: int = 1) -> list[str]:
    """Random corridor map: full-span road bands carved until density is reached.

    Deterministic in rng. The achieved density is the first value at or above
    the target (whole corridors are carved at a time).
    """
    if width < 1 or height < 1:
        raise ValueError("mask dimensions must be positive")
    if not 0 < density <= 1:
        raise ValueError("density must be in (0, 1]")
    if corridor_width < 1:
        raise ValueError("corridor width must be positive")
    road = [[False] * width for _ in range(height)]
    total = width * height
    covered = 0
    carves = 0
    while covered < density * total:
        carves += 1
        if carves > 20 * (width + height):
            # random carving stalled near full density; fill rows top-down
            for y in range(height):
                for x in range(width):
                    if not road[y][x]:
                        road[y][x] = True
                        covered += 1
                if covered >= density * total:
                    break
            break
        horizontal = rng.random() < 0.5
        if horizontal:
            y0 = rng.randrange(height)
            for y in range(y0, min(y0 + corridor_width, height)):
                for x in range(width):
                    if not road[y][x]:
                        road[y][x] = True
                        covered += 1
        else:
            x0 = rng.randrange(width)
            for x in range(x0, min(x0 + corridor_width, width)):
                for y in range(height):
                    if not road[y][x]:
                        road[y][x] = True
                        covered += 1
    return ["".join("#" if c else "." for c in row) for row in road]


def rect_footprint(cx: int, cy: int, fov_w: int, fov_h: int, width: int, height: int) -> frozenset[Cell]:
    """Cells of a fov_w x fov_h rectangle centered at (cx, cy), clipped to the grid."""
    x0 = cx - fov_w // 2
    y0 = cy - fov_h // 2
    return frozenset(
        (x, y)
        for y in range(max(0, y0), min(height, y0 + fov_h))
        for x in range(max(0, x0), min(width, x0 + fov_w))
    )


def _size_guard(size: int, limit: int) -> None:
    if size > limit:
        raise ValueError(f"ground set of {size} elements exceeds the exhaustive-check limit of {limit}")


def _clamp_unit(value: float, label: str) -> float:
    if value < -1e-6 or value > 1 + 1e-6:
        raise ValueError(f"{label} {value} falls outside [0, 1]; objective is not monotone-normalized")
    return min(1.0, max(0.0, value))
