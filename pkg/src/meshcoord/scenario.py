"""Multi-step grid-world coverage missions with Monte Carlo aggregation.

Each step the team self-configures its communication graph from current
positions, coordinates one joint action under the configured rule, moves, and
banks the newly seen road cells into a shared covered set. The per-step
objective counts only road cells outside that set, so every step optimizes a
fresh normalized monotone coverage function.

Trials are deterministic in (seed, trial) and the world stream is independent
of the algorithm and k, so runs of different variations with the same trial
index share road masks and initial positions — the pairing the Monte Carlo
comparisons rely on.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field, replace
from pathlib import Path
from statistics import fmean, pstdev
from typing import Iterator, Sequence

from meshcoord.coordination import (
    CoordinationOutcome,
    run_dfs_sg,
    run_dsm,
    run_rag,
    run_random_baseline,
    run_sg,
)
from meshcoord.objective import GridCoverageObjective, parse_road_mask, random_road_mask, rect_footprint
from meshcoord.timing import DelayModel, rag_decision_time, sg_decision_time, tau_c_from_rate
from meshcoord.topology import InfoDag, knn_graph, strongly_connected_line_plus

ALGORITHMS = ("rag", "sg", "dfs-sg", "dsm", "random")

# the 8 cardinal/diagonal unit displacements; every agent's action menu is
# these at the configured magnitude, so |V_i| = 8 throughout a mission
MOVES = (
    (1, 0), (1, 1), (0, 1), (-1, 1), (-1, 0), (-1, -1), (0, -1), (1, -1),
)


@dataclass(frozen=True)
class MissionConfig:
    n_agents: int = 6
    world_width: int = 24
    world_height: int = 24
    road_density: float = 0.45
    corridor_width: int = 2
    road_mask_path: str | None = None
    fov_width: int = 3
    fov_height: int = 3
    move_magnitude: int = 2
    steps: int = 8
    comm_range: float = 10.0
    k: int = 2
    algorithm: str = "rag"
    tau_f: float = 0.001
    tau_hash: float = 0.000256
    message_kib: float = 25.0
    data_rate_mbps: float = 0.25
    trials: int = 5
    seed: int = 0
    spawn_width: int | None = None
    spawn_height: int | None = None

    def validate(self) -> None:
        """Raises ValueError naming the offending field."""
        if self.n_agents < 1:
            raise ValueError("n_agents must be at least 1")
        if self.world_width < 1 or self.world_height < 1:
            raise ValueError("world_width and world_height must be positive")
        if self.fov_width < 1 or self.fov_height < 1:
            raise ValueError("fov_width and fov_height must be positive")
        if self.road_mask_path is None:
            if self.fov_width > self.world_width or self.fov_height > self.world_height:
                raise ValueError("fov_width/fov_height must fit inside the world")
            if not 0 < self.road_density <= 1:
                raise ValueError("road_density must be in (0, 1]")
            if self.corridor_width < 1:
                raise ValueError("corridor_width must be positive")
        if self.move_magnitude < 1:
            raise ValueError("move_magnitude must be positive")
        if self.steps < 0:
            raise ValueError("steps may not be negative")
        if self.comm_range <= 0:
            raise ValueError("comm_range must be positive")
        if self.k < 0:
            raise ValueError("k may not be negative")
        if self.algorithm not in ALGORITHMS:
            raise ValueError(f"algorithm must be one of {ALGORITHMS}")
        if self.tau_f < 0 or self.tau_hash < 0:
            raise ValueError("tau_f and tau_hash may not be negative")
        if self.message_kib <= 0:
            raise ValueError("message_kib must be positive")
        if self.data_rate_mbps <= 0:
            raise ValueError("data_rate_mbps must be positive")
        if self.trials < 1:
            raise ValueError("trials must be at least 1")
        for name in ("spawn_width", "spawn_height"):
            v = getattr(self, name)
            if v is not None and v < 1:
                raise ValueError(f"{name} must be positive when set")

    def delay_model(self) -> DelayModel:
        return DelayModel(
            tau_f=self.tau_f,
            tau_c=tau_c_from_rate(self.message_kib * 1024.0, self.data_rate_mbps * 1e6),
            tau_hash=self.tau_hash,
        )


@dataclass(frozen=True)
class StepRecord:
    step: int
    covered_cells: int
    step_sim_time_s: float
    gain_rounds: int
    action_rounds: int
    max_evals: int


@dataclass(frozen=True)
class MissionTrace:
    algorithm: str
    k: int
    road_cell_count: int
    initial_positions: tuple[tuple[int, int], ...]
    records: tuple[StepRecord, ...] = field(default=())

    @property
    def peak_coverage(self) -> int:
        """Cumulative coverage is non-decreasing, so the last record is the peak."""
        return self.records[-1].covered_cells if self.records else 0

    @property
    def mean_step_time(self) -> float:
        if not self.records:
            return 0.0
        return fmean(r.step_sim_time_s for r in self.records)


@dataclass(frozen=True)
class TrialRun:
    algorithm: str
    k: int
    trial: int
    trace: MissionTrace


@dataclass(frozen=True)
class VariationSummary:
    algorithm: str
    k: int
    trials: int
    mean_peak_coverage: float
    std_peak_coverage: float
    mean_step_time_s: float
    std_step_time_s: float
    mean_coverage_by_step: tuple[float, ...]


def _load_world(cfg: MissionConfig, rng: random.Random) -> list[str]:
    if cfg.road_mask_path is not None:
        return parse_road_mask(Path(cfg.road_mask_path).read_text())
    return random_road_mask(
        rng, cfg.world_width, cfg.world_height, cfg.road_density, cfg.corridor_width
    )


def _spawn(cfg: MissionConfig, rng: random.Random, width: int, height: int) -> list[tuple[int, int]]:
    bw = min(width, cfg.spawn_width or width)
    bh = min(height, cfg.spawn_height or height)
    x0 = (width - bw) // 2
    y0 = (height - bh) // 2
    return [(x0 + rng.randrange(bw), y0 + rng.randrange(bh)) for _ in range(cfg.n_agents)]


def _destination(
    pos: tuple[int, int], move: int, magnitude: int, width: int, height: int
) -> tuple[int, int]:
    dx, dy = MOVES[move]
    x = min(width - 1, max(0, pos[0] + dx * magnitude))
    y = min(height - 1, max(0, pos[1] + dy * magnitude))
    return x, y


def run_mission(cfg: MissionConfig, trial: int = 0) -> MissionTrace:
    """One deterministic mission; trial selects the paired random streams.

    The world stream (mask + spawn) is keyed only by (seed, trial), the
    algorithm stream by (seed, trial, algorithm, k): two variations replayed
    at equal trial indices start from identical worlds.
    """
    cfg.validate()
    rng_world = random.Random(f"{cfg.seed}:{trial}:world")
    rng_alg = random.Random(f"{cfg.seed}:{trial}:alg:{cfg.algorithm}:{cfg.k}")

    mask = _load_world(cfg, rng_world)
    height = len(mask)
    width = len(mask[0])
    if cfg.fov_width > width or cfg.fov_height > height:
        raise ValueError("fov_width/fov_height must fit inside the world")
    road_cells = frozenset(
        (x, y) for y, row in enumerate(mask) for x, ch in enumerate(row) if ch == "#"
    )
    positions = _spawn(cfg, rng_world, width, height)
    initial = tuple(positions)

    n = cfg.n_agents
    dm = cfg.delay_model()
    counts = [len(MOVES)] * n

    # per-trial randomness of the sequential rules: one decision order for
    # sg/dsm, one relay mesh and start for dfs-sg
    order = list(range(n))
    rng_alg.shuffle(order)
    dfs_graph = None
    dfs_start = 0
    if cfg.algorithm == "dfs-sg":
        if n == 1:
            raise ValueError("dfs-sg needs at least 2 agents")
        max_extra = n * (n - 1) // 2 - (n - 1)
        dfs_graph = strongly_connected_line_plus(
            n, min(2 * n, max_extra), seed=rng_alg.randrange(2**32)
        )
        dfs_start = rng_alg.randrange(n)

    covered: set[tuple[int, int]] = set()
    records: list[StepRecord] = []
    for step in range(1, cfg.steps + 1):
        rows = [
            "".join(
                "#" if (x, y) in road_cells and (x, y) not in covered else "."
                for x in range(width)
            )
            for y in range(height)
        ]
        dests = [
            [
                _destination(positions[i], m, cfg.move_magnitude, width, height)
                for m in range(len(MOVES))
            ]
            for i in range(n)
        ]
        footprints = [
            [
                rect_footprint(dx, dy, cfg.fov_width, cfg.fov_height, width, height)
                for dx, dy in dests[i]
            ]
            for i in range(n)
        ]
        obj = GridCoverageObjective(rows, footprints)

        pts = [(float(x), float(y)) for x, y in positions]
        if cfg.algorithm == "rag":
            g = knn_graph(pts, cfg.k, cfg.comm_range)
            outcome = run_rag(obj, g)
            sim_time = rag_decision_time(outcome, dm, counts)
        elif cfg.algorithm == "sg":
            outcome = run_sg(obj, order)
            sim_time = sg_decision_time(outcome, dm, counts)
        elif cfg.algorithm == "dfs-sg":
            assert dfs_graph is not None
            outcome = run_dfs_sg(obj, dfs_graph, dfs_start)
            sim_time = sg_decision_time(outcome, dm, counts)
        elif cfg.algorithm == "dsm":
            g = knn_graph(pts, cfg.k, cfg.comm_range)
            seen: set[int] = set()
            access = []
            for agent in order:
                access.append(frozenset(seen & g.in_neighbors[agent]))
                seen.add(agent)
            outcome = run_dsm(obj, InfoDag(order=tuple(order), access=tuple(access)))
            # value-level rule: compute only, no relay model
            sim_time = dm.tau_f * sum(counts)
        else:
            outcome = run_random_baseline(obj, rng_alg)
            sim_time = 0.0

        for i, e in enumerate(outcome.actions):
            dest = dests[i][e.action]
            positions[i] = dest
            covered.update(
                c
                for c in rect_footprint(
                    dest[0], dest[1], cfg.fov_width, cfg.fov_height, width, height
                )
                if c in road_cells
            )

        records.append(
            StepRecord(
                step=step,
                covered_cells=len(covered),
                step_sim_time_s=sim_time,
                gain_rounds=outcome.gain_rounds,
                action_rounds=outcome.action_rounds,
                max_evals=max(outcome.eval_counts),
            )
        )

    return MissionTrace(
        algorithm=cfg.algorithm,
        k=cfg.k,
        road_cell_count=len(road_cells),
        initial_positions=initial,
        records=tuple(records),
    )


def _run_task(args: tuple[MissionConfig, str, int, int]) -> TrialRun:
    cfg, algorithm, k, trial = args
    trace = run_mission(replace(cfg, algorithm=algorithm, k=k), trial=trial)
    return TrialRun(algorithm=algorithm, k=k, trial=trial, trace=trace)


def monte_carlo(
    cfg: MissionConfig,
    variations: Sequence[tuple[str, int]],
    workers: int = 1,
) -> tuple[list[TrialRun], list[VariationSummary]]:
    """Paired trials of every (algorithm, k) variation, serial or pooled.

    Results are merged in (variation, trial) order however many workers run,
    so outputs are deterministic either way.
    """
    cfg.validate()
    if not variations:
        raise ValueError("need at least one (algorithm, k) variation")
    for algorithm, k in variations:
        if algorithm not in ALGORITHMS:
            raise ValueError(f"algorithm must be one of {ALGORITHMS}")
        if k < 0:
            raise ValueError("k may not be negative")
    tasks = [
        (cfg, algorithm, k, trial)
        for algorithm, k in variations
        for trial in range(cfg.trials)
    ]
    if workers > 1:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(max_workers=workers) as pool:
            runs = list(pool.map(_run_task, tasks))
    else:
        runs = [_run_task(t) for t in tasks]

    summaries = []
    for idx, (algorithm, k) in enumerate(variations):
        batch = runs[idx * cfg.trials : (idx + 1) * cfg.trials]
        peaks = [r.trace.peak_coverage for r in batch]
        times = [r.trace.mean_step_time for r in batch]
        by_step = tuple(
            fmean(r.trace.records[s].covered_cells for r in batch)
            for s in range(cfg.steps)
        )
        summaries.append(
            VariationSummary(
                algorithm=algorithm,
                k=k,
                trials=cfg.trials,
                mean_peak_coverage=fmean(peaks),
                std_peak_coverage=pstdev(peaks),
                mean_step_time_s=fmean(times),
                std_step_time_s=pstdev(times),
                mean_coverage_by_step=by_step,
            )
        )
    return runs, summaries


TRACE_HEADER = (
    "trial",
    "algorithm",
    "k",
    "step",
    "covered_cells",
    "step_sim_time_s",
    "gain_rounds",
    "action_rounds",
    "max_evals",
)


def trace_rows(runs: Sequence[TrialRun]) -> Iterator[list]:
    """Flat CSV rows (without header) for a batch of trial runs."""
    for run in runs:
        for rec in run.trace.records:
            yield [
                run.trial,
                run.algorithm,
                run.k,
                rec.step,
                rec.covered_cells,
                rec.step_sim_time_s,
                rec.gain_rounds,
                rec.action_rounds,
                rec.max_evals,
            ]
