"""Decision rules: resource-aware distributed greedy, sequential greedy and its
DAG/DFS variants, a brute-force optimum, and a random baseline.

All rules are deterministic given their inputs (and seed, where one exists)
and return a fully instrumented CoordinationOutcome. Evaluation counts follow
each rule's documented cost model exactly; the timing module converts them,
together with the round structure, into simulated decision time.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import product
from typing import Sequence

from meshcoord.objective import GroundElement, Objective
from meshcoord.topology import InfoDag, MeshGraph, dfs_order, shortest_hops

BRUTE_FORCE_LIMIT = 10_000_000

TIE_BREAKS = ("max-gain-lowest-id", "min-gain-highest-id")


@dataclass(frozen=True)
class IterationEvent:
    """One synchronous round of the distributed rule."""

    iteration: int
    recomputed: frozenset[int]
    gains_exchanged: bool
    selectors: frozenset[int]
    broadcast_occurred: bool


@dataclass(frozen=True)
class CoordinationOutcome:
    """Joint selection plus the instrumentation the timing and bound layers need.

    selection_order[i] is the iteration (1-based) in which agent i committed;
    for sequential rules it is the agent's position in the decision order.
    committed_in_neighbors[i] is the set of agents whose actions agent i had
    folded into its context when it committed (None for rules that condition
    on nothing, like the random baseline). relay_action_transmissions counts
    actions-carried x hops over all hand-off messages of sequential rules.
    """

    algorithm: str
    actions: tuple[GroundElement, ...]
    value: float
    selection_order: tuple[int, ...]
    events: tuple[IterationEvent, ...]
    eval_counts: tuple[int, ...]
    gain_rounds: int
    action_rounds: int
    relay_action_transmissions: int
    committed_in_neighbors: tuple[frozenset[int], ...] | None


def _resolve_actions(
    obj: Objective, per_agent_actions: Sequence[Sequence[GroundElement]] | None
) -> list[list[GroundElement]]:
    if per_agent_actions is None:
        return [obj.actions(i) for i in range(obj.n_agents)]
    menus = [list(m) for m in per_agent_actions]
    if len(menus) != obj.n_agents:
        raise ValueError("need one action menu per agent")
    for i, menu in enumerate(menus):
        if not menu:
            raise ValueError(f"agent {i} has an empty action menu")
        for e in menu:
            if e.agent != i:
                raise ValueError(f"menu for agent {i} contains {e}")
    return menus


def run_rag(
    obj: Objective,
    g: MeshGraph,
    per_agent_actions: Sequence[Sequence[GroundElement]] | None = None,
    tie_break: str = "max-gain-lowest-id",
    eta: float = 1.0,
    rng=None,
) -> CoordinationOutcome:
    """Synchronized-round distributed greedy with local winner commits.

    Per iteration every undecided agent whose context changed (or that has
    not computed yet) re-runs its local greedy over its menu, scoring each
    action by the augmented-context value f(A_i + a). Comparing these scores
    is order-equivalent to comparing marginal gains within any shared context
    and needs no separate evaluation of f(A_i), so a recomputation costs
    exactly |V_i| evaluations. Undecided agents with undecided in-neighbors
    then exchange scores (one scalar round); an agent commits iff it is the
    strict winner over itself and those neighbors under tie_break
    ("max-gain-lowest-id" by default; "min-gain-highest-id" inverts both
    comparisons and exists as a corruption hook for verification). Committers
    broadcast their action to out-neighbors (one action round when any
    receiver is still undecided), and receivers fold the news into their
    contexts for the next iteration.

    eta < 1 switches the local step to approximate greedy: the agent picks
    uniformly (via rng) among actions whose true marginal gain is at least
    eta times the best one. True gains require f(A_i), so this mode charges
    one extra evaluation per recomputation with a non-empty context; the
    default mode's per-agent eval bound does not apply to it.
    """
    if tie_break not in TIE_BREAKS:
        raise ValueError(f"unknown tie_break {tie_break!r}; expected one of {TIE_BREAKS}")
    if not 0 < eta <= 1:
        raise ValueError("eta must be in (0, 1]")
    if eta < 1 and rng is None:
        raise ValueError("approximate-greedy mode needs an rng")
    menus = _resolve_actions(obj, per_agent_actions)
    n = obj.n_agents
    if g.n != n:
        raise ValueError("graph and objective disagree on the number of agents")

    undecided = set(range(n))
    context: list[dict[int, GroundElement]] = [{} for _ in range(n)]
    dirty = [True] * n
    score: list[float] = [0.0] * n
    choice: list[GroundElement | None] = [None] * n
    committed_at = [0] * n
    committed_nbrs: list[frozenset[int]] = [frozenset()] * n
    final_action: list[GroundElement | None] = [None] * n
    eval_counts = [0] * n
    events: list[IterationEvent] = []
    invert = tie_break == "min-gain-highest-id"

    iteration = 0
    while undecided:
        iteration += 1
        if iteration > n:
            raise RuntimeError("coordination failed to make progress")  # unreachable by design

        recomputed = frozenset(i for i in undecided if dirty[i])
        for i in recomputed:
            ctx = frozenset(context[i].values())
            values = [(obj.evaluate(ctx | {a}), a) for a in menus[i]]
            eval_counts[i] += len(menus[i])
            best_value = max(v for v, _ in values)
            if eta < 1:
                ctx_value = obj.evaluate(ctx) if ctx else 0.0
                if ctx:
                    eval_counts[i] += 1
                best_gain = best_value - ctx_value
                eligible = [
                    (v, a) for v, a in values if v - ctx_value >= eta * best_gain
                ]
                score[i], choice[i] = eligible[rng.randrange(len(eligible))]
            else:
                # lowest action id among the maxima
                score[i], choice[i] = min(
                    (v, a) for v, a in values if v == best_value
                )
            dirty[i] = False

        pools = {i: g.in_neighbors[i] & undecided for i in undecided}
        gains_exchanged = any(pools[i] for i in undecided)

        selectors = set()
        for i in undecided:
            if invert:
                wins = all(
                    (score[i], -i) < (score[j], -j) for j in pools[i]
                )
            else:
                wins = all(
                    (score[i], -i) > (score[j], -j) for j in pools[i]
                )
            if wins:
                selectors.add(i)

        for i in selectors:
            final_action[i] = choice[i]
            committed_at[i] = iteration
            committed_nbrs[i] = frozenset(context[i].keys())

        undecided -= selectors
        broadcast = False
        for i in selectors:
            for j in g.out_neighbors[i]:
                if j in undecided:
                    context[j][i] = final_action[i]  # type: ignore[assignment]
                    dirty[j] = True
                    broadcast = True

        events.append(
            IterationEvent(
                iteration=iteration,
                recomputed=recomputed,
                gains_exchanged=gains_exchanged,
                selectors=frozenset(selectors),
                broadcast_occurred=broadcast,
            )
        )

    actions = tuple(a for a in final_action if a is not None)
    return CoordinationOutcome(
        algorithm="rag",
        actions=actions,
        value=obj.evaluate(actions),
        selection_order=tuple(committed_at),
        events=tuple(events),
        eval_counts=tuple(eval_counts),
        gain_rounds=sum(1 for ev in events if ev.gains_exchanged),
        action_rounds=sum(1 for ev in events if ev.broadcast_occurred),
        relay_action_transmissions=0,
        committed_in_neighbors=tuple(committed_nbrs),
    )


def run_sg(
    obj: Objective,
    order: Sequence[int],
    g: MeshGraph | None = None,
    per_agent_actions: Sequence[Sequence[GroundElement]] | None = None,
) -> CoordinationOutcome:
    """Sequential greedy: each agent maximizes the gain over all predecessors.

    With a graph, each hand-off from one decider to the next relays the
    accumulated actions along the shortest directed path, contributing
    (actions carried) x (hops) transmissions; without one the deciders are
    assumed adjacent (one hop per hand-off). The running value is known after
    every pick, so each agent costs exactly |V_i| evaluations.
    """
    menus = _resolve_actions(obj, per_agent_actions)
    n = obj.n_agents
    order = list(order)
    if sorted(order) != list(range(n)):
        raise ValueError("order must be a permutation of all agents")
    if g is not None and g.n != n:
        raise ValueError("graph and objective disagree on the number of agents")

    chosen: dict[int, GroundElement] = {}
    eval_counts = [0] * n
    committed_at = [0] * n
    committed_nbrs = [frozenset()] * n
    relay = 0
    events: list[IterationEvent] = []
    prev_value = 0.0
    for pos, i in enumerate(order):
        if pos > 0:
            hops = 1
            if g is not None:
                found = shortest_hops(g, order[pos - 1], i)
                if found is None:
                    raise ValueError(
                        f"no directed path from agent {order[pos - 1]} to agent {i} for the hand-off"
                    )
                hops = found
            relay += pos * hops
        ctx = frozenset(chosen.values())
        values = [(obj.evaluate(ctx | {a}), a) for a in menus[i]]
        eval_counts[i] += len(menus[i])
        best_value = max(v for v, _ in values)
        value, action = min((v, a) for v, a in values if v == best_value)
        committed_nbrs[i] = frozenset(chosen.keys())
        chosen[i] = action
        committed_at[i] = pos + 1
        prev_value = value
        events.append(
            IterationEvent(
                iteration=pos + 1,
                recomputed=frozenset([i]),
                gains_exchanged=False,
                selectors=frozenset([i]),
                broadcast_occurred=pos + 1 < n,
            )
        )

    actions = tuple(chosen[i] for i in range(n))
    return CoordinationOutcome(
        algorithm="sg",
        actions=actions,
        value=prev_value,
        selection_order=tuple(committed_at),
        events=tuple(events),
        eval_counts=tuple(eval_counts),
        gain_rounds=0,
        action_rounds=n - 1,
        relay_action_transmissions=relay,
        committed_in_neighbors=tuple(committed_nbrs),
    )


def run_dsm(
    obj: Objective,
    dag: InfoDag,
    per_agent_actions: Sequence[Sequence[GroundElement]] | None = None,
) -> CoordinationOutcome:
    """Sequential rule with partial predecessor access per the InfoDag.

    Value-level only: no relay model (relay_action_transmissions stays 0;
    full-access DAGs reproduce run_sg's selections and value but not its
    hand-off accounting). The conditioning value f(A_access) is unknown to
    the agent, so scoring uses augmented-context values, |V_i| evaluations
    per agent, and the outcome value is evaluated once at the end.
    """
    menus = _resolve_actions(obj, per_agent_actions)
    n = obj.n_agents
    if len(dag.order) != n:
        raise ValueError("dag and objective disagree on the number of agents")

    chosen: dict[int, GroundElement] = {}
    eval_counts = [0] * n
    committed_at = [0] * n
    committed_nbrs = [frozenset()] * n
    events: list[IterationEvent] = []
    for pos, i in enumerate(dag.order):
        ctx = frozenset(chosen[j] for j in dag.access[pos])
        values = [(obj.evaluate(ctx | {a}), a) for a in menus[i]]
        eval_counts[i] += len(menus[i])
        best_value = max(v for v, _ in values)
        _, action = min((v, a) for v, a in values if v == best_value)
        committed_nbrs[i] = frozenset(dag.access[pos])
        chosen[i] = action
        committed_at[i] = pos + 1
        events.append(
            IterationEvent(
                iteration=pos + 1,
                recomputed=frozenset([i]),
                gains_exchanged=False,
                selectors=frozenset([i]),
                broadcast_occurred=pos + 1 < n,
            )
        )

    actions = tuple(chosen[i] for i in range(n))
    return CoordinationOutcome(
        algorithm="dsm",
        actions=actions,
        value=obj.evaluate(actions),
        selection_order=tuple(committed_at),
        events=tuple(events),
        eval_counts=tuple(eval_counts),
        gain_rounds=0,
        action_rounds=n - 1,
        relay_action_transmissions=0,
        committed_in_neighbors=tuple(committed_nbrs),
    )


def run_dfs_sg(
    obj: Objective,
    g: MeshGraph,
    start: int,
    per_agent_actions: Sequence[Sequence[GroundElement]] | None = None,
) -> CoordinationOutcome:
    """Sequential greedy in depth-first preorder of g, with relay accounting on g."""
    dag = dfs_order(g, start)
    outcome = run_sg(obj, dag.order, g=g, per_agent_actions=per_agent_actions)
    return CoordinationOutcome(
        algorithm="dfs-sg",
        actions=outcome.actions,
        value=outcome.value,
        selection_order=outcome.selection_order,
        events=outcome.events,
        eval_counts=outcome.eval_counts,
        gain_rounds=outcome.gain_rounds,
        action_rounds=outcome.action_rounds,
        relay_action_transmissions=outcome.relay_action_transmissions,
        committed_in_neighbors=outcome.committed_in_neighbors,
    )


def run_random_baseline(
    obj: Objective,
    rng,
    per_agent_actions: Sequence[Sequence[GroundElement]] | None = None,
) -> CoordinationOutcome:
    """Uniform random action per agent; no evaluations charged to any agent."""
    menus = _resolve_actions(obj, per_agent_actions)
    n = obj.n_agents
    actions = tuple(menu[rng.randrange(len(menu))] for menu in menus)
    return CoordinationOutcome(
        algorithm="random",
        actions=actions,
        value=obj.evaluate(actions),
        selection_order=tuple(1 for _ in range(n)),
        events=(),
        eval_counts=tuple(0 for _ in range(n)),
        gain_rounds=0,
        action_rounds=0,
        relay_action_transmissions=0,
        committed_in_neighbors=None,
    )


def brute_force_optimum(
    obj: Objective,
    per_agent_actions: Sequence[Sequence[GroundElement]] | None = None,
) -> tuple[tuple[GroundElement, ...], float]:
    """Exhaustive maximum over the action product; ties to the lexicographically
    smallest action vector. Guarded at 10^7 joint selections."""
    menus = _resolve_actions(obj, per_agent_actions)
    size = math.prod(len(m) for m in menus)
    if size > BRUTE_FORCE_LIMIT:
        raise ValueError(f"action product of {size} exceeds the brute-force limit of {BRUTE_FORCE_LIMIT}")
    best_value = -math.inf
    best: tuple[GroundElement, ...] = ()
    for combo in product(*menus):
        value = obj.evaluate(combo)
        if value > best_value:
            best_value = value
            best = combo
    return best, best_value


def format_outcome(outcome: CoordinationOutcome) -> str:
    """Human- and diff-friendly structured text record of an outcome."""
    lines = [
        f"algorithm: {outcome.algorithm}",
        f"value: {outcome.value!r}",
        "actions: " + " ".join(f"{e.agent}:{e.action}" for e in outcome.actions),
        "selection_order: " + " ".join(str(t) for t in outcome.selection_order),
        "eval_counts: " + " ".join(str(c) for c in outcome.eval_counts),
        f"gain_rounds: {outcome.gain_rounds}",
        f"action_rounds: {outcome.action_rounds}",
        f"relay_action_transmissions: {outcome.relay_action_transmissions}",
    ]
    for ev in outcome.events:
        lines.append(
            f"iteration {ev.iteration}: recomputed={sorted(ev.recomputed)}"
            f" selectors={sorted(ev.selectors)}"
            f" gains_exchanged={ev.gains_exchanged}"
            f" broadcast={ev.broadcast_occurred}"
        )
    return "\n".join(lines) + "\n"
