"""Suboptimality bounds for coordination outcomes, certified against brute force.

Every bound is a lower bound on the value achieved by the distributed greedy
rule, expressed through the optimum, the objective's curvature, and either
the information-centralization terms (coin) of the communication topology or
the per-agent commit contexts recorded in the outcome. On small instances the
optimum comes from the brute-force oracle and reports are certified; large
instances may substitute a surrogate optimum and are flagged uncertified.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from meshcoord.coordination import CoordinationOutcome, brute_force_optimum
from meshcoord.objective import (
    GroundElement,
    Objective,
    coin,
    curvature,
    total_curvature,
    validate_structure,
)
from meshcoord.topology import MeshGraph, is_complete


@dataclass(frozen=True)
class BoundReport:
    """All bound values for one outcome, plus the measures behind them.

    certified is True when optimum_value came from the exhaustive oracle;
    c_total and curvature_only are None when the ground set exceeds the
    exhaustive-check guard and no structural assumption was supplied.
    """

    algorithm_value: float
    optimum_value: float
    apriori: float
    apriori_centralized: float
    apriori_decentralized_floor: float
    aposteriori: float
    approx_greedy: float
    curvature_only: float | None
    coin_sum: float
    kappa: float
    c_total: float | None
    eta: float
    certified: bool


def coin_sum(obj: Objective, g: MeshGraph, actions) -> float:
    """Sum over agents of the information their non-neighbors already hold."""
    return sum(
        coin(obj, i, actions, g.in_neighbors[i]) for i in range(obj.n_agents)
    )


def _optimum(obj: Objective, optimum_value: float | None) -> float:
    if optimum_value is None:
        _, optimum_value = brute_force_optimum(obj)
    return optimum_value


def apriori_bound(
    obj: Objective,
    g: MeshGraph,
    outcome: CoordinationOutcome,
    optimum_value: float | None = None,
    kappa: float | None = None,
) -> float:
    """[f(opt) - kappa * coin_sum] / (1 + kappa).

    Needs only the topology and the committed actions; on a complete graph
    the coin terms vanish and this reduces to f(opt) / (1 + kappa). Valid
    for monotone submodular 2nd-order-submodular objectives.
    """
    if kappa is None:
        kappa = curvature(obj)
    opt = _optimum(obj, optimum_value)
    return (opt - kappa * coin_sum(obj, g, outcome.actions)) / (1.0 + kappa)


def aposteriori_bound(
    obj: Objective,
    outcome: CoordinationOutcome,
    optimum_value: float | None = None,
    kappa: float | None = None,
) -> float:
    """f(opt) - kappa * sum_i f(a_i | actions of i's recorded commit context).

    Uses the contexts each agent actually conditioned on, so it needs an
    outcome that recorded them; 2nd-order submodularity is not required.
    """
    if outcome.committed_in_neighbors is None:
        raise ValueError("outcome does not record per-agent commit contexts")
    if kappa is None:
        kappa = curvature(obj)
    opt = _optimum(obj, optimum_value)
    total = 0.0
    for i, a_i in enumerate(outcome.actions):
        ctx = frozenset(outcome.actions[j] for j in outcome.committed_in_neighbors[i])
        total += obj.evaluate(ctx | {a_i}) - obj.evaluate(ctx)
    return opt - kappa * total


def approx_greedy_bound(
    obj: Objective,
    g: MeshGraph,
    outcome: CoordinationOutcome,
    eta: float,
    optimum_value: float | None = None,
    kappa: float | None = None,
) -> float:
    """Bound for eta-approximate local greedy steps.

    eta / (1 + eta*kappa) * [f(opt) - (1/eta - 1 + kappa) * coin_sum];
    at eta = 1 this coincides with apriori_bound.
    """
    if not 0 < eta <= 1:
        raise ValueError("eta must be in (0, 1]")
    if kappa is None:
        kappa = curvature(obj)
    opt = _optimum(obj, optimum_value)
    coins = coin_sum(obj, g, outcome.actions)
    return eta / (1.0 + eta * kappa) * (opt - (1.0 / eta - 1.0 + kappa) * coins)


def curvature_only_bound(
    obj: Objective,
    g: MeshGraph,
    outcome: CoordinationOutcome,
    optimum_value: float | None = None,
    submodular: bool | None = None,
) -> float:
    """Topology-and-curvature-only bound, no coin or context terms.

    Submodular objectives: f(opt) / (1 + kappa) on a complete graph, else
    (1 - kappa) * f(opt). Non-submodular monotone objectives use total
    curvature c: (1-c) / (1 + c - c^2) * f(opt) on a complete graph, else
    (1-c)^2 * f(opt). When submodular is None the structure is decided by
    the exhaustive validator (size-guarded).
    """
    if submodular is None:
        submodular = validate_structure(obj).is_submodular
    opt = _optimum(obj, optimum_value)
    if submodular:
        k = curvature(obj)
        return opt / (1.0 + k) if is_complete(g) else (1.0 - k) * opt
    c = total_curvature(obj)
    if is_complete(g):
        return (1.0 - c) / (1.0 + c - c * c) * opt
    return (1.0 - c) ** 2 * opt


def fixed_action_gap(
    obj: Objective,
    agent: int,
    kappa: float | None = None,
) -> tuple[float, GroundElement]:
    """Slack of anchoring an agent's greedy response to one fixed action.

    Returns (epsilon, anchor) with epsilon = min over anchors a2 of
    max over a1 of [f(a1) - (1 - kappa) * f(a2)], both over the agent's menu.
    The greedy-response gain f(best | ctx) exceeds the anchored gain
    f(anchor | ctx) by at most epsilon in every context, which is what makes
    the anchored gain a supermodular stand-in for the greedy one.
    """
    if kappa is None:
        kappa = curvature(obj)
    singles = {a: obj.evaluate([a]) for a in obj.actions(agent)}
    best_single = max(singles.values())
    eps, anchor = min(
        (best_single - (1.0 - kappa) * v, a) for a, v in singles.items()
    )
    return eps, anchor


def bound_report(
    obj: Objective,
    g: MeshGraph,
    outcome: CoordinationOutcome,
    eta: float = 1.0,
    optimum_value: float | None = None,
    assume_submodular: bool | None = None,
) -> BoundReport:
    """Evaluates every bound for one outcome.

    optimum_value left as None runs the brute-force oracle and marks the
    report certified; passing a surrogate (e.g. a sequential-greedy value on
    instances beyond the oracle guard) marks it uncertified. Shipped coverage
    objectives are submodular; assume_submodular short-circuits the
    exhaustive structure check for grounds beyond its size guard.
    """
    certified = optimum_value is None
    opt = _optimum(obj, optimum_value)
    kappa = curvature(obj)
    coins = coin_sum(obj, g, outcome.actions)

    submodular = assume_submodular
    c_total: float | None = None
    if len(obj.ground()) <= 16:
        c_total = total_curvature(obj)
        if submodular is None:
            submodular = validate_structure(obj).is_submodular
    curvature_only: float | None = None
    if submodular is not None:
        curvature_only = curvature_only_bound(
            obj, g, outcome, optimum_value=opt, submodular=submodular
        )

    return BoundReport(
        algorithm_value=outcome.value,
        optimum_value=opt,
        apriori=apriori_bound(obj, g, outcome, optimum_value=opt, kappa=kappa),
        apriori_centralized=opt / (1.0 + kappa),
        apriori_decentralized_floor=(1.0 - kappa) * opt,
        aposteriori=aposteriori_bound(obj, outcome, optimum_value=opt, kappa=kappa),
        approx_greedy=approx_greedy_bound(
            obj, g, outcome, eta, optimum_value=opt, kappa=kappa
        ),
        curvature_only=curvature_only,
        coin_sum=coins,
        kappa=kappa,
        c_total=c_total,
        eta=eta,
        certified=certified,
    )
