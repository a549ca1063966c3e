"""Delay model and conversion of outcome traces into simulated decision time.

Three primitive delays: tau_f per objective evaluation, tau_c per action per
hop transmitted, tau_hash per scalar broadcast round. Distributed compute
phases overlap across agents (per-agent totals, max), scalar/action rounds
are charged once per synchronous round regardless of fan-out, and sequential
rules pay compute in sequence plus per-action-per-hop relays.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from meshcoord.coordination import CoordinationOutcome
from meshcoord.topology import MeshGraph


def tau_c_from_rate(message_bytes: float, data_rate_bps: float) -> float:
    """Seconds to push one action message through a link of the given rate."""
    if message_bytes <= 0:
        raise ValueError("message size must be positive")
    if data_rate_bps <= 0:
        raise ValueError("data rate must be positive")
    return 8.0 * message_bytes / data_rate_bps


@dataclass(frozen=True)
class DelayModel:
    """(tau_f, tau_c, tau_hash) in seconds; all non-negative."""

    tau_f: float
    tau_c: float
    tau_hash: float

    def __post_init__(self):
        for name in ("tau_f", "tau_c", "tau_hash"):
            if getattr(self, name) < 0:
                raise ValueError(f"{name} may not be negative")

    @classmethod
    def from_rate(
        cls,
        tau_f: float,
        tau_hash: float,
        message_bytes: float,
        data_rate_bps: float,
    ) -> "DelayModel":
        return cls(tau_f=tau_f, tau_c=tau_c_from_rate(message_bytes, data_rate_bps), tau_hash=tau_hash)


def _action_counts(outcome: CoordinationOutcome, per_agent_action_count: Sequence[int]) -> list[int]:
    counts = [int(c) for c in per_agent_action_count]
    if len(counts) != len(outcome.eval_counts):
        raise ValueError("need one action count per agent")
    if any(c < 1 for c in counts):
        raise ValueError("action counts must be positive")
    return counts


def rag_decision_time(
    outcome: CoordinationOutcome,
    dm: DelayModel,
    per_agent_action_count: Sequence[int],
) -> float:
    """Simulated wall time of a distributed run.

    Agents compute in parallel on their own processors, so the compute term
    is the busiest agent's total work: tau_f * max_i(recomputations_i * |V_i|).
    Scalar exchanges and action broadcasts run on parallel channels, one
    tau_hash / tau_c per round.
    """
    if outcome.algorithm != "rag":
        raise ValueError(f"expected a distributed-greedy outcome, got {outcome.algorithm!r}")
    counts = _action_counts(outcome, per_agent_action_count)
    recomputations = [0] * len(counts)
    for ev in outcome.events:
        for i in ev.recomputed:
            recomputations[i] += 1
    busiest = max(r * c for r, c in zip(recomputations, counts))
    return dm.tau_f * busiest + dm.tau_hash * outcome.gain_rounds + dm.tau_c * outcome.action_rounds


def sg_decision_time(
    outcome: CoordinationOutcome,
    dm: DelayModel,
    per_agent_action_count: Sequence[int],
) -> float:
    """Simulated wall time of a sequential run: summed compute plus relayed hand-offs."""
    if outcome.algorithm not in ("sg", "dfs-sg"):
        raise ValueError(f"expected a sequential-greedy outcome, got {outcome.algorithm!r}")
    counts = _action_counts(outcome, per_agent_action_count)
    return dm.tau_f * sum(counts) + dm.tau_c * outcome.relay_action_transmissions


def rag_time_bound(
    g: MeshGraph,
    dm: DelayModel,
    per_agent_action_count: Sequence[int],
) -> float:
    """Closed-form worst case for rag_decision_time on a given graph.

    Compute: an agent recomputes at most once per in-neighbor commit plus its
    first pass, so the busiest agent costs at most |V_i| * (|N_i| + 1) [just
    |V_i| when isolated]. Rounds: at most |N| - 1 scalar and |N| - 1 action
    rounds on any graph with an edge (the final iteration never has either:
    its committers have no undecided in-neighbors and no undecided
    listeners), and none on an edgeless graph.
    """
    counts = [int(c) for c in per_agent_action_count]
    if len(counts) != g.n:
        raise ValueError("need one action count per agent")
    if any(c < 1 for c in counts):
        raise ValueError("action counts must be positive")
    busiest = max(
        c * (len(g.in_neighbors[i]) + 1) if g.in_neighbors[i] else c
        for i, c in enumerate(counts)
    )
    rounds = g.n - 1 if g.has_edges() else 0
    return dm.tau_f * busiest + (dm.tau_c + dm.tau_hash) * rounds
