import itertools
import math
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import coverage_instance
from meshcoord.bounds import (
    aposteriori_bound,
    apriori_bound,
    approx_greedy_bound,
    bound_report,
    coin_sum,
    curvature_only_bound,
    fixed_action_gap,
)
from meshcoord.coordination import brute_force_optimum, run_rag, run_random_baseline
from meshcoord.instances import (
    logdet_toy,
    reference_line_instance,
    supermodular_toy,
)
from meshcoord.objective import CallableObjective, GroundElement, curvature
from meshcoord.topology import complete_graph, edgeless_graph, line_graph


def test_complete_graph_apriori_reduces_to_centralized_form():
    obj, _, _ = reference_line_instance()
    g = complete_graph(5)
    out = run_rag(obj, g)
    assert coin_sum(obj, g, out.actions) == 0.0
    _, opt = brute_force_optimum(obj)
    k = curvature(obj)
    assert math.isclose(apriori_bound(obj, g, out), opt / (1 + k), rel_tol=1e-12)


def _overlapping_pair():
    # both agents can cover the same two cells, so isolation costs information
    from meshcoord.objective import GridCoverageObjective

    fps = [[[(0, 0), (1, 0)], [(2, 0)]], [[(0, 0), (1, 0)], [(2, 0)]]]
    return GridCoverageObjective(["###"], fps)


def test_missing_edges_show_up_as_coins_and_discount_the_bound():
    obj = _overlapping_pair()
    g = edgeless_graph(2)
    out = run_rag(obj, g)
    assert coin_sum(obj, g, out.actions) > 0.0
    assert apriori_bound(obj, g, out) < apriori_bound(obj, complete_graph(2), out)


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10_000))
def test_value_meets_both_bounds(seed):
    obj, g = coverage_instance(seed, max_agents=4)
    out = run_rag(obj, g)
    assert out.value >= apriori_bound(obj, g, out) - 1e-9
    assert out.value >= aposteriori_bound(obj, out) - 1e-9


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10_000))
def test_eta_one_approx_bound_coincides_with_apriori(seed):
    obj, g = coverage_instance(seed, max_agents=4)
    out = run_rag(obj, g)
    assert math.isclose(
        approx_greedy_bound(obj, g, out, eta=1.0),
        apriori_bound(obj, g, out),
        rel_tol=1e-12,
        abs_tol=1e-12,
    )


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 10_000))
def test_eta_half_run_meets_its_own_bound(seed):
    obj, g = coverage_instance(seed, max_agents=4)
    out = run_rag(obj, g, eta=0.5, rng=random.Random(seed))
    assert out.value >= approx_greedy_bound(obj, g, out, eta=0.5) - 1e-9


def test_approx_greedy_bound_validates_eta():
    obj, g, _ = reference_line_instance()
    out = run_rag(obj, g)
    with pytest.raises(ValueError):
        approx_greedy_bound(obj, g, out, eta=0.0)
    with pytest.raises(ValueError):
        approx_greedy_bound(obj, g, out, eta=1.5)


def test_aposteriori_needs_recorded_contexts():
    obj, g, _ = reference_line_instance()
    baseline = run_random_baseline(obj, random.Random(0))
    with pytest.raises(ValueError, match="commit contexts"):
        aposteriori_bound(obj, baseline)


def test_curvature_only_submodular_cases():
    obj, g, _ = reference_line_instance()  # kappa == 1 by construction
    out = run_rag(obj, g)
    _, opt = brute_force_optimum(obj)
    complete = curvature_only_bound(obj, complete_graph(5), out, submodular=True)
    assert math.isclose(complete, opt / 2, rel_tol=1e-12)
    assert curvature_only_bound(obj, g, out, submodular=True) == 0.0


def test_curvature_only_beyond_submodular_cases():
    obj = supermodular_toy()
    out = run_rag(obj, complete_graph(3))
    # c = 0.8: (1-c)/(1+c-c^2) * f(opt), then (1-c)^2 * f(opt) off-complete
    assert math.isclose(
        curvature_only_bound(obj, complete_graph(3), out),
        1.5517241379310343,
        rel_tol=1e-12,
    )
    assert math.isclose(
        curvature_only_bound(obj, line_graph(3), out), 0.36, rel_tol=1e-12
    )


def test_logdet_bound_holds_despite_weak_submodularity():
    obj = logdet_toy()
    g = complete_graph(3)
    out = run_rag(obj, g)
    assert out.value >= apriori_bound(obj, g, out) - 1e-9


def test_fixed_action_gap_on_the_reference_agent():
    obj, _, _ = reference_line_instance()
    eps, anchor = fixed_action_gap(obj, 1)
    # kappa == 1 wipes out the anchored term: eps is the best singleton, and
    # the tie across anchors resolves to the lowest action id
    assert (eps, anchor) == (10.0, GroundElement(1, 0))
    assert anchor in obj.actions(1)


def test_fixed_action_gap_zero_for_modular_single_action():
    weights = {(0, 0): 2.0, (1, 0): 5.0}
    obj = CallableObjective([1, 1], lambda s: sum(weights[e] for e in s))
    eps, anchor = fixed_action_gap(obj, 1)
    assert eps == 0.0  # kappa == 0 and only one anchor choice
    assert anchor == GroundElement(1, 0)


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 10_000))
def test_anchored_gain_sandwiches_the_greedy_gain(seed):
    obj, _ = coverage_instance(seed, max_agents=3, max_actions=3)
    rng = random.Random(seed)
    agent = rng.randrange(obj.n_agents)
    eps, anchor = fixed_action_gap(obj, agent)
    others = [a for i in range(obj.n_agents) if i != agent
              for a in obj.actions(i)]
    for _ in range(8):
        ctx = frozenset(rng.sample(others, rng.randrange(len(others) + 1)))
        base = obj.evaluate(ctx)
        gains = [obj.evaluate(ctx | {a}) - base for a in obj.actions(agent)]
        anchored = obj.evaluate(ctx | {anchor}) - base
        assert anchored <= max(gains) + 1e-9
        assert max(gains) <= anchored + eps + 1e-9


def test_coin_sum_monotone_in_topology():
    obj, _, _ = reference_line_instance()
    out = run_rag(obj, complete_graph(5))
    isolated = coin_sum(obj, edgeless_graph(5), out.actions)
    lined = coin_sum(obj, line_graph(5), out.actions)
    connected = coin_sum(obj, complete_graph(5), out.actions)
    assert isolated >= lined >= connected == 0.0


def test_bound_report_certified_fields():
    obj, g, _ = reference_line_instance()
    out = run_rag(obj, g)
    rep = bound_report(obj, g, out)
    assert rep.certified
    assert rep.algorithm_value == out.value
    assert rep.kappa == 1.0
    assert rep.eta == 1.0
    assert rep.apriori_centralized == rep.optimum_value / 2
    assert rep.apriori_decentralized_floor == 0.0
    assert rep.aposteriori <= rep.algorithm_value + 1e-9
    # 20 ground elements: past the exhaustive-structure guard
    assert rep.c_total is None
    assert rep.curvature_only is None


def test_bound_report_with_surrogate_optimum_is_uncertified():
    obj, g, _ = reference_line_instance()
    out = run_rag(obj, g)
    rep = bound_report(obj, g, out, optimum_value=out.value)
    assert not rep.certified
    assert rep.optimum_value == out.value


def test_bound_report_assumed_submodularity_restores_curvature_only():
    obj, g, _ = reference_line_instance()
    out = run_rag(obj, g)
    rep = bound_report(obj, g, out, assume_submodular=True)
    assert rep.curvature_only == 0.0  # kappa 1 on a non-complete graph


def test_bound_report_small_ground_fills_everything():
    obj = logdet_toy()
    g = complete_graph(3)
    out = run_rag(obj, g)
    rep = bound_report(obj, g, out)
    assert rep.c_total is not None
    assert math.isclose(rep.c_total, rep.kappa, rel_tol=1e-12)
    assert rep.curvature_only is not None
    assert rep.certified


def test_coin_sum_zero_off_complete_when_footprints_are_disjoint():
    # the reference instance keeps agents' cells apart, so no agent's action
    # is informative about another's and the line topology costs nothing
    obj, g, _ = reference_line_instance()
    out = run_rag(obj, g)
    assert coin_sum(obj, edgeless_graph(5), out.actions) == 0.0
    assert apriori_bound(obj, g, out) == apriori_bound(obj, complete_graph(5), out)
