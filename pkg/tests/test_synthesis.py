from fractions import Fraction

import pytest

from bellgames.analysis import expected_payoff, local_bound, ns_bound
from bellgames.lp import constraint_residuals
from bellgames.model import Behavior, Game, ModelError, Prior, Scenario
from bellgames.polytope import enumerate_ns_vertices
from bellgames.presets import CHSH_SCENARIO, preset
from bellgames.synthesis import (
    SynthesisError,
    SynthesisOptions,
    synthesis_program,
    synthesize_game,
    verify_synthesis,
)

HALF = Fraction(1, 2)


@pytest.fixture(scope="module")
def pr_result():
    return synthesize_game(preset("pr_box"))


def test_pr_box_round_trip(pr_result):
    pr = preset("pr_box")
    assert pr_result.gap > 0
    assert pr_result.game.common_payoff
    check = verify_synthesis(pr_result.game, pr, Prior.uniform(CHSH_SCENARIO))
    assert check.passed and check.advantage
    assert check.payoff - check.local_bound == pr_result.gap


def test_payoffs_stay_in_the_box(pr_result):
    flat = CHSH_SCENARIO.flatten(pr_result.game.payoff_a)
    assert all(-1 <= v <= 1 for v in flat)


def test_chsh_payoff_is_feasible_with_half_gap():
    lp = synthesis_program(preset("pr_box"))
    point = CHSH_SCENARIO.flatten(preset("chsh_game").payoff_a) + [HALF]
    assert constraint_residuals(lp, point) == []
    # so the maximal gap is at least 1/2
    best = synthesize_game(preset("pr_box")).gap
    assert best >= HALF


def test_every_nonlocal_chsh_vertex_synthesizes():
    vl = enumerate_ns_vertices(CHSH_SCENARIO)
    prior = Prior.uniform(CHSH_SCENARIO)
    for v in vl.nonlocal_():
        result = synthesize_game(v)
        assert verify_synthesis(result.game, v, prior).passed


def test_scale_covariance():
    pr = preset("pr_box")
    one = synthesize_game(pr, SynthesisOptions(payoff_box=1)).gap
    two = synthesize_game(pr, SynthesisOptions(payoff_box=2)).gap
    assert two >= 2 * one


def test_require_ns_optimum():
    pr = preset("pr_box")
    prior = Prior.uniform(CHSH_SCENARIO)
    result = synthesize_game(pr, SynthesisOptions(require_ns_optimum=True))
    assert ns_bound(result.game, prior).value == expected_payoff(result.game, pr, prior)[0]
    assert verify_synthesis(result.game, pr, prior).passed


def test_custom_prior():
    pr = preset("pr_box")
    prior = Prior([[1, 2], [3, 4]])
    result = synthesize_game(pr, SynthesisOptions(prior=prior))
    check = verify_synthesis(result.game, pr, prior)
    assert check.passed
    assert check.payoff - check.local_bound == result.gap


def test_rejects_local_and_non_vertex_inputs():
    with pytest.raises(SynthesisError):
        synthesize_game(preset("chsh_uniform"))
    with pytest.raises(SynthesisError):
        synthesize_game(preset("chsh_quantum"))
    signaling = Behavior(Scenario((2,), (2, 2)), [[[[1, 0], [0, 0]], [[0, 0], [1, 0]]]])
    with pytest.raises(SynthesisError):
        synthesize_game(signaling)
    with pytest.raises(SynthesisError):
        synthesize_game(Behavior(Scenario((1,), (2,)), [[[[1, 1]]]]))


def test_minimum_gap():
    with pytest.raises(SynthesisError) as info:
        synthesize_game(preset("pr_box"), SynthesisOptions(minimum_gap=100))
    assert info.value.gap is not None and info.value.gap < 100


def test_options_validation():
    with pytest.raises(ModelError):
        SynthesisOptions(payoff_box=0)


def test_verify_vb_fails_only_ex_post(vb_prior):
    game, opt = preset("vb_game", c=2), preset("vb_ns_opt")
    check = verify_synthesis(game, opt, vb_prior)
    assert check.advantage
    assert check.ex_ante.passed
    assert not check.ex_post.passed
    assert not check.passed


def test_verify_zero_game_has_no_advantage():
    zero = Game.from_function(CHSH_SCENARIO, lambda x, y, a, b: 0)
    check = verify_synthesis(zero, preset("pr_box"), Prior.uniform(CHSH_SCENARIO))
    assert check.payoff == check.local_bound == 0
    assert not check.passed


def test_verify_scenario_mismatch(vb_prior):
    with pytest.raises(ModelError):
        verify_synthesis(preset("chsh_game"), preset("vb_ns_opt"), vb_prior)


def test_synthesized_game_local_bound_matches_lp_rows(pr_result):
    prior = Prior.uniform(CHSH_SCENARIO)
    assert local_bound(pr_result.game, prior).value == expected_payoff(pr_result.game, preset("pr_box"), prior)[0] - pr_result.gap


def test_vb_ns_vertex_synthesizes():
    # the recipe also works on the larger scenario for a vertex it accepts
    vertex = preset("vb_ns_opt")
    result = synthesize_game(vertex, SynthesisOptions(prior=Prior.unit(vertex.scenario)))
    assert verify_synthesis(result.game, vertex, Prior.unit(vertex.scenario)).passed


def test_single_type_scenario_has_no_nonlocal_vertex():
    sc = Scenario((2,), (2,))
    assert not enumerate_ns_vertices(sc).nonlocal_()
