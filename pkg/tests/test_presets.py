from fractions import Fraction

import pytest

from bellgames.analysis import expected_payoff
from bellgames.model import Behavior, Game, Prior, StrategicGame, deterministic_behavior, validate_behavior
from bellgames.numeric import SQRT2
from bellgames.polytope import enumerate_ns_vertices
from bellgames.presets import (
    CHSH_SCENARIO,
    PRESET_NAMES,
    VB_QUANTUM_PROVENANCE,
    VB_SCENARIO,
    PresetError,
    canonical_prior,
    declared_tolerance,
    preset,
)

HALF = Fraction(1, 2)


def test_every_preset_builds():
    for name in PRESET_NAMES:
        obj = preset(name, c=2 if name == "vb_game" else None)
        assert isinstance(obj, (Game, Behavior, Prior, StrategicGame))


def test_unknown_preset_and_bad_parameter():
    with pytest.raises(PresetError):
        preset("no_such_thing")
    with pytest.raises(PresetError):
        preset("vb_game")
    with pytest.raises(PresetError):
        preset("vb_game", c=0)
    with pytest.raises(PresetError):
        preset("vb_game", c=-1)


def test_table_entries():
    assert preset("vb_game", c=2).payoff_a[1][1][0][0] == -2
    assert preset("vb_quantum").p[2][0][0][0] == Fraction(30602, 100000)
    block = preset("pr_box").p[1][1]
    assert block[0][1] == block[1][0] == HALF
    assert block[0][0] == block[1][1] == 0


def test_vb_game_scales_with_c():
    g1, g4 = preset("vb_game", c=1), preset("vb_game", c=4)
    assert g4.payoff_a[0][1][0][0] == 4 * g1.payoff_a[0][1][0][0]
    # the type-2 rows do not depend on c
    assert g1.payoff_a[2] == g4.payoff_a[2]
    assert g1.payoff_a[2][0][1][0] == HALF + SQRT2 / 4


def test_pr_box_is_the_unique_winning_vertex():
    game, prior = preset("chsh_game"), preset("chsh_prior")
    winners = [v for v in enumerate_ns_vertices(CHSH_SCENARIO, classify=False).vertices
               if expected_payoff(game, v, prior)[0] == 1]
    assert winners == [preset("pr_box")]


def test_vb_local_opt():
    assert preset("vb_local_opt") == deterministic_behavior(VB_SCENARIO, (0, 0, 0), (0, 0))


def test_vb_quantum_blocks():
    q = preset("vb_quantum")
    tol = Fraction(2, 10000)
    for x, y in VB_SCENARIO.type_pairs():
        total = sum(v for row in q.p[x][y] for v in row)
        assert abs(total - 1) <= tol
        assert VB_QUANTUM_PROVENANCE[x, y] == ("decimal" if x == 2 else "analytic")
    assert q.p[0][0][0][0] == (2 + SQRT2) / 8
    assert validate_behavior(q, declared_tolerance("vb_quantum")).ok


def test_chsh_quantum_matches_analytic_blocks():
    q = preset("chsh_quantum")
    assert q.p[0][0][0][0] == (2 + SQRT2) / 8
    assert q.p[1][1][0][0] == (2 - SQRT2) / 8
    assert q.p[:2] == preset("vb_quantum").p[:2]


def test_priors():
    assert canonical_prior("chsh_game") == Prior.uniform(CHSH_SCENARIO)
    assert canonical_prior("vb_quantum") == Prior.unit(VB_SCENARIO)
    with pytest.raises(PresetError):
        canonical_prior("battle_of_sexes")
    assert declared_tolerance("pr_box") == 0


def test_strategic_presets():
    bos = preset("battle_of_sexes")
    assert bos.payoff_a == ((2, 0), (0, 1)) and bos.payoff_b == ((1, 0), (0, 2))
    coord = preset("coordination")
    assert coord.payoff_a == coord.payoff_b == ((1, 0), (0, 1))
