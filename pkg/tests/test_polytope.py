import random
from fractions import Fraction

import pytest

from bellgames.model import Behavior, ModelError, Scenario, deterministic_behavior, mix, uniform_behavior
from bellgames.numeric import QuadExt
from bellgames.polytope import (
    ScenarioTooLarge,
    _double_description,
    _integer_row,
    _rref,
    enumerate_local_strategies,
    enumerate_ns_vertices,
    is_local,
    is_vertex,
    local_behaviors,
    ns_constraints,
)
from bellgames.presets import CHSH_SCENARIO, VB_SCENARIO, preset

from oracles import brute_force_ns_vertices

HALF = Fraction(1, 2)


@pytest.fixture(scope="module")
def chsh_vertices():
    return enumerate_ns_vertices(CHSH_SCENARIO)


def _key(behavior):
    return tuple(QuadExt(v) for v in behavior.vector())


def test_ns_constraints_contain_presets():
    system = ns_constraints(CHSH_SCENARIO)
    assert system.contains(preset("pr_box"))
    assert system.contains(preset("chsh_quantum"))
    assert not system.contains(Behavior(Scenario((2,), (2, 2)), [[[[1, 0], [0, 0]], [[0, 0], [1, 0]]]]))
    assert len(system.nonnegativity()) == 16


def test_ns_constraints_equalities_have_zero_residual_on_local_behaviors():
    system = ns_constraints(VB_SCENARIO)
    for d in local_behaviors(VB_SCENARIO):
        assert all(r == 0 for r in system.equality_residuals(d))


def test_local_strategy_counts():
    assert len(enumerate_local_strategies(CHSH_SCENARIO)) == 16
    assert len(enumerate_local_strategies(VB_SCENARIO)) == 2 * 2 * 3 * 2 * 2
    first = enumerate_local_strategies(CHSH_SCENARIO)[0]
    assert first == ((0, 0), (0, 0))


def test_chsh_vertices_match_oracle(chsh_vertices, chsh_brute_force_vertices):
    assert len(chsh_vertices) == 24
    assert {_key(v) for v in chsh_vertices.vertices} == {
        tuple(QuadExt(c) for c in v) for v in chsh_brute_force_vertices
    }


def test_chsh_local_vertices_are_deterministic_behaviors(chsh_vertices):
    local = {_key(v) for v in chsh_vertices.local()}
    dets = {_key(d) for d in local_behaviors(CHSH_SCENARIO)}
    assert local == dets
    assert len(chsh_vertices.nonlocal_()) == 8
    assert _key(preset("pr_box")) in {_key(v) for v in chsh_vertices.nonlocal_()}


def test_mixing_two_vertices_is_not_a_vertex(chsh_vertices):
    rng = random.Random(11)
    vs = chsh_vertices.vertices
    pairs = [(i, j) for i in range(len(vs)) for j in range(i + 1, len(vs))]
    for i, j in rng.sample(pairs, 60):
        assert not is_vertex(mix([vs[i], vs[j]], [HALF, HALF]))


def test_every_enumerated_vertex_passes_is_vertex(chsh_vertices):
    assert all(is_vertex(v) for v in chsh_vertices.vertices)


def test_double_description_ignores_row_order():
    sc = CHSH_SCENARIO
    system = ns_constraints(sc)
    n = sc.size
    red, pivots = _rref([list(c) + [r] for c, r in system.equalities], n)
    free = [c for c in range(n) if c not in pivots]
    x0 = [Fraction(0)] * n
    for row, pc in zip(red, pivots):
        x0[pc] = row[n]
    K = [[Fraction(int(fc == c)) for fc in free] for c in range(n)]
    for row, pc in zip(red, pivots):
        K[pc] = [-row[fc] for fc in free]
    H = [_integer_row(K[i] + [x0[i]]) for i in range(n)] + [tuple([0] * len(free) + [1])]
    reference = set(_double_description(H))
    rng = random.Random(4)
    for _ in range(5):
        shuffled = list(H)
        rng.shuffle(shuffled)
        assert set(_double_description(shuffled)) == reference


def test_double_description_cube():
    # homogenized unit square 0 <= x, y <= 1
    H = [(1, 0, 0), (0, 1, 0), (-1, 0, 1), (0, -1, 1)]
    rays = set(_double_description(H))
    assert rays == {(0, 0, 1), (1, 0, 1), (0, 1, 1), (1, 1, 1)}


def test_trivial_and_small_scenarios():
    single = enumerate_ns_vertices(Scenario((1,), (1,)))
    assert len(single) == 1 and single.classification == ["local"]
    sc = Scenario((2,), (3,))
    vl = enumerate_ns_vertices(sc)
    # one type each: every vertex is a point mass
    assert len(vl) == 6 and all(c == "local" for c in vl.classification)
    assert {_key(v) for v in vl.vertices} == {tuple(QuadExt(c) for c in v) for v in brute_force_ns_vertices(sc)}


def test_asymmetric_scenario_matches_oracle():
    sc = Scenario((2, 2), (3,))
    vl = enumerate_ns_vertices(sc)
    assert {_key(v) for v in vl.vertices} == {tuple(QuadExt(c) for c in v) for v in brute_force_ns_vertices(sc)}
    assert all(c == "local" for c in vl.classification)


def test_ceiling():
    with pytest.raises(ScenarioTooLarge):
        enumerate_ns_vertices(VB_SCENARIO, ceiling=27)
    with pytest.raises(ScenarioTooLarge):
        enumerate_ns_vertices(CHSH_SCENARIO, ceiling=15)


def test_output_is_deterministic_and_sorted(chsh_vertices):
    again = enumerate_ns_vertices(CHSH_SCENARIO, classify=False)
    assert [_key(v) for v in again.vertices] == [_key(v) for v in chsh_vertices.vertices]
    assert again.classification == []
    keys = [_key(v) for v in chsh_vertices.vertices]
    assert keys == sorted(keys)


def test_is_vertex_examples():
    assert is_vertex(preset("pr_box"))
    assert not is_vertex(uniform_behavior(CHSH_SCENARIO))
    assert is_vertex(preset("vb_ns_opt"))
    assert is_vertex(deterministic_behavior(VB_SCENARIO, (1, 0, 2), (1, 1)))
    assert not is_vertex(preset("chsh_quantum"))


def test_is_vertex_rejects_outsiders():
    with pytest.raises(ModelError):
        is_vertex(Behavior(Scenario((2,), (2, 2)), [[[[1, 0], [0, 0]], [[0, 0], [1, 0]]]]))
    with pytest.raises(ModelError):
        is_vertex(preset("pr_box"), VB_SCENARIO)


def test_is_local_certificates_reproduce_behavior():
    rng = random.Random(8)
    strategies = enumerate_local_strategies(VB_SCENARIO)
    for _ in range(5):
        picks = rng.sample(strategies, 4)
        raw = [Fraction(rng.randint(1, 5)) for _ in picks]
        target = mix([deterministic_behavior(VB_SCENARIO, *s) for s in picks], [w / sum(raw) for w in raw])
        cert = is_local(target)
        assert cert
        keys = list(cert.weights)
        rebuilt = mix([deterministic_behavior(VB_SCENARIO, *k) for k in keys], [cert.weights[k] for k in keys])
        assert rebuilt == target
        assert all(w > 0 for w in cert.weights.values())


def test_is_local_nonlocal_cases():
    assert not is_local(preset("pr_box"))
    assert not is_local(preset("chsh_quantum"))
    assert not is_local(preset("vb_ns_opt"))
    cert = is_local(preset("pr_box"))
    assert cert.phase_one_value > 0


def test_is_local_needs_valid_behavior():
    with pytest.raises(ModelError):
        is_local(Behavior(Scenario((2,), (2, 2)), [[[[1, 0], [0, 0]], [[0, 0], [1, 0]]]]))


def test_local_boundary_mixture():
    # the PR box mixed with noise stays nonlocal until weight 1/2
    pr, u = preset("pr_box"), uniform_behavior(CHSH_SCENARIO)
    assert is_local(mix([pr, u], [HALF, HALF]))
    assert not is_local(mix([pr, u], [HALF + Fraction(1, 1000), HALF - Fraction(1, 1000)]))


@pytest.mark.slow
def test_vb_vertex_enumeration():
    vl = enumerate_ns_vertices(VB_SCENARIO, ceiling=28)
    assert len(vl) == 312
    assert len(vl.local()) == 48
    assert _key(preset("vb_ns_opt")) in {_key(v) for v in vl.nonlocal_()}
