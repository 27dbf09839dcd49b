"""JSON documents for scenarios, games, behaviors, priors and reports.

Every number is written as a scalar literal string (see
:mod:`bellgames.numeric`).  Tables nest as ``[x][y][a][b]``::

    {"scenario": {"alice_actions": [2, 2], "bob_actions": [2, 2]},
     "payoff_a": [[[["1", "-1"], ["-1", "1"]], ...]]}

A game without ``payoff_b`` is a common-payoff game.
"""
from __future__ import annotations

import json

from .model import Behavior, Game, ModelError, Prior, Scenario, StrategicGame
from .numeric import ScalarParseError, render

__all__ = [
    "DocumentError",
    "load_json",
    "require_field",
    "scenario_to_dict",
    "scenario_from_dict",
    "game_to_dict",
    "game_from_dict",
    "behavior_to_dict",
    "behavior_from_dict",
    "prior_to_dict",
    "prior_from_dict",
    "strategic_game_to_dict",
    "strategic_game_from_dict",
    "to_dict",
    "validation_to_dict",
    "equilibrium_to_dict",
    "ex_post_to_dict",
    "vertex_list_to_list",
]


class DocumentError(ValueError):
    """A document could not be read or does not follow its schema."""


def load_json(path):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise DocumentError(f"cannot read {path}: {exc.strerror}") from None
    except (json.JSONDecodeError, UnicodeDecodeError) as exc:
        raise DocumentError(f"{path} is not valid JSON: {exc}") from None


def _render_table(t):
    if isinstance(t, (list, tuple)):
        return [_render_table(v) for v in t]
    return render(t)


def _check_literals(t, what):
    if isinstance(t, list):
        for v in t:
            _check_literals(v, what)
    elif isinstance(t, bool) or not isinstance(t, (str, int)):
        raise DocumentError(f"{what}: numbers must be scalar-literal strings, got {t!r}")


def require_field(doc, key, what):
    if not isinstance(doc, dict):
        raise DocumentError(f"{what} document must be a JSON object")
    if key not in doc:
        raise DocumentError(f"{what} document lacks {key!r}")
    return doc[key]


def _wrap(fn, *args):
    try:
        return fn(*args)
    except (ModelError, ScalarParseError, TypeError) as exc:
        raise DocumentError(str(exc)) from None


def scenario_to_dict(sc):
    return {"alice_actions": list(sc.alice_actions), "bob_actions": list(sc.bob_actions)}


def scenario_from_dict(doc):
    alice = require_field(doc, "alice_actions", "scenario")
    bob = require_field(doc, "bob_actions", "scenario")
    for counts in (alice, bob):
        if not isinstance(counts, list) or not all(isinstance(c, int) and not isinstance(c, bool) for c in counts):
            raise DocumentError("scenario action counts must be lists of integers")
    return _wrap(Scenario, tuple(alice), tuple(bob))


def game_to_dict(game):
    doc = {"scenario": scenario_to_dict(game.scenario), "payoff_a": _render_table(game.payoff_a)}
    if not game.common_payoff:
        doc["payoff_b"] = _render_table(game.payoff_b)
    return doc


def game_from_dict(doc):
    sc = scenario_from_dict(require_field(doc, "scenario", "game"))
    pa = require_field(doc, "payoff_a", "game")
    pb = doc.get("payoff_b")
    _check_literals(pa, "payoff_a")
    if pb is not None:
        _check_literals(pb, "payoff_b")
    return _wrap(Game, sc, pa, pb)


def behavior_to_dict(behavior):
    return {"scenario": scenario_to_dict(behavior.scenario), "p": _render_table(behavior.p)}


def behavior_from_dict(doc):
    sc = scenario_from_dict(require_field(doc, "scenario", "behavior"))
    p = require_field(doc, "p", "behavior")
    _check_literals(p, "p")
    return _wrap(Behavior, sc, p)


def prior_to_dict(prior):
    return {"w": _render_table(prior.w)}


def prior_from_dict(doc):
    w = require_field(doc, "w", "prior")
    _check_literals(w, "w")
    return _wrap(Prior, w)


def strategic_game_to_dict(game):
    return {"payoff_a": _render_table(game.payoff_a), "payoff_b": _render_table(game.payoff_b)}


def strategic_game_from_dict(doc):
    pa = require_field(doc, "payoff_a", "strategic game")
    _check_literals(pa, "payoff_a")
    pb = doc.get("payoff_b")
    return _wrap(StrategicGame, pa, pb)


def to_dict(obj):
    """Document for any model object."""
    if isinstance(obj, Game):
        return game_to_dict(obj)
    if isinstance(obj, Behavior):
        return behavior_to_dict(obj)
    if isinstance(obj, Prior):
        return prior_to_dict(obj)
    if isinstance(obj, StrategicGame):
        return strategic_game_to_dict(obj)
    if isinstance(obj, Scenario):
        return scenario_to_dict(obj)
    raise TypeError(f"no document format for {type(obj).__name__}")


def validation_to_dict(report):
    return {
        "normalized": report.normalized,
        "alice_no_signaling": report.alice_no_signaling,
        "bob_no_signaling": report.bob_no_signaling,
        "failures": [
            {"kind": f.kind, "where": list(f.where), "residual": render(f.residual)} for f in report.failures
        ],
    }


def _deviation(d):
    return {
        "player": d.player,
        "type": d.type,
        "advised": d.advised,
        "deviation": d.deviation,
        "margin": render(d.margin),
    }


def equilibrium_to_dict(report):
    doc = {"verdict": report.verdict, "violations": [_deviation(d) for d in report.violations]}
    if report.expected_payoff is not None:
        doc["expected_payoff"] = [render(v) for v in report.expected_payoff]
    return doc


def ex_post_to_dict(report):
    return {
        "verdict": report.verdict,
        "blocks": [
            {"x": x, "y": y, **equilibrium_to_dict(r)} for (x, y), r in sorted(report.blocks.items())
        ],
    }


def vertex_list_to_list(vertex_list):
    out = []
    for i, v in enumerate(vertex_list.vertices):
        doc = behavior_to_dict(v)
        if vertex_list.classification:
            doc["classification"] = vertex_list.classification[i]
        out.append(doc)
    return out
