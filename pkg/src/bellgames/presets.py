"""Named games, behaviors and priors used throughout the package.

* ``battle_of_sexes``, ``coordination``: 2x2 strategic games.
* ``chsh_game``, ``pr_box``, ``chsh_quantum``, ``chsh_uniform``: the CHSH
  scenario (two types, two actions each).  ``chsh_quantum`` mixes the PR box
  and the uniform behavior with weight sqrt(2)/2.
* ``vb_game`` (needs ``c > 0``), ``vb_local_opt``, ``vb_ns_opt``,
  ``vb_quantum``: the Vertesi-Bene scenario, where Alice's third type has
  three actions.  The type-2 blocks of ``vb_quantum`` are five-decimal
  readings and need tolerance ``2/10000``.
* ``chsh_prior`` (1/4 on every type pair) and ``vb_prior`` (unit weights).
"""
from __future__ import annotations

from fractions import Fraction

from .model import (
    Behavior,
    Game,
    ModelError,
    Prior,
    Scenario,
    StrategicGame,
    deterministic_behavior,
    mix,
    uniform_behavior,
)
from .numeric import SQRT2, ZERO, QuadExt, as_scalar, parse_scalar

__all__ = [
    "CHSH_SCENARIO",
    "VB_SCENARIO",
    "PRESET_NAMES",
    "DECIMAL_TOLERANCE",
    "VB_QUANTUM_PROVENANCE",
    "PresetError",
    "preset",
    "canonical_prior",
    "declared_tolerance",
]

CHSH_SCENARIO = Scenario((2, 2), (2, 2))
VB_SCENARIO = Scenario((2, 2, 3), (2, 2))
DECIMAL_TOLERANCE = QuadExt(Fraction(2, 10000))

HALF = QuadExt(Fraction(1, 2))


class PresetError(ModelError):
    """Unknown preset name or invalid preset parameter."""


def _chsh_game():
    same = [[1, -1], [-1, 1]]
    flip = [[-1, 1], [1, -1]]
    return Game(CHSH_SCENARIO, [[same, same], [same, flip]])


def _pr_box():
    h = HALF
    corr = [[h, ZERO], [ZERO, h]]
    anti = [[ZERO, h], [h, ZERO]]
    return Behavior(CHSH_SCENARIO, [[corr, corr], [corr, anti]])


def _chsh_quantum():
    lam = SQRT2 / 2
    return mix([_pr_box(), uniform_behavior(CHSH_SCENARIO)], [lam, 1 - lam])


def _vb_game(c):
    if c is None:
        raise PresetError("vb_game needs the parameter c")
    c = as_scalar(c)
    if not c > 0:
        raise PresetError(f"vb_game needs c > 0, got {c}")
    h = c / 2
    q = lambda s: parse_scalar(s)  # noqa: E731
    table = [
        [[[0, -h], [-h, 0]], [[h, -h], [0, 0]]],
        [[[h, 0], [-h, 0]], [[-c, 0], [0, 0]]],
        [
            [["1/2", "-1/2"], [q("1/2+1/4*sqrt2"), q("-1/2+1/4*sqrt2")], [0, 0]],
            [["1/2", "-1/2"], [q("-3/2+1/4*sqrt2"), q("-1/2+1/4*sqrt2")], [0, 0]],
        ],
    ]
    return Game(VB_SCENARIO, table)


def _vb_ns_opt():
    h, z = HALF, ZERO
    corr = [[h, z], [z, h]]
    anti = [[z, h], [h, z]]
    three = [[h, z], [z, z], [z, h]]
    return Behavior(VB_SCENARIO, [[corr, corr], [corr, anti], [three, three]])


# five-decimal readings of the type-2 blocks
_VB_QUANTUM_DECIMALS = {
    (2, 0): [["0.30602", "0.12925"], ["0.18243", "0.11444"], ["0.01155", "0.25630"]],
    (2, 1): [["0.41652", "0.01875"], ["0.00395", "0.29293"], ["0.07953", "0.18832"]],
}

VB_QUANTUM_PROVENANCE = {
    (0, 0): "analytic",
    (0, 1): "analytic",
    (1, 0): "analytic",
    (1, 1): "analytic",
    (2, 0): "decimal",
    (2, 1): "decimal",
}


def _vb_quantum():
    hi = parse_scalar("1/4+1/8*sqrt2")  # (2 + sqrt2) / 8
    lo = parse_scalar("1/4-1/8*sqrt2")  # (2 - sqrt2) / 8
    corr = [[hi, lo], [lo, hi]]
    anti = [[lo, hi], [hi, lo]]
    return Behavior(
        VB_SCENARIO,
        [[corr, corr], [corr, anti], [_VB_QUANTUM_DECIMALS[2, 0], _VB_QUANTUM_DECIMALS[2, 1]]],
    )


_BUILDERS = {
    "battle_of_sexes": lambda c: StrategicGame.from_pairs([[(2, 1), (0, 0)], [(0, 0), (1, 2)]]),
    "coordination": lambda c: StrategicGame.from_pairs([[(1, 1), (0, 0)], [(0, 0), (1, 1)]]),
    "chsh_game": lambda c: _chsh_game(),
    "pr_box": lambda c: _pr_box(),
    "chsh_quantum": lambda c: _chsh_quantum(),
    "chsh_uniform": lambda c: uniform_behavior(CHSH_SCENARIO),
    "chsh_prior": lambda c: Prior.uniform(CHSH_SCENARIO),
    "vb_game": _vb_game,
    "vb_local_opt": lambda c: deterministic_behavior(VB_SCENARIO, (0, 0, 0), (0, 0)),
    "vb_ns_opt": lambda c: _vb_ns_opt(),
    "vb_quantum": lambda c: _vb_quantum(),
    "vb_prior": lambda c: Prior.unit(VB_SCENARIO),
}

PRESET_NAMES = tuple(_BUILDERS)


def preset(name, c=None):
    """Return the named preset; ``c`` is only used (and required) by ``vb_game``."""
    try:
        builder = _BUILDERS[name]
    except KeyError:
        raise PresetError(f"unknown preset {name!r}; known: {', '.join(PRESET_NAMES)}") from None
    return builder(c)


def canonical_prior(name):
    """Prior that belongs with a preset's family (CHSH: 1/4 each, VB: unit)."""
    if name.startswith("chsh"):
        return preset("chsh_prior")
    if name.startswith("vb"):
        return preset("vb_prior")
    raise PresetError(f"preset {name!r} has no canonical prior")


def declared_tolerance(name):
    """Tolerance at which a preset behavior validates."""
    return DECIMAL_TOLERANCE if name == "vb_quantum" else ZERO
