"""Equilibrium verification for strategic and Bayesian games.

Every check records the exact margin of each unilateral deviation it
inspects; a deviation is a violation when its margin is below
``-tolerance``.  Margins are gains of the advised action over the
deviation, so nonnegative margins mean "no incentive to deviate".
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .model import (
    ModelError,
    block_distribution,
    block_game,
    validate_behavior,
)
from .numeric import ZERO, as_scalar

__all__ = [
    "Deviation",
    "EquilibriumReport",
    "ExPostReport",
    "check_pure_nash",
    "check_mixed_profile",
    "check_correlated_eq",
    "correlated_margins",
    "check_ex_post",
    "check_ex_ante",
]


@dataclass(frozen=True)
class Deviation:
    player: str
    type: int  # None outside Bayesian checks
    advised: int
    deviation: int
    margin: object


@dataclass
class EquilibriumReport:
    margins: list = field(default_factory=list)
    violations: list = field(default_factory=list)
    expected_payoff: tuple = None

    @property
    def passed(self):
        return not self.violations

    @property
    def verdict(self):
        return "pass" if self.passed else "fail"


def _report(margins, tolerance):
    tol = as_scalar(tolerance)
    return EquilibriumReport(margins, [d for d in margins if d.margin < -tol])


def check_pure_nash(game, a, b):
    """Nash condition for the pure profile ``(a, b)``, evaluated exactly."""
    if not (0 <= a < game.rows and 0 <= b < game.cols):
        raise ModelError(f"action pair ({a}, {b}) out of range")
    ua, ub = game.payoff_a, game.payoff_b
    margins = [Deviation("A", None, a, a2, ua[a][b] - ua[a2][b]) for a2 in range(game.rows) if a2 != a]
    margins += [Deviation("B", None, b, b2, ub[a][b] - ub[a][b2]) for b2 in range(game.cols) if b2 != b]
    report = _report(margins, ZERO)
    report.expected_payoff = (ua[a][b], ub[a][b])
    return report


def _check_distribution(p, n, tol, what):
    if len(p) != n:
        raise ModelError(f"{what} must have {n} entries")
    if any(v < -tol for v in p) or abs(sum(p, ZERO) - 1) > tol:
        raise ModelError(f"{what} is not a probability distribution")


def check_mixed_profile(game, p_a, p_b, tolerance=ZERO):
    """Mixed-strategy equilibrium test.

    Every action in a player's support must earn the best expected payoff
    against the opponent's mixture.  The report carries the expected payoff
    pair of the profile.
    """
    tol = as_scalar(tolerance)
    p_a = [as_scalar(v) for v in p_a]
    p_b = [as_scalar(v) for v in p_b]
    _check_distribution(p_a, game.rows, tol, "p_a")
    _check_distribution(p_b, game.cols, tol, "p_b")
    ua, ub = game.payoff_a, game.payoff_b
    row_val = [sum((ua[a][b] * p_b[b] for b in range(game.cols)), ZERO) for a in range(game.rows)]
    col_val = [sum((ub[a][b] * p_a[a] for a in range(game.rows)), ZERO) for b in range(game.cols)]
    margins = []
    for a in range(game.rows):
        if p_a[a] > 0:
            margins += [Deviation("A", None, a, a2, row_val[a] - row_val[a2]) for a2 in range(game.rows) if a2 != a]
    for b in range(game.cols):
        if p_b[b] > 0:
            margins += [Deviation("B", None, b, b2, col_val[b] - col_val[b2]) for b2 in range(game.cols) if b2 != b]
    report = _report(margins, tol)
    report.expected_payoff = (
        sum((p_a[a] * row_val[a] for a in range(game.rows)), ZERO),
        sum((p_b[b] * col_val[b] for b in range(game.cols)), ZERO),
    )
    return report


def correlated_margins(game, joint):
    """All correlated-equilibrium margins of ``joint`` in ``game``."""
    ua, ub, p = game.payoff_a, game.payoff_b, joint.p
    rows, cols = game.rows, game.cols
    margins = []
    for a in range(rows):
        for a2 in range(rows):
            if a2 != a:
                m = sum(((ua[a][b] - ua[a2][b]) * p[a][b] for b in range(cols) if p[a][b]), ZERO)
                margins.append(Deviation("A", None, a, a2, m))
    for b in range(cols):
        for b2 in range(cols):
            if b2 != b:
                m = sum(((ub[a][b] - ub[a][b2]) * p[a][b] for a in range(rows) if p[a][b]), ZERO)
                margins.append(Deviation("B", None, b, b2, m))
    return margins


def check_correlated_eq(game, joint, tolerance=ZERO):
    """Correlated-equilibrium (obedience) test of a joint distribution."""
    if (joint.rows, joint.cols) != (game.rows, game.cols):
        raise ModelError("joint distribution does not match the game's shape")
    joint.check(tolerance)
    report = _report(correlated_margins(game, joint), tolerance)
    ua, ub, p = game.payoff_a, game.payoff_b, joint.p
    report.expected_payoff = (
        sum((ua[a][b] * p[a][b] for a in range(game.rows) for b in range(game.cols)), ZERO),
        sum((ub[a][b] * p[a][b] for a in range(game.rows) for b in range(game.cols)), ZERO),
    )
    return report


@dataclass
class ExPostReport:
    """Per type pair correlated-equilibrium reports."""

    blocks: dict

    @property
    def passed(self):
        return all(r.passed for r in self.blocks.values())

    @property
    def verdict(self):
        return "pass" if self.passed else "fail"

    def failing_blocks(self):
        return [k for k, r in self.blocks.items() if not r.passed]


def _check_inputs(game, behavior, tolerance):
    if game.scenario != behavior.scenario:
        raise ModelError("game and behavior are on different scenarios")
    if not validate_behavior(behavior, tolerance).ok:
        raise ModelError("behavior is not a no-signaling behavior within tolerance")


def check_ex_post(game, behavior, tolerance=ZERO):
    """Is every block of ``behavior`` a correlated equilibrium of its block game?"""
    _check_inputs(game, behavior, tolerance)
    blocks = {}
    for x, y in game.scenario.type_pairs():
        g = block_game(game, x, y)
        j = block_distribution(behavior, x, y)
        blocks[x, y] = _report(correlated_margins(g, j), tolerance)
    return ExPostReport(blocks)


def check_ex_ante(game, behavior, prior, tolerance=ZERO):
    """Ex ante (equivalently interim) equilibrium test with type weights.

    For Alice of type ``x`` advised ``a`` and deviating to ``a'`` the margin
    is ``sum_{y,b} w(x,y) P(a,b|x,y) (u_A(a,b,x,y) - u_A(a',b,x,y))``; Bob's
    margins are the mirror image.
    """
    _check_inputs(game, behavior, tolerance)
    sc = game.scenario
    prior.check(sc)
    w, p = prior.w, behavior.p
    ua, ub = game.payoff_a, game.payoff_b
    A, B = sc.alice_actions, sc.bob_actions
    margins = []
    for x in range(len(A)):
        for a in range(A[x]):
            for a2 in range(A[x]):
                if a2 == a:
                    continue
                m = ZERO
                for y in range(len(B)):
                    if not w[x][y]:
                        continue
                    s = sum(((ua[x][y][a][b] - ua[x][y][a2][b]) * p[x][y][a][b] for b in range(B[y])), ZERO)
                    m = m + w[x][y] * s
                margins.append(Deviation("A", x, a, a2, m))
    for y in range(len(B)):
        for b in range(B[y]):
            for b2 in range(B[y]):
                if b2 == b:
                    continue
                m = ZERO
                for x in range(len(A)):
                    if not w[x][y]:
                        continue
                    s = sum(((ub[x][y][a][b] - ub[x][y][a][b2]) * p[x][y][a][b] for a in range(A[x])), ZERO)
                    m = m + w[x][y] * s
                margins.append(Deviation("B", y, b, b2, m))
    return _report(margins, tolerance)
