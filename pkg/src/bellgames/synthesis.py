"""Build common-payoff games around a nonlocal no-signaling vertex.

The payoff table ``u(a,b,x,y)`` is the unknown of a linear program: every
block of the chosen vertex must be a correlated equilibrium of the block
game, and the vertex must beat every deterministic local strategy by a
margin ``eps``.  Maximizing ``eps`` over the box ``|u| <= M`` gives a
canonical game with the largest separation.
"""
from __future__ import annotations

from dataclasses import dataclass

from .analysis import classify_behavior, expected_payoff, local_bound
from .equilibrium import check_ex_ante, check_ex_post
from .lp import LinearProgram, solve
from .model import Game, ModelError, Prior
from .numeric import ONE, ZERO, as_scalar
from .polytope import enumerate_ns_vertices, is_vertex, local_behaviors

__all__ = [
    "SynthesisOptions",
    "SynthesisResult",
    "SynthesisError",
    "SynthesisCheck",
    "synthesis_program",
    "synthesize_game",
    "verify_synthesis",
]


class SynthesisError(ValueError):
    """The recipe cannot produce a game; ``outcome`` holds the LP result if one ran."""

    def __init__(self, message, outcome=None, gap=None):
        super().__init__(message)
        self.outcome = outcome
        self.gap = gap


@dataclass
class SynthesisOptions:
    payoff_box: object = ONE
    prior: Prior = None
    require_ns_optimum: bool = False
    minimum_gap: object = None
    vertex_ceiling: int = 32

    def __post_init__(self):
        self.payoff_box = as_scalar(self.payoff_box)
        if not self.payoff_box > 0:
            raise ModelError("payoff box bound must be positive")
        if self.minimum_gap is not None:
            self.minimum_gap = as_scalar(self.minimum_gap)


@dataclass
class SynthesisResult:
    game: Game
    gap: object
    outcome: object


def synthesis_program(vertex, options=None):
    """The LP in variables ``(u_0, ..., u_{N-1}, eps)``, maximizing ``eps``.

    ``u`` follows the scenario's coordinate order.
    """
    options = options or SynthesisOptions()
    sc = vertex.scenario
    prior = options.prior or Prior.uniform(sc)
    prior.check(sc)
    idx, n = sc.index, sc.size
    p = vertex.p
    M = options.payoff_box
    rows = []

    # obedience in every block: sum_b (u(a',b) - u(a,b)) p(a,b) <= 0
    for x, y in sc.type_pairs():
        na, nb = sc.alice_actions[x], sc.bob_actions[y]
        for a in range(na):
            if not any(p[x][y][a]):
                continue
            for a2 in range(na):
                if a2 == a:
                    continue
                row = [ZERO] * (n + 1)
                for b in range(nb):
                    row[idx[x, y, a2, b]] += p[x][y][a][b]
                    row[idx[x, y, a, b]] -= p[x][y][a][b]
                rows.append((row, ZERO))
        for b in range(nb):
            if not any(p[x][y][a][b] for a in range(na)):
                continue
            for b2 in range(nb):
                if b2 == b:
                    continue
                row = [ZERO] * (n + 1)
                for a in range(na):
                    row[idx[x, y, a, b2]] += p[x][y][a][b]
                    row[idx[x, y, a, b]] -= p[x][y][a][b]
                rows.append((row, ZERO))

    target = vertex.vector()
    weights = [prior.w[x][y] for (x, y, a, b) in sc.coordinates]

    def separation_row(other, eps_coeff):
        # eps_coeff * eps - sum w u (P_vertex - P_other) <= 0
        row = [-(w * (t - o)) for w, t, o in zip(weights, target, other.vector())]
        row.append(eps_coeff)
        return row, ZERO

    for det in local_behaviors(sc):
        rows.append(separation_row(det, ONE))
    if options.require_ns_optimum:
        for v in enumerate_ns_vertices(sc, options.vertex_ceiling, classify=False).vertices:
            rows.append(separation_row(v, ZERO))

    objective = [ZERO] * n + [ONE]
    bounds = [(-M, M)] * n + [(None, None)]
    return LinearProgram(n + 1, objective, [], rows, bounds)


def synthesize_game(vertex, options=None):
    """Common-payoff game in which ``vertex`` is an ex post equilibrium with a gap.

    Raises :class:`SynthesisError` when ``vertex`` is not a nonlocal vertex
    of the no-signaling polytope or when the best gap is not positive (or
    below ``options.minimum_gap``).
    """
    options = options or SynthesisOptions()
    try:
        if classify_behavior(vertex) != "nonlocal_ns" or not is_vertex(vertex):
            raise SynthesisError("the recipe needs a nonlocal vertex of the no-signaling polytope")
    except ModelError as exc:
        raise SynthesisError(str(exc)) from None
    lp = synthesis_program(vertex, options)
    outcome = solve(lp)
    if not outcome.optimal:
        raise SynthesisError(f"synthesis LP ended {outcome.status}", outcome)
    gap = outcome.value
    if not gap > 0:
        raise SynthesisError("no payoff in the box separates the vertex from the local polytope", outcome, gap)
    if options.minimum_gap is not None and gap < options.minimum_gap:
        raise SynthesisError("best gap is below the requested minimum", outcome, gap)
    sc = vertex.scenario
    game = Game(sc, sc.unflatten(outcome.point[:-1]))
    return SynthesisResult(game, gap, outcome)


@dataclass
class SynthesisCheck:
    payoff: object
    local_bound: object
    ex_post: object
    ex_ante: object

    @property
    def advantage(self):
        return self.payoff > self.local_bound

    @property
    def passed(self):
        return self.advantage and self.ex_post.passed and self.ex_ante.passed


def verify_synthesis(game, vertex, prior, tolerance=ZERO):
    """Recompute the recipe's guarantees for ``game`` and ``vertex``."""
    if game.scenario != vertex.scenario:
        raise ModelError("game and vertex are on different scenarios")
    return SynthesisCheck(
        expected_payoff(game, vertex, prior)[0],
        local_bound(game, prior).value,
        check_ex_post(game, vertex, tolerance),
        check_ex_ante(game, vertex, prior, tolerance),
    )
