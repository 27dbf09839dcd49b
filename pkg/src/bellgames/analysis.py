"""Expected payoffs, local and no-signaling bounds, behavior classification."""
from __future__ import annotations

from dataclasses import dataclass, field

from .equilibrium import check_ex_ante, check_ex_post
from .lp import LinearProgram, solve
from .model import Behavior, ModelError, deterministic_behavior, validate_behavior
from .numeric import ONE, ZERO, as_scalar, render
from .polytope import enumerate_local_strategies, is_local, is_vertex, ns_constraints

__all__ = [
    "BoundResult",
    "GapReport",
    "expected_payoff",
    "local_bound",
    "ns_bound",
    "classify_behavior",
    "gap_report",
]


def _check_pair(game, behavior):
    if game.scenario != behavior.scenario:
        raise ModelError("game and behavior are on different scenarios")


def expected_payoff(game, behavior, prior):
    """Prior-weighted expected payoffs ``(U_A, U_B)`` of ``behavior``."""
    _check_pair(game, behavior)
    sc = game.scenario
    prior.check(sc)
    totals = []
    for table in (game.payoff_a, game.payoff_b):
        total = ZERO
        for x, y in sc.type_pairs():
            w = prior.w[x][y]
            if not w:
                continue
            block = ZERO
            for urow, prow in zip(table[x][y], behavior.p[x][y]):
                for u, p in zip(urow, prow):
                    if u and p:
                        block = block + u * p
            total = total + w * block
        totals.append(total)
    return tuple(totals)


@dataclass
class BoundResult:
    """Optimum of the expected payoff of ``player`` over a behavior set.

    ``witness`` is a strategy pair ``(alice_map, bob_map)`` for the local
    bound and a :class:`Behavior` for the no-signaling bound;
    ``behavior`` is the witness as a behavior in both cases.
    """

    value: object
    witness: object
    behavior: Behavior
    attained_at_vertex: bool
    player: str = "A"


def local_bound(game, prior, player="A"):
    """Maximum over deterministic strategies, by exhaustive enumeration.

    Ties go to the lexicographically first strategy pair.
    """
    sc = game.scenario
    prior.check(sc)
    u = game.payoff(player)
    pairs = sc.type_pairs()
    best, best_val = None, None
    for am, bm in enumerate_local_strategies(sc):
        val = ZERO
        for x, y in pairs:
            w = prior.w[x][y]
            if w:
                val = val + w * u[x][y][am[x]][bm[y]]
        if best_val is None or val > best_val:
            best, best_val = (am, bm), val
    return BoundResult(best_val, best, deterministic_behavior(sc, *best), True, player)


def ns_bound(game, prior, player="A"):
    """Maximum over the no-signaling polytope, solved as an exact LP."""
    sc = game.scenario
    prior.check(sc)
    u = game.payoff(player)
    system = ns_constraints(sc)
    objective = [prior.w[x][y] * u[x][y][a][b] for (x, y, a, b) in sc.coordinates]
    outcome = solve(LinearProgram(sc.size, objective, system.equalities))
    if not outcome.optimal:
        raise ArithmeticError(f"no-signaling LP ended {outcome.status}")
    behavior = Behavior.from_vector(sc, outcome.point)
    return BoundResult(outcome.value, behavior, behavior, is_vertex(behavior), player)


def classify_behavior(behavior, tolerance=ZERO):
    """``"signaling"``, ``"local"`` or ``"nonlocal_ns"``."""
    report = validate_behavior(behavior, tolerance)
    if not report.normalized:
        raise ModelError("behavior is not normalized")
    if not report.no_signaling:
        return "signaling"
    return "local" if is_local(behavior, tolerance) else "nonlocal_ns"


@dataclass
class GapRow:
    name: str
    payoff: object
    ex_post: str
    ex_ante: str


@dataclass
class GapReport:
    rows: list = field(default_factory=list)
    player: str = "A"
    scale: object = ONE

    def to_dict(self):
        return {
            "player": self.player,
            "scale": render(self.scale),
            "rows": [
                {"name": r.name, "payoff": render(r.payoff), "ex_post": r.ex_post, "ex_ante": r.ex_ante}
                for r in self.rows
            ],
        }

    def to_text(self, approx=None):
        head = ["name", "payoff", "ex post", "ex ante"]
        body = []
        for r in self.rows:
            pay = render(r.payoff)
            if approx is not None:
                pay += f" (~{r.payoff.approx(approx)})"
            body.append([r.name, pay, r.ex_post, r.ex_ante])
        widths = [max(len(str(row[i])) for row in [head] + body) for i in range(4)]
        lines = ["  ".join(str(c).ljust(wd) for c, wd in zip(row, widths)).rstrip() for row in [head] + body]
        return "\n".join(lines)


def _verdicts(game, behavior, prior, tolerance):
    try:
        post = check_ex_post(game, behavior, tolerance).verdict
        ante = check_ex_ante(game, behavior, prior, tolerance).verdict
    except ModelError:
        return "invalid", "invalid"
    return post, ante


def gap_report(game, prior, behaviors=(), tolerance=ZERO, scale=ONE, player="A"):
    """Local bound, named behaviors and no-signaling bound side by side.

    ``behaviors`` is a sequence of ``(name, Behavior)``.  ``scale`` multiplies
    every payoff (4 converts uniform-prior values to the per-block sum
    convention); verdicts are unaffected by it.
    """
    scale = as_scalar(scale)
    idx = 0 if player in ("A", "a", 0) else 1
    loc = local_bound(game, prior, player)
    ns = ns_bound(game, prior, player)
    rows = [GapRow("local bound", loc.value * scale, *_verdicts(game, loc.behavior, prior, ZERO))]
    for name, behavior in behaviors:
        pay = expected_payoff(game, behavior, prior)[idx]
        rows.append(GapRow(name, pay * scale, *_verdicts(game, behavior, prior, tolerance)))
    rows.append(GapRow("no-signaling bound", ns.value * scale, *_verdicts(game, ns.behavior, prior, ZERO)))
    return GapReport(rows, "A" if idx == 0 else "B", scale)
