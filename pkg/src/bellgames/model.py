"""Scenarios, Bayesian games, behaviors, priors and their per-type blocks.

Tables are nested tuples indexed ``[x][y][a][b]`` where ``x``/``y`` are the
types of Alice/Bob and ``a``/``b`` their actions.  Action sets may differ
between types, so the tables are ragged: ``len(table[x][y]) == A(x)`` and
``len(table[x][y][a]) == B(y)``.  All indices are 0-based.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property

from .numeric import ONE, ZERO, QuadExt, as_scalar, render

__all__ = [
    "ModelError",
    "Scenario",
    "Game",
    "Behavior",
    "Prior",
    "StrategicGame",
    "JointDistribution",
    "Residual",
    "ValidationReport",
    "block_game",
    "block_distribution",
    "validate_behavior",
    "deterministic_behavior",
    "uniform_behavior",
    "mix",
]


class ModelError(ValueError):
    """Structural problem with a scenario, table or index."""


def _counts(values, who):
    counts = tuple(int(v) for v in values)
    if not counts:
        raise ModelError(f"{who} needs at least one type")
    if any(c < 1 for c in counts):
        raise ModelError(f"{who} action counts must be positive, got {counts}")
    return counts


@dataclass(frozen=True)
class Scenario:
    """Type and per-type action counts for both players."""

    alice_actions: tuple
    bob_actions: tuple

    def __post_init__(self):
        object.__setattr__(self, "alice_actions", _counts(self.alice_actions, "Alice"))
        object.__setattr__(self, "bob_actions", _counts(self.bob_actions, "Bob"))

    @property
    def alice_types(self):
        return len(self.alice_actions)

    @property
    def bob_types(self):
        return len(self.bob_actions)

    def type_pairs(self):
        return [(x, y) for x in range(self.alice_types) for y in range(self.bob_types)]

    @cached_property
    def coordinates(self):
        """All ``(x, y, a, b)`` in lexicographic order; the behavior vector layout."""
        return tuple(
            (x, y, a, b)
            for x, na in enumerate(self.alice_actions)
            for y, nb in enumerate(self.bob_actions)
            for a in range(na)
            for b in range(nb)
        )

    @cached_property
    def index(self):
        return {c: i for i, c in enumerate(self.coordinates)}

    @property
    def size(self):
        return len(self.coordinates)

    def check_types(self, x, y):
        if not (0 <= x < self.alice_types and 0 <= y < self.bob_types):
            raise ModelError(f"type pair ({x}, {y}) out of range for {self}")

    def build_table(self, data, what="table"):
        """Validate a nested ``[x][y][a][b]`` structure and convert entries."""
        try:
            if len(data) != self.alice_types:
                raise ModelError(f"{what}: expected {self.alice_types} Alice types")
            out = []
            for x, row in enumerate(data):
                if len(row) != self.bob_types:
                    raise ModelError(f"{what}[{x}]: expected {self.bob_types} Bob types")
                out_row = []
                for y, block in enumerate(row):
                    na, nb = self.alice_actions[x], self.bob_actions[y]
                    if len(block) != na or any(len(r) != nb for r in block):
                        raise ModelError(f"{what}[{x}][{y}]: expected a {na}x{nb} block")
                    out_row.append(tuple(tuple(as_scalar(v) for v in r) for r in block))
                out.append(tuple(out_row))
        except TypeError as exc:
            raise ModelError(f"{what}: {exc}") from None
        return tuple(out)

    def table_from_function(self, fn):
        return tuple(
            tuple(
                tuple(tuple(as_scalar(fn(x, y, a, b)) for b in range(nb)) for a in range(na))
                for y, nb in enumerate(self.bob_actions)
            )
            for x, na in enumerate(self.alice_actions)
        )

    def flatten(self, table):
        return [table[x][y][a][b] for (x, y, a, b) in self.coordinates]

    def unflatten(self, vector):
        if len(vector) != self.size:
            raise ModelError(f"expected a vector of length {self.size}")
        idx = self.index
        return self.table_from_function(lambda x, y, a, b: vector[idx[x, y, a, b]])


@dataclass(frozen=True)
class Game:
    """Bayesian game: payoff tables ``u_A(a,b,x,y)`` and ``u_B(a,b,x,y)``.

    Omitting ``payoff_b`` makes a common-payoff game.
    """

    scenario: Scenario
    payoff_a: tuple
    payoff_b: tuple = None

    def __post_init__(self):
        pa = self.scenario.build_table(self.payoff_a, "payoff_a")
        pb = pa if self.payoff_b is None else self.scenario.build_table(self.payoff_b, "payoff_b")
        object.__setattr__(self, "payoff_a", pa)
        object.__setattr__(self, "payoff_b", pb)

    @property
    def common_payoff(self):
        return self.payoff_a == self.payoff_b

    def payoff(self, player):
        if player in ("A", "a", 0):
            return self.payoff_a
        if player in ("B", "b", 1):
            return self.payoff_b
        raise ModelError(f"unknown player {player!r}")

    @classmethod
    def from_function(cls, scenario, fn_a, fn_b=None):
        pa = scenario.table_from_function(fn_a)
        pb = None if fn_b is None else scenario.table_from_function(fn_b)
        return cls(scenario, pa, pb)


@dataclass(frozen=True)
class Behavior:
    """Conditional distribution table ``P(a,b|x,y)``.

    Construction checks the shape only; normalization and no-signaling are
    the job of :func:`validate_behavior` so that rounded tables can exist.
    """

    scenario: Scenario
    p: tuple

    def __post_init__(self):
        object.__setattr__(self, "p", self.scenario.build_table(self.p, "p"))

    def vector(self):
        return self.scenario.flatten(self.p)

    @classmethod
    def from_vector(cls, scenario, vector):
        return cls(scenario, scenario.unflatten(list(vector)))

    def __str__(self):
        lines = []
        for x, y in self.scenario.type_pairs():
            rows = ["  ".join(render(v) for v in r) for r in self.p[x][y]]
            lines.append(f"block ({x},{y}): " + " | ".join(rows))
        return "\n".join(lines)


@dataclass(frozen=True)
class Prior:
    """Nonnegative weights ``w(x, y)`` on type pairs (need not sum to one)."""

    w: tuple

    def __post_init__(self):
        try:
            w = tuple(tuple(as_scalar(v) for v in row) for row in self.w)
        except TypeError as exc:
            raise ModelError(f"prior: {exc}") from None
        if not w or any(not row for row in w):
            raise ModelError("prior needs a nonempty weight table")
        flat = [v for row in w for v in row]
        if any(v < 0 for v in flat):
            raise ModelError("prior weights must be nonnegative")
        if not any(v > 0 for v in flat):
            raise ModelError("prior needs at least one positive weight")
        object.__setattr__(self, "w", w)

    @classmethod
    def uniform(cls, scenario):
        n = scenario.alice_types * scenario.bob_types
        weight = QuadExt(1) / n
        return cls([[weight] * scenario.bob_types for _ in range(scenario.alice_types)])

    @classmethod
    def unit(cls, scenario):
        return cls([[ONE] * scenario.bob_types for _ in range(scenario.alice_types)])

    def check(self, scenario):
        if len(self.w) != scenario.alice_types or any(
            len(row) != scenario.bob_types for row in self.w
        ):
            raise ModelError("prior shape does not match the scenario")


def _matrix(data, what):
    try:
        m = tuple(tuple(as_scalar(v) for v in row) for row in data)
    except TypeError as exc:
        raise ModelError(f"{what}: {exc}") from None
    if not m or not m[0] or any(len(r) != len(m[0]) for r in m):
        raise ModelError(f"{what} must be a nonempty rectangular matrix")
    return m


@dataclass(frozen=True)
class StrategicGame:
    """Bimatrix game; ``payoff_b`` defaults to ``payoff_a``."""

    payoff_a: tuple
    payoff_b: tuple = None

    def __post_init__(self):
        pa = _matrix(self.payoff_a, "payoff_a")
        pb = pa if self.payoff_b is None else _matrix(self.payoff_b, "payoff_b")
        if len(pa) != len(pb) or len(pa[0]) != len(pb[0]):
            raise ModelError("payoff matrices differ in shape")
        object.__setattr__(self, "payoff_a", pa)
        object.__setattr__(self, "payoff_b", pb)

    @property
    def rows(self):
        return len(self.payoff_a)

    @property
    def cols(self):
        return len(self.payoff_a[0])

    @classmethod
    def from_pairs(cls, pairs):
        """Build from a matrix of ``(u_A, u_B)`` tuples."""
        return cls([[u for u, _ in row] for row in pairs], [[v for _, v in row] for row in pairs])


@dataclass(frozen=True)
class JointDistribution:
    p: tuple

    def __post_init__(self):
        object.__setattr__(self, "p", _matrix(self.p, "joint distribution"))

    @property
    def rows(self):
        return len(self.p)

    @property
    def cols(self):
        return len(self.p[0])

    def total(self):
        return sum((v for row in self.p for v in row), ZERO)

    def check(self, tolerance=ZERO):
        tol = as_scalar(tolerance)
        if any(v < -tol for row in self.p for v in row):
            raise ModelError("joint distribution has negative entries")
        if abs(self.total() - 1) > tol:
            raise ModelError("joint distribution does not sum to 1")

    @classmethod
    def product(cls, p_a, p_b):
        return cls([[as_scalar(u) * as_scalar(v) for v in p_b] for u in p_a])


def block_game(game, x, y):
    """Strategic-form game played once the type pair ``(x, y)`` is fixed."""
    game.scenario.check_types(x, y)
    return StrategicGame(game.payoff_a[x][y], game.payoff_b[x][y])


def block_distribution(behavior, x, y):
    """The joint action distribution ``P(., .|x, y)``."""
    behavior.scenario.check_types(x, y)
    return JointDistribution(behavior.p[x][y])


@dataclass(frozen=True)
class Residual:
    kind: str  # "negative", "normalization", "alice_marginal", "bob_marginal"
    where: tuple
    residual: QuadExt


@dataclass
class ValidationReport:
    normalized: bool
    alice_no_signaling: bool
    bob_no_signaling: bool
    failures: list = field(default_factory=list)

    @property
    def no_signaling(self):
        return self.alice_no_signaling and self.bob_no_signaling

    @property
    def ok(self):
        return self.normalized and self.no_signaling


def validate_behavior(behavior, tolerance=ZERO):
    """Check nonnegativity, normalization and both no-signaling families.

    A constraint passes when its residual is within ``tolerance`` in absolute
    value.  Marginal equalities are checked for every pair of the other
    party's types, since approximate equality is not transitive.
    """
    tol = as_scalar(tolerance)
    if tol < 0:
        raise ModelError("tolerance must be nonnegative")
    sc, p = behavior.scenario, behavior.p
    failures = []

    for x, y in sc.type_pairs():
        block = p[x][y]
        for a, row in enumerate(block):
            for b, v in enumerate(row):
                if v < -tol:
                    failures.append(Residual("negative", (x, y, a, b), v))
        s = sum((v for row in block for v in row), ZERO) - 1
        if abs(s) > tol:
            failures.append(Residual("normalization", (x, y), s))
    normalized = not failures

    alice_ok = True
    for x, na in enumerate(sc.alice_actions):
        for a in range(na):
            marg = [sum(p[x][y][a], ZERO) for y in range(sc.bob_types)]
            for y1, y2 in itertools.combinations(range(sc.bob_types), 2):
                d = marg[y1] - marg[y2]
                if abs(d) > tol:
                    alice_ok = False
                    failures.append(Residual("alice_marginal", (a, x, y1, y2), d))

    bob_ok = True
    for y, nb in enumerate(sc.bob_actions):
        for b in range(nb):
            marg = [
                sum((p[x][y][a][b] for a in range(sc.alice_actions[x])), ZERO)
                for x in range(sc.alice_types)
            ]
            for x1, x2 in itertools.combinations(range(sc.alice_types), 2):
                d = marg[x1] - marg[x2]
                if abs(d) > tol:
                    bob_ok = False
                    failures.append(Residual("bob_marginal", (b, x1, x2, y), d))

    return ValidationReport(normalized, alice_ok, bob_ok, failures)


def deterministic_behavior(scenario, alice_map, bob_map):
    """Point-mass behavior: Alice plays ``alice_map[x]``, Bob ``bob_map[y]``."""
    alice_map, bob_map = tuple(alice_map), tuple(bob_map)
    if len(alice_map) != scenario.alice_types or len(bob_map) != scenario.bob_types:
        raise ModelError("strategy maps must assign one action per type")
    for x, a in enumerate(alice_map):
        if not 0 <= a < scenario.alice_actions[x]:
            raise ModelError(f"Alice action {a} out of range for type {x}")
    for y, b in enumerate(bob_map):
        if not 0 <= b < scenario.bob_actions[y]:
            raise ModelError(f"Bob action {b} out of range for type {y}")
    return Behavior(
        scenario,
        scenario.table_from_function(
            lambda x, y, a, b: ONE if (a == alice_map[x] and b == bob_map[y]) else ZERO
        ),
    )


def uniform_behavior(scenario):
    return Behavior(
        scenario,
        scenario.table_from_function(
            lambda x, y, a, b: QuadExt(1) / (scenario.alice_actions[x] * scenario.bob_actions[y])
        ),
    )


def mix(behaviors, weights):
    """Convex (or any linear) combination of behaviors on one scenario."""
    behaviors, weights = list(behaviors), [as_scalar(w) for w in weights]
    if not behaviors or len(behaviors) != len(weights):
        raise ModelError("need one weight per behavior")
    sc = behaviors[0].scenario
    if any(b.scenario != sc for b in behaviors):
        raise ModelError("behaviors live on different scenarios")
    vecs = [b.vector() for b in behaviors]
    out = [sum((w * v[i] for w, v in zip(weights, vecs)), ZERO) for i in range(sc.size)]
    return Behavior.from_vector(sc, out)
