"""No-signaling and local polytopes of a two-party scenario.

The no-signaling polytope is handled in H-representation (normalization,
marginal equalities, nonnegativity).  The local polytope is handled in
V-representation, as the convex hull of the deterministic behaviors.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction

from .lp import LinearProgram, feasible_point, rank
from .model import (
    Behavior,
    ModelError,
    Scenario,
    deterministic_behavior,
    validate_behavior,
)
from .numeric import ZERO, QuadExt, as_scalar

__all__ = [
    "NsConstraintSystem",
    "LocalityCertificate",
    "VertexList",
    "ScenarioTooLarge",
    "DEFAULT_VERTEX_CEILING",
    "ns_constraints",
    "enumerate_local_strategies",
    "local_behaviors",
    "is_local",
    "is_vertex",
    "enumerate_ns_vertices",
]

DEFAULT_VERTEX_CEILING = 32


class ScenarioTooLarge(RuntimeError):
    """Raised when vertex enumeration would exceed the coordinate ceiling."""


@dataclass
class NsConstraintSystem:
    """``eq . P = rhs`` rows plus coordinatewise ``P >= 0``."""

    scenario: Scenario
    equalities: list
    labels: list

    @property
    def index(self):
        return self.scenario.index

    @property
    def size(self):
        return self.scenario.size

    def nonnegativity(self):
        n = self.size
        return [([1 if k == i else 0 for k in range(n)], 0) for i in range(n)]

    def equality_residuals(self, behavior):
        """``(label, residual)`` for every equality that ``behavior`` violates."""
        v = behavior.vector()
        out = []
        for (coeffs, rhs), label in zip(self.equalities, self.labels):
            r = sum((c * x for c, x in zip(coeffs, v) if c), ZERO) - rhs
            if r:
                out.append((label, r))
        return out

    def contains(self, behavior):
        if behavior.scenario != self.scenario:
            return False
        return not self.equality_residuals(behavior) and all(v >= 0 for v in behavior.vector())


def ns_constraints(scenario):
    """Normalization and no-signaling equalities for ``scenario``.

    Marginal equalities relate consecutive types of the other party, which
    is enough to make all marginals equal when the constraints are exact.
    """
    idx, n = scenario.index, scenario.size
    A, B = scenario.alice_actions, scenario.bob_actions
    eqs, labels = [], []

    def row():
        return [0] * n

    for x, y in scenario.type_pairs():
        r = row()
        for a in range(A[x]):
            for b in range(B[y]):
                r[idx[x, y, a, b]] = 1
        eqs.append((r, 1))
        labels.append(("normalization", x, y))
    for x in range(len(A)):
        for a in range(A[x]):
            for y in range(len(B) - 1):
                r = row()
                for b in range(B[y]):
                    r[idx[x, y, a, b]] += 1
                for b in range(B[y + 1]):
                    r[idx[x, y + 1, a, b]] -= 1
                eqs.append((r, 0))
                labels.append(("alice_marginal", a, x, y, y + 1))
    for y in range(len(B)):
        for b in range(B[y]):
            for x in range(len(A) - 1):
                r = row()
                for a in range(A[x]):
                    r[idx[x, y, a, b]] += 1
                for a in range(A[x + 1]):
                    r[idx[x + 1, y, a, b]] -= 1
                eqs.append((r, 0))
                labels.append(("bob_marginal", b, x, x + 1, y))
    return NsConstraintSystem(scenario, eqs, labels)


def enumerate_local_strategies(scenario):
    """All deterministic strategy pairs ``(alice_map, bob_map)``, lexicographically."""
    alice = itertools.product(*(range(n) for n in scenario.alice_actions))
    bob = list(itertools.product(*(range(n) for n in scenario.bob_actions)))
    return [(am, bm) for am in alice for bm in bob]


def local_behaviors(scenario):
    return [deterministic_behavior(scenario, am, bm) for am, bm in enumerate_local_strategies(scenario)]


@dataclass
class LocalityCertificate:
    """Outcome of the local-polytope membership test.

    For local behaviors ``weights`` maps each strategy pair in the support to
    its convex weight; mixing the deterministic behaviors with these weights
    reproduces the input exactly.
    """

    local: bool
    weights: dict = field(default_factory=dict)
    phase_one_value: QuadExt = None

    def __bool__(self):
        return self.local


def is_local(behavior, tolerance=ZERO):
    """Decide membership of ``behavior`` in the local polytope."""
    report = validate_behavior(behavior, tolerance)
    if not report.ok:
        raise ModelError("is_local needs a normalized no-signaling behavior")
    sc = behavior.scenario
    strategies = enumerate_local_strategies(sc)
    idx = sc.index
    k = len(strategies)
    target = behavior.vector()

    columns = []
    for am, bm in strategies:
        col = [0] * sc.size
        for x, y in sc.type_pairs():
            col[idx[x, y, am[x], bm[y]]] = 1
        columns.append(col)
    eqs = [([1] * k, 1)]
    for i in range(sc.size):
        eqs.append(([columns[j][i] for j in range(k)], target[i]))
    outcome = feasible_point(k, eqs)
    if not outcome.feasible:
        return LocalityCertificate(False, phase_one_value=outcome.phase_one_value)
    weights = {strategies[j]: w for j, w in enumerate(outcome.point) if w}
    return LocalityCertificate(True, weights)


def is_vertex(behavior, scenario=None):
    """True iff ``behavior`` is an extreme point of the no-signaling polytope."""
    sc = scenario or behavior.scenario
    if behavior.scenario != sc:
        raise ModelError("behavior and scenario differ")
    system = ns_constraints(sc)
    if not system.contains(behavior):
        raise ModelError("behavior is not in the no-signaling polytope")
    rows = [coeffs for coeffs, _ in system.equalities]
    for i, v in enumerate(behavior.vector()):
        if v == 0:
            rows.append([1 if k == i else 0 for k in range(sc.size)])
    return rank(rows) == sc.size


@dataclass
class VertexList:
    vertices: list
    classification: list

    def __len__(self):
        return len(self.vertices)

    def local(self):
        return [v for v, c in zip(self.vertices, self.classification) if c == "local"]

    def nonlocal_(self):
        return [v for v, c in zip(self.vertices, self.classification) if c == "nonlocal"]


# -- double description ---------------------------------------------------


def _rref(rows, ncols):
    """Reduced row echelon form over Fractions; returns (rows, pivot columns)."""
    m = [[Fraction(v) for v in r] for r in rows]
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = 1 / m[r][c]
        m[r] = [v * inv for v in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    return m[:r], pivots


def _integer_row(values):
    den = 1
    for v in values:
        den = den * v.denominator // math.gcd(den, v.denominator)
    ints = [int(v * den) for v in values]
    return _primitive(ints)


def _primitive(ints):
    g = 0
    for v in ints:
        g = math.gcd(g, v)
    if g > 1:
        return tuple(v // g for v in ints)
    return tuple(ints)


def _dot(h, r):
    return sum(a * b for a, b in zip(h, r) if a)


def _double_description(H):
    """Extreme rays of the pointed cone ``{z : H z >= 0}`` (integer rows)."""
    dim = len(H[0])
    # choose `dim` independent rows for the initial simplicial cone
    chosen, basis_rows = [], []
    for i, h in enumerate(H):
        if rank(basis_rows + [list(h)]) > len(basis_rows):
            chosen.append(i)
            basis_rows.append(list(h))
            if len(chosen) == dim:
                break
    if len(chosen) < dim:
        raise ValueError("cone is not pointed")
    # rays of the initial cone: columns of the inverse of the chosen rows
    aug = [[Fraction(v) for v in basis_rows[i]] + [Fraction(int(i == j)) for j in range(dim)] for i in range(dim)]
    red, _ = _rref(aug, dim)
    inverse_cols = [[red[i][dim + k] for i in range(dim)] for k in range(dim)]
    rays = [_integer_row(col) for col in inverse_cols]

    processed = list(chosen)
    zero_sets = []
    for r in rays:
        z = 0
        for bit, i in enumerate(processed):
            if _dot(H[i], r) == 0:
                z |= 1 << bit
        zero_sets.append(z)

    remaining = [i for i in range(len(H)) if i not in set(chosen)]
    for i in remaining:
        h = H[i]
        bit = len(processed)
        vals = [_dot(h, r) for r in rays]
        pos = [k for k, v in enumerate(vals) if v > 0]
        neg = [k for k, v in enumerate(vals) if v < 0]
        zer = [k for k, v in enumerate(vals) if v == 0]
        new_rays = [rays[k] for k in pos] + [rays[k] for k in zer]
        new_zs = [zero_sets[k] for k in pos] + [zero_sets[k] | (1 << bit) for k in zer]
        need = dim - 2
        for p in pos:
            zp = zero_sets[p]
            for n in neg:
                common = zp & zero_sets[n]
                if bin(common).count("1") < need:
                    continue
                adjacent = True
                for k, zk in enumerate(zero_sets):
                    if k != p and k != n and (zk & common) == common:
                        adjacent = False
                        break
                if not adjacent:
                    continue
                vp, vn = vals[p], vals[n]
                rp, rn = rays[p], rays[n]
                new = _primitive([vp * b - vn * a for a, b in zip(rp, rn)])
                new_rays.append(new)
                new_zs.append(common | (1 << bit))
        rays, zero_sets = new_rays, new_zs
        processed.append(i)
    return rays


def enumerate_ns_vertices(scenario, ceiling=DEFAULT_VERTEX_CEILING, classify=True):
    """Every extreme point of the no-signaling polytope, sorted by coordinates.

    Each vertex is classified ``"local"`` or ``"nonlocal"`` with
    :func:`is_local`.  Scenarios with more than ``ceiling`` coordinates are
    refused with :class:`ScenarioTooLarge`.
    """
    n = scenario.size
    if n > ceiling:
        raise ScenarioTooLarge(f"scenario has {n} coordinates, ceiling is {ceiling}")
    system = ns_constraints(scenario)
    aug = [list(c) + [r] for c, r in system.equalities]
    red, pivots = _rref(aug, n)
    free = [c for c in range(n) if c not in set(pivots)]
    # x = x0 + K t with t indexed by the free columns
    x0 = [Fraction(0)] * n
    for row, pc in zip(red, pivots):
        x0[pc] = row[n]
    K = [[Fraction(0)] * len(free) for _ in range(n)]
    for k, fc in enumerate(free):
        K[fc][k] = Fraction(1)
    for row, pc in zip(red, pivots):
        for k, fc in enumerate(free):
            K[pc][k] = -row[fc]

    if not free:
        vertices = [x0]
    else:
        H = [_integer_row(K[i] + [x0[i]]) for i in range(n)]
        H.append(tuple([0] * len(free) + [1]))
        vertices = []
        for ray in _double_description(H):
            s = ray[-1]
            if s <= 0:
                raise ArithmeticError("no-signaling polytope must be bounded")
            t = [Fraction(v, s) for v in ray[:-1]]
            vertices.append([x0[i] + sum((K[i][k] * t[k] for k in range(len(free)) if K[i][k]), Fraction(0)) for i in range(n)])
    vertices = sorted(set(tuple(v) for v in vertices))
    behaviors = [Behavior.from_vector(scenario, [QuadExt(v) for v in vec]) for vec in vertices]
    labels = []
    if classify:
        labels = ["local" if is_local(b) else "nonlocal" for b in behaviors]
    return VertexList(behaviors, labels)
