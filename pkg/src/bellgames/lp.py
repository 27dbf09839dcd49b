"""Exact two-phase simplex over an ordered field.

The solver works with any scalar type supporting ``+ - * /`` and comparison
with ``0``.  Inputs are normalised to :class:`fractions.Fraction` when every
coefficient is rational and to :class:`~bellgames.numeric.QuadExt`
otherwise; results are always returned as ``QuadExt``.

Pivoting follows Bland's rule (lowest index enters, lowest basic index
leaves on ties), which guarantees termination on degenerate programs.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .numeric import ZERO, QuadExt, as_scalar

__all__ = [
    "LinearProgram",
    "LpOutcome",
    "LpError",
    "solve",
    "feasible_point",
    "constraint_residuals",
    "rank",
]

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"


class LpError(ValueError):
    """Malformed linear program."""


@dataclass
class LinearProgram:
    """Maximize ``objective . v`` subject to equalities, ``<=`` rows and bounds.

    ``var_bounds`` holds one ``(lower, upper)`` pair per variable, ``None``
    meaning unbounded on that side.  When omitted every variable is
    nonnegative, as in most textbook formulations.
    """

    num_vars: int
    objective: list = None
    eq_constraints: list = field(default_factory=list)
    ineq_constraints: list = field(default_factory=list)
    var_bounds: list = None

    def __post_init__(self):
        n = self.num_vars
        if n < 0:
            raise LpError("num_vars must be nonnegative")
        if self.objective is None:
            self.objective = [0] * n
        if len(self.objective) != n:
            raise LpError(f"objective has length {len(self.objective)}, expected {n}")
        for kind in ("eq_constraints", "ineq_constraints"):
            rows = [(list(c), r) for c, r in getattr(self, kind)]
            for coeffs, _ in rows:
                if len(coeffs) != n:
                    raise LpError(f"{kind}: row of length {len(coeffs)}, expected {n}")
            setattr(self, kind, rows)
        if self.var_bounds is None:
            self.var_bounds = [(0, None)] * n
        if len(self.var_bounds) != n:
            raise LpError("var_bounds needs one (lower, upper) pair per variable")


@dataclass
class LpOutcome:
    status: str
    value: QuadExt = None
    point: list = None
    basis: tuple = None
    ray: list = None
    phase_one_value: QuadExt = None
    pivots: int = 0

    @property
    def optimal(self):
        return self.status == OPTIMAL

    @property
    def feasible(self):
        return self.status in (OPTIMAL, UNBOUNDED)


def _field_of(values):
    for v in values:
        if isinstance(v, QuadExt) and v.root2:
            return lambda u: as_scalar(u)
    return lambda u: as_scalar(u).rat


def _lift(v):
    return v if isinstance(v, QuadExt) else QuadExt(v)


class _Tableau:
    """Dense tableau ``T s = rhs`` with a reduced-cost row (maximization)."""

    def __init__(self, rows, rhs, basis, zero):
        self.rows = rows
        self.rhs = rhs
        self.basis = basis
        self.zero = zero
        self.pivots = 0

    def pivot(self, r, j, cost):
        rows, rhs = self.rows, self.rhs
        prow = rows[r]
        piv = prow[j]
        if piv != 1:
            inv = 1 / piv
            prow = rows[r] = [v * inv if v else v for v in prow]
            rhs[r] = rhs[r] * inv
        nz = [k for k, v in enumerate(prow) if v]
        prhs = rhs[r]
        for i, row in enumerate(rows):
            if i == r:
                continue
            f = row[j]
            if f:
                for k in nz:
                    row[k] = row[k] - f * prow[k]
                rhs[i] = rhs[i] - f * prhs
        f = cost[j]
        if f:
            for k in nz:
                cost[k] = cost[k] - f * prow[k]
            cost[-1] = cost[-1] - f * prhs
        self.basis[r] = j
        self.pivots += 1

    def run(self, cost, allowed):
        """Bland simplex until optimal; returns the unbounded column or None."""
        while True:
            enter = next((j for j in allowed if cost[j] > 0), None)
            if enter is None:
                return None
            best, best_ratio = None, None
            for i, row in enumerate(self.rows):
                a = row[enter]
                if a > 0:
                    ratio = self.rhs[i] / a
                    if (
                        best is None
                        or ratio < best_ratio
                        or (ratio == best_ratio and self.basis[i] < self.basis[best])
                    ):
                        best, best_ratio = i, ratio
            if best is None:
                return enter
            self.pivot(best, enter, cost)


def _standard_form(lp, conv):
    """Rewrite ``lp`` as ``max c.s, A s = b, s >= 0``.

    Returns the rows plus, per original variable, ``(offset, [(col, coef)])``
    so that ``v_j = offset + sum(coef * s_col)``.
    """
    n = lp.num_vars
    zero = conv(0)
    subst = []
    ncols = 0
    bound_rows = []
    for j, (lo, hi) in enumerate(lp.var_bounds):
        lo = None if lo is None else conv(lo)
        hi = None if hi is None else conv(hi)
        if lo is not None:
            subst.append((lo, [(ncols, 1)]))
            if hi is not None:
                bound_rows.append((ncols, hi - lo))
            ncols += 1
        elif hi is not None:
            subst.append((hi, [(ncols, -1)]))
            ncols += 1
        else:
            subst.append((zero, [(ncols, 1), (ncols + 1, -1)]))
            ncols += 2

    def expand(coeffs, rhs):
        row = [zero] * ncols
        rhs = conv(rhs)
        for j in range(n):
            c = conv(coeffs[j])
            if not c:
                continue
            off, terms = subst[j]
            rhs = rhs - c * off
            for col, sgn in terms:
                row[col] = row[col] + c * sgn
        return row, rhs

    eqs = [expand(c, r) for c, r in lp.eq_constraints]
    ineqs = [expand(c, r) for c, r in lp.ineq_constraints]
    for col, ub in bound_rows:
        row = [zero] * ncols
        row[col] = conv(1)
        ineqs.append((row, ub))

    obj = [zero] * ncols
    const = zero
    for j in range(n):
        c = conv(lp.objective[j])
        if not c:
            continue
        off, terms = subst[j]
        const = const + c * off
        for col, sgn in terms:
            obj[col] = obj[col] + c * sgn
    return ncols, eqs, ineqs, obj, const, subst


def solve(lp):
    """Solve ``lp`` exactly.

    Returns an :class:`LpOutcome`.  ``optimal`` outcomes carry the value, a
    basic optimal point and the basic column labels; ``infeasible`` ones the
    positive phase-one optimum (the minimal total infeasibility); and
    ``unbounded`` ones a feasible point with an improving ray.
    """
    if not isinstance(lp, LinearProgram):
        raise LpError("solve() expects a LinearProgram")
    values = list(lp.objective)
    for c, r in lp.eq_constraints + lp.ineq_constraints:
        values.extend(c)
        values.append(r)
    for lo, hi in lp.var_bounds:
        values.extend(v for v in (lo, hi) if v is not None)
    conv = _field_of(as_scalar(v) for v in values)
    zero, one = conv(0), conv(1)

    ncols, eqs, ineqs, obj, const, subst = _standard_form(lp, conv)
    m_eq, m_in = len(eqs), len(ineqs)
    nslack = m_in
    # columns: structural [0, ncols), slacks, then artificials
    rows, rhs, basis = [], [], []
    art_rows = []
    for i, (row, b) in enumerate(eqs + ineqs):
        full = row + [zero] * nslack
        if i >= m_eq:
            full[ncols + i - m_eq] = one
        if b < 0:
            full = [-v for v in full]
            b = -b
        rows.append(full)
        rhs.append(b)
        if i >= m_eq and full[ncols + i - m_eq] > 0:
            basis.append(ncols + i - m_eq)
        else:
            basis.append(None)
            art_rows.append(i)

    nart = len(art_rows)
    total = ncols + nslack + nart
    for i, row in enumerate(rows):
        row.extend([zero] * nart)
    for k, i in enumerate(art_rows):
        rows[i][ncols + nslack + k] = one
        basis[i] = ncols + nslack + k

    tab = _Tableau(rows, rhs, basis, zero)
    real_cols = list(range(ncols + nslack))

    if nart:
        # phase one: maximize -sum(artificials)
        cost = [zero] * (total + 1)
        for k in range(nart):
            cost[ncols + nslack + k] = -one
        for i in art_rows:
            for k, v in enumerate(rows[i]):
                if v:
                    cost[k] = cost[k] + v
            cost[-1] = cost[-1] + rhs[i]
        tab.run(cost, list(range(total)))
        infeas = sum((tab.rhs[i] for i, bj in enumerate(tab.basis) if bj >= ncols + nslack), zero)
        if infeas > 0:
            return LpOutcome(INFEASIBLE, phase_one_value=_lift(infeas), pivots=tab.pivots)
        # drive zero-valued artificials out of the basis, dropping redundant rows
        i = 0
        while i < len(tab.rows):
            if tab.basis[i] >= ncols + nslack:
                j = next((k for k in real_cols if tab.rows[i][k]), None)
                if j is None:
                    del tab.rows[i], tab.rhs[i], tab.basis[i]
                    continue
                tab.pivot(i, j, [zero] * (total + 1))
            i += 1

    cost = [zero] * (total + 1)
    for k in range(ncols):
        cost[k] = obj[k]
    for i, bj in enumerate(tab.basis):
        cb = cost[bj] if bj < ncols else zero
        if cb:
            for k, v in enumerate(tab.rows[i]):
                if v:
                    cost[k] = cost[k] - cb * v
            cost[-1] = cost[-1] - cb * tab.rhs[i]
    # basic columns now carry zero reduced cost; cost[-1] is -(c_B . x_B)
    unbounded_col = tab.run(cost, real_cols)

    s = [zero] * (ncols + nslack)
    for i, bj in enumerate(tab.basis):
        s[bj] = tab.rhs[i]

    def to_original(vec, with_offset=True):
        out = []
        for off, terms in subst:
            v = off if with_offset else zero
            for col, sgn in terms:
                v = v + sgn * vec[col]
            out.append(_lift(v))
        return out

    point = to_original(s)
    labels = tuple(sorted(tab.basis))
    if unbounded_col is not None:
        d = [zero] * (ncols + nslack)
        d[unbounded_col] = one
        for i, bj in enumerate(tab.basis):
            d[bj] = -tab.rows[i][unbounded_col]
        return LpOutcome(
            UNBOUNDED, point=point, ray=to_original(d, with_offset=False), pivots=tab.pivots
        )
    value = sum((_lift(as_scalar(c)) * v for c, v in zip(lp.objective, point)), ZERO)
    return LpOutcome(OPTIMAL, value=value, point=point, basis=labels, pivots=tab.pivots)


def feasible_point(num_vars, eq_constraints=(), ineq_constraints=(), var_bounds=None):
    """Phase-one only: a feasible point, or an ``infeasible`` verdict."""
    lp = LinearProgram(
        num_vars,
        None,
        list(eq_constraints),
        list(ineq_constraints),
        None if var_bounds is None else list(var_bounds),
    )
    return solve(lp)


def constraint_residuals(lp, point):
    """Exact violations of ``point`` as ``(kind, index, amount)`` triples.

    An empty list means the point satisfies every constraint of ``lp``.
    """
    v = [as_scalar(x) for x in point]
    out = []

    def dot(coeffs):
        return sum((as_scalar(c) * x for c, x in zip(coeffs, v)), ZERO)

    for i, (c, r) in enumerate(lp.eq_constraints):
        d = dot(c) - as_scalar(r)
        if d:
            out.append(("eq", i, d))
    for i, (c, r) in enumerate(lp.ineq_constraints):
        d = dot(c) - as_scalar(r)
        if d > 0:
            out.append(("ineq", i, d))
    for j, (lo, hi) in enumerate(lp.var_bounds):
        if lo is not None and v[j] < as_scalar(lo):
            out.append(("lower", j, as_scalar(lo) - v[j]))
        if hi is not None and v[j] > as_scalar(hi):
            out.append(("upper", j, v[j] - as_scalar(hi)))
    return out


def rank(rows):
    """Exact rank of a matrix given as a list of rows."""
    values = [as_scalar(v) for row in rows for v in row]
    conv = _field_of(values)
    m = [[conv(v) for v in row] for row in rows]
    r = 0
    ncols = len(m[0]) if m else 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        pr = m[r]
        inv = 1 / pr[c]
        for i in range(r + 1, len(m)):
            f = m[i][c]
            if f:
                f = f * inv
                m[i] = [a - f * b for a, b in zip(m[i], pr)]
        r += 1
        if r == len(m):
            break
    return r
