"""Exact bounds against a floating-point LP solver.

Run with ``python3 demos/05_float_cross_check.py`` (needs numpy and scipy,
installed by ``pip install -e .[demos]``).

The package solves every LP over exact rationals or Q(sqrt 2). Here the
same no-signaling maximization goes through scipy's HiGHS backend on random
games, and the two answers are compared.
"""
import random
from fractions import Fraction

import numpy as np
from scipy.optimize import linprog

from bellgames import Game, Prior, ns_bound, ns_constraints
from bellgames.presets import VB_SCENARIO

rng = random.Random(1)
sc = VB_SCENARIO
prior = Prior.unit(sc)
system = ns_constraints(sc)
A_eq = np.array([[float(v) for v in coeffs] for coeffs, _ in system.equalities])
b_eq = np.array([float(r) for _, r in system.equalities])

worst = 0.0
for trial in range(20):
    game = Game.from_function(sc, lambda x, y, a, b: Fraction(rng.randint(-9, 9), rng.randint(1, 4)))
    exact = ns_bound(game, prior).value
    c = np.array([-float(game.payoff_a[x][y][a][b]) for (x, y, a, b) in sc.coordinates])
    res = linprog(c, A_eq=A_eq, b_eq=b_eq, bounds=(0, None), method="highs")
    diff = abs(-res.fun - float(exact))
    worst = max(worst, diff)
    print(f"game {trial:2d}: exact {exact!s:>10}  float {-res.fun: .12f}  diff {diff:.1e}")

print(f"\nlargest disagreement: {worst:.1e}")
