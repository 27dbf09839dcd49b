"""Warm-up: equilibria of ordinary two-player games.

Run with ``python3 demos/01_strategic_warmup.py``.

Battle of the sexes has two pure equilibria and one mixed one. The
coordination game shows why correlation helps: a fair coin that both
players see lets them land on a good outcome every time.
"""
from fractions import Fraction

from bellgames import JointDistribution, check_correlated_eq, check_mixed_profile, check_pure_nash, preset, render

bos = preset("battle_of_sexes")
print("Battle of the sexes, payoffs (Alice, Bob):")
for a in range(2):
    print("   ", [(render(bos.payoff_a[a][b]), render(bos.payoff_b[a][b])) for b in range(2)])

print("\nPure profiles:")
for a in range(2):
    for b in range(2):
        report = check_pure_nash(bos, a, b)
        note = ", ".join(f"{d.player} prefers {d.deviation} (margin {render(d.margin)})" for d in report.violations)
        print(f"  ({a},{b}): {report.verdict}" + (f"  [{note}]" if note else ""))

third = Fraction(1, 3)
mixed = check_mixed_profile(bos, [2 * third, third], [third, 2 * third])
print(
    "\nMixed profile Alice (2/3, 1/3), Bob (1/3, 2/3):",
    mixed.verdict,
    "with expected payoffs",
    tuple(render(v) for v in mixed.expected_payoff),
)
print("Both players get 2/3, worse than either pure equilibrium.")

coord = preset("coordination")
coin = JointDistribution([[Fraction(1, 2), 0], [0, Fraction(1, 2)]])
report = check_correlated_eq(coord, coin)
print("\nCoordination game with a shared fair coin:", report.verdict)
print("Obedience margins:", [render(d.margin) for d in report.margins])
print("Expected payoffs:", tuple(render(v) for v in report.expected_payoff))
