"""The CHSH game as a Bayesian game.

Run with ``python3 demos/02_chsh_walkthrough.py``.

Each player receives one bit (their type) and answers one bit. They win when
the XOR of the answers equals the AND of the types. We compare three kinds
of shared resources: classical randomness, a quantum state, and the PR box.
"""
from bellgames import (
    check_ex_ante,
    check_ex_post,
    classify_behavior,
    expected_payoff,
    gap_report,
    local_bound,
    ns_bound,
    preset,
    render,
)

game = preset("chsh_game")
prior = preset("chsh_prior")  # 1/4 on each type pair

loc = local_bound(game, prior)
ns = ns_bound(game, prior)
print("Best classical strategy:", loc.witness, "earns", render(loc.value))
print("Best no-signaling behavior earns", render(ns.value))
print("Is that optimum a vertex of the no-signaling polytope?", ns.attained_at_vertex)

quantum = preset("chsh_quantum")
pay = expected_payoff(game, quantum, prior)[0]
print("\nThe quantum behavior earns", render(pay), f"~ {pay.approx(6)}")
print("It is", classify_behavior(quantum), "and so is the PR box:", classify_behavior(preset("pr_box")))

print("\nEquilibrium checks (exact, tolerance 0):")
for name in ("pr_box", "chsh_quantum"):
    b = preset(name)
    print(f"  {name}: ex post {check_ex_post(game, b).verdict}, ex ante {check_ex_ante(game, b, prior).verdict}")

print("\nSide by side, rescaled by 4 to count wins over the four type pairs:")
report = gap_report(game, prior, [("quantum", quantum), ("PR box", preset("pr_box"))], scale=4)
print(report.to_text(approx=4))
