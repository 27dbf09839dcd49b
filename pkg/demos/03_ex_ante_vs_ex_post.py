"""A game where the best no-signaling behavior is only an ex ante equilibrium.

Run with ``python3 demos/03_ex_ante_vs_ex_post.py``.

Alice has three types and, for her last type, three actions. The payoff
depends on a parameter c. We compute both bounds, then look at where the
optimal behavior stops being an equilibrium once both types are revealed.
"""
from fractions import Fraction

from bellgames import check_ex_ante, check_ex_post, expected_payoff, local_bound, ns_bound, preset, render

prior = preset("vb_prior")  # unit weight on every type pair

print(" c    local   no-signaling")
for c in (Fraction(1, 2), 1, 2, 4):
    game = preset("vb_game", c=c)
    print(f"{str(c):>4}  {render(local_bound(game, prior).value):>5}   {render(ns_bound(game, prior).value)}")

game = preset("vb_game", c=2)
opt = preset("vb_ns_opt")
print("\nAt c = 2 the tabulated optimum earns", render(expected_payoff(game, opt, prior)[0]))

post = check_ex_post(game, opt)
print("Ex post verdict:", post.verdict)
for (x, y) in post.failing_blocks():
    for d in post.blocks[x, y].violations:
        print(f"  block ({x},{y}): {d.player} told {d.advised} gains by playing {d.deviation}; margin {render(d.margin)}")
print("Ex ante verdict:", check_ex_ante(game, opt, prior).verdict)
print("Before the types are drawn nobody wants to deviate, yet one block is a bad deal in hindsight.")

print("\nThe quantum table has five-decimal entries, so it needs a tolerance:")
q = preset("vb_quantum")
tol = Fraction(1, 1000)
game4 = preset("vb_game", c=4)
pay = expected_payoff(game4, q, prior)[0]
print(f"  payoff at c = 4: {pay.approx(6)}")
print("  ex ante:", check_ex_ante(game4, q, prior, tol).verdict)
post = check_ex_post(game4, q, tol)
print("  ex post fails in blocks", sorted(post.failing_blocks()))
