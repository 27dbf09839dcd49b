"""From polytope vertices to games that reward nonlocality.

Run with ``python3 demos/04_vertices_and_synthesis.py``.

We list every vertex of the two-bit no-signaling polytope, then, for each
nonlocal vertex, solve for a common payoff table that makes the vertex an
equilibrium in every block while beating every classical strategy.
"""
from bellgames import Prior, enumerate_ns_vertices, render, synthesize_game, verify_synthesis
from bellgames.presets import CHSH_SCENARIO

vertices = enumerate_ns_vertices(CHSH_SCENARIO)
print(f"{len(vertices)} vertices: {len(vertices.local())} deterministic, {len(vertices.nonlocal_())} nonlocal")

prior = Prior.uniform(CHSH_SCENARIO)
for i, v in enumerate(vertices.nonlocal_()):
    result = synthesize_game(v)
    check = verify_synthesis(result.game, v, prior)
    blocks = [
        "".join("+" if u > 0 else "-" if u < 0 else "0" for row in result.game.payoff_a[x][y] for u in row)
        for x, y in CHSH_SCENARIO.type_pairs()
    ]
    print(f"  vertex {i}: gap {render(result.gap)}, payoff signs per block {blocks}, verified {check.passed}")

print("\nEach synthesized game is a relabelled CHSH game: the PR box family is one class.")
