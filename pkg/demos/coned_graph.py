"""The coned-off graph of F(a, b) over <a>: thinness, loops, V-sets, shrinking.

Writes coned_ball.dot (radius 2) next to this file.
"""

from pathlib import Path

from roamkit import catalog
from roamkit.graph import Cone, build_coned_off_ball, count_loops, estimate_delta, to_dot, vertex_name
from roamkit.topology import compute_v_set, shrink_neighborhood

p, H, peripherals = catalog.catalog("F2-coned-a")

ball = build_coned_off_ball(p, peripherals, 6)
est = estimate_delta(ball, seed=0)
print(f"delta estimate on B_6: {est.delta} ({est.method})")

edge = ("", Cone("", 0))
print("loops through (e, [H]) by length:", count_loops(ball, edge, 6))

V = compute_v_set(ball, 2, Cone("", 0), {"a"})
print("V_2([H], {a}) =", sorted(vertex_name(p, v) for v in V.vertices), "verified:", V.verified)

big = build_coned_off_ball(p, peripherals, 8)
rep = shrink_neighborhood(big, Cone("", 0), {"a"}, est.delta)
print(f"shrink at [H] with A = {{a}}: r0 = {rep.r0}, |C| = {len(rep.C)}, verified: {rep.verified}")

out = Path(__file__).with_name("coned_ball.dot")
out.write_text(to_dot(build_coned_off_ball(p, peripherals, 2)))
print("wrote", out)
