"""Build a roaming set and a disjoining sequence for <a> in F(a, b).

Runs both constructions (plain Cayley graph and the graph coned off over
<a>) with s = t = b and prints what each one certifies on B_10.
"""

import time

from roamkit import catalog
from roamkit.graph import build_ball, build_coned_off_ball
from roamkit.roaming import build_roaming_pair


def show(mode, ball, H):
    t0 = time.perf_counter()
    F, cert, cond = build_roaming_pair(ball, "b", "b", mode, H)
    print(f"{mode}: {time.perf_counter() - t0:.1f}s")
    for n in F.neighborhoods:
        print("  V contains M(%s, {%s})" % (n.to_dict(ball.group)["base"], ", ".join(n.to_dict(ball.group)["avoid"])))
    print("  h_k =", ["a^%d" % len(h) if h else "e" for h in cert.h_sequence], "ok:", cert.ok)
    print("  b F^c b meets F^c in", cond.intersection or "nothing", "| strong form:", cond.strong_form)


if __name__ == "__main__":
    p, H, _ = catalog.catalog("F2-cyclic")
    show("hyperbolic", build_ball(p, 10), H)
    show("coned", build_coned_off_ball(p, [H], 10), H)
