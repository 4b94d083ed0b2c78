"""Exact l2 bookkeeping in the group algebra of F(a, b) and of Z^2."""

from fractions import Fraction

from roamkit import catalog
from roamkit.graph import build_ball
from roamkit.l2 import AlgebraElement, SupportPredicate, mixing_decay, norm2, parseval_check
from roamkit.roaming import build_roaming_pair

p, H, _ = catalog.catalog("F2-cyclic")
ball = build_ball(p, 10)
F, cert, _ = build_roaming_pair(ball, "b", "b", "hyperbolic", H)
FP = SupportPredicate.roaming(ball, F)

x = AlgebraElement(p, {"b": 1, "AAAb": Fraction(1, 2), "a" * 6 + "B": -3, "bab": 2, "aa": 1})
res = parseval_check(x, FP, cert.h_sequence)
print("||x||^2 =", norm2(x), " pieces on the conjugates of F:", [str(v) for v in res.parts],
      " slack:", res.slack)

print("F2, s = t = b:   ", [str(v) for v in mixing_decay(p, "b", "b", H, range(1, 9)).values])
z2, Hx, _ = catalog.catalog("Z2")
print("Z^2, s = y^-1, t = y:", [str(v) for v in mixing_decay(z2, "Y", "y", Hx, range(1, 9)).values])
