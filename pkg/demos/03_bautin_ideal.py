"""The ideal of displacement coefficients and order prediction.

Six generators - five linear forms plus the cube of the center direction -
generate the localized ideal of displacement coefficients.  The first
nonvanishing Melnikov order of an arc is the minimal eps-valuation of the
generators along it, and a Nakayama-style certificate upgrades "the tails
lie in m times the leading ideal" to exact equality of ideals.
"""

import random
from fractions import Fraction as F

from raylien import CASES, MultiPoly, ParamArc, bautin_generators, melnikov, predict_order
from raylien.bautin import nakayama_certify, rescale_lambdas

print(__doc__)

for a, b in ((1, 1), (1, -1), (-1, 1)):
    gens = bautin_generators(a, b)
    print(f"  (a, b) = ({a:+d}, {b:+d}):  " + ", ".join(str(g) for g in gens))
print()

print("Prediction vs. recursion on random arcs (global center):")
rng = random.Random(7)
case = CASES["global-center"]
for trial in range(6):
    depth = rng.randint(0, 2)
    rows = [[] for _ in range(6)]
    for _ in range(depth):
        c = F(rng.randint(-3, 3))
        tuned = [0, -3 * c, c, -3 * c, 0, 0]
        for j in range(6):
            rows[j].append(tuned[j])
    tail = [F(rng.randint(-3, 3)) for _ in range(6)]
    if all(t == 0 for t in tail):
        tail[0] = F(1)
    for j in range(6):
        rows[j].append(tail[j])
    arc = ParamArc.from_rows(rows)
    pred = predict_order(arc, case)
    got = melnikov(arc, case).order
    print(f"  arc #{trial}: predicted {pred}, recursion {got}")
print()

print("Nakayama certification of a two-variable worked example:")
l1, l2 = MultiPoly.variable(2, 0), MultiPoly.variable(2, 1)
b = [l1**2 + l1**2 * l2**2 + l1 * l2**3 + l2**4, l2**3 + l1**4 + l1**3 * l2]
b0 = [l1**2, l2**3]
cert = nakayama_certify(b, b0, 12)
print(f"  certified: (b1, b2) = (l1^2, l2^3) locally, residual zero through degree {cert.truncation_degree}")
print(f"  transition entries (truncated): a~_11 = {cert.entries[0][0]}")
print()

print("General (a, b) reduce to the normalized sign cases by rescaling the")
print("perturbation parameters (common positive factor reported squared):")
scaled, f2 = rescale_lambdas(4, 1, [0, 0, 0, 0, 0, 1])
print(f"  (a, b) = (4, 1), lambda = e6  ->  {[str(c) for c in scaled]},  factor^2 = {f2}")
