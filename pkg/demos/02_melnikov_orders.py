"""Higher-order Melnikov functions along parameter arcs.

The displacement of the Poincare map expands as d(h, eps) = sum M_n(h) eps^n.
The first nonvanishing coefficient is computed by iterating

    Omega_1 = omega_1,   Omega_{k+1} = omega_{k+1} + sum_{i+j=k+1} r_j omega_i

where r_k certifies the relative exactness of the order-k form.  Everything
is exact rational arithmetic; "vanishes" means the zero polynomial.
"""

from fractions import Fraction as F

from raylien import CASES, ParamArc, center_conditions_order1, melnikov

print(__doc__)

gc = CASES["global-center"]

print("Basis arcs lambda_j = eps (global center): first order, (p, q) with")
print("M_1 = p(h) I2(h) + q(h) I0(h):")
for j in range(1, 7):
    coeffs = [0] * 6
    coeffs[j - 1] = 1
    res = melnikov(ParamArc.linear(coeffs), gc)
    print(f"  lambda_{j}:  n={res.order}   p = {res.p!r:28s} q = {res.q!r}")
print()

print("M_1 vanishes identically exactly on these five linear conditions:")
for case_name in ("global-center", "truncated-pendulum", "eight-interior"):
    forms = center_conditions_order1(CASES[case_name])
    print(f"  {case_name:20s} {forms}")
print()

print("An arc tuned to the center direction clears orders 1 and 2 and first")
print("appears at order 3 with the universal cubic envelope (c = lambda_3):")
for case_name in ("global-center", "truncated-pendulum", "eight-interior"):
    case = CASES[case_name]
    c = F(2)
    arc = ParamArc.linear([0, -3 * case.a * c, c, -3 * case.b * c, 0, 0])
    res = melnikov(arc, case)
    print(f"  {case_name:20s} n={res.order}  p = {res.p}")
    print(f"  {'':20s}        q = {res.q}")
print()

print("Stacking center-tuned stages pushes the first order deeper; a pure")
print("quadratic-in-eps center arc first appears at order 6:")
case = gc
rows = [[0, 0], [0, -3], [0, 1], [0, -3], [0, 0], [0, 0]]  # lambda ~ eps^2
res = melnikov(ParamArc.from_rows(rows), case)
print(f"  order = {res.order},  p = {res.p}")
print(f"             q = {res.q}")
