"""Boundary-value structure along the cut: Wronskians and the cycle jump.

Approaching the negative real axis from above and below gives two period
vectors; their Wronskian W = J0(h+) J2(h-) - J0(h-) J2(h+) is a nonzero
purely imaginary constant on each of (-1/4, 0) and (-inf, -1/4), and the
ratio of the two constants is real and positive.  Crossing the cut jumps
the cycle by twice the vanishing cycle, which is checked directly against
a contour integral around the collapsing branch-point pair.
"""

from raylien import wronskians
from raylien.elliptic import pf_continue, vanishing_cycle_periods

print(__doc__)

print("W on (-1/4, 0) (three probes):")
w1 = {}
for h in (-0.20, -0.15, -0.10):
    w, tag = wronskians(h)
    w1[h] = w
    print(f"  h = {h:+.2f}:  W = {w:.10g}   [{tag}]")
print("W on (-inf, -1/4):")
w2 = {}
for h in (-0.5, -1.0, -2.0):
    w, tag = wronskians(h)
    w2[h] = w
    print(f"  h = {h:+.2f}:  W = {w:.10g}   [{tag}]")

r = w1[-0.15] / w2[-1.0]
print(f"\nRatio W1/W2 = {r.real:.10f} {r.imag:+.2e}i  (real, positive)")
print()

print("Jump across the cut vs the vanishing-cycle period at h = -0.1:")
vc = vanishing_cycle_periods(-0.1)
for d in (1e-3, 5e-4, 2.5e-4):
    up = pf_continue(complex(-0.1, d))
    dn = pf_continue(complex(-0.1, -d))
    jump = up.J0 - dn.J0
    rel = min(abs(jump - 2 * vc.J0), abs(jump + 2 * vc.J0)) / abs(jump)
    print(f"  offset {d:.1e}:  J0 jump = {jump:.8g},  "
          f"|jump -+ 2 J0_vc|/|jump| = {rel:.2e}")
print(f"  2 * J0 over the vanishing cycle = {2*vc.J0:.8g}")
