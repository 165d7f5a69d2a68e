"""Degree ranges where one of h0, h1 must vanish, for any k and n.

Run: python3 demos/04_ranges.py

For a hypersurface of degree k in P^n, h1 = 0 once d is small against t and
h0 = 0 once d is large.  The check runs both on random W and on the k-fold
hyperplane x0^k, and also for rational curves of degree d.
"""

from hilbtrees.experiments import verify_prop_fe1, verify_prop_fe2_genus0
from hilbtrees.hilbert import fe1_bounds

n, k = 3, 3
for t in range(1, 6):
    lo, hi = fe1_bounds(n, k, t)
    rep = verify_prop_fe1(n, k, [t], samples=3)
    held = sum(c["outcome"] == "claims hold" for c in rep.cells)
    print(f"t={t}: h1=0 for d<={lo}, h0=0 for d>={hi}; {held}/{len(rep.cells)} samples agree")

for d, t in ((3, 4), (12, 2)):
    rep = verify_prop_fe2_genus0(n, k, d, t, samples=3)
    pairs = sorted({(c["h0"], c["h1"]) for c in rep.cells})
    print(f"rational curves of degree {d} at t={t}: (h0, h1) in {pairs}")
