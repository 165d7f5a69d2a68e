"""Bamboos on quadrics, and a linking point at the critical degree.

Run: python3 demos/02_quadrics_and_linking.py
"""

from hilbtrees.experiments import check_assertion_R, verify_theorem_eb1

print("Chains of lines on quadrics of every rank from 4 to n+1 in P^4:")
for rho in (4, 5):
    for d in (4, 5, 6):
        cert = verify_theorem_eb1(4, rho, d, attempts=50)
        print(f"  rank {rho}, d={d}: {cert.verdict} for t in [1, {cert.t_max}] "
              f"(attempt {cert.meta.get('attempt')})")

# At the critical degree x the section has exactly h0(O_W(t)) points when
# the parity is even, and one point too many when it is odd.
for t in (2, 3, 4):
    cert = check_assertion_R(4, t)
    row = cert.profile.at(t)
    print(f"\nt={t}: x={cert.curve.degree}, h0(O_W({t}))={cert.meta['h0_OW']}, "
          f"deg Z={2 * cert.curve.degree}, (h0, h1)={row.pair}")
    if cert.linking:
        lk = cert.linking
        print(f"  removing the point {lk['point']} on final line {lk['line_index']} "
              f"gives (h0, h1)=({lk['h0']}, {lk['h1']})")
