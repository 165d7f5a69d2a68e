"""Trees meeting the smooth quadric x0*x3 = x1*x2, read in bidegrees.

Run: python3 demos/03_segre_bidegrees.py

The 2d points of T on Q live on P^1 x P^1; for each bidegree (a, b) we check
whether they impose independent conditions.  Two conics meeting in a point
give four points that fail to do so in bidegree (1, 1).
"""

from hilbtrees.experiments import verify_prop_be1

report = verify_prop_be1(a_max=3, b_max=3, d_max=5, attempts=40, types_per_cell=3)
grid = {}
for c in report.cells:
    mark = "." if c["outcome"] == "witness found" else ("D" if c["outcome"] == "defect reproduced" else "?")
    grid.setdefault(c["d"], []).append(mark)
print("d \\ ab" + "".join(f"{a}{b}".rjust(4) for a in range(1, 4) for b in range(1, 4)))
for d, marks in grid.items():
    print(f"{d:<6}" + "".join(m.rjust(4) for m in marks))
defect = next(c for c in report.cells if c["outcome"] == "defect reproduced")
print(f"\nD at (a,b,d)=({defect['a']},{defect['b']},{defect['d']}): (h0, h1)="
      f"({defect['h0']}, {defect['h1']}) on every tree tried")
