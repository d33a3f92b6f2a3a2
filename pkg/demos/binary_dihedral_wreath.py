"""Darboux generators for BD(2) wr S_3 (order 3072); takes about half a minute."""

import time

from poisson_noether import construct, group_from_spec
from poisson_noether.noether import bd_pair

u, v = bd_pair(2)
print("block pair: u =", u)
print("            v =", v)

start = time.perf_counter()
solution = construct(group_from_spec("wreath(BD(n=2),3)"))
print(f"group order {solution.action.order}, built in {time.perf_counter() - start:.1f}s")
for k, f in enumerate(solution.yprime, 1):
    print(f"V{k} has {len(f.num.terms())} numerator terms")
print("bracket table canonical:", solution.report.brackets_ok)
for note in solution.report.discrepancies:
    print("note:", note)
