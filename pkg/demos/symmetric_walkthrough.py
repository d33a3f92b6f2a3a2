"""Invariants, Jacobian and Darboux generators for S_3, printed step by step."""

from poisson_noether import construct, fundamental_invariants, jacobian, symmetric_group
from poisson_noether.noether import generator_names

group = symmetric_group(3)
system = fundamental_invariants(group)
data = jacobian(system)

print("basic invariants:", ", ".join(str(e) for e in system.invs))
print("degrees:", system.degrees, "product", group.order)
print("J =", data.J)
print("smallest invariant power of J:", data.sigma_min_exponent)

solution = construct(group)
for name, f in zip(generator_names(3), solution.generators):
    print(f"{name} = {f}")
print("certified:", solution.report.ok)
