"""Which SL_2 presentations of the binary dihedral group fix the rank-one pair."""

from poisson_noether.noether import presentation_search

for n in (1, 2, 3, 4):
    result = presentation_search(n)
    print(f"n={n}: passing {[str(c) for c in result.passing]}")
    for conv, why in result.failures.items():
        print(f"      {conv}: {why}")
