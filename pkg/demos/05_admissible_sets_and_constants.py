"""Admissible sets, greedy measure thresholds, and the named constants."""
from ekcyclo import (AdmissibleSet, constants_table, harmonic_threshold,
                     is_admissible, omega)

for elems in ([2], [2, 6], [2, 4], [1, 2], [2, 6, 8, 12]):
    a = AdmissibleSet.of(elems)
    roots = {p: omega(p, a) for p in (2, 3, 5, 7)}
    print(f"A = {a.elements!s:18s} mu = {a.mu:.4f}  omega = {roots}  "
          f"admissible: {is_admissible(a)}")

print("\ngreedy even-multiplier measure thresholds:")
for c in (2.0, 4.0, 6.0):
    n, total = harmonic_threshold(c)
    print(f"  measure > {c}: first reached at N = {n} (mu = {total:.7f})")

print("\nnamed constants (singular-series product truncated at 1e7):")
for const in constants_table(c1_cutoff=10 ** 7).values():
    print(f"  {const.name:12s} = {const.value:.10f}  [{const.expression}]")
