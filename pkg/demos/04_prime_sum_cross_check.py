"""The independent route: truncated prime sums against the closed forms.

kappa(q) equals (q-1)/2 (v_q + w_q) and r(q) equals (q-1)/2 f_q in the
limit; truncating the prime sums at x already lands close for small q, and
entirely different machinery computes the two sides (a segmented sieve
versus character sums and special functions).
"""
from ekcyclo import bias, compute_record, s12, truncated_sums

X = 10 ** 7
sums = truncated_sums([3, 5, 7], X)
print(f"truncation at x = {X:.0e}")
for q in (3, 5, 7):
    rec = compute_record(q)
    half = (q - 1) / 2
    t = sums[q]
    print(f"q={q}: (q-1)/2 (v+w) = {half * (t.v + t.w):+.6f} vs kappa = {rec.kappa:+.6f}"
          f"   | (q-1)/2 f = {half * t.f:+.6f} vs r = {rec.r:+.6f}")

print("\norder-weighted sums S1/S2 and the residue-class bias:")
for q in (3, 5, 7):
    o = s12(q, 10 ** 6)
    print(f"q={q}: S1 = {o.s1:.6f}, S2 = {o.s2:.6f} (+-{o.tail:.1e}), "
          f"pi(1e6;q,1) - pi(1e6;q,-1) = {bias(10 ** 6, q):+d}")
