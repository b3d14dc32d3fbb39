"""Distribution of kappa(q) over a range of primes: histogram, spikes, delta.

The histogram of kappa(q) is symmetric around 0 with secondary spikes near
+-1/4 (primes with 2q+-1 prime) and +-1/8 (4q+-1); removing those classes
brings the remainder close to the fitted normal curve.  kappa(q) - r(q)
concentrates tightly around 0.
"""
from ekcyclo import (compute_record, delta_stats, envelope_check, histogram,
                     primes_in, spike_report)

Q_MAX = 20_000
records = [compute_record(int(q)) for q in primes_in(2, Q_MAX)[1:]]
kappas = [r.kappa for r in records]
print(f"{len(records)} primes up to {Q_MAX}")

hist = histogram(kappas, bin_width=0.02, lo=-0.6, hi=0.6)
print(f"mean = {hist.mean:+.4f}, sigma = {hist.sigma:.4f}, "
      f"under/overflow = {hist.underflow}/{hist.overflow}")

# crude terminal rendering of the histogram with its normal overlay
centers = hist.bin_centers()
scale = 60.0 / hist.counts.max()
overlay = hist.normal_density(centers) * hist.n * hist.bin_width * scale
for c, cnt, ov in zip(centers[::3], hist.counts[::3], overlay[::3]):
    bar = "#" * int(round(cnt * scale))
    print(f"{c:+.2f} |{bar:<62s}| normal~{int(round(ov))}")

print("\nspike classes (exclusive = stronger neighbours composite):")
for m, b in ((2, 1), (2, -1), (4, 1), (4, -1)):
    rep = spike_report(records, m, b, exclusive=True)
    print(f"  {m}q{'+' if b > 0 else '-'}1: n={rep.count:4d}, "
          f"mean kappa = {rep.sample_mean:+.4f}, target {rep.target:+.4f}")

frac, mean_abs = delta_stats(records, cap=0.08)
print(f"\n|kappa - r| <= 0.08 for {100 * frac:.1f}% of primes; "
      f"mean |delta| = {mean_abs:.4f}")
anomalies = envelope_check(records)
print(f"envelope anomalies: {len(anomalies)}")
