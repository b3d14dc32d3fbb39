"""Admissible sets, measure thresholds, and the explicit proof constants."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .primes import DEFAULT_SEGMENT_SIZE, _sieve_segments, simple_sieve
from .special_functions import CONSTANTS


@dataclass(frozen=True)
class AdmissibleSet:
    """Finite set of distinct positive integers with measure mu = sum 1/a."""

    elements: tuple[int, ...]

    @staticmethod
    def of(values) -> "AdmissibleSet":
        elems = tuple(sorted(int(v) for v in values))
        if any(v <= 0 for v in elems):
            raise ValueError("elements must be positive")
        if len(set(elems)) != len(elems):
            raise ValueError("elements must be distinct")
        return AdmissibleSet(elements=elems)

    @property
    def mu(self) -> float:
        return math.fsum(1.0 / a for a in self.elements)


def omega(p: int, a: AdmissibleSet) -> int:
    """Number of residues X mod p with X prod_i (a_i X + 1) = 0 (mod p).

    Exhaustive scan over all residues; p is small wherever this is used
    (the finite admissibility criterion only needs p <= s + 1).
    """
    if p > 10 ** 6:
        raise ValueError("omega is restricted to p <= 1e6")
    x = np.arange(p, dtype=np.int64)
    acc = x.copy()
    for ai in a.elements:
        acc = acc * ((ai % p) * x % p + 1) % p
    return int(np.count_nonzero(acc == 0))


def is_admissible(a: AdmissibleSet) -> bool:
    """omega(p) < p for all primes p; finitely checkable at p <= s + 1."""
    s = len(a.elements)
    return all(omega(int(p), a) < p for p in simple_sieve(s + 1))


def harmonic_threshold(c: float, even_only: bool = True) -> tuple[int, float]:
    """Least N whose greedy multiplier measure exceeds c, with that measure.

    With ``even_only`` the measure is mu({1, 2, 4, ..., 2N}) =
    1 + sum_{n<=N} 1/(2n), the cheapest growth available when every
    multiplier beyond the unit must be even; otherwise the plain harmonic
    sum of {1, .., N} is used.
    """
    if c <= 0:
        raise ValueError("c must be positive")
    terms = [1.0] if even_only else []
    n = 0
    total = terms[0] if terms else 0.0
    while total <= c:
        n += 1
        terms.append(1.0 / (2 * n) if even_only else 1.0 / n)
        total += terms[-1]
    return n, math.fsum(terms)


def c1_sum(q: int, k: int) -> float:
    """c1(q, k) = (1/4) sum_{j <= (k-1)/2} log(2 j q - 1)/(j log q), odd k."""
    if k < 3 or k % 2 == 0:
        raise ValueError("k must be an odd integer >= 3")
    lq = math.log(q)
    return 0.25 * math.fsum(
        math.log(2 * j * q - 1) / (j * lq) for j in range(1, (k - 1) // 2 + 1))


def c2_sum(k: int) -> float:
    """c2(k) = (1/4) sum_{j <= (k-1)/2} (1/j)(1 + log(2j)/1400) - log log k."""
    if k < 3 or k % 2 == 0:
        raise ValueError("k must be an odd integer >= 3")
    s = math.fsum((1.0 / j) * (1.0 + math.log(2 * j) / 1400.0)
                  for j in range(1, (k - 1) // 2 + 1))
    return 0.25 * s - math.log(math.log(k))


def c2_minimum(k_max: int = 201) -> tuple[int, float]:
    """Minimiser of c2 over odd k <= k_max."""
    best = min(range(3, k_max + 1, 2), key=c2_sum)
    return best, c2_sum(best)


def singular_series_c1(cutoff: int = 10 ** 8,
                       segment_size: int = DEFAULT_SEGMENT_SIZE) -> tuple[float, float]:
    """prod_{p <= cutoff} (1 + 2/(p(p-1))) and a radius bounding the tail.

    The omitted factor is below exp(sum_{n > cutoff} 2/(n(n-1))) =
    exp(2/cutoff), so six digits are stable from cutoff ~ 4e6 on.
    """
    log_total = 0.0
    for start, mask in _sieve_segments(1, cutoff, segment_size):
        p = (start + np.flatnonzero(mask)).astype(np.float64)
        if p.size:
            log_total += float(np.sum(np.log1p(2.0 / (p * (p - 1.0)))))
    value = math.exp(log_total)
    return value, value * math.expm1(2.0 / cutoff)


@dataclass(frozen=True)
class NamedConstant:
    name: str
    value: float
    expression: str


def constants_table(c1_cutoff: int = 10 ** 8) -> dict[str, NamedConstant]:
    """The named constants used in the explicit bounds, with their formulas."""
    kummer_lead = (43.0 - 18.0 * CONSTANTS.zeta3) / 13.0
    c1_value, c1_tail = singular_series_c1(c1_cutoff)
    k_best, c2_best = c2_minimum()
    return {
        "kummer_lead": NamedConstant(
            "kummer_lead", kummer_lead, "(43 - 18 zeta(3))/13"),
        "C1": NamedConstant(
            "C1", c1_value,
            f"prod_p<= {c1_cutoff:.0e} (1 + 2/(p(p-1))), tail radius {c1_tail:.2e}"),
        "c2_argmin": NamedConstant(
            "c2_argmin", float(k_best), "argmin over odd k <= 201 of c2(k)"),
        "c2_min": NamedConstant(
            "c2_min", c2_best,
            "(1/4) sum_j (1/j)(1 + log(2j)/1400) - log log k at the minimiser"),
    }
