"""Truncated prime-sum estimators over the residue classes +-1 mod q.

These sums converge (conditionally, and slowly) to the same quantities the
character-sum route computes in closed form:

    f_q(x): sum over prime powers p^m <= x of +-1/(m p^m)
    g_q(x): the m = 1 part of f_q(x)
    w_q(x): (1/log q) sum over primes of +-log(p)/p
    v_q(x): (1/log q) sum over prime powers, m >= 2, of +-log(p)/p^m

with sign +1 for p^m = 1 (mod q) and -1 for p^m = -1 (mod q); the pairs
((q-1)/2 f_q, r(q)) and ((q-1)/2 (v_q + w_q), kappa(q)) form the
independent cross-route oracle.  Primes are streamed through a segmented
sieve; every reduction is an exactly-rounded fsum per segment, merged with
Neumaier compensation in segment order, so results are deterministic for a
fixed segment size.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .primes import DEFAULT_SEGMENT_SIZE, _sieve_segments, mult_order, simple_sieve


class _Acc:
    """Neumaier accumulator (deterministic merge of segment partials)."""

    __slots__ = ("total", "comp")

    def __init__(self):
        self.total = 0.0
        self.comp = 0.0

    def add(self, v: float):
        t = self.total + v
        if abs(self.total) >= abs(v):
            self.comp += (self.total - t) + v
        else:
            self.comp += (v - t) + self.total
        self.total = t

    def value(self) -> float:
        return self.total + self.comp


@dataclass(frozen=True)
class TruncatedSums:
    """All four estimators of one (q, x) pair."""

    q: int
    x: float
    f: float
    g: float
    v: float
    w: float


def _power_terms(x: float) -> list[tuple[int, int, int]]:
    """(p, m, p^m) for m >= 2, p^m <= x, ascending in p^m."""
    out = []
    for p in simple_sieve(math.isqrt(int(x))):
        p = int(p)
        pm = p * p
        m = 2
        while pm <= x:
            out.append((p, m, pm))
            pm *= p
            m += 1
    out.sort(key=lambda t: t[2])
    return out


def truncated_sums(qs, x: float, segment_size: int = DEFAULT_SEGMENT_SIZE) -> dict[int, TruncatedSums]:
    """f/g/v/w for several moduli in a single pass over the primes <= x."""
    qs = [int(q) for q in qs]
    acc = {q: {"inv": _Acc(), "logp": _Acc()} for q in qs}  # signed class sums, m = 1
    for start, mask in _sieve_segments(0, int(x), segment_size):
        p = (start + np.flatnonzero(mask)).astype(np.float64)
        if p.size == 0:
            continue
        logs = np.log(p)
        for q in qs:
            residues = p % q
            for sign, cls in ((1.0, 1.0), (-1.0, float(q - 1))):
                sel = residues == cls
                if not sel.any():
                    continue
                acc[q]["inv"].add(sign * math.fsum(1.0 / p[sel]))
                acc[q]["logp"].add(sign * math.fsum(logs[sel] / p[sel]))
    powers = _power_terms(x)
    out = {}
    for q in qs:
        f_pow, v_pow = [], []
        for p, m, pm in powers:
            rem = pm % q
            if rem == 1:
                sign = 1.0
            elif rem == q - 1:
                sign = -1.0
            else:
                continue
            f_pow.append(sign / (m * pm))
            v_pow.append(sign * math.log(p) / pm)
        g = acc[q]["inv"].value()
        w = acc[q]["logp"].value() / math.log(q)
        f = g + math.fsum(f_pow)
        v = math.fsum(v_pow) / math.log(q)
        out[q] = TruncatedSums(q=q, x=float(x), f=f, g=g, v=v, w=w)
    return out


def f_q_trunc(q: int, x: float, segment_size: int = DEFAULT_SEGMENT_SIZE) -> float:
    """Signed sum of 1/(m p^m) over prime powers p^m <= x, classes +-1 mod q."""
    if x < 2:
        raise ValueError("x must be >= 2")
    return truncated_sums([q], x, segment_size)[q].f


def g_q_trunc(q: int, x: float, segment_size: int = DEFAULT_SEGMENT_SIZE) -> float:
    """Signed sum of 1/p over primes p <= x in the classes +-1 mod q."""
    if x < 2:
        raise ValueError("x must be >= 2")
    return truncated_sums([q], x, segment_size)[q].g


def w_q_trunc(q: int, x: float, segment_size: int = DEFAULT_SEGMENT_SIZE) -> float:
    """(1/log q) times the signed sum of log(p)/p over primes p <= x."""
    if x < 2:
        raise ValueError("x must be >= 2")
    return truncated_sums([q], x, segment_size)[q].w


def v_q_trunc(q: int, x: float, segment_size: int = DEFAULT_SEGMENT_SIZE) -> float:
    """(1/log q) times the signed sum of log(p)/p^m, m >= 2, p^m <= x."""
    if x < 4:
        raise ValueError("x must be >= 4")
    return truncated_sums([q], x, segment_size)[q].v


@dataclass(frozen=True)
class OrderSums:
    """S1/S2 order-weighted sums with the truncation tail as a radius."""

    s1: float
    s2: float
    tail: float


def s12(q: int, cutoff: int) -> OrderSums:
    """S1 = sum_{ord_q(p) >= 2} log p/(p^ord - 1), S2 likewise for ord_q(p^2).

    Terms are kept while p^ord <= cutoff; the reported tail radius bounds
    the discarded mass by sum_{n > cutoff} log n/(n(n-1)).
    """
    if cutoff < 2:
        raise ValueError("cutoff must be >= 2")
    log_cut = math.log(cutoff)
    s1, s2 = [], []
    for p in simple_sieve(math.isqrt(cutoff)):
        p = int(p)
        if p == q:
            continue
        ord1 = mult_order(p, q)
        ord2 = ord1 // math.gcd(ord1, 2)
        lp = math.log(p)
        # float pre-check only guards the bignum power; the exact test decides
        if ord1 >= 2 and ord1 * lp <= log_cut + 1e-9 and p ** ord1 <= cutoff:
            s1.append(lp / (p ** ord1 - 1))
        if ord2 >= 2 and ord2 * lp <= log_cut + 1e-9 and p ** ord2 <= cutoff:
            s2.append(lp / (p ** ord2 - 1))
    tail = (math.log(cutoff) + 1.0) / cutoff
    return OrderSums(s1=math.fsum(s1), s2=math.fsum(s2), tail=tail)


def bias(t: float, q: int, segment_size: int = DEFAULT_SEGMENT_SIZE) -> int:
    """pi(t; q, 1) - pi(t; q, -1) via the segmented sieve."""
    if t < 2:
        raise ValueError("t must be >= 2")
    plus = minus = 0
    for start, mask in _sieve_segments(0, int(t), segment_size):
        p = start + np.flatnonzero(mask)
        if p.size == 0:
            continue
        residues = p % q
        plus += int(np.count_nonzero(residues == 1))
        minus += int(np.count_nonzero(residues == q - 1))
    return plus - minus
