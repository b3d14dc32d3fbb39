"""Prime utilities: deterministic primality, segmented sieve, primitive roots.

Everything here is exact integer arithmetic; the rest of the library relies
on these routines both for production runs and as test oracles.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

# Witness set proving primality for every n < 3.3e24, in particular all 64-bit
# integers (Sorenson & Webster).
_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)

DEFAULT_SEGMENT_SIZE = 1 << 22


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, valid for all 64-bit inputs."""
    if n < 2:
        return False
    for p in _MR_WITNESSES:
        if n % p == 0:
            return n == p
    d = n - 1
    s = (d & -d).bit_length() - 1
    d >>= s
    for a in _MR_WITNESSES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def simple_sieve(limit: int) -> np.ndarray:
    """All primes <= limit as int64, by a dense Eratosthenes sieve."""
    if limit < 2:
        return np.empty(0, dtype=np.int64)
    mask = np.ones(limit + 1, dtype=bool)
    mask[:2] = False
    for p in range(2, math.isqrt(limit) + 1):
        if mask[p]:
            mask[p * p:: p] = False
    return np.flatnonzero(mask).astype(np.int64)


def _sieve_segments(lo: int, hi: int, segment_size: int):
    """Yield (start, mask) for each segment of (lo, hi]; mask[i] marks start+i prime."""
    if hi <= max(lo, 1):
        return
    base = simple_sieve(math.isqrt(hi))
    start = lo + 1
    while start <= hi:
        stop = min(start + segment_size, hi + 1)  # exclusive
        mask = np.ones(stop - start, dtype=bool)
        if start == 1:
            mask[0] = False
        for p in base:
            p = int(p)
            first = max(p * p, ((start + p - 1) // p) * p)
            if first < stop:
                mask[first - start:: p] = False
        yield start, mask
        start = stop


def primes_in(lo: int, hi: int, segment_size: int = DEFAULT_SEGMENT_SIZE) -> np.ndarray:
    """Ascending primes p with lo < p <= hi (segmented sieve, bounded memory)."""
    if lo < 0 or hi < lo:
        raise ValueError(f"invalid range ({lo}, {hi}]")
    chunks = [start + np.flatnonzero(mask)
              for start, mask in _sieve_segments(lo, hi, segment_size)]
    if not chunks:
        return np.empty(0, dtype=np.int64)
    return np.concatenate(chunks).astype(np.int64)


def count_primes_in(lo: int, hi: int, segment_size: int = DEFAULT_SEGMENT_SIZE) -> int:
    """Number of primes in (lo, hi] without materialising them."""
    return sum(int(mask.sum()) for _, mask in _sieve_segments(lo, hi, segment_size))


def factorize(n: int) -> dict[int, int]:
    """Prime factorisation by trial division; adequate for n up to ~1e14."""
    out: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def mult_order(a: int, q: int) -> int:
    """Least m >= 1 with a^m = 1 (mod q); requires gcd(a, q) = 1."""
    a %= q
    if math.gcd(a, q) != 1:
        raise ValueError(f"gcd({a}, {q}) != 1")
    m = q - 1  # q prime throughout this library
    for p in factorize(m):
        while m % p == 0 and pow(a, m // p, q) == 1:
            m //= p
    return m


@dataclass(frozen=True)
class PrimeContext:
    """An odd prime q with its smallest primitive root g and DFT length n = q - 1."""

    q: int
    g: int
    n: int
    _powers: dict = field(default_factory=dict, repr=False, compare=False)

    def powers(self) -> np.ndarray:
        """g^k mod q for k = 0..n-1; a bijection onto {1, .., q-1}."""
        cached = self._powers.get("p")
        if cached is None:
            cached = _power_table(self.g, self.q, self.n)
            self._powers["p"] = cached
        return cached


def _power_table(g: int, q: int, n: int) -> np.ndarray:
    # baby-step/giant-step layout keeps the Python-level loop at O(sqrt n)
    B = math.isqrt(n) + 1
    row = np.empty(B, dtype=np.int64)
    acc = 1
    for j in range(B):
        row[j] = acc
        acc = acc * g % q
    gB = pow(g, B, q)
    nblocks = (n + B - 1) // B
    col = np.empty(nblocks, dtype=np.int64)
    acc = 1
    for i in range(nblocks):
        col[i] = acc
        acc = acc * gB % q
    table = (col[:, None] * row[None, :]) % q
    return table.reshape(-1)[:n]


def primitive_root(q: int) -> PrimeContext:
    """Smallest positive primitive root modulo an odd prime q."""
    if q < 3 or not is_prime(q):
        raise ValueError(f"{q} is not an odd prime")
    phi = q - 1
    factors = list(factorize(phi))
    g = 2
    while True:
        if all(pow(g, phi // p, q) != 1 for p in factors):
            return PrimeContext(q=q, g=g, n=phi)
        g += 1


@dataclass(frozen=True)
class NeighborFlags:
    """Primality of 2q+1, 2q-1, 4q+1, 4q-1."""

    sg2p: bool
    sg2m: bool
    sg4p: bool
    sg4m: bool


def neighbor_flags(q: int) -> NeighborFlags:
    return NeighborFlags(
        sg2p=is_prime(2 * q + 1),
        sg2m=is_prime(2 * q - 1),
        sg4p=is_prime(4 * q + 1),
        sg4m=is_prime(4 * q - 1),
    )
