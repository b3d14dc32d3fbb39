"""Character sums for all Dirichlet characters mod q via one DFT.

Indexing the characters by the smallest primitive root g (chi_j(g^k) =
exp(2 pi i j k / (q-1))) turns the family of sums

    S_f(chi_j) = sum_{a=1}^{q-1} chi_j(a) f(a/q)

into a single length-(q-1) DFT of the kernel values f(g^k / q) with the
+i sign convention and no normalisation.  chi_j is odd exactly when j is
odd, and for a real kernel s[q-1-j] = conj(s[j]).
"""
from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np
import scipy.fft

from .dd import DD, DDC, dd_dft, dd_gamma_zeta_kernels
from .primes import PrimeContext
from .special_functions import hurwitz_z2_at_rationals, ln_gamma


class KernelId(enum.Enum):
    LINEAR = "linear"     # f(x) = x
    LNGAMMA = "lngamma"   # f(x) = log Gamma(x)
    ZETA2 = "zeta2"       # f(x) = zeta''(0, x)


class KernelError(ValueError):
    """A kernel produced a non-finite value."""


@dataclass(frozen=True)
class CharacterSums:
    """DFT output s[j] = sum_a chi_j(a) f(a/q).

    With ``half=True`` only j = 0..(q-1)/2 are materialised; the remaining
    indices are determined by conjugate symmetry of the real kernel.
    """

    q: int
    kernel: KernelId
    s: np.ndarray
    half: bool = False


def dft(x) -> np.ndarray:
    """X[j] = sum_k x[k] e^{+2 pi i j k / n}; arbitrary n, O(n log n)."""
    x = np.asarray(x)
    if x.size < 1:
        raise ValueError("dft requires at least one sample")
    return scipy.fft.ifft(x, norm="forward")


def dft_direct(x) -> np.ndarray:
    """Quadratic-time reference transform (test oracle)."""
    x = np.asarray(x, dtype=np.complex128)
    n = x.shape[0]
    j, k = np.meshgrid(np.arange(n), np.arange(n), indexing="ij")
    return np.exp(2j * np.pi * (j * k % n) / n) @ x


def kernel_values(ctx: PrimeContext, kernel: KernelId) -> np.ndarray:
    """f((g^k mod q)/q) for k = 0..q-2, in power order."""
    a = ctx.powers().astype(np.float64)
    x = a / ctx.q
    if kernel is KernelId.LINEAR:
        vals = x
    elif kernel is KernelId.LNGAMMA:
        vals = ln_gamma(x)
    else:
        vals = hurwitz_z2_at_rationals(ctx.powers(), ctx.q)
    bad = np.flatnonzero(~np.isfinite(vals))
    if bad.size:
        k = int(bad[0])
        raise KernelError(
            f"kernel {kernel.value} non-finite at k={k}, a={int(ctx.powers()[k])} (q={ctx.q})")
    return vals


def transform_kernel(vals: np.ndarray, half: bool) -> np.ndarray:
    if half:
        # real input: conj(rfft) realises the +i convention for j <= n/2
        return np.conj(scipy.fft.rfft(vals, axis=-1))
    return dft(vals)


def character_sums(ctx: PrimeContext, kernel: KernelId, half: bool = False) -> CharacterSums:
    """All character sums for one kernel, by a single transform."""
    vals = kernel_values(ctx, kernel)
    return CharacterSums(q=ctx.q, kernel=kernel, s=transform_kernel(vals, half), half=half)


@dataclass(frozen=True)
class CharacterSumsDD:
    """Double-double spectra of the three kernels (full spectrum)."""

    q: int
    b1: DDC
    lg: DDC
    z2: DDC


def character_sums_dd(ctx: PrimeContext) -> CharacterSumsDD:
    """LINEAR / LNGAMMA / ZETA2 sums in double-double, batched in one DFT."""
    a = ctx.powers()
    lin = DD(a.astype(np.float64)) / DD(float(ctx.q))
    lngam, z2 = dd_gamma_zeta_kernels(a, ctx.q)
    n = ctx.n
    batch = DDC.zeros((3, n))
    for row, vals in enumerate((lin, lngam, z2)):
        batch.re[row, :] = vals
    spec = dd_dft(batch)
    return CharacterSumsDD(q=ctx.q, b1=spec[0], lg=spec[1], z2=spec[2])


def spectrum_checks(cs: CharacterSums, vals: np.ndarray) -> dict[str, float]:
    """Residuals of the defining identities (principal sum, symmetry, Parseval)."""
    s = cs.s
    n = vals.shape[0]
    scale = max(1.0, float(np.abs(s[0])))
    out = {"s0": abs(float(s[0].real) - float(np.sum(vals))) / scale}
    energy = float(np.sum(vals * vals)) * n
    mags = s.real * s.real + s.imag * s.imag
    if cs.half:
        total = mags[0] + mags[-1] + 2.0 * np.sum(mags[1:-1])
    else:
        total = float(np.sum(mags))
        out["conj"] = float(np.max(np.abs(s[1:] - np.conj(s[:0:-1])))) / max(
            1.0, float(np.sqrt(np.max(mags))))
    out["parseval"] = abs(total - energy) / max(1.0, energy)
    return out
