"""Assembly of kappa(q), r(q), gamma_q+, gamma_q from character sums.

Both parities of characters are reduced to s = 0 data through the
functional equation, which avoids Gauss sums entirely:

    odd chi:   L'/L(1, chi) = log 2pi + gamma + G(conj chi)/B1(conj chi)
    even chi:  L'/L(1, chi) = log 2pi + gamma
                              - Z(conj chi) / (2 G(conj chi))

with B1(chi) = sum_a chi(a) a/q (the LINEAR spectrum), G(chi) =
sum_a chi(a) log Gamma(a/q) (LNGAMMA) and Z(chi) = sum_a chi(a)
zeta''(0, a/q) (ZETA2).  Summed over a conjugation-closed family the
conjugations drop out, so the per-parity totals fold into sums of real
parts over j <= (q-1)/2.

    kappa(q)   = -[ (q-1)/2 (log 2pi + gamma) + sum_{odd j} Re G_j/B1_j ] / log q
    r(q)       = (q-1)/2 log(pi/sqrt q) + sum_{odd j} log |B1_j|
    gamma_q+   = gamma + sum_{even j != 0} [ log 2pi + gamma - Re Z_j/(2 G_j) ]
    gamma_q    = gamma_q+ - kappa(q) log q
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import dd as ddm
from .charsum import (CharacterSums, CharacterSumsDD, KernelId, character_sums_dd,
                      kernel_values, spectrum_checks, transform_kernel)
from .dd import DD, dd_exp, dd_log
from .primes import NeighborFlags, PrimeContext, neighbor_flags, primitive_root
from .special_functions import CONSTANTS, compensated_sum

_C = CONSTANTS.log_2pi + CONSTANTS.euler_gamma


class ComputationError(ArithmeticError):
    """Numeric breakdown (vanishing character sum or failed invariant)."""


@dataclass(frozen=True)
class EkRecord:
    """One output row of the per-prime pipeline."""

    q: int
    kappa: float
    r: float
    gamma_plus: float
    gamma: float
    delta: float
    flags: NeighborFlags


@dataclass(frozen=True)
class KummerCheck:
    q: int
    h1_approx: float
    nearest_int: int
    gap: float


def _half_spectrum(cs: CharacterSums) -> np.ndarray:
    if cs.half:
        return cs.s
    return cs.s[: (cs.q - 1) // 2 + 1]


def _full_spectrum(cs: CharacterSums) -> np.ndarray:
    if not cs.half:
        return cs.s
    # real kernel: s[n-j] = conj(s[j])
    return np.concatenate([cs.s, np.conj(cs.s[-2:0:-1])])


def _fold(n: int, parity: int) -> tuple[np.ndarray, np.ndarray]:
    """Indices of one conjugacy representative per character of a parity.

    Returns (j, w): j ascending in 1..n/2 with j = parity mod 2, and fold
    weight w in {1, 2} (the middle index n/2 is self-conjugate).
    """
    mid = n // 2
    j = np.arange(2 - parity, mid + 1, 2, dtype=np.int64)
    w = np.where(j < mid, 2.0, 1.0)
    return j, w


def kappa(ctx: PrimeContext, b1: CharacterSums, lg: CharacterSums) -> float:
    """kappa(q) = (gamma_q+ - gamma_q)/log q from LINEAR and LNGAMMA sums."""
    j, w = _fold(ctx.n, parity=1)
    sb = _half_spectrum(b1)[j]
    if np.any(sb == 0):
        raise ComputationError(f"vanishing B1 sum at q={ctx.q}")
    ratios = _half_spectrum(lg)[j] / sb
    total = compensated_sum(w * ratios.real)
    return -(0.5 * ctx.n * _C + total) / math.log(ctx.q)


def kummer_r(ctx: PrimeContext, b1: CharacterSums) -> float:
    """r(q) = log R(q), the log of the product of |L(1, chi)| over odd chi."""
    j, w = _fold(ctx.n, parity=1)
    sb = _half_spectrum(b1)[j]
    mags = np.abs(sb)
    if np.any(mags == 0.0):
        raise ComputationError(f"vanishing B1 sum at q={ctx.q}")
    base = 0.5 * ctx.n * (math.log(math.pi) - 0.5 * math.log(ctx.q))
    return base + compensated_sum(w * np.log(mags))


def gamma_pair(ctx: PrimeContext, b1: CharacterSums, lg: CharacterSums,
               z2: CharacterSums) -> tuple[float, float]:
    """(gamma_q+, gamma_q); the even sum is empty for q = 3 (gamma_q+ = gamma)."""
    j, w = _fold(ctx.n, parity=0)
    gamma_e = CONSTANTS.euler_gamma
    if j.size == 0:
        gplus = gamma_e
    else:
        sl = _half_spectrum(lg)[j]
        if np.any(sl == 0):
            raise ComputationError(f"vanishing L'(0) sum at q={ctx.q}")
        u = (_half_spectrum(z2)[j] / (2.0 * sl)).real
        gplus = gamma_e + compensated_sum(w * (_C - u))
    g = gplus - kappa(ctx, b1, lg) * math.log(ctx.q)
    return gplus, g


def log_deriv_ratios(ctx: PrimeContext, b1: CharacterSums, lg: CharacterSums,
                     z2: CharacterSums) -> np.ndarray:
    """Per-character L'/L(1, chi_j) for j = 1..q-2 (index 0 is NaN)."""
    sb = _full_spectrum(b1)
    sl = _full_spectrum(lg)
    sz = _full_spectrum(z2)
    n = ctx.n
    out = np.full(n, np.nan + 0j, dtype=np.complex128)
    jodd = np.arange(1, n, 2)
    jeven = np.arange(2, n, 2)
    out[jodd] = _C + np.conj(sl[jodd] / sb[jodd])
    if jeven.size:
        out[jeven] = _C - np.conj(sz[jeven] / (2.0 * sl[jeven]))
    return out


# -- double-double route -------------------------------------------------


def _dd_fold_sum(values: DD, weights: np.ndarray) -> DD:
    if values.shape[-1] == 0:
        return DD(0.0)
    return values.scale_pow2(weights).sum()


def assemble_dd(ctx: PrimeContext, sums: CharacterSumsDD) -> dict[str, DD]:
    """kappa/r/gamma_plus/gamma in double-double from the batched spectra."""
    n = ctx.n
    log_q = dd_log(DD(float(ctx.q)))
    c_dd = ddm.LOG_2PI_DD + ddm.EULER_GAMMA_DD
    half = n / 2.0

    j, w = _fold(n, parity=1)
    b1o = sums.b1.take(j)
    lgo = sums.lg.take(j)
    ratios = lgo / b1o
    kap = -(c_dd * half + _dd_fold_sum(ratios.re, w)) / log_q

    log_mags = dd_log(b1o.abs2()).scale_pow2(0.5)
    r = (ddm.LOG_PI_DD - log_q.scale_pow2(0.5)) * half + _dd_fold_sum(log_mags, w)

    j, w = _fold(n, parity=0)
    if j.size == 0:
        gplus = ddm.EULER_GAMMA_DD
    else:
        u = (sums.z2.take(j) / sums.lg.take(j).scale_pow2(2.0)).re
        gplus = ddm.EULER_GAMMA_DD + _dd_fold_sum((c_dd - u).reshape(-1), w)
    gamma = gplus - kap * log_q
    return {"kappa": kap, "r": r, "gamma_plus": gplus, "gamma": gamma,
            "log_q": log_q}


_SPECTRUM_TOL = {"s0": 1e-12, "conj": 1e-12, "parseval": 1e-9}


def _check_spectrum(cs: CharacterSums, vals: np.ndarray) -> None:
    for name, residual in spectrum_checks(cs, vals).items():
        if residual > _SPECTRUM_TOL[name]:
            raise ComputationError(
                f"spectrum invariant '{name}' failed at q={cs.q}: {residual:.3e}")


def compute_record(q: int, mode: str = "double", validate: bool = True) -> EkRecord:
    """Full pipeline for one odd prime q.

    mode "double" runs in binary64; mode "dd" recomputes kernels, twiddle
    factors and the assembly in double-double arithmetic.
    """
    ctx = primitive_root(q)
    flags = neighbor_flags(q)
    if mode == "double":
        kernels = list(KernelId)
        vals = [kernel_values(ctx, kernel) for kernel in kernels]
        spec = transform_kernel(np.vstack(vals), half=True)  # one batched rfft
        sums = {}
        for i, kernel in enumerate(kernels):
            cs = CharacterSums(q=q, kernel=kernel, s=spec[i], half=True)
            if validate:
                _check_spectrum(cs, vals[i])
            sums[kernel] = cs
        b1, lg, z2 = sums[KernelId.LINEAR], sums[KernelId.LNGAMMA], sums[KernelId.ZETA2]
        kap = kappa(ctx, b1, lg)
        r = kummer_r(ctx, b1)
        gplus, g = gamma_pair(ctx, b1, lg, z2)
    elif mode == "dd":
        sums_dd = character_sums_dd(ctx)
        if validate:
            for kernel, spec in ((KernelId.LINEAR, sums_dd.b1),
                                 (KernelId.LNGAMMA, sums_dd.lg),
                                 (KernelId.ZETA2, sums_dd.z2)):
                vals = kernel_values(ctx, kernel)
                cs = CharacterSums(q=q, kernel=kernel, s=spec.to_complex(), half=False)
                _check_spectrum(cs, vals)
        parts = assemble_dd(ctx, sums_dd)
        kap = float(parts["kappa"].hi)
        r = float(parts["r"].hi)
        gplus = float(parts["gamma_plus"].hi)
        g = float(parts["gamma"].hi)
    else:
        raise ValueError(f"unknown precision mode {mode!r}")
    return EkRecord(q=q, kappa=kap, r=r, gamma_plus=gplus, gamma=g,
                    delta=kap - r, flags=flags)


def kummer_check(q: int, r: float | None = None) -> KummerCheck:
    """h1(q) recovered as R(q) G(q) with its distance to the nearest integer.

    Without a supplied r the ratio is recomputed in double-double: for
    q near 100 the class number reaches ~4e11 and a 1e-6 gap needs far
    more than binary64 accuracy in exp(r + log G).
    """
    if q > 100:
        raise ValueError("kummer_check is limited to q <= 100")
    if r is None:
        ctx = primitive_root(q)
        r_dd = assemble_dd(ctx, character_sums_dd(ctx))["r"]
    else:
        r_dd = DD(float(r))
    log_g = dd_log(DD(2.0 * q)) + (dd_log(DD(float(q))) - ddm.LOG_2PI_DD.scale_pow2(2.0)) * ((q - 1) / 4.0)
    h1 = dd_exp(r_dd + log_g)
    nearest = int(round(float(h1.hi)))
    gap = abs(float((h1 - float(nearest)).to_float()))
    return KummerCheck(q=q, h1_approx=float(h1.to_float()), nearest_int=nearest, gap=gap)


def envelope_ok(q: int, kap: float) -> bool:
    """Monitoring envelope |kappa(q)| < log log q + 1.41 (meaningful for q >= 17)."""
    if q < 17:
        return True
    return abs(kap) < math.log(math.log(q)) + 1.41
