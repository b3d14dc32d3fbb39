"""Vectorised double-double (~31 significant digits) arithmetic.

A value is an unevaluated sum hi + lo of two doubles with |lo| <= ulp(hi)/2.
All primitives are branch-free elementwise numpy expressions built from the
classic error-free transforms (Knuth two-sum, Dekker split/product), so the
whole layer vectorises over arrays of any shape.

On top of the scalar layer sit complex pairs, exp/log, an iterative
radix-2 FFT with double-double twiddle tables, and a Bluestein chirp-z
reduction that evaluates DFTs of arbitrary length n in O(n log n) while
keeping ~1e-31 relative accuracy.  No fused-multiply-add is assumed.
"""
from __future__ import annotations

import math
from collections import OrderedDict
from fractions import Fraction

import numpy as np

from .special_functions import (
    BERNOULLI_2K,
    EULER_GAMMA_STR,
    LN2_STR,
    LOG_2PI_STR,
    LOG_PI_STR,
    PI_STR,
    harmonic_fraction,
)

_SPLITTER = 134217729.0  # 2^27 + 1


def _two_sum(a, b):
    s = a + b
    bb = s - a
    err = (a - (s - bb)) + (b - bb)
    return s, err


def _quick_two_sum(a, b):
    # requires |a| >= |b| elementwise
    s = a + b
    err = b - (s - a)
    return s, err


def _split(a):
    t = _SPLITTER * a
    hi = t - (t - a)
    return hi, a - hi


def _two_prod(a, b):
    p = a * b
    ah, al = _split(a)
    bh, bl = _split(b)
    err = ((ah * bh - p) + ah * bl + al * bh) + al * bl
    return p, err


class DD:
    """Array of double-double reals."""

    __slots__ = ("hi", "lo")

    def __init__(self, hi, lo=0.0):
        self.hi = np.asarray(hi, dtype=np.float64)
        lo = np.asarray(lo, dtype=np.float64)
        if lo.shape != self.hi.shape:
            lo = np.broadcast_to(lo, self.hi.shape)
        self.lo = lo

    # -- constructors -------------------------------------------------
    @staticmethod
    def from_fraction(fr: Fraction) -> "DD":
        hi = float(fr)
        lo = float(fr - Fraction(hi))
        return DD(hi, lo)

    @staticmethod
    def from_str(s: str) -> "DD":
        return DD.from_fraction(Fraction(s))

    @staticmethod
    def zeros(shape) -> "DD":
        return DD(np.zeros(shape), np.zeros(shape))

    # -- structure helpers --------------------------------------------
    @property
    def shape(self):
        return self.hi.shape

    def __getitem__(self, idx) -> "DD":
        return DD(self.hi[idx], self.lo[idx])

    def __setitem__(self, idx, value: "DD"):
        self.hi[idx] = value.hi
        self.lo[idx] = value.lo

    def reshape(self, *shape) -> "DD":
        return DD(self.hi.reshape(*shape), self.lo.reshape(*shape))

    def take(self, idx, axis=-1) -> "DD":
        return DD(np.take(self.hi, idx, axis=axis), np.take(self.lo, idx, axis=axis))

    def copy(self) -> "DD":
        return DD(self.hi.copy(), self.lo.copy())

    def to_float(self):
        return self.hi + self.lo

    # -- arithmetic ----------------------------------------------------
    def __neg__(self):
        return DD(-self.hi, -self.lo)

    def __add__(self, other):
        # "sloppy" addition: error O(eps^2 max(|a|,|b|)) instead of the
        # IEEE-style O(eps^2 |a+b|); ample for the ~1e-30 budget here
        if not isinstance(other, DD):
            other = DD(other)
        s, e = _two_sum(self.hi, other.hi)
        e = e + (self.lo + other.lo)
        hi, lo = _quick_two_sum(s, e)
        return DD(hi, lo)

    __radd__ = __add__

    def __sub__(self, other):
        if not isinstance(other, DD):
            other = DD(other)
        return self + (-other)

    def __rsub__(self, other):
        return DD(other) + (-self)

    def __mul__(self, other):
        if not isinstance(other, DD):
            other = DD(other)
        p1, p2 = _two_prod(self.hi, other.hi)
        p2 = p2 + (self.hi * other.lo + self.lo * other.hi)
        hi, lo = _quick_two_sum(p1, p2)
        return DD(hi, lo)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if not isinstance(other, DD):
            other = DD(other)
        q1 = self.hi / other.hi
        r = self - other._mul_double(q1)
        q2 = r.hi / other.hi
        r = r - other._mul_double(q2)
        q3 = r.hi / other.hi
        s1, s2 = _quick_two_sum(q1, q2)
        return DD(s1, s2) + q3

    def __rtruediv__(self, other):
        return DD(other) / self

    def _mul_double(self, d):
        p1, p2 = _two_prod(self.hi, d)
        p2 = p2 + self.lo * d
        hi, lo = _quick_two_sum(p1, p2)
        return DD(hi, lo)

    def scale_pow2(self, f) -> "DD":
        """Multiply by an exact power of two (per-element allowed)."""
        return DD(self.hi * f, self.lo * f)

    def abs(self) -> "DD":
        neg = self.hi < 0
        sign = np.where(neg, -1.0, 1.0)
        return DD(self.hi * sign, self.lo * sign)

    def square(self) -> "DD":
        return self * self

    def sum(self, axis=-1) -> "DD":
        """Pairwise tree reduction along an axis."""
        acc = self if axis in (-1, self.hi.ndim - 1) else DD(
            np.moveaxis(self.hi, axis, -1), np.moveaxis(self.lo, axis, -1))
        while acc.shape[-1] > 1:
            m = acc.shape[-1]
            half = m // 2
            pair = acc[..., :2 * half:2] + acc[..., 1:2 * half:2]
            if m % 2:
                pair = DD(np.concatenate([pair.hi, acc.hi[..., -1:]], axis=-1),
                          np.concatenate([pair.lo, acc.lo[..., -1:]], axis=-1))
            acc = pair
        return acc[..., 0]


# -- transcendental constants ------------------------------------------
PI_DD = DD.from_str(PI_STR)
TWO_PI_DD = PI_DD.scale_pow2(2.0)
LN2_DD = DD.from_str(LN2_STR)
LOG_2PI_DD = DD.from_str(LOG_2PI_STR)
LOG_PI_DD = DD.from_str(LOG_PI_STR)
EULER_GAMMA_DD = DD.from_str(EULER_GAMMA_STR)

_INV_FACT = [DD.from_fraction(Fraction(1, math.factorial(i))) for i in range(44)]


def dd_exp(a: DD) -> DD:
    """exp(a) for moderate |a| (reduction by ln 2, then scaled Taylor)."""
    k = np.rint(a.hi / float(LN2_DD.hi))
    r = a - LN2_DD._mul_double(k)
    r = r.scale_pow2(1.0 / 512.0)  # |r| <= ~6.8e-4 after 2^9 scaling
    # expm1 via Taylor, 10 terms reach ~1e-39
    p = DD(np.zeros(r.shape), np.zeros(r.shape))
    for i in range(10, 0, -1):
        p = (p + _INV_FACT[i]) * r
    # repeated (1+s)^2 - 1 = s^2 + 2s keeps full accuracy near zero
    for _ in range(9):
        p = p.square() + p.scale_pow2(2.0)
    out = p + 1.0
    two_k = np.ldexp(1.0, k.astype(np.int32))
    return DD(out.hi * two_k, out.lo * two_k)


def dd_log(a: DD) -> DD:
    """log(a) for a > 0, by one Newton correction of the double log."""
    y0 = np.log(a.hi)
    r = a * dd_exp(DD(-y0)) - 1.0
    # |r| ~ 1e-16, so r^2/2 only matters at double precision
    return DD(y0) + r - DD(0.5 * r.hi * r.hi)


def dd_cos_sin(theta: DD) -> tuple[DD, DD]:
    """Taylor cos/sin, intended for |theta| <= pi/2 (twiddle seeds)."""
    t2 = theta.square()
    c = DD(np.zeros(theta.shape), np.zeros(theta.shape))
    s = DD(np.zeros(theta.shape), np.zeros(theta.shape))
    for i in range(40, 1, -2):
        c = (c + _INV_FACT[i] * (1 if i % 4 == 0 else -1)) * t2
        s = (s + _INV_FACT[i + 1] * (1 if i % 4 == 0 else -1)) * t2
    c = c + 1.0
    s = (s + 1.0) * theta
    return c, s


class DDC:
    """Array of double-double complex values."""

    __slots__ = ("re", "im")

    def __init__(self, re: DD, im: DD):
        self.re = re
        self.im = im

    @staticmethod
    def zeros(shape) -> "DDC":
        return DDC(DD.zeros(shape), DD.zeros(shape))

    @staticmethod
    def from_real(re: DD) -> "DDC":
        return DDC(re, DD.zeros(re.shape))

    @property
    def shape(self):
        return self.re.shape

    def __getitem__(self, idx) -> "DDC":
        return DDC(self.re[idx], self.im[idx])

    def __setitem__(self, idx, value: "DDC"):
        self.re[idx] = value.re
        self.im[idx] = value.im

    def reshape(self, *shape) -> "DDC":
        return DDC(self.re.reshape(*shape), self.im.reshape(*shape))

    def take(self, idx, axis=-1) -> "DDC":
        return DDC(self.re.take(idx, axis), self.im.take(idx, axis))

    def copy(self) -> "DDC":
        return DDC(self.re.copy(), self.im.copy())

    def __add__(self, other: "DDC") -> "DDC":
        return DDC(self.re + other.re, self.im + other.im)

    def __sub__(self, other: "DDC") -> "DDC":
        return DDC(self.re - other.re, self.im - other.im)

    def __mul__(self, other: "DDC") -> "DDC":
        return DDC(self.re * other.re - self.im * other.im,
                   self.re * other.im + self.im * other.re)

    def conj(self) -> "DDC":
        return DDC(self.re, -self.im)

    def abs2(self) -> DD:
        return self.re.square() + self.im.square()

    def __truediv__(self, other: "DDC") -> "DDC":
        den = other.abs2()
        num = self * other.conj()
        return DDC(num.re / den, num.im / den)

    def scale_pow2(self, f) -> "DDC":
        return DDC(self.re.scale_pow2(f), self.im.scale_pow2(f))

    def sum(self, axis=-1) -> "DDC":
        return DDC(self.re.sum(axis), self.im.sum(axis))

    def to_complex(self) -> np.ndarray:
        return self.re.to_float() + 1j * self.im.to_float()


# -- FFT ---------------------------------------------------------------
_twiddle_cache: dict[tuple[int, int], DDC] = {}
_bitrev_cache: dict[int, np.ndarray] = {}


def _root_of_unity(m: int, numerator: int = 2) -> DDC:
    """exp(i * numerator * pi / m) in double-double, m a positive integer."""
    theta = (PI_DD * float(numerator)) / float(m)
    c, s = dd_cos_sin(theta)
    return DDC(c, s)


def _twiddle_table(m: int, sign: int) -> DDC:
    """T[k] = exp(sign * 2 pi i k / m) for k < m // 2; m a power of two."""
    key = (m, sign)
    cached = _twiddle_cache.get(key)
    if cached is not None:
        return cached
    half = m // 2
    table = DDC.zeros(half)
    table[0] = DDC(DD(1.0), DD(0.0))
    if half > 1:
        w = _root_of_unity(m)
        if sign < 0:
            w = w.conj()
        wp = w
        size = 1
        while size < half:
            take = min(size, half - size)
            table[size:size + take] = table[0:take] * wp
            wp = wp * wp
            size *= 2
    _twiddle_cache[key] = table
    return table


def _bit_reverse_indices(m: int) -> np.ndarray:
    cached = _bitrev_cache.get(m)
    if cached is not None:
        return cached
    bits = m.bit_length() - 1
    idx = np.arange(m)
    rev = np.zeros(m, dtype=np.int64)
    for _ in range(bits):
        rev = (rev << 1) | (idx & 1)
        idx >>= 1
    _bitrev_cache[m] = rev
    return rev


def dd_fft_pow2(x: DDC, sign: int = -1) -> DDC:
    """In-order radix-2 FFT along the last axis; length must be a power of 2."""
    m = x.shape[-1]
    if m & (m - 1):
        raise ValueError("length must be a power of two")
    if m == 1:
        return x.copy()
    table = _twiddle_table(m, sign)
    x = x.take(_bit_reverse_indices(m))
    lead = x.shape[:-1]
    h = 1
    while h < m:
        stride = m // (2 * h)
        tw = table.take(np.arange(h) * stride)
        y = x.reshape(*lead, m // (2 * h), 2, h)
        even = y[..., 0, :]
        odd = y[..., 1, :] * tw
        upper = even + odd
        lower = even - odd
        x = DDC(DD(np.concatenate([upper.re.hi[..., None, :], lower.re.hi[..., None, :]], axis=-2),
                   np.concatenate([upper.re.lo[..., None, :], lower.re.lo[..., None, :]], axis=-2)),
                DD(np.concatenate([upper.im.hi[..., None, :], lower.im.hi[..., None, :]], axis=-2),
                   np.concatenate([upper.im.lo[..., None, :], lower.im.lo[..., None, :]], axis=-2)))
        # blocks of size 2h are now contiguous: (nblk, 2, h) -> (nblk, 2h)
        x = x.reshape(*lead, m)
        h *= 2
    return x


def dd_ifft_pow2(x: DDC) -> DDC:
    m = x.shape[-1]
    return dd_fft_pow2(x, sign=+1).scale_pow2(1.0 / m)


class _BluesteinPlan:
    __slots__ = ("n", "m", "chirp", "filter_fft")

    def __init__(self, n: int):
        self.n = n
        self.m = 1 << (2 * n - 1).bit_length() if n > 1 else 1
        if n == 1:
            self.chirp = None
            self.filter_fft = None
            return
        # chirp[j] = exp(i pi j^2 / n); exponents reduce modulo 2n
        u = DDC.zeros(2 * n)
        u[0] = DDC(DD(1.0), DD(0.0))
        w = _root_of_unity(n, numerator=1)
        wp = w
        size = 1
        while size < 2 * n:
            take = min(size, 2 * n - size)
            u[size:size + take] = u[0:take] * wp
            wp = wp * wp
            size *= 2
        idx = (np.arange(n, dtype=np.int64) ** 2) % (2 * n)
        self.chirp = u.take(idx)
        filt = DDC.zeros(self.m)
        b = self.chirp.conj()
        filt[0:n] = b
        if n > 1:
            rev = b.take(np.arange(n - 1, 0, -1))
            filt[self.m - (n - 1):self.m] = rev
        self.filter_fft = dd_fft_pow2(filt, sign=-1)


_plan_cache: OrderedDict[int, _BluesteinPlan] = OrderedDict()
_PLAN_CACHE_MAX = 32


def _bluestein_plan(n: int) -> _BluesteinPlan:
    plan = _plan_cache.get(n)
    if plan is None:
        plan = _BluesteinPlan(n)
        _plan_cache[n] = plan
        if len(_plan_cache) > _PLAN_CACHE_MAX:
            _plan_cache.popitem(last=False)
    else:
        _plan_cache.move_to_end(n)
    return plan


def dd_dft(x: DDC) -> DDC:
    """X[j] = sum_k x[k] exp(+2 pi i j k / n) along the last axis, any n."""
    n = x.shape[-1]
    if n == 1:
        return x.copy()
    plan = _bluestein_plan(n)
    lead = x.shape[:-1]
    a = DDC.zeros(lead + (plan.m,))
    a[..., 0:n] = x * plan.chirp
    spec = dd_fft_pow2(a, sign=-1) * plan.filter_fft
    conv = dd_ifft_pow2(spec)
    return conv[..., 0:n] * plan.chirp


# -- double-double kernels at rational points a/q -----------------------
_EM_SHIFT_DD = 32
_EM_COEFF_DD = [
    (DD.from_fraction(BERNOULLI_2K[2 * k] / (2 * k * (2 * k - 1))),
     DD.from_fraction(harmonic_fraction(2 * k - 2)))
    for k in range(1, 13)
]

# every log in the kernels is log(integer); for range runs a shared table of
# integer logs turns the transcendental work into gathers
_INT_LOG_CAP = 4_000_000
_int_log_state: dict[str, object] = {"limit": 0, "table": None}


def _integer_logs(m: np.ndarray) -> DD:
    """log(m) for positive integer arrays, table-backed below the cap."""
    top = int(m.max())
    if top > _INT_LOG_CAP:
        return dd_log(DD(m.astype(np.float64)))
    if top > int(_int_log_state["limit"]):
        limit = min(max(2 * top, 4096), _INT_LOG_CAP)
        _int_log_state["table"] = dd_log(DD(np.arange(1, limit + 1, dtype=np.float64)))
        _int_log_state["limit"] = limit
    table: DD = _int_log_state["table"]
    return table.take(np.asarray(m, dtype=np.int64) - 1)


def dd_gamma_zeta_kernels(a: np.ndarray, q: int) -> tuple[DD, DD]:
    """(log Gamma(a/q), zeta''(0, a/q)) in double-double for integer 0 < a < q.

    Euler-Maclaurin with shift 32 and Bernoulli terms through B_24; all
    logarithms are taken at exact integers a + n q, so no intermediate
    rounding enters before the double-double stage.
    """
    a = np.asarray(a, dtype=np.int64)
    log_q = _integer_logs(np.asarray([q]))[0]
    shifted = a[None, :] + q * np.arange(_EM_SHIFT_DD + 1, dtype=np.int64)[:, None]
    all_logs = _integer_logs(shifted)
    logs = all_logs[:_EM_SHIFT_DD] - log_q  # log(a/q + n), n < 32
    sum_logs = logs.sum(axis=0)
    sum_logs2 = logs.square().sum(axis=0)
    w = DD(a + q * _EM_SHIFT_DD) / DD(float(q))
    big_l = all_logs[_EM_SHIFT_DD] - log_q
    z1 = -sum_logs + w * (big_l - 1.0) - big_l.scale_pow2(0.5)
    l2 = big_l.square()
    z2 = sum_logs2 + w * (big_l.scale_pow2(2.0) - l2 - 2.0) + l2.scale_pow2(0.5)
    winv = DD(1.0) / w
    w2 = winv.square()
    wp = winv
    for c, h in _EM_COEFF_DD:
        z1 = z1 + c * wp
        z2 = z2 + (c * (h - big_l) * wp).scale_pow2(2.0)
        wp = wp * w2
    ln_gamma = z1 + LOG_2PI_DD.scale_pow2(0.5)
    return ln_gamma, z2
