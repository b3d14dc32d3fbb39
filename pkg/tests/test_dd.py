import math

import mpmath as mp
import numpy as np
import pytest

from ekcyclo.dd import (DD, DDC, EULER_GAMMA_DD, LOG_2PI_DD, PI_DD, dd_cos_sin,
                        dd_dft, dd_exp, dd_fft_pow2, dd_gamma_zeta_kernels,
                        dd_ifft_pow2, dd_log)

mp.mp.dps = 45


def as_mp(x: DD, idx=()):
    hi = np.asarray(x.hi)[idx] if idx != () else np.asarray(x.hi).reshape(-1)[0]
    lo = np.asarray(x.lo)[idx] if idx != () else np.asarray(x.lo).reshape(-1)[0]
    return mp.mpf(float(hi)) + mp.mpf(float(lo))


def test_constants_are_double_double():
    # hi+lo representation carries ~32 digits; half an ulp of lo is ~1.2e-32
    assert abs(as_mp(PI_DD) - mp.pi) < mp.mpf("2e-32")
    assert abs(as_mp(LOG_2PI_DD) - mp.log(2 * mp.pi)) < mp.mpf("2e-32")
    assert abs(as_mp(EULER_GAMMA_DD) - mp.euler) < mp.mpf("2e-32")


def test_field_operations_against_mpmath():
    rng = np.random.default_rng(5)
    a = rng.uniform(-100, 100, 64)
    b = rng.uniform(0.1, 100, 64)
    da, db = DD(a), DD(b)
    for op, ref in ((da + db, lambda x, y: x + y),
                    (da - db, lambda x, y: x - y),
                    (da * db, lambda x, y: x * y),
                    (da / db, lambda x, y: x / y)):
        for i in range(64):
            want = ref(mp.mpf(a[i]), mp.mpf(b[i]))
            assert abs(as_mp(op, (i,)) - want) <= mp.mpf("1e-28") * (1 + abs(want))


def test_exp_log_against_mpmath():
    rng = np.random.default_rng(6)
    xs = rng.uniform(-25, 25, 40)
    ex = dd_exp(DD(xs))
    for i, x in enumerate(xs):
        want = mp.e ** mp.mpf(x)
        assert abs(as_mp(ex, (i,)) / want - 1) < mp.mpf("1e-30")
    ys = rng.uniform(1e-8, 1e9, 40)
    lg = dd_log(DD(ys))
    for i, y in enumerate(ys):
        assert abs(as_mp(lg, (i,)) - mp.log(mp.mpf(y))) < mp.mpf("1e-30")


def test_cos_sin_seed_range():
    for frac in (0.5, 0.25, 0.125, 1 / 3, 1 / 97):
        theta = PI_DD * frac
        c, s = dd_cos_sin(theta)
        want_c = mp.cos(mp.pi * mp.mpf(frac))
        want_s = mp.sin(mp.pi * mp.mpf(frac))
        assert abs(as_mp(c) - want_c) < mp.mpf("5e-32")
        assert abs(as_mp(s) - want_s) < mp.mpf("5e-32")


@pytest.mark.parametrize("n", [1, 2, 3, 6, 16, 31, 97])
def test_dd_dft_against_mpmath(n):
    rng = np.random.default_rng(n)
    re = rng.uniform(-3, 3, n)
    im = rng.uniform(-3, 3, n)
    out = dd_dft(DDC(DD(re), DD(im)))
    for j in range(n):
        want = mp.fsum((mp.mpf(re[k]) + 1j * mp.mpf(im[k])) *
                       mp.e ** (2j * mp.pi * j * k / n) for k in range(n))
        got = as_mp(out.re, (j,)) + 1j * as_mp(out.im, (j,))
        assert abs(got - want) < mp.mpf("1e-27")


def test_fft_roundtrip_and_batching():
    rng = np.random.default_rng(9)
    x = DDC(DD(rng.uniform(-1, 1, (3, 32))), DD(rng.uniform(-1, 1, (3, 32))))
    back = dd_ifft_pow2(dd_fft_pow2(x, sign=-1))
    assert np.max(np.abs(back.to_complex() - x.to_complex())) < 1e-25
    ref = np.fft.fft(x.to_complex(), axis=-1)
    assert np.max(np.abs(dd_fft_pow2(x, sign=-1).to_complex() - ref)) < 1e-12


def test_gamma_zeta_kernels_against_mpmath():
    q = 61
    a = np.arange(1, q)
    lngam, z2 = dd_gamma_zeta_kernels(a, q)
    for i in (0, 1, 29, 58, 59 - 1):
        xa = mp.mpf(int(a[i])) / q
        assert abs(as_mp(lngam, (i,)) - mp.loggamma(xa)) < mp.mpf("1e-27")
        assert abs(as_mp(z2, (i,)) - mp.zeta(0, xa, 2)) < mp.mpf("1e-27")


def test_integer_log_table_consistency():
    from ekcyclo.dd import _integer_logs
    m = np.array([1, 2, 3, 10, 12345, 999983], dtype=np.int64)
    table = _integer_logs(m)
    direct = dd_log(DD(m.astype(np.float64)))
    diff = (table - direct).to_float()
    assert np.max(np.abs(diff)) < 1e-30


def test_kernels_beyond_table_cap(monkeypatch):
    # forcing the direct-log fallback must not change the kernel values
    import ekcyclo.dd as mod
    q = 211
    a = np.arange(1, q)
    with_table = dd_gamma_zeta_kernels(a, q)
    monkeypatch.setattr(mod, "_INT_LOG_CAP", 10)
    without = dd_gamma_zeta_kernels(a, q)
    for lhs, rhs in zip(with_table, without):
        assert np.max(np.abs((lhs - rhs).to_float())) < 1e-28


def test_from_string_round_trip():
    x = DD.from_str("0.12345678901234567890123456789")
    want = mp.mpf("0.12345678901234567890123456789")
    assert abs(as_mp(x) - want) < mp.mpf("2e-33")
