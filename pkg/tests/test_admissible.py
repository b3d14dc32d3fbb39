import math

import numpy as np
import pytest

from ekcyclo.admissible import (AdmissibleSet, c1_sum, c2_minimum, c2_sum,
                                constants_table, harmonic_threshold, is_admissible,
                                omega, singular_series_c1)

from _oracles import naive_primes_upto, omega_mirrored


def test_omega_examples():
    assert omega(2, AdmissibleSet.of([2])) == 1
    assert omega(3, AdmissibleSet.of([2])) == 2
    for p in (2, 3, 5, 7, 11):
        assert omega(p, AdmissibleSet.of([])) == 1


def test_omega_bounded_by_size():
    rng = np.random.default_rng(17)
    for _ in range(60):
        elems = sorted(set(rng.integers(1, 60, size=rng.integers(1, 7)).tolist()))
        a = AdmissibleSet.of(elems)
        for p in (2, 3, 5, 7, 11, 13):
            assert omega(p, a) <= len(elems) + 1


def test_omega_sign_flip_invariance():
    rng = np.random.default_rng(19)
    primes = naive_primes_upto(60)
    for _ in range(100):
        elems = tuple(sorted(set(rng.integers(1, 80, size=rng.integers(1, 6)).tolist())))
        a = AdmissibleSet.of(elems)
        p = int(rng.choice(primes))
        assert omega(p, a) == omega_mirrored(p, elems)


def test_is_admissible_examples():
    assert is_admissible(AdmissibleSet.of([2]))
    assert not is_admissible(AdmissibleSet.of([1, 2]))
    assert is_admissible(AdmissibleSet.of([]))
    assert is_admissible(AdmissibleSet.of([2, 6]))
    # {2, 4} covers every residue mod 3 and is inadmissible
    assert not is_admissible(AdmissibleSet.of([2, 4]))


def test_measure():
    a = AdmissibleSet.of([2, 4, 6])
    assert abs(a.mu - (0.5 + 0.25 + 1 / 6)) < 1e-14


def test_admissible_set_validation():
    with pytest.raises(ValueError):
        AdmissibleSet.of([0, 2])
    with pytest.raises(ValueError):
        AdmissibleSet.of([2, 2])


def test_harmonic_thresholds_paper_values():
    n, total = harmonic_threshold(4.0)
    assert n == 227
    assert abs(total - 4.0021833) < 1e-7
    n, total = harmonic_threshold(6.0)
    assert n == 12367
    assert abs(total - 6.0000215) < 1e-7


def test_harmonic_threshold_small_c():
    # the unit multiplier alone already exceeds any c < 1
    assert harmonic_threshold(0.4) == (0, 1.0)


def test_harmonic_threshold_monotone():
    prev = -1
    for c in (0.5, 1.2, 2.0, 3.0, 4.0, 4.5, 5.0):
        n, _ = harmonic_threshold(c)
        assert n >= prev
        prev = n


def test_harmonic_threshold_plain_mode():
    n, total = harmonic_threshold(2.0, even_only=False)
    assert n == 4 and abs(total - (1 + 0.5 + 1 / 3 + 0.25)) < 1e-15


def test_constants_kummer_lead():
    t = constants_table(c1_cutoff=10 ** 5)
    assert abs(t["kummer_lead"].value - 1.6433058) < 1e-7


def test_constants_c1_six_digits():
    value, tail = singular_series_c1(4 * 10 ** 6)
    assert abs(value - 3.279577) < 5e-7
    assert tail < 1e-5


def test_c2_minimiser():
    k, val = c2_minimum()
    assert k == 55
    assert val < -0.413812
    assert c2_sum(53) > val and c2_sum(57) > val


def test_c1_sum_direct():
    q, k = 5, 9
    want = 0.25 * sum(math.log(2 * j * q - 1) / (j * math.log(q)) for j in (1, 2, 3, 4))
    assert abs(c1_sum(q, k) - want) < 1e-15
    with pytest.raises(ValueError):
        c1_sum(5, 8)
