import math

import numpy as np
import pytest

from opuczeros import (AnnularSector, OutOfDomainError, RealInterval,
                       ScalingWindow, VerblunskySequence,
                       conservation_check, expected_complex_zeros,
                       expected_real_zeros, growth_log_derivative,
                       total_complex_zeros)
from opuczeros.ensembles import materialize, power_decay


def free_seq():
    return VerblunskySequence(generator=lambda k: 0.0)


def test_degree_one_polynomial_has_one_real_zero():
    res = expected_real_zeros(free_seq(), 2)
    assert abs(res.value - 1.0) < 1e-10


def test_degree_zero_has_none():
    res = expected_real_zeros(free_seq(), 1)
    assert res.value == 0.0


def test_log_growth_difference():
    # E[N_256] - E[N_64] ~ (2/pi) log 4
    a = expected_real_zeros(free_seq(), 64).value
    b = expected_real_zeros(free_seq(), 256).value
    expect = (2.0 / math.pi) * math.log(4.0)
    assert abs((b - a) - expect) <= 0.05 * expect


def test_real_interval_region():
    whole = expected_real_zeros(free_seq(), 8).value
    inner = expected_real_zeros(free_seq(), 8, RealInterval(-1.0, 1.0)).value
    # inversion symmetry puts exactly half the real zeros inside (-1, 1)
    assert abs(2 * inner - whole) < 1e-8


def test_monotone_in_degree():
    prev = -1.0
    for n in (2, 4, 8, 16, 32, 64, 128, 256, 512, 1024):
        cur = expected_real_zeros(free_seq(), n).value
        assert cur > prev - 1e-6
        prev = cur


def test_quadrature_error_is_honest():
    al = VerblunskySequence(values=np.linspace(-0.4, 0.6, 16))
    coarse = expected_real_zeros(al, 16, tol=1e-6)
    fine = expected_real_zeros(al, 16, tol=5e-7)
    assert abs(fine.value - coarse.value) <= max(coarse.error, 1e-12)


def test_full_annulus_complements_real_line():
    # almost surely n - 1 zeros; the whole-plane complex count complements
    # the real count exactly, and the delta = 0.5 annulus holds most of it,
    # short only of the near-axis wings outside (0.5, 1.5)
    n = 64
    real = expected_real_zeros(free_seq(), n).value
    total = total_complex_zeros(free_seq(), n, tol=1e-6).value
    assert abs(real + total - (n - 1)) < 1e-3
    sector = AnnularSector(0.0, 2.0 * math.pi, 0.5)
    cplx = expected_complex_zeros(free_seq(), n, sector, tol=1e-6).value
    assert cplx < total
    assert total - cplx < 1.0


def test_scaling_window_prediction_interior_tail():
    # window (-20, 0): the interior side carries H'/H(0) - H'/H(-20)
    win = ScalingWindow(0.3, 1.1, -20.0, 0.0)
    res = expected_complex_zeros(free_seq(), 128, win, tol=1e-7)
    span = 1.1 - 0.3
    g = growth_log_derivative
    expect = 128 * span / (2 * math.pi) * (g(0.0) - g(-20.0))
    assert abs(res.prediction - expect) <= 1e-12 * expect
    assert abs(res.value - res.prediction) <= 0.05 * res.prediction


def test_scaling_window_quadrature_vs_prediction():
    win = ScalingWindow(math.pi / 4, 3 * math.pi / 4, -5.0, 5.0)
    n = 256
    res = expected_complex_zeros(free_seq(), n, win, tol=1e-7)
    g = growth_log_derivative
    expect = n * (math.pi / 2) / (2 * math.pi) * (g(5.0) - g(-5.0))
    assert abs(res.prediction - expect) < 1e-12
    assert abs(res.value - res.prediction) <= 0.05 * res.prediction


def test_conservation_small_degrees():
    rng = np.random.default_rng(50)
    for n in (4, 8):
        al = VerblunskySequence(values=rng.uniform(-0.6, 0.6, n))
        rep = conservation_check(al, n, tol=1e-6)
        assert abs(rep["defect"]) < 1e-2
        assert rep["target"] == n - 1


def test_total_complex_zeros_free_small():
    # degree-3 free case: 3 zeros total, real part via quadrature
    real = expected_real_zeros(free_seq(), 4).value
    cplx = total_complex_zeros(free_seq(), 4, tol=1e-6).value
    assert abs(real + cplx - 3.0) < 5e-3


def test_region_validation():
    with pytest.raises(OutOfDomainError):
        RealInterval(1.0, -1.0)
    with pytest.raises(OutOfDomainError):
        AnnularSector(0.0, 1.0, 1.5)
    with pytest.raises(OutOfDomainError):
        ScalingWindow(0.0, 1.0, 5.0, -5.0)
    with pytest.raises(OutOfDomainError):
        expected_real_zeros(free_seq(), 4, AnnularSector(0.0, 1.0, 0.2))


def test_power_decay_real_count_close_to_free():
    # Nevai-class coefficients follow the same logarithmic law
    al = materialize(power_decay(0.3, 2), 128)
    a = expected_real_zeros(al, 128).value
    b = expected_real_zeros(free_seq(), 128).value
    assert abs(a - b) < 1.0
