import math

import numpy as np
import pytest

from opuczeros import (OutOfDomainError, VerblunskySequence, complex_intensity,
                       growth_log_derivative, limit_complex_density,
                       limit_real_density, real_intensity_closed,
                       real_intensity_kernel, scaling_limit_density)
from opuczeros.intensity import (h_alt, h_closed, h_kac,
                                 real_intensity_closed_grid,
                                 real_intensity_grid,
                                 real_intensity_kernel_grid)
from opuczeros.ensembles import materialize, power_decay
from opuczeros._quad import adaptive_gl


def free():
    return VerblunskySequence(generator=lambda k: 0.0)


def test_h_closed_matches_kac():
    xs = np.linspace(-0.99, 0.99, 200)
    for n in (2, 5, 16, 64):
        al = free()
        for x in xs:
            hk = h_kac(n, x)
            hc = h_closed(al, n, x)
            assert abs(hk - hc) <= 1e-12 * max(abs(hk), 1.0)


def test_kac_n2_at_origin():
    assert abs(real_intensity_kernel(free(), 2, 0.0).rho - 1.0 / math.pi) < 1e-13


def test_degree_zero_has_no_zeros():
    al = VerblunskySequence(values=[0.4])
    for x in (-0.5, 0.0, 0.7, 2.0):
        assert real_intensity_kernel(al, 1, x).rho == 0.0


def test_kac_n2_density_is_cauchy():
    # degree-1 polynomial: density 1/(pi (1+x^2)), one real zero in total
    for x in (-3.0, -0.4, 0.0, 0.2, 5.0):
        expect = 1.0 / (math.pi * (1.0 + x * x))
        assert abs(real_intensity_kernel(free(), 2, x).rho - expect) < 1e-13
    val, err = adaptive_gl(lambda x: real_intensity_grid(free(), 2, x),
                           -1.0, 1.0, tol=1e-12)
    # half the mass is inside (-1,1) by the inversion symmetry
    assert abs(2 * val - 1.0) < 1e-9


def test_kac_n3_value():
    h = h_kac(3, 0.5)
    assert abs(h - 4.0 / 7.0) < 1e-13
    rho = real_intensity_closed(free(), 3, 0.5).rho
    expect = math.sqrt(1 - (4 / 7) ** 2) / (math.pi * 0.75)
    assert abs(rho - expect) < 1e-13
    assert abs(rho - 0.3482954) < 5e-7


def test_inversion_symmetry():
    rng = np.random.default_rng(20)
    for trial in range(30):
        n = int(rng.integers(2, 64))
        al = VerblunskySequence(values=rng.uniform(-0.9, 0.9, n))
        x = rng.uniform(0.05, 0.95) * rng.choice([-1.0, 1.0])
        lhs = real_intensity_kernel(al, n, 1.0 / x).rho
        rhs = x * x * real_intensity_kernel(al, n, x).rho
        assert abs(lhs - rhs) <= 1e-10 * max(rhs, 1e-15)


def test_real_route_agreement():
    rng = np.random.default_rng(21)
    for trial in range(120):
        n = int(rng.integers(2, 129))
        al = VerblunskySequence(values=rng.uniform(-0.9, 0.9, n))
        x = rng.uniform(-2.0, 2.0)
        if abs(1.0 - x * x) <= 1e-3:
            continue
        a = real_intensity_kernel(al, n, x).rho
        b = real_intensity_closed(al, n, x).rho
        assert abs(a - b) <= 1e-8 * max(a, 1e-15)


def test_dispatch_grid_is_continuous_at_cutoff():
    al = VerblunskySequence(values=np.linspace(-0.5, 0.5, 16))
    xs = np.linspace(0.9985, 1.0015, 31)
    rho = real_intensity_grid(al, 16, xs)
    assert np.all(np.isfinite(rho))
    assert np.all(rho > 0)


def test_h_two_route_identity():
    # h from the Blaschke quotient of degree n equals the expression through
    # x * b_{n-1}(x)
    rng = np.random.default_rng(22)
    for trial in range(25):
        n = int(rng.integers(2, 40))
        al = VerblunskySequence(values=rng.uniform(-0.9, 0.9, n))
        x = rng.uniform(-0.95, 0.95)
        a = h_closed(al, n, x)
        b = h_alt(al, n, x)
        assert abs(a - b) <= 1e-10 * max(abs(a), 1.0)


def test_complex_conjugation_symmetry():
    rng = np.random.default_rng(23)
    for trial in range(15):
        n = int(rng.integers(2, 32))
        al = VerblunskySequence(values=rng.uniform(-0.9, 0.9, n))
        z = complex(rng.uniform(-1.2, 1.2), rng.uniform(0.1, 1.2))
        a = complex_intensity(al, n, z).rho
        b = complex_intensity(al, n, np.conj(z)).rho
        assert a == b


def test_complex_routes_agree_in_annulus():
    rng = np.random.default_rng(24)
    done = 0
    while done < 50:
        al = VerblunskySequence(values=rng.uniform(-0.9, 0.9, 8))
        z = complex(rng.uniform(-0.9, 0.9), rng.uniform(-0.9, 0.9))
        if not (0.3 < abs(z) < 0.9 and abs(z.imag) > 0.2):
            continue
        a = complex_intensity(al, 8, z, route="kernel_form").rho
        b = complex_intensity(al, 8, z, route="sigma_decomposition").rho
        assert abs(a - b) <= 1e-8 * max(a, 1e-15)
        done += 1


def test_complex_intensity_rejects_real_points():
    with pytest.raises(OutOfDomainError):
        complex_intensity(free(), 8, 0.5 + 0.0j)


def test_complex_limit_value():
    # free ensemble at 0.5i approaches the limit density
    target = limit_complex_density(0.5j)
    assert abs(target - 0.8 / (0.5625 * math.pi)) < 1e-12
    rho = complex_intensity(free(), 512, 0.5j).rho
    assert abs(rho - target) <= 0.02 * target


def test_limit_complex_density_properties():
    assert abs(limit_complex_density(0.5j) - 0.4527074) < 5e-8
    # vanishes as z approaches the real axis
    assert limit_complex_density(0.4 + 1e-9j) < 1e-3
    # value at 2i computed independently: |1-|z|^2| = 3, |1-z^2| = 5
    expect = math.sqrt(1 - 9.0 / 25.0) / (math.pi * 9.0)
    assert abs(limit_complex_density(2j) - expect) < 1e-14
    rng = np.random.default_rng(25)
    for trial in range(40):
        z = complex(rng.uniform(-2, 2), rng.uniform(-2, 2))
        if abs(z.imag) < 1e-3 or abs(abs(z) - 1) < 1e-3:
            continue
        assert limit_complex_density(z) >= 0.0


def test_limit_real_density():
    assert abs(limit_real_density(0.0) - 1.0 / math.pi) < 1e-15
    assert abs(limit_real_density(3.0) - 1.0 / (8 * math.pi)) < 1e-15
    # quadratic-decay coefficients converge toward the same limit
    al = materialize(power_decay(0.3, 2), 512)
    rho = real_intensity_closed(al, 512, 0.5).rho
    assert abs(rho - 4.0 / (3.0 * math.pi)) <= 0.02 * 4.0 / (3.0 * math.pi)


def test_growth_log_derivative():
    # H(tau) = (e^tau - 1)/tau
    assert abs(growth_log_derivative(0.0) - 0.5) < 1e-15
    for tau in (-7.0, -1.0, -1e-4, 1e-4, 0.3, 2.0, 9.0):
        g = growth_log_derivative(tau)
        assert abs(g + growth_log_derivative(-tau) - 1.0) < 1e-13
    assert growth_log_derivative(-40.0) < 0.03
    assert abs(growth_log_derivative(-200.0)) < 0.006
    # direct ratio check away from zero
    tau = 1.7
    direct = (math.exp(tau) * (tau - 1) + 1) / (tau * (math.exp(tau) - 1))
    assert abs(growth_log_derivative(tau) - direct) < 1e-14


def test_scaling_limit_density():
    assert abs(scaling_limit_density(0.0) - 1.0 / (24 * math.pi)) < 1e-12
    # series branch and closed branch meet smoothly
    a = scaling_limit_density(0.0099)
    b = scaling_limit_density(0.0101)
    assert abs(a - b) < 1e-8
    # matches a finite difference of the log-derivative
    h = 1e-5
    for tau in (-2.0, 0.5, 3.0):
        fd = (growth_log_derivative(tau + h) - growth_log_derivative(tau - h)) / (2 * h)
        assert abs(scaling_limit_density(tau) - fd / (2 * math.pi)) < 1e-9


def test_grid_matches_scalar():
    al = VerblunskySequence(values=[0.3, -0.4, 0.2, 0.1])
    xs = np.array([-0.7, 0.1, 0.6])
    grid = real_intensity_closed_grid(al, 4, xs)
    for x, g in zip(xs, grid):
        assert abs(g - real_intensity_closed(al, 4, x).rho) < 1e-14
    gridk = real_intensity_kernel_grid(al, 4, xs)
    for x, g in zip(xs, gridk):
        assert abs(g - real_intensity_kernel(al, 4, x).rho) < 1e-14
