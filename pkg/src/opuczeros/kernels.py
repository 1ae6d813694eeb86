"""Christoffel-Darboux kernels by direct summation and by the closed form.

Direct sums run a single recurrence sweep and accumulate the kernel terms
alongside; mantissa rescaling of the recurrence is mirrored on the
accumulators so every returned quantity shares one log-scale exponent.
"""

from collections import namedtuple
from dataclasses import dataclass

import numpy as np

from .errors import OutOfDomainError
from .szego import as_verblunsky, evaluate, _step, _rescale

# CD quotients have a 0/0 structure on z*conj(w) = 1; below this cutoff the
# direct sum must be used.
CD_CUTOFF = 1e-4

ScaledKernel = namedtuple("ScaledKernel", ["k", "k10", "k11", "log_scale"])


def _abs2(v):
    return v.real * v.real + v.imag * v.imag


@dataclass
class KernelBundle:
    """The six kernel quantities entering the complex intensity at a point z.

    True values are the stored fields times exp(log_scale).  For real
    coefficients one sweep at z suffices: phi_i(conj z) = conj(phi_i(z)).
    """

    n: int
    z: complex
    k_zz: float          # K_n(z, z), real positive
    k_zzbar: complex     # K_n(z, conj z)
    k10_zz: complex      # K_n^{(1,0)}(z, z)
    k10_zzbar: complex   # K_n^{(1,0)}(z, conj z)
    k10_zbarz: complex   # K_n^{(1,0)}(conj z, z)
    k11_zz: float        # K_n^{(1,1)}(z, z), real nonnegative
    log_scale: float


def kernel_bundle(alpha, n, z):
    """All diagonal/anti-diagonal kernel sums over i = 0..n-1 at z."""
    if n < 1:
        raise OutOfDomainError("kernel sums need n >= 1")
    seq = as_verblunsky(alpha)
    a = seq.array(max(n - 1, 0))
    scalar = np.isscalar(z) or getattr(z, "ndim", 0) == 0
    zz = np.atleast_1d(np.asarray(z, dtype=complex))
    phi = np.ones_like(zz)
    phis = np.ones_like(zz)
    dphi = np.zeros_like(zz)
    dphis = np.zeros_like(zz)
    log_scale = np.zeros(zz.shape, dtype=float)
    k_zz = np.zeros(zz.shape, dtype=float)
    k_zzbar = np.zeros_like(zz)
    k10_zz = np.zeros_like(zz)
    k10_zzbar = np.zeros_like(zz)
    k11_zz = np.zeros(zz.shape, dtype=float)
    for i in range(n):
        k_zz += _abs2(phi)
        k_zzbar += phi * phi
        k10_zz += dphi * np.conj(phi)
        k10_zzbar += dphi * phi
        k11_zz += _abs2(dphi)
        if i < n - 1:
            phi, phis, dphi, dphis = _step(a[i], zz, phi, phis, dphi, dphis)
            sc = _rescale(phi, phis, dphi, dphis, log_scale)
            if sc is not None:
                sc2 = sc * sc
                k_zz /= sc2
                k_zzbar /= sc2
                k10_zz /= sc2
                k10_zzbar /= sc2
                k11_zz /= sc2
    ls = 2.0 * log_scale
    if scalar:
        return KernelBundle(n, complex(zz[0]), float(k_zz[0]), complex(k_zzbar[0]),
                            complex(k10_zz[0]), complex(k10_zzbar[0]),
                            complex(np.conj(k10_zzbar[0])), float(k11_zz[0]),
                            float(ls[0]))
    return KernelBundle(n, zz, k_zz, k_zzbar, k10_zz, k10_zzbar,
                        np.conj(k10_zzbar), k11_zz, ls)


def reversed_kernel_bundle(alpha, n, u):
    """Kernel sums for the reversed basis psi_i(u) = u^(n-1-i) phistar_i(u).

    Zeros of P_n outside the closed unit disk are zeros of the reversed
    polynomial u^(n-1) P_n(1/u) inside it, and that polynomial is the same
    Gaussian vector expressed in the psi basis.  Summing with a running
    multiply-by-u update keeps every accumulator at the scale of the local
    basis values, so the exterior intensity can be evaluated without the
    catastrophic 1/|u|^4 amplification of the naive change of variables.
    """
    if n < 1:
        raise OutOfDomainError("kernel sums need n >= 1")
    seq = as_verblunsky(alpha)
    a = seq.array(max(n - 1, 0))
    scalar = np.isscalar(u) or getattr(u, "ndim", 0) == 0
    uu = np.atleast_1d(np.asarray(u, dtype=complex))
    au2 = _abs2(uu)
    u2 = uu * uu
    ub = np.conj(uu)
    phi = np.ones_like(uu)
    phis = np.ones_like(uu)
    dphi = np.zeros_like(uu)
    dphis = np.zeros_like(uu)
    log_scale = np.zeros(uu.shape, dtype=float)
    k_zz = np.zeros(uu.shape, dtype=float)
    k_zzbar = np.zeros_like(uu)
    k10_zz = np.zeros_like(uu)
    k10_zzbar = np.zeros_like(uu)
    k11_zz = np.zeros(uu.shape, dtype=float)
    for i in range(n):
        # promote every previous term from u^(i-1-j) psi to u^(i-j) psi;
        # the derivative picks up the undifferentiated sums from one stage
        # back, then the fresh degree-i term enters with no power of u
        k11_zz = (k_zz + 2.0 * np.real(uu * k10_zz) + au2 * k11_zz
                  + _abs2(dphis))
        k10_zz = ub * k_zz + au2 * k10_zz + dphis * np.conj(phis)
        k10_zzbar = uu * k_zzbar + u2 * k10_zzbar + dphis * phis
        k_zz = au2 * k_zz + _abs2(phis)
        k_zzbar = u2 * k_zzbar + phis * phis
        if i < n - 1:
            phi, phis, dphi, dphis = _step(a[i], uu, phi, phis, dphi, dphis)
            sc = _rescale(phi, phis, dphi, dphis, log_scale)
            if sc is not None:
                sc2 = sc * sc
                k_zz /= sc2
                k_zzbar /= sc2
                k10_zz /= sc2
                k10_zzbar /= sc2
                k11_zz /= sc2
    ls = 2.0 * log_scale
    if scalar:
        return KernelBundle(n, complex(uu[0]), float(k_zz[0]),
                            complex(k_zzbar[0]), complex(k10_zz[0]),
                            complex(k10_zzbar[0]),
                            complex(np.conj(k10_zzbar[0])), float(k11_zz[0]),
                            float(ls[0]))
    return KernelBundle(n, uu, k_zz, k_zzbar, k10_zz, k10_zzbar,
                        np.conj(k10_zzbar), k11_zz, ls)


def kernel_direct(alpha, n, z, w):
    """(K_n, K_n^{(1,0)}, K_n^{(1,1)})(z, w) by direct summation."""
    if n < 1:
        raise OutOfDomainError("kernel sums need n >= 1")
    seq = as_verblunsky(alpha)
    a = seq.array(max(n - 1, 0))
    zc = complex(z)
    wc = complex(w)
    # joint sweep at z and w; one-element arrays so _rescale applies in place
    pz = np.array([1 + 0j]); psz = np.array([1 + 0j])
    dpz = np.array([0j]); dpsz = np.array([0j])
    pw = np.array([1 + 0j]); psw = np.array([1 + 0j])
    dpw = np.array([0j]); dpsw = np.array([0j])
    ls_z = np.zeros(1)
    ls_w = np.zeros(1)
    k = 0j
    k10 = 0j
    k11 = 0j
    for i in range(n):
        cw = np.conj(pw[0])
        k += pz[0] * cw
        k10 += dpz[0] * cw
        k11 += dpz[0] * np.conj(dpw[0])
        if i < n - 1:
            pz[0], psz[0], dpz[0], dpsz[0] = _step(a[i], zc, pz[0], psz[0], dpz[0], dpsz[0])
            sc = _rescale(pz, psz, dpz, dpsz, ls_z)
            scz = 1.0 if sc is None else sc[0]
            pw[0], psw[0], dpw[0], dpsw[0] = _step(a[i], wc, pw[0], psw[0], dpw[0], dpsw[0])
            sc = _rescale(pw, psw, dpw, dpsw, ls_w)
            scw = 1.0 if sc is None else sc[0]
            if scz != 1.0 or scw != 1.0:
                f = scz * scw
                k /= f
                k10 /= f
                k11 /= f
    return ScaledKernel(k, k10, k11, float(ls_z[0] + ls_w[0]))


def kernel_cd(alpha, n, z, w):
    """Closed-form (K_n, K_n^{(1,0)}, K_n^{(1,1)})(z, w) from degree-n values.

    Raises OutOfDomainError near the diagonal z*conj(w) = 1, where the
    quotients lose digits and the caller should fall back to kernel_direct.
    """
    zc = complex(z)
    wc = complex(w)
    wb = np.conj(wc)
    d = 1.0 - zc * wb
    if abs(d) < CD_CUTOFF * (1.0 + abs(zc) * abs(wc)):
        raise OutOfDomainError("too close to the CD diagonal; use kernel_direct")
    evz = evaluate(alpha, n, zc)
    evw = evaluate(alpha, n, wc)
    # values at conj(w) from real coefficients: phi_n(conj w) = conj(phi_n(w))
    pwb, pswb, dpwb, dpswb = (np.conj(evw.phi), np.conj(evw.phi_star),
                              np.conj(evw.dphi), np.conj(evw.dphi_star))
    k = (evz.phi_star * pswb - evz.phi * pwb) / d
    k10 = (evz.dphi_star * pswb - evz.dphi * pwb) / d + wb * k / d
    k11 = ((evz.dphi_star * dpswb - evz.dphi * dpwb) / d
           + zc * (evz.dphi_star * pswb - evz.dphi * pwb) / (d * d)
           + wb * (evz.phi_star * dpswb - evz.phi * dpwb) / (d * d)
           + (1.0 + zc * wb) * k / (d * d))
    return ScaledKernel(k, k10, k11, evz.log_scale + evw.log_scale)


def christoffel(alpha, n, z):
    """Christoffel function lambda_n(z) = 1/K_n(z, z), positive."""
    b = kernel_bundle(alpha, n, z)
    return np.exp(-b.log_scale) / b.k_zz
