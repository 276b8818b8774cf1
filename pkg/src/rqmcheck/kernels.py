"""Euclidean covariant two-point kernels and their certificates.

Four kernels, one per :class:`~rqmcheck.spacetime.KernelVariant`:

* momentum space: ``D^s(p_e . sigma_variant) / (p_e^2 + m^2)``
* on shell (after the energy contour integral): ``D^s(M_v(p)) / omega`` with
  ``M_v(p)`` the positive Hermitian matrix at ``p_e^0 -> -i omega``
* position space (s <= 1): derivative polynomial acting on the scalar
  ``(2 m^2 / (2 pi)^2) K1(m|z|) / (m|z|)``

The scalar position kernel is the 4D inverse Fourier transform of
``2 / ((2 pi)^4 (p^2 + m^2))``; the prefactor above is fixed by that
identity and enforced by an independent radial-integral oracle in the
acceptance suite.
"""

from __future__ import annotations

import numpy as np

from .report import CheckReport, make_report
from .spacetime import (EUCL_SIGMA, KernelVariant, canonical_boost,
                        eucl_to_matrix, euclidean_square, mink_to_matrix,
                        orth_from_pair)
from .spin import dim, wigner_d, wigner_d_entries

_EULER_GAMMA = 0.5772156649015328606
_K_SWITCH = 2.0


def _bessel_k01_series(x: np.ndarray):
    """K0 and K1 for 0 < x < 2 from the ascending series with log term."""
    x = np.asarray(x, dtype=float)
    quarter = 0.25 * x * x
    lg = np.log(0.5 * x)
    # I0, I1 and the psi-weighted companion sums, all in one sweep
    term0 = np.ones_like(x)
    term1 = 0.5 * x
    i0 = term0.copy()
    i1 = term1.copy()
    psi = -_EULER_GAMMA                        # psi(1)
    k0_sum = psi * term0
    k1_sum = 0.5 * (psi + psi + 1.0) * term1   # (psi(1) + psi(2)) / 2
    for j in range(1, 30):
        term0 = term0 * quarter / (j * j)
        term1 = term1 * quarter / (j * (j + 1))
        psi += 1.0 / j            # psi(j + 1)
        i0 += term0
        i1 += term1
        k0_sum += psi * term0
        k1_sum += 0.5 * (2.0 * psi + 1.0 / (j + 1)) * term1
    k0 = -lg * i0 + k0_sum
    k1 = lg * i1 + 1.0 / x - k1_sum
    return k0, k1


def _bessel_k01_cf(x: np.ndarray):
    """K0 and K1 for x >= 2 via Steed's continued fraction (order mu = 0)."""
    x = np.asarray(x, dtype=float)
    b = 2.0 * (1.0 + x)
    d = 1.0 / b
    h = d.copy()
    delh = d.copy()
    q1 = np.zeros_like(x)
    q2 = np.ones_like(x)
    a1 = 0.25
    q = np.full_like(x, a1)
    c = np.full_like(x, a1)
    a = -a1
    s = 1.0 + q * delh
    for i in range(2, 80):
        a -= 2.0 * (i - 1)
        c = -a * c / i
        qnew = (q1 - b * q2) / a
        q1 = q2
        q2 = qnew
        q = q + c * qnew
        b = b + 2.0
        d = 1.0 / (b + a * d)
        delh = (b * d - 1.0) * delh
        h = h + delh
        s = s + q * delh
    h = a1 * h
    k0 = np.sqrt(np.pi / (2.0 * x)) * np.exp(-x) / s
    k1 = k0 * (x + 0.5 - h) / x
    return k0, k1


def _bessel_k01(x):
    x = np.asarray(x, dtype=float)
    if np.any(x <= 0.0):
        raise ValueError("modified Bessel K requires positive argument")
    k0 = np.empty_like(x)
    k1 = np.empty_like(x)
    small = x < _K_SWITCH
    if np.any(small):
        k0[small], k1[small] = _bessel_k01_series(x[small])
    if np.any(~small):
        k0[~small], k1[~small] = _bessel_k01_cf(x[~small])
    return k0, k1


def bessel_k0(x):
    """Modified Bessel function of the second kind, order 0."""
    scalar = np.isscalar(x) or np.ndim(x) == 0
    k0, _ = _bessel_k01(np.atleast_1d(np.asarray(x, dtype=float)))
    return float(k0[0]) if scalar else k0


def bessel_k1(x):
    """Modified Bessel function of the second kind, order 1.

    Two-regime evaluation (series below 2, continued fraction above),
    relative accuracy around 1e-14 on [1e-6, 50].
    """
    scalar = np.isscalar(x) or np.ndim(x) == 0
    _, k1 = _bessel_k01(np.atleast_1d(np.asarray(x, dtype=float)))
    return float(k1[0]) if scalar else k1


def bessel_k2(x):
    """Order 2 via the upward recurrence ``K2 = K0 + 2 K1 / x``."""
    scalar = np.isscalar(x) or np.ndim(x) == 0
    xa = np.atleast_1d(np.asarray(x, dtype=float))
    k0, k1 = _bessel_k01(xa)
    k2 = k0 + 2.0 * k1 / xa
    return float(k2[0]) if scalar else k2


def scalar_position_kernel(m: float, r):
    """Scalar position kernel ``(2 m^2/(2 pi)^2) K1(m r)/(m r)`` at radius r."""
    r = np.asarray(r, dtype=float)
    u = m * r
    return 2.0 * m * m / (2.0 * np.pi) ** 2 * bessel_k1(u) / u


def momentum_kernel(variant: KernelVariant, m: float, two_s: int,
                    p_e) -> np.ndarray:
    """Euclidean momentum-space kernel ``D^s(p_e . sigma_v) / (p_e^2 + m^2)``."""
    p_e = np.asarray(p_e, dtype=float)
    denom = euclidean_square(p_e) + m * m
    if denom <= 1e-14:
        raise ValueError("momentum lies on the Euclidean mass sphere pole")
    M = eucl_to_matrix(p_e, variant)
    return wigner_d_entries(two_s, M[0, 0], M[0, 1], M[1, 0], M[1, 1]) / denom


def onshell_matrix(variant: KernelVariant, m: float, p) -> np.ndarray:
    """Positive Hermitian 2x2 matrix at the on-shell point of a variant."""
    p = np.asarray(p, dtype=float)
    omega = np.sqrt(m * m + np.dot(p, p))
    # p_e^0 -> -i omega turns the Euclidean time slot (i p_e^0) into omega
    pe = np.array([-1j * omega, p[0], p[1], p[2]], dtype=complex)
    return np.tensordot(pe, EUCL_SIGMA[variant], axes=(0, 0))


def onshell_kernel(variant: KernelVariant, m: float, two_s: int,
                   p) -> np.ndarray:
    """On-shell kernel ``D^s(M_v(p)) / omega`` (mass-rescaled internally)."""
    p = np.asarray(p, dtype=float)
    omega = np.sqrt(m * m + np.dot(p, p))
    M = onshell_matrix(variant, m, p) / m
    D = wigner_d_entries(two_s, M[0, 0], M[0, 1], M[1, 0], M[1, 1])
    return D * (m ** two_s) / omega


def onshell_kernel_grid(variant: KernelVariant, m: float, two_s: int,
                        points: np.ndarray) -> np.ndarray:
    """Vectorized on-shell kernel, shape ``(2s+1, 2s+1, N)`` for (N, 3) input."""
    points = np.asarray(points, dtype=float)
    omega = np.sqrt(m * m + np.einsum("ni,ni->n", points, points))
    sig = EUCL_SIGMA[variant]
    pe = np.empty((points.shape[0], 4), dtype=complex)
    pe[:, 0] = -1j * omega
    pe[:, 1:] = points
    M = np.einsum("nk,kij->nij", pe, sig) / m
    D = wigner_d_entries(two_s, M[:, 0, 0], M[:, 0, 1], M[:, 1, 0], M[:, 1, 1])
    return D * (m ** two_s) / omega


def position_kernel(variant: KernelVariant, m: float, two_s: int,
                    z) -> np.ndarray:
    """Position-space kernel for s in {0, 1/2, 1}.

    The spin structure is applied analytically: entries of the degree-2s
    derivative polynomial act on the radial scalar through the chain rule,
    so no numerical differentiation is involved.
    """
    z = np.asarray(z, dtype=float)
    r = np.sqrt(euclidean_square(z))
    if r <= 0.0:
        raise ValueError("position kernel is singular at the origin")
    if two_s > 2:
        raise ValueError("position kernel supports two_s <= 2; use the "
                         "momentum representation for higher spin")
    kappa = 2.0 * m * m / (2.0 * np.pi) ** 2
    u = m * r
    g = kappa * bessel_k1(u) / u
    if two_s == 0:
        return np.array([[g]], dtype=complex)
    gp = -kappa * m * bessel_k2(u) / u                     # dg/dr
    if two_s == 1:
        # D^(1/2)(-i grad . sigma_v) g = -i (g'/r) * (z . sigma_v)
        return -1j * (gp / r) * eucl_to_matrix(z, variant)
    gpp = kappa * m * m * (bessel_k1(u) / u + 3.0 * bessel_k2(u) / u ** 2)
    sig = EUCL_SIGMA[variant]
    la = sig[:, 0, 0]
    lb = sig[:, 0, 1]
    lc = sig[:, 1, 0]
    ld = sig[:, 1, 1]
    sqrt2 = np.sqrt(2.0)
    products = [
        [(1.0, la, la)],
        [(sqrt2, la, lb)],
        [(1.0, lb, lb)],
        [(sqrt2, la, lc)],
        [(1.0, la, ld), (1.0, lb, lc)],
        [(sqrt2, lb, ld)],
        [(1.0, lc, lc)],
        [(sqrt2, lc, ld)],
        [(1.0, ld, ld)],
    ]
    aniso = (gpp - gp / r) / (r * r)
    iso = gp / r
    out = np.empty((3, 3), dtype=complex)
    for idx, pairs in enumerate(products):
        val = 0.0j
        for w, uvec, vvec in pairs:
            # (-i du)(-i dv) g = -[(g''-g'/r)/r^2 (u.z)(v.z) + (g'/r) u.v]
            uz = np.dot(uvec, z)
            vz = np.dot(vvec, z)
            uv = np.dot(uvec, vvec)
            val += -w * (aniso * uz * vz + iso * uv)
        out[idx // 3, idx % 3] = val
    return out


def check_factorization(m: float, two_s: int, p,
                        tolerance: float = 1e-10) -> CheckReport:
    """Positivity factorization of the on-shell spin matrix.

    Measures ``max |D^s(p.sigma/m) - D^s(Lc(p)) D^s(Lc(p))^dag|`` with the
    canonical boost Lc(p).
    """
    p = np.asarray(p, dtype=float)
    omega = np.sqrt(m * m + np.dot(p, p))
    M = mink_to_matrix(np.array([omega, p[0], p[1], p[2]])) / m
    lhs = wigner_d_entries(two_s, M[0, 0], M[0, 1], M[1, 0], M[1, 1])
    dboost = wigner_d(two_s, canonical_boost(p, m))
    dev = np.max(np.abs(lhs - dboost @ dboost.conj().T))
    return make_report("kernel_factorization", dev, tolerance,
                       inputs={"two_s": two_s, "m": m,
                               "p": [float(v) for v in p]})


#: how the SU(2) pair (A, B) acts on each variant's matrix realization
def _variant_pair_action(variant: KernelVariant, A: np.ndarray,
                         B: np.ndarray):
    if variant is KernelVariant.RIGHT:
        return A, B.T
    if variant is KernelVariant.RIGHT_DUAL:
        return A.conj(), B.conj().T
    if variant is KernelVariant.LEFT:
        return B, A.T
    if variant is KernelVariant.LEFT_DUAL:
        return B.conj(), A.conj().T
    raise ValueError(variant)


def check_kernel_covariance(variant: KernelVariant, m: float, two_s: int,
                            A, B, p_e,
                            tolerance: float = 1e-11) -> CheckReport:
    """Covariance of the momentum kernel under the Euclidean pair action.

    Compares ``D^s`` of the variant-appropriate two-sided action on
    ``p_e . sigma_v`` against ``D^s`` at the rotated momentum O(A,B) p_e.
    """
    A = np.asarray(A, dtype=complex)
    B = np.asarray(B, dtype=complex)
    p_e = np.asarray(p_e, dtype=float)
    O = orth_from_pair(A, B)
    left, right = _variant_pair_action(variant, A, B)
    M = left @ eucl_to_matrix(p_e, variant) @ right
    lhs = wigner_d_entries(two_s, M[0, 0], M[0, 1], M[1, 0], M[1, 1])
    Mr = eucl_to_matrix(O @ p_e, variant)
    rhs = wigner_d_entries(two_s, Mr[0, 0], Mr[0, 1], Mr[1, 0], Mr[1, 1])
    dev = np.max(np.abs(lhs - rhs))
    return make_report("kernel_covariance", dev, tolerance,
                       inputs={"variant": variant.value, "two_s": two_s})


def check_residue_consistency(variant: KernelVariant, m: float, two_s: int,
                              p, tau: float, window: float | None = None,
                              nodes: int = 200_000,
                              tolerance: float = 1e-4) -> CheckReport:
    """Energy contour integral of the momentum kernel vs the on-shell one.

    Integrates ``(1/pi) exp(-i p0 tau) D^s(p_e.sigma_v) / (p0^2 + omega^2)``
    over p0 in [-window, window] by trapezoid and compares against
    ``onshell_kernel * exp(-omega tau)``.  The polynomial part of the
    numerator (pure contact terms, vanishing for tau > 0) is divided out
    exactly entry by entry, and the slowly decaying 1/p0 and 1/p0^2 tails
    are corrected with sine/cosine integrals so the comparison is uniform
    in spin.
    """
    from scipy.special import sici

    p = np.asarray(p, dtype=float)
    if window is None:
        window = 200.0 * m
    omega2 = m * m + np.dot(p, p)
    omega = np.sqrt(omega2)
    n = dim(two_s)
    # numerator entries as exact polynomials in p0 (degree <= 2s)
    nodes_p0 = np.arange(two_s + 1, dtype=float)
    vander = np.vander(nodes_p0, two_s + 1, increasing=True)
    samples = np.empty((two_s + 1, n, n), dtype=complex)
    for idx, p0 in enumerate(nodes_p0):
        M = eucl_to_matrix(np.array([p0, p[0], p[1], p[2]]), variant)
        samples[idx] = wigner_d_entries(two_s, M[0, 0], M[0, 1],
                                        M[1, 0], M[1, 1])
    coeffs = np.linalg.solve(vander, samples.reshape(two_s + 1, -1))
    coeffs = coeffs.reshape(two_s + 1, n, n)      # coeffs[k] multiplies p0^k

    grid = np.linspace(-window, window, nodes)
    weight = np.exp(-1j * grid * tau)
    denom = grid * grid + omega2
    si_val, _ = sici(window * tau)
    tail_lin = -2j * (0.5 * np.pi - si_val)
    tail_const = (2.0 * np.cos(window * tau) / window
                  - 2.0 * tau * (0.5 * np.pi - si_val))
    result = np.zeros((n, n), dtype=complex)
    for i in range(n):
        for j in range(n):
            poly = np.polynomial.Polynomial(coeffs[:, i, j])
            quot, rem = divmod(poly, np.polynomial.Polynomial([omega2, 0, 1]))
            # quot is the distributional part: zero for tau > 0
            rem_c = rem.coef
            c0 = rem_c[0] if len(rem_c) > 0 else 0.0
            c1 = rem_c[1] if len(rem_c) > 1 else 0.0
            vals = (c0 + c1 * grid) / denom * weight
            integral = np.trapezoid(vals, grid)
            integral += c1 * tail_lin + c0 * tail_const
            result[i, j] = integral / np.pi
    target = onshell_kernel(variant, m, two_s, p) * np.exp(-omega * tau)
    scale = np.max(np.abs(target))
    dev = np.max(np.abs(result - target)) / scale
    return make_report("residue_consistency", dev, tolerance,
                       inputs={"variant": variant.value, "two_s": two_s,
                               "tau": tau})
