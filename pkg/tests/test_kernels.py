"""Covariant kernels, Bessel evaluation, positivity and covariance checks."""

import numpy as np
import pytest

from oracles import bessel_k1_integral, radial_position_kernel
from rqmcheck import kernels as kr
from rqmcheck import spacetime as st
from rqmcheck import spin
from rqmcheck.spacetime import KernelVariant as KV


def test_bessel_k1_against_integral_oracle():
    assert abs(kr.bessel_k1(1.0) - bessel_k1_integral(1.0)) < 1e-12
    # frozen oracle values
    assert abs(kr.bessel_k1(1.0) - 0.6019072301972346) < 1e-12
    assert abs(kr.bessel_k1(10.0) - 1.8648773453825582e-05) < 1e-16
    rel = abs(kr.bessel_k1(10.0) - bessel_k1_integral(10.0)) \
        / bessel_k1_integral(10.0)
    assert rel < 1e-12


def test_bessel_k1_range_accuracy():
    from scipy.special import k1 as scipy_k1
    xs = np.concatenate([np.geomspace(1e-6, 1.999, 200),
                         np.linspace(2.0, 50.0, 200)])
    rel = np.abs(kr.bessel_k1(xs) - scipy_k1(xs)) / scipy_k1(xs)
    assert rel.max() < 1e-12


def test_bessel_small_argument_limit():
    assert abs(1e-5 * kr.bessel_k1(1e-5) - 1.0) < 1e-4


def test_bessel_regime_seam_is_continuous():
    below = kr.bessel_k1(2.0 - 1e-12)
    above = kr.bessel_k1(2.0 + 1e-12)
    assert abs(below - above) / above < 1e-11


def test_bessel_rejects_nonpositive():
    with pytest.raises(ValueError):
        kr.bessel_k1(0.0)
    with pytest.raises(ValueError):
        kr.bessel_k0(-1.0)


def test_momentum_kernel_examples():
    val = kr.momentum_kernel(KV.RIGHT, 1.0, 0, [0, 0, 0, 0])
    assert np.allclose(val, [[1.0]])
    val = kr.momentum_kernel(KV.RIGHT, 1.0, 1, [1.0, 0, 0, 0])
    assert np.max(np.abs(val - 0.5j * np.eye(2))) < 1e-15


def test_momentum_kernel_is_wigner_of_matrix():
    rng = np.random.default_rng(0)
    for v in KV:
        pe = rng.normal(size=4)
        denom = st.euclidean_square(pe) + 1.0
        expected = spin.wigner_d_entries(
            2, *st.eucl_to_matrix(pe, v).reshape(-1)) / denom
        got = kr.momentum_kernel(v, 1.0, 2, pe)
        assert np.max(np.abs(got - expected)) == 0.0


def test_momentum_kernel_pole_guard():
    with pytest.raises(ValueError):
        kr.momentum_kernel(KV.RIGHT, 0.0, 0, [0, 0, 0, 0])


def test_onshell_examples():
    p = np.array([0.3, 0.4, 0.5])
    m = 1.3
    omega = np.sqrt(m * m + p @ p)
    assert abs(kr.onshell_kernel(KV.RIGHT, m, 0, p)[0, 0]
               - 1.0 / omega) < 1e-14
    rest = kr.onshell_kernel(KV.RIGHT, 2.7, 1, [0, 0, 0])
    assert np.max(np.abs(rest - np.eye(2))) < 1e-14


def test_onshell_positive_hermitian_all_variants():
    rng = np.random.default_rng(1)
    for _ in range(100):
        p = rng.normal(size=3) * 1.5
        two_s = int(rng.integers(0, 5))
        m = float(rng.uniform(0.5, 2.0))
        for v in KV:
            K = kr.onshell_kernel(v, m, two_s, p)
            assert np.max(np.abs(K - K.conj().T)) < 1e-12
            evals = np.linalg.eigvalsh(K)
            assert evals.min() >= -1e-12 * max(evals.max(), 1.0)
            assert evals.min() > 0.0


def test_factorization():
    rng = np.random.default_rng(2)
    rep = kr.check_factorization(1.0, 2, [0.0, 0.0, 0.0])
    assert rep.measured == 0.0
    for _ in range(30):
        p = rng.normal(size=3)
        for two_s in (0, 1, 2, 3, 4):
            assert kr.check_factorization(1.0, two_s, p,
                                          tolerance=1e-10).passed
    big = kr.check_factorization(1.0, 2, [0.0, 0.0, 10.0], tolerance=1e-8)
    assert big.passed


def test_kernel_covariance():
    rng = np.random.default_rng(3)
    pe = rng.normal(size=4)
    for v in KV:
        ident = kr.check_kernel_covariance(v, 1.0, 1, np.eye(2), np.eye(2),
                                           pe)
        assert ident.measured == 0.0
        A = st.rotation_su2(rng.normal(size=3), rng.uniform(0.3, 2.0))
        B = st.rotation_su2(rng.normal(size=3), rng.uniform(0.3, 2.0))
        assert kr.check_kernel_covariance(v, 1.0, 1, A, B, pe,
                                          tolerance=1e-11).passed
    # rotations leave the rest kernel fixed
    A = st.rotation_su2([0.1, 0.7, -0.3], 1.1)
    pe_rest = np.array([0.8, 0.0, 0.0, 0.0])
    for v in KV:
        before = kr.momentum_kernel(v, 1.0, 2, pe_rest)
        O = st.orth_from_pair(A, A.conj())
        after = kr.momentum_kernel(v, 1.0, 2, O @ pe_rest)
        assert np.max(np.abs(before - after)) < 1e-12


def test_dual_metric_identity():
    rng = np.random.default_rng(4)
    pe = rng.normal(size=4)
    half_r = kr.momentum_kernel(KV.RIGHT, 1.0, 1, pe)
    half_rd = kr.momentum_kernel(KV.RIGHT_DUAL, 1.0, 1, pe)
    assert np.max(np.abs(half_rd - st.SIGMA2 @ half_r @ st.SIGMA2)) < 1e-12
    for two_s in (2, 3, 4):
        rot = spin.wigner_d(two_s, 1j * st.SIGMA2)
        lhs = kr.momentum_kernel(KV.RIGHT_DUAL, 1.0, two_s, pe)
        rhs = ((-1) ** two_s * rot
               @ kr.momentum_kernel(KV.RIGHT, 1.0, two_s, pe) @ rot)
        assert np.max(np.abs(lhs - rhs)) < 1e-12


def test_position_kernel_scalar_value_and_symmetry():
    got = kr.position_kernel(KV.RIGHT, 1.0, 0, [1.0, 0, 0, 0])[0, 0].real
    expected = 2.0 / (2.0 * np.pi) ** 2 * kr.bessel_k1(1.0)
    assert abs(got - expected) < 1e-16
    # frozen radial-oracle value at unit radius
    assert abs(got - 0.030492976503232436) < 1e-12
    z1 = np.array([0.6, 0.0, 0.8, 0.0])
    z2 = np.array([0.0, 1.0, 0.0, 0.0])
    a = kr.position_kernel(KV.RIGHT, 1.3, 0, z1)[0, 0]
    b = kr.position_kernel(KV.RIGHT, 1.3, 0, z2)[0, 0]
    assert abs(a - b) < 1e-14


def test_position_kernel_matches_radial_oracle():
    for r in (0.3, 1.0, 4.0):
        got = kr.position_kernel(KV.RIGHT, 1.0, 0, [r, 0, 0, 0])[0, 0].real
        oracle = radial_position_kernel(1.0, r)
        assert abs(got - oracle) / abs(oracle) < 1e-6


def test_position_kernel_decay():
    near = kr.scalar_position_kernel(1.0, 1.0)
    far = kr.scalar_position_kernel(1.0, 20.0)
    assert far / near < 1e-7


def test_position_kernel_spin_half_matches_finite_differences():
    z = np.array([0.8, 0.3, -0.4, 0.6])
    m = 1.1
    h = 1e-5

    def scalar(zz):
        return kr.scalar_position_kernel(m, np.sqrt(zz @ zz))

    for v in (KV.RIGHT, KV.LEFT, KV.RIGHT_DUAL, KV.LEFT_DUAL):
        got = kr.position_kernel(v, m, 1, z)
        fd = np.zeros((2, 2), dtype=complex)
        for mu in range(4):
            e = np.zeros(4)
            e[mu] = h
            fd += -1j * st.EUCL_SIGMA[v][mu] * (scalar(z + e)
                                                - scalar(z - e)) / (2 * h)
        assert np.max(np.abs(got - fd)) < 1e-9


def test_position_kernel_spin_one_matches_finite_differences():
    z = np.array([0.9, 0.2, -0.3, 0.5])
    m = 1.0
    h = 1e-3

    def scalar(zz):
        return kr.scalar_position_kernel(m, np.sqrt(zz @ zz))

    got = kr.position_kernel(KV.RIGHT, m, 2, z)
    sig = st.EUCL_SIGMA[KV.RIGHT]
    la, lb, lc, ld = sig[:, 0, 0], sig[:, 0, 1], sig[:, 1, 0], sig[:, 1, 1]
    sqrt2 = np.sqrt(2.0)
    prods = [[(1, la, la)], [(sqrt2, la, lb)], [(1, lb, lb)],
             [(sqrt2, la, lc)], [(1, la, ld), (1, lb, lc)],
             [(sqrt2, lb, ld)], [(1, lc, lc)], [(sqrt2, lc, ld)],
             [(1, ld, ld)]]

    def d2(mu, nu):
        e1 = np.zeros(4)
        e2 = np.zeros(4)
        e1[mu] = h
        e2[nu] = h
        return (scalar(z + e1 + e2) - scalar(z + e1 - e2)
                - scalar(z - e1 + e2) + scalar(z - e1 - e2)) / (4 * h * h)

    hess = np.array([[d2(mu, nu) for nu in range(4)] for mu in range(4)])
    fd = np.zeros((3, 3), dtype=complex)
    for idx, pairs in enumerate(prods):
        val = 0.0j
        for wgt, u, v in pairs:
            val += -wgt * np.einsum("m,n,mn->", u, v, hess)
        fd[idx // 3, idx % 3] = val
    scale = np.max(np.abs(got))
    assert np.max(np.abs(got - fd)) < 1e-5 * scale


def test_position_kernel_guards():
    with pytest.raises(ValueError):
        kr.position_kernel(KV.RIGHT, 1.0, 0, [0.0, 0, 0, 0])
    with pytest.raises(ValueError):
        kr.position_kernel(KV.RIGHT, 1.0, 3, [1.0, 0, 0, 0])


def test_residue_consistency():
    for two_s in (0, 1, 2):
        rep = kr.check_residue_consistency(KV.RIGHT, 1.0, two_s,
                                           [0.3, -0.2, 0.5], 1.0,
                                           nodes=200001)
        assert rep.passed, rep.measured
