"""Named verification suites executed by the command-line runner.

Every suite is a pure function from a :class:`RunConfig` to a list of
:class:`CheckReport`; results are deterministic given the configured
seeds.  Tolerances can be loosened (never tightened) through the config;
loosened checks are flagged in their report inputs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import generators as gn
from . import hilbert as hl
from . import kernels as kr
from . import spacetime as st
from . import spin as sp
from .report import CheckReport, make_report

ALL_VARIANTS = tuple(st.KernelVariant)

#: documented default tolerances, overridable (loosening only) per run
DEFAULT_TOLERANCES = {
    "roundtrip": 1e-14,
    "det_preservation": 1e-12,
    "intertwining": 1e-11,
    "theta_conjugation": 1e-12,
    "polar_reassembly": 1e-11,
    "boost_identity": 1e-12,
    "wigner_rotation_unitarity": 1e-10,
    "group_law_su2": 1e-11,
    "group_law_sl2c": 1e-8,
    "cg_addition": 1e-10,
    "cg_orthogonality": 1e-12,
    "spin_algebra": 1e-12,
    "conj_transpose": 1e-12,
    "factorization": 1e-10,
    "kernel_covariance": 1e-11,
    "kernel_positivity": 1e-12,
    "dual_metric": 1e-12,
    "bessel_oracle": 1e-10,
    "bessel_small_arg": 1e-4,
    "kernel_decay": 1e-7,
    "residue": 1e-4,
    "gram_eig": 1e-10,
    "commutator": 1e-13,
    "hermiticity": 1e-7,
    "semigroup": 1e-10,
    "wedge": 1.0,
    "irrep_group_law": 1e-6,
    "irrep_unitarity": 1e-6,
    "casimir": 1e-7,
    "projection_phase": 1e-4,
    "projection_orthogonality": 1e-4,
    "mc_sigmas": 3.0,
    "mc_far_ratio": 1e-3,
    "mc_monotone": 0.02,
}


@dataclass
class RunConfig:
    suites: tuple = ("all",)
    masses: tuple = (1.0,)
    two_spins: tuple = (0, 1, 2)
    variants: tuple = ALL_VARIANTS
    seeds: tuple = (0,)
    tolerances: dict = field(default_factory=dict)
    jobs: int = 1
    gram_size: int = 20
    gram_nodes: int = 40
    hermiticity_pairs: int = 10
    mc_points_log2: int = 17
    mc_scrambles: int = 8
    irrep_elements: int = 20

    def __post_init__(self):
        for name, value in self.tolerances.items():
            if name not in DEFAULT_TOLERANCES:
                raise ValueError(f"unknown tolerance name {name!r}")
            if float(value) < DEFAULT_TOLERANCES[name]:
                raise ValueError(
                    f"tolerance override for {name!r} may only loosen the "
                    f"default {DEFAULT_TOLERANCES[name]}")

    def tol(self, name: str):
        """Resolved tolerance plus a flag marking loosened defaults."""
        default = DEFAULT_TOLERANCES[name]
        if name in self.tolerances:
            value = float(self.tolerances[name])
            if value < default:
                raise ValueError(
                    f"tolerance override for {name!r} may only loosen the "
                    f"default {default}")
            return value, value > default
        return default, False

    def report(self, name, tol_name, measured, inputs=None, details=None,
               negative_control=False) -> CheckReport:
        tol, loosened = self.tol(tol_name)
        inputs = dict(inputs or {})
        if loosened:
            inputs["loosened"] = True
        return make_report(name, measured, tol, inputs=inputs,
                           details=details, negative_control=negative_control)


def _rng(seed: int) -> np.random.Generator:
    return np.random.default_rng(seed)


def _random_su2(rng) -> np.ndarray:
    return st.rotation_su2(rng.normal(size=3), rng.uniform(0.1, 2.0 * np.pi))


def _random_sl2c(rng, bound: float = 2.0) -> np.ndarray:
    """Unimodular matrix with all entries bounded in magnitude."""
    while True:
        a = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
        det = np.linalg.det(a)
        if abs(det) < 1e-3:
            continue
        a = a / np.sqrt(det)
        if np.max(np.abs(a)) <= bound:
            return a


# ---------------------------------------------------------------------------
# suite bodies
# ---------------------------------------------------------------------------

def suite_algebra(cfg: RunConfig):
    out = []
    for seed in cfg.seeds:
        rng = _rng(seed)
        worst_rt = 0.0
        worst_det = 0.0
        for _ in range(100):
            x = rng.normal(size=4)
            X = st.mink_to_matrix(x)
            worst_rt = max(worst_rt, float(np.max(np.abs(
                st.matrix_to_mink(X) - x))))
            A = _random_sl2c(rng)
            B = _random_sl2c(rng)
            Xe = st.eucl_to_matrix(rng.normal(size=4))
            worst_det = max(worst_det, abs(np.linalg.det(A @ Xe @ B.T)
                                           - np.linalg.det(Xe)))
        out.append(cfg.report("fourvector_roundtrip", "roundtrip", worst_rt,
                              {"seed": seed}))
        out.append(cfg.report("det_preservation", "det_preservation",
                              worst_det, {"seed": seed}))

        worst_int = 0.0
        worst_orth = 0.0
        pair_actions = {
            st.KernelVariant.RIGHT: lambda A, B: (A, B.T),
            st.KernelVariant.RIGHT_DUAL: lambda A, B: (A.conj(), B.conj().T),
            st.KernelVariant.LEFT: lambda A, B: (B, A.T),
            st.KernelVariant.LEFT_DUAL: lambda A, B: (B.conj(), A.conj().T),
        }
        for _ in range(25):
            A = _random_su2(rng)
            B = _random_su2(rng)
            O = st.orth_from_pair(A, B)
            worst_orth = max(worst_orth, float(np.max(np.abs(
                O @ O.T - np.eye(4)))))
            xe = rng.normal(size=4)
            for variant in cfg.variants:
                left, right = pair_actions[variant](A, B)
                lhs = left @ st.eucl_to_matrix(xe, variant) @ right
                rhs = st.eucl_to_matrix(O @ xe, variant)
                worst_int = max(worst_int, float(np.max(np.abs(lhs - rhs))))
        out.append(cfg.report("pair_intertwining", "intertwining", worst_int,
                              {"seed": seed}))
        out.append(cfg.report("pair_orthogonality", "intertwining",
                              worst_orth, {"seed": seed}))

        lam = float(rng.uniform(0.2, 1.2))
        A = st.rotation_su2([0.0, 0.0, 1.0], lam)
        Th = st.THETA
        O_rot = st.orth_from_pair(A, A.conj())
        O_bst = st.orth_from_pair(A, A.T)
        dev = max(float(np.max(np.abs(Th @ O_rot @ Th - O_rot))),
                  float(np.max(np.abs(Th @ O_bst.T @ Th - O_bst))))
        out.append(cfg.report("theta_conjugation", "theta_conjugation", dev,
                              {"seed": seed, "angle": lam}))

        worst_polar = 0.0
        worst_boost = 0.0
        worst_wig = 0.0
        for m in cfg.masses:
            for _ in range(20):
                L = _random_sl2c(rng)
                boost, rot = st.polar_decompose(L)
                worst_polar = max(worst_polar, float(np.max(np.abs(
                    boost @ rot - L))))
                p = rng.normal(size=3)
                Lc = st.canonical_boost(p, m)
                omega = math.sqrt(m * m + float(p @ p))
                target = st.mink_to_matrix([omega, *p]) / m
                worst_boost = max(worst_boost, float(np.max(np.abs(
                    Lc @ Lc.conj().T - target))))
                R1 = st.wigner_rotation(L, p, m)
                R2 = st.wigner_rotation_alt(L, p, m)
                worst_wig = max(worst_wig,
                                float(np.max(np.abs(R1 @ R1.conj().T
                                                    - np.eye(2)))),
                                float(np.max(np.abs(R1 - R2))))
        out.append(cfg.report("polar_reassembly", "polar_reassembly",
                              worst_polar, {"seed": seed}))
        out.append(cfg.report("canonical_boost_identity", "boost_identity",
                              worst_boost, {"seed": seed}))
        out.append(cfg.report("wigner_rotation", "wigner_rotation_unitarity",
                              worst_wig, {"seed": seed}))
    return out


def suite_wigner(cfg: RunConfig):
    out = []
    spins = [ts for ts in cfg.two_spins if ts <= sp.MAX_TWO_S]
    for seed in cfg.seeds:
        rng = _rng(seed)
        worst_su2 = 0.0
        worst_sl2c = 0.0
        worst_inv = 0.0
        for _ in range(20):
            A, B = _random_su2(rng), _random_su2(rng)
            As, Bs = _random_sl2c(rng), _random_sl2c(rng)
            for ts in spins:
                worst_su2 = max(worst_su2,
                                sp.check_group_law(ts, A, B).measured)
                worst_sl2c = max(worst_sl2c,
                                 sp.check_group_law(ts, As, Bs).measured)
                dinv = sp.wigner_d(ts, As) @ sp.wigner_d(
                    ts, np.linalg.inv(As))
                worst_inv = max(worst_inv, float(np.max(np.abs(
                    dinv - np.eye(ts + 1)))))
        out.append(cfg.report("group_law_su2", "group_law_su2", worst_su2,
                              {"seed": seed, "spins": list(spins)}))
        out.append(cfg.report("group_law_sl2c", "group_law_sl2c", worst_sl2c,
                              {"seed": seed, "spins": list(spins)}))
        out.append(cfg.report("group_law_inverse", "group_law_su2",
                              worst_inv, {"seed": seed}))

        A = _random_sl2c(rng)
        worst_ct = 0.0
        for ts in spins:
            D = sp.wigner_d(ts, A)
            worst_ct = max(worst_ct,
                           float(np.max(np.abs(sp.wigner_d(ts, A.conj())
                                               - D.conj()))),
                           float(np.max(np.abs(sp.wigner_d(ts, A.T) - D.T))))
        out.append(cfg.report("conjugation_transpose", "conj_transpose",
                              worst_ct, {"seed": seed}))

        worst_alg = 0.0
        for ts in spins:
            sx, sy, sz = sp.spin_matrices(ts)
            eye = np.eye(ts + 1)
            casimir = sx @ sx + sy @ sy + sz @ sz
            worst_alg = max(
                worst_alg,
                float(np.max(np.abs(sx @ sy - sy @ sx - 1j * sz))),
                float(np.max(np.abs(casimir - 0.25 * ts * (ts + 2) * eye))),
                float(np.max(np.abs((-sx.T) @ (-sy.T) - (-sy.T) @ (-sx.T)
                                    - 1j * (-sz.T)))))
        out.append(cfg.report("spin_matrix_algebra", "spin_algebra",
                              worst_alg, {"spins": list(spins)}))

        worst_orth = 0.0
        for ts1, ts2 in ((1, 1), (1, 2), (2, 2)):
            for two_s in range(abs(ts1 - ts2), ts1 + ts2 + 2, 2):
                for two_mu in range(-two_s, two_s + 2, 2):
                    total = 0.0
                    for tm1 in range(-ts1, ts1 + 2, 2):
                        total += sp.clebsch_gordan(
                            ts1, tm1, ts2, two_mu - tm1, two_s, two_mu) ** 2
                    worst_orth = max(worst_orth, abs(total - 1.0))
        out.append(cfg.report("cg_orthogonality", "cg_orthogonality",
                              worst_orth, {}))

        worst_cg = 0.0
        boost = st.boost_sl2c(rng.normal(size=3), 0.5)
        for ts1, ts2 in ((1, 1), (1, 2), (2, 2)):
            worst_cg = max(
                worst_cg,
                sp.check_cg_addition(ts1, ts2, _random_su2(rng)).measured,
                sp.check_cg_addition(ts1, ts2, boost).measured)
        out.append(cfg.report("cg_addition", "cg_addition", worst_cg,
                              {"seed": seed}))
    return out


def _bessel_integral_oracle(x: float) -> float:
    """K1 via its cosh integral representation, independent quadrature."""
    t, w = np.polynomial.legendre.leggauss(400)
    upper = math.asinh(50.0 / x) + 1.0
    tt = 0.5 * upper * (t + 1.0)
    ww = 0.5 * upper * w
    return float(np.sum(ww * np.exp(-x * np.cosh(tt)) * np.cosh(tt)))


def suite_kernels(cfg: RunConfig):
    out = []
    spins = [ts for ts in cfg.two_spins if ts <= 4]
    worst_or = max(abs(kr.bessel_k1(1.0) - _bessel_integral_oracle(1.0)),
                   abs(kr.bessel_k1(10.0) - _bessel_integral_oracle(10.0))
                   / _bessel_integral_oracle(10.0))
    out.append(cfg.report("bessel_vs_integral_oracle", "bessel_oracle",
                          worst_or, {}))
    out.append(cfg.report("bessel_small_argument", "bessel_small_arg",
                          abs(1e-5 * kr.bessel_k1(1e-5) - 1.0), {}))
    for m in cfg.masses:
        decay = (kr.scalar_position_kernel(m, 20.0 / m)
                 / kr.scalar_position_kernel(m, 1.0 / m))
        out.append(cfg.report("kernel_exponential_decay", "kernel_decay",
                              decay, {"m": m}))
    for seed in cfg.seeds:
        rng = _rng(seed)
        for m in cfg.masses:
            worst_fact = 0.0
            worst_pos = 0.0
            for _ in range(100):
                p = rng.normal(size=3) * (1.5 * m)
                for ts in spins:
                    worst_fact = max(worst_fact, kr.check_factorization(
                        m, ts, p).measured)
                    for variant in cfg.variants:
                        K = kr.onshell_kernel(variant, m, ts, p)
                        evals = np.linalg.eigvalsh(K)
                        worst_pos = max(worst_pos,
                                        max(0.0, -float(evals[0])
                                            / max(float(evals[-1]), 1e-300)))
            out.append(cfg.report("onshell_factorization", "factorization",
                                  worst_fact, {"seed": seed, "m": m}))
            out.append(cfg.report("onshell_positivity", "kernel_positivity",
                                  worst_pos, {"seed": seed, "m": m}))
            worst_cov = 0.0
            for _ in range(10):
                A, B = _random_su2(rng), _random_su2(rng)
                pe = rng.normal(size=4)
                for variant in cfg.variants:
                    for ts in spins[:3]:
                        worst_cov = max(worst_cov, kr.check_kernel_covariance(
                            variant, m, ts, A, B, pe).measured)
            out.append(cfg.report("kernel_covariance", "kernel_covariance",
                                  worst_cov, {"seed": seed, "m": m}))
            worst_dual = 0.0
            pe = rng.normal(size=4)
            for ts in spins:
                dual_rot = sp.wigner_d(ts, 1j * st.SIGMA2)
                lhs = kr.momentum_kernel(st.KernelVariant.RIGHT_DUAL, m, ts,
                                         pe)
                rhs = ((-1) ** ts * dual_rot
                       @ kr.momentum_kernel(st.KernelVariant.RIGHT, m, ts, pe)
                       @ dual_rot)
                worst_dual = max(worst_dual, float(np.max(np.abs(lhs - rhs))))
            out.append(cfg.report("dual_metric_identity", "dual_metric",
                                  worst_dual, {"seed": seed, "m": m}))
            worst_res = 0.0
            for ts in [t for t in spins if t <= 2]:
                worst_res = max(worst_res, kr.check_residue_consistency(
                    st.KernelVariant.RIGHT, m, ts, rng.normal(size=3) * 0.5,
                    1.0 / m).measured)
            out.append(cfg.report("residue_consistency", "residue",
                                  worst_res, {"seed": seed, "m": m}))
    return out


def positivity_family(rng, two_s, size):
    """Random Gram family; compact envelopes keep the box tame."""
    return [hl.random_test_function(rng, two_s=two_s, terms_per_component=2,
                                    center_scale=0.8, beta_range=(0.3, 0.9))
            for _ in range(size)]


def suite_positivity(cfg: RunConfig):
    out = []
    for seed in cfg.seeds:
        for m in cfg.masses:
            for ts in cfg.two_spins:
                rng = _rng(seed * 7919 + ts)
                fs = positivity_family(rng, ts, cfg.gram_size)
                for variant in cfg.variants:
                    rep = hl.gram_matrix(fs, variant, m,
                                         nodes=cfg.gram_nodes)
                    measured = max(0.0, -rep.min_eig
                                   / max(1.0, rep.max_eig))
                    out.append(cfg.report(
                        "gram_positivity", "gram_eig", measured,
                        {"seed": seed, "m": m, "two_s": ts,
                         "variant": variant.value, "size": rep.size},
                        details={"min_eig": rep.min_eig,
                                 "max_eig": rep.max_eig}))
    return out


def suite_generators(cfg: RunConfig):
    out = []
    names = gn.GENERATOR_NAMES
    for seed in cfg.seeds:
        for ts in cfg.two_spins:
            rng = _rng(seed * 104729 + ts)
            f = hl.random_test_function(rng, two_s=ts, terms_per_component=1,
                                        min_k=2, max_k=3)
            for variant in cfg.variants:
                worst = 0.0
                for i in range(len(names)):
                    for j in range(i + 1, len(names)):
                        worst = max(worst, gn.check_commutator(
                            names[i], names[j], f, variant).measured)
                out.append(cfg.report(
                    "lie_algebra", "commutator", worst,
                    {"seed": seed, "two_s": ts, "variant": variant.value,
                     "pairs": 45}))
    return out


def hermiticity_pairs(rng, two_s, count):
    """Correlated random pairs with compact, shared envelopes."""
    pairs = []
    for _ in range(count):
        f = hl.random_test_function(rng, two_s=two_s, terms_per_component=1,
                                    min_k=2, max_k=3, center_scale=0.3,
                                    beta_range=(0.22, 0.3),
                                    shared_envelope=True)
        h = hl.random_test_function(rng, two_s=two_s, terms_per_component=1,
                                    min_k=2, max_k=3, center_scale=0.3,
                                    beta_range=(0.22, 0.3),
                                    shared_envelope=True)
        pairs.append((f, (h + 0.6 * f).canonical()))
    return pairs


def run_hermiticity_matrix(pairs, m, variants, tol_fn, nodes=88,
                           small_nodes=32):
    """All-generator hermiticity reports over function pairs.

    Transforms are shared across variants by splitting each generator
    into its orbital part and a constant spin-mixing matrix; H and P are
    pointwise identities in momentum space, so they use a small grid.
    """
    two_s = pairs[0][0].two_s
    box = max(hl.momentum_box(p, m) for p in pairs)
    grids = {
        True: hl.tensor_grid(box, small_nodes),
        False: hl.tensor_grid(box, nodes),
    }
    kernels = {(variant, small): kr.onshell_kernel_grid(
        variant, m, two_s, grids[small][0])
        for variant in variants for small in (True, False)}
    out = []
    for idx, (f, g) in enumerate(pairs):
        cache = {True: {}, False: {}}

        def transform(func, small):
            key = func.canonical()
            store = cache[small]
            if key not in store:
                store[key] = hl.laplace_fourier_transform(
                    key, m).evaluate(grids[small][0])
            return store[key]

        for name in gn.GENERATOR_NAMES:
            small = name[0] in ("H", "P")
            wts = grids[small][1]
            ff = transform(f, small)
            gg = transform(g, small)
            orb_f = transform(gn.apply_generator_orbital(name, f), small)
            orb_g = transform(gn.apply_generator_orbital(name, g), small)
            for variant in variants:
                S = gn.generator_spin_matrix(name, two_s, variant)
                faf = orb_f + S @ ff
                fag = orb_g + S @ gg
                K = kernels[(variant, small)]
                mixed_ag = np.einsum("uvn,vn->un", K, fag)
                mixed_g = np.einsum("uvn,vn->un", K, gg)
                lhs = complex(np.einsum("un,un,n->", ff.conj(), mixed_ag,
                                        wts))
                rhs = complex(np.einsum("un,un,n->", faf.conj(), mixed_g,
                                        wts))
                measured = abs(lhs - rhs) / (abs(lhs) + abs(rhs) + 1e-30)
                out.append(tol_fn(
                    "generator_hermiticity", "hermiticity", measured,
                    {"generator": name, "variant": variant.value,
                     "pair": idx, "two_s": two_s, "m": m}))
    return out


def suite_hermiticity(cfg: RunConfig):
    out = []
    for seed in cfg.seeds:
        rng = _rng(seed * 31337)
        pairs = hermiticity_pairs(rng, 1, cfg.hermiticity_pairs)
        for m in cfg.masses:
            out.extend(run_hermiticity_matrix(pairs, m, cfg.variants,
                                              cfg.report))
    return out


def suite_semigroup(cfg: RunConfig):
    out = []
    for seed in cfg.seeds:
        for ts in [t for t in cfg.two_spins if t <= 2]:
            rng = _rng(seed * 613 + ts)
            f = hl.random_test_function(rng, two_s=ts, terms_per_component=2,
                                        min_k=1, max_k=2, center_scale=0.3,
                                        beta_range=(0.3, 0.6),
                                        shared_envelope=True)
            for m in cfg.masses:
                for variant in cfg.variants:
                    rep = gn.semigroup_contraction_check(
                        f, variant, m, [0.0, 0.1 / m, 0.5 / m, 1.0 / m],
                        nodes=48)
                    out.append(cfg.report(
                        "semigroup_contraction", "semigroup", rep.measured,
                        {"seed": seed, "two_s": ts, "m": m,
                         "variant": variant.value},
                        details=rep.details))
    return out


def suite_wedge(cfg: RunConfig):
    out = []
    for seed in cfg.seeds:
        for m in cfg.masses:
            w1 = hl.WedgeFunction(hl.gaussian_packet(
                alpha=1.0, beta=0.6, k=1), (0.0, 0.0, 1.0), 0.5)
            w2 = hl.WedgeFunction(hl.gaussian_packet(
                alpha=1.2, beta=0.5, k=1, center=(0.2, 0.0, 0.1)),
                (0.0, 0.0, 1.0), 0.5)
            rep = gn.boost_wedge_check(
                w1, w2, [0.05, 0.1, 0.2], m, seed=seed,
                points_log2=cfg.mc_points_log2, scrambles=cfg.mc_scrambles)
            out.append(cfg.report("wedge_local_semigroup", "wedge",
                                  rep.measured,
                                  {"seed": seed, "m": m},
                                  details=rep.details))
    return out


def suite_irrep(cfg: RunConfig):
    out = []
    for seed in cfg.seeds:
        for m in cfg.masses:
            for ts in [t for t in cfg.two_spins if t <= 2]:
                rng = _rng(seed * 271 + ts)
                f = hl.random_test_function(
                    rng, two_s=ts, terms_per_component=1, center_scale=0.25,
                    beta_range=(0.3, 0.45), tau0_max=0.3,
                    shared_envelope=True)
                # the group-law difference cancels quadrature error, so a
                # coarse grid suffices; norms need the fine one
                state = gn.state_from_test_function(f, m * 1.0,
                                                    half_width=5.0 * m,
                                                    nodes=40)
                fine = gn.state_from_test_function(f, m, half_width=5.0 * m,
                                                   nodes=56)
                pts, wts = state.grid()
                n0 = state.norm()
                n0_fine = fine.norm()
                worst_gl = 0.0
                worst_un = 0.0
                for _ in range(cfg.irrep_elements):
                    g1 = _random_poincare(rng)
                    g2 = _random_poincare(rng)
                    left = gn.apply_poincare_irrep(
                        gn.apply_poincare_irrep(state, g1), g2)
                    right = gn.apply_poincare_irrep(
                        state, st.compose_poincare(g2, g1))
                    diff = left.evaluate(pts) - right.evaluate(pts)
                    l2 = math.sqrt(float(np.einsum(
                        "un,n->", np.abs(diff) ** 2, wts).real))
                    worst_gl = max(worst_gl, l2 / max(n0, 1e-300))
                    moved = gn.apply_poincare_irrep(fine, g1)
                    worst_un = max(worst_un,
                                   abs(moved.norm() - n0_fine) / n0_fine)
                out.append(cfg.report("irrep_group_law", "irrep_group_law",
                                      worst_gl,
                                      {"seed": seed, "m": m, "two_s": ts}))
                out.append(cfg.report("irrep_unitarity", "irrep_unitarity",
                                      worst_un,
                                      {"seed": seed, "m": m, "two_s": ts}))
    return out


def _random_poincare(rng) -> st.PoincareElement:
    L = (st.rotation_su2(rng.normal(size=3), rng.uniform(0.2, 1.5))
         @ st.boost_sl2c(rng.normal(size=3), rng.uniform(0.05, 0.4)))
    return st.PoincareElement.from_fourvector(L, rng.normal(size=4) * 0.5)


def suite_casimir(cfg: RunConfig):
    out = []
    for seed in cfg.seeds:
        for m in cfg.masses:
            for ts in [t for t in cfg.two_spins if t <= 2]:
                rng = _rng(seed * 911 + ts)
                f = hl.random_test_function(
                    rng, two_s=ts, terms_per_component=1, min_k=2, max_k=3,
                    center_scale=0.3, beta_range=(0.3, 0.6))
                g = hl.random_test_function(
                    rng, two_s=ts, terms_per_component=1, min_k=2, max_k=3,
                    center_scale=0.3, beta_range=(0.3, 0.6))
                for variant in cfg.variants:
                    rep = gn.mass_casimir_check(f, g, variant, m, nodes=48)
                    out.append(cfg.report(
                        "mass_casimir", "casimir", rep.measured,
                        {"seed": seed, "m": m, "two_s": ts,
                         "variant": variant.value}))
                neg = gn.mass_casimir_check(f, g, cfg.variants[0], m,
                                            test_mass=2.0 * m, nodes=48)
                out.append(cfg.report(
                    "mass_casimir_negative_control", "casimir", neg.measured,
                    {"seed": seed, "m": m, "two_s": ts,
                     "expected_scale": 3.0 * m * m},
                    negative_control=True))
    return out


def suite_projections(cfg: RunConfig):
    out = []
    for seed in cfg.seeds:
        for m in cfg.masses:
            rng = _rng(seed * 137)
            f = hl.random_test_function(rng, two_s=0, terms_per_component=1,
                                        beta_range=(0.3, 0.5),
                                        center_scale=0.2)
            pts = rng.normal(size=(10, 3))
            stw = gn.momentum_project(f, m, [0.5, 0.0, 0.0], 0.8)
            a4 = np.array([0.0, 0.4, -0.3, 0.2])
            moved = gn.apply_poincare_irrep(
                stw, st.PoincareElement.from_fourvector(np.eye(2), a4))
            phase = np.exp(1j * (pts @ a4[1:]))
            dev = float(np.max(np.abs(moved.evaluate(pts)
                                      - phase * stw.evaluate(pts))))
            out.append(cfg.report("projection_translation_covariance",
                                  "projection_phase", dev,
                                  {"seed": seed, "m": m}))
            st_a = gn.momentum_project(f, m, [1.5, 0, 0], 0.3, nodes=40)
            st_b = gn.momentum_project(f, m, [-1.5, 0, 0], 0.3, nodes=40)
            overlap = abs(st_a.inner(st_b)) / (st_a.norm() * st_b.norm())
            out.append(cfg.report("window_orthogonality",
                                  "projection_orthogonality", overlap,
                                  {"seed": seed, "m": m}))

            env = dict(alpha=1.0, beta=0.5, tau0=0.1)
            fspin = (hl.gaussian_packet(two_s=1, component=0,
                                        coef=0.8 + 0.3j, **env)
                     + hl.gaussian_packet(two_s=1, component=1,
                                          coef=0.5 - 0.2j, **env)).canonical()
            state = gn.state_from_test_function(fspin, m, nodes=20)
            pr_up = gn.spin_project(state, 1)
            pr_dn = gn.spin_project(state, -1)
            cross = abs(pr_up.inner(pr_dn)) / (pr_up.norm() * pr_dn.norm())
            out.append(cfg.report("spin_projection_orthogonality",
                                  "projection_orthogonality", cross,
                                  {"seed": seed, "m": m}))
            theta = np.pi / 3
            rot = st.PoincareElement(st.rotation_su2([0, 0, 1], theta),
                                     np.zeros((2, 2)))
            probe = rng.normal(size=(6, 3)) * 0.8
            plus = gn.apply_poincare_irrep(pr_up, rot).evaluate(probe)
            ref = np.exp(0.5j * theta) * pr_up.evaluate(probe)
            phase_dev = float(np.max(np.abs(plus - ref))
                              / max(np.max(np.abs(ref)), 1e-300))
            out.append(cfg.report("spin_projection_phase",
                                  "projection_phase", phase_dev,
                                  {"seed": seed, "m": m, "two_mu": 1}))
    return out


def suite_mc_crosscheck(cfg: RunConfig):
    out = []
    for seed in cfg.seeds:
        for m in cfg.masses:
            f = hl.gaussian_packet(alpha=1.0, beta=0.6, tau0=0.15 / m,
                                   center=(0.2, 0.0, -0.1))
            g = hl.gaussian_packet(alpha=1.2, beta=0.5, tau0=0.1 / m,
                                   center=(-0.1, 0.3, 0.2))
            exact = hl.inner_product(f, g, st.KernelVariant.RIGHT, m,
                                     nodes=72)
            val, se, info = hl.position_inner_product_mc(
                f, g, m, seed=seed, points_log2=cfg.mc_points_log2,
                scrambles=cfg.mc_scrambles)
            sigmas = abs(val - exact) / max(se, 1e-300)
            out.append(cfg.report(
                "mc_vs_momentum", "mc_sigmas", sigmas,
                {"seed": seed, "m": m},
                details={"mc": [val.real, val.imag], "stderr": se,
                         "momentum": [exact.real, exact.imag],
                         "rel_stderr": se / abs(exact), **info}))
            far_f = hl.gaussian_packet(alpha=1.0, beta=0.6, tau0=0.15 / m,
                                       center=(5.0 / m, 0, 0))
            far_g = hl.gaussian_packet(alpha=1.0, beta=0.6, tau0=0.15 / m,
                                       center=(-5.0 / m, 0, 0))
            off, _, _ = hl.position_inner_product_mc(
                far_f, far_g, m, seed=seed + 1, points_log2=15, scrambles=4)
            diag, _, _ = hl.position_inner_product_mc(
                far_f, far_f, m, seed=seed + 2, points_log2=15, scrambles=4)
            out.append(cfg.report("mc_far_separation", "mc_far_ratio",
                                  abs(off) / abs(diag),
                                  {"seed": seed, "m": m}))
            shifted = [position_shift_value(f, g, m, d, seed + 3,
                                            cfg.mc_points_log2 - 2)
                      for d in (0.0, 0.4 / m, 0.8 / m)]
            mono = max(0.0, max(abs(shifted[1]) - abs(shifted[0]),
                                abs(shifted[2]) - abs(shifted[1])))
            out.append(cfg.report("mc_shift_monotone", "mc_monotone",
                                  mono / abs(shifted[0]),
                                  {"seed": seed, "m": m},
                                  details={"values": [abs(v)
                                                      for v in shifted]}))
    return out


def position_shift_value(f, g, m, delta, seed, points_log2):
    val, _, _ = hl.position_inner_product_mc(
        f.shift_time(delta), g.shift_time(delta), m, seed=seed,
        points_log2=points_log2, scrambles=4)
    return val


SUITES = {
    "algebra": (suite_algebra,
                "four-vector and SL(2,C)/SU(2) structure: round trips, "
                "determinant preservation, intertwining, boosts, polar "
                "decomposition, Wigner rotations"),
    "wigner": (suite_wigner,
               "spin representation matrices: group law on and off the "
               "unitary subgroup, spin matrix algebra, coupling "
               "coefficient identities"),
    "kernels": (suite_kernels,
                "covariant two-point kernels: Bessel evaluation oracle, "
                "on-shell positivity factorization, covariance, dual "
                "pairing, contour-integral consistency"),
    "positivity": (suite_positivity,
                   "reflection positivity: Gram matrices of random "
                   "positive-time families stay positive semidefinite "
                   "for every variant and spin"),
    "generators": (suite_generators,
                   "Lie algebra: all 45 commutator pairs close with "
                   "coefficient-exact residuals for every variant"),
    "hermiticity": (suite_hermiticity,
                    "hermiticity of all ten generators under the four "
                    "reflection-positive inner products"),
    "semigroup": (suite_semigroup,
                  "positive time translations form a contractive "
                  "Hermitian semigroup with the mass-gap decay rate"),
    "wedge": (suite_wedge,
              "wedge-supported boost rotations: support preservation, "
              "Monte-Carlo symmetry, weak continuity"),
    "irrep": (suite_irrep,
              "unitary irreducible action: group law and norm "
              "preservation on momentum wave functions"),
    "casimir": (suite_casimir,
                "mass Casimir identity with a mismatched-mass negative "
                "control"),
    "projections": (suite_projections,
                    "momentum and spin projections: translation "
                    "covariance, window and component orthogonality, "
                    "rotation phases"),
    "mc-crosscheck": (suite_mc_crosscheck,
                      "independent position-space Monte-Carlo evaluation "
                      "of the inner product against the momentum-space "
                      "quadrature"),
}


def run_suites(cfg: RunConfig):
    """Execute the configured suites, optionally in parallel."""
    names = list(cfg.suites)
    if "all" in names:
        names = list(SUITES)
    unknown = [n for n in names if n not in SUITES]
    if unknown:
        raise ValueError(f"unknown suites: {unknown}")
    def run_one(name):
        try:
            return SUITES[name][0](cfg)
        except Exception as exc:   # recorded per-check, not fatal
            return [make_report(f"{name}_internal_error", float("inf"), 0.0,
                                inputs={"suite": name},
                                details={"error": repr(exc)})]

    results = {}
    if cfg.jobs > 1:
        from concurrent.futures import ThreadPoolExecutor
        with ThreadPoolExecutor(max_workers=cfg.jobs) as pool:
            futures = {n: pool.submit(run_one, n) for n in names}
            for n, fut in futures.items():
                results[n] = fut.result()
    else:
        for n in names:
            results[n] = run_one(n)
    reports = []
    for n in sorted(results):
        reports.extend(sorted(results[n],
                              key=lambda r: (r.name, sorted(r.inputs.items(),
                                                            key=str).__repr__())))
    return reports
