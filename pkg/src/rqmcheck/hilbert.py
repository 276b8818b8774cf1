"""A closed test-function family and the reflection-positive inner product.

The family: each spin component is a finite sum of terms

    coef * (tau - tau0)^k * (x-cx)^a (y-cy)^b (z-cz)^c
         * exp(-alpha (tau - tau0)) * exp(-beta |x - c|^2),   tau >= tau0

with ``k, a, b, c >= 0``, ``alpha, beta > 0`` and ``tau0 >= 0``.  Every
member is supported at positive Euclidean time and the family is closed
under time/space derivatives, multiplication by coordinates, and time
shifts, so the ten generators act on it exactly (coefficient algebra, no
discretization).

Its Laplace-Fourier image under ``exp(-i p.x - omega(p) tau)`` is also
exact:  the time factor integrates to ``k! exp(-omega tau0) /
(alpha + omega)^(k+1)`` and each spatial axis to a Hermite polynomial
times Gaussian times center phase.  Inner products then reduce to a
single 3-momentum quadrature against the on-shell kernel.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .kernels import onshell_kernel_grid, scalar_position_kernel
from .spacetime import KernelVariant

TWO_PI = 2.0 * np.pi

#: Gauss-Legendre nodes per momentum axis; resolves the sqrt branch point of
#: omega(p) at the box scale so that doubling the count moves compact-family
#: inner products by well under 1e-8
DEFAULT_NODES = 96


# ---------------------------------------------------------------------------
# the symbolic family
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Term:
    coef: complex
    k: int
    alpha: float
    tau0: float
    powers: tuple
    beta: float
    center: tuple

    def key(self):
        return (self.k, self.alpha, self.tau0, self.powers, self.beta,
                self.center)


def _merge(terms):
    acc: dict = {}
    for t in terms:
        key = t.key()
        if key in acc:
            acc[key] = Term(acc[key].coef + t.coef, *key)
        else:
            acc[key] = t
    return tuple(t for t in acc.values() if t.coef != 0.0)


@dataclass(frozen=True)
class TestFunction:
    """Spin-component-valued member of the closed family."""

    two_s: int
    comps: tuple   # length 2s+1, each a tuple of Terms; index 0 is mu = +s

    def __post_init__(self):
        if len(self.comps) != self.two_s + 1:
            raise ValueError("component count must be 2s + 1")
        for terms in self.comps:
            for t in terms:
                if t.alpha <= 0 or t.beta <= 0 or t.tau0 < 0 or t.k < 0:
                    raise ValueError("invalid term parameters")
                if min(t.powers) < 0:
                    raise ValueError("negative monomial power")

    @property
    def dim(self) -> int:
        return self.two_s + 1

    def canonical(self) -> "TestFunction":
        return TestFunction(self.two_s, tuple(_merge(ts) for ts in self.comps))

    def map_terms(self, fn) -> "TestFunction":
        comps = tuple(tuple(out for t in ts for out in fn(t))
                      for ts in self.comps)
        return TestFunction(self.two_s, comps).canonical()

    def scale(self, c: complex) -> "TestFunction":
        return self.map_terms(lambda t: [Term(c * t.coef, *t.key())])

    def __add__(self, other: "TestFunction") -> "TestFunction":
        if other.two_s != self.two_s:
            raise ValueError("spin mismatch")
        comps = tuple(a + b for a, b in zip(self.comps, other.comps))
        return TestFunction(self.two_s, comps).canonical()

    def __sub__(self, other: "TestFunction") -> "TestFunction":
        return self + other.scale(-1.0)

    def __rmul__(self, c) -> "TestFunction":
        return self.scale(c)

    def d_tau(self) -> "TestFunction":
        """Classical time derivative on the open support.

        Terms with ``k = 0`` carry a jump at tau0 whose distributional
        derivative is not representable here; operators that rely on
        integration by parts must check :func:`min_tau_degree` first.
        """
        def rule(t):
            out = [Term(-t.alpha * t.coef, *t.key())]
            if t.k > 0:
                out.append(Term(t.k * t.coef, t.k - 1, t.alpha, t.tau0,
                                t.powers, t.beta, t.center))
            return out
        return self.map_terms(rule)

    def d_x(self, axis: int) -> "TestFunction":
        def rule(t):
            out = []
            p = list(t.powers)
            if p[axis] > 0:
                q = list(p)
                q[axis] -= 1
                out.append(Term(p[axis] * t.coef, t.k, t.alpha, t.tau0,
                                tuple(q), t.beta, t.center))
            q = list(p)
            q[axis] += 1
            out.append(Term(-2.0 * t.beta * t.coef, t.k, t.alpha, t.tau0,
                            tuple(q), t.beta, t.center))
            return out
        return self.map_terms(rule)

    def mul_tau(self) -> "TestFunction":
        def rule(t):
            out = [Term(t.coef, t.k + 1, t.alpha, t.tau0, t.powers, t.beta,
                        t.center)]
            if t.tau0 != 0.0:
                out.append(Term(t.tau0 * t.coef, *t.key()))
            return out
        return self.map_terms(rule)

    def mul_x(self, axis: int) -> "TestFunction":
        def rule(t):
            q = list(t.powers)
            q[axis] += 1
            out = [Term(t.coef, t.k, t.alpha, t.tau0, tuple(q), t.beta,
                        t.center)]
            if t.center[axis] != 0.0:
                out.append(Term(t.center[axis] * t.coef, *t.key()))
            return out
        return self.map_terms(rule)

    def shift_time(self, dt: float) -> "TestFunction":
        """Exact positive Euclidean time translation (the semigroup action)."""
        if dt < 0:
            raise ValueError("only positive time shifts stay in the family")
        return self.map_terms(
            lambda t: [Term(t.coef, t.k, t.alpha, t.tau0 + dt, t.powers,
                            t.beta, t.center)])

    def spin_mix(self, mat) -> "TestFunction":
        """Component mixing f_mu -> sum_nu mat[mu, nu] f_nu."""
        mat = np.asarray(mat, dtype=complex)
        comps = []
        for i in range(self.dim):
            terms = []
            for j in range(self.dim):
                c = mat[i, j]
                if c != 0.0:
                    terms.extend(Term(c * t.coef, *t.key())
                                 for t in self.comps[j])
            comps.append(tuple(terms))
        return TestFunction(self.two_s, tuple(comps)).canonical()

    def min_tau_degree(self) -> int:
        degs = [t.k for ts in self.comps for t in ts]
        return min(degs) if degs else 0

    def max_beta(self) -> float:
        betas = [t.beta for ts in self.comps for t in ts]
        return max(betas) if betas else 1.0

    def evaluate(self, points) -> np.ndarray:
        """Pointwise values, shape (2s+1, N) for (N, 4) input (tau, x, y, z)."""
        pts = np.atleast_2d(np.asarray(points, dtype=float))
        tau = pts[:, 0]
        out = np.zeros((self.dim, pts.shape[0]), dtype=complex)
        for i, terms in enumerate(self.comps):
            for t in terms:
                dtau = tau - t.tau0
                live = dtau >= 0.0
                if not np.any(live):
                    continue
                dx = pts[:, 1:] - np.asarray(t.center)
                val = np.where(live, dtau, 0.0) ** t.k if t.k else 1.0
                for ax in range(3):
                    if t.powers[ax]:
                        val = val * dx[:, ax] ** t.powers[ax]
                val = val * np.exp(-t.beta * np.einsum("ni,ni->n", dx, dx))
                env = np.zeros_like(tau)
                env[live] = np.exp(-t.alpha * dtau[live])
                out[i] += t.coef * val * env
        return out

    def as_dict(self) -> dict:
        return {
            "two_s": self.two_s,
            "components": [[{
                "coef": [t.coef.real, t.coef.imag],
                "k": t.k, "alpha": t.alpha, "tau0": t.tau0,
                "powers": list(t.powers), "beta": t.beta,
                "center": list(t.center),
            } for t in ts] for ts in self.comps],
        }

    @classmethod
    def from_dict(cls, data: dict) -> "TestFunction":
        comps = tuple(
            tuple(Term(complex(td["coef"][0], td["coef"][1]), int(td["k"]),
                       float(td["alpha"]), float(td["tau0"]),
                       tuple(int(p) for p in td["powers"]), float(td["beta"]),
                       tuple(float(c) for c in td["center"]))
                  for td in ts)
            for ts in data["components"])
        return cls(int(data["two_s"]), comps)


def gaussian_packet(two_s=0, component=0, coef=1.0, k=0, alpha=1.0, tau0=0.0,
                    powers=(0, 0, 0), beta=1.0, center=(0.0, 0.0, 0.0)):
    """Single-term family member living in one spin component."""
    term = Term(complex(coef), int(k), float(alpha), float(tau0),
                tuple(int(p) for p in powers), float(beta),
                tuple(float(c) for c in center))
    comps = tuple((term,) if i == component else ()
                  for i in range(two_s + 1))
    return TestFunction(two_s, comps)


def random_test_function(rng, two_s=0, terms_per_component=1, min_k=0,
                         max_k=2, max_power=2, tau0_max=0.4,
                         center_scale=1.0, alpha_range=(0.6, 1.6),
                         beta_range=(0.4, 1.2), shared_envelope=False):
    """Random family member; all parameters drawn from tame desk-scale ranges.

    ``shared_envelope`` makes every term reuse one (alpha, beta, tau0,
    center) draw, which keeps transform evaluation cheap and the momentum
    support compact for quadrature-heavy checks.
    """
    def draw_envelope():
        return (float(rng.uniform(*alpha_range)), float(rng.uniform(*beta_range)),
                float(rng.uniform(0.0, tau0_max)),
                tuple(float(v) for v in rng.uniform(-center_scale,
                                                    center_scale, size=3)))

    shared = draw_envelope()
    comps = []
    for _ in range(two_s + 1):
        terms = []
        for _ in range(terms_per_component):
            alpha, beta, tau0, center = (shared if shared_envelope
                                         else draw_envelope())
            coef = complex(rng.normal(), rng.normal())
            k = int(rng.integers(min_k, max_k + 1))
            powers = tuple(int(v) for v in rng.integers(0, max_power + 1,
                                                        size=3))
            terms.append(Term(coef, k, alpha, tau0, powers, beta, center))
        comps.append(tuple(terms))
    return TestFunction(two_s, tuple(comps)).canonical()


# ---------------------------------------------------------------------------
# exact momentum-space image
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class MomentumWaveFunction:
    """Exact transform of a TestFunction at mass m, evaluable anywhere."""

    m: float
    two_s: int
    comps: tuple

    @property
    def dim(self) -> int:
        return self.two_s + 1

    def evaluate(self, points) -> np.ndarray:
        """Values on 3-momenta, shape (2s+1, N) for (N, 3) input.

        Heavy grid factors (time-shift exponentials, pole denominators,
        center phases, Gaussians) are shared across terms with equal
        parameters, so generator images with many terms over one envelope
        evaluate at roughly single-term cost.
        """
        pts = np.atleast_2d(np.asarray(points, dtype=float))
        omega = np.sqrt(self.m ** 2 + np.einsum("ni,ni->n", pts, pts))
        shift_cache: dict = {0.0: 1.0}
        pole_cache: dict = {}
        phase_cache: dict = {(0.0, 0.0, 0.0): 1.0}
        axis_cache: dict = {}
        out = np.zeros((self.dim, pts.shape[0]), dtype=complex)
        for i, terms in enumerate(self.comps):
            for t in terms:
                if t.tau0 not in shift_cache:
                    shift_cache[t.tau0] = np.exp(-omega * t.tau0)
                if t.alpha not in pole_cache:
                    pole_cache[t.alpha] = [np.ones_like(omega),
                                           1.0 / (t.alpha + omega)]
                poles = pole_cache[t.alpha]
                while len(poles) <= t.k + 1:
                    poles.append(poles[-1] * poles[1])
                if t.center not in phase_cache:
                    phase_cache[t.center] = np.exp(
                        -1j * (pts @ np.asarray(t.center)))
                val = (t.coef * math.factorial(t.k) / TWO_PI ** 1.5
                       * shift_cache[t.tau0] * poles[t.k + 1]
                       * phase_cache[t.center])
                for ax in range(3):
                    key = (ax, t.powers[ax], t.beta)
                    if key not in axis_cache:
                        axis_cache[key] = _gaussian_moment(
                            t.powers[ax], pts[:, ax], t.beta)
                    val = val * axis_cache[key]
                out[i] += val
        return out


def _gaussian_moment(n: int, p: np.ndarray, beta: float) -> np.ndarray:
    """Closed form of ``int u^n exp(-beta u^2 - i p u) du``."""
    base = np.sqrt(np.pi / beta) * np.exp(-p * p / (4.0 * beta))
    if n == 0:
        return base
    q = p / (2.0 * np.sqrt(beta))
    h_prev = np.ones_like(q)
    h = 2.0 * q
    for j in range(1, n):
        h, h_prev = 2.0 * q * h - 2.0 * j * h_prev, h
    return base * h * (-1j / (2.0 * np.sqrt(beta))) ** n


def laplace_fourier_transform(f: TestFunction, m: float) -> MomentumWaveFunction:
    """Exact image of f under ``exp(-i p.x - omega_m(p) tau)`` integration."""
    if m <= 0:
        raise ValueError("mass must be positive")
    return MomentumWaveFunction(float(m), f.two_s, f.canonical().comps)


# ---------------------------------------------------------------------------
# momentum quadrature and the inner product
# ---------------------------------------------------------------------------

def momentum_box(functions, m: float) -> float:
    """Half-width of a cube capturing the Gaussian momentum decay.

    Each transform decays like ``exp(-p^2 / 4 beta)`` per axis, so a
    nine-sigma-ish cut on the widest Gaussian leaves truncation errors
    around 1e-10 even with the polynomial prefactors.
    """
    beta = max(f.max_beta() for f in functions)
    return m + 9.0 * np.sqrt(beta)


def tensor_grid(half_width: float, nodes: int):
    """Gauss-Legendre tensor grid on [-L, L]^3: (N, 3) points, (N,) weights."""
    x, w = np.polynomial.legendre.leggauss(nodes)
    x = x * half_width
    w = w * half_width
    pts = np.stack(np.meshgrid(x, x, x, indexing="ij"), axis=-1).reshape(-1, 3)
    wts = (w[:, None, None] * w[None, :, None]
           * w[None, None, :]).reshape(-1)
    return pts, wts


def inner_product(f: TestFunction, g: TestFunction, variant: KernelVariant,
                  m: float, nodes: int = DEFAULT_NODES,
                  half_width: float | None = None,
                  check_convergence: bool = False):
    """Reflection-positive inner product <f|g> for one kernel variant.

    Computed as the 3-momentum quadrature of
    ``conj(F[f]) . (onshell kernel) . F[g]``.  With ``check_convergence``
    the node count is doubled and ``(value, rel_change)`` is returned.
    """
    if f.two_s != g.two_s:
        raise ValueError("spin mismatch between f and g")
    if half_width is None:
        half_width = momentum_box((f, g), m)
    val = _quad_inner(f, g, variant, m, nodes, half_width)
    if not check_convergence:
        return val
    refined = _quad_inner(f, g, variant, m, 2 * nodes, half_width)
    rel = abs(refined - val) / max(abs(refined), 1e-300)
    return refined, rel


def _quad_inner(f, g, variant, m, nodes, half_width):
    pts, wts = tensor_grid(half_width, nodes)
    ff = laplace_fourier_transform(f, m).evaluate(pts)
    gg = laplace_fourier_transform(g, m).evaluate(pts)
    kern = onshell_kernel_grid(variant, m, f.two_s, pts)
    return complex(np.einsum("un,uvn,vn,n->", ff.conj(), kern, gg, wts))


def norm(f: TestFunction, variant: KernelVariant, m: float,
         nodes: int = DEFAULT_NODES, half_width: float | None = None) -> float:
    val = inner_product(f, f, variant, m, nodes=nodes, half_width=half_width)
    return math.sqrt(max(val.real, 0.0))


class InnerProductWorkspace:
    """Shared grid, kernel and transform cache for batched inner products.

    Useful when many pairings are evaluated against the same variant and
    mass: the on-shell kernel is built once and each function transform is
    evaluated once on the common grid.
    """

    def __init__(self, variant: KernelVariant, m: float, two_s: int,
                 half_width: float, nodes: int = DEFAULT_NODES):
        self.variant = variant
        self.m = float(m)
        self.two_s = two_s
        self.points, self.weights = tensor_grid(half_width, nodes)
        self.kernel = onshell_kernel_grid(variant, m, two_s, self.points)
        self._cache: dict = {}

    def transform(self, f: TestFunction) -> np.ndarray:
        key = f.canonical()
        if key not in self._cache:
            self._cache[key] = laplace_fourier_transform(
                key, self.m).evaluate(self.points)
        return self._cache[key]

    def pair(self, f: TestFunction, g: TestFunction) -> complex:
        ff = self.transform(f)
        gg = self.transform(g)
        return complex(np.einsum("un,uvn,vn,n->", ff.conj(), self.kernel, gg,
                                 self.weights))


@dataclass(frozen=True)
class GramReport:
    size: int
    min_eig: float
    max_eig: float
    passed: bool
    hermiticity_defect: float
    matrix: np.ndarray = field(repr=False, default=None)


def gram_matrix(fs, variant: KernelVariant, m: float,
                nodes: int = DEFAULT_NODES,
                half_width: float | None = None,
                eig_tol: float = 1e-10) -> GramReport:
    """Gram matrix G_ij = <f_i|f_j>; passes when its spectrum is nonnegative.

    Transforms are evaluated once per function on a shared grid, so the
    assembled matrix is a weighted sum of rank-one positive contributions
    up to rounding.
    """
    fs = list(fs)
    if not fs:
        raise ValueError("need at least one function")
    two_s = fs[0].two_s
    if any(f.two_s != two_s for f in fs):
        raise ValueError("all functions must share one spin")
    if half_width is None:
        half_width = momentum_box(fs + [fs[0]], m)
    pts, wts = tensor_grid(half_width, nodes)
    kern = onshell_kernel_grid(variant, m, two_s, pts)
    stack = np.stack([laplace_fourier_transform(f, m).evaluate(pts)
                      for f in fs])                      # (nf, dim, N)
    mixed = np.einsum("uvn,jvn->jun", kern, stack)
    weighted = stack.conj() * wts
    nf = len(fs)
    gram = weighted.reshape(nf, -1) @ mixed.reshape(nf, -1).T
    herm = float(np.max(np.abs(gram - gram.conj().T)))
    scale = float(np.max(np.abs(gram)))
    gram_h = 0.5 * (gram + gram.conj().T)
    evals = np.linalg.eigvalsh(gram_h)
    lam_min = float(evals[0])
    lam_max = float(evals[-1])
    passed = (lam_min >= -eig_tol * max(1.0, lam_max)
              and herm <= 1e-10 * max(scale, 1e-300))
    return GramReport(size=nf, min_eig=lam_min, max_eig=lam_max,
                      passed=passed, hermiticity_defect=herm, matrix=gram)


# ---------------------------------------------------------------------------
# wedge functions for the boost domain
# ---------------------------------------------------------------------------

def smoothed_heaviside(lam):
    """``exp(-1/lam^2)`` for positive arguments, exactly zero otherwise."""
    lam = np.asarray(lam, dtype=float)
    out = np.zeros_like(lam)
    pos = lam > 0.0
    with np.errstate(over="ignore"):
        out[pos] = np.exp(-1.0 / lam[pos] ** 2)
    return out


def wedge_multiplier(points, n_hat, eps: float):
    """Smooth cutoff supported inside the wedge around the n_hat-time plane."""
    if eps <= 0:
        raise ValueError("eps must be positive")
    pts = np.atleast_2d(np.asarray(points, dtype=float))
    n_hat = np.asarray(n_hat, dtype=float)
    n_hat = n_hat / np.linalg.norm(n_hat)
    proj = pts[:, 1:] @ n_hat
    base = pts[:, 0] / eps - eps
    return smoothed_heaviside(base + proj) * smoothed_heaviside(base - proj)


@dataclass(frozen=True)
class WedgeFunction:
    """Positive-time family member confined to a wedge domain."""

    base: TestFunction
    n_hat: tuple
    eps: float

    def __post_init__(self):
        if self.base.two_s != 0:
            raise ValueError("wedge functions are scalar")
        n = np.asarray(self.n_hat, dtype=float)
        object.__setattr__(self, "n_hat", tuple(n / np.linalg.norm(n)))

    def max_angle(self) -> float:
        return math.atan(self.eps)

    def evaluate(self, points) -> np.ndarray:
        pts = np.atleast_2d(np.asarray(points, dtype=float))
        return (self.base.evaluate(pts)[0]
                * wedge_multiplier(pts, self.n_hat, self.eps))


@dataclass(frozen=True)
class RotatedWedge:
    """Wedge function pulled back through a space-time plane rotation."""

    wedge: WedgeFunction
    angle: float
    matrix: np.ndarray = field(repr=False)

    def max_angle(self) -> float:
        return self.wedge.max_angle()

    def evaluate(self, points) -> np.ndarray:
        pts = np.atleast_2d(np.asarray(points, dtype=float))
        return self.wedge.evaluate(pts @ self.matrix)


def rotate_pointwise(w, angle: float):
    """Rotate a (possibly already rotated) wedge in its n_hat-time plane.

    The angle budget ``|total| < atan(eps)`` keeps the support inside the
    positive-time half space; exceeding it is a precondition error.
    """
    from .spacetime import spacetime_rotation_matrix

    if isinstance(w, RotatedWedge):
        base, total = w.wedge, w.angle + angle
    elif isinstance(w, WedgeFunction):
        base, total = w, angle
    else:
        raise TypeError("expected a wedge function")
    if abs(total) >= base.max_angle():
        raise ValueError("rotation angle exceeds the wedge support budget")
    O = spacetime_rotation_matrix(base.n_hat, total)
    # pullback x -> O^-1 x; for row-vector points that is pts @ O
    return RotatedWedge(base, total, O)


# ---------------------------------------------------------------------------
# position-space Monte-Carlo cross-check
# ---------------------------------------------------------------------------

def _envelope(obj):
    if isinstance(obj, RotatedWedge):
        base = obj.wedge.base
    elif isinstance(obj, WedgeFunction):
        base = obj.base
    else:
        base = obj
    terms = [t for ts in base.comps for t in ts]
    tau0 = min(t.tau0 for t in terms)
    alpha = min(t.alpha for t in terms)
    beta = min(t.beta for t in terms)
    center = np.mean([t.center for t in terms], axis=0)
    return tau0, alpha, beta, center


def _evaluate_scalar(obj, pts):
    vals = obj.evaluate(pts)
    return vals[0] if vals.ndim == 2 else vals


def position_inner_product_mc(f, g, m: float, seed: int = 0,
                              points_log2: int = 17, scrambles: int = 8,
                              exclusion: float | None = None):
    """8-dimensional position-space inner product by randomized QMC.

    Evaluates ``int f*(theta x) S0(x - y) g(y)`` for scalar f, g with
    importance sampling matched to the one-sided exponential and Gaussian
    envelopes.  Returns ``(value, stderr, info)`` where stderr comes from
    independent scrambles of the low-discrepancy point set.  Samples
    falling inside the excluded singular core (radius ``1e-4/m`` by
    default) contribute zero; their count is reported and the associated
    bias is far below the statistical error because the kernel singularity
    is integrable.
    """
    from scipy.special import ndtri
    from scipy.stats import qmc

    if exclusion is None:
        exclusion = 1e-4 / m
    for obj in (f, g):
        if isinstance(obj, TestFunction) and obj.two_s != 0:
            raise ValueError("position-space MC is implemented for the "
                             "scalar kernel only")
    tau0_f, alpha_f, beta_f, cen_f = _envelope(f)
    tau0_g, alpha_g, beta_g, cen_g = _envelope(g)
    rate_f, rate_g = 0.5 * alpha_f, 0.5 * alpha_g
    sig_f = math.sqrt(1.0 / beta_f)
    sig_g = math.sqrt(1.0 / beta_g)
    n = 2 ** points_log2
    estimates = []
    excluded = 0
    for r in range(scrambles):
        sampler = qmc.Sobol(d=8, scramble=True, seed=seed * 1000 + r)
        u = sampler.random_base2(points_log2)
        u = np.clip(u, 1e-12, 1.0 - 1e-12)
        tau_x = tau0_f - np.log1p(-u[:, 0]) / rate_f
        xs = cen_f + ndtri(u[:, 1:4]) * sig_f
        tau_y = tau0_g - np.log1p(-u[:, 4]) / rate_g
        ys = cen_g + ndtri(u[:, 5:8]) * sig_g
        # proposal density (the exponential is in tau - tau0)
        qx = (rate_f * np.exp(-rate_f * (tau_x - tau0_f))
              * np.exp(-0.5 * np.sum(((xs - cen_f) / sig_f) ** 2, axis=1))
              / (2 * np.pi) ** 1.5 / sig_f ** 3)
        qy = (rate_g * np.exp(-rate_g * (tau_y - tau0_g))
              * np.exp(-0.5 * np.sum(((ys - cen_g) / sig_g) ** 2, axis=1))
              / (2 * np.pi) ** 1.5 / sig_g ** 3)
        pts_x = np.column_stack([tau_x, xs])
        pts_y = np.column_stack([tau_y, ys])
        fx = np.conj(_evaluate_scalar(f, pts_x))
        gy = _evaluate_scalar(g, pts_y)
        # kernel argument theta(x) - y with x the reflected first slot
        dt = tau_x + tau_y
        dxy = xs - ys
        r2 = dt * dt + np.einsum("ni,ni->n", dxy, dxy)
        rad = np.sqrt(r2)
        live = rad >= exclusion
        excluded += int(np.count_nonzero(~live))
        kern = np.zeros_like(rad)
        kern[live] = scalar_position_kernel(m, rad[live])
        estimates.append(np.mean(fx * kern * gy / (qx * qy)))
    estimates = np.asarray(estimates)
    value = complex(np.mean(estimates))
    stderr = float(np.std(estimates, ddof=1) / math.sqrt(scrambles))
    info = {"points": n * scrambles, "excluded": excluded,
            "scrambles": scrambles}
    return value, stderr, info
