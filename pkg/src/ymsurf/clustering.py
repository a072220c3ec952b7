"""Pairing signs, interval partitions, the Yukawa kernel and decay fits.

Operators in a vacuum expectation are indexed 1..r+s; position ``t`` carries
``chi(t) = -1`` when it is an annihilator and ``+1`` otherwise.  When the
``chi`` sum vanishes the phase exponent rewrites in relative coordinates
``xi_i = x_i - x_{i+1}`` with integer coefficients ``c_i``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np
from scipy.integrate import quad
from scipy.special import erfcx


class ClusterError(ValueError):
    """Invalid cluster configuration or kernel input."""


# ---------------------------------------------------------------- pairing signs


@dataclass(frozen=True)
class ClusterConfig:
    """Two regular operator strings: annihilators first, creators after."""

    k_bar: int
    l_bar: int
    k_low: int
    l_low: int

    def __post_init__(self):
        if min(self.k_bar, self.l_bar, self.k_low, self.l_low) < 0:
            raise ClusterError("counts must be non-negative")
        if self.k_bar + self.k_low != self.l_bar + self.l_low:
            raise ClusterError("annihilation and creation counts must balance")
        if self.r < self.s:
            raise ClusterError("need r >= s")

    @property
    def r(self) -> int:
        return self.k_bar + self.l_bar

    @property
    def s(self) -> int:
        return self.k_low + self.l_low

    @property
    def flags(self) -> tuple:
        return tuple([-1] * self.k_bar + [1] * self.l_bar + [-1] * self.k_low + [1] * self.l_low)

    @classmethod
    def from_flags(cls, first, second) -> "ClusterConfig":
        out = []
        for seq in (list(first), list(second)):
            if any(f not in (-1, 1) for f in seq):
                raise ClusterError("flags must be +1 or -1")
            k = sum(1 for f in seq if f == -1)
            if seq != [-1] * k + [1] * (len(seq) - k):
                raise ClusterError("operator string is not regular")
            out += [k, len(seq) - k]
        return cls(*out)


def prefix_coefficients(flags) -> np.ndarray:
    """c_i = -sum_{t <= i} chi(t), i = 1..r+s-1."""
    flags = np.asarray(flags, dtype=int)
    if flags.sum() != 0:
        raise ClusterError("chi must sum to zero")
    return -np.cumsum(flags)[:-1]


def pairing_map(cfg: ClusterConfig) -> dict:
    """The bijection from adjoint to non-adjoint positions used for the given case."""
    kb, lb, kl, ll, r = cfg.k_bar, cfg.l_bar, cfg.k_low, cfg.l_low, cfg.r
    if min(kl, lb) == 0:
        if lb == 0:
            return {a: a + r for a in range(1, r + 1)}
        return {a: a + kb for a in range(1, kb + 1)}
    if kb >= lb:
        g = {a: a + kb for a in range(1, lb + 1)}
        g.update({a: a + kb + kl for a in range(lb + 1, kb + 1)})
        g.update({a: a + ll for a in range(r + 1, r + kl + 1)})
        return g
    g = {a: a + kb for a in range(1, kb + 1)}
    g.update({a: a + kb - lb for a in range(r + 1, r + lb - kb + 1)})
    g.update({a: a + ll for a in range(r + lb - kb + 1, r + kl + 1)})
    return g


def coefficients_from_pairing(cfg: ClusterConfig, pairs: dict) -> np.ndarray:
    """Accumulate c_i from x_d - x_e written as a signed run of xi's."""
    n = cfg.r + cfg.s
    flags = cfg.flags
    adj = {t for t in range(1, n + 1) if flags[t - 1] == -1}
    if set(pairs) != adj or sorted(pairs.values()) != sorted(set(range(1, n + 1)) - adj):
        raise ClusterError("pairing is not a bijection between adjoint and non-adjoint positions")
    c = np.zeros(n - 1, dtype=int)
    for d, e in pairs.items():
        # -x_d + x_e = -(x_d - x_e); x_d - x_e = +/- sum of xi over [min, max)
        lo, hi = min(d, e), max(d, e)
        c[lo - 1:hi - 1] += 1 if d < e else -1
    return c


def pairing_coefficients(cfg: ClusterConfig) -> dict:
    """Integer coefficients c_1..c_{r+s-1} and the sign of c_r."""
    if cfg.k_bar == 0 or cfg.l_low == 0:
        raise ClusterError("vacuum expectation vanishes identically")
    if cfg.k_bar == cfg.l_bar:
        raise ClusterError("c_r = 0 when annihilator and creator counts of the first string agree")
    c = coefficients_from_pairing(cfg, pairing_map(cfg))
    alt = prefix_coefficients(cfg.flags)
    if not np.array_equal(c, alt):
        raise ClusterError("pairing and prefix coefficients disagree")
    return {"c": [int(x) for x in c], "c_r_sign": int(np.sign(c[cfg.r - 1]))}


def all_configs(max_total: int):
    """Every admissible configuration with r + s <= max_total."""
    for n in range(2, max_total + 1):
        for r in range((n + 1) // 2, n):
            s = n - r
            for kb in range(1, r + 1):
                lb = r - kb
                for kl in range(0, s):
                    ll = s - kl
                    if kb + kl == lb + ll and kb != lb:
                        yield ClusterConfig(kb, lb, kl, ll)


def sign_case(cfg: ClusterConfig) -> int:
    """Which of the three sign-coherent cases holds (0 when none does)."""
    if min(cfg.k_low, cfg.l_bar) == 0:
        return 1
    if cfg.k_bar > cfg.l_bar:
        return 2
    if 2 * cfg.k_bar + 1 <= cfg.s:
        return 3
    return 0


def check_signs(cfg: ClusterConfig) -> list:
    """Violations of the sign claims for one configuration."""
    out = []
    c = np.asarray(pairing_coefficients(cfg)["c"])
    r, s = cfg.r, cfg.s
    if min(cfg.k_low, cfg.l_bar) == 0 or cfg.k_bar > cfg.l_bar:
        if not np.all(c > 0):
            out.append("expected all coefficients positive")
    else:
        if not np.all(c[2 * cfg.k_bar:r] < 0):
            out.append("expected negative coefficients on 2k+1..r")
    if sign_case(cfg) and np.sign(c[s - 1]) != np.sign(c[r - 1]):
        out.append("sign(c_s) != sign(c_r)")
    return out


def exhaustive_sign_check(max_total: int = 10) -> dict:
    checked, failures = 0, []
    for cfg in all_configs(max_total):
        checked += 1
        bad = check_signs(cfg)
        if bad:
            failures.append((cfg, bad))
    return {"checked": checked, "failures": failures}


# ---------------------------------------------------------------- partitions


@dataclass(frozen=True)
class Partition:
    blocks: tuple

    @property
    def has_singleton(self) -> bool:
        """Blocks of size one force a zero coefficient."""
        return any(len(b) == 1 for b in self.blocks)


def enumerate_partitions(r: int, s: int, cap: int = 12) -> list:
    """Ordered partitions of 1..r+s into contiguous runs (compositions)."""
    n = r + s
    if n < 1:
        raise ClusterError("need at least one operator")
    if n > cap:
        raise ClusterError(f"r + s = {n} exceeds the combinatorial cap {cap}")
    out = []
    for cuts in itertools.product((False, True), repeat=n - 1):
        blocks, cur = [], [1]
        for i, cut in enumerate(cuts, start=2):
            if cut:
                blocks.append(tuple(cur))
                cur = []
            cur.append(i)
        blocks.append(tuple(cur))
        out.append(Partition(tuple(blocks)))
    out.sort(key=lambda p: (len(p.blocks), p.blocks))
    return out


# ---------------------------------------------------------------- Yukawa kernel


def yukawa_green(R, omega: float):
    """-sqrt(2 pi) e^{-R omega} / (2R)."""
    R = np.asarray(R, dtype=float)
    if np.any(R <= 0) or omega <= 0:
        raise ClusterError("need R > 0 and omega > 0")
    return -np.sqrt(2 * np.pi) * np.exp(-R * omega) / (2 * R)


def yukawa_weak_identity(omega: float, width: float = 1.0) -> tuple:
    """Pair the kernel with (Laplacian - omega^2) of a Gaussian bump.

    Returns (integral, expected) with expected = (2 pi)^{3/2} bump(0).
    """
    w2 = width * width

    def integrand(R):
        b = np.exp(-R * R / (2 * w2))
        lap = (R * R / w2 ** 2 - 3 / w2) * b
        return 4 * np.pi * R * R * float(yukawa_green(R, omega)) * (lap - omega ** 2 * b)

    val, _ = quad(integrand, 0.0, 40 * width, limit=400, epsabs=1e-14, epsrel=1e-13)
    return val, (2 * np.pi) ** 1.5


def smeared_yukawa(R, omega: float, width: float):
    """Kernel convolved with a unit-mass 3-D Gaussian of the given width, closed form."""
    R = np.asarray(R, dtype=float)
    s = width
    out = np.empty_like(R)
    small = R < 1e-6
    rr = R[~small]
    g = np.exp(-rr * rr / (2 * s * s))
    a = (omega * s * s - rr) / (np.sqrt(2) * s)
    b = (omega * s * s + rr) / (np.sqrt(2) * s)
    out[~small] = g * (erfcx(a) - erfcx(b)) / (8 * np.pi * rr)
    out[small] = (1 / (2 * np.pi * np.sqrt(2 * np.pi) * s) - omega * erfcx(omega * s / np.sqrt(2)) / (4 * np.pi))
    return -(2 * np.pi) ** 1.5 * out


def screened_poisson_grid(omega: float, width: float, n: int = 64, box: float = 20.0) -> dict:
    """Solve (Laplacian - omega^2) u = (2 pi)^{3/2} rho on a periodic n^3 grid.

    rho is a unit-mass Gaussian; the solve uses the exact Fourier symbol.
    Returns the grid solution, the closed-form smeared kernel and the
    relative max residual.
    """
    h = box / n
    x = (np.arange(n) - n // 2) * h
    X, Y, Z = np.meshgrid(x, x, x, indexing="ij")
    R = np.sqrt(X * X + Y * Y + Z * Z)
    rho = np.exp(-R * R / (2 * width * width)) / (2 * np.pi * width * width) ** 1.5
    k = 2 * np.pi * np.fft.fftfreq(n, h)
    KX, KY, KZ = np.meshgrid(k, k, k, indexing="ij")
    sym = -(KX * KX + KY * KY + KZ * KZ) - omega ** 2
    u = np.real(np.fft.ifftn((2 * np.pi) ** 1.5 * np.fft.fftn(rho) / sym))
    exact = smeared_yukawa(R, omega, width)
    res = float(np.max(np.abs(u - exact)) / np.max(np.abs(exact)))
    return {"u": u, "exact": exact, "residual": res}


# ---------------------------------------------------------------- cluster kernels


@dataclass(frozen=True)
class GaussianFactor:
    """weight * exp(-|x - center|^2 / (2 width^2)) on the transverse plane."""

    center: tuple
    width: float
    weight: complex = 1.0

    def __post_init__(self):
        if self.width <= 0:
            raise ClusterError("width must be positive")
        if len(self.center) != 2:
            raise ClusterError("center must be a point in the plane")

    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        d = x - np.asarray(self.center, dtype=float)
        return self.weight * np.exp(-np.sum(d * d, axis=-1) / (2 * self.width ** 2))


def cluster_profile(cluster) -> GaussianFactor:
    """Product of a cluster's Gaussian factors, again a Gaussian."""
    cluster = list(cluster)
    if not cluster:
        raise ClusterError("cluster must be non-empty")
    prec = sum(1 / f.width ** 2 for f in cluster)
    cen = sum(np.asarray(f.center, float) / f.width ** 2 for f in cluster) / prec
    const = sum(np.dot(f.center, f.center) / f.width ** 2 for f in cluster) - prec * np.dot(cen, cen)
    weight = np.prod([f.weight for f in cluster]) * np.exp(-const / 2)
    return GaussianFactor(tuple(float(c) for c in cen), float(1 / np.sqrt(prec)), complex(weight))


def overlap(fa: GaussianFactor, fb: GaussianFactor, shift) -> complex:
    """int fa(x) fb(x - shift) dx over the plane."""
    sa2, sb2 = fa.width ** 2, fb.width ** 2
    d = np.asarray(fa.center, float) - np.asarray(fb.center, float) - np.asarray(shift, float)
    v = sa2 + sb2
    return complex(fa.weight * fb.weight * 2 * np.pi * sa2 * sb2 / v * np.exp(-np.dot(d, d) / (2 * v)))


def h12_kernel(cluster_a, cluster_b, a, H: float, P: float, c_r: int, block_weight: complex = 1.0) -> complex:
    """Phase times the transverse overlap of the two cluster profiles.

    The phase is exp(-i c_r (a^0 H + a^1 P)); the transverse part is
    ``int phi_A(x) phi_B(x - a_perp) dx`` scaled by the single-block weight.
    """
    a = np.asarray(a, dtype=float)
    if a.shape != (4,):
        raise ClusterError("displacement must be a 4-vector")
    phase = np.exp(-1j * c_r * (a[0] * H + a[1] * P))
    return complex(phase * block_weight * overlap(cluster_profile(cluster_a), cluster_profile(cluster_b), a[2:]))


def yukawa_cluster_kernel(cluster_a, cluster_b, a_perp, omega: float, order: int = 40) -> float:
    """|int int phi_A(x) G(|x - y - a|) phi_B(y)| over the plane, by Gauss-Hermite.

    The double integral only depends on the overlap density of the two
    profiles, which is a Gaussian of width sqrt(sa^2 + sb^2).
    """
    fa, fb = cluster_profile(cluster_a), cluster_profile(cluster_b)
    s = np.sqrt(fa.width ** 2 + fb.width ** 2)
    mass = fa.weight * fb.weight * 2 * np.pi * fa.width ** 2 * fb.width ** 2
    cen = np.asarray(fa.center, float) - np.asarray(fb.center, float)
    t, w = np.polynomial.hermite_e.hermegauss(order)
    w = w / np.sqrt(2 * np.pi)
    Z1, Z2 = np.meshgrid(cen[0] + s * t, cen[1] + s * t, indexing="ij")
    W = np.outer(w, w)
    d = np.sqrt((Z1 - a_perp[0]) ** 2 + (Z2 - a_perp[1]) ** 2)
    return float(abs(mass * np.sum(W * yukawa_green(d, omega))))


def yukawa_cluster_bound(cluster_a, cluster_b, omega: float, eps: float):
    """Constant C with |kernel| <= C e^{-omega |a|} / (|a| - eps).

    Valid up to the Gaussian tail of the overlap density beyond radius eps.
    """
    fa, fb = cluster_profile(cluster_a), cluster_profile(cluster_b)
    mass = abs(fa.weight * fb.weight) * 2 * np.pi * fa.width ** 2 * fb.width ** 2
    reach = np.hypot(*(np.asarray(fa.center, float) - np.asarray(fb.center, float)))
    if reach >= eps:
        raise ClusterError("eps must exceed the separation of the cluster centers")
    return float(np.sqrt(2 * np.pi) / 2 * mass * np.exp(omega * eps))


def support_radius(cluster_a, cluster_b, sigmas: float = 10.0) -> float:
    fa, fb = cluster_profile(cluster_a), cluster_profile(cluster_b)
    reach = np.hypot(*(np.asarray(fa.center, float) - np.asarray(fb.center, float)))
    return float(reach + sigmas * np.sqrt(fa.width ** 2 + fb.width ** 2))


# ---------------------------------------------------------------- decay fit


@dataclass(frozen=True)
class DecayFit:
    rate: float
    amplitude: float
    samples: int


def decay_fit(distances, values, eps: float = 0.0) -> DecayFit:
    """Least squares for log|h| + log(|a| - eps) = log C - m |a|."""
    d = np.asarray(distances, dtype=float)
    v = np.abs(np.asarray(values))
    keep = (d > eps) & (v > 0)
    if keep.sum() < 8:
        raise ClusterError("need at least 8 positive samples beyond eps")
    d, v = d[keep], v[keep]
    y = np.log(v) + np.log(d - eps)
    A = np.column_stack([np.ones_like(d), -d])
    (logc, m), *_ = np.linalg.lstsq(A, y, rcond=None)
    return DecayFit(float(m), float(np.exp(logc)), int(d.size))
