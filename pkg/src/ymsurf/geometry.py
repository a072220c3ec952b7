"""Minkowski space R^{1,3}: Lorentz and SL(2,C) transforms, rectangles, frames.

Metric signature is (-, +, +, +).  Four-vectors are plain length-4 float
arrays.  Rotations are counterclockwise: ``rotation(3, t)`` sends e1 to
``cos t e1 + sin t e2``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Callable, Sequence

import numpy as np

from .config import DEFAULT

ETA = np.diag([-1.0, 1.0, 1.0, 1.0])
E = np.eye(4)
SIGMA = np.array([np.eye(2), [[0, 1], [1, 0]], [[0, -1j], [1j, 0]], [[1, 0], [0, -1]]],
                 dtype=complex)


class GeometryError(ValueError):
    """Raised for invalid geometric input."""


def vec(x) -> np.ndarray:
    v = np.asarray(x, dtype=float).reshape(-1)
    if v.shape != (4,):
        raise GeometryError("four-vector must have 4 components")
    return v


def minkowski_dot(x, y) -> float:
    x, y = np.asarray(x, float), np.asarray(y, float)
    return float(-x[0] * y[0] + x[1:] @ y[1:])


def classify_vector(v, tol: float = 1e-12) -> str:
    q = minkowski_dot(v, v)
    scale = max(float(np.dot(v, v)), 1e-300)
    if q < -tol * scale:
        return "timelike"
    if q > tol * scale:
        return "spacelike"
    return "null"


# ---------------------------------------------------------------- Lorentz


def boost(axis: int, rapidity: float) -> np.ndarray:
    if axis not in (1, 2, 3):
        raise GeometryError("boost axis must be 1, 2 or 3")
    m = np.eye(4)
    ch, sh = np.cosh(rapidity), np.sinh(rapidity)
    m[0, 0] = m[axis, axis] = ch
    m[0, axis] = m[axis, 0] = sh
    return m


def rotation(axis: int, angle: float) -> np.ndarray:
    if axis not in (1, 2, 3):
        raise GeometryError("rotation axis must be 1, 2 or 3")
    i, j = [k for k in (1, 2, 3) if k != axis]
    if axis == 2:
        i, j = 3, 1  # keep the cyclic orientation (x3 -> x1)
    c, s = np.cos(angle), np.sin(angle)
    m = np.eye(4)
    m[i, i] = m[j, j] = c
    m[j, i] = s
    m[i, j] = -s
    return m


def lambda_theta(theta: float) -> np.ndarray:
    """2x2 hyperbolic rotation acting on (time, space) pairs."""
    ch, sh = np.cosh(theta), np.sinh(theta)
    return np.array([[ch, sh], [sh, ch]])


def dot2(x, y) -> float:
    """Minkowski product on the two-dimensional (time, space) plane."""
    return float(-x[0] * y[0] + x[1] * y[1])


def lorentz_residual(m) -> float:
    m = np.asarray(m, float)
    return float(np.max(np.abs(m.T @ ETA @ m - ETA)))


def is_restricted_lorentz(m, tol: float = DEFAULT.lorentz) -> bool:
    m = np.asarray(m, float)
    return (lorentz_residual(m) <= tol * max(1.0, np.max(np.abs(m)) ** 2)
            and abs(np.linalg.det(m) - 1) <= 1e-8 * max(1.0, np.max(np.abs(m)) ** 4)
            and m[0, 0] >= 1 - 1e-12)


def minkowski_inverse(m) -> np.ndarray:
    """Inverse of a Lorentz matrix, eta m^T eta."""
    return ETA @ np.asarray(m, float).T @ ETA


# ---------------------------------------------------------------- SL(2,C)


def sl2c(a) -> np.ndarray:
    m = np.asarray(a, dtype=complex)
    if m.shape != (2, 2):
        raise GeometryError("SL(2,C) element must be 2x2")
    if abs(np.linalg.det(m) - 1) > DEFAULT.sl2c_det * max(1.0, np.max(np.abs(m)) ** 2):
        raise GeometryError("SL(2,C) element must have unit determinant")
    return m


def hermitian_of(x) -> np.ndarray:
    """x^0 I + x . sigma."""
    return np.einsum("a,aij->ij", vec(x).astype(complex), SIGMA)


def vector_of(X) -> np.ndarray:
    return np.real(np.einsum("aij,ji->a", SIGMA, X)) / 2.0


def sl2c_to_lorentz(A) -> np.ndarray:
    """The covering map Y: Y(A) x is read off from A (x^0 + x.sigma) A^dagger."""
    A = sl2c(A)
    cols = [vector_of(A @ SIGMA[b] @ A.conj().T) for b in range(4)]
    return np.stack(cols, axis=1)


def lorentz_to_sl2c(L) -> np.ndarray:
    """One of the two preimages +-A of a restricted Lorentz matrix under Y."""
    L = np.asarray(L, float)
    imgs = [hermitian_of(L[:, b]) for b in range(4)]
    best = None
    for Q in SIGMA:
        M = sum(imgs[b] @ Q @ SIGMA[b] for b in range(4))
        if best is None or np.linalg.norm(M) > np.linalg.norm(best):
            best = M
    A = best / np.sqrt(np.linalg.det(best))
    return A


def sl2c_boost(axis: int, rapidity: float) -> np.ndarray:
    s = SIGMA[axis]
    return np.cosh(rapidity / 2) * np.eye(2) + np.sinh(rapidity / 2) * s


def sl2c_rotation(axis: int, angle: float) -> np.ndarray:
    """Preimage of ``rotation(axis, angle)``: exp(-i angle sigma_axis / 2)."""
    s = SIGMA[axis]
    return np.cos(angle / 2) * np.eye(2) - 1j * np.sin(angle / 2) * s


def random_sl2c(rng: np.random.Generator, scale: float = 0.5) -> np.ndarray:
    """exp of a random traceless matrix."""
    from scipy.linalg import expm

    c = rng.normal(scale=scale, size=3) + 1j * rng.normal(scale=scale, size=3)
    return expm(np.einsum("a,aij->ij", c, SIGMA[1:]) / 2)


def random_lorentz(rng: np.random.Generator, max_rapidity: float = 1.5) -> np.ndarray:
    """boost(axis, eta) composed with a random rotation."""
    R = rotation(3, rng.uniform(0, 2 * np.pi)) @ rotation(2, rng.uniform(0, np.pi)) \
        @ rotation(3, rng.uniform(0, 2 * np.pi))
    return boost(int(rng.integers(1, 4)), rng.uniform(-max_rapidity, max_rapidity)) @ R


# ---------------------------------------------------------------- spinor reps


def _sym_power(M: np.ndarray, n: int) -> np.ndarray:
    """Action of M on homogeneous degree-n polynomials in (x, y), basis x^{n-i} y^i."""
    D = np.zeros((n + 1, n + 1), dtype=complex)
    mx = (M[0, 0], M[1, 0])  # image of x
    my = (M[0, 1], M[1, 1])  # image of y
    for i in range(n + 1):
        # (mx0 x + mx1 y)^{n-i} (my0 x + my1 y)^i
        p = np.zeros(n + 1, dtype=complex)
        p[0] = 1.0
        for _ in range(n - i):
            p = _mul_lin(p, mx)
        for _ in range(i):
            p = _mul_lin(p, my)
        D[:, i] = p
    return D


def _mul_lin(p, lin):
    # multiply polynomial (coefficients of x^{n-k} y^k, indexed by k) by (a x + b y)
    out = np.zeros_like(p)
    out += lin[0] * p
    out[1:] += lin[1] * p[:-1]
    return out


SUPPORTED_SPINOR = {(0, 0), (1, 0), (0, 1), (0.5, 0.5), (1, 1)}


def spinor_rep(j: float, k: float) -> Callable[[np.ndarray], np.ndarray]:
    """D^{(j,k)}: symmetric power 2j of A tensored with symmetric power 2k of conj(A)."""
    if (j, k) not in SUPPORTED_SPINOR:
        raise GeometryError(f"unsupported spinor representation ({j}, {k})")
    n1, n2 = int(round(2 * j)), int(round(2 * k))

    def D(A):
        A = np.asarray(A, complex)
        return np.kron(_sym_power(A, n1), _sym_power(A.conj(), n2))

    return D


def spinor_dim(j: float, k: float) -> int:
    return int(round((2 * j + 1) * (2 * k + 1)))


# ---------------------------------------------------------------- frames


@dataclass(frozen=True)
class MinkowskiFrame:
    """Tetrad f_a = L e_a with the Lorentz/translation chain producing it.

    ``chain`` is a list of ("lorentz", 4x4) and ("translation", 4-vector)
    steps applied left to right to S_0 (the x2-x3 plane).
    """

    L: np.ndarray
    shift: np.ndarray = field(default_factory=lambda: np.zeros(4))
    chain: tuple = ()

    @property
    def vectors(self) -> np.ndarray:
        return self.L.T  # rows are f_0..f_3

    def f(self, a: int) -> np.ndarray:
        return self.L[:, a]

    def invariant_residual(self) -> float:
        return lorentz_residual(self.L)

    def chain_lorentz(self) -> np.ndarray:
        m = np.eye(4)
        for kind, x in self.chain:
            if kind == "lorentz":
                m = x @ m
        return m

    def chain_shift(self) -> np.ndarray:
        a = np.zeros(4)
        for kind, x in self.chain:
            if kind == "lorentz":
                a = x @ a
            else:
                a = a + x
        return a

    def spinor(self) -> np.ndarray:
        return lorentz_to_sl2c(self.L)

    def equals(self, other: "MinkowskiFrame", tol: float = DEFAULT.frame) -> bool:
        return bool(np.max(np.abs(self.L - other.L)) <= tol)

    def transformed(self, lam: np.ndarray, a) -> "MinkowskiFrame":
        a = vec(a)
        lam = np.asarray(lam, float)
        new_shift = lam @ self.shift + a
        steps = [s for s in self.chain if s[0] == "lorentz"]
        if not np.allclose(lam, np.eye(4), atol=1e-15, rtol=0):
            steps.append(("lorentz", lam))
        if np.any(new_shift != 0):
            steps.append(("translation", new_shift))
        return MinkowskiFrame(lam @ self.L, new_shift, tuple(steps))

    def coords(self, x) -> np.ndarray:
        """Components x^a with x = sum x^a f_a."""
        return np.linalg.solve(self.L, vec(x))


IDENTITY_FRAME = MinkowskiFrame(np.eye(4))


@dataclass(frozen=True)
class RectSurface:
    """sigma(s, t) = origin + s Lu u + t Lv v on [0,1]^2.

    u and v must be independent and Minkowski-orthogonal; an optional frame
    travels with the surface under Poincare transforms.
    """

    origin: np.ndarray
    u: np.ndarray
    v: np.ndarray
    extent: tuple = (1.0, 1.0)
    frame: MinkowskiFrame | None = None

    def __post_init__(self):
        o, u, v = vec(self.origin), vec(self.u), vec(self.v)
        lu, lv = float(self.extent[0]), float(self.extent[1])
        if lu <= 0 or lv <= 0:
            raise GeometryError("extent must be positive")
        if np.linalg.norm(u) == 0 or np.linalg.norm(v) == 0:
            raise GeometryError("zero spanning vector")
        if np.linalg.matrix_rank(np.stack([u, v]), tol=1e-12 * np.linalg.norm(u) * np.linalg.norm(v)) < 2:
            raise GeometryError("spanning vectors are linearly dependent")
        if abs(minkowski_dot(u, v)) > 1e-9 * np.linalg.norm(u) * np.linalg.norm(v):
            raise GeometryError("spanning vectors must be Minkowski-orthogonal")
        for name, val in (("origin", o), ("u", u), ("v", v)):
            val.setflags(write=False)
            object.__setattr__(self, name, val)
        object.__setattr__(self, "extent", (lu, lv))

    # parametrization ------------------------------------------------
    def sigma(self, s, t):
        s, t = np.asarray(s, float), np.asarray(t, float)
        return (self.origin + s[..., None] * self.extent[0] * self.u
                + t[..., None] * self.extent[1] * self.v)

    @property
    def du(self) -> np.ndarray:
        return self.extent[0] * self.u

    @property
    def dv(self) -> np.ndarray:
        return self.extent[1] * self.v

    def corners(self) -> np.ndarray:
        o, a, b = self.origin, self.du, self.dv
        return np.stack([o, o + a, o + a + b, o + b])

    def classify(self) -> str:
        return classify_surface(self)

    def transformed(self, lam, a=(0, 0, 0, 0)) -> "RectSurface":
        """Lambda S + a, carrying the frame (canonical one if none is attached)."""
        lam = np.asarray(lam, float)
        a = vec(a)
        fr = self.frame
        if fr is None and self.classify() == "spacelike":
            fr = canonical_frame(self)
        new_fr = fr.transformed(lam, a) if fr is not None else None
        return RectSurface(lam @ self.origin + a, lam @ self.u, lam @ self.v, self.extent, new_fr)

    def with_frame(self, frame) -> "RectSurface":
        return RectSurface(self.origin, self.u, self.v, self.extent, frame)

    def to_dict(self) -> dict:
        d = {"origin": self.origin.tolist(), "u": self.u.tolist(), "v": self.v.tolist(),
             "extent": list(self.extent)}
        if self.frame is not None:
            d["frame"] = self.frame.L.T.tolist()
            d["chain"] = [[k, np.asarray(x).tolist()] for k, x in self.frame.chain]
        return d

    @staticmethod
    def from_dict(d: dict) -> "RectSurface":
        s = RectSurface(d["origin"], d["u"], d["v"], tuple(d.get("extent", (1.0, 1.0))))
        if "frame" in d:
            L = np.asarray(d["frame"], float).T
            chain = tuple((k, np.asarray(x, float)) for k, x in d.get("chain", []))
            fr = MinkowskiFrame(L, np.asarray(sum((np.asarray(x) for k, x in chain if k == "translation"),
                                                  np.zeros(4)), float), chain)
            s = s.with_frame(fr)
        return s


def unit_square_s0(side: float = 1.0, center=(0.0, 0.0)) -> RectSurface:
    """Square of given side in the x2-x3 plane, lower corner at ``center - side/2``."""
    o = np.array([0.0, 0.0, center[0] - side / 2, center[1] - side / 2])
    return RectSurface(o, E[2], E[3], (side, side))


def gram_minkowski(u, v) -> np.ndarray:
    return np.array([[minkowski_dot(u, u), minkowski_dot(u, v)],
                     [minkowski_dot(v, u), minkowski_dot(v, v)]])


def classify_surface(S: RectSurface, tol: float = 1e-12) -> str:
    """spacelike / timelike / degenerate from the Minkowski Gram of the sides.

    For a plane, the infimum of |v|^2 / (v^0)^2 over tangent directions is
    > 1 iff every tangent direction is spacelike, i.e. the induced metric is
    positive definite.
    """
    G = gram_minkowski(S.u, S.v)
    d = np.linalg.det(G)
    scale = (np.dot(S.u, S.u) * np.dot(S.v, S.v))
    if abs(d) <= tol * scale:
        return "degenerate"
    if d < 0:
        return "timelike"
    return "spacelike" if G[0, 0] > 0 else "timelike"


def infimum_ratio(S: RectSurface, samples: int = 20001) -> float:
    """Brute-force inf over tangent directions of |v|^2/(v^0)^2 (inf if no time part)."""
    th = np.linspace(0, np.pi, samples)
    w = np.cos(th)[:, None] * S.u + np.sin(th)[:, None] * S.v
    t2 = w[:, 0] ** 2
    s2 = np.sum(w[:, 1:] ** 2, axis=1)
    with np.errstate(divide="ignore"):
        r = np.where(t2 > 0, s2 / np.where(t2 > 0, t2, 1), np.inf)
    return float(np.min(r))


def canonical_frame(S: RectSurface) -> MinkowskiFrame:
    """Frame from a spatial rotation after a single boost along x2, then a translation."""
    if classify_surface(S) != "spacelike":
        raise GeometryError("Minkowski frame requires a space-like surface")
    u, v = S.u, S.v
    w = v[0] * u - u[0] * v
    if np.linalg.norm(w[1:]) <= 1e-14 * np.linalg.norm(u) * np.linalg.norm(v):
        w = v
    if minkowski_dot(w, v) < 0:
        w = -w
    f3 = w / np.sqrt(minkowski_dot(w, w))
    f3[0] = 0.0
    # prefer the vector closest to u for f2, orthogonal to f3
    p = u - minkowski_dot(u, f3) * f3
    if np.linalg.norm(p) < 1e-14:
        p = v - minkowski_dot(v, f3) * f3
    f2 = p / np.sqrt(minkowski_dot(p, p))
    eta = np.arcsinh(f2[0])
    e2hat = f2[1:] / np.linalg.norm(f2[1:])
    e3hat = f3[1:] / np.linalg.norm(f3[1:])
    e3hat = e3hat - (e3hat @ e2hat) * e2hat
    e3hat /= np.linalg.norm(e3hat)
    e1hat = np.cross(e2hat, e3hat)
    R = np.eye(4)
    R[1:, 1] = e1hat
    R[1:, 2] = e2hat
    R[1:, 3] = e3hat
    B = boost(2, eta)
    L = R @ B
    steps = []
    if abs(eta) > 0:
        steps.append(("lorentz", B))
    if not np.allclose(R, np.eye(4), atol=1e-15, rtol=0):
        steps.append(("lorentz", R))
    a = np.array(S.origin, float)
    if np.any(a != 0):
        steps.append(("translation", a))
    return MinkowskiFrame(L, a, tuple(steps))


def minkowski_frame(S: RectSurface) -> MinkowskiFrame:
    """The frame attached to S, or the canonical one if none is attached."""
    if classify_surface(S) != "spacelike":
        raise GeometryError("Minkowski frame requires a space-like surface")
    return S.frame if S.frame is not None else canonical_frame(S)


def frame_chain_residual(fr: MinkowskiFrame) -> float:
    return float(np.max(np.abs(fr.chain_lorentz() - fr.L)))


# ---------------------------------------------------------------- area densities


def jacobians(dsig_ds, dsig_dt) -> dict:
    """J_ab for a < b: rows (sigma'_a, sigma-dot_a), (sigma'_b, sigma-dot_b)."""
    out = {}
    for a, b in combinations(range(4), 2):
        out[(a, b)] = np.array([[dsig_ds[a], dsig_dt[a]], [dsig_ds[b], dsig_dt[b]]], dtype=complex)
    return out


def _complement(a, b):
    c, d = [k for k in range(4) if k not in (a, b)]
    return c, d


def _tangents(sigma, s, t, h=1e-6, tangents=None):
    if tangents is not None:
        return np.asarray(tangents[0], float), np.asarray(tangents[1], float)
    ds = (np.asarray(sigma(s + h, t)) - np.asarray(sigma(s - h, t))) / (2 * h)
    dt = (np.asarray(sigma(s, t + h)) - np.asarray(sigma(s, t - h))) / (2 * h)
    return ds, dt


def area_density(sigma=None, s=0.0, t=0.0, tangents=None) -> dict:
    """Real densities rho^{ab}, their weighted sum, and the complexified density.

    ``tangents=(sigma', sigma-dot)`` gives exact derivatives; otherwise central
    differences with step 1e-6 are used on the callable ``sigma``.
    """
    ds, dt = _tangents(sigma, s, t, tangents=tangents)
    J = jacobians(ds, dt)
    dets = {k: np.linalg.det(m).real for k, m in J.items()}
    if all(abs(d) == 0 for d in dets.values()):
        raise GeometryError("singular parametrization: all 2x2 Jacobian minors vanish")
    rho, total = {}, 0.0
    for (a, b), m in J.items():
        c, d = _complement(a, b)
        den = np.sqrt(np.linalg.det(m.T @ m + J[(c, d)].T @ J[(c, d)]).real)
        rho[(a, b)] = abs(dets[(a, b)]) / den
        total += rho[(a, b)] * abs(dets[(a, b)])
    # complexified: time row multiplied by i
    Jc = {}
    for (a, b), m in J.items():
        m = m.copy()
        if a == 0:
            m[0] *= 1j
        Jc[(a, b)] = m
    rho_c, acute = {}, 0.0 + 0.0j
    for (a, b), m in Jc.items():
        c, d = _complement(a, b)
        other = Jc[(c, d)]
        gram = m.T @ m + other.T @ other
        det_g = complex(np.linalg.det(gram))
        det_g = complex(det_g.real, 0.0) if abs(det_g.imag) <= 1e-14 * abs(det_g) else det_g
        rho_c[(a, b)] = np.linalg.det(m) / np.sqrt(det_g)
        acute += rho_c[(a, b)] * np.linalg.det(m)
    return {"rho": rho, "density": total, "rho_acute": rho_c, "acute": complex(acute)}


def acute_closed_form(ds, dt) -> complex:
    """sqrt([s'.s'][t.t] - [s'.t]^2) with Minkowski dots, principal branch."""
    g = minkowski_dot(ds, ds) * minkowski_dot(dt, dt) - minkowski_dot(ds, dt) ** 2
    return complex(np.sqrt(complex(g, 0.0)))


def _gauss_2d(fn, order):
    x, w = np.polynomial.legendre.leggauss(order)
    x = 0.5 * (x + 1)
    w = 0.5 * w
    total = 0.0
    for xi, wi in zip(x, w):
        for yj, wj in zip(x, w):
            total = total + wi * wj * fn(xi, yj)
    return total


def integrate_unit_square(fn, tol=DEFAULT.quad_rel, order=DEFAULT.quad_order,
                          cap=DEFAULT.quad_order_cap):
    """Tensor Gauss-Legendre on [0,1]^2, doubling the order until converged."""
    prev = _gauss_2d(fn, order)
    while order < cap:
        order *= 2
        cur = _gauss_2d(fn, order)
        if abs(cur - prev) <= tol * max(abs(cur), 1e-300):
            return cur
        prev = cur
    return prev


def area(S: RectSurface) -> float:
    """Euclidean area through the real density."""
    tg = (S.du, S.dv)
    return float(np.real(integrate_unit_square(
        lambda s, t: area_density(tangents=tg)["density"])))


def rho_acute_integral(S: RectSurface) -> dict:
    tg = (S.du, S.dv)
    if classify_surface(S) == "degenerate":
        raise GeometryError("degenerate surface")
    val = area_density(tangents=tg)["acute"]
    c = integrate_unit_square(lambda s, t: val)
    a = integrate_unit_square(lambda s, t: abs(val))
    return {"complex": complex(c), "abs": float(np.real(a))}


# ---------------------------------------------------------------- affine maps


@dataclass(frozen=True)
class PoincareMap:
    """x -> M x + shift."""

    M: np.ndarray
    shift: np.ndarray = field(default_factory=lambda: np.zeros(4))
    name: str = ""

    def __call__(self, x):
        return self.M @ vec(x) + self.shift

    def then(self, other: "PoincareMap") -> "PoincareMap":
        """Apply self first, then other."""
        return PoincareMap(other.M @ self.M, other.M @ self.shift + other.shift)


def compose(chain: Sequence[PoincareMap]) -> PoincareMap:
    out = PoincareMap(np.eye(4))
    for step in chain:
        out = out.then(step)
    return out


def reflect_spacelike(v, x, S: RectSurface) -> list:
    """Chain of translations and Lorentz maps sending the point x + v to x - v.

    ``v`` must be a space-like direction in span(f_0, f_1) of the frame on S
    and ``x`` a point of S's plane.  Returned in application order.
    """
    fr = minkowski_frame(S)
    v, x = vec(v), vec(x)
    if classify_vector(v) != "spacelike":
        raise GeometryError("reflection needs a space-like vector; "
                            "time and space inversion of a time-like vector is not Lorentz")
    cv = fr.coords(v)
    if np.max(np.abs(cv[2:])) > 1e-9 * max(1.0, np.linalg.norm(v)):
        raise GeometryError("v does not lie in the time-like plane spanned by f_0, f_1")
    a = np.array(S.origin, float)
    cx = fr.coords(x - a)
    if np.max(np.abs(cx[:2])) > 1e-9 * max(1.0, np.linalg.norm(x - a)):
        raise GeometryError("x does not lie in the plane of S")
    s, sb = cv[0], cv[1]
    x2 = cx[2]
    Lbar = minkowski_inverse(fr.L)
    # boost along e1 killing the time component of s e0 + sb e1
    eta = -np.arctanh(s / sb)
    Lam = boost(1, eta)
    r = np.sign(sb) * np.sqrt(sb * sb - s * s)
    phi = -np.arctan2(x2, r)  # rotate (r, x2) in the x1-x2 plane onto the x1 axis
    R3 = rotation(3, phi)
    R2 = rotation(2, np.pi)
    R1 = rotation(1, np.pi)
    steps = []
    if np.any(a != 0):
        steps.append(PoincareMap(np.eye(4), -a, "translate to origin"))
    steps += [
        PoincareMap(Lbar, name="frame to standard"),
        PoincareMap(Lam, name="boost e1"),
        PoincareMap(R3, name="rotate x3"),
        PoincareMap(R2, name="pi about x2"),
        PoincareMap(minkowski_inverse(R3), name="unrotate x3"),
        PoincareMap(minkowski_inverse(Lam), name="unboost e1"),
        PoincareMap(R1, name="pi about x1"),
        PoincareMap(fr.L, name="standard to frame"),
    ]
    if np.any(a != 0):
        steps.append(PoincareMap(np.eye(4), a, "translate back"))
    return steps
