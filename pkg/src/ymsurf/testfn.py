"""Gaussian-polynomial test functions on R^n.

A term is ``exp(-x^T A x + b^T x + c) * P(x)`` with A real symmetric positive
semi-definite, b and c complex and P a polynomial stored as a dict from
exponent tuples to complex coefficients.  Sums of such terms are closed under
products, conjugation, affine pullback, differentiation and Gaussian
integration against plane waves over any subset of variables, which is all
the partial Fourier transform needs.  Separable Hermite-Gaussians are the
usual way to build them.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product as iproduct
from typing import Sequence

import numpy as np
from numpy.polynomial import hermite_e as He

Poly = dict  # exponent tuple -> complex


# ---------------------------------------------------------------- polynomials


def poly_const(n: int, value: complex = 1.0) -> Poly:
    return {(0,) * n: complex(value)} if value != 0 else {}


def poly_var(n: int, k: int) -> Poly:
    e = [0] * n
    e[k] = 1
    return {tuple(e): 1.0 + 0j}


def poly_add(p: Poly, q: Poly, a: complex = 1.0, b: complex = 1.0) -> Poly:
    out = {k: a * v for k, v in p.items()}
    for k, v in q.items():
        out[k] = out.get(k, 0) + b * v
    return {k: v for k, v in out.items() if v != 0}


def poly_scale(p: Poly, a: complex) -> Poly:
    return {k: a * v for k, v in p.items()} if a != 0 else {}


def poly_mul(p: Poly, q: Poly) -> Poly:
    out: Poly = {}
    for k1, v1 in p.items():
        for k2, v2 in q.items():
            k = tuple(i + j for i, j in zip(k1, k2))
            out[k] = out.get(k, 0) + v1 * v2
    return {k: v for k, v in out.items() if v != 0}


def poly_linear(coeffs: Sequence[complex], const: complex = 0.0) -> Poly:
    n = len(coeffs)
    p = poly_const(n, const)
    for k, c in enumerate(coeffs):
        if c != 0:
            p = poly_add(p, poly_var(n, k), 1.0, c)
    return p


def poly_pow(p: Poly, m: int, n: int) -> Poly:
    out = poly_const(n, 1.0)
    for _ in range(m):
        out = poly_mul(out, p)
    return out


def poly_degree(p: Poly) -> int:
    return max((sum(k) for k in p), default=0)


def poly_eval(p: Poly, X: np.ndarray) -> np.ndarray:
    X = np.asarray(X)
    out = np.zeros(X.shape[:-1], dtype=complex)
    for k, v in p.items():
        term = np.full(X.shape[:-1], v, dtype=complex)
        for i, e in enumerate(k):
            if e:
                term = term * X[..., i] ** e
        out += term
    return out


def poly_deriv(p: Poly, k: int) -> Poly:
    out: Poly = {}
    for e, v in p.items():
        if e[k] > 0:
            e2 = list(e)
            e2[k] -= 1
            out[tuple(e2)] = out.get(tuple(e2), 0) + v * e[k]
    return out


def poly_compose_affine(p: Poly, M: np.ndarray, shift: np.ndarray) -> Poly:
    """p(M y + shift) as a polynomial in y."""
    n_out = M.shape[1]
    lin = [poly_linear(M[i], shift[i]) for i in range(M.shape[0])]
    cache: dict = {}

    def pw(i, e):
        key = (i, e)
        if key not in cache:
            cache[key] = poly_pow(lin[i], e, n_out)
        return cache[key]

    out: Poly = {}
    for e, v in p.items():
        term = poly_const(n_out, v)
        for i, ei in enumerate(e):
            if ei:
                term = poly_mul(term, pw(i, ei))
        out = poly_add(out, term)
    return out


def poly_select(p: Poly, keep: Sequence[int]) -> Poly:
    return {tuple(k[i] for i in keep): v for k, v in p.items()}


# ---------------------------------------------------------------- terms


@dataclass(frozen=True)
class GaussTerm:
    A: np.ndarray
    b: np.ndarray
    c: complex
    poly: tuple  # sorted items of the Poly dict, kept hashable

    @property
    def n(self) -> int:
        return self.A.shape[0]

    @property
    def P(self) -> Poly:
        return dict(self.poly)

    @staticmethod
    def make(A, b, c, poly: Poly) -> "GaussTerm":
        A = np.asarray(A, float)
        A = 0.5 * (A + A.T)
        b = np.asarray(b, complex)
        return GaussTerm(A, b, complex(c), tuple(sorted(poly.items())))

    def evaluate(self, X: np.ndarray) -> np.ndarray:
        X = np.asarray(X, float)
        q = -np.einsum("...i,ij,...j->...", X, self.A, X) + X @ self.b + self.c
        return np.exp(q) * poly_eval(self.P, X)


class TestFunctionError(ValueError):
    pass


def _merge(terms) -> tuple:
    """Combine terms sharing the same Gaussian exponent by adding their polynomials."""
    groups: dict = {}
    for t in terms:
        key = (t.A.tobytes(), t.b.tobytes(), t.c)
        if key in groups:
            g = groups[key]
            groups[key] = (g[0], poly_add(g[1], t.P))
        else:
            groups[key] = (t, t.P)
    out = []
    for t, P in groups.values():
        P = {k: v for k, v in P.items() if v != 0}
        if P:
            out.append(t if P == t.P else GaussTerm.make(t.A, t.b, t.c, P))
    return tuple(out)


@dataclass(frozen=True)
class TestFunction:
    """Finite sum of Gaussian-polynomial terms on R^n."""

    __test__ = False  # keep pytest from collecting this class

    n: int
    terms: tuple = ()

    # constructors ----------------------------------------------------
    @staticmethod
    def zero(n: int) -> "TestFunction":
        return TestFunction(n, ())

    @staticmethod
    def gaussian(center, width, weight: complex = 1.0) -> "TestFunction":
        center = np.asarray(center, float)
        width = np.broadcast_to(np.asarray(width, float), center.shape)
        return TestFunction.hermite_gaussian([0] * len(center), center, width, weight)

    @staticmethod
    def hermite_gaussian(orders, center, width, weight: complex = 1.0,
                         wavevector=None) -> "TestFunction":
        """weight * prod_i He_{k_i}((x_i - c_i)/w_i) exp(-(x_i - c_i)^2 / (2 w_i^2) + i q_i x_i)."""
        center = np.asarray(center, float)
        n = len(center)
        width = np.broadcast_to(np.asarray(width, float), (n,))
        if np.any(width <= 0):
            raise TestFunctionError("widths must be positive")
        q = np.zeros(n) if wavevector is None else np.asarray(wavevector, float)
        A = np.diag(1.0 / (2 * width ** 2))
        b = center / width ** 2 + 1j * q
        c = -np.sum(center ** 2 / (2 * width ** 2))
        poly = poly_const(n, weight)
        for i, k in enumerate(orders):
            coef = He.herme2poly([0] * k + [1])
            # He_k((x - c)/w) as a polynomial in x_i
            one = {}
            base = poly_linear([1.0 / width[i] if j == i else 0 for j in range(n)], -center[i] / width[i])
            for d, a in enumerate(coef):
                if a != 0:
                    one = poly_add(one, poly_pow(base, d, n), 1.0, a)
            poly = poly_mul(poly, one)
        return TestFunction(n, (GaussTerm.make(A, b, c, poly),))

    @staticmethod
    def product(factors: Sequence["TestFunction"]) -> "TestFunction":
        """Tensor product of functions on consecutive blocks of variables."""
        out = None
        for f in factors:
            if out is None:
                out = f
            else:
                out = out.tensor(f)
        return out

    # algebra ----------------------------------------------------------
    def __add__(self, other: "TestFunction") -> "TestFunction":
        self._check(other)
        return TestFunction(self.n, _merge(self.terms + other.terms))

    def __sub__(self, other: "TestFunction") -> "TestFunction":
        return self + other.scale(-1.0)

    def scale(self, a: complex) -> "TestFunction":
        if a == 0:
            return TestFunction.zero(self.n)
        return TestFunction(self.n, tuple(
            GaussTerm.make(t.A, t.b, t.c, poly_scale(t.P, a)) for t in self.terms))

    def conj(self) -> "TestFunction":
        return TestFunction(self.n, tuple(
            GaussTerm.make(t.A, t.b.conj(), np.conj(t.c), {k: np.conj(v) for k, v in t.P.items()})
            for t in self.terms))

    def __mul__(self, other):
        if not isinstance(other, TestFunction):
            return self.scale(other)
        self._check(other)
        terms = []
        for s in self.terms:
            for t in other.terms:
                P = poly_mul(s.P, t.P)
                if P:
                    terms.append(GaussTerm.make(s.A + t.A, s.b + t.b, s.c + t.c, P))
        return TestFunction(self.n, _merge(terms))

    __rmul__ = __mul__

    def tensor(self, other: "TestFunction") -> "TestFunction":
        n1, n2 = self.n, other.n
        terms = []
        for s in self.terms:
            for t in other.terms:
                A = np.zeros((n1 + n2, n1 + n2))
                A[:n1, :n1] = s.A
                A[n1:, n1:] = t.A
                P = {}
                for k1, v1 in s.P.items():
                    for k2, v2 in t.P.items():
                        P[k1 + k2] = P.get(k1 + k2, 0) + v1 * v2
                terms.append(GaussTerm.make(A, np.concatenate([s.b, t.b]), s.c + t.c, P))
        return TestFunction(n1 + n2, tuple(terms))

    def _check(self, other):
        if self.n != other.n:
            raise TestFunctionError(f"dimension mismatch {self.n} vs {other.n}")

    # evaluation -------------------------------------------------------
    def __call__(self, X) -> np.ndarray:
        X = np.asarray(X, float)
        if X.shape[-1] != self.n and not (self.n == 0):
            raise TestFunctionError(f"expected points of dimension {self.n}")
        out = np.zeros(X.shape[:-1], dtype=complex)
        for t in self.terms:
            out = out + t.evaluate(X)
        return out

    def value(self) -> complex:
        """Value of a zero-dimensional function."""
        if self.n != 0:
            raise TestFunctionError("value() needs a function of no variables")
        return complex(sum(np.exp(t.c) * t.P.get((), 0) for t in self.terms))

    @property
    def is_zero(self) -> bool:
        return len(self.terms) == 0

    def max_degree(self) -> int:
        return max((poly_degree(t.P) for t in self.terms), default=0)

    def envelope(self):
        """(centers, max standard deviation) of the Gaussian factors."""
        centers, sig = [], 0.0
        for t in self.terms:
            w = np.linalg.eigvalsh(t.A)
            if np.min(w) <= 0:
                raise TestFunctionError("non-decaying term has no envelope")
            centers.append(np.linalg.solve(t.A, t.b.real) / 2)
            sig = max(sig, 1.0 / np.sqrt(2 * np.min(w)))
        return np.array(centers).reshape(-1, self.n), sig

    # transformations --------------------------------------------------
    def pullback(self, M, shift=None) -> "TestFunction":
        """y -> f(M y + shift), M of shape (n, k)."""
        M = np.asarray(M, float)
        if M.shape[0] != self.n:
            raise TestFunctionError("pullback matrix has wrong row count")
        k = M.shape[1]
        p = np.zeros(self.n) if shift is None else np.asarray(shift, float)
        terms = []
        for t in self.terms:
            A = M.T @ t.A @ M
            b = M.T @ t.b - 2 * M.T @ (t.A @ p)
            c = t.c + t.b @ p - p @ t.A @ p
            P = poly_compose_affine(t.P, M, p)
            if P:
                terms.append(GaussTerm.make(A, b, c, P))
        return TestFunction(k, tuple(terms))

    def shifted(self, a) -> "TestFunction":
        """x -> f(x - a)."""
        return self.pullback(np.eye(self.n), -np.asarray(a, float))

    def derivative(self, k: int, times: int = 1) -> "TestFunction":
        f = self
        for _ in range(times):
            terms = []
            for t in f.terms:
                dq = poly_linear(-2 * t.A[k], t.b[k])
                P = poly_add(poly_mul(dq, t.P), poly_deriv(t.P, k))
                if P:
                    terms.append(GaussTerm.make(t.A, t.b, t.c, P))
            f = TestFunction(f.n, tuple(terms))
        return f

    def times_monomial(self, exps: Sequence[int]) -> "TestFunction":
        mono = {tuple(exps): 1.0 + 0j}
        return TestFunction(self.n, tuple(
            GaussTerm.make(t.A, t.b, t.c, poly_mul(t.P, mono)) for t in self.terms))

    def integrate(self, idx: Sequence[int], k=None) -> "TestFunction":
        """Integrate out variables ``idx`` against exp(i k . y); returns a function of the rest."""
        idx = list(idx)
        rest = [i for i in range(self.n) if i not in idx]
        d = len(idx)
        kv = np.zeros(d) if k is None else np.asarray(k, float)
        terms = []
        for t in self.terms:
            Ayy = t.A[np.ix_(idx, idx)]
            Ayz = t.A[np.ix_(idx, rest)]
            Azz = t.A[np.ix_(rest, rest)]
            evals = np.linalg.eigvalsh(Ayy)
            if np.min(evals) <= 0:
                raise TestFunctionError("integrated block is not positive definite")
            W = np.linalg.inv(Ayy)
            beta0 = t.b[idx] + 1j * kv
            A_new = Azz - Ayz.T @ W @ Ayz
            b_new = t.b[rest] - Ayz.T @ W @ beta0
            c_new = t.c + beta0 @ W @ beta0 / 4 + 0.5 * d * np.log(np.pi) - 0.5 * np.log(np.prod(evals))
            m = len(rest)
            # mean as linear polynomials in the remaining variables
            mu0 = W @ beta0 / 2
            mu1 = -W @ Ayz
            mu = [poly_linear(mu1[i], mu0[i]) for i in range(d)]
            Sig = W / 2
            moments = _moment_table(mu, Sig, m)
            P_new: Poly = {}
            for e, v in t.P.items():
                ey = tuple(e[i] for i in idx)
                ez = tuple(e[i] for i in rest)
                mom = moments(ey)
                P_new = poly_add(P_new, poly_mul(mom, {ez: v}))
            if P_new:
                terms.append(GaussTerm.make(A_new, b_new, c_new, P_new))
        return TestFunction(len(rest), tuple(terms))

    def total_integral(self) -> complex:
        return self.integrate(range(self.n)).value() if self.n else self.value()


def _moment_table(mu, Sig, m):
    """E[y^e] for y ~ N(mu(z), Sig), returned as polynomials in z."""
    d = len(mu)
    memo = {(0,) * d: poly_const(m, 1.0)}

    def get(e):
        if any(x < 0 for x in e):
            return {}
        if e in memo:
            return memo[e]
        i = next(k for k in range(d) if e[k] > 0)
        em = list(e)
        em[i] -= 1
        em = tuple(em)
        out = poly_mul(mu[i], get(em))
        for j in range(d):
            if em[j] > 0 and Sig[i, j] != 0:
                e2 = list(em)
                e2[j] -= 1
                out = poly_add(out, get(tuple(e2)), 1.0, Sig[i, j] * em[j])
        memo[e] = out
        return out

    return get


# ---------------------------------------------------------------- norms


def schwartz_norm(f: TestFunction, r: int, s: int, grid: int = 41, refine: int = 3) -> float:
    """sum over |k| <= r, |l| <= s of sup |x^k D^l f|, sup taken on a refined grid.

    The grid covers +-8 envelope widths around the Gaussian centers and the
    origin; the best ``refine + 1`` grid points are polished locally.
    """
    if r < 0 or s < 0:
        raise TestFunctionError("r and s must be non-negative")
    if f.is_zero:
        return 0.0
    n = f.n
    centers, sig = f.envelope()
    lo = np.minimum(centers.min(axis=0), 0) - 8 * sig - 2 * np.sqrt(r + 1) * sig
    hi = np.maximum(centers.max(axis=0), 0) + 8 * sig + 2 * np.sqrt(r + 1) * sig
    total = 0.0
    multi = lambda order: [e for e in iproduct(range(order + 1), repeat=n) if sum(e) <= order]
    for l in multi(s):
        g = f
        for k_axis, times in enumerate(l):
            if times:
                g = g.derivative(k_axis, times)
        for k in multi(r):
            h = g.times_monomial(k)
            total += _grid_sup(h, lo, hi, grid, refine, seeds=centers)
    return float(total)


def _grid_sup(h: TestFunction, lo, hi, grid, refine, seeds=()):
    """Grid search plus Nelder-Mead polishing from the best few points."""
    from scipy.optimize import minimize

    n = h.n
    per_axis = max(5, int(round(grid ** (2.0 / n)))) if n > 2 else grid
    axes = [np.linspace(lo[i], hi[i], per_axis) for i in range(n)]
    mesh = np.stack(np.meshgrid(*axes, indexing="ij"), axis=-1).reshape(-1, n)
    if len(seeds):
        mesh = np.vstack([mesh, np.asarray(seeds, float).reshape(-1, n)])
    vals = np.abs(h(mesh))
    order = np.argsort(-vals, kind="stable")[: max(1, refine + 1)]
    best = float(vals[order[0]])
    for j in order:
        res = minimize(lambda x: -float(np.abs(h(x[None, :]))[0]), mesh[j], method="Nelder-Mead",
                       options={"xatol": 1e-10, "fatol": 1e-15, "maxiter": 4000})
        best = max(best, -float(res.fun))
    return best
