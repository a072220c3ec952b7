"""Truncated Segal-Bargmann sector and the Yang-Mills curvature.

Polynomials in z = (z_0..z_3) carry the Gaussian inner product for which
z^p / sqrt(p!) is orthonormal.  On R^4 the matching orthonormal functions are

    e_p(x) = He_p(kappa x) / sqrt(p!) * sqrt(phi_kappa(x)),
    phi_kappa = centered normal density with variance 1 / kappa^2,

per axis (He = probabilists' Hermite), and the Segal-Bargmann map sends
e_p to z^p / sqrt(p!).  Differentiation becomes kappa * d_a with
d_a z^p = (p/2) z^{p-1} - z^{p+1}/2.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from math import factorial, sqrt
from typing import Mapping

import numpy as np
from numpy.polynomial import hermite_e as He

from .liealg import StructureTensor
from .testfn import GaussTerm, TestFunction, poly_add, poly_linear, poly_mul, poly_pow

DEGREE_CAP = 8
SPATIAL = (1, 2, 3)
TIME_PAIRS = tuple((0, j) for j in SPATIAL)
SPACE_PAIRS = tuple(combinations(SPATIAL, 2))
PAIRS = TIME_PAIRS + SPACE_PAIRS


class BargmannError(ValueError):
    """Raised on degree-cap overflow or malformed forms."""


def _mfact(p) -> float:
    out = 1.0
    for k in p:
        out *= factorial(k)
    return out


@dataclass(frozen=True)
class PolyFock:
    """Polynomial in four complex variables with a per-axis degree cap."""

    coeffs: Mapping = field(default_factory=dict)  # (p0, p1, p2, p3) -> complex
    cap: int = DEGREE_CAP

    def __post_init__(self):
        clean = {}
        for k, v in self.coeffs.items():
            k = tuple(int(x) for x in k)
            if len(k) != 4:
                raise BargmannError("multi-indices have four entries")
            if max(k) > self.cap:
                raise BargmannError(f"degree {max(k)} exceeds cap {self.cap}")
            if v != 0:
                clean[k] = clean.get(k, 0) + complex(v)
        object.__setattr__(self, "coeffs", clean)

    @staticmethod
    def monomial(p, coeff: complex = 1.0, cap: int = DEGREE_CAP) -> "PolyFock":
        return PolyFock({tuple(p): coeff}, cap)

    @staticmethod
    def zero(cap: int = DEGREE_CAP) -> "PolyFock":
        return PolyFock({}, cap)

    def __add__(self, other: "PolyFock") -> "PolyFock":
        d = dict(self.coeffs)
        for k, v in other.coeffs.items():
            d[k] = d.get(k, 0) + v
        return PolyFock(d, max(self.cap, other.cap))

    def __sub__(self, other: "PolyFock") -> "PolyFock":
        return self + other.scale(-1.0)

    def scale(self, a: complex) -> "PolyFock":
        return PolyFock({k: a * v for k, v in self.coeffs.items()}, self.cap)

    def __mul__(self, other):
        if not isinstance(other, PolyFock):
            return self.scale(other)
        d = {}
        cap = max(self.cap, other.cap)
        for k1, v1 in self.coeffs.items():
            for k2, v2 in other.coeffs.items():
                k = tuple(a + b for a, b in zip(k1, k2))
                if max(k) > cap:
                    raise BargmannError(f"product degree {max(k)} exceeds cap {cap}")
                d[k] = d.get(k, 0) + v1 * v2
        return PolyFock(d, cap)

    __rmul__ = __mul__

    @property
    def degree(self) -> int:
        return max((max(k) for k in self.coeffs), default=0)

    def is_zero(self, tol: float = 0.0) -> bool:
        return all(abs(v) <= tol for v in self.coeffs.values())

    def __call__(self, z) -> np.ndarray:
        z = np.atleast_2d(np.asarray(z, complex))
        out = np.zeros(len(z), complex)
        for k, v in self.coeffs.items():
            out += v * np.prod(z ** np.array(k), axis=1)
        return out


def h2_inner(p: PolyFock, q: PolyFock) -> float:
    """Real Gaussian inner product: <z^r, z^r'> = r! delta per axis."""
    s = 0.0
    for k, v in p.coeffs.items():
        w = q.coeffs.get(k)
        if w is not None:
            s += (v * np.conj(w)).real * _mfact(k)
    return float(s)


def frak_d(a: int, p: PolyFock) -> PolyFock:
    """d_a z_a^p = (p/2) z_a^{p-1} - z_a^{p+1} / 2, other axes untouched."""
    if a not in range(4):
        raise BargmannError("axis must be 0..3")
    d = {}
    for k, v in p.coeffs.items():
        e = k[a]
        if e + 1 > p.cap:
            raise BargmannError(f"d_{a} would raise degree past cap {p.cap}")
        up = list(k)
        up[a] += 1
        d[tuple(up)] = d.get(tuple(up), 0) - 0.5 * v
        if e > 0:
            dn = list(k)
            dn[a] -= 1
            d[tuple(dn)] = d.get(tuple(dn), 0) + 0.5 * e * v
    return PolyFock(d, p.cap)


def frak_d_matrix(cap: int = DEGREE_CAP) -> np.ndarray:
    """One-axis matrix of d from span(1..z^cap) into span(1..z^(cap+1)), column = input."""
    M = np.zeros((cap + 2, cap + 1))
    for p in range(cap + 1):
        M[p + 1, p] = -0.5
        if p > 0:
            M[p - 1, p] = 0.5 * p
    return M


def segal_bargmann(index, cap: int = DEGREE_CAP) -> PolyFock:
    """Image of the orthonormal Hermite function with multi-index ``index``."""
    return PolyFock.monomial(index, 1.0 / sqrt(_mfact(index)), cap)


def segal_bargmann_field(coeffs: Mapping, cap: int = DEGREE_CAP) -> PolyFock:
    """Image of sum_I c_I e_I."""
    out = {}
    for idx, c in coeffs.items():
        out[tuple(idx)] = out.get(tuple(idx), 0) + c / sqrt(_mfact(idx))
    return PolyFock(out, cap)


# ---------------------------------------------------------------- x-space Hermite functions


def hermite_function(index, kappa: float) -> TestFunction:
    """e_I(x) = prod_a He_{I_a}(kappa x_a)/sqrt(I_a!) sqrt(phi_kappa(x_a)) as a TestFunction."""
    n = 4
    amp = (kappa / sqrt(2 * np.pi)) ** (n / 2)
    poly = {(0,) * n: complex(amp / sqrt(_mfact(index)))}
    for a, k in enumerate(index):
        coef = He.herme2poly([0] * k + [1])
        base = poly_linear([kappa if j == a else 0.0 for j in range(n)])
        one = {}
        for d, c in enumerate(coef):
            if c != 0:
                one = poly_add(one, poly_pow(base, d, n), 1.0, c)
        poly = poly_mul(poly, one)
    A = np.eye(n) * kappa ** 2 / 4
    return TestFunction(n, (GaussTerm.make(A, np.zeros(n), 0.0, poly),))


def hermite_field(coeffs: Mapping, kappa: float) -> TestFunction:
    out = TestFunction.zero(4)
    for idx, c in coeffs.items():
        if c != 0:
            out = out + hermite_function(idx, kappa).scale(c)
    return out


# ---------------------------------------------------------------- forms


@dataclass(frozen=True)
class GaugeOneForm:
    """Components a[(i, alpha)], i in 1..3, each a TestFunction (x mode) or PolyFock (fock mode)."""

    components: Mapping
    N: int

    def __post_init__(self):
        for (i, al) in self.components:
            if i not in SPATIAL or not 0 <= al < self.N:
                raise BargmannError(f"bad one-form index {(i, al)}")

    def get(self, i, al, zero):
        return self.components.get((i, al), zero)


@dataclass(frozen=True)
class GaugeTwoForm:
    """Components F[((a, b), gamma)] with 0 <= a < b <= 3."""

    components: Mapping
    N: int

    def __post_init__(self):
        for (pair, g) in self.components:
            if pair not in PAIRS or not 0 <= g < self.N:
                raise BargmannError(f"bad two-form index {(pair, g)}")

    def block(self, pair, g):
        return self.components[(pair, g)]


def _ops(mode: str, kappa: float):
    if mode == "symbolic-x":
        zero = TestFunction.zero(4)
        return zero, (lambda a, f: f.derivative(a)), (lambda f, g: f * g)
    if mode == "fock":
        zero = PolyFock.zero()
        return zero, (lambda a, f: frak_d(a, f).scale(kappa)), (lambda f, g: f * g)
    raise BargmannError(f"unknown mode {mode}")


def curvature_blocks(A: GaugeOneForm, st: StructureTensor, mode: str = "symbolic-x",
                     kappa: float = 1.0) -> dict:
    """Separate time, curl and quadratic blocks of dA + A^A, keyed (kind, pair, gamma)."""
    zero, D, mul = _ops(mode, kappa)
    N = A.N
    c = st.c
    out = {}
    for g in range(N):
        for j in SPATIAL:
            out[("time", (0, j), g)] = D(0, A.get(j, g, zero))
        for i, j in SPACE_PAIRS:
            out[("curl", (i, j), g)] = D(j, A.get(i, g, zero)) - D(i, A.get(j, g, zero))
            q = zero
            for al in range(N):
                ai = A.get(i, al, zero)
                if _is_zero(ai):
                    continue
                for be in range(N):
                    if c[g, al, be] != 0:
                        aj = A.get(j, be, zero)
                        if not _is_zero(aj):
                            q = q + mul(ai, aj).scale(c[g, al, be])
            out[("quad", (i, j), g)] = q
    return out


def _is_zero(f) -> bool:
    return f.is_zero if isinstance(f, TestFunction) else f.is_zero()


def curvature(A: GaugeOneForm, st: StructureTensor, mode: str = "symbolic-x",
              kappa: float = 1.0) -> GaugeTwoForm:
    """dA + A^A: time block on (0, j), curl plus quadratic block on (i, j)."""
    blocks = curvature_blocks(A, st, mode, kappa)
    comps = {}
    for g in range(A.N):
        for pair in TIME_PAIRS:
            comps[(pair, g)] = blocks[("time", pair, g)]
        for pair in SPACE_PAIRS:
            comps[(pair, g)] = blocks[("curl", pair, g)] + blocks[("quad", pair, g)]
    return GaugeTwoForm(comps, A.N)


def _sq_integral(f) -> float:
    if isinstance(f, TestFunction):
        if f.is_zero:
            return 0.0
        return float((f * f.conj()).total_integral().real)
    return h2_inner(f, f)


def two_form_norm2(F: GaugeTwoForm) -> float:
    return float(sum(_sq_integral(v) for v in F.components.values()))


def ym_action(A: GaugeOneForm, st: StructureTensor, kappa: float = 1.0, mode: str = "symbolic-x") -> float:
    """int |dA + A^A|^2, Gaussian-exact in both modes."""
    return two_form_norm2(curvature(A, st, mode, kappa))


def _pair_integral(f, g) -> float:
    if isinstance(f, TestFunction):
        if f.is_zero or g.is_zero:
            return 0.0
        return float((f * g.conj()).total_integral().real)
    return h2_inner(f, g)


def ym_action_expanded(A: GaugeOneForm, st: StructureTensor, kappa: float = 1.0,
                       mode: str = "symbolic-x") -> dict:
    """The action split into curl, time, quartic and cubic interaction sums."""
    blocks = curvature_blocks(A, st, mode, kappa)
    N = A.N
    curl = sum(_pair_integral(blocks[("curl", p, g)], blocks[("curl", p, g)])
               for p in SPACE_PAIRS for g in range(N))
    time = sum(_pair_integral(blocks[("time", p, g)], blocks[("time", p, g)])
               for p in TIME_PAIRS for g in range(N))
    quartic = sum(_pair_integral(blocks[("quad", p, g)], blocks[("quad", p, g)])
                  for p in SPACE_PAIRS for g in range(N))
    cubic = sum(2 * _pair_integral(blocks[("curl", p, g)], blocks[("quad", p, g)])
                for p in SPACE_PAIRS for g in range(N))
    return {"curl": curl, "time": time, "quartic": quartic, "cubic": cubic,
            "total": curl + time + quartic + cubic}


def d_fock(A: GaugeOneForm, kappa: float = 1.0) -> GaugeTwoForm:
    """kappa d on a Fock-mode one-form (no quadratic block)."""
    zero = PolyFock.zero()
    comps = {}
    for g in range(A.N):
        for j in SPATIAL:
            comps[((0, j), g)] = frak_d(0, A.get(j, g, zero)).scale(kappa)
        for i, j in SPACE_PAIRS:
            comps[((i, j), g)] = (frak_d(i, A.get(j, g, zero)) - frak_d(j, A.get(i, g, zero))).scale(kappa)
    return GaugeTwoForm(comps, A.N)


def d_x(A: GaugeOneForm) -> GaugeTwoForm:
    """dA in x space: d_0 a_j on (0, j) and d_i a_j - d_j a_i on (i, j)."""
    zero = TestFunction.zero(4)
    comps = {}
    for g in range(A.N):
        for j in SPATIAL:
            comps[((0, j), g)] = A.get(j, g, zero).derivative(0)
        for i, j in SPACE_PAIRS:
            comps[((i, j), g)] = A.get(j, g, zero).derivative(i) - A.get(i, g, zero).derivative(j)
    return GaugeTwoForm(comps, A.N)


def to_fock(coeffs: Mapping, N: int, cap: int = DEGREE_CAP) -> GaugeOneForm:
    """Hermite-coefficient one-form {(i, alpha): {I: c}} -> Fock-mode one-form."""
    return GaugeOneForm({k: segal_bargmann_field(v, cap) for k, v in coeffs.items()}, N)


def to_x(coeffs: Mapping, N: int, kappa: float) -> GaugeOneForm:
    return GaugeOneForm({k: hermite_field(v, kappa) for k, v in coeffs.items()}, N)
