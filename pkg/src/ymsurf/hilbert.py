"""Surface states, their inner product and the unitary Poincare action.

A state is a vacuum amplitude plus a list of pieces.  A piece is a space-like
rectangle with a Minkowski frame and N coefficient functions, one per
orthonormal Lie basis element, written in the chart

    y_i = (p - origin) . f_i,   i = 2, 3   (Minkowski dot),

so the complexified area density is 1 in chart coordinates.  The action of
``U(a, Lambda)`` moves the surface and the frame but leaves chart functions
untouched, multiplying them by a phase.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np
from shapely.geometry import Polygon

from .config import DEFAULT
from .geometry import (ETA, GeometryError, MinkowskiFrame, RectSurface, classify_surface,
                       minkowski_dot, minkowski_frame, sl2c_to_lorentz, vec)
from .liealg import Irrep
from .testfn import GaussTerm, TestFunction


class StateError(ValueError):
    """Raised for inconsistent states."""


@dataclass(frozen=True)
class Piece:
    surface: RectSurface
    frame: MinkowskiFrame
    coeffs: tuple  # N TestFunctions of two chart variables

    def __post_init__(self):
        if classify_surface(self.surface) != "spacelike":
            raise StateError("state pieces must lie on space-like surfaces")
        L = self.frame.L
        for w in (self.surface.u, self.surface.v):
            nrm = np.linalg.norm(w)
            if abs(minkowski_dot(w, L[:, 0])) > 1e-9 * nrm or abs(minkowski_dot(w, L[:, 1])) > 1e-9 * nrm:
                raise StateError("surface is not spanned by f_2, f_3 of its frame")
        if any(c.n != 2 for c in self.coeffs):
            raise StateError("coefficients must be functions of two chart variables")

    @property
    def N(self) -> int:
        return len(self.coeffs)

    def chart_corners(self, origin=None, frame=None) -> np.ndarray:
        o = self.surface.origin if origin is None else origin
        fr = self.frame if frame is None else frame
        pts = self.surface.corners() - o
        return np.stack([[minkowski_dot(p, fr.f(2)), minkowski_dot(p, fr.f(3))] for p in pts])

    def to_chart(self, x) -> np.ndarray:
        d = vec(x) - self.surface.origin
        return np.array([minkowski_dot(d, self.frame.f(2)), minkowski_dot(d, self.frame.f(3))])

    def from_chart(self, y) -> np.ndarray:
        y = np.asarray(y, float)
        return self.surface.origin + y[..., 0:1] * self.frame.f(2) + y[..., 1:2] * self.frame.f(3)

    def scaled(self, a: complex) -> "Piece":
        return Piece(self.surface, self.frame, tuple(c.scale(a) for c in self.coeffs))

    def is_zero(self) -> bool:
        return all(c.is_zero for c in self.coeffs)


def make_piece(surface: RectSurface, coeffs: Sequence[TestFunction], frame=None) -> Piece:
    fr = frame if frame is not None else minkowski_frame(surface)
    return Piece(surface, fr, tuple(coeffs))


@dataclass(frozen=True)
class SurfaceState:
    """Vacuum amplitude plus pieces, all in one irrep sector ``n``."""

    pieces: tuple = ()
    vacuum: complex = 0.0
    n: int | None = None

    @staticmethod
    def vacuum_state(amp: complex = 1.0) -> "SurfaceState":
        return SurfaceState((), complex(amp), None)

    def scaled(self, a: complex) -> "SurfaceState":
        return SurfaceState(tuple(p.scaled(a) for p in self.pieces), a * self.vacuum, self.n)

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "vacuum": [float(np.real(self.vacuum)), float(np.imag(self.vacuum))],
            "pieces": [{
                "surface": p.surface.to_dict(),
                "frame": p.frame.L.T.tolist(),
                "coeffs": {str(a): _terms_to_list(c) for a, c in enumerate(p.coeffs)},
            } for p in self.pieces],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


def _terms_to_list(f: TestFunction) -> list:
    out = []
    for t in f.terms:
        out.append({"A": t.A.tolist(), "b": [[z.real, z.imag] for z in t.b],
                    "c": [t.c.real, t.c.imag],
                    "poly": [[list(k), [v.real, v.imag]] for k, v in t.poly]})
    return out


def terms_from_list(n: int, data: list) -> TestFunction:
    terms = []
    for d in data:
        terms.append(GaussTerm.make(np.asarray(d["A"]), np.array([complex(*z) for z in d["b"]]),
                                    complex(*d["c"]), {tuple(k): complex(*v) for k, v in d["poly"]}))
    return TestFunction(n, tuple(terms))


# ---------------------------------------------------------------- addition


def _same_surface(p: Piece, q: Piece, tol: float) -> bool:
    a, b = p.surface.corners(), q.surface.corners()
    return bool(np.max(np.abs(a - b)) <= tol * max(1.0, np.max(np.abs(a))))


def add_states(a: SurfaceState, lam: complex, b: SurfaceState, mu: complex,
               tol: float = DEFAULT.frame, strict: bool = True) -> SurfaceState:
    """lam a + mu b.

    Pieces on the same rectangle with the same frame are merged; other pieces
    are kept side by side, which is the zero-extension rule written piecewise.
    With ``strict`` overlapping pieces with different frames are rejected;
    otherwise they are kept as separate, mutually orthogonal components.
    """
    if a.n is not None and b.n is not None and a.n != b.n:
        raise StateError("cannot add states from different irrep sectors")
    out = [p.scaled(lam) for p in a.pieces]
    for q in b.pieces:
        q = q.scaled(mu)
        for i, p in enumerate(out):
            if _same_surface(p, q, tol) and (strict or p.frame.equals(q.frame, tol)):
                if not p.frame.equals(q.frame, tol):
                    raise StateError("overlapping surfaces carry different frames")
                shift = _chart_shift(p, q)
                merged = tuple(c1 + c2.shifted(shift) if not c2.is_zero else c1
                               for c1, c2 in zip(p.coeffs, q.coeffs))
                out[i] = Piece(p.surface, p.frame, merged)
                break
            if strict and not p.frame.equals(q.frame, tol) and overlap_area(p, q) > 0:
                raise StateError("overlapping surfaces carry different frames")
        else:
            out.append(q)
    n = a.n if a.n is not None else b.n
    return SurfaceState(tuple(out), lam * a.vacuum + mu * b.vacuum, n)


def _chart_shift(p: Piece, q: Piece) -> np.ndarray:
    """Offset d with y_p = y_q + d for the same spacetime point."""
    d = q.surface.origin - p.surface.origin
    return np.array([minkowski_dot(d, p.frame.f(2)), minkowski_dot(d, p.frame.f(3))])


# ---------------------------------------------------------------- intersection


def _coplanar(p: Piece, q: Piece, tol: float) -> bool:
    d = q.surface.origin - p.surface.origin
    scale = max(1.0, np.linalg.norm(d))
    return all(abs(minkowski_dot(d, p.frame.f(a))) <= tol * scale for a in (0, 1))


def surface_intersection(S: RectSurface, T: RectSurface, tol: float = DEFAULT.coplanar):
    """Overlap of two rectangles as a polygon in the chart of S, or None.

    Non-coplanar rectangles and overlaps of zero area (a shared edge, a line
    of intersection) give None.
    """
    fs = S.frame if S.frame is not None else minkowski_frame(S)
    ft = T.frame if T.frame is not None else minkowski_frame(T)
    poly = overlap_polygon(Piece(S, fs, ()), Piece(T, ft, ()), tol)
    if poly is None:
        return None
    return {"vertices": poly, "origin": S.origin, "frame": fs, "area": float(Polygon(poly).area)}


def overlap_polygon(p: Piece, q: Piece, tol: float = DEFAULT.coplanar):
    if not _coplanar(p, q, tol):
        return None
    P = Polygon(p.chart_corners())
    Q = Polygon(q.chart_corners(origin=p.surface.origin, frame=p.frame))
    inter = P.intersection(Q)
    if inter.is_empty or inter.area <= 0 or inter.geom_type != "Polygon":
        return None
    return np.asarray(inter.exterior.coords)[:-1]


def overlap_area(p: Piece, q: Piece) -> float:
    poly = overlap_polygon(p, q)
    return 0.0 if poly is None else float(Polygon(poly).area)


# ---------------------------------------------------------------- quadrature


_GL = {}


def _gl(order):
    if order not in _GL:
        x, w = np.polynomial.legendre.leggauss(order)
        _GL[order] = (0.5 * (x + 1), 0.5 * w)
    return _GL[order]


def _tri_nodes(tri, order):
    """Collapsed-square Gauss rule on a triangle: nodes (m, 2), weights (m,)."""
    x, w = _gl(order)
    U, V = np.meshgrid(x, x, indexing="ij")
    WU, WV = np.meshgrid(w, w, indexing="ij")
    p0, p1, p2 = tri
    pts = p0 + U.ravel()[:, None] * (p1 - p0) + (U * V).ravel()[:, None] * (p2 - p1)
    area2 = abs((p1[0] - p0[0]) * (p2[1] - p0[1]) - (p1[1] - p0[1]) * (p2[0] - p0[0]))
    wts = (WU * WV * U).ravel() * area2
    return pts, wts


def _split(tri):
    p0, p1, p2 = tri
    a, b, c = (p0 + p1) / 2, (p1 + p2) / 2, (p2 + p0) / 2
    return [np.stack(t) for t in ((p0, a, c), (a, p1, b), (c, b, p2), (a, b, c))]


def integrate_polygon(fn, vertices, order: int = 16, abs_tol: float = 1e-15,
                      max_level: int = 9) -> complex:
    """Adaptive triangle quadrature of a vectorized integrand over a convex polygon."""
    V = np.asarray(vertices, float)
    tris = [np.stack([V[0], V[i], V[i + 1]]) for i in range(1, len(V) - 1)]

    def rule(t):
        pts, wts = _tri_nodes(t, order)
        return complex(np.sum(fn(pts) * wts))

    total = 0.0 + 0.0j
    stack = [(t, rule(t), 0) for t in tris]
    while stack:
        t, coarse, lvl = stack.pop()
        kids = _split(t)
        vals = [rule(k) for k in kids]
        fine = sum(vals)
        if abs(fine - coarse) <= abs_tol * max(1.0, abs(fine)) or lvl >= max_level:
            total += fine
        else:
            stack.extend((k, v, lvl + 1) for k, v in zip(kids, vals))
    return total


# ---------------------------------------------------------------- inner product


def pairing_matrix(irrep: Irrep, N: int) -> np.ndarray:
    """Tr[-rho(E^a) rho(E^b)]."""
    if irrep.matrices is None:
        return irrep.rep_constant * np.eye(N)
    R = irrep.matrices
    return -np.real(np.einsum("aij,bji->ab", R, R))


def piece_inner(p: Piece, q: Piece, G: np.ndarray, tol: float = DEFAULT.frame) -> complex:
    if not p.frame.equals(q.frame, tol):
        return 0.0
    poly = overlap_polygon(p, q)
    if poly is None:
        return 0.0
    shift = _chart_shift(p, q)
    pairs = [(a, b, G[a, b]) for a in range(p.N) for b in range(q.N)
             if G[a, b] != 0 and not p.coeffs[a].is_zero and not q.coeffs[b].is_zero]
    if not pairs:
        return 0.0

    def fn(Y):
        out = np.zeros(len(Y), dtype=complex)
        fa = {a: p.coeffs[a](Y) for a in {a for a, _, _ in pairs}}
        gb = {b: q.coeffs[b](Y - shift) for b in {b for _, b, _ in pairs}}
        for a, b, g in pairs:
            out += g * fa[a] * np.conj(gb[b])
        return out

    return integrate_polygon(fn, poly)


def inner_product(a: SurfaceState, b: SurfaceState, irrep: Irrep) -> complex:
    """<a, b>, linear in a and conjugate-linear in b."""
    if a.n is not None and b.n is not None and a.n != b.n:
        return a.vacuum * np.conj(b.vacuum)
    total = a.vacuum * np.conj(b.vacuum)
    if a.pieces and b.pieces:
        N = a.pieces[0].N
        G = pairing_matrix(irrep, N)
        for p in a.pieces:
            for q in b.pieces:
                total += piece_inner(p, q, G)
    return complex(total)


def norm(a: SurfaceState, irrep: Irrep) -> float:
    return float(np.sqrt(max(inner_product(a, a, irrep).real, 0.0)))


def state_distance(a: SurfaceState, b: SurfaceState, irrep: Irrep) -> float:
    return norm(add_states(a, 1.0, b, -1.0, strict=False), irrep)


# ---------------------------------------------------------------- unitary action


def _as_lorentz(lam) -> np.ndarray:
    lam = np.asarray(lam)
    if lam.shape == (2, 2):
        return sl2c_to_lorentz(lam)
    if lam.shape == (4, 4):
        return np.asarray(lam, float)
    raise GeometryError("transform must be an SL(2,C) matrix or a 4x4 Lorentz matrix")


def unitary_action(a, lam, s: SurfaceState, H: float, P: float) -> SurfaceState:
    """U(a, Lambda): move every piece to Lambda S + a and attach the plane-wave phase."""
    a = vec(a)
    L = _as_lorentz(lam)
    pieces = []
    for p in s.pieces:
        fr = p.frame.transformed(L, a)
        surf = p.surface.transformed(L, a).with_frame(fr)
        if classify_surface(surf) != "spacelike":
            raise StateError("transformed surface is not space-like")
        w = H * fr.f(0) + P * fr.f(1)
        phase = np.exp(-1j * minkowski_dot(a, w))
        pieces.append(Piece(surf, fr, tuple(c.scale(phase) for c in p.coeffs)))
    return SurfaceState(tuple(pieces), s.vacuum, s.n)
