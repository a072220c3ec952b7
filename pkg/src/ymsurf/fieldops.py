"""Partial Fourier transform over time-like planes and the field operators.

The creation operator multiplies the coefficients of a state by the partial
Fourier transform of a test function over the time-like plane of the piece's
frame and acts fiberwise by ``ad(F^gamma)``; on the vacuum it produces a
window of the plane S_0.  The annihilation operator is its adjoint.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .geometry import (IDENTITY_FRAME, MinkowskiFrame, RectSurface, lorentz_to_sl2c,
                       minkowski_dot, spinor_dim, spinor_rep, vec)
from .hilbert import (Piece, SurfaceState, StateError, add_states, inner_product, norm)
from .liealg import Irrep, LieError, algebra_basis, gell_mann, trace_form
from .testfn import TestFunction

TWO_PI = 2 * np.pi


class FieldError(ValueError):
    """Raised for invalid field operator input."""


# ---------------------------------------------------------------- partial Fourier


def pft_chart(f: TestFunction, frame: MinkowskiFrame, H: float, P: float, origin=None) -> TestFunction:
    """Chart function y -> f^{f0,f1}(H, P)(origin + y2 f2 + y3 f3).

    f^{f0,f1}(x) = (1/2pi) int exp(-i y(s).(H f0 + P f1)) f(x + s f0 + t f1) ds dt,
    where y(s).(H f0 + P f1) = -s H + t P.
    """
    if f.n != 4:
        raise FieldError("test functions live on R^4")
    o = np.zeros(4) if origin is None else vec(origin)
    g = f.pullback(frame.L, o)
    return g.integrate([0, 1], k=(H, -P)).scale(1 / TWO_PI)


def partial_fourier(f: TestFunction, frame: MinkowskiFrame, H: float, P: float, x) -> complex:
    """Point value of the partial Fourier transform at the spacetime point x."""
    return complex(pft_chart(f, frame, H, P, x)(np.zeros((1, 2)))[0])


def partial_fourier_quad(f: TestFunction, frame: MinkowskiFrame, H: float, P: float, x,
                         order: int = 96) -> complex:
    """Same quantity by brute-force Gauss-Legendre quadrature over a box in (s, t)."""
    x = vec(x)
    g = f.pullback(frame.L[:, :2], x)
    centers, sig = g.envelope()
    half = 10 * sig
    lo = centers.min(axis=0) - half
    hi = centers.max(axis=0) + half
    xs, ws = np.polynomial.legendre.leggauss(order)
    s = 0.5 * (hi[0] - lo[0]) * (xs + 1) + lo[0]
    t = 0.5 * (hi[1] - lo[1]) * (xs + 1) + lo[1]
    W = np.outer(ws, ws) * 0.25 * (hi[0] - lo[0]) * (hi[1] - lo[1])
    S, T = np.meshgrid(s, t, indexing="ij")
    pts = np.stack([S.ravel(), T.ravel()], axis=1)
    vals = g(pts) * np.exp(1j * (H * pts[:, 0] - P * pts[:, 1]))
    return complex(np.sum(vals * W.ravel()) / TWO_PI)


def gaussian_lift(f2: TestFunction, H: float, P: float, width: float = 1.0) -> TestFunction:
    """F(x) = p(x0)/c p(x1)/d f2(x2, x3) whose transform on S_0 is exactly f2.

    p is the centered normal density of the given width; c and d are its
    Fourier values at H and P divided by sqrt(2 pi).
    """
    if f2.n != 2:
        raise FieldError("lift expects a function of two variables")
    norm_ = 1.0 / (np.sqrt(TWO_PI) * width)
    c = np.exp(-0.5 * (H * width) ** 2) / np.sqrt(TWO_PI)
    d = np.exp(-0.5 * (P * width) ** 2) / np.sqrt(TWO_PI)
    p0 = TestFunction.gaussian([0.0], [width], norm_ / c)
    p1 = TestFunction.gaussian([0.0], [width], norm_ / d)
    return TestFunction.product([p0, p1, f2])


# ---------------------------------------------------------------- context


def generating_set(algebra: str) -> np.ndarray:
    """Default generating set: lambda_4, lambda_5, lambda_7 for su3, all of i sigma_a/sqrt 2 for su2."""
    if algebra == "su3":
        gm = gell_mann().stack()
        return gm[[3, 4, 6]]
    if algebra == "su2":
        return algebra_basis("su2").stack()
    raise LieError(f"no generating set for {algebra}")


def default_spinor(size: int) -> tuple:
    if size == 3:
        return (1, 0)
    if size == 4:
        return (0.5, 0.5)
    raise FieldError(f"no default spinor representation of dimension {size}")


@dataclass(frozen=True)
class FieldContext:
    """Everything a field operator of one irrep sector needs."""

    irrep: Irrep
    n: int
    H: float
    P: float
    F: np.ndarray                 # generating set, shape (Nu, d, d)
    spinor: tuple = (1, 0)
    basis: np.ndarray = field(default=None, repr=False)
    K: np.ndarray = field(default=None, repr=False)    # K[g, d, b] = tf(E^d, [F^g, E^b])
    Fc: np.ndarray = field(default=None, repr=False)   # Fc[g, d] = tf(E^d, F^g)

    @property
    def Nu(self) -> int:
        return len(self.F)

    @property
    def N(self) -> int:
        return len(self.basis)

    def A(self, frame: MinkowskiFrame) -> np.ndarray:
        return spinor_rep(*self.spinor)(lorentz_to_sl2c(frame.L))

    def C(self) -> float:
        return self.irrep.rep_constant


def field_context(irrep: Irrep, H: float, P: float, n: int = 1, generating=None,
                  spinor=None) -> FieldContext:
    E = algebra_basis(irrep.algebra).stack()
    F = generating_set(irrep.algebra) if generating is None else np.asarray(generating, complex)
    sp = default_spinor(len(F)) if spinor is None else tuple(spinor)
    if spinor_dim(*sp) != len(F):
        raise FieldError("spinor representation dimension must equal the generating set size")
    N = len(E)
    K = np.zeros((len(F), N, N))
    for g in range(len(F)):
        for b in range(N):
            br = F[g] @ E[b] - E[b] @ F[g]
            for d in range(N):
                K[g, d, b] = trace_form(E[d], br)
    Fc = np.array([[trace_form(E[d], F[g]) for d in range(N)] for g in range(len(F))])
    return FieldContext(irrep, n, float(H), float(P), F, sp, E, K, Fc)


@dataclass(frozen=True)
class FieldOperator:
    alpha: int
    n: int
    f: TestFunction
    kind: str = "creation"  # or "annihilation"

    def __post_init__(self):
        if self.kind not in ("creation", "annihilation"):
            raise FieldError("kind must be creation or annihilation")

    def adjoint(self) -> "FieldOperator":
        return FieldOperator(self.alpha, self.n, self.f,
                             "annihilation" if self.kind == "creation" else "creation")


# ---------------------------------------------------------------- vacuum


def vacuum_window(ctx: FieldContext, fs: Sequence[TestFunction], widths: float = 8.0) -> float:
    """Half side of the S_0 window holding the transforms of all ``fs``."""
    L = 0.0
    for f in fs:
        h = pft_chart(f, IDENTITY_FRAME, ctx.H, ctx.P)
        if h.is_zero:
            continue
        centers, sig = h.envelope()
        L = max(L, float(np.max(np.abs(centers))) + widths * sig)
    return max(L, 1.0)


def _window_surface(L: float) -> RectSurface:
    o = np.array([0.0, 0.0, -L, -L])
    return RectSurface(o, np.eye(4)[2], np.eye(4)[3], (2 * L, 2 * L), IDENTITY_FRAME)


def create_on_vacuum(ctx: FieldContext, alpha: int, f: TestFunction, window: float | None = None) -> SurfaceState:
    """phi^{alpha,n}(f) 1: the transform of f on an S_0 window tensored with rho(F^alpha)."""
    _check_alpha(ctx, alpha)
    h = pft_chart(f, IDENTITY_FRAME, ctx.H, ctx.P)
    if h.is_zero:
        return SurfaceState((), 0.0, ctx.n)
    L = vacuum_window(ctx, [f]) if window is None else float(window)
    S = _window_surface(L)
    # chart origin sits at the lower corner of the window
    hc = h.shifted([L, L])
    coeffs = tuple(hc.scale(ctx.Fc[alpha, d]) if ctx.Fc[alpha, d] != 0 else TestFunction.zero(2)
                   for d in range(ctx.N))
    return SurfaceState((Piece(S, IDENTITY_FRAME, coeffs),), 0.0, ctx.n)


def _check_alpha(ctx: FieldContext, alpha: int):
    if not 0 <= alpha < ctx.Nu:
        raise FieldError(f"spinor index {alpha} outside 0..{ctx.Nu - 1}")


# ---------------------------------------------------------------- action on pieces


def _mix(coeffs, M: np.ndarray, h: TestFunction) -> tuple:
    """new_d = h * sum_b M[d, b] g_b."""
    out = []
    for d in range(M.shape[0]):
        acc = TestFunction.zero(2)
        for b, g in enumerate(coeffs):
            if M[d, b] != 0 and not g.is_zero:
                acc = acc + g.scale(M[d, b])
        out.append(acc if acc.is_zero else h * acc)
    return tuple(out)


def _create_piece(ctx: FieldContext, alpha: int, f: TestFunction, p: Piece) -> Piece:
    A = ctx.A(p.frame)
    M = np.einsum("g,gdb->db", A[alpha], ctx.K)
    h = pft_chart(f, p.frame, ctx.H, ctx.P, p.surface.origin)
    return Piece(p.surface, p.frame, _mix(p.coeffs, M, h))


def _annihilate_piece(ctx: FieldContext, alpha: int, g: TestFunction, p: Piece) -> Piece:
    A = ctx.A(p.frame)
    M = -np.einsum("g,gdb->db", np.conj(A[alpha]), ctx.K)
    h = pft_chart(g, p.frame, ctx.H, ctx.P, p.surface.origin).conj()
    return Piece(p.surface, p.frame, _mix(p.coeffs, M, h))


def apply_field(ctx: FieldContext, op: FieldOperator, state: SurfaceState,
                window: float | None = None) -> SurfaceState:
    """Apply a creation or annihilation operator to a state of sector ``state.n``."""
    _check_alpha(ctx, op.alpha)
    if op.n != ctx.n:
        raise FieldError("operator sector differs from the context sector")
    sector_match = state.n is None or state.n == op.n
    pieces = state.pieces if sector_match else ()
    if op.kind == "creation":
        new = tuple(_create_piece(ctx, op.alpha, op.f, p) for p in pieces)
        out = SurfaceState(new, 0.0, ctx.n)
        if state.vacuum != 0:
            vac = create_on_vacuum(ctx, op.alpha, op.f, window)
            out = add_states(out, 1.0, vac, state.vacuum, strict=False)
        return out
    new = tuple(_annihilate_piece(ctx, op.alpha, op.f, p) for p in pieces)
    amp = 0.0
    if pieces:
        piece_state = SurfaceState(pieces, 0.0, ctx.n)
        amp = inner_product(piece_state, create_on_vacuum(ctx, op.alpha, op.f, window), ctx.irrep)
    return SurfaceState(new, amp, ctx.n)


def creation(ctx, alpha, f, state, window=None):
    return apply_field(ctx, FieldOperator(alpha, ctx.n, f, "creation"), state, window)


def annihilation(ctx, alpha, g, state, window=None):
    return apply_field(ctx, FieldOperator(alpha, ctx.n, g, "annihilation"), state, window)


# ---------------------------------------------------------------- (anti)commutators


ARRANGEMENTS = ("[phi,phi]", "[phi*,phi*]", "{phi,phi*}", "{phi*,phi}")


def commutator_apply(ctx: FieldContext, alpha: int, beta: int, f: TestFunction, g: TestFunction,
                     state: SurfaceState, sign: int = -1, arrangement: str = "[phi,phi]",
                     window: float | None = None) -> SurfaceState:
    """Compose field operators.

    "[phi,phi]":   phi^a(f) phi^b(g) - phi^b(g) phi^a(f)
    "[phi*,phi*]": the same with both operators replaced by adjoints
    "{phi,phi*}":  phi^a(f) phi^b(g)* + sign phi^a(g) phi^b(f)*
    "{phi*,phi}":  phi^a(f)* phi^b(g) + sign phi^a(g)* phi^b(f)
    """
    if arrangement not in ARRANGEMENTS:
        raise FieldError(f"unknown arrangement {arrangement}")
    W = vacuum_window(ctx, [f, g]) if window is None else window

    def op(a, fn, kind):
        return lambda s: apply_field(ctx, FieldOperator(a, ctx.n, fn, kind), s, W)

    if arrangement in ("[phi,phi]", "[phi*,phi*]"):
        kind = "creation" if arrangement == "[phi,phi]" else "annihilation"
        x = op(alpha, f, kind)(op(beta, g, kind)(state))
        y = op(beta, g, kind)(op(alpha, f, kind)(state))
        return add_states(x, 1.0, y, -1.0, strict=False)
    if arrangement == "{phi,phi*}":
        x = op(alpha, f, "creation")(op(beta, g, "annihilation")(state))
        y = op(alpha, g, "creation")(op(beta, f, "annihilation")(state))
    else:
        x = op(alpha, f, "annihilation")(op(beta, g, "creation")(state))
        y = op(alpha, g, "annihilation")(op(beta, f, "creation")(state))
    return add_states(x, 1.0, y, float(sign), strict=False)


def anticommutator_expansion(ctx: FieldContext, alpha: int, beta: int, f: TestFunction,
                             g: TestFunction, state: SurfaceState, sign: int = 1,
                             window: float | None = None) -> SurfaceState:
    """Closed three-term form of {phi^a(f), phi^b(g)*}_sign on a state without vacuum part.

    - A^a_d conj(A^b_m) (f g* + sign g f*) h ad(F^d) ad(F^m)
      + <state, phi^b(g)1> phi^a(f)1 + sign <state, phi^b(f)1> phi^a(g)1
    """
    if state.vacuum != 0:
        raise FieldError("expansion is stated for states without vacuum component")
    W = vacuum_window(ctx, [f, g]) if window is None else window
    pieces = []
    for p in state.pieces:
        A = ctx.A(p.frame)
        hf = pft_chart(f, p.frame, ctx.H, ctx.P, p.surface.origin)
        hg = pft_chart(g, p.frame, ctx.H, ctx.P, p.surface.origin)
        w = hf * hg.conj() + (hg * hf.conj()).scale(sign)
        Kd = np.einsum("d,dxy->xy", A[alpha], ctx.K)
        Km = np.einsum("m,mxy->xy", np.conj(A[beta]), ctx.K)
        M = -(Kd @ Km)
        pieces.append(Piece(p.surface, p.frame, _mix(p.coeffs, M, w)))
    out = SurfaceState(tuple(pieces), 0.0, ctx.n)
    vf = create_on_vacuum(ctx, alpha, f, W)
    vg = create_on_vacuum(ctx, alpha, g, W)
    cg = inner_product(state, create_on_vacuum(ctx, beta, g, W), ctx.irrep)
    cf = inner_product(state, create_on_vacuum(ctx, beta, f, W), ctx.irrep)
    out = add_states(out, 1.0, vf, cg, strict=False)
    return add_states(out, 1.0, vg, sign * cf, strict=False)


# ---------------------------------------------------------------- bounds


def field_bound(ctx: FieldContext, alpha: int, f: TestFunction, state: SurfaceState,
                window: float | None = None, grid: int = 201) -> float:
    """K with ||phi(f) s|| <= K ||s|| for states built on the frames present in ``state``.

    Sup of |f^{f0,f1}| over each piece times the operator norm of the Lie
    mixing, plus ||phi(f) 1|| for the vacuum part.
    """
    G = np.sqrt(ctx.C())
    K = 0.0
    for p in state.pieces:
        A = ctx.A(p.frame)
        M = np.einsum("g,gdb->db", A[alpha], ctx.K)
        h = pft_chart(f, p.frame, ctx.H, ctx.P, p.surface.origin)
        corners = p.chart_corners()
        lo, hi = corners.min(axis=0), corners.max(axis=0)
        xs = np.linspace(lo[0], hi[0], grid)
        ys = np.linspace(lo[1], hi[1], grid)
        X, Y = np.meshgrid(xs, ys, indexing="ij")
        sup = float(np.max(np.abs(h(np.stack([X.ravel(), Y.ravel()], axis=1)))))
        K = max(K, 1.05 * sup * np.linalg.norm(M, 2))
    vac = norm(create_on_vacuum(ctx, alpha, f, window), ctx.irrep)
    return float(K + vac) if G > 0 else float(vac)


# ---------------------------------------------------------------- local defect


def local_comm_defect(f: TestFunction, g: TestFunction, x, u, v, H: float, P: float,
                      frame: MinkowskiFrame, sign: int = -1) -> complex:
    """Pointwise defect for points u, v of the time-like plane through x.

    e^{-i(u-v).w} g_x(u) conj f_x(v) / (2pi)^2 + sign e^{-i(v-u).w} f_x(v) conj g_x(u) / (2pi)^2,
    w = H f0 + P f1 and g_x = g(x + .).
    """
    x, u, v = vec(x), vec(u), vec(v)
    for p in (u, v):
        if max(abs(minkowski_dot(p, frame.f(2))), abs(minkowski_dot(p, frame.f(3)))) > 1e-9 * max(1.0, np.linalg.norm(p)):
            raise FieldError("u and v must lie in the time-like plane of the frame")
    w = H * frame.f(0) + P * frame.f(1)
    phase = minkowski_dot(u - v, w)
    gu = complex(g((x + u)[None])[0])
    fv = complex(f((x + v)[None])[0])
    return (np.exp(-1j * phase) * gu * np.conj(fv) + sign * np.exp(1j * phase) * fv * np.conj(gu)) / TWO_PI ** 2


def defect_null_direction(frame: MinkowskiFrame, H: float, P: float) -> np.ndarray:
    """Direction P f0 + H f1, Minkowski-orthogonal to H f0 + P f1."""
    return P * frame.f(0) + H * frame.f(1)


# ---------------------------------------------------------------- mixed commutator


def commutator_prediction(ctx: FieldContext, alpha: int, beta: int, f: TestFunction, g: TestFunction,
                          state: SurfaceState, window: float | None = None) -> SurfaceState:
    """Closed form of [phi^a(f), phi^b(g)] on a state.

    On a piece it multiplies by h_f h_g and acts by [M_a, M_b]; on the vacuum
    it yields the window state h_f h_g (M_a Fc_b - M_b Fc_a).  Both vanish
    when a == b.
    """
    _check_alpha(ctx, alpha)
    _check_alpha(ctx, beta)
    W = vacuum_window(ctx, [f, g]) if window is None else window
    pieces = []
    for p in state.pieces:
        A = ctx.A(p.frame)
        Ma = np.einsum("g,gdb->db", A[alpha], ctx.K)
        Mb = np.einsum("g,gdb->db", A[beta], ctx.K)
        hf = pft_chart(f, p.frame, ctx.H, ctx.P, p.surface.origin)
        hg = pft_chart(g, p.frame, ctx.H, ctx.P, p.surface.origin)
        pieces.append(Piece(p.surface, p.frame, _mix(p.coeffs, Ma @ Mb - Mb @ Ma, hf * hg)))
    out = SurfaceState(tuple(pieces), 0.0, ctx.n)
    if state.vacuum != 0:
        A = ctx.A(IDENTITY_FRAME)
        Ma = np.einsum("g,gdb->db", A[alpha], ctx.K)
        Mb = np.einsum("g,gdb->db", A[beta], ctx.K)
        vecs = Ma @ ctx.Fc[beta] - Mb @ ctx.Fc[alpha]
        h = (pft_chart(f, IDENTITY_FRAME, ctx.H, ctx.P) * pft_chart(g, IDENTITY_FRAME, ctx.H, ctx.P)).shifted([W, W])
        coeffs = tuple(h.scale(v) if v != 0 else TestFunction.zero(2) for v in vecs)
        vac = SurfaceState((Piece(_window_surface(W), IDENTITY_FRAME, coeffs),), 0.0, ctx.n)
        out = add_states(out, 1.0, vac, state.vacuum, strict=False)
    return out


# ---------------------------------------------------------------- cyclicity


def word_vectors(ctx: FieldContext, depth: int = 3) -> list:
    """Lie coordinates of phi^{a_k} ... phi^{a_1} 1 on S_0 for words of length <= depth."""
    A = ctx.A(IDENTITY_FRAME)
    M = [np.einsum("g,gdb->db", A[a], ctx.K) for a in range(ctx.Nu)]
    words = [((a,), ctx.Fc[a]) for a in range(ctx.Nu)]
    level = list(words)
    for _ in range(depth - 1):
        level = [(w + (b,), M[b] @ v) for w, v in level for b in range(ctx.Nu)]
        words += level
    return words


def cyclic_approximation(ctx: FieldContext, h: TestFunction, target: np.ndarray, depth: int = 3,
                         wide: float = 1e3, window: float = 8.0) -> dict:
    """Approximate the S_0 window state h (x) target by creation words on the vacuum.

    The first operator carries the Gaussian lift of h; the others carry lifts
    of a Gaussian of width ``wide``, nearly constant on the window.  Word
    weights come from least squares on the Lie coordinates; the returned
    residual is the true relative Hilbert-space error.
    """
    target = np.asarray(target, dtype=complex)
    words = word_vectors(ctx, depth)
    V = np.stack([v for _, v in words], axis=1)
    x, *_ = np.linalg.lstsq(V, target, rcond=None)
    first = gaussian_lift(h, ctx.H, ctx.P)
    flat = gaussian_lift(TestFunction.gaussian([0.0, 0.0], [wide, wide]), ctx.H, ctx.P)
    approx = SurfaceState((), 0.0, ctx.n)
    for (word, _), c in zip(words, x):
        if abs(c) < 1e-14:
            continue
        s = creation(ctx, word[0], first, SurfaceState((), 1.0, ctx.n), window)
        for b in word[1:]:
            s = creation(ctx, b, flat, s, window)
        approx = add_states(approx, 1.0, s, complex(c), strict=False)
    hc = h.shifted([window, window])
    coeffs = tuple(hc.scale(t) if t != 0 else TestFunction.zero(2) for t in target)
    tgt = SurfaceState((Piece(_window_surface(window), IDENTITY_FRAME, coeffs),), 0.0, ctx.n)
    diff = add_states(tgt, 1.0, approx, -1.0, strict=False)
    return {"residual": norm(diff, ctx.irrep) / norm(tgt, ctx.irrep),
            "span_residual": float(np.linalg.norm(V @ x - target) / np.linalg.norm(target)),
            "words": len(words)}
