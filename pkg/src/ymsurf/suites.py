"""Seeded invariant suites shared by ``ymsurf verify`` and the test-suite.

Each suite returns a list of :class:`Check` records carrying the largest
observed error and the tolerance it is held to.  Everything is driven by a
``numpy.random.Generator`` so two runs with the same seed agree bit for bit.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import bargmann as bg
from . import clustering as cl
from . import fieldops as fo
from . import geometry as geo
from . import hilbert as hb
from . import liealg as la
from . import spectrum as sp
from .testfn import TestFunction


@dataclass(frozen=True)
class Check:
    suite: str
    name: str
    error: float
    tol: float

    @property
    def passed(self) -> bool:
        return bool(np.isfinite(self.error) and self.error <= self.tol)

    def line(self) -> str:
        tag = "PASS" if self.passed else "FAIL"
        return f"{tag}  {self.suite:<10} {self.name:<44} max_err={self.error:.3e} tol={self.tol:.1e}"


# ---------------------------------------------------------------- random inputs


def random_rect(rng: np.random.Generator, kind: str = "spacelike") -> geo.RectSurface:
    """Rectangle of random extent and origin, pushed by a random boost-rotation."""
    ext = tuple(rng.uniform(0.3, 2.5, size=2))
    o = rng.normal(size=4)
    if kind == "spacelike":
        base = geo.RectSurface(o, geo.E[2], geo.E[3], ext)
    else:
        base = geo.RectSurface(o, geo.E[0], geo.E[1], ext)
    return base.transformed(geo.random_lorentz(rng, 1.0))


def random_coeffs(rng: np.random.Generator, N: int, side: float) -> list:
    out = []
    for _ in range(N):
        c = rng.uniform(0.3, 0.7, size=2) * side
        w = rng.uniform(0.25, 0.5, size=2) * side
        orders = rng.integers(0, 2, size=2)
        out.append(TestFunction.hermite_gaussian(orders, c, w, complex(*rng.normal(size=2))))
    return out


def random_piece_state(rng: np.random.Generator, N: int, n: int = 1, side: float = 1.5,
                       surface: geo.RectSurface | None = None, vacuum: complex = 0.0) -> hb.SurfaceState:
    if surface is None:
        surface = geo.unit_square_s0(side).transformed(geo.random_lorentz(rng, 0.8), rng.normal(size=4))
    p = hb.make_piece(surface, random_coeffs(rng, N, surface.extent[0]), surface.frame)
    return hb.SurfaceState((p,), complex(vacuum), n)


def random_test4(rng: np.random.Generator) -> TestFunction:
    orders = rng.integers(0, 2, size=4)
    return TestFunction.hermite_gaussian(orders, 0.3 * rng.normal(size=4), rng.uniform(0.7, 1.1, size=4),
                                         complex(*rng.normal(size=2)))


# ---------------------------------------------------------------- liealg


def gell_mann_table_error() -> float:
    l = la.gell_mann().stack()

    def L(k):
        return l[k - 1]

    def c(a, b):
        return a @ b - b @ a

    s3 = np.sqrt(3.0)
    pairs = [
        (c(L(7), L(4)), L(2)),
        (c(L(7), L(5)), L(1)),
        (c(L(4), c(L(5), L(7))), -L(6)),
        (c(L(7), c(L(4), c(L(5), L(7)))), L(3) - s3 * L(8)),
        (c(L(5), L(4)), L(3) + s3 * L(8)),
    ]
    return float(max(np.max(np.abs(a - b)) for a, b in pairs))


def explicit_irreps() -> list:
    out = [la.build_irrep("su2", (k,)) for k in range(1, 7)]
    out += [la.build_irrep("su3", w) for w in ((1, 0), (0, 1), (1, 1))]
    return out


def suite_liealg(rng: np.random.Generator) -> list:
    S = "liealg"
    checks = [Check(S, "Gell-Mann commutator table", gell_mann_table_error(), 1e-12)]
    irreps = explicit_irreps()
    checks.append(Check(S, "irreps preserve brackets", max(la.homomorphism_residual(r) for r in irreps), 1e-10))
    checks.append(Check(S, "Casimir is scalar", max(la.casimir_deviation(r) for r in irreps), 1e-9))
    checks.append(Check(S, "C2 dim = N C", max(abs(r.casimir * r.dim - r.N * r.rep_constant) for r in irreps), 1e-9))
    err = 0.0
    for alg in ("su2", "su3"):
        st = la.structure_constants(la.algebra_basis(alg))
        err = max(err, st.antisymmetry_residual(), st.jacobi_residual())
    checks.append(Check(S, "structure constants antisymmetric, Jacobi", err, 1e-10))
    err = 0.0
    for _ in range(50):
        X = rng.normal(size=(3, 3)) + 1j * rng.normal(size=(3, 3))
        A = X - X.conj().T
        err = max(err, abs(la.trace_form(A, A) / np.linalg.norm(A) ** 2 - 1))
    checks.append(Check(S, "trace form is the Frobenius norm on skew", float(err), 1e-12))
    gm = la.gell_mann().stack()
    res = la.verify_spanning_chain([gm[3], gm[4], gm[6]], 4)
    checks.append(Check(S, "lambda4,5,7 span at depth 4", float(abs(res["depth"] - 4) + (not res["spans"])), 0.0))
    return checks


# ---------------------------------------------------------------- geometry


def measure_invariance(rng: np.random.Generator, cases: int) -> float:
    worst = 0.0
    for _ in range(cases):
        kind = "spacelike" if rng.random() < 0.5 else "timelike"
        S = random_rect(rng, kind)
        L = geo.boost(int(rng.integers(1, 4)), rng.uniform(-1.5, 1.5)) @ geo.rotation(
            int(rng.integers(1, 4)), rng.uniform(0, 2 * np.pi))
        a = geo.rho_acute_integral(S)
        b = geo.rho_acute_integral(S.transformed(L, rng.normal(size=4)))
        worst = max(worst, abs(a["abs"] - b["abs"]) / a["abs"], abs(a["complex"] - b["complex"]) / a["abs"])
    return worst


def suite_geometry(rng: np.random.Generator) -> list:
    S = "geometry"
    checks = []
    err = 0.0
    for _ in range(200):
        L = geo.random_lorentz(rng, 1.5)
        x, y = rng.normal(size=4), rng.normal(size=4)
        err = max(err, abs(geo.minkowski_dot(L @ x, L @ y) - geo.minkowski_dot(x, y)) / max(1.0, np.max(np.abs(L)) ** 2))
    checks.append(Check(S, "Minkowski product invariance", err, 1e-9))
    bad = 0
    for _ in range(100):
        kind = "spacelike" if rng.random() < 0.5 else "timelike"
        Sf = random_rect(rng, kind)
        if geo.classify_surface(Sf.transformed(geo.random_lorentz(rng, 1.5))) != kind:
            bad += 1
    checks.append(Check(S, "surface type invariance (mismatches)", float(bad), 0.0))
    checks.append(Check(S, "surface measure invariance", measure_invariance(rng, 60), 1e-8))
    tl = geo.RectSurface(np.zeros(4), geo.E[0], geo.E[1])
    checks.append(Check(S, "time-like unit square integral = i",
                        abs(geo.rho_acute_integral(tl)["complex"] - 1j), 1e-12))
    err = 0.0
    for _ in range(200):
        A, B = geo.random_sl2c(rng), geo.random_sl2c(rng)
        lhs = geo.sl2c_to_lorentz(A @ B)
        rhs = geo.sl2c_to_lorentz(A) @ geo.sl2c_to_lorentz(B)
        err = max(err, np.max(np.abs(lhs - rhs)) / max(1.0, np.max(np.abs(lhs))))
    err = max(err, np.max(np.abs(geo.sl2c_to_lorentz(-np.eye(2)) - np.eye(4))))
    checks.append(Check(S, "spinor map homomorphism, -I in kernel", float(err), 1e-9))
    err = 0.0
    for _ in range(100):
        th, ph = rng.uniform(-2, 2, size=2)
        v = geo.lambda_theta(th) @ [0.0, 1.0]
        u = geo.lambda_theta(ph) @ [1.0, 0.0]
        w = geo.lambda_theta(th) @ [1.0, 0.0]
        err = max(err, abs(geo.dot2(v, u) - np.sinh(ph - th)), abs(geo.dot2(w, u) + np.cosh(ph - th)),
                  np.max(np.abs(geo.lambda_theta(th) @ geo.lambda_theta(ph) - geo.lambda_theta(th + ph))))
    checks.append(Check(S, "hyperbolic rotation identities", float(err), 1e-12))
    err = 0.0
    for _ in range(20):
        Sf = geo.unit_square_s0(1.0).transformed(geo.random_lorentz(rng, 0.8), rng.normal(size=4))
        fr = geo.minkowski_frame(Sf)
        t, s = rng.uniform(-0.9, 0.9), 1.0
        v = t * fr.f(0) + s * fr.f(1)
        x = Sf.origin + rng.uniform(0, 1) * Sf.du + rng.uniform(0, 1) * Sf.dv
        m = geo.compose(geo.reflect_spacelike(v, x, Sf))
        err = max(err, geo.lorentz_residual(m.M), np.max(np.abs(m(x + v) - (x - v))))
    checks.append(Check(S, "reflection is an isometry sending x+v to x-v", float(err), 1e-9))
    return checks


# ---------------------------------------------------------------- hilbert


def unitarity_error(rng: np.random.Generator, cases: int, irrep: la.Irrep, H: float = 1.3,
                    P: float = 0.6) -> float:
    worst = 0.0
    for _ in range(cases):
        a = random_piece_state(rng, irrep.N, vacuum=complex(*rng.normal(size=2)))
        b = random_piece_state(rng, irrep.N, surface=a.pieces[0].surface, vacuum=complex(*rng.normal(size=2)))
        lam, x = geo.random_sl2c(rng), rng.normal(size=4)
        ua, ub = hb.unitary_action(x, lam, a, H, P), hb.unitary_action(x, lam, b, H, P)
        before = hb.inner_product(a, b, irrep)
        after = hb.inner_product(ua, ub, irrep)
        worst = max(worst, abs(after - before) / max(1.0, hb.norm(a, irrep) * hb.norm(b, irrep)))
    return worst


def composition_error(rng: np.random.Generator, cases: int, irrep: la.Irrep, H: float = 1.3,
                      P: float = 0.6) -> float:
    worst = 0.0
    for _ in range(cases):
        s = random_piece_state(rng, irrep.N, vacuum=0.5)
        l1, l2 = geo.random_sl2c(rng), geo.random_sl2c(rng)
        a1, a2 = rng.normal(size=4), rng.normal(size=4)
        lhs = hb.unitary_action(a1, l1, hb.unitary_action(a2, l2, s, H, P), H, P)
        rhs = hb.unitary_action(a1 + geo.sl2c_to_lorentz(l1) @ a2, l1 @ l2, s, H, P)
        worst = max(worst, hb.state_distance(lhs, rhs, irrep) / hb.norm(s, irrep))
    return worst


def suite_hilbert(rng: np.random.Generator) -> list:
    S = "hilbert"
    ir = la.build_irrep("su2", (2,))
    checks = [Check(S, "unitarity of the Poincare action", unitarity_error(rng, 12, ir), 1e-7),
              Check(S, "representation law", composition_error(rng, 6, ir), 1e-8)]
    worst = 0.0
    for _ in range(8):
        s = random_piece_state(rng, ir.N, vacuum=complex(*rng.normal(size=2)))
        v = hb.inner_product(s, s, ir)
        worst = max(worst, max(0.0, -v.real), abs(v.imag) / abs(v))
    checks.append(Check(S, "positivity of <s,s>", worst, 1e-12))
    sq = geo.unit_square_s0(1.0)
    co = random_coeffs(rng, ir.N, 1.0)
    a = hb.SurfaceState((hb.make_piece(sq, co, geo.IDENTITY_FRAME),), 0, 1)
    b = hb.SurfaceState((hb.make_piece(sq.transformed(np.eye(4), [0, 0, 1.5, 0.2]), co),), 0, 1)
    checks.append(Check(S, "disjoint translates are orthogonal", abs(hb.inner_product(a, b, ir)), 1e-14))
    return checks


# ---------------------------------------------------------------- fieldops


def transformation_law_error(rng: np.random.Generator, ctx: fo.FieldContext, cases: int) -> float:
    worst = 0.0
    for _ in range(cases):
        f = random_test4(rng)
        st = random_piece_state(rng, ctx.N, side=2.0)
        lam, a = geo.random_sl2c(rng, 0.4), rng.normal(size=4)
        Y = geo.sl2c_to_lorentz(lam)
        Yi = np.linalg.inv(Y)
        lam_i = np.linalg.inv(lam)
        lhs_in = hb.unitary_action(-Yi @ a, lam_i, st, ctx.H, ctx.P)
        Ai = geo.spinor_rep(*ctx.spinor)(lam_i)
        fl = f.pullback(Yi, -Yi @ a)
        for al in range(ctx.Nu):
            lhs = hb.unitary_action(a, lam, fo.creation(ctx, al, f, lhs_in), ctx.H, ctx.P)
            rhs = hb.SurfaceState((), 0, ctx.n)
            for g in range(ctx.Nu):
                rhs = hb.add_states(rhs, 1, fo.creation(ctx, g, fl, st), Ai[al, g], strict=False)
            worst = max(worst, hb.state_distance(lhs, rhs, ctx.irrep) / max(1.0, hb.norm(lhs, ctx.irrep)))
    return worst


def adjointness_error(rng: np.random.Generator, ctx: fo.FieldContext, cases: int) -> float:
    worst = 0.0
    for _ in range(cases):
        f = random_test4(rng)
        u = random_piece_state(rng, ctx.N, side=2.0, vacuum=complex(*rng.normal(size=2)))
        v = random_piece_state(rng, ctx.N, surface=u.pieces[0].surface)
        v = hb.add_states(v, 1.0, fo.create_on_vacuum(ctx, 0, random_test4(rng)), 1.0, strict=False)
        al = int(rng.integers(ctx.Nu))
        lhs = hb.inner_product(fo.creation(ctx, al, f, u), v, ctx.irrep)
        rhs = hb.inner_product(u, fo.annihilation(ctx, al, f, v), ctx.irrep)
        worst = max(worst, abs(lhs - rhs) / max(1.0, abs(lhs)))
    return worst


def commutator_cases(rng: np.random.Generator, ctx: fo.FieldContext, cases: int, same_index: bool | None):
    """Yield (alpha, beta, f, g, state) with the index relation requested (None: any)."""
    for _ in range(cases):
        al = int(rng.integers(ctx.Nu))
        if same_index is None:
            be = int(rng.integers(ctx.Nu))
        elif same_index:
            be = al
        else:
            be = int((al + 1 + rng.integers(ctx.Nu - 1)) % ctx.Nu)
        vac = complex(*rng.normal(size=2)) if rng.random() < 0.5 else 0.0
        st = random_piece_state(rng, ctx.N, side=2.0, vacuum=vac)
        yield al, be, random_test4(rng), random_test4(rng), st


def commutator_norm_ratio(ctx, al, be, f, g, st, arrangement="[phi,phi]") -> float:
    c = fo.commutator_apply(ctx, al, be, f, g, st, arrangement=arrangement)
    return hb.norm(c, ctx.irrep) / hb.norm(st, ctx.irrep)


def local_defect_errors(rng: np.random.Generator, cases: int) -> tuple:
    """(max defect along the null direction, min defect on generic space-like lines).

    Real Gaussians keep f conj(g) real.  Generic displacements are space-like,
    drawn away from the null direction and scaled to a quarter-turn phase.
    """
    null_max, generic_min = 0.0, np.inf
    for _ in range(cases):
        H = rng.uniform(1.0, 2.0)
        P = rng.uniform(0.1, 0.9) * H
        Sf = geo.unit_square_s0(1.0).transformed(geo.random_lorentz(rng, 0.6))
        fr = geo.minkowski_frame(Sf)
        c = rng.normal(size=4) * 0.3
        w = rng.uniform(2.0, 3.0, size=4)
        f = TestFunction.gaussian(c, w, rng.uniform(1.0, 2.0))
        g = TestFunction.gaussian(c + 0.1 * rng.normal(size=4), w, rng.uniform(1.0, 2.0))
        om = H * fr.f(0) + P * fr.f(1)
        d = fo.defect_null_direction(fr, H, P)
        v = 0.2 * rng.normal() * fr.f(0) + 0.2 * rng.normal() * fr.f(1)
        u = v + rng.uniform(0.2, 0.6) * d
        null_max = max(null_max, abs(fo.local_comm_defect(f, g, c, u, v, H, P, fr)))
        while True:
            th = rng.uniform(-0.5, 0.5)
            gen = np.sinh(th) * fr.f(0) + np.cosh(th) * fr.f(1)
            gw = geo.minkowski_dot(gen, om)
            if abs(gw) >= 0.5:
                break
        u = (0.5 * np.pi / abs(gw)) * gen
        generic_min = min(generic_min, abs(fo.local_comm_defect(f, g, c, u, np.zeros(4), H, P, fr)))
    return null_max, generic_min


def cyclicity_error(rng: np.random.Generator, ctx: fo.FieldContext, targets: int) -> float:
    words = fo.word_vectors(ctx, 3)
    V = np.stack([v for _, v in words], axis=1)
    worst = 0.0
    for _ in range(targets):
        h = TestFunction.hermite_gaussian(rng.integers(0, 2, size=2), 0.3 * rng.normal(size=2),
                                          rng.uniform(0.7, 1.1, size=2), 1.0)
        T = V @ rng.normal(size=V.shape[1])
        worst = max(worst, fo.cyclic_approximation(ctx, h, T)["residual"])
    return worst


def suite_fieldops(rng: np.random.Generator) -> list:
    S = "fieldops"
    ctx = fo.field_context(la.build_irrep("su2", (2,)), 1.3, 0.6)
    checks = []
    err = 0.0
    for _ in range(5):
        f2 = TestFunction.hermite_gaussian(rng.integers(0, 3, size=2), 0.3 * rng.normal(size=2),
                                           rng.uniform(0.5, 1.2, size=2), complex(*rng.normal(size=2)))
        F = fo.gaussian_lift(f2, ctx.H, ctx.P)
        Y = rng.normal(size=(6, 2))
        h = fo.pft_chart(F, geo.IDENTITY_FRAME, ctx.H, ctx.P)
        err = max(err, np.max(np.abs(h(Y) - f2(Y))) / max(1.0, np.max(np.abs(f2(Y)))))
    checks.append(Check(S, "Gaussian lift reproduces f on S0", float(err), 1e-9))
    checks.append(Check(S, "transformation law", transformation_law_error(rng, ctx, 2), 1e-7))
    checks.append(Check(S, "adjointness", adjointness_error(rng, ctx, 4), 1e-7))
    worst = 0.0
    for _ in range(4):
        f = random_test4(rng)
        st = random_piece_state(rng, ctx.N, side=2.0, vacuum=0.7)
        al = int(rng.integers(ctx.Nu))
        K = fo.field_bound(ctx, al, f, st)
        worst = max(worst, hb.norm(fo.creation(ctx, al, f, st), ctx.irrep) / (K * hb.norm(st, ctx.irrep)))
    checks.append(Check(S, "boundedness (norm ratio to bound)", float(worst), 1.0))
    checks.append(Check(S, "cyclicity from the vacuum", cyclicity_error(rng, ctx, 5), 1e-3))
    same = max(commutator_norm_ratio(ctx, *c) for c in commutator_cases(rng, ctx, 4, True))
    checks.append(Check(S, "equal-index creation commutator vanishes", float(same), 1e-9))
    same = max(commutator_norm_ratio(ctx, *c, arrangement="[phi*,phi*]") for c in commutator_cases(rng, ctx, 3, True))
    checks.append(Check(S, "equal-index annihilation commutator vanishes", float(same), 1e-9))
    err = 0.0
    for al, be, f, g, st in commutator_cases(rng, ctx, 4, False):
        c = fo.commutator_apply(ctx, al, be, f, g, st)
        p = fo.commutator_prediction(ctx, al, be, f, g, st)
        err = max(err, hb.state_distance(c, p, ctx.irrep) / hb.norm(st, ctx.irrep))
    checks.append(Check(S, "mixed-index commutator matches ad prediction", float(err), 1e-9))
    err = 0.0
    for al, be, f, g, st in commutator_cases(rng, ctx, 3, None):
        st = hb.SurfaceState(st.pieces, 0.0, st.n)
        sign = 1 if rng.random() < 0.5 else -1
        x = fo.commutator_apply(ctx, al, be, f, g, st, sign, "{phi,phi*}")
        y = fo.anticommutator_expansion(ctx, al, be, f, g, st, sign)
        err = max(err, hb.state_distance(x, y, ctx.irrep) / max(1.0, hb.norm(x, ctx.irrep)))
    checks.append(Check(S, "anticommutator closed form", float(err), 1e-9))
    null_max, generic_min = local_defect_errors(rng, 20)
    checks.append(Check(S, "local defect along the null direction", float(null_max), 1e-12))
    checks.append(Check(S, "local defect on generic lines (1e-3 - min)", float(max(0.0, 1e-3 - generic_min)), 0.0))
    return checks


# ---------------------------------------------------------------- bargmann


def random_hermite_coeffs(rng: np.random.Generator, N: int, terms: int = 2, max_deg: int = 2) -> dict:
    coeffs = {}
    for i in bg.SPATIAL:
        for al in range(N):
            coeffs[(i, al)] = {tuple(int(x) for x in rng.integers(0, max_deg + 1, 4)): float(rng.normal())
                               for _ in range(terms)}
    return coeffs


def fd_curvature_error(rng: np.random.Generator, A: bg.GaugeOneForm, st: la.StructureTensor,
                       points: int = 4, h: float = 1e-3) -> float:
    """Compare curvature blocks with a fourth-order finite-difference oracle."""
    F = bg.curvature(A, st)
    zero = TestFunction.zero(4)
    worst = 0.0
    stencil = [(-2, 1 / 12), (-1, -8 / 12), (1, 8 / 12), (2, -1 / 12)]

    def deriv(f, a, x):
        e = np.zeros(4)
        e[a] = h
        return sum(w * f((x + k * e)[None])[0] for k, w in stencil) / h

    for _ in range(points):
        x = 0.5 * rng.normal(size=4)
        for g in range(A.N):
            for j in bg.SPATIAL:
                ref = deriv(A.get(j, g, zero), 0, x)
                worst = max(worst, abs(F.block((0, j), g)(x[None])[0] - ref))
            for i, j in bg.SPACE_PAIRS:
                ref = deriv(A.get(i, g, zero), j, x) - deriv(A.get(j, g, zero), i, x)
                for al in range(A.N):
                    for be in range(A.N):
                        if st.c[g, al, be] != 0:
                            ref += st.c[g, al, be] * A.get(i, al, zero)(x[None])[0] * A.get(j, be, zero)(x[None])[0]
                worst = max(worst, abs(F.block((i, j), g)(x[None])[0] - ref))
    return float(worst)


def suite_bargmann(rng: np.random.Generator) -> list:
    S = "bargmann"
    checks = []
    err = 0.0
    M = bg.frak_d_matrix(bg.DEGREE_CAP)
    for a in range(4):
        for p in range(bg.DEGREE_CAP + 1):
            idx = [0, 0, 0, 0]
            idx[a] = p
            out = bg.frak_d(a, bg.PolyFock.monomial(idx, cap=bg.DEGREE_CAP + 1))
            for q in range(bg.DEGREE_CAP + 2):
                k = list(idx)
                k[a] = q
                err = max(err, abs(out.coeffs.get(tuple(k), 0) - M[q, p]))
    checks.append(Check(S, "frak_d monomial rule", float(err), 1e-15))
    err = 0.0
    kappa = 1.3
    idx = [tuple(int(x) for x in rng.integers(0, 4, 4)) for _ in range(6)]
    for I in idx:
        for J in idx:
            v = (bg.hermite_function(I, kappa) * bg.hermite_function(J, kappa).conj()).total_integral()
            err = max(err, abs(v - (1.0 if I == J else 0.0)),
                      abs(bg.h2_inner(bg.segal_bargmann(I), bg.segal_bargmann(J)) - (1.0 if I == J else 0.0)))
    checks.append(Check(S, "Hermite and Fock orthonormality", float(err), 1e-12))
    err = 0.0
    for _ in range(3):
        N = 3
        coeffs = random_hermite_coeffs(rng, N, terms=2)
        k = rng.uniform(0.8, 1.8)
        lhs = bg.two_form_norm2(bg.d_x(bg.to_x(coeffs, N, k)))
        rhs = k ** 2 * bg.two_form_norm2(bg.d_fock(bg.to_fock(coeffs, N)))
        err = max(err, abs(lhs - rhs) / abs(rhs))
    checks.append(Check(S, "Segal-Bargmann isometry of d", float(err), 1e-8))
    st = la.structure_constants(la.su2_basis())
    A = bg.to_x(random_hermite_coeffs(rng, 3, terms=1, max_deg=1), 3, 1.1)
    checks.append(Check(S, "curvature vs finite differences", fd_curvature_error(rng, A, st), 1e-8))
    direct = bg.ym_action(A, st, 1.1)
    exp = bg.ym_action_expanded(A, st, 1.1)
    checks.append(Check(S, "action equals its expansion", abs(direct - exp["total"]) / direct, 1e-12))
    abelian = la.StructureTensor(np.zeros_like(st.c))
    ab = bg.ym_action(A, abelian, 1.1)
    checks.append(Check(S, "abelian action is curl plus time", abs(ab - exp["curl"] - exp["time"]) / ab, 1e-12))
    checks.append(Check(S, "action non-negative", float(max(0.0, -direct, -ab)), 0.0))
    return checks


# ---------------------------------------------------------------- spectrum


def suite_spectrum(rng: np.random.Generator) -> list:
    S = "spectrum"
    t = sp.spectrum_table("su2", 50, 2.0)
    e = t.entries
    err = max(max(abs(x.H ** 2 - x.P ** 2 - x.m ** 2) / x.H ** 2, abs(x.ratio - (1 - x.residual))) for x in e)
    checks = [Check(S, "H^2 - P^2 = m^2 and ratio law", float(err), 1e-12)]
    m2 = np.array([x.m ** 2 for x in e])
    r = np.array([x.ratio for x in e])
    shape = float((m2[0] != t.m0 ** 2) + np.sum(np.diff(m2) <= 0) + np.sum(np.diff(r) <= 0))
    checks.append(Check(S, "gap increasing, ratio increasing", shape, 0.0))
    err = 0.0
    for N1 in np.geomspace(2, 1e6, 9):
        err = max(err, abs(sp.integrate_rg(0.2, 2.0, N1) / sp.rg_closed_form(0.2, 2.0, N1) - 1))
    checks.append(Check(S, "flow without remainder", float(err), 1e-8))
    err = 0.0
    for c in np.linspace(1e-4, 0.3, 50):
        for ee in np.linspace(1, 100, 50):
            err = max(err, abs(sp.callan_symanzik_residual(c, ee, 3.0, 1.0)))
    checks.append(Check(S, "Callan-Symanzik residual", float(err), 1e-12))
    rem = sp.Remainder(float(rng.uniform(0.5, 1.5)))
    beta = sp.flow_beta(1.0, rem)
    err = max(abs(sp.callan_symanzik_residual(c, ee, 3.0, 1.0, rem, beta))
              for c in np.linspace(1e-3, 0.2, 10) for ee in np.linspace(1, 100, 10))
    checks.append(Check(S, "Callan-Symanzik residual with remainder", float(err), 1e-12))
    return checks


# ---------------------------------------------------------------- clustering


def suite_clustering(rng: np.random.Generator) -> list:
    S = "clustering"
    res = cl.exhaustive_sign_check(10)
    checks = [Check(S, f"pairing signs, {res['checked']} configurations", float(len(res["failures"])), 0.0)]
    val, exp = cl.yukawa_weak_identity(1.0, 1.0)
    checks.append(Check(S, "screened Poisson identity (weak)", abs(val - exp) / exp, 1e-4))
    checks.append(Check(S, "screened Poisson grid 64^3", cl.screened_poisson_grid(1.0, 0.8)["residual"], 1e-4))
    m0 = float(rng.uniform(0.5, 1.5))
    A = [cl.GaussianFactor((0.0, 0.0), 0.4), cl.GaussianFactor((0.1, 0.0), 0.6)]
    B = [cl.GaussianFactor((0.2, -0.1), 0.3)]
    ds = np.linspace(10, 30, 41)
    hs = [cl.yukawa_cluster_kernel(A, B, (d, 0.0), m0) for d in ds]
    fit = cl.decay_fit(ds, hs)
    checks.append(Check(S, "decay fit recovers the mass", abs(fit.rate / m0 - 1), 0.02))
    err = 0.0
    for _ in range(10):
        a = rng.normal(size=4) * 3
        sh = rng.normal(size=2) * 2
        A2 = [cl.GaussianFactor(tuple(np.add(f.center, sh)), f.width, f.weight) for f in A]
        B2 = [cl.GaussianFactor(tuple(np.add(f.center, sh)), f.width, f.weight) for f in B]
        h1 = cl.h12_kernel(A, B, a, 1.3, 0.6, 2)
        h2 = cl.h12_kernel(A2, B2, a, 1.3, 0.6, 2)
        err = max(err, abs(h1 - h2) / max(abs(h1), 1e-300))
    checks.append(Check(S, "kernel invariant under joint translation", float(err), 1e-12))
    return checks


SUITES: dict = {
    "liealg": suite_liealg,
    "geometry": suite_geometry,
    "hilbert": suite_hilbert,
    "fieldops": suite_fieldops,
    "bargmann": suite_bargmann,
    "spectrum": suite_spectrum,
    "clustering": suite_clustering,
}


def run_suite(name: str, seed: int, tol_scale: float = 1.0) -> list:
    """Run one suite (or "all") and rescale every tolerance by ``tol_scale``."""
    names = list(SUITES) if name == "all" else [name]
    out = []
    for k, nm in enumerate(names):
        fn: Callable = SUITES[nm]
        rng = np.random.default_rng([seed, k])
        for c in fn(rng):
            out.append(Check(c.suite, c.name, c.error, c.tol * tol_scale))
    return out
