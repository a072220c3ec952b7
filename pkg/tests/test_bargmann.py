import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy.integrate import quad

from ymsurf import bargmann as bg
from ymsurf import liealg as la
from ymsurf.suites import fd_curvature_error, random_hermite_coeffs
from ymsurf.testfn import GaussTerm, TestFunction

seeds = st.integers(0, 2 ** 32 - 1)
ST2 = la.structure_constants(la.su2_basis())


def fock_moment(n):
    """int_C |z|^{2n} e^{-|z|^2} d^2z / pi by radial quadrature."""
    return quad(lambda r: 2 * r ** (2 * n + 1) * np.exp(-r * r), 0, np.inf)[0]


def test_h2_inner_examples():
    one = bg.PolyFock.monomial((0, 0, 0, 0))
    z2 = bg.PolyFock.monomial((2, 0, 0, 0))
    z1 = bg.PolyFock.monomial((1, 0, 0, 0))
    assert bg.h2_inner(one, one) == 1
    assert bg.h2_inner(z2, z2) == pytest.approx(fock_moment(2), rel=1e-10)
    assert bg.h2_inner(z2, z2) == pytest.approx(2.0)
    assert bg.h2_inner(z1, z2) == 0


def test_frak_d_examples():
    one = bg.PolyFock.monomial((0, 0, 0, 0))
    assert bg.frak_d(0, one).coeffs == {(1, 0, 0, 0): -0.5}
    out = bg.frak_d(0, bg.PolyFock.monomial((1, 0, 0, 0)))
    assert out.coeffs == {(0, 0, 0, 0): 0.5, (2, 0, 0, 0): -0.5}


def test_frak_d_degree_eight_exact():
    for a in range(4):
        for p in range(9):
            idx = [0] * 4
            idx[a] = p
            out = bg.frak_d(a, bg.PolyFock.monomial(idx, cap=9))
            want = {}
            up = list(idx)
            up[a] += 1
            want[tuple(up)] = -0.5
            if p:
                dn = list(idx)
                dn[a] -= 1
                want[tuple(dn)] = p / 2
            assert out.coeffs == want


@given(seeds, st.integers(0, 3))
def test_frak_d_linear(seed, a):
    rng = np.random.default_rng(seed)
    p = bg.PolyFock({tuple(rng.integers(0, 5, 4)): complex(*rng.normal(size=2)) for _ in range(4)})
    q = bg.PolyFock({tuple(rng.integers(0, 5, 4)): complex(*rng.normal(size=2)) for _ in range(4)})
    x, y = complex(*rng.normal(size=2)), complex(*rng.normal(size=2))
    lhs = bg.frak_d(a, p.scale(x) + q.scale(y))
    rhs = bg.frak_d(a, p).scale(x) + bg.frak_d(a, q).scale(y)
    diff = lhs - rhs
    assert diff.is_zero(1e-12)


def test_segal_bargmann_basis():
    assert bg.segal_bargmann((0, 0, 0, 0)).coeffs == {(0, 0, 0, 0): 1.0}
    idx = [(i, j, k, l) for i in range(3) for j in range(3) for k in range(2) for l in range(2)]
    for I in idx:
        for J in idx:
            assert bg.h2_inner(bg.segal_bargmann(I), bg.segal_bargmann(J)) == pytest.approx(float(I == J), abs=1e-14)


def test_hermite_functions_orthonormal():
    idx = [(0, 0, 0, 0), (1, 0, 0, 0), (2, 1, 0, 0), (0, 3, 1, 0), (1, 1, 1, 1), (4, 0, 0, 0)]
    for kappa in (0.7, 1.6):
        for I in idx:
            for J in idx:
                v = (bg.hermite_function(I, kappa) * bg.hermite_function(J, kappa)).total_integral()
                assert v == pytest.approx(float(I == J), abs=1e-12)


@pytest.mark.parametrize("I", [(0, 0, 0, 0), (1, 0, 2, 0), (2, 1, 0, 1), (4, 0, 0, 0), (1, 1, 1, 1)])
def test_derivative_intertwines_with_frak_d(I):
    kappa = 1.4
    for a in range(4):
        dI = bg.hermite_function(I, kappa).derivative(a)
        coeffs = {}
        for step in (-1, 1):
            J = list(I)
            J[a] += step
            if J[a] >= 0:
                coeffs[tuple(J)] = (dI * bg.hermite_function(J, kappa)).total_integral().real
        # the two neighbours exhaust the derivative
        assert sum(c * c for c in coeffs.values()) == pytest.approx((dI * dI).total_integral().real, rel=1e-12)
        lhs = bg.segal_bargmann_field(coeffs)
        rhs = bg.frak_d(a, bg.segal_bargmann(I)).scale(kappa)
        assert (lhs - rhs).is_zero(1e-12)


def test_curvature_abelian_has_no_quadratic_block(rng):
    A = bg.to_x(random_hermite_coeffs(rng, 3, terms=1), 3, 1.2)
    zero = la.StructureTensor(np.zeros((3, 3, 3)))
    blocks = bg.curvature_blocks(A, zero)
    assert all(v.is_zero for (kind, _, _), v in blocks.items() if kind == "quad")


def test_curvature_of_constant_field_is_the_bracket_block(rng):
    vals = {(i, al): float(rng.normal()) for i in bg.SPATIAL for al in range(3)}
    const = {k: TestFunction(4, (GaussTerm.make(np.zeros((4, 4)), np.zeros(4), 0.0, {(0, 0, 0, 0): v}),))
             for k, v in vals.items()}
    F = bg.curvature(bg.GaugeOneForm(const, 3), ST2)
    x = rng.normal(size=(1, 4))
    for g in range(3):
        for j in bg.SPATIAL:
            assert F.block((0, j), g).is_zero
        for i, j in bg.SPACE_PAIRS:
            want = sum(ST2.c[g, a, b] * vals[(i, a)] * vals[(j, b)] for a in range(3) for b in range(3))
            assert F.block((i, j), g)(x)[0] == pytest.approx(want, abs=1e-13)


@settings(max_examples=5)
@given(seeds)
def test_curvature_matches_finite_differences(seed):
    rng = np.random.default_rng(seed)
    A = bg.to_x(random_hermite_coeffs(rng, 3, terms=1, max_deg=1), 3, rng.uniform(0.8, 1.5))
    assert fd_curvature_error(rng, A, ST2, points=2) <= 1e-8


def test_action_zero_field():
    assert bg.ym_action(bg.GaugeOneForm({}, 3), ST2) == 0


def test_abelian_single_component_action_quadrature():
    c = np.array([0.1, -0.2, 0.3, 0.0])
    s, w = 0.8, 1.7
    a1 = TestFunction.gaussian(c, [s] * 4, w)
    A = bg.GaugeOneForm({(1, 0): a1}, 1)
    action = bg.ym_action(A, la.StructureTensor(np.zeros((1, 1, 1))))
    # (d0 a1)^2 + (d2 a1)^2 + (d3 a1)^2 by tensor Gauss-Hermite quadrature
    t, wt = np.polynomial.hermite_e.hermegauss(24)
    X = np.stack(np.meshgrid(*[c[k] + s * t for k in range(4)], indexing="ij"), -1).reshape(-1, 4)
    W = np.einsum("i,j,k,l->ijkl", wt, wt, wt, wt).reshape(-1) * s ** 4
    base = w * np.exp(-np.sum((X - c) ** 2, axis=1) / (2 * s * s))
    grads = [-(X[:, k] - c[k]) / s ** 2 * base for k in (0, 2, 3)]
    # the hermegauss weight already carries exp(-t^2/2); divide it back out once
    corr = np.exp(np.sum(((X - c) / s) ** 2, axis=1) / 2)
    oracle = sum(np.sum(W * corr * g * g) for g in grads)
    assert action == pytest.approx(oracle, rel=1e-8)


@settings(max_examples=5)
@given(seeds)
def test_isometry_of_d(seed):
    rng = np.random.default_rng(seed)
    coeffs = random_hermite_coeffs(rng, 3, terms=2)
    k = rng.uniform(0.6, 2.0)
    lhs = bg.two_form_norm2(bg.d_x(bg.to_x(coeffs, 3, k)))
    rhs = k ** 2 * bg.two_form_norm2(bg.d_fock(bg.to_fock(coeffs, 3)))
    assert lhs == pytest.approx(rhs, rel=1e-8)


@settings(max_examples=5)
@given(seeds)
def test_action_expansion_and_fock_mode(seed):
    rng = np.random.default_rng(seed)
    coeffs = random_hermite_coeffs(rng, 3, terms=1, max_deg=1)
    k = rng.uniform(0.8, 1.5)
    A = bg.to_x(coeffs, 3, k)
    total = bg.ym_action(A, ST2, k)
    assert total >= 0
    assert bg.ym_action_expanded(A, ST2, k)["total"] == pytest.approx(total, rel=1e-12)
    # the linear part also agrees between x space and Fock space
    fock = bg.ym_action(bg.to_fock(coeffs, 3), la.StructureTensor(np.zeros((3, 3, 3))), k, mode="fock")
    xs = bg.ym_action(A, la.StructureTensor(np.zeros((3, 3, 3))), k)
    assert fock == pytest.approx(xs, rel=1e-8)
