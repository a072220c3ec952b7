import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from ymsurf.testfn import TestFunction, schwartz_norm

small = st.floats(-1.5, 1.5)
widths = st.floats(0.4, 2.0)


def random_tf(seed, n=2):
    rng = np.random.default_rng(seed)
    return TestFunction.hermite_gaussian(rng.integers(0, 3, n), rng.normal(size=n), rng.uniform(0.5, 1.5, n),
                                         complex(*rng.normal(size=2)))


@given(small, small, widths, widths)
def test_gaussian_integral_closed_form(c0, c1, w0, w1):
    f = TestFunction.gaussian([c0, c1], [w0, w1], 2.0)
    assert f.total_integral() == pytest.approx(2.0 * 2 * np.pi * w0 * w1, rel=1e-12)


@given(widths, st.floats(-3, 3))
def test_fourier_integral_closed_form(w, k):
    f = TestFunction.gaussian([0.0], [w])
    val = f.integrate([0], [k]).value()
    assert val == pytest.approx(w * np.sqrt(2 * np.pi) * np.exp(-k * k * w * w / 2), abs=1e-13)


@given(st.integers(0, 10 ** 6), st.integers(0, 1))
def test_derivative_matches_finite_difference(seed, k):
    f = random_tf(seed)
    x = np.random.default_rng(seed + 1).normal(size=2)
    h = 1e-5
    e = np.zeros(2)
    e[k] = h
    fd = (f((x + e)[None])[0] - f((x - e)[None])[0]) / (2 * h)
    assert f.derivative(k)(x[None])[0] == pytest.approx(fd, abs=1e-7 * (1 + abs(fd)))


@given(st.integers(0, 10 ** 6))
def test_algebra_pointwise(seed):
    f, g = random_tf(seed), random_tf(seed + 7)
    X = np.random.default_rng(seed).normal(size=(5, 2))
    np.testing.assert_allclose((f + g)(X), f(X) + g(X), atol=1e-12)
    np.testing.assert_allclose((f * g)(X), f(X) * g(X), atol=1e-12)
    np.testing.assert_allclose(f.conj()(X), np.conj(f(X)), atol=1e-12)
    np.testing.assert_allclose(f.scale(2j)(X), 2j * f(X), atol=1e-12)
    T = f.tensor(g)
    Y = np.concatenate([X, X[::-1]], axis=1)
    np.testing.assert_allclose(T(Y), f(X) * g(X[::-1]), atol=1e-12)


@given(st.integers(0, 10 ** 6))
def test_pullback_and_shift(seed):
    rng = np.random.default_rng(seed)
    f = random_tf(seed)
    M = rng.normal(size=(2, 2)) + 2 * np.eye(2)
    p = rng.normal(size=2)
    Y = rng.normal(size=(4, 2))
    np.testing.assert_allclose(f.pullback(M, p)(Y), f(Y @ M.T + p), atol=1e-11)
    np.testing.assert_allclose(f.shifted(p)(Y), f(Y - p), atol=1e-11)


def test_partial_integration_matches_quadrature():
    f = TestFunction.hermite_gaussian([1, 2], [0.2, -0.3], [0.8, 1.1], 1.5)
    z = np.array([[0.4]])
    g = f.integrate([0])
    x, w = np.polynomial.hermite_e.hermegauss(60)
    xs = 0.2 + 0.8 * x
    vals = f(np.column_stack([xs, np.full_like(xs, z[0, 0])]))
    quad = np.sum(w * vals * np.exp(x ** 2 / 2) * np.exp(-x ** 2 / 2)) * 0.8
    assert g(z)[0] == pytest.approx(quad, rel=1e-10)


def test_schwartz_norm_examples():
    assert schwartz_norm(TestFunction.zero(4), 2, 2) == 0
    f = TestFunction.gaussian(np.zeros(4), np.ones(4), (2 * np.pi) ** -2)
    assert schwartz_norm(f, 0, 0) == pytest.approx((2 * np.pi) ** -2, rel=1e-9)


@settings(max_examples=8)
@given(st.integers(0, 10 ** 6))
def test_schwartz_norm_monotone(seed):
    f = random_tf(seed)
    a = schwartz_norm(f, 0, 0)
    assert a <= schwartz_norm(f, 1, 0) + 1e-12
    assert a <= schwartz_norm(f, 0, 1) + 1e-12
