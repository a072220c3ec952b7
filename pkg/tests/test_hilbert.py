import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from ymsurf import geometry as geo
from ymsurf import hilbert as hb
from ymsurf import liealg as la
from ymsurf.suites import random_coeffs, random_piece_state
from ymsurf.testfn import TestFunction

IR = la.build_irrep("su2", (2,))
FUND = la.build_irrep("su2", (1,))
seeds = st.integers(0, 2 ** 32 - 1)


def one_piece(surface, coeffs, frame=None):
    return hb.SurfaceState((hb.make_piece(surface, coeffs, frame),), 0.0, 1)


def test_vacuum_norm():
    v = hb.SurfaceState.vacuum_state()
    assert hb.inner_product(v, v, IR) == 1


def test_add_states_examples(rng):
    S = geo.unit_square_s0()
    f, g = random_coeffs(rng, 3, 1.0), random_coeffs(rng, 3, 1.0)
    a, b = one_piece(S, f), one_piece(S, g)
    zero = hb.SurfaceState((), 0.0, 1)
    assert hb.state_distance(hb.add_states(a, 1, zero, 1), a, IR) == 0
    s = hb.add_states(a, 1, b, 1)
    assert len(s.pieces) == 1
    Y = rng.uniform(-0.5, 0.5, size=(6, 2))
    for k in range(3):
        np.testing.assert_allclose(s.pieces[0].coeffs[k](Y), f[k](Y) + g[k](Y), atol=1e-13)
    far = one_piece(S.transformed(np.eye(4), [0, 0, 5, 0]), g)
    assert len(hb.add_states(a, 1, far, 1).pieces) == 2


def test_add_states_rejects_overlapping_frames(rng):
    S = geo.unit_square_s0()
    a = one_piece(S, random_coeffs(rng, 3, 1.0))
    b = hb.unitary_action(np.zeros(4), geo.boost(1, 0.4), a, 1.3, 0.6)
    with pytest.raises(hb.StateError):
        hb.add_states(a, 1, b, 1)
    assert len(hb.add_states(a, 1, b, 1, strict=False).pieces) == 2


def test_surface_intersection_examples():
    S = geo.unit_square_s0()
    assert hb.surface_intersection(S, S)["area"] == pytest.approx(1.0, rel=1e-12)
    T = S.transformed(np.eye(4), [0, 0, 0.5, 0])
    assert hb.surface_intersection(S, T)["area"] == pytest.approx(0.5, rel=1e-12)
    X = geo.RectSurface([0, -0.5, 0, -0.5], geo.E[1], geo.E[3])
    assert hb.surface_intersection(S, X) is None
    edge = S.transformed(np.eye(4), [0, 0, 1.0, 0])
    assert hb.surface_intersection(S, edge) is None


def test_unit_coefficient_inner_product():
    # a very wide Gaussian is 1 to within 1e-9 on the unit square
    flat = TestFunction.gaussian([0.0, 0.0], [1e5, 1e5])
    s = one_piece(geo.unit_square_s0(), [flat, TestFunction.zero(2), TestFunction.zero(2)])
    assert hb.pairing_matrix(FUND, 3) == pytest.approx(np.eye(3))
    assert hb.inner_product(s, s, FUND).real == pytest.approx(1.0, rel=1e-9)


def test_boosted_frame_is_orthogonal(rng):
    a = one_piece(geo.unit_square_s0(), random_coeffs(rng, 3, 1.0))
    b = hb.unitary_action(np.zeros(4), geo.boost(1, 0.5), a, 1.3, 0.6)
    np.testing.assert_allclose(b.pieces[0].surface.corners()[:, 2:], a.pieces[0].surface.corners()[:, 2:], atol=1e-12)
    assert hb.inner_product(a, b, IR) == 0


def test_unitary_action_examples(rng):
    H, P = 1.3, 0.6
    a = one_piece(geo.unit_square_s0(), random_coeffs(rng, 3, 1.0))
    same = hb.unitary_action(np.zeros(4), np.eye(2), a, H, P)
    assert hb.state_distance(same, a, IR) == 0
    moved = hb.unitary_action(geo.E[2], np.eye(2), a, H, P)
    np.testing.assert_allclose(moved.pieces[0].surface.origin, a.pieces[0].surface.origin + geo.E[2])
    Y = rng.normal(size=(4, 2))
    np.testing.assert_allclose(moved.pieces[0].coeffs[0](Y), a.pieces[0].coeffs[0](Y), atol=1e-15)
    t = 0.7
    timed = hb.unitary_action(t * geo.E[0], np.eye(2), a, H, P)
    np.testing.assert_allclose(timed.pieces[0].coeffs[1](Y), np.exp(1j * t * H) * a.pieces[0].coeffs[1](Y), atol=1e-14)


@settings(max_examples=15)
@given(seeds)
def test_unitarity(seed):
    from ymsurf.suites import unitarity_error
    assert unitarity_error(np.random.default_rng(seed), 1, IR) <= 1e-7


@settings(max_examples=10)
@given(seeds)
def test_representation_law(seed):
    from ymsurf.suites import composition_error
    assert composition_error(np.random.default_rng(seed), 1, IR) <= 1e-8


@settings(max_examples=15)
@given(seeds, st.complex_numbers(max_magnitude=3), st.complex_numbers(max_magnitude=3))
def test_sesquilinear_and_hermitian(seed, lam, mu):
    rng = np.random.default_rng(seed)
    a = random_piece_state(rng, 3, vacuum=complex(*rng.normal(size=2)))
    S = a.pieces[0].surface
    b = random_piece_state(rng, 3, surface=S, vacuum=complex(*rng.normal(size=2)))
    c = random_piece_state(rng, 3, surface=S)
    ab = hb.add_states(a, lam, b, mu)
    lhs = hb.inner_product(ab, c, IR)
    rhs = lam * hb.inner_product(a, c, IR) + mu * hb.inner_product(b, c, IR)
    assert abs(lhs - rhs) <= 1e-9 * (1 + abs(lam) + abs(mu)) * (1 + hb.norm(a, IR) + hb.norm(b, IR)) * (1 + hb.norm(c, IR))
    assert hb.inner_product(a, b, IR) == pytest.approx(np.conj(hb.inner_product(b, a, IR)), abs=1e-12)
    v = hb.inner_product(a, a, IR)
    assert v.real >= 0 and abs(v.imag) <= 1e-12 * abs(v)
