import numpy as np
import pytest
from hypothesis import given, strategies as st

from ymsurf import geometry as geo

SIG = [np.eye(2), np.array([[0, 1], [1, 0]]), np.array([[0, -1j], [1j, 0]]), np.array([[1, 0], [0, -1]])]
seeds = st.integers(0, 2 ** 32 - 1)


def conj_oracle(A):
    """Lorentz matrix of X -> A X A^dagger on X = sum x^mu sigma_mu."""
    L = np.zeros((4, 4))
    for nu in range(4):
        Y = A @ SIG[nu] @ A.conj().T
        for mu in range(4):
            L[mu, nu] = 0.5 * np.trace(SIG[mu] @ Y).real
    return L


def test_minkowski_dot_examples():
    assert geo.minkowski_dot(geo.E[0], geo.E[0]) == -1
    assert geo.minkowski_dot([1, 1, 0, 0], [1, 1, 0, 0]) == 0
    assert geo.minkowski_dot([0, 3, 4, 0], [0, 3, 4, 0]) == 25
    assert geo.classify_vector([1, 1, 0, 0]) == "null"
    assert geo.classify_vector([2, 1, 0, 0]) == "timelike"
    assert geo.classify_vector([0, 1, 0, 0]) == "spacelike"


@pytest.mark.parametrize("u,v,kind", [((0.5, 0, 1, 0), (0, 0, 0, 1), "spacelike"),
                                      ((1, 0, 0.5, 0), (0, 0, 0, 1), "timelike"),
                                      ((1, 0, 1, 0), (0, 0, 0, 1), "degenerate")])
def test_classify_surface_examples(u, v, kind):
    assert geo.classify_surface(geo.RectSurface(np.zeros(4), u, v)) == kind


def test_classification_matches_brute_force_infimum():
    for u, kind in [((0.5, 0, 1, 0), "spacelike"), ((1, 0, 0.5, 0), "timelike")]:
        S = geo.RectSurface(np.zeros(4), u, (0, 0, 0, 1))
        assert (geo.infimum_ratio(S) > 1) == (kind == "spacelike")


def test_boost_rotation_basics():
    np.testing.assert_array_equal(geo.boost(1, 0.0), np.eye(4))
    assert geo.lorentz_residual(geo.boost(2, 0.7) @ geo.rotation(1, 1.1)) <= 1e-12
    assert geo.is_restricted_lorentz(geo.rotation(3, 2.0))


@given(st.floats(-3, 3), st.floats(-3, 3))
def test_lambda_theta_identities(th, ph):
    v = geo.lambda_theta(th) @ [0.0, 1.0]
    u = geo.lambda_theta(ph) @ [1.0, 0.0]
    w = geo.lambda_theta(th) @ [1.0, 0.0]
    assert geo.dot2(v, u) == pytest.approx(np.sinh(ph - th), abs=1e-10 * np.cosh(ph - th))
    assert geo.dot2(w, u) == pytest.approx(-np.cosh(ph - th), rel=1e-10)


def test_spinor_map_examples():
    np.testing.assert_allclose(geo.sl2c_to_lorentz(np.eye(2)), np.eye(4), atol=1e-15)
    np.testing.assert_allclose(geo.sl2c_to_lorentz(-np.eye(2)), np.eye(4), atol=1e-15)
    th = 0.83
    A = np.diag([np.exp(th / 2), np.exp(-th / 2)])
    np.testing.assert_allclose(geo.sl2c_to_lorentz(A), conj_oracle(A), atol=1e-13)
    np.testing.assert_allclose(geo.sl2c_to_lorentz(A), geo.boost(3, th), atol=1e-13)
    R = np.diag([np.exp(1j * th / 2), np.exp(-1j * th / 2)])
    L = geo.sl2c_to_lorentz(R)
    np.testing.assert_allclose(L, conj_oracle(R), atol=1e-13)
    # a rotation about x3 fixes e0 and e3 and turns the x1-x2 plane by |theta|
    np.testing.assert_allclose(L[:, [0, 3]], np.eye(4)[:, [0, 3]], atol=1e-13)
    assert np.trace(L[1:3, 1:3]) == pytest.approx(2 * np.cos(th))


@given(seeds)
def test_spinor_map_homomorphism_and_inverse(seed):
    rng = np.random.default_rng(seed)
    A, B = geo.random_sl2c(rng), geo.random_sl2c(rng)
    LA = geo.sl2c_to_lorentz(A)
    np.testing.assert_allclose(geo.sl2c_to_lorentz(A @ B), LA @ geo.sl2c_to_lorentz(B), atol=1e-9 * np.max(np.abs(LA)) ** 2)
    back = geo.lorentz_to_sl2c(LA)
    assert min(np.max(np.abs(back - A)), np.max(np.abs(back + A))) <= 1e-8 * np.max(np.abs(A))
    assert geo.is_restricted_lorentz(LA)


@pytest.mark.parametrize("jk", [(0, 0), (1, 0), (0, 1), (0.5, 0.5), (1, 1)])
def test_spinor_rep_sign_and_homomorphism(jk, rng):
    D = geo.spinor_rep(*jk)
    d = geo.spinor_dim(*jk)
    np.testing.assert_allclose(D(-np.eye(2)), (-1) ** int(round(2 * sum(jk))) * np.eye(d), atol=1e-14)
    A, B = geo.random_sl2c(rng), geo.random_sl2c(rng)
    np.testing.assert_allclose(D(A @ B), D(A) @ D(B), atol=1e-10)
    if jk == (0, 0):
        assert D(A)[0, 0] == pytest.approx(1.0)


def test_vector_spinor_rep_similar_to_lorentz(rng):
    A = geo.random_sl2c(rng)
    ev1 = np.sort_complex(np.linalg.eigvals(geo.spinor_rep(0.5, 0.5)(A)))
    ev2 = np.sort_complex(np.linalg.eigvals(geo.sl2c_to_lorentz(A)))
    np.testing.assert_allclose(ev1, ev2, atol=1e-9)


def test_frame_examples():
    S0 = geo.unit_square_s0()
    fr = geo.minkowski_frame(S0)
    np.testing.assert_allclose(fr.L, np.eye(4), atol=1e-15)
    assert all(k != "lorentz" for k, _ in fr.chain)
    B = geo.boost(1, 0.6)
    frb = geo.minkowski_frame(S0.transformed(B))
    for a in range(4):
        np.testing.assert_allclose(frb.f(a), B @ geo.E[a], atol=1e-13)
    frt = geo.minkowski_frame(S0.transformed(np.eye(4), [0.3, 1, 2, 3]))
    np.testing.assert_allclose(frt.L, np.eye(4), atol=1e-15)
    assert [k for k, _ in frt.chain][-1] == "translation"


def test_canonical_frame_is_frame_of_plane(rng):
    for _ in range(20):
        S = geo.unit_square_s0().transformed(geo.random_lorentz(rng), rng.normal(size=4))
        fr = geo.canonical_frame(S.with_frame(None))
        assert geo.lorentz_residual(fr.L) <= 1e-9
        for a in (0, 1):
            assert abs(geo.minkowski_dot(fr.f(a), S.u)) <= 1e-9 and abs(geo.minkowski_dot(fr.f(a), S.v)) <= 1e-9


def test_area_density_examples():
    d = geo.area_density(tangents=(geo.E[2], geo.E[3]))
    assert d["acute"] == pytest.approx(1.0)
    d = geo.area_density(tangents=(geo.E[0], geo.E[1]))
    assert d["acute"] == pytest.approx(1j)
    d = geo.area_density(lambda s, t: s * 2 * geo.E[2] + t * 3 * geo.E[3], 0.3, 0.4)
    assert d["density"] == pytest.approx(6.0, rel=1e-8)
    assert geo.acute_closed_form(geo.E[0], geo.E[1]) == pytest.approx(1j)


def test_area_and_measure_examples():
    S = geo.unit_square_s0()
    assert geo.area(S) == pytest.approx(1.0)
    assert geo.rho_acute_integral(S)["complex"] == pytest.approx(1.0)
    T = geo.RectSurface(np.zeros(4), geo.E[0], geo.E[1])
    assert abs(geo.rho_acute_integral(T)["complex"] - 1j) <= 1e-12
    with pytest.raises(geo.GeometryError):
        geo.rho_acute_integral(geo.RectSurface(np.zeros(4), (1, 0, 1, 0), geo.E[3]))


@given(seeds, st.sampled_from(["spacelike", "timelike"]))
def test_measure_invariance(seed, kind):
    from ymsurf.suites import random_rect
    rng = np.random.default_rng(seed)
    S = random_rect(rng, kind)
    L = geo.random_lorentz(rng, 1.5)
    a = geo.rho_acute_integral(S)
    b = geo.rho_acute_integral(S.transformed(L, rng.normal(size=4)))
    assert b["abs"] == pytest.approx(a["abs"], rel=1e-9)
    assert geo.classify_surface(S.transformed(L)) == kind


def test_reflection_examples():
    S0 = geo.unit_square_s0()
    m = geo.compose(geo.reflect_spacelike(geo.E[1], np.zeros(4), S0))
    np.testing.assert_allclose(m(geo.E[1]), -geo.E[1], atol=1e-12)
    v = 0.3 * geo.E[0] + geo.E[1]
    m = geo.compose(geo.reflect_spacelike(v, np.zeros(4), S0))
    np.testing.assert_allclose(m(v), -v, atol=1e-12)
    assert geo.lorentz_residual(m.M) <= 1e-12
    with pytest.raises(geo.GeometryError):
        geo.reflect_spacelike(geo.E[0] + 0.2 * geo.E[1], np.zeros(4), S0)


def test_surface_roundtrip(rng):
    S = geo.unit_square_s0(2.0).transformed(geo.random_lorentz(rng), rng.normal(size=4))
    T = geo.RectSurface.from_dict(S.to_dict())
    np.testing.assert_allclose(T.corners(), S.corners())
    assert T.frame.equals(S.frame)
