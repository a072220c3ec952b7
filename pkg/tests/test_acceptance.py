"""One test per acceptance criterion, each at its stated tolerance.

Every test records a single PASS/FAIL line that is echoed in the pytest
terminal summary.
"""

import subprocess
import sys
import time

import numpy as np
import pytest

from conftest import ACCEPTANCE_LINES
from ymsurf import bargmann as bg
from ymsurf import clustering as cl
from ymsurf import fieldops as fo
from ymsurf import geometry as geo
from ymsurf import hilbert as hb
from ymsurf import liealg as la
from ymsurf import spectrum as sp
from ymsurf import suites
from ymsurf.testfn import TestFunction


def report(k, ok, detail):
    line = f"criterion {k}: {'PASS' if ok else 'FAIL'}  {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)
    assert ok, line


def test_criterion_01_gell_mann_table():
    t = time.perf_counter()
    err = suites.gell_mann_table_error()
    dt = time.perf_counter() - t
    report(1, err <= 1e-12 and dt < 1.0, f"max entry error {err:.2e}, {dt:.3f}s")


def test_criterion_02_casimir_consistency():
    irreps = suites.explicit_irreps()
    irreps += [la.build_irrep("su3", (p, q), explicit=False) for p in range(4) for q in range(4) if p + q > 0]
    rel = max(abs(r.casimir * r.dim - r.N * r.rep_constant) / max(1.0, r.N * r.rep_constant) for r in irreps)
    scal = max(la.casimir_deviation(r) for r in irreps if not r.formula_only)
    E = la.su2_basis().stack()
    brute = np.real(-sum(m @ m for m in E))[0, 0]
    half = la.build_irrep("su2", (1,)).casimir
    ok = rel <= 1e-9 and scal <= 1e-9 and abs(brute - 1.5) <= 1e-12 and abs(half - 1.5) <= 1e-12
    report(2, ok, f"|C2 dim - N C| rel {rel:.2e}, scalar dev {scal:.2e}, j=1/2 brute C2 {brute:.12f}")


def test_criterion_03_lorentz_invariant_measure():
    rng = np.random.default_rng(3)
    err = suites.measure_invariance(rng, 500)
    tl = geo.rho_acute_integral(geo.RectSurface(np.zeros(4), geo.E[0], geo.E[1]))["complex"]
    report(3, err <= 1e-8 and abs(tl - 1j) <= 1e-12,
           f"500 pairs max rel drift {err:.2e}, time-like square {abs(tl - 1j):.1e} from i")


def test_criterion_04_unitarity_and_representation_law():
    rng = np.random.default_rng(4)
    ir = la.build_irrep("su2", (2,))
    t = time.perf_counter()
    u = suites.unitarity_error(rng, 100, ir)
    c = suites.composition_error(rng, 100, ir)
    dt = time.perf_counter() - t
    report(4, u <= 1e-7 and c <= 1e-8 and dt < 30, f"inner-product drift {u:.2e}, composition drift {c:.2e}, {dt:.1f}s")


def test_criterion_05_gaussian_lift():
    rng = np.random.default_rng(5)
    H, P = 1.3, 0.6
    worst = 0.0
    for _ in range(20):
        f2 = TestFunction.hermite_gaussian(rng.integers(0, 4, 2), rng.normal(size=2), rng.uniform(0.4, 1.5, 2),
                                           complex(*rng.normal(size=2)))
        h = fo.pft_chart(fo.gaussian_lift(f2, H, P), geo.IDENTITY_FRAME, H, P)
        Y = rng.normal(size=(10, 2)) * 2
        worst = max(worst, float(np.max(np.abs(h(Y) - f2(Y)))))
    report(5, worst <= 1e-9, f"20 Hermite-Gaussians, max deviation {worst:.2e}")


def test_criterion_06_commutator_nullity():
    rng = np.random.default_rng(6)
    ratios = []
    for irrep, cases in ((la.build_irrep("su2", (2,)), 35), (la.build_irrep("su3", (1, 1)), 15)):
        ctx = fo.field_context(irrep, 1.3, 0.6)
        for case in suites.commutator_cases(rng, ctx, cases, None):
            ratios.append((case[0] == case[1], suites.commutator_norm_ratio(ctx, *case)))
    worst = max(r for _, r in ratios)
    same = max(r for eq, r in ratios if eq)
    mixed = [r for eq, r in ratios if not eq]
    null_max, generic_min = suites.local_defect_errors(rng, 50)
    ok = worst <= 1e-9 and null_max <= 1e-12 and generic_min > 1e-3
    report(6, ok, f"50 cases max |[phi,phi]s|/|s| {worst:.2e} (equal index {same:.1e}, "
                  f"{len(mixed)} mixed-index cases min {min(mixed):.2e}); "
                  f"null defect {null_max:.1e}, generic min {generic_min:.2e}")


def test_criterion_07_spectrum_shape():
    t = sp.spectrum_table("su2", 50, 2.0, sp.EpsilonModel())
    e = t.entries
    m2 = np.array([x.m ** 2 for x in e])
    r = np.array([x.ratio for x in e])
    law = max(abs(x.ratio - (1 - x.m ** 2 / x.H ** 2)) for x in e)
    try:
        sp.spectrum_table("u1", 5)
        abelian = False
    except sp.SpectrumError as exc:
        abelian = "unavailable" in str(exc)
    ok = (np.all(m2 > 0) and t.m0 == e[0].m and np.all(np.diff(m2) > 0) and m2[-1] / m2[0] > 100
          and np.all(np.diff(r) > 0) and 1 - r[-1] < 1e-2 and law <= 1e-12 and abelian)
    report(7, ok, f"m0 {t.m0:.4f}, m^2 x{m2[-1] / m2[0]:.0f} over table, last ratio {r[-1]:.6f}, "
                  f"ratio law {law:.1e}, abelian rejected {abelian}")


def test_criterion_08_flow():
    N1s = np.geomspace(2, 1e6, 60)
    flow = max(abs(sp.integrate_rg(0.2, 2.0, N1) / sp.rg_closed_form(0.2, 2.0, N1) - 1) for N1 in N1s)
    cs = max(abs(sp.callan_symanzik_residual(c, ee, 3.0, 1.0, beta_fn=lambda x: -x / 4, gamma=0.5))
             for c in np.linspace(1e-4, 0.5, 50) for ee in np.linspace(0.5, 100, 50))
    rem = sp.Remainder(1.0)
    b = sp.flow_beta(1.0, rem)
    cs = max(cs, max(abs(sp.callan_symanzik_residual(c, ee, 3.0, 1.0, rem=rem, beta_fn=b, gamma=0.5))
                     for c in np.linspace(1e-4, 0.5, 50) for ee in np.linspace(0.5, 100, 50)))
    report(8, flow <= 1e-8 and cs <= 1e-12, f"flow rel error {flow:.2e}, Callan-Symanzik residual {cs:.2e}")


def test_criterion_09_bargmann_sector():
    checks = {c.name: c.error for c in suites.suite_bargmann(np.random.default_rng(9))}
    rng = np.random.default_rng(91)
    iso = 0.0
    for _ in range(20):
        coeffs = suites.random_hermite_coeffs(rng, 3, terms=3, max_deg=3)
        k = rng.uniform(0.5, 2.0)
        lhs = bg.two_form_norm2(bg.d_x(bg.to_x(coeffs, 3, k)))
        rhs = k ** 2 * bg.two_form_norm2(bg.d_fock(bg.to_fock(coeffs, 3)))
        iso = max(iso, abs(lhs - rhs) / rhs)
    ok = (checks["frak_d monomial rule"] == 0 and checks["Hermite and Fock orthonormality"] <= 1e-12
          and iso <= 1e-8 and checks["curvature vs finite differences"] <= 1e-8)
    report(9, ok, f"frak_d exact {checks['frak_d monomial rule']:.0e}, orthonormality "
                  f"{checks['Hermite and Fock orthonormality']:.1e}, isometry {iso:.1e}, "
                  f"curvature vs FD {checks['curvature vs finite differences']:.1e}")


def test_criterion_10_clustering():
    grid = cl.screened_poisson_grid(1.0, 0.8)["residual"]
    m0 = 0.9
    A = [cl.GaussianFactor((0.0, 0.0), 0.4), cl.GaussianFactor((0.1, 0.0), 0.6)]
    B = [cl.GaussianFactor((0.2, -0.1), 0.3)]
    ds = np.linspace(10, 30, 41)
    rate = cl.decay_fit(ds, [cl.yukawa_cluster_kernel(A, B, (d, 0.0), m0) for d in ds]).rate
    signs = cl.exhaustive_sign_check(10)
    ok = grid <= 1e-4 and abs(rate / m0 - 1) <= 0.02 and not signs["failures"]
    report(10, ok, f"grid residual {grid:.1e}, fitted rate {rate:.5f} vs {m0}, "
                   f"{signs['checked']} sign configurations, {len(signs['failures'])} failures")


def test_criterion_11_end_to_end():
    outs, times, codes = [], [], []
    for _ in range(2):
        t = time.perf_counter()
        p = subprocess.run([sys.executable, "-m", "ymsurf.cli", "verify", "all", "--seed", "42"],
                           capture_output=True, text=True)
        times.append(time.perf_counter() - t)
        codes.append(p.returncode)
        outs.append(p.stdout)
    ok = codes == [0, 0] and outs[0] == outs[1] and max(times) < 300
    report(11, ok, f"exit codes {codes}, identical {outs[0] == outs[1]}, slowest run {max(times):.1f}s")
