"""Hamiltonian, momentum and mass-gap tables and the coupling-constant flow.

The trace of the error term is not computable at desk scale; it is modelled
by :class:`EpsilonModel`, which stays inside the two-sided bound
``c_low C / kappa^4 <= Tr eps <= c_high C / kappa^4`` and scales across
irreps by ``C(rho_n) / C(rho_1)``.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from typing import Callable

import numpy as np
from scipy.integrate import solve_ivp

from .liealg import Irrep, build_irrep, su3_casimir, su3_dim


class SpectrumError(ValueError):
    """Raised for invalid spectrum input or a violated invariant."""


ABELIAN_MESSAGE = "spectrum unbounded construction unavailable: u(1) is abelian and has a single irrep up to scale"


# ---------------------------------------------------------------- irreps


def enumerate_irreps(algebra: str, count: int) -> list:
    """The first ``count`` non-trivial irreps sorted by (Casimir, dim, weight)."""
    if count < 1:
        raise SpectrumError("count must be at least 1")
    if algebra == "u1":
        raise SpectrumError(ABELIAN_MESSAGE)
    if algebra == "su2":
        return [build_irrep("su2", (k,)) for k in range(1, count + 1)]
    if algebra == "su3":
        # grow the (p, q) triangle until the count-th Casimir is below every unseen one
        side = 1
        while True:
            cands = [(round(su3_casimir(p, q), 9), su3_dim(p, q), (p, q))
                     for p in range(side + 1) for q in range(side + 1 - p) if (p, q) != (0, 0)]
            cands.sort()
            if len(cands) >= count and cands[count - 1][0] <= su3_casimir(side, 0):
                break
            side += 1
        return [build_irrep("su3", w, explicit=False) if w not in ((1, 0), (0, 1), (1, 1))
                else build_irrep("su3", w) for _, _, w in cands[:count]]
    raise SpectrumError(f"unsupported algebra {algebra!r}")


def hamiltonian_eigenvalue(irrep: Irrep, tol: float = 1e-9) -> float:
    """sqrt(dim C2 / 4), cross-checked against sqrt(N C / 4)."""
    if irrep.is_trivial:
        return 0.0
    h2 = irrep.dim * irrep.casimir / 4.0
    alt = irrep.N * irrep.rep_constant / 4.0
    if abs(h2 - alt) > tol * max(1.0, h2):
        raise SpectrumError("dim C2 and N C disagree")
    return float(np.sqrt(h2))


def kappa_n(dim: float, C_hat: float, C_n: float = 0.0, bound: float | None = None) -> float:
    """C_hat dim^{1/4} + C_n."""
    if C_hat <= 1:
        raise SpectrumError("C_hat must exceed 1")
    if bound is not None and abs(C_n) > bound:
        raise SpectrumError("|C_n| exceeds the configured remainder bound")
    return float(C_hat * dim ** 0.25 + C_n)


# ---------------------------------------------------------------- epsilon model


@dataclass(frozen=True)
class EpsilonModel:
    c_low: float = 1.0
    c_high: float = 1.0
    lam_bar: float = 1.0
    remainder_scale: float = 0.0
    mode: str = "midpoint"
    custom: Callable | None = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        if not (0 < self.c_low <= self.c_high):
            raise SpectrumError("need 0 < c_low <= c_high")
        if self.mode not in ("midpoint", "custom"):
            raise SpectrumError("mode must be midpoint or custom")
        if self.mode == "custom" and self.custom is None:
            raise SpectrumError("custom mode needs a callable")

    def trace_unit(self, kappa: float) -> float:
        """Tr eps(1, kappa) / C(rho_1)."""
        if kappa <= 0:
            raise SpectrumError("kappa must be positive")
        if self.mode == "midpoint":
            val = 0.5 * (self.c_low + self.c_high) / kappa ** 4
        else:
            val = float(self.custom(kappa))
        lo, hi = self.c_low / kappa ** 4, self.c_high / kappa ** 4
        if not (lo * (1 - 1e-12) <= val <= hi * (1 + 1e-12)):
            raise SpectrumError("epsilon model leaves its two-sided bound")
        return val

    def trace(self, C_n: float, C_1: float, kappa: float) -> float:
        """Tr eps(n, kappa) = (C_n / C_1) Tr eps(1, kappa)."""
        return (C_n / C_1) * (C_1 * self.trace_unit(kappa))

    def to_dict(self) -> dict:
        return {"c_low": self.c_low, "c_high": self.c_high, "lam_bar": self.lam_bar,
                "remainder_scale": self.remainder_scale, "mode": self.mode}


def mass_gap(irrep: Irrep, kappa: float, model: EpsilonModel, C_1: float | None = None) -> float:
    """m_n = sqrt(Tr eps(n, kappa_n))."""
    C1 = irrep.rep_constant if C_1 is None else C_1
    return float(np.sqrt(model.trace(irrep.rep_constant, C1, kappa)))


# ---------------------------------------------------------------- table


@dataclass(frozen=True)
class SpectrumEntry:
    n: int
    weight: tuple
    dim: int
    casimir: float
    rep_constant: float
    H: float
    kappa: float
    m: float
    P: float

    @property
    def ratio(self) -> float:
        """P^2 / H^2."""
        return self.P ** 2 / self.H ** 2

    @property
    def residual(self) -> float:
        """m^2 / H^2, the gap term in P^2/H^2 - 1 = -m^2/H^2."""
        return self.m ** 2 / self.H ** 2


def momentum_eigenvalue(H: float, m: float) -> float:
    if H == 0:
        return 0.0
    if m >= H:
        raise SpectrumError("mass gap reaches the energy; momentum undefined")
    return float(np.sqrt(H * H - m * m))


def jitter(n: int, bound: float) -> float:
    """Deterministic bounded remainder for robustness runs."""
    return bound * np.sin(1.7 * n)


@dataclass(frozen=True)
class SpectrumTable:
    algebra: str
    C_hat: float
    model: EpsilonModel
    entries: tuple

    @property
    def m0(self) -> float:
        return min(e.m for e in self.entries)

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\r\n")
        w.writerow(["n", "weight", "dim", "casimir", "H", "kappa", "m", "P", "ratio"])
        for e in self.entries:
            w.writerow([e.n, " ".join(str(x) for x in e.weight), e.dim, repr(e.casimir), repr(e.H),
                        repr(e.kappa), repr(e.m), repr(e.P), repr(e.ratio)])
        return buf.getvalue()

    def to_dict(self) -> dict:
        rows = []
        for e in self.entries:
            rows.append({"n": e.n, "weight": list(e.weight), "dim": e.dim, "casimir": e.casimir,
                         "H": e.H, "kappa": e.kappa, "m": e.m, "P": e.P, "ratio": e.ratio})
        return {"algebra": self.algebra, "C_hat": self.C_hat, "model": self.model.to_dict(),
                "m0": self.m0, "entries": rows}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)


def spectrum_table(algebra: str, count: int, C_hat: float = 2.0, model: EpsilonModel | None = None,
                   C_n: Callable | None = None) -> SpectrumTable:
    """Rows (n, dim, C2, H, kappa_n, m_n, P) for the first ``count`` irreps."""
    if algebra == "u1":
        raise SpectrumError(ABELIAN_MESSAGE)
    model = EpsilonModel() if model is None else model
    irreps = enumerate_irreps(algebra, count)
    C1 = irreps[0].rep_constant
    entries = []
    for n, ir in enumerate(irreps, start=1):
        H = hamiltonian_eigenvalue(ir)
        k = kappa_n(ir.dim, C_hat, 0.0 if C_n is None else C_n(n))
        m = mass_gap(ir, k, model, C1)
        P = momentum_eigenvalue(H, m)
        entries.append(SpectrumEntry(n, ir.label, ir.dim, ir.casimir, ir.rep_constant, H, k, m, P))
    table = SpectrumTable(algebra, C_hat, model, tuple(entries))
    if table.m0 <= 0:
        raise SpectrumError("non-positive mass gap")
    if any(b.m < a.m * (1 - 1e-12) for a, b in zip(entries, entries[1:])):
        raise SpectrumError("mass gaps decrease along the Casimir ordering")
    return table


# ---------------------------------------------------------------- flow


def beta(c: float, lam: Callable | None = None) -> float:
    """-c/4 + lambda(c)."""
    return -c / 4.0 + (0.0 if lam is None else lam(c))


def integrate_rg(c0: float, N0: float, N1: float, lam: Callable | None = None,
                 rtol: float = 1e-12) -> float:
    """Solve dc/d(ln N) = beta(c) from N0 to N1."""
    if c0 <= 0:
        raise SpectrumError("initial coupling must be positive")
    t0, t1 = np.log(N0), np.log(N1)
    if t0 == t1:
        return float(c0)
    sol = solve_ivp(lambda t, y: [beta(y[0], lam)], (t0, t1), [c0], method="DOP853",
                    rtol=rtol, atol=1e-300)
    if not sol.success:
        raise SpectrumError(f"flow integration failed: {sol.message}")
    return float(sol.y[0, -1])


def rg_closed_form(c0: float, N0: float, N1: float) -> float:
    """Solution for lambda = 0: c0 (N0 / N1)^{1/4}."""
    return float(c0 * (N0 / N1) ** 0.25)


# ---------------------------------------------------------------- two-point model


@dataclass(frozen=True)
class Remainder:
    """f(c^5) = a c^5 with derivative 5 a c^4."""

    a: float = 1.0

    def f(self, c: float) -> float:
        return self.a * c ** 5

    def df(self, c: float) -> float:
        return 5 * self.a * c ** 4


def g2_model(c: float, e: float, dim: float, lam_bar: float, rem: Remainder | None = None) -> float:
    """dim / e - c^4 lam_bar + f(c^5)."""
    if e <= 0:
        raise SpectrumError("scale e must be positive")
    f = 0.0 if rem is None else rem.f(c)
    return dim / e - c ** 4 * lam_bar + f


def g2_partials(c: float, e: float, dim: float, lam_bar: float, rem: Remainder | None = None):
    de = -dim / e ** 2
    dc = -4 * c ** 3 * lam_bar + (0.0 if rem is None else rem.df(c))
    return de, dc


def lambda_from_remainder(c: float, lam_bar: float, rem: Remainder) -> float:
    """lambda(c) = [(c/4) f' - f] / (-4 c^3 lam_bar + f')."""
    den = -4 * c ** 3 * lam_bar + rem.df(c)
    if den == 0:
        raise SpectrumError("denominator vanishes; coupling too large")
    return (0.25 * c * rem.df(c) - rem.f(c)) / den


def callan_symanzik_residual(c: float, e: float, dim: float, lam_bar: float,
                             rem: Remainder | None = None, beta_fn: Callable | None = None,
                             gamma: float = 0.5) -> float:
    """e dG/de + beta(c) dG/dc + 2 gamma G."""
    b = beta(c) if beta_fn is None else beta_fn(c)
    G = g2_model(c, e, dim, lam_bar, rem)
    de, dc = g2_partials(c, e, dim, lam_bar, rem)
    return e * de + b * dc + 2 * gamma * G


def flow_beta(lam_bar: float, rem: Remainder | None = None) -> Callable:
    """beta(c) = -c/4 + lambda(c) with lambda solving the flow equation for the given remainder."""
    if rem is None or rem.a == 0:
        return lambda c: -c / 4.0
    return lambda c: -c / 4.0 + lambda_from_remainder(c, lam_bar, rem)
