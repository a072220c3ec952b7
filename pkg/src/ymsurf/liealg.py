"""Skew-Hermitian matrix Lie algebras su(2) and su(3).

Bases, the trace form, structure constants, a handful of irreducible
representations and their Casimir invariants.  The canonical orthonormal
bases are ``{i sigma_a / sqrt 2}`` for su(2) and ``{lambda_a / sqrt 2}`` for
su(3), orthonormal for ``<A, B> = -Re Tr[AB]``.  With that normalization the
su(2) spin-j Casimir is ``2 j (j + 1)``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .config import DEFAULT

SQ2 = np.sqrt(2.0)
SQ3 = np.sqrt(3.0)


class LieError(ValueError):
    """Raised for invalid Lie-algebra input."""


@dataclass(frozen=True)
class LieElement:
    """A complex square matrix expected to be skew-Hermitian."""

    matrix: np.ndarray

    def __post_init__(self):
        m = np.asarray(self.matrix, dtype=complex)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise LieError("Lie element must be a square matrix")
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def is_skew(self, tol: float = DEFAULT.skew) -> bool:
        return bool(np.max(np.abs(self.matrix + self.matrix.conj().T), initial=0.0) <= tol)

    def __add__(self, other):
        return LieElement(self.matrix + _mat(other))

    def __sub__(self, other):
        return LieElement(self.matrix - _mat(other))

    def __neg__(self):
        return LieElement(-self.matrix)

    def __mul__(self, scalar):
        return LieElement(self.matrix * scalar)

    __rmul__ = __mul__


def _mat(x) -> np.ndarray:
    return x.matrix if isinstance(x, LieElement) else np.asarray(x, dtype=complex)


@dataclass(frozen=True)
class LieBasis:
    """Ordered list of Lie elements with their trace-form Gram matrix."""

    elements: tuple
    name: str = ""
    gram: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        els = tuple(e if isinstance(e, LieElement) else LieElement(e) for e in self.elements)
        if not els:
            raise LieError("empty basis")
        d = els[0].dim
        if any(e.dim != d for e in els):
            raise LieError("basis elements have different sizes")
        object.__setattr__(self, "elements", els)
        g = np.array([[trace_form(a, b) for b in els] for a in els])
        object.__setattr__(self, "gram", g)

    def __len__(self):
        return len(self.elements)

    def __getitem__(self, i):
        return self.elements[i]

    def __iter__(self):
        return iter(self.elements)

    @property
    def N(self) -> int:
        return len(self.elements)

    @property
    def dim(self) -> int:
        return self.elements[0].dim

    def stack(self) -> np.ndarray:
        return np.stack([e.matrix for e in self.elements])

    def is_orthonormal(self, tol: float = DEFAULT.gram) -> bool:
        return bool(np.max(np.abs(self.gram - np.eye(self.N))) <= tol)

    def normalized(self) -> "LieBasis":
        """Rescale each element to unit trace-form length."""
        return LieBasis(tuple(e * (1.0 / np.sqrt(trace_form(e, e))) for e in self.elements),
                        name=self.name + "/normalized")

    def coords(self, x) -> np.ndarray:
        """Real coordinates of ``x`` in an orthonormal basis."""
        return np.array([trace_form(e, x) for e in self.elements])


@dataclass(frozen=True)
class StructureTensor:
    """c[g, a, b] with [E^a, E^b] = sum_g c[g, a, b] E^g."""

    c: np.ndarray

    @property
    def N(self) -> int:
        return self.c.shape[0]

    def jacobi_residual(self) -> float:
        # sum_d c[d,a,b] c[e,d,g] + cyclic(a,b,g) = 0
        c = self.c
        t = np.einsum("dab,edg->eabg", c, c)
        r = t + np.transpose(t, (0, 2, 3, 1)) + np.transpose(t, (0, 3, 1, 2))
        return float(np.max(np.abs(r), initial=0.0))

    def antisymmetry_residual(self) -> float:
        c = self.c
        r1 = np.max(np.abs(c + np.transpose(c, (0, 2, 1))), initial=0.0)
        r2 = np.max(np.abs(c + np.transpose(c, (1, 0, 2))), initial=0.0)
        return float(max(r1, r2))


def trace_form(a, b) -> float:
    """Return ``-Re Tr[AB]``."""
    A, B = _mat(a), _mat(b)
    if A.shape != B.shape:
        raise LieError(f"dimension mismatch {A.shape} vs {B.shape}")
    return float(-np.real(np.einsum("ij,ji->", A, B)))


def bracket(a, b) -> LieElement:
    A, B = _mat(a), _mat(b)
    if A.shape != B.shape:
        raise LieError(f"dimension mismatch {A.shape} vs {B.shape}")
    return LieElement(A @ B - B @ A)


def ad(a, b) -> LieElement:
    return bracket(a, b)


_I = 1j


def gell_mann() -> LieBasis:
    """The eight anti-Hermitian Gell-Mann matrices (unnormalized, -Tr = 2)."""
    z = np.zeros((8, 3, 3), dtype=complex)
    z[0][0, 1], z[0][1, 0] = 1, -1
    z[1][0, 1], z[1][1, 0] = _I, _I
    z[2][0, 0], z[2][1, 1] = _I, -_I
    z[3][0, 2], z[3][2, 0] = _I, _I
    z[4][0, 2], z[4][2, 0] = 1, -1
    z[5][1, 2], z[5][2, 1] = _I, _I
    z[6][1, 2], z[6][2, 1] = 1, -1
    z[7] = np.diag([_I, _I, -2 * _I]) / SQ3
    return LieBasis(tuple(LieElement(m) for m in z), name="gell_mann")


PAULI = np.array([[[0, 1], [1, 0]], [[0, -1j], [1j, 0]], [[1, 0], [0, -1]]], dtype=complex)


def pauli_skew() -> LieBasis:
    """``{i sigma_1, i sigma_2, i sigma_3}``."""
    return LieBasis(tuple(LieElement(1j * s) for s in PAULI), name="pauli_skew")


def su2_basis() -> LieBasis:
    return LieBasis(tuple(LieElement(1j * s / SQ2) for s in PAULI), name="su2")


def su3_basis() -> LieBasis:
    return LieBasis(tuple(e * (1 / SQ2) for e in gell_mann()), name="su3")


def algebra_basis(algebra: str) -> LieBasis:
    if algebra == "su2":
        return su2_basis()
    if algebra == "su3":
        return su3_basis()
    raise LieError(f"unsupported algebra {algebra!r}")


def structure_constants(basis: LieBasis, tol: float = DEFAULT.gram) -> StructureTensor:
    """Structure constants of an orthonormal basis."""
    if not basis.is_orthonormal(tol):
        raise LieError("basis is not orthonormal under the trace form")
    E = basis.stack()
    comm = np.einsum("aij,bjk->abik", E, E) - np.einsum("bij,ajk->abik", E, E)
    c = -np.real(np.einsum("gij,abji->gab", E, comm))
    return StructureTensor(c)


# ---------------------------------------------------------------- irreps


@dataclass(frozen=True)
class Irrep:
    """An irreducible representation expressed on an orthonormal basis.

    ``matrices`` is None for su(3) weights known only through closed forms.
    """

    algebra: str
    label: tuple
    dim: int
    N: int
    casimir: float
    rep_constant: float
    matrices: np.ndarray | None = field(default=None, repr=False)

    @property
    def formula_only(self) -> bool:
        return self.matrices is None

    @property
    def is_trivial(self) -> bool:
        return all(w == 0 for w in self.label)

    def rho(self, alpha: int) -> np.ndarray:
        if self.matrices is None:
            raise LieError(f"irrep {self.label} has no explicit matrices")
        return self.matrices[alpha]

    def to_json(self) -> str:
        mats = None
        if self.matrices is not None:
            mats = [[[[float(z.real), float(z.imag)] for z in row] for row in m]
                    for m in self.matrices]
        return json.dumps({
            "algebra": self.algebra, "weight": list(self.label), "dim": self.dim,
            "casimir": self.casimir, "repConstant": self.rep_constant, "matrices": mats,
        })


def _spin_matrices(two_j: int):
    j = two_j / 2.0
    m = j - np.arange(two_j + 1)
    jz = np.diag(m).astype(complex)
    jp = np.zeros((two_j + 1, two_j + 1), dtype=complex)
    for k in range(1, two_j + 1):
        # J+ |m_k> = sqrt(j(j+1) - m_k(m_k+1)) |m_{k-1}>
        jp[k - 1, k] = np.sqrt(j * (j + 1) - m[k] * (m[k] + 1))
    jm = jp.conj().T
    jx = (jp + jm) / 2
    jy = (jp - jm) / 2j
    return jx, jy, jz


def su3_dim(p: int, q: int) -> int:
    return (p + 1) * (q + 1) * (p + q + 2) // 2


def su3_casimir(p: int, q: int) -> float:
    """Closed-form su(3) Casimir in the ``lambda/sqrt 2`` normalization."""
    return 2.0 * (p * p + q * q + p * q + 3 * p + 3 * q) / 3.0


def su2_casimir(two_j: int) -> float:
    j = two_j / 2.0
    return 2.0 * j * (j + 1)


def _from_matrices(algebra: str, label: tuple, basis: LieBasis, mats: np.ndarray) -> Irrep:
    mats = np.asarray(mats, dtype=complex)
    mats.setflags(write=False)
    partial = Irrep(algebra, tuple(label), mats.shape[1], basis.N, 0.0, 0.0, mats)
    c2 = casimir(partial)
    c = rep_constant(partial, basis)
    return Irrep(algebra, tuple(label), mats.shape[1], basis.N, c2, c, mats)


def build_irrep(algebra: str, weight: Sequence[int], explicit: bool = True) -> Irrep:
    """Build an irrep from its highest-weight label.

    su(2): ``weight = (2j,)``.  su(3): ``(p, q)``; explicit matrices exist for
    (0,0), (1,0), (0,1), (1,1).  Other su(3) weights are returned
    formula-only when ``explicit`` is False.
    """
    weight = tuple(int(w) for w in weight)
    if algebra == "su2":
        if len(weight) != 1 or weight[0] < 0:
            raise LieError(f"su2 weight must be (2j,), got {weight}")
        basis = su2_basis()
        jx, jy, jz = _spin_matrices(weight[0])
        mats = np.stack([1j * SQ2 * jx, 1j * SQ2 * jy, 1j * SQ2 * jz])
        return _from_matrices("su2", weight, basis, mats)
    if algebra == "su3":
        if len(weight) != 2 or min(weight) < 0:
            raise LieError(f"su3 weight must be (p, q), got {weight}")
        basis = su3_basis()
        E = basis.stack()
        if weight == (0, 0):
            mats = np.zeros((8, 1, 1), dtype=complex)
        elif weight == (1, 0):
            mats = E
        elif weight == (0, 1):
            mats = E.conj()
        elif weight == (1, 1):
            mats = adjoint_matrices(structure_constants(basis))
        else:
            if explicit:
                raise LieError(f"su3 weight {weight} has no explicit construction")
            p, q = weight
            d = su3_dim(p, q)
            c2 = su3_casimir(p, q)
            return Irrep("su3", weight, d, 8, c2, c2 * d / 8.0, None)
        return _from_matrices("su3", weight, basis, mats)
    if algebra == "u1":
        raise LieError("u(1) is abelian; it has no non-trivial simple-algebra irreps here")
    raise LieError(f"unsupported algebra {algebra!r}")


def adjoint_matrices(st: StructureTensor) -> np.ndarray:
    """ad(E^a) in the basis itself: entry (g, b) = c[g, a, b]."""
    return np.transpose(st.c, (1, 0, 2)).astype(complex)


def casimir_operator(irrep: Irrep) -> np.ndarray:
    m = irrep.matrices
    return -np.einsum("aij,ajk->ik", m, m)


def casimir_deviation(irrep: Irrep) -> float:
    op = casimir_operator(irrep)
    scal = np.trace(op).real / op.shape[0]
    return float(np.max(np.abs(op - scal * np.eye(op.shape[0]))))


def casimir(irrep: Irrep, tol: float = DEFAULT.casimir_hard) -> float:
    """Scalar value of ``-sum_a rho(E^a)^2``."""
    if irrep.matrices is None:
        return irrep.casimir
    op = casimir_operator(irrep)
    scal = float(np.trace(op).real / op.shape[0])
    if np.max(np.abs(op - scal * np.eye(op.shape[0]))) > tol:
        raise LieError("Casimir is not a scalar; representation is reducible or broken")
    return scal


def rep_constant(irrep: Irrep, basis: LieBasis | None = None) -> float:
    """Least-squares C with Tr[rho(E^a) rho(E^b)] = C Tr[E^a E^b]."""
    if irrep.matrices is None:
        return irrep.rep_constant
    basis = basis or algebra_basis(irrep.algebra)
    E = basis.stack()
    lhs = np.einsum("aij,bji->ab", irrep.matrices, irrep.matrices).real.ravel()
    rhs = np.einsum("aij,bji->ab", E, E).real.ravel()
    c = float(rhs @ lhs / (rhs @ rhs))
    resid = np.max(np.abs(lhs - c * rhs))
    if resid > DEFAULT.casimir_scalar:
        raise LieError(f"trace forms not proportional (residual {resid:.2e})")
    return c


def homomorphism_residual(irrep: Irrep, basis: LieBasis | None = None) -> float:
    """max |rho([E^a,E^b]) - [rho E^a, rho E^b]| over all basis pairs."""
    basis = basis or algebra_basis(irrep.algebra)
    st = structure_constants(basis)
    R = irrep.matrices
    lhs = np.einsum("gab,gij->abij", st.c, R)
    rhs = np.einsum("aij,bjk->abik", R, R) - np.einsum("bij,ajk->abik", R, R)
    return float(np.max(np.abs(lhs - rhs)))


# ---------------------------------------------------------------- spanning


def _real_vec(m: np.ndarray) -> np.ndarray:
    return np.concatenate([m.real.ravel(), m.imag.ravel()])


def _span_basis(mats: list, tol: float = 1e-10) -> list:
    """Orthonormal (real) spanning set of a list of matrices."""
    if not mats:
        return []
    V = np.stack([_real_vec(m) for m in mats])
    u, s, vt = np.linalg.svd(V, full_matrices=False)
    r = int(np.sum(s > tol * max(1.0, s[0])))
    shape = mats[0].shape
    n = shape[0] * shape[1]
    return [vt[k][:n].reshape(shape) + 1j * vt[k][n:].reshape(shape) for k in range(r)]


def verify_spanning_chain(A: Sequence, max_depth: int, ambient_dim: int | None = None) -> dict:
    """Grow ``A^j = [A^{j-1}, A]`` and report when the union spans the algebra.

    Returns ``{"spans": bool, "depth": int, "dims": [...]}`` where ``depth`` is
    the first depth at which the accumulated real span reaches ``ambient_dim``
    (or ``max_depth`` on failure).
    """
    if max_depth < 1:
        raise LieError("max_depth must be >= 1")
    mats = [_mat(a) for a in A]
    if not mats:
        raise LieError("generating set must be non-empty")
    if ambient_dim is None:
        ambient_dim = mats[0].shape[0] ** 2 - 1
    level = _span_basis(mats)
    acc = list(level)
    dims = [len(_span_basis(acc))]
    if dims[-1] >= ambient_dim:
        return {"spans": True, "depth": 1, "dims": dims}
    for depth in range(2, max_depth + 1):
        new = [x @ y - y @ x for x in level for y in mats]
        level = _span_basis(new)
        acc = _span_basis(acc + level)
        dims.append(len(acc))
        if len(acc) >= ambient_dim:
            return {"spans": True, "depth": depth, "dims": dims}
        if not level:
            break
    return {"spans": False, "depth": max_depth, "dims": dims}
