"""Central tolerance record shared by the library, the tests and the CLI."""

from __future__ import annotations

from dataclasses import dataclass, fields, replace


@dataclass(frozen=True)
class Tolerances:
    skew: float = 1e-12            # skew-Hermitian check on Lie elements
    gram: float = 1e-10            # orthonormality of a basis
    bracket: float = 1e-10         # homomorphism and Jacobi checks
    casimir_scalar: float = 1e-9   # deviation of the Casimir from a scalar
    casimir_hard: float = 1e-8     # casimir() raises beyond this
    lorentz: float = 1e-10         # Lambda^T eta Lambda = eta
    sl2c_det: float = 1e-12
    frame: float = 1e-9            # frame equality and frame invariants
    coplanar: float = 1e-9         # normal-space distance for coplanarity
    quad_rel: float = 1e-10        # quadrature refinement stopping rule
    quad_order: int = 16
    quad_order_cap: int = 256

    def scaled(self, factor: float) -> "Tolerances":
        """Multiply every float tolerance by ``factor`` (integer orders untouched)."""
        changes = {}
        for f in fields(self):
            val = getattr(self, f.name)
            if isinstance(val, float):
                changes[f.name] = val * factor
        return replace(self, **changes)


DEFAULT = Tolerances()
