"""Linear operators on the vector module and their three lifts.

An extensor is an n x n matrix acting on the grade-1 slots of the exterior
algebra, tagged with the kind of objects it acts on (vectors or forms).
Three derived actions cover everything the derivative operators need:

* ``duality_adjoint`` -- the transpose, which moves the operator across the
  duality pairing: <t^adj(w), v> = <w, t(v)>.  It swaps the kind.
* ``extend`` -- the outermorphism lift: identity on grade 0, multiplicative
  over the wedge, so a k-blade maps to the wedge of its mapped factors.
* ``generalize`` -- the derivation lift: zero on grade 0, Leibniz over the
  wedge, so a k-blade maps to the sum of blades with one factor mapped.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .algebra import (
    AlgebraError,
    GradeError,
    Multiform,
    Multivector,
    apply_coeffs,
    extend_coeffs,
    generalize_coeffs,
    MAX_DIM,
)

SINGULARITY_TOL = 1e-10

VECTOR = "vector"
FORM = "form"

_VALUE_KIND = {Multivector: VECTOR, Multiform: FORM}


class SingularExtensor(AlgebraError):
    """Inversion was requested for an operator with |det| below tolerance."""


@dataclass(frozen=True)
class Extensor:
    """An n x n operator on grade-1 values; column j is the image of basis j."""

    dim: int
    rows: tuple[tuple[float, ...], ...]
    kind: str = VECTOR

    def __post_init__(self):
        if not 1 <= self.dim <= MAX_DIM:
            raise AlgebraError(f"dimension {self.dim} outside 1..{MAX_DIM}")
        if self.kind not in (VECTOR, FORM):
            raise AlgebraError(f"bad extensor kind {self.kind!r}")
        rows = tuple(tuple(float(v) for v in row) for row in self.rows)
        if len(rows) != self.dim or any(len(r) != self.dim for r in rows):
            raise AlgebraError(f"matrix must be {self.dim}x{self.dim}")
        object.__setattr__(self, "rows", rows)

    @classmethod
    def identity(cls, dim: int, kind: str = VECTOR) -> "Extensor":
        return cls(dim, tuple(tuple(1.0 if i == j else 0.0 for j in range(dim)) for i in range(dim)), kind)

    @classmethod
    def from_matrix(cls, matrix, kind: str = VECTOR) -> "Extensor":
        m = np.asarray(matrix, dtype=float)
        return cls(m.shape[0], tuple(tuple(row) for row in m), kind)

    def matrix(self) -> np.ndarray:
        return np.array(self.rows, dtype=float)

    def det(self) -> float:
        return float(np.linalg.det(self.matrix()))

    def _check_value(self, a):
        if a.dim != self.dim:
            raise AlgebraError(f"dimensions differ: {self.dim} vs {a.dim}")
        if _VALUE_KIND[type(a)] != self.kind:
            raise TypeError(f"{self.kind} extensor applied to {type(a).__name__}")

    def apply(self, v):
        """Matrix action on a homogeneous grade-1 value of matching kind."""
        self._check_value(v)
        if v.grade_part(1) != v:
            raise GradeError("apply expects a homogeneous grade-1 value")
        return type(v)(self.dim, tuple(apply_coeffs(self.rows, v.coeffs, self.dim)))

    def duality_adjoint(self) -> "Extensor":
        """Transpose operator acting on the opposite kind."""
        t = tuple(tuple(self.rows[c][r] for c in range(self.dim)) for r in range(self.dim))
        return Extensor(self.dim, t, FORM if self.kind == VECTOR else VECTOR)

    def extend(self, a):
        """Outermorphism lift applied to a full value of matching kind."""
        self._check_value(a)
        return type(a)(self.dim, tuple(extend_coeffs(self.rows, a.coeffs, self.dim)))

    def generalize(self, a):
        """Derivation lift applied to a full value of matching kind."""
        self._check_value(a)
        return type(a)(self.dim, tuple(generalize_coeffs(self.rows, a.coeffs, self.dim)))

    def invert(self, tol: float = SINGULARITY_TOL) -> "Extensor":
        m = self.matrix()
        if abs(np.linalg.det(m)) <= tol:
            raise SingularExtensor(f"|det| = {abs(np.linalg.det(m)):.3e} <= {tol:g}")
        return Extensor.from_matrix(np.linalg.inv(m), self.kind)

    def compose(self, other: "Extensor") -> "Extensor":
        """Operator composition: (self.compose(other))(v) = self(other(v))."""
        if self.dim != other.dim or self.kind != other.kind:
            raise AlgebraError("composition needs matching dimension and kind")
        return Extensor.from_matrix(self.matrix() @ other.matrix(), self.kind)
