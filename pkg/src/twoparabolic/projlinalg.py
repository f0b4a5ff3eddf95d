"""Linear algebra over the signature (2,1) Hermitian form.

Vectors are complex numpy arrays of shape ``(3,)`` and matrices are complex
arrays of shape ``(3, 3)``. The form is

    <z, w> = conj(w3) z1 + conj(w2) z2 + conj(w1) z3,

i.e. ``w^* H z`` with ``H`` the anti-diagonal/middle matrix below.
"""

from dataclasses import dataclass
from enum import Enum
from typing import NamedTuple

import numpy as np

H = np.array([[0, 0, 1], [0, 1, 0], [1, 0, 0]], dtype=np.complex128)
IDENTITY = np.eye(3, dtype=np.complex128)

MATRIX_TOL = 1e-9
SCALAR_TOL = 1e-12


class FormError(ValueError):
    """Raised when a matrix does not preserve the Hermitian form."""


class Signature(Enum):
    POSITIVE = "positive"
    NEGATIVE = "negative"
    NULL = "null"


def vec(z1, z2, z3) -> np.ndarray:
    return np.array([z1, z2, z3], dtype=np.complex128)


def mat(rows) -> np.ndarray:
    m = np.asarray(rows, dtype=np.complex128)
    if m.shape != (3, 3):
        raise ValueError(f"expected a 3x3 matrix, got shape {m.shape}")
    return m


class Entries(NamedTuple):
    """Named entries of a 3x3 matrix, row-major ``a b c / d e f / g h j``."""

    a: complex
    b: complex
    c: complex
    d: complex
    e: complex
    f: complex
    g: complex
    h: complex
    j: complex


def entries(P) -> Entries:
    return Entries(*np.asarray(P, dtype=np.complex128).ravel().tolist())


def hermitian_inner(z, w) -> complex:
    """Return ``<z, w> = w^* H z``."""
    z = np.asarray(z, dtype=np.complex128)
    w = np.asarray(w, dtype=np.complex128)
    return complex(np.conj(w[2]) * z[0] + np.conj(w[1]) * z[1] + np.conj(w[0]) * z[2])


def norm_sq(z) -> float:
    """The real number ``<z, z>``."""
    z = np.asarray(z, dtype=np.complex128)
    return float(2.0 * (z[0] * np.conj(z[2])).real + abs(z[1]) ** 2)


def classify_vector(z, tol: float = MATRIX_TOL) -> Signature:
    """Classify ``z`` as positive, negative or null.

    ``z`` is null when ``|<z,z>| <= tol * ||z||^2`` (Euclidean norm).
    """
    z = np.asarray(z, dtype=np.complex128)
    scale = float(np.vdot(z, z).real)
    if scale == 0.0:
        raise ValueError("the zero vector has no signature class")
    q = norm_sq(z)
    if abs(q) <= tol * scale:
        return Signature.NULL
    return Signature.POSITIVE if q > 0 else Signature.NEGATIVE


def sup_norm(M) -> float:
    return float(np.max(np.abs(M)))


def form_defect(P) -> float:
    """Sup-norm of ``P^* H P - H``."""
    P = np.asarray(P, dtype=np.complex128)
    return sup_norm(P.conj().T @ H @ P - H)


def is_form_preserving(P, tol: float = MATRIX_TOL) -> bool:
    return form_defect(P) <= tol


def u21_inverse(P, tol: float = MATRIX_TOL) -> np.ndarray:
    """Inverse of a form-preserving matrix, ``H P^* H``.

    With ``P = [[a,b,c],[d,e,f],[g,h,j]]`` the result is
    ``[[j*,f*,c*],[h*,e*,b*],[g*,d*,a*]]`` (``*`` = conjugate). The
    form-preservation check scales ``tol`` by ``max(1, ||P||^2)`` since the
    defect of a rounded product grows with the size of its entries.
    """
    P = np.asarray(P, dtype=np.complex128)
    if form_defect(P) > tol * max(1.0, sup_norm(P) ** 2):
        raise FormError("matrix does not preserve the Hermitian form")
    return H @ P.conj().T @ H


def normalize_projective(z) -> np.ndarray:
    """Divide ``z`` by its entry of largest modulus."""
    z = np.asarray(z, dtype=np.complex128)
    k = int(np.argmax(np.abs(z)))
    if z[k] == 0:
        raise ValueError("the zero vector is not a projective point")
    return z / z[k]


def projective_equal(z, w, tol: float = SCALAR_TOL) -> bool:
    """True iff ``z = lambda * w`` for a nonzero complex ``lambda``, within ``tol``.

    Both vectors are divided by their entry at the index where ``z`` has
    largest modulus, then compared entrywise.
    """
    z = np.asarray(z, dtype=np.complex128)
    w = np.asarray(w, dtype=np.complex128)
    if not z.any() or not w.any():
        raise ValueError("the zero vector is not a projective point")
    k = int(np.argmax(np.abs(z)))
    if abs(w[k]) <= tol * np.max(np.abs(w)):
        return False
    return sup_norm(z / z[k] - w / w[k]) <= tol


def projective_residual(z, w) -> float:
    """Distance between ``z`` and ``w`` after both are normalized as in
    :func:`projective_equal`; ``inf`` if they cannot be matched."""
    z = np.asarray(z, dtype=np.complex128)
    w = np.asarray(w, dtype=np.complex128)
    k = int(np.argmax(np.abs(z)))
    if w[k] == 0:
        return float("inf")
    return sup_norm(z / z[k] - w / w[k])


def vector_residual(z, w) -> float:
    """Relative sup-norm difference ``||z - w|| / max(1, ||w||)`` of two vectors."""
    z = np.asarray(z, dtype=np.complex128)
    w = np.asarray(w, dtype=np.complex128)
    return sup_norm(z - w) / max(1.0, sup_norm(w))


@dataclass(frozen=True)
class AntiHolMap:
    """Anti-holomorphic map ``z -> L @ conj(z)``."""

    linear_part: np.ndarray

    def __call__(self, z) -> np.ndarray:
        return self.linear_part @ np.conj(np.asarray(z, dtype=np.complex128))

    def compose(self, other: "AntiHolMap") -> np.ndarray:
        """``self o other``; the composite is holomorphic, so a plain matrix."""
        return self.linear_part @ np.conj(other.linear_part)

    def square(self) -> np.ndarray:
        return self.compose(self)

    def is_isometry(self, tol: float = MATRIX_TOL) -> bool:
        """``<Lz*, Lw*> = conj(<z, w>)`` for all z, w, i.e. ``L`` preserves the form."""
        return is_form_preserving(self.linear_part, tol)
