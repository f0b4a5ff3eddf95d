"""Pure numpy implementations of the batch kernels.

Used when the compiled ``_ckernels`` extension is unavailable, and as the
reference side of the kernel benchmark.
"""

import numpy as np

SQRT2 = np.sqrt(2.0)


def cygan_to(zeta, v, c, cv):
    """Cygan distance from each point ``(zeta[i], v[i])`` to the fixed point ``(c, cv)``."""
    zeta = np.asarray(zeta, dtype=np.complex128)
    v = np.asarray(v, dtype=np.float64)
    dz = zeta - c
    re = dz.real * dz.real + dz.imag * dz.imag
    im = -v + cv - 2.0 * (zeta * np.conj(c)).imag
    return np.sqrt(np.hypot(re, im))


def cygan_pairs(zeta1, v1, zeta2, v2):
    """Elementwise Cygan distance between two equally long point arrays."""
    zeta1 = np.asarray(zeta1, dtype=np.complex128)
    zeta2 = np.asarray(zeta2, dtype=np.complex128)
    dz = zeta1 - zeta2
    re = dz.real * dz.real + dz.imag * dz.imag
    im = -np.asarray(v1, dtype=np.float64) + v2 - 2.0 * (zeta1 * np.conj(zeta2)).imag
    return np.sqrt(np.hypot(re, im))


def act(M, zeta, v, inf, tol):
    """Apply the 3x3 matrix ``M`` to a batch of boundary points.

    Points are given in Heisenberg coordinates with a boolean mask marking
    the point at infinity. Returns ``(zeta, v, inf)`` of the images; an image
    is infinite when its third lift coordinate is at most ``tol`` times the
    largest lift coordinate.
    """
    M = np.asarray(M, dtype=np.complex128)
    zeta = np.asarray(zeta, dtype=np.complex128)
    v = np.asarray(v, dtype=np.float64)
    inf = np.asarray(inf, dtype=bool)

    z1 = np.where(inf, 1.0 + 0j, -(zeta.real**2 + zeta.imag**2) + 1j * v)
    z2 = np.where(inf, 0j, SQRT2 * zeta)
    z3 = np.where(inf, 0j, 1.0 + 0j)

    w1 = M[0, 0] * z1 + M[0, 1] * z2 + M[0, 2] * z3
    w2 = M[1, 0] * z1 + M[1, 1] * z2 + M[1, 2] * z3
    w3 = M[2, 0] * z1 + M[2, 1] * z2 + M[2, 2] * z3

    scale = np.maximum(np.maximum(np.abs(w1), np.abs(w2)), np.abs(w3))
    out_inf = np.abs(w3) <= tol * scale
    safe = np.where(out_inf, 1.0 + 0j, w3)
    out_zeta = np.where(out_inf, 0j, w2 / (SQRT2 * safe))
    out_v = np.where(out_inf, 0.0, (w1 / safe).imag)
    return out_zeta, out_v, out_inf
