# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled batch kernels; same contracts as ``_pykernels``."""

import numpy as np
cimport numpy as cnp
from libc.math cimport sqrt, hypot, fabs

cnp.import_array()

cdef double SQRT2 = sqrt(2.0)


cdef inline double cabs2(double complex z) nogil:
    return z.real * z.real + z.imag * z.imag


def cygan_to(zeta, v, double complex c, double cv):
    cdef const double complex[::1] zz = np.ascontiguousarray(zeta, dtype=np.complex128)
    cdef const double[::1] vv = np.ascontiguousarray(v, dtype=np.float64)
    cdef Py_ssize_t n = zz.shape[0], i
    out = np.empty(n, dtype=np.float64)
    cdef double[::1] o = out
    cdef double complex dz, z
    cdef double re, im
    with nogil:
        for i in range(n):
            z = zz[i]
            dz = z - c
            re = cabs2(dz)
            im = -vv[i] + cv - 2.0 * (z.imag * c.real - z.real * c.imag)
            o[i] = sqrt(hypot(re, im))
    return out


def cygan_pairs(zeta1, v1, zeta2, v2):
    cdef const double complex[::1] a = np.ascontiguousarray(zeta1, dtype=np.complex128)
    cdef const double complex[::1] b = np.ascontiguousarray(zeta2, dtype=np.complex128)
    cdef const double[::1] va = np.ascontiguousarray(v1, dtype=np.float64)
    cdef const double[::1] vb = np.ascontiguousarray(v2, dtype=np.float64)
    cdef Py_ssize_t n = a.shape[0], i
    if b.shape[0] != n or va.shape[0] != n or vb.shape[0] != n:
        raise ValueError("cygan_pairs: length mismatch")
    out = np.empty(n, dtype=np.float64)
    cdef double[::1] o = out
    cdef double complex dz
    cdef double re, im
    with nogil:
        for i in range(n):
            dz = a[i] - b[i]
            re = cabs2(dz)
            im = -va[i] + vb[i] - 2.0 * (a[i].imag * b[i].real - a[i].real * b[i].imag)
            o[i] = sqrt(hypot(re, im))
    return out


def act(M, zeta, v, inf, double tol):
    cdef const double complex[:, ::1] m = np.ascontiguousarray(M, dtype=np.complex128)
    cdef const double complex[::1] zz = np.ascontiguousarray(zeta, dtype=np.complex128)
    cdef const double[::1] vv = np.ascontiguousarray(v, dtype=np.float64)
    cdef const cnp.uint8_t[::1] ii = np.ascontiguousarray(inf, dtype=np.uint8)
    cdef Py_ssize_t n = zz.shape[0], i
    out_zeta = np.empty(n, dtype=np.complex128)
    out_v = np.empty(n, dtype=np.float64)
    out_inf = np.empty(n, dtype=np.bool_)
    cdef double complex[::1] oz = out_zeta
    cdef double[::1] ov = out_v
    cdef cnp.uint8_t[::1] oi = out_inf.view(np.uint8)
    cdef double complex z1, z2, z3, w1, w2, w3, q
    cdef double scale, a
    with nogil:
        for i in range(n):
            if ii[i]:
                z1 = 1.0
                z2 = 0.0
                z3 = 0.0
            else:
                z1 = -cabs2(zz[i]) + 1j * vv[i]
                z2 = SQRT2 * zz[i]
                z3 = 1.0
            w1 = m[0, 0] * z1 + m[0, 1] * z2 + m[0, 2] * z3
            w2 = m[1, 0] * z1 + m[1, 1] * z2 + m[1, 2] * z3
            w3 = m[2, 0] * z1 + m[2, 1] * z2 + m[2, 2] * z3
            scale = sqrt(cabs2(w1))
            a = sqrt(cabs2(w2))
            if a > scale:
                scale = a
            a = sqrt(cabs2(w3))
            if a > scale:
                scale = a
            if a <= tol * scale:
                oi[i] = 1
                oz[i] = 0.0
                ov[i] = 0.0
            else:
                oi[i] = 0
                oz[i] = w2 / (SQRT2 * w3)
                q = w1 / w3
                ov[i] = q.imag
    return out_zeta, out_v, out_inf
