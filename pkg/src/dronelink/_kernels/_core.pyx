# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled twin of the NumPy kernels in ``_pure``.

Semantics, kind codes and constants must stay in sync with ``_pure``; the
test suite checks the two backends agree to 1e-12.
"""

import numpy as np

from libc.math cimport cos, log2, pi, sqrt

cdef double HALFWAVE_D = 1.6409223769845852
cdef double HERTZIAN_D = 1.5
cdef double SIN2_EPS = 1e-24

cdef int KIND_ISOTROPIC = 0
cdef int KIND_HALFWAVE = 1
cdef int KIND_CROSS_LINEAR = 2
cdef int KIND_CROSS_CIRCULAR = 3
cdef int KIND_HERTZIAN = 4


cdef inline void _arm_field(double ax, double ay, double az,
                            double kx, double ky, double kz,
                            bint halfwave,
                            double* ex, double* ey, double* ez) noexcept nogil:
    # Far field of one dipole arm: w * (axis - (axis . k) k) with the
    # half-wave weight cos((pi/2) c) / sin^2; |e| is the field pattern.
    cdef double c = ax * kx + ay * ky + az * kz
    cdef double s2 = 1.0 - c * c
    cdef double w
    if s2 <= SIN2_EPS:
        ex[0] = 0.0
        ey[0] = 0.0
        ez[0] = 0.0
        return
    if halfwave:
        w = cos(0.5 * pi * c) / s2
    else:
        w = 1.0
    ex[0] = w * (ax - c * kx)
    ey[0] = w * (ay - c * ky)
    ez[0] = w * (az - c * kz)


cdef inline double _side_directivity(int kind) noexcept nogil:
    if kind == KIND_HERTZIAN:
        return HERTZIAN_D
    return HALFWAVE_D


cdef inline void _side_field(int kind,
                             double a1x, double a1y, double a1z,
                             double a2x, double a2y, double a2z,
                             double kx, double ky, double kz,
                             double* rex, double* rey, double* rez,
                             double* imx, double* imy, double* imz) noexcept nogil:
    # Complex far-field vector (re + i im) of one antenna side.
    cdef double e1x = 0.0, e1y = 0.0, e1z = 0.0
    cdef double e2x = 0.0, e2y = 0.0, e2z = 0.0
    cdef double inv_sqrt2 = 0.7071067811865476
    imx[0] = 0.0
    imy[0] = 0.0
    imz[0] = 0.0
    if kind == KIND_CROSS_CIRCULAR:
        _arm_field(a1x, a1y, a1z, kx, ky, kz, True, &e1x, &e1y, &e1z)
        _arm_field(a2x, a2y, a2z, kx, ky, kz, True, &e2x, &e2y, &e2z)
        rex[0] = e1x * inv_sqrt2
        rey[0] = e1y * inv_sqrt2
        rez[0] = e1z * inv_sqrt2
        imx[0] = e2x * inv_sqrt2
        imy[0] = e2y * inv_sqrt2
        imz[0] = e2z * inv_sqrt2
    elif kind == KIND_HERTZIAN:
        _arm_field(a1x, a1y, a1z, kx, ky, kz, False, &e1x, &e1y, &e1z)
        rex[0] = e1x
        rey[0] = e1y
        rez[0] = e1z
    else:
        _arm_field(a1x, a1y, a1z, kx, ky, kz, True, &e1x, &e1y, &e1z)
        rex[0] = e1x
        rey[0] = e1y
        rez[0] = e1z


def chi_pairs(const double[:, ::1] dirs,
              const double[:, ::1] gs_arm1,
              const double[:, ::1] gs_arm2,
              int gs_kind,
              const double[:, ::1] dr_arm1,
              const double[:, ::1] dr_arm2,
              int dr_kind):
    """See ``_pure.chi_pairs``."""
    cdef Py_ssize_t n = dirs.shape[0]
    cdef Py_ssize_t m = gs_arm1.shape[0]
    out = np.empty((n, m), dtype=np.float64)
    cdef double[:, ::1] res = out
    cdef Py_ssize_t i, j
    cdef double kx, ky, kz
    cdef double drx, dry, drz, dix, diy, diz
    cdef double grx, gry, grz, gix, giy, giz
    cdef double d_gs = _side_directivity(gs_kind)
    cdef double d_dr = _side_directivity(dr_kind)
    cdef double dot_re, dot_im, gain

    with nogil:
        for i in range(n):
            kx = dirs[i, 0]
            ky = dirs[i, 1]
            kz = dirs[i, 2]
            if dr_kind != KIND_ISOTROPIC:
                # drone radiates back toward the ground station
                _side_field(dr_kind,
                            dr_arm1[i, 0], dr_arm1[i, 1], dr_arm1[i, 2],
                            dr_arm2[i, 0], dr_arm2[i, 1], dr_arm2[i, 2],
                            -kx, -ky, -kz,
                            &drx, &dry, &drz, &dix, &diy, &diz)
            for j in range(m):
                if gs_kind == KIND_ISOTROPIC and dr_kind == KIND_ISOTROPIC:
                    res[i, j] = 1.0
                    continue
                if gs_kind == KIND_ISOTROPIC:
                    res[i, j] = d_dr * (drx * drx + dry * dry + drz * drz
                                        + dix * dix + diy * diy + diz * diz)
                    continue
                _side_field(gs_kind,
                            gs_arm1[j, 0], gs_arm1[j, 1], gs_arm1[j, 2],
                            gs_arm2[j, 0], gs_arm2[j, 1], gs_arm2[j, 2],
                            kx, ky, kz,
                            &grx, &gry, &grz, &gix, &giy, &giz)
                if dr_kind == KIND_ISOTROPIC:
                    res[i, j] = d_gs * (grx * grx + gry * gry + grz * grz
                                        + gix * gix + giy * giy + giz * giz)
                    continue
                dot_re = (grx * drx - gix * dix
                          + gry * dry - giy * diy
                          + grz * drz - giz * diz)
                dot_im = (grx * dix + gix * drx
                          + gry * diy + giy * dry
                          + grz * diz + giz * drz)
                res[i, j] = d_gs * d_dr * (dot_re * dot_re + dot_im * dot_im)
    return out


def mrc_capacity_batch(const double complex[:, :, ::1] g, const double[:, ::1] powers):
    """See ``_pure.mrc_capacity_batch``."""
    cdef Py_ssize_t t_n = g.shape[0]
    cdef Py_ssize_t m = g.shape[1]
    cdef Py_ssize_t k_n = g.shape[2]
    out = np.empty((t_n, k_n), dtype=np.float64)
    norm2_buf = np.empty(k_n, dtype=np.float64)
    inter_buf = np.empty(k_n, dtype=np.float64)
    cdef double[:, ::1] res = out
    cdef double[::1] norm2 = norm2_buf
    cdef double[::1] inter = inter_buf
    cdef Py_ssize_t t, i, k, l
    cdef double ar, ai, br, bi, dre, dim, cross, sinr

    with nogil:
        for t in range(t_n):
            for k in range(k_n):
                norm2[k] = 0.0
                inter[k] = 0.0
            for k in range(k_n):
                for l in range(k, k_n):
                    dre = 0.0
                    dim = 0.0
                    for i in range(m):
                        ar = g[t, i, k].real
                        ai = g[t, i, k].imag
                        br = g[t, i, l].real
                        bi = g[t, i, l].imag
                        # conj(g[:, k]) . g[:, l]
                        dre += ar * br + ai * bi
                        dim += ar * bi - ai * br
                    if l == k:
                        norm2[k] = dre
                    else:
                        cross = dre * dre + dim * dim
                        inter[k] += powers[t, l] * cross
                        inter[l] += powers[t, k] * cross
            for k in range(k_n):
                if norm2[k] > 0.0:
                    sinr = (powers[t, k] * norm2[k] * norm2[k]
                            / (inter[k] + norm2[k]))
                    res[t, k] = log2(1.0 + sinr)
                else:
                    res[t, k] = 0.0
    return out
