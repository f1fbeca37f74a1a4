# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled Mittag-Leffler kernels.

Mirrors ``_core_py`` exactly; see that module for the contracts.
"""

import numpy as np
cimport numpy as cnp
from libc.math cimport exp, cos, sin, fabs, isfinite, INFINITY

cnp.import_array()

cdef extern from "complex.h" nogil:
    double complex cexp(double complex)
    double complex clog(double complex)
    double cabs(double complex)
    double creal(double complex)

cdef double EPS = np.finfo(float).eps


def taylor_batch(z, lc, lr, Py_ssize_t mono_from, double atol, double rtol):
    cdef const double complex[::1] zv = np.ascontiguousarray(z, dtype=complex)
    cdef const double complex[::1] lcv = np.ascontiguousarray(lc, dtype=complex)
    cdef const double[::1] lrv = np.ascontiguousarray(lr, dtype=float)
    cdef Py_ssize_t nz = zv.shape[0]
    cdef Py_ssize_t nmax = lcv.shape[0]

    vals_a = np.zeros(nz, dtype=complex)
    bounds_a = np.full(nz, np.inf)
    nterms_a = np.full(nz, nmax, dtype=np.int64)
    abssum_a = np.zeros(nz)
    conv_a = np.zeros(nz, dtype=np.uint8)
    cdef double complex[::1] vals = vals_a
    cdef double[::1] bounds = bounds_a
    cdef cnp.int64_t[::1] nterms = nterms_a
    cdef double[::1] abssum = abssum_a
    cdef unsigned char[::1] conv = conv_a

    cdef Py_ssize_t i, n
    cdef double complex zi, logz, t, s, lcn
    cdef double absz, labs, a, acc, err, q, tail, rnd, b, target

    with nogil:
        for i in range(nz):
            zi = zv[i]
            logz = clog(zi)
            absz = cabs(zi)
            labs = cabs(logz)
            s = 0
            acc = 0.0
            err = 0.0
            for n in range(nmax):
                lcn = lcv[n]
                if creal(lcn) == -INFINITY:
                    a = 0.0
                else:
                    t = cexp(n * logz + lcn)
                    a = cabs(t)
                    s = s + t
                    acc = acc + a
                    err = err + a * (n * labs + cabs(lcn) + 4.0)
                if n < mono_from or n >= nmax - 1:
                    continue
                q = absz * exp(lrv[n])
                if q < 1.0:
                    tail = a * q / (1.0 - q)
                else:
                    tail = INFINITY
                rnd = EPS * (err + (n + 1) * acc)
                b = tail + rnd
                bounds[i] = b
                target = rtol * cabs(s)
                if atol > target:
                    target = atol
                if b <= target:
                    conv[i] = 1
                    nterms[i] = n + 1
                    break
                if tail <= 1e-3 * rnd:
                    nterms[i] = n + 1
                    break
            vals[i] = s
            abssum[i] = acc

    return vals_a, bounds_a, nterms_a, abssum_a, conv_a.astype(bool)


def ray_level(z, theta, double alpha, gamma, log_r, weight):
    cdef const double complex[::1] zv = np.ascontiguousarray(z, dtype=complex)
    cdef const double[::1] thv = np.ascontiguousarray(theta, dtype=float)
    cdef const double[::1] lrv = np.ascontiguousarray(log_r, dtype=float)
    cdef const double[::1] wv = np.ascontiguousarray(weight, dtype=float)
    cdef double complex g1 = complex(gamma) + 1.0
    cdef Py_ssize_t nz = zv.shape[0]
    cdef Py_ssize_t nn = lrv.shape[0]

    total_a = np.zeros(nz, dtype=complex)
    abstotal_a = np.zeros(nz)
    cdef double complex[::1] total = total_a
    cdef double[::1] abstotal = abstotal_a

    cdef Py_ssize_t i, j
    cdef int k
    cdef double sign, ang, lr, r, re_s, ga
    cdef double complex zi, acc, num, den, g, iang
    cdef double accabs

    with nogil:
        for i in range(nz):
            zi = zv[i]
            acc = 0
            accabs = 0.0
            for k in range(2):
                sign = 1.0 if k == 0 else -1.0
                ang = sign * thv[i]
                iang = 1j * ang
                for j in range(nn):
                    lr = lrv[j]
                    r = exp(lr)
                    re_s = r * cos(ang)
                    if re_s <= -745.0:
                        continue
                    num = cexp(re_s + 1j * (r * sin(ang)) + g1 * (lr + iang))
                    den = cexp(alpha * (lr + iang)) - zi
                    g = num / den * wv[j]
                    ga = cabs(g)
                    if not isfinite(ga):
                        continue
                    acc = acc + sign * g
                    accabs = accabs + ga
            total[i] = acc
            abstotal[i] = accabs

    return total_a, abstotal_a
