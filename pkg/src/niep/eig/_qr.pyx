# cython: language_level=3
"""Compiled kernels: Householder Hessenberg reduction and shifted QR.

Mirrors ``_qr_py`` operation for operation; both operate in place on a
C-contiguous complex128 array.
"""
from libc.math cimport sqrt, fabs, hypot, copysign

ctypedef double complex cplx

cdef double ULP = 2.220446049250313e-16


cdef inline double cabs1(cplx z) noexcept nogil:
    return fabs(z.real) + fabs(z.imag)


cdef inline double cmod(cplx z) noexcept nogil:
    return hypot(z.real, z.imag)


cdef inline cplx csqrt_(cplx z) noexcept nogil:
    cdef double x = z.real, y = z.imag, r, t
    if x == 0.0 and y == 0.0:
        return 0.0
    r = hypot(x, y)
    t = sqrt(0.5 * (r + fabs(x)))
    if x >= 0.0:
        return t + 1j * (y / (2.0 * t))
    return fabs(y) / (2.0 * t) + 1j * copysign(t, y)


cdef inline cplx conj(cplx z) noexcept nogil:
    return z.real - 1j * z.imag


def hessenberg(cplx[:, ::1] a):
    """Reduce ``a`` to upper Hessenberg form in place."""
    cdef Py_ssize_t n = a.shape[0], k, i, j
    cdef double norm, scale
    cdef cplx alpha, s, x0
    cdef cplx[::1] v
    if n < 3:
        return
    import numpy as np
    v = np.zeros(n, dtype=np.complex128)
    with nogil:
        for k in range(n - 2):
            norm = 0.0
            for i in range(k + 1, n):
                norm = hypot(norm, cmod(a[i, k]))
            if norm == 0.0:
                continue
            x0 = a[k + 1, k]
            if cmod(x0) == 0.0:
                alpha = -norm
            else:
                alpha = -(x0 / cmod(x0)) * norm
            for i in range(k + 1, n):
                v[i] = a[i, k]
            v[k + 1] = v[k + 1] - alpha
            scale = 0.0
            for i in range(k + 1, n):
                scale = hypot(scale, cmod(v[i]))
            if scale == 0.0:
                continue
            for i in range(k + 1, n):
                v[i] = v[i] / scale
            # left: a <- (I - 2 v v^H) a on rows k+1.., cols k..
            for j in range(k, n):
                s = 0.0
                for i in range(k + 1, n):
                    s = s + conj(v[i]) * a[i, j]
                s = 2.0 * s
                for i in range(k + 1, n):
                    a[i, j] = a[i, j] - v[i] * s
            # right: a <- a (I - 2 v v^H) on all rows, cols k+1..
            for i in range(n):
                s = 0.0
                for j in range(k + 1, n):
                    s = s + a[i, j] * v[j]
                s = 2.0 * s
                for j in range(k + 1, n):
                    a[i, j] = a[i, j] - s * conj(v[j])
            a[k + 1, k] = alpha
            for i in range(k + 2, n):
                a[i, k] = 0.0


cdef inline void eig2(cplx a, cplx b, cplx c, cplx d, cplx* l1, cplx* l2) noexcept nogil:
    # eigenvalues of [[a, b], [c, d]] as d + y and d - bc/y
    cdef cplx p = 0.5 * (a - d)
    cdef cplx s = csqrt_(p * p + b * c)
    cdef cplx y
    if cmod(p + s) >= cmod(p - s):
        y = p + s
    else:
        y = p - s
    l1[0] = d + y
    if y == 0.0:
        l2[0] = d
    else:
        l2[0] = d - (b * c) / y


def hqr(cplx[:, ::1] h, cplx[::1] w, int maxit):
    """Eigenvalues of upper Hessenberg ``h`` into ``w``; ``h`` is destroyed.

    Returns 0 on success, otherwise ``hi + 1`` where ``w[hi+1:]`` holds the
    eigenvalues found before the iteration budget ran out.
    """
    cdef Py_ssize_t n = h.shape[0], status
    cdef cplx[::1] c11, c12, c21, c22
    import numpy as np
    c11 = np.zeros(max(n, 1), dtype=np.complex128)
    c12 = np.zeros(max(n, 1), dtype=np.complex128)
    c21 = np.zeros(max(n, 1), dtype=np.complex128)
    c22 = np.zeros(max(n, 1), dtype=np.complex128)
    with nogil:
        status = _hqr(h, w, maxit, c11, c12, c21, c22)
    return status


cdef Py_ssize_t _hqr(cplx[:, ::1] h, cplx[::1] w, int maxit,
                     cplx[::1] c11, cplx[::1] c12, cplx[::1] c21, cplx[::1] c22) noexcept nogil:
    cdef Py_ssize_t n = h.shape[0], hi, l, k, i, j, top
    cdef int its = 0
    cdef double tst, r
    cdef cplx mu, a0, b0, x, y, l1, l2
    cdef cplx g11, g12, g21, g22
    hi = n - 1
    while hi >= 0:
        l = hi
        while l > 0:
            tst = cabs1(h[l - 1, l - 1]) + cabs1(h[l, l])
            if tst == 0.0:
                for i in range(l - 1, hi + 1):
                    for j in range(l - 1, hi + 1):
                        tst = tst + cabs1(h[i, j])
            if cabs1(h[l, l - 1]) <= ULP * tst:
                h[l, l - 1] = 0.0
                break
            l -= 1
        if l == hi:
            w[hi] = h[hi, hi]
            hi -= 1
            its = 0
            continue
        if l == hi - 1:
            eig2(h[hi - 1, hi - 1], h[hi - 1, hi], h[hi, hi - 1], h[hi, hi], &l1, &l2)
            w[hi - 1] = l1
            w[hi] = l2
            hi -= 2
            its = 0
            continue
        if its >= maxit:
            return hi + 1
        its += 1
        if its % 10 == 0:
            mu = h[hi, hi] + 0.75 * fabs(h[hi, hi - 1].real)
        else:
            eig2(h[hi - 1, hi - 1], h[hi - 1, hi], h[hi, hi - 1], h[hi, hi], &l1, &l2)
            if cmod(l1 - h[hi, hi]) <= cmod(l2 - h[hi, hi]):
                mu = l1
            else:
                mu = l2
        for i in range(l, hi + 1):
            h[i, i] = h[i, i] - mu
        for k in range(l, hi):
            a0 = h[k, k]
            b0 = h[k + 1, k]
            r = hypot(cmod(a0), cmod(b0))
            if r == 0.0:
                g11 = 1.0
                g12 = 0.0
                g21 = 0.0
                g22 = 1.0
            else:
                g11 = conj(a0) / r
                g12 = conj(b0) / r
                g21 = -b0 / r
                g22 = a0 / r
            c11[k] = g11
            c12[k] = g12
            c21[k] = g21
            c22[k] = g22
            for j in range(k, hi + 1):
                x = h[k, j]
                y = h[k + 1, j]
                h[k, j] = g11 * x + g12 * y
                h[k + 1, j] = g21 * x + g22 * y
            h[k + 1, k] = 0.0
        for k in range(l, hi):
            g11 = conj(c11[k])
            g12 = conj(c12[k])
            g21 = conj(c21[k])
            g22 = conj(c22[k])
            top = k + 2 if k + 2 <= hi else hi
            for i in range(l, top + 1):
                x = h[i, k]
                y = h[i, k + 1]
                h[i, k] = x * g11 + y * g12
                h[i, k + 1] = x * g21 + y * g22
        for i in range(l, hi + 1):
            h[i, i] = h[i, i] + mu
    return 0
