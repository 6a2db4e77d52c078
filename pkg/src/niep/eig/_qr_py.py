"""Pure-Python kernels: Householder Hessenberg reduction and shifted QR.

Same algorithm and argument conventions as the compiled ``_qr`` module;
used when the extension is unavailable or ``NIEP_PURE_PYTHON`` is set.
"""
import cmath
import math

import numpy as np

ULP = 2.220446049250313e-16


def _cabs1(z):
    return abs(z.real) + abs(z.imag)


def hessenberg(a):
    """Reduce ``a`` (complex128, C-contiguous) to upper Hessenberg form in place."""
    n = a.shape[0]
    for k in range(n - 2):
        x = a[k + 1:, k].copy()
        norm = np.linalg.norm(x)
        if norm == 0.0:
            continue
        x0 = x[0]
        alpha = -norm if abs(x0) == 0.0 else -(x0 / abs(x0)) * norm
        v = x
        v[0] -= alpha
        scale = np.linalg.norm(v)
        if scale == 0.0:
            continue
        v /= scale
        block = a[k + 1:, k:]
        block -= 2.0 * np.outer(v, v.conj() @ block)
        cols = a[:, k + 1:]
        cols -= 2.0 * np.outer(cols @ v, v.conj())
        a[k + 1, k] = alpha
        a[k + 2:, k] = 0.0


def _eig2(a, b, c, d):
    p = 0.5 * (a - d)
    s = cmath.sqrt(p * p + b * c)
    y = p + s if abs(p + s) >= abs(p - s) else p - s
    l1 = d + y
    l2 = d if y == 0 else d - (b * c) / y
    return l1, l2


def hqr(h, w, maxit):
    """Eigenvalues of upper Hessenberg ``h`` into ``w``; ``h`` is destroyed.

    Returns 0 on success, otherwise ``hi + 1`` where ``w[hi+1:]`` holds the
    eigenvalues found before the iteration budget ran out.
    """
    n = h.shape[0]
    hi = n - 1
    its = 0
    while hi >= 0:
        l = hi
        while l > 0:
            tst = _cabs1(h[l - 1, l - 1]) + _cabs1(h[l, l])
            if tst == 0.0:
                win = h[l - 1:hi + 1, l - 1:hi + 1]
                tst = float(np.abs(win.real).sum() + np.abs(win.imag).sum())
            if _cabs1(h[l, l - 1]) <= ULP * tst:
                h[l, l - 1] = 0.0
                break
            l -= 1
        if l == hi:
            w[hi] = h[hi, hi]
            hi -= 1
            its = 0
            continue
        if l == hi - 1:
            w[hi - 1], w[hi] = _eig2(h[hi - 1, hi - 1], h[hi - 1, hi], h[hi, hi - 1], h[hi, hi])
            hi -= 2
            its = 0
            continue
        if its >= maxit:
            return hi + 1
        its += 1
        if its % 10 == 0:
            mu = h[hi, hi] + 0.75 * abs(h[hi, hi - 1].real)
        else:
            l1, l2 = _eig2(h[hi - 1, hi - 1], h[hi - 1, hi], h[hi, hi - 1], h[hi, hi])
            mu = l1 if abs(l1 - h[hi, hi]) <= abs(l2 - h[hi, hi]) else l2

        idx = np.arange(l, hi + 1)
        h[idx, idx] -= mu
        rots = []
        for k in range(l, hi):
            a0 = h[k, k]
            b0 = h[k + 1, k]
            r = math.hypot(abs(a0), abs(b0))
            if r == 0.0:
                g = (1.0, 0.0, 0.0, 1.0)
            else:
                g = (a0.conjugate() / r, b0.conjugate() / r, -b0 / r, a0 / r)
            rots.append(g)
            x = h[k, k:hi + 1].copy()
            y = h[k + 1, k:hi + 1]
            h[k, k:hi + 1] = g[0] * x + g[1] * y
            h[k + 1, k:hi + 1] = g[2] * x + g[3] * y
            h[k + 1, k] = 0.0
        for k, g in zip(range(l, hi), rots):
            top = min(k + 2, hi)
            x = h[l:top + 1, k].copy()
            y = h[l:top + 1, k + 1]
            h[l:top + 1, k] = x * g[0].conjugate() + y * g[1].conjugate()
            h[l:top + 1, k + 1] = x * g[2].conjugate() + y * g[3].conjugate()
        h[idx, idx] += mu
    return 0
