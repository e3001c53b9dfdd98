# cython: boundscheck=False, wraparound=False, initializedcheck=False, cdivision=True
"""Compiled classical RK4 stepping of i dc/dtau = H c for batches of 2x2 systems."""
import numpy as np


cdef inline void _rhs(double complex a00, double complex a01, double complex a10,
                      double complex a11, double complex x0, double complex x1,
                      double complex *y0, double complex *y1) noexcept nogil:
    y0[0] = a00 * x0 + a01 * x1
    y1[0] = a10 * x0 + a11 * x1


cdef void _run(double complex a00, double complex a01, double complex a10,
               double complex a11, double h, long long n,
               double complex *c0, double complex *c1) noexcept nogil:
    cdef double complex x0 = c0[0], x1 = c1[0]
    cdef double complex k10, k11, k20, k21, k30, k31, k40, k41
    cdef double hh = 0.5 * h, h6 = h / 6.0
    cdef long long i
    for i in range(n):
        _rhs(a00, a01, a10, a11, x0, x1, &k10, &k11)
        _rhs(a00, a01, a10, a11, x0 + hh * k10, x1 + hh * k11, &k20, &k21)
        _rhs(a00, a01, a10, a11, x0 + hh * k20, x1 + hh * k21, &k30, &k31)
        _rhs(a00, a01, a10, a11, x0 + h * k30, x1 + h * k31, &k40, &k41)
        x0 = x0 + h6 * (k10 + 2.0 * k20 + 2.0 * k30 + k40)
        x1 = x1 + h6 * (k11 + 2.0 * k21 + 2.0 * k31 + k41)
    c0[0] = x0
    c1[0] = x1


def rk4_batch(H, h, nsteps, c0):
    """Integrate each system k for ``nsteps[k]`` steps of size ``h[k]``.

    H has shape (n, 2, 2); c0 has shape (n, 2). Returns the final amplitudes.
    """
    cdef double complex[:, :, ::1] Hv = np.ascontiguousarray(H, dtype=np.complex128)
    cdef double[::1] hv = np.ascontiguousarray(h, dtype=np.float64)
    cdef long long[::1] nv = np.ascontiguousarray(nsteps, dtype=np.int64)
    out = np.array(c0, dtype=np.complex128, order="C", copy=True)
    cdef double complex[:, ::1] ov = out
    cdef Py_ssize_t k, n = Hv.shape[0]
    cdef double complex mi = -1j
    with nogil:
        for k in range(n):
            _run(mi * Hv[k, 0, 0], mi * Hv[k, 0, 1], mi * Hv[k, 1, 0], mi * Hv[k, 1, 1],
                 hv[k], nv[k], &ov[k, 0], &ov[k, 1])
    return out
