# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled implementations of the hot integrand kernels.

Same contract as pairwave._kernels_py; selected at import by
pairwave._kernels when built.
"""
import numpy as np

cimport numpy as cnp

cnp.import_array()

cdef extern from "complex.h" nogil:
    double complex cexp(double complex)
    double complex csinh(double complex)
    double cabs(double complex)

BACKEND = "cython"


def deviation_integrand(s, double r_tilde, double tau, double angle):
    s = np.ascontiguousarray(s, dtype=np.float64)
    cdef double[::1] sv = s
    cdef Py_ssize_t n = sv.shape[0], i
    out_arr = np.empty(n, dtype=np.complex128)
    cdef double complex[::1] out = out_arr
    cdef double complex rot = cexp(-1j * angle)
    cdef double complex eta, z, w, num, den, sh2
    for i in range(n):
        eta = sv[i] * rot
        sh2 = csinh(2.0 * eta)
        z = 4.0 * eta + 1j * tau * sh2
        if cabs(z) < 1e-250:
            out[i] = 0.0
            continue
        w = r_tilde * csinh(eta)
        num = cexp(1j * w - z) - cexp(-1j * w - z)
        den = 1.0 - cexp(-z)
        out[i] = sh2 * sh2 * num / (2j * den) * rot
    return out_arr


def mode_integrand(s, double l, double r_tilde, double tau, double angle):
    s = np.ascontiguousarray(s, dtype=np.float64)
    cdef double[::1] sv = s
    cdef Py_ssize_t n = sv.shape[0], i
    out_arr = np.empty(n, dtype=np.complex128)
    cdef double complex[::1] out = out_arr
    cdef double complex rot = cexp(-1j * angle)
    cdef double complex eta, sh2, phase
    for i in range(n):
        eta = sv[i] * rot
        sh2 = csinh(2.0 * eta)
        phase = (-4.0 * l) * eta + 1j * (r_tilde * csinh(eta) - l * tau * sh2)
        out[i] = sh2 * sh2 / 2j * cexp(phase) * rot
    return out_arr


def steady_inversion_integrand(s, double r, double g, double angle):
    s = np.ascontiguousarray(s, dtype=np.float64)
    cdef double[::1] sv = s
    cdef Py_ssize_t n = sv.shape[0], i
    out_arr = np.empty(n, dtype=np.complex128)
    cdef double complex[::1] out = out_arr
    cdef double complex rot = cexp(1j * angle)
    cdef double complex k, g0
    for i in range(n):
        k = sv[i] * rot
        g0 = -(0.5 * g) / (k * k + 0.5 * g + k * (k * k + g) ** 0.5)
        out[i] = k * cexp(1j * k * r) * g0 * rot
    return out_arr
