"""Compiled fixed-step integration kernels.

Everything here is numba-jitted and free of Python objects; the wrappers
in time_oracle and harmonic_balance own argument handling and errors.
State is (x, v); the equation integrated is

    x'' + two_zw * x' + w0sq * x + alpha * x**3 = gb * sin(omega * t).
"""

from __future__ import annotations

import numpy as np
from numba import njit


@njit(cache=True, inline="always")
def _acc(t, x, v, w0sq, two_zw, alpha, gb, omega):
    return gb * np.sin(omega * t) - two_zw * v - w0sq * x - alpha * x * x * x


@njit(cache=True, inline="always")
def _step(t, x, v, dt, w0sq, two_zw, alpha, gb, omega):
    ax1 = v
    av1 = _acc(t, x, v, w0sq, two_zw, alpha, gb, omega)
    x2 = x + 0.5 * dt * ax1
    v2 = v + 0.5 * dt * av1
    ax2 = v2
    av2 = _acc(t + 0.5 * dt, x2, v2, w0sq, two_zw, alpha, gb, omega)
    x3 = x + 0.5 * dt * ax2
    v3 = v + 0.5 * dt * av2
    ax3 = v3
    av3 = _acc(t + 0.5 * dt, x3, v3, w0sq, two_zw, alpha, gb, omega)
    x4 = x + dt * ax3
    v4 = v + dt * av3
    ax4 = v4
    av4 = _acc(t + dt, x4, v4, w0sq, two_zw, alpha, gb, omega)
    xn = x + dt / 6.0 * (ax1 + 2.0 * ax2 + 2.0 * ax3 + ax4)
    vn = v + dt / 6.0 * (av1 + 2.0 * av2 + 2.0 * av3 + av4)
    return xn, vn


@njit(cache=True)
def rk4_final(x0, v0, t0, dt, n_steps, w0sq, two_zw, alpha, gb, omega):
    """Terminal state only; (nan, nan) on overflow."""
    x, v = x0, v0
    for i in range(n_steps):
        t = t0 + i * dt
        x, v = _step(t, x, v, dt, w0sq, two_zw, alpha, gb, omega)
        if not (np.isfinite(x) and np.isfinite(v)):
            return np.nan, np.nan
    return x, v


@njit(cache=True)
def rk4_sample(x0, v0, t0, dt, n_steps, w0sq, two_zw, alpha, gb, omega):
    """Full sampled trajectory, shape (n_steps + 1, 2); nan tail on overflow."""
    out = np.empty((n_steps + 1, 2))
    out[0, 0] = x0
    out[0, 1] = v0
    x, v = x0, v0
    for i in range(n_steps):
        t = t0 + i * dt
        x, v = _step(t, x, v, dt, w0sq, two_zw, alpha, gb, omega)
        if not (np.isfinite(x) and np.isfinite(v)):
            out[i + 1 :, :] = np.nan
            return out
        out[i + 1, 0] = x
        out[i + 1, 1] = v
    return out


@njit(cache=True, inline="always")
def _series_x(t, a_cos, a_sin, omega_b):
    x = a_cos[0]
    for j in range(1, a_cos.shape[0]):
        x += a_cos[j] * np.cos(j * omega_b * t) + a_sin[j] * np.sin(j * omega_b * t)
    return x


@njit(cache=True)
def hill_monodromy(a_cos, a_sin, omega_b, n_steps, w0sq, two_zw, alpha):
    """Monodromy matrix of y'' + two_zw y' + (w0sq + 3 alpha x(t)^2) y = 0.

    x(t) is the harmonic series with period 2 pi / omega_b; both unit
    initial conditions are propagated over exactly one period.
    """
    period = 2.0 * np.pi / omega_b
    dt = period / n_steps
    # columns: (y, y') from (1, 0) and from (0, 1)
    y1, d1 = 1.0, 0.0
    y2, d2 = 0.0, 1.0
    for i in range(n_steps):
        t = i * dt
        k_a = w0sq + 3.0 * alpha * _series_x(t, a_cos, a_sin, omega_b) ** 2
        xm = _series_x(t + 0.5 * dt, a_cos, a_sin, omega_b)
        k_b = w0sq + 3.0 * alpha * xm * xm
        xe = _series_x(t + dt, a_cos, a_sin, omega_b)
        k_c = w0sq + 3.0 * alpha * xe * xe

        # RK4 on the pair of variational columns with frozen-stage stiffness
        a1y, a1d = d1, -two_zw * d1 - k_a * y1
        b1y, b1d = d2, -two_zw * d2 - k_a * y2
        y1m, d1m = y1 + 0.5 * dt * a1y, d1 + 0.5 * dt * a1d
        y2m, d2m = y2 + 0.5 * dt * b1y, d2 + 0.5 * dt * b1d
        a2y, a2d = d1m, -two_zw * d1m - k_b * y1m
        b2y, b2d = d2m, -two_zw * d2m - k_b * y2m
        y1m, d1m = y1 + 0.5 * dt * a2y, d1 + 0.5 * dt * a2d
        y2m, d2m = y2 + 0.5 * dt * b2y, d2 + 0.5 * dt * b2d
        a3y, a3d = d1m, -two_zw * d1m - k_b * y1m
        b3y, b3d = d2m, -two_zw * d2m - k_b * y2m
        y1e, d1e = y1 + dt * a3y, d1 + dt * a3d
        y2e, d2e = y2 + dt * b3y, d2 + dt * b3d
        a4y, a4d = d1e, -two_zw * d1e - k_c * y1e
        b4y, b4d = d2e, -two_zw * d2e - k_c * y2e

        y1 += dt / 6.0 * (a1y + 2.0 * a2y + 2.0 * a3y + a4y)
        d1 += dt / 6.0 * (a1d + 2.0 * a2d + 2.0 * a3d + a4d)
        y2 += dt / 6.0 * (b1y + 2.0 * b2y + 2.0 * b3y + b4y)
        d2 += dt / 6.0 * (b1d + 2.0 * b2d + 2.0 * b3d + b4d)

    out = np.empty((2, 2))
    out[0, 0], out[0, 1] = y1, y2
    out[1, 0], out[1, 1] = d1, d2
    return out
