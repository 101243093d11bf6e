"""Shared helpers: independent oracles and state factories.

The oracles recompute spectral quantities straight from the definitions
(direct quadrature sums, no FFT anywhere), giving every transform-based
result in the package a second, structurally different route to agree
with.
"""

import numpy as np

from mkdvlab.spectral import FourierState

TWO_PI = 2.0 * np.pi


def oracle_synthesis(state: FourierState, num_points: int) -> np.ndarray:
    """u(x_j) = sum_n u_hat(n) e^{i n x_j} by direct summation."""
    xs = TWO_PI * np.arange(num_points) / num_points
    return np.exp(1j * np.outer(xs, state.modes)) @ state.coeffs


def oracle_analysis(samples: np.ndarray, mode_cap: int) -> np.ndarray:
    """u_hat(n) = (1/2pi) int u e^{-inx} dx via the exact periodic rule."""
    num = samples.size
    xs = TWO_PI * np.arange(num) / num
    ns = np.arange(-mode_cap, mode_cap + 1)
    return np.exp(-1j * np.outer(ns, xs)) @ samples / num


def oracle_cubic(state: FourierState) -> np.ndarray:
    """Coefficients of |u|^2 u_x on |n| <= M by physical-space quadrature.

    4M+1 points make the periodic rule exact for the degree-3M integrand,
    so this route shares nothing with either the padded-FFT product or
    the Fourier-side convolution sum.
    """
    cap = state.mode_cap
    num = 4 * cap + 1
    u = oracle_synthesis(state, num)
    ux = oracle_synthesis(
        state.with_(coeffs=1j * state.modes * state.coeffs), num
    )
    return oracle_analysis(np.abs(u) ** 2 * ux, cap)


def random_state(mode_cap: int, seed: int, scale: float = 0.3) -> FourierState:
    rng = np.random.default_rng(seed)
    size = 2 * mode_cap + 1
    coeffs = scale * (rng.standard_normal(size) + 1j * rng.standard_normal(size))
    return FourierState(coeffs, mode_cap)
