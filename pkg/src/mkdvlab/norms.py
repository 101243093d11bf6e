"""Weighted Fourier-side norms and momentum diagnostics."""

from __future__ import annotations

import dataclasses
import math
from typing import Callable, Sequence, Union

import numpy as np
from scipy import fft as sfft

from .spectral import TWO_PI, FourierState

#: Default tolerance for the momentum limit verdict.
MOMENTUM_TOL = 1e-6


def japanese_bracket(n) -> np.ndarray:
    """<n> = (1 + n^2)^(1/2), vectorized."""
    arr = np.asarray(n, dtype=np.float64)
    return np.sqrt(1.0 + arr * arr)


def _check_exponent(value: float, name: str) -> float:
    value = float(value)
    if not (value >= 1.0):  # rejects NaN too
        raise ValueError(f"{name} must satisfy {name} >= 1, got {value}")
    return value


@dataclasses.dataclass(frozen=True)
class NormSpec:
    """Weighted-norm parameters: s (regularity), p (mode exponent).

    ``b`` and ``q`` only matter for space-time norms; both default to None
    and ``q`` falls back to 2 when a space-time norm is evaluated.
    """

    s: float
    p: float
    b: float | None = None
    q: float | None = None

    def __post_init__(self):
        object.__setattr__(self, "s", float(self.s))
        object.__setattr__(self, "p", _check_exponent(self.p, "p"))
        if self.b is not None:
            object.__setattr__(self, "b", float(self.b))
        if self.q is not None:
            object.__setattr__(self, "q", _check_exponent(self.q, "q"))


def _weighted_lp(values: np.ndarray, p: float) -> float:
    """l^p of nonnegative values; p = inf gives the sup."""
    if math.isinf(p):
        return float(np.max(values, initial=0.0))
    if p == 1.0:
        return float(np.sum(values))
    if p == 2.0:
        return float(np.sqrt(np.sum(values * values)))
    return float(np.sum(values**p) ** (1.0 / p))


def fl_norm(state: FourierState, spec: NormSpec) -> float:
    """|| <n>^s u_hat(n) ||_{l^p} over |n| <= mode_cap."""
    weights = japanese_bracket(state.modes) ** spec.s
    return _weighted_lp(weights * np.abs(state.coeffs), spec.p)


def mass(state: FourierState) -> float:
    """sum |u_hat(n)|^2 = (1/2pi) int |u|^2 dx."""
    return float(np.vdot(state.coeffs, state.coeffs).real)


def momentum(state: FourierState) -> float:
    """P(u) = sum n |u_hat(n)|^2; real by construction."""
    mags = np.abs(state.coeffs)
    return float(np.sum(state.modes * mags * mags))


CoefficientRule = Callable[[int], complex]
MomentumSource = Union[FourierState, CoefficientRule]


def _coefficients_up_to(source: MomentumSource, radius: int) -> np.ndarray:
    """Coefficient array for n = -radius..radius from a state or a rule."""
    if isinstance(source, FourierState):
        out = np.zeros(2 * radius + 1, dtype=np.complex128)
        lo = min(radius, source.mode_cap)
        out[radius - lo : radius + lo + 1] = source.coeffs[
            source.mode_cap - lo : source.mode_cap + lo + 1
        ]
        return out
    return np.array(
        [complex(source(int(n))) for n in range(-radius, radius + 1)],
        dtype=np.complex128,
    )


def truncated_momentum(source: MomentumSource, cutoff: int) -> float:
    """P_N = sum_{|n| <= N} n |u_hat(n)|^2."""
    if cutoff < 0:
        raise ValueError("cutoff must be >= 0")
    coeffs = _coefficients_up_to(source, cutoff)
    mags = np.abs(coeffs)
    ns = np.arange(-cutoff, cutoff + 1)
    return float(np.sum(ns * mags * mags))


@dataclasses.dataclass(frozen=True)
class MomentumSeries:
    """Truncated momenta P_N along a schedule plus a limit verdict."""

    truncations: tuple[tuple[int, float], ...]
    verdict: str  # "converged" | "diverging" | "undetermined"
    limit: float | None
    tol: float

    @property
    def values(self) -> list[float]:
        return [p for _, p in self.truncations]


def momentum_limit_diagnostic(
    source: MomentumSource,
    schedule: Sequence[int],
    tol: float = MOMENTUM_TOL,
) -> MomentumSeries:
    """Classify the truncation limit of P_N along an increasing schedule.

    converged: the last three successive differences all fall below
    tol * (1 + |P_last|).  diverging: |P_last| has grown by a factor >= 2
    over |P_first| across the schedule.  Anything else: undetermined.
    """
    sched = [int(N) for N in schedule]
    if len(sched) < 4:
        raise ValueError("schedule needs at least 4 entries")
    if any(b <= a for a, b in zip(sched, sched[1:])) or sched[0] < 0:
        raise ValueError("schedule must be strictly increasing and nonnegative")

    coeffs = _coefficients_up_to(source, sched[-1])
    ns = np.arange(-sched[-1], sched[-1] + 1)
    terms = ns * np.abs(coeffs) ** 2
    values = [float(np.sum(terms[np.abs(ns) <= N])) for N in sched]

    diffs = [abs(b - a) for a, b in zip(values, values[1:])]
    scale = tol * (1.0 + abs(values[-1]))
    if all(d <= scale for d in diffs[-3:]):
        verdict, limit = "converged", values[-1]
    elif abs(values[-1]) >= 2.0 * abs(values[0]):
        verdict, limit = "diverging", None
    else:
        verdict, limit = "undetermined", None
    return MomentumSeries(
        truncations=tuple(zip(sched, values)),
        verdict=verdict,
        limit=limit,
        tol=float(tol),
    )


def raised_cosine(t, span: float):
    """Window w(t) = (1 - cos(2 pi t / span)) / 2 on [0, span], 0 outside."""
    arr = np.asarray(t, dtype=np.float64)
    inside = (arr >= 0.0) & (arr <= span)
    values = np.where(inside, 0.5 * (1.0 - np.cos(TWO_PI * arr / span)), 0.0)
    if np.isscalar(t):
        return float(values)
    return values


def xsb_norm(trajectory, spec: NormSpec) -> float:
    """Windowed space-time norm || <n>^s <tau - n^3>^b F u ||_{l^p_n L^q_tau}.

    Proxy, not the restriction norm: the trajectory is multiplied by a
    raised-cosine window over its span and transformed on the finite,
    uniform time grid, which upper-bound-flavors the infimum over
    extensions.  Time frequencies past the grid Nyquist rate pi/dt are not
    resolved, so modes with |n|^3 beyond it contribute through aliased
    weights.  Needs >= 8 samples.
    """
    if spec.b is None:
        raise ValueError("xsb_norm needs a NormSpec with b set")
    q = 2.0 if spec.q is None else spec.q
    states = trajectory.states
    num = len(states)
    if num < 8:
        raise ValueError(f"xsb_norm needs at least 8 time samples, got {num}")
    dt = trajectory.dt
    span = (num - 1) * dt

    # Rows: time samples; columns: modes.
    stack = np.stack([st.coeffs for st in states])
    rel_times = np.arange(num) * dt
    stack = stack * raised_cosine(rel_times, span)[:, None]

    # Continuum-normalized transform samples at tau_m = 2 pi m / (num dt).
    freq_part = sfft.fft(stack, axis=0) * (dt / TWO_PI)
    taus = TWO_PI * sfft.fftfreq(num, d=dt)
    dtau = TWO_PI / (num * dt)

    modes = states[0].modes.astype(np.float64)
    tau_weight = japanese_bracket(taus[:, None] - modes[None, :] ** 3) ** spec.b
    weighted = np.abs(freq_part) * tau_weight
    if math.isinf(q):
        per_mode = np.max(weighted, axis=0)
    else:
        per_mode = np.sum(weighted**q, axis=0) ** (1.0 / q) * dtau ** (1.0 / q)
    per_mode = per_mode * japanese_bracket(modes) ** spec.s
    return _weighted_lp(per_mode, spec.p)
