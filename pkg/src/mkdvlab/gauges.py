"""Gauge maps linking the three family members.

G1 shifts out the mean transport: G1(u)(t, x) = u(t, x - sign * mu * t)
with mu the (conserved) mass, turning mkdv solutions into mkdv1
solutions.  G2 removes the momentum phase: G2(v)(t) = e^{-i sign P t} v(t)
with P the momentum, turning mkdv1 solutions into mkdv2 solutions.  Both
scalars are frozen from the initial slice.
"""

from __future__ import annotations

import dataclasses

import numpy as np

from .dynamics import EquationSpec, Trajectory
from .errors import GaugeMismatchError
from .norms import mass, momentum

_FORWARD = {"G1": ("mkdv", "mkdv1"), "G2": ("mkdv1", "mkdv2")}


@dataclasses.dataclass(frozen=True)
class GaugeSpec:
    """Which gauge, the equation sign it was applied for, and the frozen scalar."""

    which: str
    sign: int
    scalar: float

    def __post_init__(self):
        if self.which not in _FORWARD:
            raise ValueError(f"gauge must be G1 or G2, got {self.which!r}")
        if self.sign not in (1, -1):
            raise ValueError("sign must be +1 or -1")
        object.__setattr__(self, "scalar", float(self.scalar))

    def to_record(self) -> dict:
        return {"which": self.which, "sign": self.sign, "scalar": self.scalar}

    @classmethod
    def from_record(cls, record: dict) -> "GaugeSpec":
        return cls(record["which"], int(record["sign"]), float(record["scalar"]))


def _resolve_sign(trajectory: Trajectory, sign: int | None) -> int:
    if sign is None:
        if trajectory.equation is None:
            raise ValueError(
                "trajectory carries no equation; pass the gauge sign explicitly"
            )
        return trajectory.equation.sign
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    if trajectory.equation is not None and trajectory.equation.sign != sign:
        raise ValueError(
            f"explicit sign {sign:+d} contradicts the trajectory equation "
            f"sign {trajectory.equation.sign:+d}"
        )
    return int(sign)


def _slice_phases(spec: GaugeSpec, state) -> np.ndarray:
    if spec.which == "G1":
        # Translation by sign * mu * t: mode n picks up e^{-i n sign mu t}.
        return np.exp(-1j * spec.sign * spec.scalar * state.time * state.modes)
    # Global phase e^{-i sign P t}.
    return np.full(
        state.coeffs.shape, np.exp(-1j * spec.sign * spec.scalar * state.time)
    )


def _apply(trajectory: Trajectory, spec: GaugeSpec, inverse: bool) -> Trajectory:
    slices = []
    for st in trajectory.states:
        phases = _slice_phases(spec, st)
        if inverse:
            phases = np.conj(phases)
        slices.append(st.with_(coeffs=phases * st.coeffs))

    metadata = dict(trajectory.metadata)
    records = list(metadata.get("gauges", ()))
    domain, codomain = _FORWARD[spec.which]
    equation = trajectory.equation
    if inverse:
        records.pop()
        if equation is not None and equation.variant == codomain:
            equation = EquationSpec(domain, equation.sign)
    else:
        records.append(spec.to_record())
        if equation is not None and equation.variant == domain:
            equation = EquationSpec(codomain, equation.sign)
    metadata["gauges"] = records
    return Trajectory(tuple(slices), trajectory.dt, equation, metadata)


def apply_gauge1(trajectory: Trajectory, sign: int | None = None) -> Trajectory:
    """Translate by the conserved mass; maps mkdv runs onto mkdv1 runs."""
    resolved = _resolve_sign(trajectory, sign)
    spec = GaugeSpec("G1", resolved, mass(trajectory.initial))
    return _apply(trajectory, spec, inverse=False)


def apply_gauge2(trajectory: Trajectory, sign: int | None = None) -> Trajectory:
    """Remove the momentum phase; maps mkdv1 runs onto mkdv2 runs."""
    resolved = _resolve_sign(trajectory, sign)
    spec = GaugeSpec("G2", resolved, momentum(trajectory.initial))
    return _apply(trajectory, spec, inverse=False)


def last_gauge(trajectory: Trajectory) -> GaugeSpec | None:
    records = trajectory.metadata.get("gauges") or ()
    if not records:
        return None
    return GaugeSpec.from_record(records[-1])


def invert_gauge(
    trajectory: Trajectory, spec: GaugeSpec | None = None
) -> Trajectory:
    """Undo the most recent recorded gauge; exact up to rounding.

    When ``spec`` is given it must match the recorded gauge (same map,
    same sign, scalar to within 1e-12 relative), otherwise the inversion
    is refused.
    """
    recorded = last_gauge(trajectory)
    if recorded is None:
        raise GaugeMismatchError("trajectory has no recorded gauge to invert")
    if spec is not None:
        scalar_close = abs(spec.scalar - recorded.scalar) <= 1e-12 * (
            1.0 + abs(recorded.scalar)
        )
        if spec.which != recorded.which or spec.sign != recorded.sign or not scalar_close:
            raise GaugeMismatchError(
                f"requested {spec} does not match recorded {recorded}"
            )
    return _apply(trajectory, recorded, inverse=True)
