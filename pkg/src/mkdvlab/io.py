"""Deterministic serialization: states, trajectories, series, reports.

Floats are written with 17 significant digits, which round-trips float64
exactly; JSON objects are emitted with sorted keys so identical inputs
yield identical bytes.
"""

from __future__ import annotations

import json
import pathlib

import numpy as np

from .dynamics import EquationSpec, Trajectory
from .spectral import FourierState


def fmt17(value: float) -> str:
    """17-significant-digit decimal form; exact float64 round-trip."""
    return format(float(value), ".17g")


def canonical_json(obj) -> str:
    """Deterministic JSON text: sorted keys, 17-digit floats, 2-space indent."""
    pieces: list[str] = []
    _write_json(obj, pieces, 0)
    pieces.append("\n")
    return "".join(pieces)


def _write_json(obj, out: list[str], depth: int) -> None:
    pad = "  " * depth
    inner = "  " * (depth + 1)
    if isinstance(obj, dict):
        if not obj:
            out.append("{}")
            return
        out.append("{\n")
        keys = sorted(obj)
        for i, key in enumerate(keys):
            if not isinstance(key, str):
                raise TypeError(f"JSON object keys must be strings, got {key!r}")
            out.append(inner + json.dumps(key) + ": ")
            _write_json(obj[key], out, depth + 1)
            out.append(",\n" if i < len(keys) - 1 else "\n")
        out.append(pad + "}")
    elif isinstance(obj, (list, tuple)):
        if len(obj) == 0:
            out.append("[]")
            return
        out.append("[\n")
        for i, item in enumerate(obj):
            out.append(inner)
            _write_json(item, out, depth + 1)
            out.append(",\n" if i < len(obj) - 1 else "\n")
        out.append(pad + "]")
    elif isinstance(obj, (bool, np.bool_)):
        out.append("true" if obj else "false")
    elif isinstance(obj, (int, np.integer)):
        out.append(str(int(obj)))
    elif isinstance(obj, (float, np.floating)):
        value = float(obj)
        if not np.isfinite(value):
            raise ValueError("non-finite floats cannot be serialized")
        out.append(fmt17(value))
    elif isinstance(obj, str):
        out.append(json.dumps(obj))
    elif obj is None:
        out.append("null")
    else:
        raise TypeError(f"cannot serialize {type(obj).__name__} to JSON")


def state_to_csv_text(state: FourierState) -> str:
    lines = ["n,re,im"]
    for n, value in zip(state.modes, state.coeffs):
        lines.append(f"{int(n)},{fmt17(value.real)},{fmt17(value.imag)}")
    return "\n".join(lines) + "\n"


def state_from_csv_text(text: str, time: float = 0.0) -> FourierState:
    rows: dict[int, complex] = {}
    lines = [line.strip() for line in text.strip().splitlines() if line.strip()]
    if not lines or lines[0].lower().replace(" ", "") != "n,re,im":
        raise ValueError("state CSV must start with header 'n,re,im'")
    for line in lines[1:]:
        parts = line.split(",")
        if len(parts) != 3:
            raise ValueError(f"bad state CSV row: {line!r}")
        n = int(parts[0])
        if n in rows:
            raise ValueError(f"state CSV lists mode {n} twice")
        rows[n] = float(parts[1]) + 1j * float(parts[2])
    if not rows:
        raise ValueError("state CSV carries no modes")
    cap = max(abs(n) for n in rows)
    if sorted(rows) != list(range(-cap, cap + 1)):
        raise ValueError("state CSV must list every mode -M..M exactly once")
    coeffs = np.array([rows[n] for n in range(-cap, cap + 1)])
    return FourierState(coeffs, cap, time)


def state_to_json_text(state: FourierState) -> str:
    payload = {
        "mode_cap": state.mode_cap,
        "time": state.time,
        "coeffs": [
            [int(n), value.real, value.imag]
            for n, value in zip(state.modes, state.coeffs)
        ],
    }
    return canonical_json(payload)


def state_from_json_text(text: str) -> FourierState:
    payload = json.loads(text)
    cap = int(payload["mode_cap"])
    coeffs = np.zeros(2 * cap + 1, dtype=np.complex128)
    for n, re, im in payload["coeffs"]:
        if abs(int(n)) > cap:
            raise ValueError(f"mode {n} exceeds mode_cap {cap}")
        coeffs[int(n) + cap] = float(re) + 1j * float(im)
    return FourierState(coeffs, cap, float(payload.get("time", 0.0)))


def load_state(path) -> FourierState:
    path = pathlib.Path(path)
    text = path.read_text()
    if path.suffix.lower() == ".json":
        return state_from_json_text(text)
    return state_from_csv_text(text)


def series_to_csv_text(xlabel: str, ylabel: str, rows) -> str:
    lines = [f"{xlabel},{ylabel}"]
    for x, y in rows:
        lines.append(f"{fmt17(x)},{fmt17(y)}")
    return "\n".join(lines) + "\n"


def _jsonable_metadata(metadata: dict) -> dict:
    out = {}
    for key, value in metadata.items():
        if isinstance(value, tuple):
            value = list(value)
        out[str(key)] = value
    return out


def trajectory_to_dir(trajectory: Trajectory, directory, extra_manifest=None) -> None:
    """Write manifest.json plus states/state_NNNNNN.csv under ``directory``."""
    directory = pathlib.Path(directory)
    states_dir = directory / "states"
    states_dir.mkdir(parents=True, exist_ok=True)
    manifest = {
        "kind": "trajectory",
        "mode_cap": trajectory.mode_cap,
        "dt": trajectory.dt,
        "t0": trajectory.states[0].time,
        "num_states": len(trajectory),
        "equation": None
        if trajectory.equation is None
        else {
            "variant": trajectory.equation.variant,
            "sign": trajectory.equation.sign,
        },
        "metadata": _jsonable_metadata(trajectory.metadata),
    }
    if extra_manifest:
        for key, value in extra_manifest.items():
            manifest[key] = value
    (directory / "manifest.json").write_text(canonical_json(manifest))
    for k, state in enumerate(trajectory.states):
        (states_dir / f"state_{k:06d}.csv").write_text(state_to_csv_text(state))


def trajectory_from_dir(directory) -> Trajectory:
    directory = pathlib.Path(directory)
    manifest = json.loads((directory / "manifest.json").read_text())
    if manifest.get("kind") != "trajectory":
        raise ValueError(f"{directory} does not hold a trajectory")
    dt = float(manifest["dt"])
    t0 = float(manifest["t0"])
    count = int(manifest["num_states"])
    states = []
    for k in range(count):
        text = (directory / "states" / f"state_{k:06d}.csv").read_text()
        states.append(state_from_csv_text(text, time=t0 + k * dt))
    equation = None
    if manifest.get("equation"):
        equation = EquationSpec(
            manifest["equation"]["variant"], int(manifest["equation"]["sign"])
        )
    metadata = manifest.get("metadata") or {}
    return Trajectory(tuple(states), dt, equation, metadata)
