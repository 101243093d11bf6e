"""Command line front end: solve, gauge, norms, experiment.

Configuration can come from a flat key=value file (# comments allowed); flags
always win over file values, and the fully-resolved configuration is echoed
into each run's manifest.  Exit codes: 0 success, 1 configuration or usage
error, 2 numerical abort, 3 verdict failure (after the report is written).
"""

from __future__ import annotations

import pathlib
import sys

import click

from . import dynamics
from .dynamics import EquationSpec
from .errors import ConfigError, SolverAbort
from .experiments import (
    cfg_float,
    cfg_int,
    cfg_sign,
    run_experiment,
    write_report,
)
from .gauges import apply_gauge1, apply_gauge2, invert_gauge
from .io import canonical_json, fmt17, load_state, trajectory_from_dir, trajectory_to_dir
from .norms import NormSpec, fl_norm, mass, momentum
from .presets import preset_state


class _VerdictFailure(Exception):
    """Internal signal: report written, at least one verdict failed."""


def _read_config_file(path: str) -> dict[str, str]:
    data: dict[str, str] = {}
    text = pathlib.Path(path).read_text()
    for line_no, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ConfigError(f"{path}:{line_no}: expected key=value, got {raw!r}")
        key, _, value = line.partition("=")
        if not key.strip():
            raise ConfigError(f"{path}:{line_no}: empty key")
        data[key.strip()] = value.strip()
    return data


def _resolve(defaults: dict[str, str], file_path, flag_values: dict) -> dict[str, str]:
    """defaults, then config-file values, then explicit flags."""
    merged = dict(defaults)
    if file_path:
        for key, value in _read_config_file(file_path).items():
            if key not in defaults:
                raise ConfigError(
                    f"unknown config key {key!r} in {file_path}; valid keys: "
                    + ", ".join(sorted(defaults))
                )
            merged[key] = value
    for key, value in flag_values.items():
        if value is not None:
            merged[key] = str(value)
    return merged


def _require(config: dict[str, str], key: str) -> str:
    if not config[key]:
        raise ConfigError(f"missing required field {key!r}")
    return config[key]


@click.group()
def cli() -> None:
    """Pseudo-spectral laboratory for the modified KdV family on the torus."""


SOLVE_DEFAULTS = {
    "eq": "mkdv",
    "sign": "+1",
    "modes": "64",
    "dt": "1e-4",
    "T": "0.5",
    "ic": "",
    "save_every": "1",
    "out": "",
}


@cli.command(name="solve")
@click.option("--eq", default=None, help="equation variant: mkdv, mkdv1, mkdv2")
@click.option("--sign", default=None, help="+1 or -1")
@click.option("--modes", default=None, help="mode cap M")
@click.option("--dt", default=None, help="time step")
@click.option("--T", "horizon", default=None, help="integration horizon")
@click.option("--ic", default=None, help="initial-condition preset, e.g. plane_wave:5,1,0.5")
@click.option("--save-every", default=None, help="save stride in steps")
@click.option("--config", "config_path", default=None, help="key=value config file")
@click.option("--out", default=None, help="output trajectory directory")
def solve_command(eq, sign, modes, dt, horizon, ic, save_every, config_path, out):
    """Integrate one initial condition and write the trajectory."""
    config = _resolve(
        SOLVE_DEFAULTS,
        config_path,
        {
            "eq": eq,
            "sign": sign,
            "modes": modes,
            "dt": dt,
            "T": horizon,
            "ic": ic,
            "save_every": save_every,
            "out": out,
        },
    )
    equation = EquationSpec(config["eq"], cfg_sign(config))
    mode_cap = cfg_int(config, "modes")
    if mode_cap < 1:
        raise ConfigError(f"'modes' must be positive, got {mode_cap}")
    step_dt = cfg_float(config, "dt")
    total = cfg_float(config, "T")
    stride = cfg_int(config, "save_every")
    initial = preset_state(mode_cap, _require(config, "ic"))
    out_dir = _require(config, "out")

    trajectory = dynamics.solve(initial, equation, step_dt, total, stride)
    trajectory_to_dir(
        trajectory, out_dir, extra_manifest={"command": "solve", "config": config}
    )
    click.echo(
        f"wrote {len(trajectory)} states to {out_dir} "
        f"(dt={fmt17(trajectory.dt)}, final t={fmt17(trajectory.final.time)})"
    )


GAUGE_DEFAULTS = {
    "traj": "",
    "which": "G1",
    "invert": "false",
    "sign": "",
    "out": "",
}


@cli.command(name="gauge")
@click.option("--traj", default=None, help="input trajectory directory")
@click.option("--which", default=None, help="G1 or G2")
@click.option("--invert", is_flag=True, default=None, help="undo the recorded gauge")
@click.option("--sign", default=None, help="override the equation sign")
@click.option("--config", "config_path", default=None, help="key=value config file")
@click.option("--out", default=None, help="output trajectory directory")
def gauge_command(traj, which, invert, sign, config_path, out):
    """Apply or invert a gauge transformation on a stored trajectory."""
    config = _resolve(
        GAUGE_DEFAULTS,
        config_path,
        {"traj": traj, "which": which, "invert": invert, "sign": sign, "out": out},
    )
    trajectory = trajectory_from_dir(_require(config, "traj"))
    out_dir = _require(config, "out")
    sign_value = cfg_sign(config) if config["sign"] else None

    inverting = config["invert"].strip().lower() in ("true", "1", "yes")
    if inverting:
        result = invert_gauge(trajectory)
    else:
        which_name = config["which"].strip()
        if which_name == "G1":
            result = apply_gauge1(trajectory, sign_value)
        elif which_name == "G2":
            result = apply_gauge2(trajectory, sign_value)
        else:
            raise ConfigError(f"'which' must be G1 or G2, got {which_name!r}")
    trajectory_to_dir(
        result, out_dir, extra_manifest={"command": "gauge", "config": config}
    )
    click.echo(f"wrote gauged trajectory to {out_dir}")


NORMS_DEFAULTS = {
    "state": "",
    "s": "0,0.5,1",
    "p": "2",
    "out": "",
}


@cli.command(name="norms")
@click.option("--state", default=None, help="serialized state (.csv or .json)")
@click.option("--s", "s_grid", default=None, help="comma list of regularities")
@click.option("--p", "p_grid", default=None, help="comma list of integrability exponents")
@click.option("--config", "config_path", default=None, help="key=value config file")
@click.option("--out", default=None, help="optional JSON output path")
@click.option("--pretty", is_flag=True, default=False, help="aligned human table")
def norms_command(state, s_grid, p_grid, config_path, out, pretty):
    """Print an FL-norm table (CSV on stdout) for a stored state."""
    config = _resolve(
        NORMS_DEFAULTS,
        config_path,
        {"state": state, "s": s_grid, "p": p_grid, "out": out},
    )
    loaded = load_state(_require(config, "state"))

    def parse_grid(key):
        values = []
        for item in config[key].split(","):
            item = item.strip()
            if not item:
                continue
            try:
                values.append(float(item))
            except ValueError:
                raise ConfigError(f"malformed number in {key!r}: {item!r}") from None
        if not values:
            raise ConfigError(f"{key!r} must list at least one value")
        return values

    rows = [
        (s_val, p_val, fl_norm(loaded, NormSpec(s_val, p_val)))
        for s_val in parse_grid("s")
        for p_val in parse_grid("p")
    ]
    if pretty:
        click.echo(f"mass     = {mass(loaded):.12g}")
        click.echo(f"momentum = {momentum(loaded):.12g}")
        for s_val, p_val, value in rows:
            click.echo(f"FL^({s_val:g},{p_val:g})  {value:.12g}")
    else:
        click.echo("s,p,fl_norm")
        for s_val, p_val, value in rows:
            click.echo(f"{fmt17(s_val)},{fmt17(p_val)},{fmt17(value)}")
    if config["out"]:
        payload = {
            "mass": mass(loaded),
            "momentum": momentum(loaded),
            "norms": [
                {"s": s_val, "p": p_val, "value": value}
                for s_val, p_val, value in rows
            ],
        }
        pathlib.Path(config["out"]).write_text(canonical_json(payload))


@cli.command(name="experiment")
@click.argument("name")
@click.option("--config", "config_path", default=None, help="key=value config file")
@click.option(
    "--set",
    "assignments",
    multiple=True,
    help="override one config key, key=value; repeatable",
)
@click.option("--out", required=True, help="output report directory")
def experiment_command(name, config_path, assignments, out):
    """Run a named experiment and write report.json plus series CSVs."""
    overrides: dict[str, str] = {}
    if config_path:
        overrides.update(_read_config_file(config_path))
    for item in assignments:
        if "=" not in item:
            raise ConfigError(f"--set expects key=value, got {item!r}")
        key, _, value = item.partition("=")
        overrides[key.strip()] = value.strip()

    report = run_experiment(name, overrides)
    out_dir = pathlib.Path(out)
    write_report(report, out_dir)
    manifest = {
        "command": "experiment",
        "experiment": name,
        "config": report.parameters,
        "all_passed": report.all_passed,
    }
    (out_dir / "manifest.json").write_text(canonical_json(manifest))

    for verdict in report.verdicts:
        mark = "PASS" if verdict.passed else "FAIL"
        observed = (
            verdict.observed
            if isinstance(verdict.observed, str)
            else f"{verdict.observed:.6g}"
        )
        threshold = report.parameters[verdict.threshold_key]
        click.echo(
            f"{mark} {verdict.name}: observed {observed} "
            f"({verdict.threshold_key}={threshold})"
        )
    click.echo(f"report: {out_dir / 'report.json'}")
    if not report.all_passed:
        raise _VerdictFailure(name)


def main(argv=None) -> None:
    try:
        cli.main(args=argv, standalone_mode=False)
    except click.ClickException as exc:
        exc.show()
        sys.exit(1)
    except click.Abort:
        sys.exit(1)
    except ConfigError as exc:
        click.echo(f"config error: {exc}", err=True)
        sys.exit(1)
    except SolverAbort as exc:
        click.echo(f"numerical abort: {exc}", err=True)
        sys.exit(2)
    except _VerdictFailure as exc:
        click.echo(f"verdict failure in experiment {exc}", err=True)
        sys.exit(3)
    except ValueError as exc:
        click.echo(f"invalid value: {exc}", err=True)
        sys.exit(1)


if __name__ == "__main__":
    main()
