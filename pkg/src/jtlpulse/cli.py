"""Command line interface: parameter derivation, scenario runs, validation.

Config files are INI-style text with [circuit], [drive], [solver] and
[scenario] sections; every physical quantity is a base-SI float (A, F, H,
Ohm, s, rad/s).  Unknown sections or keys are rejected.  Exit codes:
0 success, 2 configuration error, 3 runtime/numerics error.
"""

from __future__ import annotations

import argparse
import configparser
import math
import sys

from .circuit import CircuitParams, ParameterError, derive
from .solver import SolverError
from .analysis import AnalysisError
from .experiments import SCENARIO_IDS, ScenarioError, ScenarioSpec, run_scenario


class ConfigError(ValueError):
    """Malformed or inconsistent configuration file."""


_PREFIXES = (
    (1e24, "Y"), (1e21, "Z"), (1e18, "E"), (1e15, "P"), (1e12, "T"),
    (1e9, "G"), (1e6, "M"), (1e3, "k"), (1.0, ""), (1e-3, "m"),
    (1e-6, "u"), (1e-9, "n"), (1e-12, "p"), (1e-15, "f"), (1e-18, "a"),
    (1e-21, "z"), (1e-24, "y"),
)


def eng(value: float, unit: str = "") -> str:
    """Engineering-prefix formatting with six significant digits."""
    if value == 0.0 or not math.isfinite(value):
        return f"{value:.6g} {unit}".rstrip()
    mag = abs(value)
    for scale, prefix in _PREFIXES:
        if mag >= scale:
            return f"{value / scale:.6g} {prefix}{unit}".rstrip()
    scale, prefix = _PREFIXES[-1]
    return f"{value / scale:.6g} {prefix}{unit}".rstrip()


_FLOAT_KEYS = {
    "circuit": {"i_c", "c_j", "l", "r_n", "z_in", "z_out"},
    "drive": {"theta_peak", "sigma", "width", "spacing"},
    "solver": {},
    "scenario": {"i_c", "omega_p", "alpha_in", "alpha_out", "f_plasma",
                 "lambda_j", "v_tilde", "damping_quality", "r_n",
                 "theta_peak", "width"},
}
_INT_KEYS = {
    "circuit": {"n_jtl"},
    "drive": {"n_pairs", "spacing_multiple"},
    "solver": {"dt_divisor"},
    "scenario": {"n_pairs", "n_jtl", "spacing_multiple", "jobs"},
}
_STR_KEYS = {
    "drive": {"protocol"},
    "scenario": {"id", "protocol", "drive_model", "shape"},
}
_LIST_KEYS = {
    "scenario": {"alpha_out_grid", "i_c_grid", "omega_p_grid", "n_pairs_list"},
}


def _parse_section(cfg: configparser.ConfigParser, section: str) -> dict:
    out: dict = {}
    if not cfg.has_section(section):
        return out
    floats = _FLOAT_KEYS.get(section, set())
    ints = _INT_KEYS.get(section, set())
    strs = _STR_KEYS.get(section, set())
    lists = _LIST_KEYS.get(section, set())
    for key, raw in cfg.items(section):
        if key in floats:
            convert = float
        elif key in ints:
            convert = int
        elif key in strs:
            convert = str.strip
        elif key in lists:
            convert = lambda s: [float(x) for x in s.replace(",", " ").split()]
        else:
            raise ConfigError(f"unknown key {key!r} in section [{section}]")
        try:
            out[key] = convert(raw)
        except ValueError as exc:
            raise ConfigError(f"bad value for {key!r} in [{section}]: {raw!r}") from exc
    return out


def load_config(path: str) -> dict:
    """Parse and validate a config file into per-section dicts."""
    cfg = configparser.ConfigParser(inline_comment_prefixes=("#", ";"))
    read = cfg.read(path)
    if not read:
        raise ConfigError(f"cannot read config file {path!r}")
    known = {"circuit", "drive", "solver", "scenario"}
    unknown = set(cfg.sections()) - known
    if unknown:
        raise ConfigError(f"unknown config sections: {sorted(unknown)}")
    return {section: _parse_section(cfg, section) for section in known}


def circuit_from_config(conf: dict) -> CircuitParams:
    """Build CircuitParams from the [circuit] section.

    z_in and z_out default to the standard termination ratios
    (z_jtl/5 and z_jtl/0.25) when omitted.
    """
    section = dict(conf.get("circuit", {}))
    for key in ("i_c", "c_j", "l"):
        if key not in section:
            raise ConfigError(f"[circuit] section is missing required key {key!r}")
    z_jtl = math.sqrt(section["l"] / section["c_j"])
    section.setdefault("z_in", z_jtl / 5.0)
    section.setdefault("z_out", z_jtl / 0.25)
    return CircuitParams(**section)


def cmd_derive(args) -> int:
    conf = load_config(args.config)
    params = circuit_from_config(conf)
    d = derive(params)
    print(f"lambda_j  = {d.lambda_j:.6g} cells")
    print(f"f_plasma  = {eng(d.omega_p / (2.0 * math.pi), 'Hz')}")
    print(f"z_jtl     = {eng(d.z_jtl, 'Ohm')}")
    print(f"beta_c    = {d.beta_c:.6g}")
    print(f"alpha_in  = {d.alpha_in:.6g}")
    print(f"alpha_out = {d.alpha_out:.6g}")
    print(f"tau_lr    = {eng(d.tau_lr, 's')}")
    print(f"e_0       = {eng(d.e_0, 'J')}")
    return 0


def cmd_validate(args) -> int:
    conf = load_config(args.config)
    if conf.get("circuit"):
        circuit_from_config(conf)
    scenario = conf.get("scenario", {})
    if scenario:
        sid = scenario.get("id")
        if sid not in SCENARIO_IDS:
            raise ConfigError(
                f"unknown scenario id {sid!r}; valid ids: {', '.join(SCENARIO_IDS)}"
            )
    print("configuration ok")
    return 0


def _scenario_overrides(conf: dict, args) -> tuple[str, dict]:
    scenario = dict(conf.get("scenario", {}))
    sid = args.scenario or scenario.pop("id", None)
    scenario.pop("id", None)
    if sid is None:
        raise ConfigError("no scenario id given (use --scenario or [scenario] id)")
    if sid not in SCENARIO_IDS:
        raise ConfigError(
            f"unknown scenario id {sid!r}; valid ids: {', '.join(SCENARIO_IDS)}"
        )
    overrides = {}
    drive = conf.get("drive", {})
    if sid in ("flat_top", "gaussian", "bandwidth_sweep"):
        if "protocol" in drive and sid != "bandwidth_sweep":
            overrides["shape"] = drive["protocol"]
        for key in ("n_pairs", "spacing_multiple", "theta_peak", "sigma", "width"):
            if key in drive and not (sid == "bandwidth_sweep" and key == "n_pairs"):
                overrides[key] = drive[key]
    elif drive:
        raise ConfigError(
            f"[drive] section does not apply to scenario {sid!r}"
        )
    jobs = scenario.pop("jobs", None)
    allowed = {
        "single_fluxon": {"alpha_out_grid", "i_c", "f_plasma", "lambda_j",
                          "v_tilde", "alpha_in", "damping_quality", "n_jtl"},
        "alpha_sweep": {"alpha_out_grid", "i_c", "f_plasma", "lambda_j",
                        "v_tilde", "alpha_in", "damping_quality", "n_jtl"},
        "flat_top": {"i_c", "omega_p", "n_pairs", "alpha_in", "alpha_out",
                     "r_n", "theta_peak", "width", "spacing_multiple",
                     "lambda_j", "n_jtl", "drive_model", "shape"},
        "gaussian": {"i_c", "omega_p", "n_pairs", "alpha_in", "alpha_out",
                     "r_n", "theta_peak", "width", "spacing_multiple",
                     "lambda_j", "n_jtl", "drive_model", "shape"},
        "bandwidth_sweep": {"n_pairs_list", "i_c", "f_plasma", "lambda_j",
                            "alpha_in", "alpha_out", "r_n", "width",
                            "spacing_multiple"},
        "efficiency_map": {"i_c_grid", "omega_p_grid", "protocol",
                           "alpha_in", "damping_quality"},
        "table1": set(),
    }[sid]
    bad = set(scenario) - allowed
    if bad:
        raise ConfigError(
            f"keys {sorted(bad)} are not valid for scenario {sid!r}"
        )
    if "alpha_out_grid" in scenario:
        scenario["alpha_out"] = scenario.pop("alpha_out_grid")
    overrides.update(scenario)
    solver = conf.get("solver", {})
    if args.dt_divisor is not None:
        overrides["dt_divisor"] = args.dt_divisor
    elif "dt_divisor" in solver:
        overrides["dt_divisor"] = solver["dt_divisor"]
    if args.jobs is not None:
        jobs = args.jobs
    overrides["_jobs"] = jobs
    return sid, overrides


def cmd_run(args) -> int:
    conf = load_config(args.config)
    sid, overrides = _scenario_overrides(conf, args)
    jobs = overrides.pop("_jobs", None)
    spec = ScenarioSpec(scenario=sid, overrides=overrides, outdir=args.out)
    try:
        report = run_scenario(spec, jobs=jobs)
    except (ScenarioError, ParameterError) as exc:
        raise ConfigError(str(exc)) from exc
    except (SolverError, AnalysisError) as exc:
        print(
            f"scenario {sid!r} failed with resolved overrides {overrides!r}",
            file=sys.stderr,
        )
        raise
    paths = report.write_outputs(args.out)
    for i, run in enumerate(report.runs):
        f0 = f"{run.f0 / 1e9:.6g} GHz" if run.f0 else "-"
        fwhm = f"{run.fwhm / 1e6:.6g} MHz" if run.fwhm else "-"
        eta = f"{run.eta:.6g}" if run.eta is not None else "-"
        line = f"run {i:03d}"
        if "protocol" in run.config:
            line += f" {run.config['protocol']} i_c={run.config['i_c'] * 1e6:.6g} uA"
        line += f" f0={f0} fwhm={fwhm} eta={eta}"
        if run.power is not None:
            line += (
                f" p_in={run.power.avg_input_power * 1e9:.6g} nW"
                f" p_band={run.power.band_power_dbm:.6g} dBm"
            )
        if run.regime:
            line += f" regime={run.regime}"
        if run.fit is not None:
            line += f" f_osc={run.fit.f_osc / 1e9:.6g} GHz"
        if run.passed is not None:
            line += " PASS" if run.passed else f" FAIL({run.notes})"
        print(line)
    print(f"wrote {len(paths)} files to {args.out}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="jtlpulse",
        description="Josephson transmission line microwave pulse simulator",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    p_derive = sub.add_parser("derive", help="print derived circuit scales")
    p_derive.add_argument("--config", required=True)
    p_derive.set_defaults(func=cmd_derive)
    p_run = sub.add_parser("run", help="execute a scenario")
    p_run.add_argument("--config", required=True)
    p_run.add_argument("--scenario", choices=SCENARIO_IDS)
    p_run.add_argument("--out", default=".")
    p_run.add_argument("--jobs", type=int, default=None)
    p_run.add_argument("--dt-divisor", type=int, default=None)
    p_run.set_defaults(func=cmd_run)
    p_val = sub.add_parser("validate", help="check a config file")
    p_val.add_argument("--config", required=True)
    p_val.set_defaults(func=cmd_validate)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ConfigError, ParameterError, ScenarioError, ValueError) as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return 2
    except (SolverError, AnalysisError, ArithmeticError, OSError) as exc:
        print(f"runtime error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
