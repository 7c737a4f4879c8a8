"""Canned scenarios reproducing the reference figures and the performance table.

Wires circuit + pulses + solver + analysis into reproducible runs.  Two port
conventions appear here, reflecting how the drive reaches the line:

* ``drive_model="incident"`` -- the pulses travel down the input transmission
  line toward the JTL (single fluxons, efficiency maps); the solver applies
  the line's Thevenin equivalent (open-circuit voltage twice the incident
  wave).
* ``drive_model="source"`` -- the pulse generator sits at the input port and
  its output voltage is the port EMF directly (fluxoid train scenarios that
  reproduce the performance-table powers).

Junction damping also follows the physical architecture: the pulse-train
width anchor is the shunted generator junction (R_SFQ, making the
full pulse width Phi0/(i_c R_SFQ) = 30.71 ps at 3 uA), while the line's own
junctions may be left unshunted (damping set as a multiple of the junction
characteristic impedance sqrt(l_j/c_j)).
"""

from __future__ import annotations

import json
import math
import os
import warnings
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from pathlib import Path

import numpy as np

from .circuit import DEFAULT_R_N, PHI0, CircuitParams, DerivedParams, derive
from .pulses import (
    PhaseEnvelope,
    PulseTrain,
    compile_envelope,
    schedule_spacing,
    sech_pulse,
    single_fluxon_width,
)
from .solver import Trajectory, simulate
from .analysis import (
    AnalysisError,
    BreatherFit,
    InsufficientDataError,
    PowerReport,
    SpectrumResult,
    band_power_dbm,
    breather_fit,
    forward_energy,
    psd,
)

# Shunt resistance of the SFQ pulse generator junction: pins the full drive
# pulse width Phi0/(i_c R) to 30.71 ps at i_c = 3 uA.  Equals 2 pi times the
# line-junction default, so the sech time constant is l_j / R_SFQ.
R_SFQ = 2.0 * math.pi * DEFAULT_R_N

SCENARIO_IDS = (
    "single_fluxon",
    "alpha_sweep",
    "gaussian",
    "flat_top",
    "bandwidth_sweep",
    "efficiency_map",
    "table1",
)


class ScenarioError(ValueError):
    """Bad scenario identifier or scenario parameters."""


@dataclass(frozen=True)
class ScenarioSpec:
    """A scenario request: id, parameter overrides, output directory."""

    scenario: str
    overrides: dict = field(default_factory=dict)
    outdir: str | None = None

    def __post_init__(self) -> None:
        if self.scenario not in SCENARIO_IDS:
            raise ScenarioError(
                f"unknown scenario {self.scenario!r}; valid ids: "
                + ", ".join(SCENARIO_IDS)
            )


@dataclass(frozen=True)
class RunResult:
    """One simulation run with its resolved configuration and observables."""

    config: dict
    f0: float | None = None
    fwhm: float | None = None
    eta: float | None = None
    power: PowerReport | None = None
    fit: BreatherFit | None = None
    regime: str | None = None
    spectrum: SpectrumResult | None = None
    passed: bool | None = None
    notes: str = ""

    def summary(self) -> dict:
        out = {"config": self.config, "f0": self.f0, "fwhm": self.fwhm,
               "eta": self.eta, "regime": self.regime, "notes": self.notes}
        if self.power is not None:
            out["power"] = json.loads(self.power.to_json())
        if self.fit is not None:
            out["fit"] = asdict(self.fit)
        if self.passed is not None:
            out["passed"] = self.passed
        return out


@dataclass(frozen=True)
class ScenarioReport:
    """All runs of one scenario plus full provenance."""

    scenario: str
    runs: tuple[RunResult, ...]
    provenance: dict

    def to_json(self) -> str:
        return json.dumps(
            {
                "scenario": self.scenario,
                "provenance": self.provenance,
                "runs": [r.summary() for r in self.runs],
            },
            indent=2,
        )

    def write_outputs(self, outdir) -> list[str]:
        """Write summary JSON plus per-run spectrum CSVs; returns paths."""
        outdir = Path(outdir)
        outdir.mkdir(parents=True, exist_ok=True)
        paths = []
        summary = outdir / f"{self.scenario}_summary.json"
        summary.write_text(self.to_json())
        paths.append(str(summary))
        for i, run in enumerate(self.runs):
            if run.spectrum is not None:
                p = outdir / f"{self.scenario}_run{i:03d}_spectrum.csv"
                run.spectrum.to_csv(p)
                paths.append(str(p))
        return paths


# Reference performance table: (i_c, l, c_j, n_pairs, f0 GHz, FWHM MHz,
# avg input power nW, band power dBm) for the flat-top and Gaussian rows.
TABLE1_FLAT_TOP = (
    (3e-6, 10.903e-12, 800e-15, 50, 16.991, 418.0, 1.860, -77.213),
    (4e-6, 8.177e-12, 800e-15, 50, 19.609, 482.0, 3.893, -74.472),
    (5e-6, 6.542e-12, 800e-15, 50, 21.918, 536.0, 6.475, -73.056),
    (6e-6, 5.453e-12, 800e-15, 50, 24.018, 582.0, 10.135, -71.448),
)
TABLE1_GAUSSIAN = (
    (3e-6, 17.542e-12, 1000e-15, 41, 15.191, 836.0, 36.207, -65.446),
    (4e-6, 13.159e-12, 1000e-15, 41, 17.536, 964.0, 56.605, -63.957),
    (5e-6, 10.527e-12, 1000e-15, 41, 19.609, 1073.0, 72.096, -63.308),
    (6e-6, 8.773e-12, 1000e-15, 41, 21.482, 1164.0, 97.012, -62.402),
)
TABLE1_TOLERANCES = {"f0": 0.05, "fwhm": 0.40, "p_in": 0.25, "p_band_db": 6.0}


def _jtl_length(lambda_j: float) -> int:
    """Line length minimizing the input impedance seen past the input port."""
    return int(min(5, max(4, round(1.66 * lambda_j))))


def _build_circuit(
    i_c: float,
    omega_p: float,
    lambda_j: float,
    alpha_in: float,
    alpha_out: float,
    n_jtl: int,
    r_n: float,
    l: float | None = None,
    c_j: float | None = None,
) -> CircuitParams:
    """Geometry solve (or literal l, c_j) with the termination ratios."""
    l_j = PHI0 / (2.0 * math.pi * i_c)
    if c_j is None:
        c_j = 1.0 / (omega_p**2 * l_j)
    if l is None:
        l = l_j / lambda_j**2
    z_jtl = math.sqrt(l / c_j)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")  # underdamped notice is expected here
        return CircuitParams(
            i_c=i_c, c_j=c_j, l=l, z_in=z_jtl / alpha_in,
            z_out=z_jtl / alpha_out, r_n=r_n, n_jtl=n_jtl,
        )


def _simulate_settled(
    circuit: CircuitParams,
    train: PulseTrain,
    t_tail0: float,
    *,
    drive_model: str,
    dt_divisor: int,
    residual_frac: float = 1e-3,
    max_extensions: int = 6,
) -> Trajectory:
    """Run until the stored energy residual is below residual_frac of the
    injected forward energy, extending the horizon geometrically."""
    derived = derive(circuit)
    t_plasma = 2.0 * math.pi / derived.omega_p
    dt = t_plasma / dt_divisor
    if drive_model == "incident":
        drive = train
    elif drive_model == "source":
        # literal port EMF: present the train without the Thevenin doubling
        drive = lambda t: train.sample(np.asarray(t, dtype=float))
    else:
        raise ScenarioError(f"unknown drive_model {drive_model!r}")
    t_end = train.duration + t_tail0
    for _ in range(max_extensions + 1):
        traj = simulate(circuit, drive, t_end, dt)
        if not isinstance(drive, PulseTrain):
            traj = Trajectory(
                times=traj.times, phi=traj.phi, v=traj.v,
                v_source=traj.v_source, circuit=traj.circuit,
                derived=traj.derived, drive_end=train.duration,
            )
        e_in = forward_energy(traj.v_node1, traj.i_in, circuit.z_in, traj.times)
        residual = float(traj.stored_energy()[-1])
        if e_in <= 0.0 or residual <= residual_frac * e_in:
            return traj
        t_end = train.duration + (t_end - train.duration) * 2.0
    warnings.warn(
        f"stored energy residual {residual / e_in:.2e} of injected after "
        f"{max_extensions} horizon extensions",
        stacklevel=2,
    )
    return traj


def _measure_train_run(
    traj: Trajectory, seq_duration: float
) -> tuple[SpectrumResult, PowerReport]:
    """Spectrum and power bookkeeping for a pulse-train run."""
    c = traj.circuit
    a_out = traj.v_nodeN / math.sqrt(c.z_out)
    spectrum = psd(a_out, traj.dt)
    e_in = forward_energy(traj.v_node1, traj.i_in, c.z_in, traj.times)
    e_out = forward_energy(traj.v_nodeN, traj.i_out, c.z_out, traj.times)
    band = None
    if spectrum.f0 is not None and spectrum.fwhm is not None:
        band = band_power_dbm(
            a_out, traj.dt, spectrum.f0, spectrum.fwhm, seq_duration
        )
    report = PowerReport(
        e_in_fwd=e_in,
        e_out_fwd=e_out,
        eta=e_out / e_in,
        avg_input_power=e_in / seq_duration,
        band_power_dbm=band,
    )
    return spectrum, report


def run_fluxoid_train(
    i_c: float,
    omega_p: float,
    n_pairs: int,
    *,
    shape: str = "flat_top",
    lambda_j: float = 3.17,
    theta_peak: float = math.pi,
    sigma: float | None = None,
    alpha_in: float = 5.0,
    alpha_out: float = 0.25,
    r_n: float = DEFAULT_R_N,
    width: float | None = None,
    spacing_multiple: int = 1,
    drive_model: str = "source",
    n_jtl: int | None = None,
    l: float | None = None,
    c_j: float | None = None,
    dt_divisor: int = 200,
    keep_spectrum: bool = True,
) -> RunResult:
    """One fluxoid-pair-train run: build, settle, measure.

    ``n_pairs`` pulse pairs means 2 n_pairs alternating pulses compiled from
    2 n_pairs - 1 phase extrema, so the train is balanced.  The drive pulse
    full width defaults to the junction L/R relaxation time tau_lr (30.71 ps
    at 3 uA), realized as a sech time constant tau_lr/(2 pi) since the sech
    extent above a tenth of its peak spans ~2 pi time constants.
    """
    if n_pairs < 1:
        raise ScenarioError(f"n_pairs must be >= 1, got {n_pairs}")
    if n_jtl is None:
        n_jtl = _jtl_length(lambda_j)
    circuit = _build_circuit(
        i_c, omega_p, lambda_j, alpha_in, alpha_out, n_jtl, r_n, l=l, c_j=c_j
    )
    derived = derive(circuit)
    if width is None:
        width = derived.tau_lr / (2.0 * math.pi)
    spacing = schedule_spacing(derived, spacing_multiple)
    m = 2 * n_pairs - 1
    if shape == "flat_top":
        envelope = PhaseEnvelope.flat_top(m, theta_peak)
    elif shape == "gaussian":
        envelope = PhaseEnvelope.gaussian(m, peak=theta_peak, sigma=sigma)
    else:
        raise ScenarioError(f"unknown train shape {shape!r}")
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")  # overlapping pulses are intentional
        train = compile_envelope(envelope, spacing, width, t_start=5.0 * width)
    seq_duration = (m + 1) * spacing
    t_tail0 = 30.0 * 2.0 * math.pi / derived.omega_p
    traj = _simulate_settled(
        circuit, train, t_tail0, drive_model=drive_model, dt_divisor=dt_divisor
    )
    spectrum, power = _measure_train_run(traj, seq_duration)
    config = {
        "shape": shape, "i_c": i_c, "omega_p": derived.omega_p,
        "lambda_j": derived.lambda_j, "n_pairs": n_pairs,
        "theta_peak": theta_peak, "sigma": sigma, "alpha_in": alpha_in,
        "alpha_out": alpha_out, "r_n": circuit.r_n, "l": circuit.l,
        "c_j": circuit.c_j, "n_jtl": n_jtl, "width": width,
        "spacing": spacing, "spacing_multiple": spacing_multiple,
        "drive_model": drive_model, "dt_divisor": dt_divisor,
        "seq_duration": seq_duration,
    }
    return RunResult(
        config=config,
        f0=spectrum.f0,
        fwhm=spectrum.fwhm,
        eta=power.eta,
        power=power,
        spectrum=spectrum if keep_spectrum else None,
    )


def run_flat_top(i_c: float, omega_p: float, n_pairs: int = 50, **kwargs) -> RunResult:
    """Flat-top train: uniform pi extrema, half-area end pulses."""
    kwargs.setdefault("shape", "flat_top")
    kwargs.setdefault("lambda_j", 3.17)
    kwargs.setdefault("theta_peak", math.pi)
    return run_fluxoid_train(i_c, omega_p, n_pairs, **kwargs)


# Gaussian drive conventions.  The reference states neither the envelope's
# peak flux nor the Gaussian device's input termination; the performance
# table pins only the product alpha_in * theta_peak^2 (through the input
# powers), and the band-power column then fixes the split.  Peak extrema of
# ~6.8 pi mean multi-quantum fluxoids (central pulses carry ~7 flux quanta),
# consistent with drive currents far above i_c.
GAUSSIAN_ALPHA_IN = 7.0
GAUSSIAN_PEAK_THETA = 8.0 * math.pi * math.sqrt(5.0 / GAUSSIAN_ALPHA_IN)


def run_gaussian(i_c: float, omega_p: float, n_pairs: int = 41, **kwargs) -> RunResult:
    """Gaussian train: fluxoid amplitudes tracing a Gaussian envelope."""
    kwargs.setdefault("shape", "gaussian")
    kwargs.setdefault("lambda_j", 2.50)
    kwargs.setdefault("alpha_in", GAUSSIAN_ALPHA_IN)
    kwargs.setdefault("theta_peak", GAUSSIAN_PEAK_THETA)
    return run_fluxoid_train(i_c, omega_p, n_pairs, **kwargs)


def run_single_fluxon(
    alpha_out,
    *,
    i_c: float = 4e-6,
    f_plasma: float = 20e9,
    lambda_j: float = 3.3,
    v_tilde: float = 0.75,
    alpha_in: float = 5.0,
    damping_quality: float = 20.0,
    n_jtl: int | None = None,
    n_tail_periods: float = 60.0,
    dt_divisor: int = 200,
) -> ScenarioReport:
    """Inject one fluxon and classify the boundary outcome per alpha_out.

    The line junctions are unshunted; their residual damping is modeled as
    ``damping_quality`` times the junction characteristic impedance
    sqrt(l_j/c_j).  Regimes, from the net phase winding left at the final
    cell: two windings mean the fluxon reflected as an antifluxon (boundary
    phase increased by an extra 2 pi), one winding with a near-plasma
    ring-down is a trapped breather, one winding without it is absorption,
    and zero windings mean fluxon-preserving reflection.
    """
    alphas = [float(a) for a in np.atleast_1d(alpha_out)]
    if any(not 0.05 < a <= 1.0 for a in alphas):
        raise ScenarioError("alpha_out grid must lie within (0.05, 1.0]")
    if n_jtl is None:
        n_jtl = int(round(4 * lambda_j))
    omega_p = 2.0 * math.pi * f_plasma
    l_j = PHI0 / (2.0 * math.pi * i_c)
    c_j = 1.0 / (omega_p**2 * l_j)
    r_n = damping_quality * math.sqrt(l_j / c_j)
    runs = []
    for a in alphas:
        circuit = _build_circuit(i_c, omega_p, lambda_j, alpha_in, a, n_jtl, r_n)
        derived = derive(circuit)
        width = single_fluxon_width(derived, v_tilde)
        pulse = sech_pulse(PHI0, width, t_center=6.0 * width)
        train = PulseTrain(pulses=(pulse,), duration=11.0 * width)
        t_end = train.duration + n_tail_periods * 2.0 * math.pi / derived.omega_p
        traj = simulate(circuit, train, t_end, 2.0 * math.pi / omega_p / dt_divisor)
        fit = None
        fit_note = ""
        try:
            fit = breather_fit(traj, -1)
        except (InsufficientDataError, AnalysisError) as exc:
            fit_note = str(exc)
        sel = traj.times >= traj.drive_end
        spectrum = psd(traj.v[-1][sel], traj.dt)
        regime = _classify_regime(traj, fit, derived)
        config = {
            "alpha_out": a, "alpha_in": alpha_in, "i_c": i_c,
            "f_plasma": f_plasma, "lambda_j": lambda_j, "v_tilde": v_tilde,
            "n_jtl": n_jtl, "r_n": r_n, "width": width,
            "damping_quality": damping_quality, "dt_divisor": dt_divisor,
        }
        runs.append(
            RunResult(
                config=config, f0=spectrum.f0, fwhm=spectrum.fwhm, fit=fit,
                regime=regime, spectrum=spectrum, notes=fit_note,
            )
        )
    provenance = {"scenario": "single_fluxon", "alpha_out_grid": alphas,
                  "config": runs[0].config if runs else {}}
    return ScenarioReport(scenario="single_fluxon", runs=tuple(runs),
                          provenance=provenance)


def _classify_regime(
    traj: Trajectory, fit: BreatherFit | None, derived: DerivedParams
) -> str:
    net_windings = traj.phi[-1, -1] / (2.0 * math.pi)
    f_p = derived.omega_p / (2.0 * math.pi)
    ringing = (
        fit is not None
        and fit.n_peaks >= 4
        and 0.5 * f_p <= fit.f_osc <= 1.5 * f_p
    )
    if net_windings >= 1.5:
        return "antifluxon_reflection"
    if net_windings >= 0.5:
        return "breather" if ringing else "absorption"
    return "fluxon_reflection"


def run_bandwidth_sweep(
    n_pairs_list,
    *,
    i_c: float = 3e-6,
    f_plasma: float = 15e9,
    lambda_j: float = 3.17,
    **kwargs,
) -> ScenarioReport:
    """Flat-top FWHM vs pulse-pair count at the fixed 15 GHz circuit."""
    n_list = [int(n) for n in n_pairs_list]
    if not n_list or any(b <= a for a, b in zip(n_list, n_list[1:])):
        raise ScenarioError("n_pairs_list must be non-empty and ascending")
    omega_p = 2.0 * math.pi * f_plasma
    runs = []
    for n_pairs in n_list:
        run = run_flat_top(i_c, omega_p, n_pairs, lambda_j=lambda_j,
                           keep_spectrum=False, **kwargs)
        runs.append(run)
    provenance = {"scenario": "bandwidth_sweep", "n_pairs_list": n_list,
                  "config": runs[0].config}
    return ScenarioReport(scenario="bandwidth_sweep", runs=tuple(runs),
                          provenance=provenance)


# Efficiency-map conventions: incident fluxon trains on the input line with
# the input termination near the quarter-wave match of the loaded line
# (alpha_in alpha_out ~ 1), unshunted line junctions, and the drive width
# pinned by the generator junction R_SFQ.
MAP_ALPHA_IN = 3.5
MAP_DAMPING_QUALITY = 400.0


def _map_point(args) -> tuple[int, int, float]:
    (i, j, i_c, omega_p, protocol, alpha_in, quality, dt_divisor) = args
    l_j = PHI0 / (2.0 * math.pi * i_c)
    lam = 3.17 if protocol == "flat_top" else 2.50
    c_j_ref = 1.0 / (omega_p**2 * l_j)
    r_n = quality * math.sqrt(l_j / c_j_ref)
    width = l_j / R_SFQ
    common = dict(
        lambda_j=lam, alpha_in=alpha_in, r_n=r_n, width=width,
        drive_model="incident", dt_divisor=dt_divisor, keep_spectrum=False,
    )
    if protocol == "flat_top":
        run = run_flat_top(i_c, omega_p, 50, **common)
    else:
        run = run_gaussian(i_c, omega_p, 41, **common)
    return i, j, run.eta


def run_efficiency_map(
    i_c_grid,
    omega_p_grid,
    protocol: str = "flat_top",
    *,
    alpha_in: float = MAP_ALPHA_IN,
    damping_quality: float = MAP_DAMPING_QUALITY,
    jobs: int | None = None,
    dt_divisor: int = 200,
) -> ScenarioReport:
    """Energy-efficiency matrix over (i_c, omega_p) for one protocol."""
    i_c_grid = [float(x) for x in i_c_grid]
    omega_p_grid = [float(x) for x in omega_p_grid]
    if not i_c_grid or not omega_p_grid:
        raise ScenarioError("efficiency map grids must be non-empty")
    if protocol not in ("flat_top", "gaussian"):
        raise ScenarioError(f"unknown protocol {protocol!r}")
    tasks = [
        (i, j, i_c, omega_p, protocol, alpha_in, damping_quality, dt_divisor)
        for j, omega_p in enumerate(omega_p_grid)
        for i, i_c in enumerate(i_c_grid)
    ]
    if jobs is None:
        jobs = os.cpu_count() or 1
    eta = np.full((len(i_c_grid), len(omega_p_grid)), np.nan)
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            for i, j, value in pool.map(_map_point, tasks):
                eta[i, j] = value
    else:
        for task in tasks:
            i, j, value = _map_point(task)
            eta[i, j] = value
    runs = []
    for j, omega_p in enumerate(omega_p_grid):
        for i, i_c in enumerate(i_c_grid):
            config = {
                "protocol": protocol, "i_c": i_c, "omega_p": omega_p,
                "alpha_in": alpha_in, "damping_quality": damping_quality,
            }
            runs.append(RunResult(config=config, eta=float(eta[i, j])))
    provenance = {
        "scenario": "efficiency_map", "protocol": protocol,
        "i_c_grid": i_c_grid, "omega_p_grid": omega_p_grid,
        "alpha_in": alpha_in, "damping_quality": damping_quality,
        "eta_max": float(np.nanmax(eta)),
        "eta_matrix": eta.tolist(),
    }
    return ScenarioReport(scenario="efficiency_map", runs=tuple(runs),
                          provenance=provenance)


def _table1_row(row, protocol: str, dt_divisor: int) -> RunResult:
    i_c, l, c_j, n_pairs, f0_ghz, fwhm_mhz, p_in_nw, p_band_dbm = row
    l_j = PHI0 / (2.0 * math.pi * i_c)
    omega_p = 1.0 / math.sqrt(l_j * c_j)
    runner = run_flat_top if protocol == "flat_top" else run_gaussian
    run = runner(i_c, omega_p, n_pairs, l=l, c_j=c_j, dt_divisor=dt_divisor,
                 keep_spectrum=False)
    tol = TABLE1_TOLERANCES
    checks = {
        "f0": abs(run.f0 / 1e9 - f0_ghz) <= tol["f0"] * f0_ghz,
        "fwhm": abs(run.fwhm / 1e6 - fwhm_mhz) <= tol["fwhm"] * fwhm_mhz,
        "p_in": abs(run.power.avg_input_power * 1e9 - p_in_nw)
        <= tol["p_in"] * p_in_nw,
        "p_band": abs(run.power.band_power_dbm - p_band_dbm)
        <= tol["p_band_db"],
    }
    targets = {"f0_ghz": f0_ghz, "fwhm_mhz": fwhm_mhz, "p_in_nw": p_in_nw,
               "p_band_dbm": p_band_dbm}
    config = dict(run.config)
    config["protocol"] = protocol
    config["targets"] = targets
    config["checks"] = checks
    return RunResult(
        config=config, f0=run.f0, fwhm=run.fwhm, eta=run.eta, power=run.power,
        passed=all(checks.values()),
        notes=", ".join(k for k, ok in checks.items() if not ok),
    )


def run_table1(jobs: int | None = None, dt_divisor: int = 200) -> ScenarioReport:
    """All eight performance-table rows with per-row pass/fail."""
    rows = [("flat_top", r) for r in TABLE1_FLAT_TOP]
    rows += [("gaussian", r) for r in TABLE1_GAUSSIAN]
    runs = tuple(
        _table1_row(row, protocol, dt_divisor) for protocol, row in rows
    )
    provenance = {"scenario": "table1", "tolerances": TABLE1_TOLERANCES,
                  "n_rows": len(runs)}
    return ScenarioReport(scenario="table1", runs=runs, provenance=provenance)


def run_scenario(spec: ScenarioSpec, jobs: int | None = None) -> ScenarioReport:
    """Dispatch a ScenarioSpec to its runner, applying overrides."""
    ov = dict(spec.overrides)
    if spec.scenario in ("single_fluxon", "alpha_sweep"):
        alpha_out = ov.pop("alpha_out", [0.15, 0.2, 0.25, 0.3, 0.35])
        return run_single_fluxon(alpha_out, **ov)
    if spec.scenario == "flat_top":
        i_c = ov.pop("i_c", 4e-6)
        omega_p = ov.pop("omega_p", 2.0 * math.pi * 19.617e9)
        n_pairs = int(ov.pop("n_pairs", 50))
        run = run_flat_top(i_c, omega_p, n_pairs, **ov)
        return ScenarioReport("flat_top", (run,), {"scenario": "flat_top"})
    if spec.scenario == "gaussian":
        i_c = ov.pop("i_c", 4e-6)
        omega_p = ov.pop("omega_p", 2.0 * math.pi * 17.546e9)
        n_pairs = int(ov.pop("n_pairs", 41))
        run = run_gaussian(i_c, omega_p, n_pairs, **ov)
        return ScenarioReport("gaussian", (run,), {"scenario": "gaussian"})
    if spec.scenario == "bandwidth_sweep":
        n_list = ov.pop("n_pairs_list", [50, 100, 200, 500])
        return run_bandwidth_sweep(n_list, **ov)
    if spec.scenario == "efficiency_map":
        i_c_grid = ov.pop("i_c_grid", [2e-6, 3e-6])
        omega_p_grid = ov.pop(
            "omega_p_grid", [2.0 * math.pi * f for f in (22e9, 26e9, 30e9)]
        )
        protocol = ov.pop("protocol", "flat_top")
        return run_efficiency_map(i_c_grid, omega_p_grid, protocol,
                                  jobs=jobs, **ov)
    if spec.scenario == "table1":
        return run_table1(jobs=jobs, **ov)
    raise ScenarioError(f"unknown scenario {spec.scenario!r}")
