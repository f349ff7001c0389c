"""Command-line front end: one subcommand per experiment family.

Each run writes ``<subcommand>.csv`` plus a ``<subcommand>.json`` sidecar
holding the fully resolved configuration into ``--out-dir``. Runs that
detect phase jumps also write ``jumps.csv``.

Exit status: 0 success, 2 invalid configuration, 3 numerical-domain error
(e.g. a path step through orthogonal states).
"""

from __future__ import annotations

import argparse
import hashlib
import json
import math
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .artifacts import FLUX_HEADER, csv_text, json_text, jumps_csv, trace_csv, write_all
from .errors import GeometricPhaseError
from .hilbert import DiscretizedPath, GaugePhases, apply_gauge
from .optics import (
    GaussianBeamParams,
    PolarizationSweep,
    beam_radius,
    gouy_phase,
    mode_gouy_trace,
    polarization_sweep_path,
)
from .pancharatnam import (
    DEFAULT_DIP_THRESHOLD,
    DEFAULT_JUMP_THRESHOLD,
    DEFAULT_RECOVERY_THRESHOLD,
    closed_loop_phase,
    cumulative_pancharatnam,
    detect_pi_jump,
    relative_pancharatnam,
)
from .supercon import (
    Junction,
    RingCircuit,
    fluxoid_states,
    half_flux_limit,
    minimize_ring_energy,
)

EXIT_OK, EXIT_CONFIG, EXIT_NUMERIC = 0, 2, 3


class ConfigError(Exception):
    def __init__(self, key, message):
        self.key = key
        super().__init__(f"invalid --{key}: {message}")


def _require(cond, key, message):
    if not cond:
        raise ConfigError(key, message)


def _finite(value, key):
    _require(math.isfinite(value), key, f"must be finite, got {value}")


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------


def _add_jump_args(p):
    p.add_argument("--jump-threshold", type=float, default=DEFAULT_JUMP_THRESHOLD,
                   help="minimum |phase change| in radians (default 3*pi/4)")
    p.add_argument("--dip-threshold", type=float, default=DEFAULT_DIP_THRESHOLD,
                   help="overlap magnitude marking a near-orthogonal crossing")
    p.add_argument("--recovery-threshold", type=float, default=DEFAULT_RECOVERY_THRESHOLD,
                   help="overlap magnitude closing a crossing window")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="geophase",
        description="Geometric-phase experiments: traces, polarization flips, "
        "Gouy phase, and flux quantization in pi-junction rings.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-o", "--out-dir", default=".", help="directory for artifacts")
    common.add_argument("--seed", type=int, default=0,
                        help="unsigned seed for randomized demo options")
    sub = parser.add_subparsers(dest="subcommand", required=True, metavar="SUBCOMMAND")

    p = sub.add_parser("trace", parents=[common],
                       help="Pancharatnam trace of a path read from JSON")
    p.add_argument("--path", required=True,
                   help='JSON file: {"states": [[[re, im], ...], ...], "timestamps": [...]}')
    p.add_argument("--reference", choices=("step", "start"), default="step",
                   help="compare consecutive states (step) or each state with the first (start)")
    p.add_argument("--closed", action="store_true", help="treat the path as a loop")
    p.add_argument("--random-gauge", action="store_true",
                   help="apply a seeded random gauge before computing")
    _add_jump_args(p)

    p = sub.add_parser("polarization", parents=[common],
                       help="rotate a polarization through its orthogonal state")
    p.add_argument("--epsilon", type=float, default=1e-3, help="ellipticity admixture")
    p.add_argument("--steps", type=int, default=2001)
    p.add_argument("--theta-start-rad", type=float, default=0.0)
    p.add_argument("--theta-end-rad", type=float, default=math.pi)
    _add_jump_args(p)

    p = sub.add_parser("gouy", parents=[common], help="closed-form Gouy phase curve")
    p.add_argument("--dims", type=int, default=2, help="transverse dimensions (1 or 2)")
    p.add_argument("--z-over-zr", type=float, nargs=2, required=True, metavar=("START", "END"))
    p.add_argument("--samples", type=int, default=2001)
    p.add_argument("--rayleigh-range", type=float, nargs="+", default=None,
                   help="per-dimension Rayleigh ranges (default 1 for each)")

    p = sub.add_parser("mode-gouy", parents=[common],
                       help="Gouy phase recovered from sampled Gaussian modes")
    p.add_argument("--z-over-zr", type=float, nargs=2, default=(-10.0, 10.0),
                   metavar=("START", "END"))
    p.add_argument("--samples", type=int, default=401)
    p.add_argument("--grid-points", type=int, default=1024)
    p.add_argument("--grid-half-width-w0", type=float, default=None,
                   help="grid half width in waist units (default 6.06 x widest beam)")
    p.add_argument("--kinetic-method", choices=("exact", "expectation"), default="exact")

    p = sub.add_parser("ring-flux", parents=[common],
                       help="allowed trapped fluxes for a ring")
    p.add_argument("--ring", help="ring description JSON file (overrides junction counts)")
    p.add_argument("--pi-junctions", type=int, default=0)
    p.add_argument("--conventional-junctions", type=int, default=0)
    p.add_argument("--beta-l", type=float, default=1.0)
    p.add_argument("--flux-phi0", type=float, default=0.0, help="external flux")
    p.add_argument("--n-min", type=int, default=-2)
    p.add_argument("--n-max", type=int, default=2)

    p = sub.add_parser("ring-energy", parents=[common],
                       help="energy minima of a single-junction ring")
    p.add_argument("--ring", help="ring description JSON file")
    p.add_argument("--offset", choices=("0", "pi"), default="pi")
    p.add_argument("--ej", type=float, default=1.0)
    p.add_argument("--beta-l", type=float, default=10.0)
    p.add_argument("--flux-phi0", type=float, default=0.0, help="external flux")

    p = sub.add_parser("beta-sweep", parents=[common],
                       help="spontaneous flux of a pi-ring versus beta_L")
    p.add_argument("--beta-l", type=float, nargs="+", required=True)
    p.add_argument("--ej", type=float, default=1.0)
    return parser


# ---------------------------------------------------------------------------
# validation: everything here runs before any computation
# ---------------------------------------------------------------------------


def _validate_jump_args(a):
    for key in ("jump_threshold", "dip_threshold", "recovery_threshold"):
        _finite(getattr(a, key), key.replace("_", "-"))
    _require(0 < a.jump_threshold <= math.pi, "jump-threshold", "must lie in (0, pi]")
    _require(0 < a.dip_threshold < 1, "dip-threshold", "must lie in (0, 1)")
    _require(a.dip_threshold <= a.recovery_threshold < 1, "recovery-threshold",
             "must lie in [dip-threshold, 1)")


def _load_json(path, key):
    try:
        raw = Path(path).read_bytes()
        return json.loads(raw.decode("utf-8")), hashlib.sha256(raw).hexdigest()
    except OSError as exc:
        raise ConfigError(key, f"cannot read {path}: {exc.strerror}") from None
    except (UnicodeDecodeError, json.JSONDecodeError) as exc:
        raise ConfigError(key, f"{path} is not valid JSON: {exc}") from None


def _ring_from_args(a):
    if a.ring:
        obj, digest = _load_json(a.ring, "ring")
        try:
            return RingCircuit.from_json(obj), digest
        except GeometricPhaseError as exc:
            raise ConfigError("ring", str(exc)) from None
    return None, None


def validate(a) -> dict:
    """Check every precondition and return the resolved configuration."""
    _require(a.seed >= 0, "seed", "must be an unsigned integer")
    cfg = {"subcommand": a.subcommand, "seed": a.seed}
    sc = a.subcommand

    if sc == "trace":
        _validate_jump_args(a)
        obj, digest = _load_json(a.path, "path")
        try:
            path = DiscretizedPath.from_json(obj)
        except GeometricPhaseError as exc:
            raise ConfigError("path", str(exc)) from None
        a._path = path
        cfg.update(path=str(a.path), path_sha256=digest, reference=a.reference,
                   closed=a.closed, random_gauge=a.random_gauge, points=len(path), dim=path.dim)
        _require(not (a.closed and a.reference == "start"), "reference",
                 "--closed needs --reference step")
    elif sc == "polarization":
        _validate_jump_args(a)
        for key in ("epsilon", "theta_start_rad", "theta_end_rad"):
            _finite(getattr(a, key), key.replace("_", "-"))
        _require(abs(a.epsilon) < 0.5, "epsilon", "|epsilon| must be < 0.5")
        _require(a.steps >= 2, "steps", "must be >= 2")
        _require(a.theta_start_rad < a.theta_end_rad, "theta-end-rad",
                 "must exceed --theta-start-rad")
        cfg.update(epsilon=a.epsilon, steps=a.steps, theta_start_rad=a.theta_start_rad,
                   theta_end_rad=a.theta_end_rad)
    elif sc == "gouy":
        _require(a.dims in (1, 2), "dims", "must be 1 or 2")
        z0, z1 = a.z_over_zr
        _finite(z0, "z-over-zr")
        _finite(z1, "z-over-zr")
        _require(z0 < z1, "z-over-zr", "START must be smaller than END")
        _require(a.samples >= 2, "samples", "must be >= 2")
        zr = a.rayleigh_range or [1.0] * a.dims
        _require(len(zr) == a.dims, "rayleigh-range", f"needs {a.dims} value(s)")
        _require(all(z > 0 and math.isfinite(z) for z in zr), "rayleigh-range",
                 "must be positive")
        cfg.update(dims=a.dims, z_over_zr=[z0, z1], samples=a.samples, rayleigh_range=list(zr))
    elif sc == "mode-gouy":
        z0, z1 = a.z_over_zr
        _finite(z0, "z-over-zr")
        _finite(z1, "z-over-zr")
        _require(z0 < z1, "z-over-zr", "START must be smaller than END")
        _require(a.samples >= 2, "samples", "must be >= 2")
        _require(a.grid_points >= 64, "grid-points", "must be >= 64")
        wmax = float(beam_radius(max(abs(z0), abs(z1)), 1.0))
        hw = a.grid_half_width_w0 if a.grid_half_width_w0 is not None else 6.0 * wmax * 1.01
        _require(math.isfinite(hw) and hw >= 6.0 * wmax, "grid-half-width-w0",
                 f"must be >= 6 x widest beam radius ({6.0 * wmax:.6g})")
        cfg.update(z_over_zr=[z0, z1], samples=a.samples, grid_points=a.grid_points,
                   grid_half_width_w0=hw, kinetic_method=a.kinetic_method)
    elif sc == "ring-flux":
        ring, digest = _ring_from_args(a)
        if ring is None:
            _require(a.pi_junctions >= 0, "pi-junctions", "must be >= 0")
            _require(a.conventional_junctions >= 0, "conventional-junctions", "must be >= 0")
            _require(a.beta_l > 0 and math.isfinite(a.beta_l), "beta-l", "must be positive")
            _finite(a.flux_phi0, "flux-phi0")
            ring = RingCircuit(
                (Junction.pi(),) * a.pi_junctions + (Junction.conventional(),) * a.conventional_junctions,
                a.beta_l, a.flux_phi0,
            )
        else:
            cfg["ring_sha256"] = digest
        _require(a.n_min <= a.n_max, "n-max", "must be >= --n-min")
        a._ring = ring
        cfg.update(ring=ring.to_json(), n_min=a.n_min, n_max=a.n_max)
    elif sc == "ring-energy":
        ring, digest = _ring_from_args(a)
        if ring is None:
            _require(a.ej > 0 and math.isfinite(a.ej), "ej", "must be positive")
            _require(a.beta_l > 0 and math.isfinite(a.beta_l), "beta-l", "must be positive")
            _finite(a.flux_phi0, "flux-phi0")
            j = Junction(math.pi if a.offset == "pi" else 0.0, a.ej)
            ring = RingCircuit((j,), a.beta_l, a.flux_phi0)
        else:
            cfg["ring_sha256"] = digest
        _require(len(ring.junctions) == 1, "ring", "energy model needs exactly one junction")
        a._ring = ring
        cfg.update(ring=ring.to_json())
    elif sc == "beta-sweep":
        _require(all(b > 1 and math.isfinite(b) for b in a.beta_l), "beta-l",
                 "every value must exceed 1")
        _require(a.ej > 0 and math.isfinite(a.ej), "ej", "must be positive")
        cfg.update(beta_l=list(a.beta_l), ej=a.ej)
    return cfg


# ---------------------------------------------------------------------------
# execution
# ---------------------------------------------------------------------------


def _run_trace(a, cfg):
    path = a._path
    if a.random_gauge:
        rng = np.random.default_rng(a.seed)
        path = apply_gauge(path, GaugePhases.random(len(path), rng))
    if a.reference == "start":
        trace = relative_pancharatnam(path)
    else:
        trace = cumulative_pancharatnam(path, closed=a.closed)
    jumps = detect_pi_jump(trace, a.jump_threshold, a.dip_threshold, a.recovery_threshold)
    summary = {"final_phase_rad": float(trace.cumulative_phase[-1]), "jumps": len(jumps)}
    if a.closed:
        summary["closed_loop_phase_rad"] = closed_loop_phase(path)
    return {"trace.csv": trace_csv(trace), "jumps.csv": jumps_csv(jumps)}, summary


def _run_polarization(a, cfg):
    sweep = PolarizationSweep(a.epsilon, a.theta_start_rad, a.theta_end_rad, a.steps)
    trace = relative_pancharatnam(polarization_sweep_path(sweep))
    jumps = detect_pi_jump(trace, a.jump_threshold, a.dip_threshold, a.recovery_threshold)
    summary = {"jumps": [{"index": j.index, "magnitude_rad": j.magnitude, "sign": j.sign,
                          "min_overlap": j.min_overlap} for j in jumps]}
    return {"polarization.csv": trace_csv(trace), "jumps.csv": jumps_csv(jumps)}, summary


def _run_gouy(a, cfg):
    beam = GaussianBeamParams(cfg["rayleigh_range"])
    s = np.linspace(*cfg["z_over_zr"], cfg["samples"])
    # z is quoted in units of the first dimension's Rayleigh range
    phase = gouy_phase(s * beam.rayleigh_ranges[0], beam)
    text = csv_text(("index", "z_over_zr", "gouy_phase_rad"), zip(range(s.size), s, phase))
    return {"gouy.csv": text}, {"total_change_rad": float(phase[-1] - phase[0])}


def _run_mode_gouy(a, cfg):
    z = np.linspace(*cfg["z_over_zr"], cfg["samples"])
    res = mode_gouy_trace(z, 1.0, cfg["grid_points"], cfg["grid_half_width_w0"], 1.0,
                          cfg["kinetic_method"])
    analytic = 0.5 * np.arctan(z)
    if not z[0] <= 0.0 <= z[-1]:
        analytic = analytic - analytic[0]
    rows = zip(range(z.size), z, res.pancharatnam.cumulative_phase, res.kinetic, res.gouy, analytic)
    text = csv_text(("index", "z_over_zr", "pancharatnam_rad", "kinetic_rad", "gouy_rad",
                     "analytic_gouy_rad"), rows)
    return {"mode-gouy.csv": text}, {"max_abs_error_rad": float(np.abs(res.gouy - analytic).max())}


def _inductive_energy(ring, flux):
    return (2.0 * math.pi * (flux - ring.external_flux)) ** 2 / (2.0 * ring.beta_L)


def _run_ring_flux(a, cfg):
    ring = a._ring
    fs = fluxoid_states(ring, a.n_min, a.n_max)
    rows = [(n, f, _inductive_energy(ring, f)) for n, f in zip(range(a.n_min, a.n_max + 1), fs.flux_values)]
    return {"ring-flux.csv": csv_text(FLUX_HEADER, rows)}, {
        "parity": fs.parity, "pi_junctions": ring.pi_count}


def _run_ring_energy(a, cfg):
    minima = minimize_ring_energy(a._ring)
    rows = [(i, m.flux, m.energy) for i, m in enumerate(minima)]
    return {"ring-energy.csv": csv_text(FLUX_HEADER, rows)}, {
        "minima_phi_rad": [m.phi for m in minima]}


def _run_beta_sweep(a, cfg):
    flux = half_flux_limit(a.beta_l, a.ej)
    rows = []
    for i, (b, f) in enumerate(zip(a.beta_l, flux)):
        phi = 2.0 * math.pi * f
        energy = phi * phi / (2.0 * b) + a.ej * math.cos(phi)
        rows.append((i, f, energy, b))
    return {"beta-sweep.csv": csv_text(FLUX_HEADER + ("beta_l",), rows)}, {}


RUNNERS = {
    "trace": _run_trace,
    "polarization": _run_polarization,
    "gouy": _run_gouy,
    "mode-gouy": _run_mode_gouy,
    "ring-flux": _run_ring_flux,
    "ring-energy": _run_ring_energy,
    "beta-sweep": _run_beta_sweep,
}


def run(args) -> int:
    try:
        cfg = validate(args)
    except ConfigError as exc:
        print(f"geophase: error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    try:
        files, summary = RUNNERS[args.subcommand](args, cfg)
    except GeometricPhaseError as exc:
        print(f"geophase: numerical error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    out = Path(args.out_dir)
    sidecar = {"config": cfg, "summary": summary, "version": __version__}
    files[f"{args.subcommand}.json"] = json_text(sidecar)
    write_all({out / name: text for name, text in files.items()})
    return EXIT_OK


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return run(args)


if __name__ == "__main__":
    sys.exit(main())
