"""Geometric (Pancharatnam) phases in finite-dimensional ray space, with the
polarization, Gouy and superconducting-ring settings built on them."""

__version__ = "0.1.0"

from .errors import *  # noqa: F401,F403
from .hilbert import (
    EPS_ORTH,
    DiscretizedPath,
    GaugePhases,
    StateVector,
    apply_gauge,
    fubini_study_distance,
    geodesic_interpolate,
    normalize,
    overlap,
)
from .pancharatnam import (
    JumpReport,
    PhaseTrace,
    bargmann_invariant,
    closed_loop_phase,
    cumulative_pancharatnam,
    detect_pi_jump,
    fs_speed,
    pairwise_phase,
    relative_pancharatnam,
)
from .optics import (
    FLAT_WAVEFRONT,
    GaussianBeamParams,
    PolarizationSweep,
    gaussian_mode_path,
    gouy_phase,
    kinetic_phase,
    mode_gouy_trace,
    polarization_sweep_path,
    radius_of_curvature,
)
from .supercon import (
    FluxStateSet,
    Junction,
    PairState,
    RingCircuit,
    angular_overlap,
    fluxoid_states,
    half_flux_limit,
    junction_crossing_path,
    minimize_ring_energy,
    ring_energy,
)
