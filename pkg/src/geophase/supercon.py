"""s-wave / d-wave pair states, the geometric pi shift at an idealized
hetero-junction, and flux quantization in rings with pi-junctions.

All fluxes are in units of the superconducting flux quantum h/2e and all
energies in units of the Josephson coupling scale. Planck's constant and
the electron charge never appear numerically.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np
from scipy.optimize import brentq

from .errors import BasisMismatch, InvalidBeta, InvalidConfig, UnsupportedTopology
from .hilbert import DiscretizedPath
from .optics import elliptic_rotation_path

__all__ = [
    "PairState",
    "Junction",
    "RingCircuit",
    "FluxStateSet",
    "RingMinimum",
    "angular_overlap",
    "junction_crossing_path",
    "fluxoid_states",
    "ring_energy",
    "ring_energy_derivative",
    "minimize_ring_energy",
    "half_flux_limit",
]

# ---------------------------------------------------------------------------
# Pair wavefunctions on the circle
# ---------------------------------------------------------------------------


def _basis_labels(order: int) -> list[str]:
    labels = ["1"]
    for m in range(1, order + 1):
        labels += [f"cos{m}", f"sin{m}"]
    return labels


def harmonic_basis(order: int, phi: np.ndarray) -> np.ndarray:
    """Orthonormal real harmonics on [0, 2 pi), shape ``(2*order+1, len(phi))``.

    Rows are ordered ``1/sqrt(2 pi), cos(phi)/sqrt(pi), sin(phi)/sqrt(pi),
    cos(2 phi)/sqrt(pi), ...``.
    """
    rows = [np.full_like(phi, 1.0 / math.sqrt(2.0 * math.pi))]
    for m in range(1, order + 1):
        rows.append(np.cos(m * phi) / math.sqrt(math.pi))
        rows.append(np.sin(m * phi) / math.sqrt(math.pi))
    return np.array(rows)


@dataclass(frozen=True)
class PairState:
    """Angular part of a Cooper-pair wavefunction, expanded in circular harmonics."""

    kind: str
    angular_coefficients: np.ndarray = field(repr=False)

    def __post_init__(self):
        c = np.asarray(self.angular_coefficients, dtype=complex).reshape(-1)
        if c.size % 2 == 0:
            raise InvalidConfig("coefficient vector must have odd length 2M+1")
        norm = np.linalg.norm(c)
        if norm == 0:
            raise InvalidConfig("pair state cannot vanish")
        c = c / norm
        c.flags.writeable = False
        object.__setattr__(self, "angular_coefficients", c)

    @property
    def order(self) -> int:
        return (self.angular_coefficients.size - 1) // 2

    @classmethod
    def s_wave(cls, order: int = 2) -> "PairState":
        c = np.zeros(2 * order + 1)
        c[0] = 1.0
        return cls("s_wave", c)

    @classmethod
    def d_wave(cls, order: int = 2) -> "PairState":
        """``cos(2 phi) / sqrt(pi)``, the d_{x^2-y^2} harmonic at fixed orientation."""
        if order < 2:
            raise InvalidConfig("a d-wave state needs basis order >= 2")
        c = np.zeros(2 * order + 1)
        c[3] = 1.0
        return cls("d_wave", c)

    @classmethod
    def harmonic(cls, index: int, order: int) -> "PairState":
        c = np.zeros(2 * order + 1)
        c[index] = 1.0
        return cls("custom", c)

    def __call__(self, phi):
        """Evaluate the wavefunction at angles ``phi``."""
        phi = np.asarray(phi, dtype=float)
        return self.angular_coefficients @ harmonic_basis(self.order, phi.reshape(-1))


def angular_overlap(a: PairState, b: PairState) -> complex:
    """``integral_0^{2 pi} conj(a) b dphi`` by the periodic trapezoid rule.

    With 4M+1 nodes the rule integrates every product of two harmonics of
    order <= M exactly.
    """
    if a.order != b.order:
        raise BasisMismatch(f"basis orders differ: {a.order} vs {b.order}")
    n = 4 * a.order + 1
    phi = 2.0 * math.pi * np.arange(n) / n
    return complex(np.sum(np.conj(a(phi)) * b(phi)) * (2.0 * math.pi / n))


def junction_crossing_path(
    epsilon: float,
    steps: int,
    alpha_end: float = math.pi,
    order: int = 2,
) -> DiscretizedPath:
    """Pair state carried from pure s through d and back to the s ray.

    ``psi(alpha) = normalize(cos a |s> + sin a |d> + i eps (-sin a |s> + cos a |d>))``
    for alpha in ``[0, alpha_end]``. The points are vectors of harmonic
    coefficients, so their inner products are the angular overlaps.
    """
    if not (isinstance(steps, (int, np.integer)) and steps >= 3):
        raise InvalidConfig(f"steps must be an integer >= 3, got {steps!r}")
    if not 0.0 < abs(epsilon) < 0.5:
        raise InvalidConfig(f"need 0 < |epsilon| < 0.5, got {epsilon}")
    if not alpha_end > 0:
        raise InvalidConfig("alpha_end must be positive")
    s = PairState.s_wave(order).angular_coefficients
    d = PairState.d_wave(order).angular_coefficients
    return elliptic_rotation_path(np.linspace(0.0, alpha_end, steps), epsilon, s, d)


# ---------------------------------------------------------------------------
# Rings
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Junction:
    offset: float = 0.0
    josephson_energy: float = 1.0

    def __post_init__(self):
        if self.offset not in (0.0, math.pi):
            raise InvalidConfig(f"junction offset must be 0 or pi, got {self.offset}")
        if not self.josephson_energy > 0:
            raise InvalidConfig("josephson_energy must be positive")

    @property
    def is_pi(self) -> bool:
        return self.offset == math.pi

    @classmethod
    def pi(cls, josephson_energy: float = 1.0) -> "Junction":
        return cls(math.pi, josephson_energy)

    @classmethod
    def conventional(cls, josephson_energy: float = 1.0) -> "Junction":
        return cls(0.0, josephson_energy)


@dataclass(frozen=True)
class RingCircuit:
    junctions: tuple = ()
    beta_L: float = 1.0
    external_flux: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "junctions", tuple(self.junctions))
        if not (self.beta_L > 0 and math.isfinite(self.beta_L)):
            raise InvalidConfig(f"beta_L must be positive, got {self.beta_L}")
        if not math.isfinite(self.external_flux):
            raise InvalidConfig("external_flux must be finite")

    @property
    def pi_count(self) -> int:
        return sum(j.is_pi for j in self.junctions)

    @classmethod
    def from_json(cls, obj: dict) -> "RingCircuit":
        """Parse ``{"junctions": [{"offset": "pi", "ej": 1.0}], "beta_l": 10.0, "external_flux": 0.0}``.

        ``offset`` may be ``"pi"``, ``"0"``, or the numbers 0 and pi.
        Unknown keys are rejected.
        """
        if not isinstance(obj, dict):
            raise InvalidConfig("ring description must be a JSON object")
        unknown = set(obj) - {"junctions", "beta_l", "external_flux"}
        if unknown:
            raise InvalidConfig(f"unknown key(s) in ring description: {sorted(unknown)}")
        juncs = []
        for i, j in enumerate(obj.get("junctions", [])):
            if not isinstance(j, dict):
                raise InvalidConfig(f"junctions[{i}] must be an object")
            bad = set(j) - {"offset", "ej"}
            if bad:
                raise InvalidConfig(f"unknown key(s) in junctions[{i}]: {sorted(bad)}")
            juncs.append(Junction(_parse_offset(j.get("offset", 0.0), i), float(j.get("ej", 1.0))))
        try:
            beta = float(obj.get("beta_l", 1.0))
            ext = float(obj.get("external_flux", 0.0))
        except (TypeError, ValueError):
            raise InvalidConfig("beta_l and external_flux must be numbers") from None
        return cls(tuple(juncs), beta, ext)

    def to_json(self) -> dict:
        return {
            "junctions": [
                {"offset": "pi" if j.is_pi else "0", "ej": j.josephson_energy}
                for j in self.junctions
            ],
            "beta_l": self.beta_L,
            "external_flux": self.external_flux,
        }


def _parse_offset(value, i):
    if isinstance(value, str):
        key = value.strip().lower()
        if key == "pi":
            return math.pi
        if key in ("0", "zero"):
            return 0.0
    elif isinstance(value, (int, float)) and not isinstance(value, bool):
        if value == 0:
            return 0.0
        if abs(value - math.pi) < 1e-12:
            return math.pi
    raise InvalidConfig(f"junctions[{i}].offset must be 'pi' or 0, got {value!r}")


@dataclass(frozen=True)
class FluxStateSet:
    flux_values: tuple
    parity: str

    @property
    def ns(self) -> range:
        return range(len(self.flux_values))


def fluxoid_states(ring: RingCircuit, n_min: int, n_max: int) -> FluxStateSet:
    """Allowed trapped fluxes ``n + (P mod 2)/2`` for ``n_min <= n <= n_max``.

    P is the number of pi-junctions. Single-valuedness of the pair
    wavefunction around the ring makes the junction offsets plus
    ``2 pi Phi`` a multiple of 2 pi. An odd P therefore moves the whole
    ladder by half a flux quantum.
    """
    if n_min > n_max:
        raise InvalidConfig(f"n_min ({n_min}) > n_max ({n_max})")
    shift = 0.5 * (ring.pi_count % 2)
    vals = tuple(float(n) + shift for n in range(int(n_min), int(n_max) + 1))
    return FluxStateSet(vals, "odd" if ring.pi_count % 2 else "even")


def _single(ring: RingCircuit) -> Junction:
    if len(ring.junctions) != 1:
        raise UnsupportedTopology(
            f"energy model needs exactly one junction, ring has {len(ring.junctions)}"
        )
    return ring.junctions[0]


def ring_energy(ring: RingCircuit, phi):
    """``(phi - 2 pi Phi_ext)^2 / (2 beta_L) - E_J cos(phi + offset)``."""
    j = _single(ring)
    phi = np.asarray(phi, dtype=float)
    u = (phi - 2.0 * math.pi * ring.external_flux) ** 2 / (2.0 * ring.beta_L) - (
        j.josephson_energy * np.cos(phi + j.offset)
    )
    return float(u) if u.ndim == 0 else u


def ring_energy_derivative(ring: RingCircuit, phi):
    j = _single(ring)
    phi = np.asarray(phi, dtype=float)
    du = (phi - 2.0 * math.pi * ring.external_flux) / ring.beta_L + (
        j.josephson_energy * np.sin(phi + j.offset)
    )
    return float(du) if du.ndim == 0 else du


@dataclass(frozen=True)
class RingMinimum:
    phi: float
    energy: float
    flux: float


SCAN_RANGE = 3.0 * math.pi
SCAN_POINTS = 20001


def minimize_ring_energy(ring: RingCircuit, scan_points: int = SCAN_POINTS) -> list[RingMinimum]:
    """All local minima of the ring energy on ``[-3 pi, 3 pi]``, by phase.

    A dense grid locates sign changes of ``u'`` from negative to positive.
    Each bracket is then refined with Brent's method to machine precision.
    A minimum sitting exactly on a grid node (``u' == 0`` there) is taken
    as is. ``flux`` is the spontaneous flux ``phi / 2 pi - Phi_ext``.
    """
    _single(ring)
    phi = np.linspace(-SCAN_RANGE, SCAN_RANGE, scan_points)
    du = ring_energy_derivative(ring, phi)
    roots = []
    for i in range(phi.size - 1):
        a, b = du[i], du[i + 1]
        if a == 0.0:
            if (i == 0 or du[i - 1] < 0) and b > 0:
                roots.append(phi[i])
        elif a < 0 < b:
            roots.append(
                brentq(lambda p: ring_energy_derivative(ring, p), phi[i], phi[i + 1],
                       xtol=1e-15, rtol=4 * np.finfo(float).eps, maxiter=200)
            )
    out = []
    for r in roots:
        r = float(r)
        out.append(RingMinimum(r, ring_energy(ring, r), r / (2.0 * math.pi) - ring.external_flux))
    return out


def ground_state(ring: RingCircuit) -> RingMinimum:
    """Lowest-energy minimum; ties go to the smaller phase."""
    return min(minimize_ring_energy(ring), key=lambda m: (round(m.energy, 12), m.phi))


def half_flux_limit(beta_values: Iterable[float], josephson_energy: float = 1.0) -> list[float]:
    """Spontaneous flux of a single pi-junction ring in its positive ground state.

    For ``beta_L > 1`` the zero-flux state of a pi-ring is a maximum of the
    energy. Two degenerate minima at ``+-phi*`` appear, with
    ``phi* = beta_L sin phi*``. The returned ``phi* / 2 pi`` grows toward 1/2
    as ``beta_L`` increases.
    """
    betas = [float(b) for b in beta_values]
    for b in betas:
        if not (b > 1 and math.isfinite(b)):
            raise InvalidBeta(f"beta_L must exceed 1, got {b}")
    out = []
    for b in betas:
        ring = RingCircuit((Junction.pi(josephson_energy),), b, 0.0)
        pos = [m for m in minimize_ring_energy(ring) if m.phi > 0]
        best = min(pos, key=lambda m: (m.energy, m.phi))
        out.append(best.flux)
    return out
