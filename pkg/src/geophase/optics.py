"""Optical analogs: polarization rotated through its orthogonal state, and
the Gouy phase of a focused Gaussian beam.

Beam conventions follow the laser-engineering form, with carrier
``exp(-i k z)`` and transverse mode
``u(x; z) ~ exp(-x^2 / w^2 - i k x^2 / (2 R))``. Under this convention the
on-axis Gouy phase ``+1/2 arctan(z / z_R)`` per transverse dimension
increases through the focus.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .errors import GridTooCoarse, InvalidConfig
from .hilbert import DiscretizedPath, StateVector
from .pancharatnam import PhaseTrace, cumulative_pancharatnam

__all__ = [
    "PolarizationSweep",
    "GaussianBeamParams",
    "FLAT_WAVEFRONT",
    "polarization_sweep_path",
    "elliptic_rotation_path",
    "gouy_phase",
    "radius_of_curvature",
    "beam_radius",
    "gaussian_mode_path",
    "kinetic_phase",
    "mode_gouy_trace",
]


@dataclass(frozen=True)
class PolarizationSweep:
    """Rotation of a nearly linear polarization through ``[theta_start, theta_end]``.

    ``ellipticity`` is the small circular admixture that decides which side
    of the origin the projection onto the start state passes.
    """

    ellipticity: float
    theta_start: float = 0.0
    theta_end: float = math.pi
    steps: int = 2001

    def __post_init__(self):
        if not (isinstance(self.steps, (int, np.integer)) and self.steps >= 2):
            raise InvalidConfig(f"steps must be an integer >= 2, got {self.steps!r}")
        if not self.theta_start < self.theta_end:
            raise InvalidConfig("theta_start must be smaller than theta_end")
        if not abs(self.ellipticity) < 0.5:
            raise InvalidConfig(f"|ellipticity| must be < 0.5, got {self.ellipticity}")

    @property
    def thetas(self) -> np.ndarray:
        return np.linspace(self.theta_start, self.theta_end, self.steps)


def elliptic_rotation_path(angles, epsilon: float, first, second) -> DiscretizedPath:
    """Rotate ``first`` toward ``second`` with an ``i*epsilon`` tangent admixture.

    ``psi(a) = normalize(cos a * e1 + sin a * e2 + i eps (-sin a * e1 + cos a * e2))``
    for an orthonormal pair ``e1, e2``. At ``a = pi/2`` the path sits on
    ``e2`` (up to the admixture), which is orthogonal to the start.
    """
    a = np.asarray(angles, dtype=float)[:, None]
    e1 = np.asarray(first, dtype=complex)[None, :]
    e2 = np.asarray(second, dtype=complex)[None, :]
    rows = np.cos(a) * e1 + np.sin(a) * e2 + 1j * epsilon * (-np.sin(a) * e1 + np.cos(a) * e2)
    return DiscretizedPath.from_matrix(rows, timestamps=a[:, 0])


def polarization_sweep_path(cfg: PolarizationSweep) -> DiscretizedPath:
    """Jones vectors of a slightly elliptical polarization under rotation."""
    return elliptic_rotation_path(cfg.thetas, cfg.ellipticity, (1.0, 0.0), (0.0, 1.0))


@dataclass(frozen=True)
class GaussianBeamParams:
    """Per-dimension Rayleigh ranges of a (possibly astigmatic) Gaussian beam."""

    rayleigh_ranges: tuple
    wavelength: float | None = None

    def __init__(self, rayleigh_ranges, wavelength=None):
        zr = tuple(float(z) for z in np.atleast_1d(rayleigh_ranges))
        if not 1 <= len(zr) <= 2:
            raise InvalidConfig("a beam has 1 or 2 transverse dimensions")
        if not all(z > 0 and math.isfinite(z) for z in zr):
            raise InvalidConfig(f"Rayleigh ranges must be positive, got {zr}")
        object.__setattr__(self, "rayleigh_ranges", zr)
        object.__setattr__(self, "wavelength", wavelength)


def gouy_phase(z, beam: GaussianBeamParams):
    """On-axis Gouy phase ``sum_d 1/2 arctan(z / z_R[d])``; vectorized in z."""
    z = np.asarray(z, dtype=float)
    out = sum(0.5 * np.arctan(z / zr) for zr in beam.rayleigh_ranges)
    return float(out) if out.ndim == 0 else out


class _Flat:
    """Marker for the planar wavefront at the focus (R infinite)."""

    _inst = None

    def __new__(cls):
        if cls._inst is None:
            cls._inst = super().__new__(cls)
        return cls._inst

    def __repr__(self):
        return "FLAT_WAVEFRONT"

    def __float__(self):
        return math.inf


FLAT_WAVEFRONT = _Flat()


def radius_of_curvature(z: float, z_r: float):
    """Wavefront radius ``R(z) = z (1 + (z_R / z)^2)``.

    Returns :data:`FLAT_WAVEFRONT` at ``z == 0``. R has the sign of z, so it
    flips sign across the focus.
    """
    if not z_r > 0:
        raise InvalidConfig("z_R must be positive")
    if z == 0:
        return FLAT_WAVEFRONT
    return z * (1.0 + (z_r / z) ** 2)


def _inverse_radius(z, z_r):
    # 1/R, finite everywhere (0 at the focus)
    return z / (z * z + z_r * z_r)


def beam_radius(z, z_r: float, waist: float = 1.0):
    return waist * np.sqrt(1.0 + (np.asarray(z, dtype=float) / z_r) ** 2)


def _grid(half_width: float, points: int):
    x = np.linspace(-half_width, half_width, points)
    return x, x[1] - x[0]


def gaussian_mode_path(
    grid_half_width: float,
    grid_points: int,
    z_samples: Sequence[float],
    z_R: float,
    waist: float = 1.0,
) -> DiscretizedPath:
    """Fundamental 1-D Gaussian mode sampled on a uniform grid at each z.

    Each point is ``(2 / (pi w^2))^(1/4) exp(-x^2 / w^2 - i k x^2 / (2 R))``
    times ``sqrt(dx)``. Euclidean inner products of the vectors are then
    rectangle-rule overlap integrals. The representative is real and
    positive on axis and carries no Gouy factor. The wavenumber follows
    from the waist and Rayleigh range, ``k = 2 z_R / w0^2``.

    Timestamps of the returned path are the z samples.

    Raises
    ------
    InvalidConfig
        For fewer than 64 grid points, non-increasing z samples, or a grid
        narrower than 6 beam radii at the widest sample.
    GridTooCoarse
        If the analytically normalized mode has a grid norm off by more
        than 1e-6.
    """
    z = np.asarray(z_samples, dtype=float)
    if grid_points < 64:
        raise InvalidConfig(f"grid_points must be >= 64, got {grid_points}")
    if z.ndim != 1 or z.size < 2 or not np.all(np.diff(z) > 0):
        raise InvalidConfig("z_samples must be strictly increasing with at least 2 entries")
    if not (z_R > 0 and waist > 0):
        raise InvalidConfig("z_R and waist must be positive")
    w = beam_radius(z, z_R, waist)
    if grid_half_width < 6.0 * w.max():
        raise InvalidConfig(
            f"grid_half_width {grid_half_width} < 6 x max beam radius {w.max():.6g}"
        )
    k = 2.0 * z_R / waist**2
    x, dx = _grid(grid_half_width, grid_points)
    x2 = x * x
    rows = np.empty((z.size, x.size), dtype=np.complex128)
    for i, (zi, wi) in enumerate(zip(z, w)):
        u = (2.0 / (np.pi * wi * wi)) ** 0.25 * np.exp(
            -x2 / wi**2 - 0.5j * k * x2 * _inverse_radius(zi, z_R)
        )
        norm2 = np.sum(np.abs(u) ** 2) * dx
        if abs(norm2 - 1.0) > 1e-6:
            raise GridTooCoarse(
                f"grid norm {norm2:.9f} at z={zi:.6g}; refine or widen the grid"
            )
        rows[i] = u * np.sqrt(dx)
    return DiscretizedPath.from_matrix(rows, timestamps=z)


def kinetic_phase(
    path: DiscretizedPath, dx: float, wavenumber: float, method: str = "exact"
) -> np.ndarray:
    """Cumulative dynamical phase of paraxial free propagation along ``path``.

    The paraxial generator is ``H = p^2 / (2k)``. The step from point j to
    point j+1 spans ``h = t[j+1] - t[j]``. The default ``"exact"`` method
    takes ``arg <psi_j| exp(i H h) |psi_j>`` for each step. That is the
    characteristic function of the momentum distribution, evaluated by FFT.
    ``"expectation"`` takes the first-order version, ``<H> h`` integrated by
    the trapezoid rule. The two differ by O(h^2) overall.
    """
    t = path.timestamps
    if t is None:
        raise InvalidConfig("kinetic_phase needs a path whose timestamps are z")
    m = path.matrix
    p = 2.0 * np.pi * np.fft.fftfreq(m.shape[1], dx)
    spectrum = np.abs(np.fft.fft(m, axis=1)) ** 2
    spectrum /= spectrum.sum(axis=1, keepdims=True)
    kin = p * p / (2.0 * wavenumber)
    h = np.diff(t)
    if method == "exact":
        char = np.einsum("ij,ij->i", spectrum[:-1], np.exp(1j * np.outer(h, kin)))
        steps = np.angle(char)
    elif method == "expectation":
        mean_h = spectrum @ kin
        steps = 0.5 * (mean_h[1:] + mean_h[:-1]) * h
    else:
        raise InvalidConfig(f"unknown method {method!r}")
    out = np.zeros(t.size)
    np.cumsum(steps, out=out[1:])
    return out


@dataclass(frozen=True)
class ModeGouyResult:
    z: np.ndarray
    pancharatnam: PhaseTrace
    kinetic: np.ndarray
    gouy: np.ndarray = field(repr=False)


def mode_gouy_trace(
    z_samples: Sequence[float],
    z_R: float = 1.0,
    grid_points: int = 1024,
    grid_half_width: float | None = None,
    waist: float = 1.0,
    method: str = "exact",
) -> ModeGouyResult:
    """Recover the Gouy phase from the sampled transverse modes alone.

    The on-axis phase of the propagating beam is the Pancharatnam phase of
    the mode shapes plus the kinetic phase of free propagation. The Gouy
    curve is re-anchored so that it vanishes at the focus (z = 0),
    interpolating when the focus is not sampled.
    """
    z = np.asarray(z_samples, dtype=float)
    if grid_half_width is None:
        grid_half_width = 6.0 * float(beam_radius(np.abs(z).max(), z_R, waist)) * 1.01
    path = gaussian_mode_path(grid_half_width, grid_points, z, z_R, waist)
    dx = 2.0 * grid_half_width / (grid_points - 1)
    trace = cumulative_pancharatnam(path)
    kin = kinetic_phase(path, dx, 2.0 * z_R / waist**2, method)
    total = trace.cumulative_phase + kin
    if z[0] <= 0.0 <= z[-1]:
        total = total - np.interp(0.0, z, total)
    return ModeGouyResult(z, trace, kin, total)
