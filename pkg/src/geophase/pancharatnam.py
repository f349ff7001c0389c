"""Pancharatnam phases along sampled paths in ray space.

Sign convention: the geometric phase of a sequence of states is
``-arg prod_j <psi_j|psi_{j+1}>``. With it, a closed spin-1/2 loop picks
up minus half the solid angle it encloses on the Bloch sphere.

Two kinds of open-path trace are provided:

* :func:`cumulative_pancharatnam` compares each state with the next one.
  Its increments are the discrete connection. They stay small on any
  finely sampled path.
* :func:`relative_pancharatnam` compares every state with the first one,
  which is Pancharatnam's original interference phase. When the path
  passes close to the state orthogonal to its start, the reference
  overlap dips toward the origin of the complex plane and this phase
  turns by nearly +-pi within a few samples. The side on which the
  overlap passes the origin sets the sign.

:func:`detect_pi_jump` finds those turns in either kind of trace.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce
from operator import mul

import numpy as np

from .errors import MissingTimestamps, OrthogonalStates, OrthogonalStep
from .hilbert import (
    EPS_ORTH,
    DiscretizedPath,
    StateVector,
    _check_dims,
    fubini_study_distance,
    overlap,
)

__all__ = [
    "DiscretizedPath",
    "PhaseTrace",
    "JumpReport",
    "pairwise_phase",
    "cumulative_pancharatnam",
    "relative_pancharatnam",
    "closed_loop_phase",
    "bargmann_invariant",
    "fs_speed",
    "detect_pi_jump",
]

DEFAULT_JUMP_THRESHOLD = 0.75 * np.pi
DEFAULT_DIP_THRESHOLD = 0.1
DEFAULT_RECOVERY_THRESHOLD = 0.5


@dataclass(frozen=True)
class PhaseTrace:
    """Unwrapped phase along a path.

    Attributes
    ----------
    cumulative_phase : ndarray, shape (N,)
        Radians, starting at exactly 0. Never re-wrapped.
    step_overlap_magnitude : ndarray, shape (N-1,)
        Entry j is the overlap magnitude that governs the step from point j
        to point j+1.
    closed : bool
        True when the trace runs once around a loop and ends back on the
        starting state.
    reference : str
        ``"step"`` for consecutive overlaps, ``"start"`` for overlaps with
        the first state.
    """

    cumulative_phase: np.ndarray
    step_overlap_magnitude: np.ndarray
    closed: bool = False
    reference: str = "step"

    def __post_init__(self):
        cp = np.asarray(self.cumulative_phase, dtype=float)
        ov = np.asarray(self.step_overlap_magnitude, dtype=float)
        if cp.ndim != 1 or cp.size < 2 or ov.shape != (cp.size - 1,):
            raise ValueError("need N >= 2 phases and N-1 overlap magnitudes")
        cp.flags.writeable = False
        ov.flags.writeable = False
        object.__setattr__(self, "cumulative_phase", cp)
        object.__setattr__(self, "step_overlap_magnitude", ov)

    def __len__(self):
        return self.cumulative_phase.size

    @property
    def increments(self) -> np.ndarray:
        return np.diff(self.cumulative_phase)


@dataclass(frozen=True)
class JumpReport:
    index: int
    magnitude: float
    sign: int
    min_overlap: float


def _principal(angle):
    """Map np.angle output from [-pi, pi] onto (-pi, pi]."""
    return np.where(angle <= -np.pi, np.pi, angle)


def pairwise_phase(a: StateVector, b: StateVector) -> float:
    """Principal value of ``arg <a|b>``, in (-pi, pi].

    Raises
    ------
    OrthogonalStates
        If ``|<a|b>| <= 1e-9``.
    """
    ov = overlap(a, b)
    if abs(ov) <= EPS_ORTH:
        raise OrthogonalStates(f"|<a|b>| = {abs(ov):.3e}: connection undefined")
    return float(_principal(np.angle(ov)))


def _consecutive_overlaps(m: np.ndarray) -> np.ndarray:
    return np.einsum("ij,ij->i", m[:-1].conj(), m[1:])


def _check_steps(mags: np.ndarray) -> None:
    bad = np.flatnonzero(mags <= EPS_ORTH)
    if bad.size:
        raise OrthogonalStep(bad[0], mags[bad[0]])


def _accumulate(step_factors: np.ndarray) -> np.ndarray:
    out = np.zeros(step_factors.size + 1)
    np.cumsum(-_principal(np.angle(step_factors)), out=out[1:])
    return out


def cumulative_pancharatnam(path: DiscretizedPath, closed: bool = False) -> PhaseTrace:
    """Running geometric phase from consecutive overlaps.

    ``cumulative_phase[k] = -sum_{j<k} arg <psi_j|psi_{j+1}>``, with each term
    taken as a principal value. With ``closed=True`` the starting state is
    appended, giving N+1 points. The last entry is then the closed-loop phase
    before wrapping.

    Raises
    ------
    OrthogonalStep
        Carries the index of the first step whose overlap magnitude is
        below 1e-9.
    """
    m = path.matrix
    if closed:
        m = np.vstack([m, m[:1]])
    ov = _consecutive_overlaps(m)
    mags = np.abs(ov)
    _check_steps(mags)
    return PhaseTrace(_accumulate(ov), mags, closed=closed, reference="step")


def relative_pancharatnam(path: DiscretizedPath) -> PhaseTrace:
    """Phase of every state measured against the first, ``-arg <psi_0|psi_k>``.

    Consecutive differences are taken as principal values and summed
    without re-wrapping. When the reference overlap passes near the origin,
    the trace therefore keeps the sense of rotation and does not alias a
    jump of nearly pi to its negative. The overlap column holds, for each
    step, the smaller reference magnitude of the step's two endpoints.
    """
    r = path.matrix @ path.matrix[0].conj()
    mags = np.abs(r)
    bad = np.flatnonzero(mags <= EPS_ORTH)
    if bad.size:
        raise OrthogonalStep(max(bad[0] - 1, 0), mags[bad[0]])
    step_mag = np.minimum(mags[:-1], mags[1:])
    return PhaseTrace(_accumulate(r[1:] * r[:-1].conj()), step_mag, reference="start")


def _loop_product(factors) -> complex:
    return reduce(mul, (complex(z) for z in factors))


def closed_loop_phase(path: DiscretizedPath) -> float:
    """Gauge-invariant geometric phase of the loop ``psi_0 -> ... -> psi_0``.

    Returns ``-arg[<psi_0|psi_1> ... <psi_{N-1}|psi_0>]`` in (-pi, pi].
    """
    m = np.vstack([path.matrix, path.matrix[:1]])
    ov = _consecutive_overlaps(m)
    _check_steps(np.abs(ov))
    return _minus_arg(_loop_product(ov))


def _minus_arg(z: complex) -> float:
    phi = -float(np.angle(z))
    return float(np.pi) if phi <= -np.pi else phi


def bargmann_invariant(a: StateVector, b: StateVector, c: StateVector) -> complex:
    """Three-vertex Bargmann invariant ``<a|b><b|c><c|a>``.

    Uses the same overlap and product arithmetic as
    :func:`closed_loop_phase`, so ``-arg`` of this value equals that function
    on ``[a, b, c]`` bit for bit.
    """
    _check_dims(a, b)
    _check_dims(a, c)
    m = np.vstack([a.components, b.components, c.components, a.components])
    return _loop_product(_consecutive_overlaps(m))


def fs_speed(path: DiscretizedPath) -> np.ndarray:
    """Fubini-Study distance per unit parameter for each step.

    Raises
    ------
    MissingTimestamps
        If the path carries no timestamps.
    """
    t = path.timestamps
    if t is None:
        raise MissingTimestamps("fs_speed needs a path with timestamps")
    d = np.array(
        [fubini_study_distance(path[j], path[j + 1]) for j in range(len(path) - 1)]
    )
    return d / np.diff(t)


def _windows(ov: np.ndarray, dip: float, recovery: float):
    """Merged step windows [lo, hi] around each run of steps below ``dip``.

    A window grows outward from its dip run for as long as the step
    overlap stays below ``recovery``. That way the whole turn of the phase
    is collected, including the shoulders on either side of the dip.
    """
    n = ov.size
    below = ov < dip
    spans = []
    j = 0
    while j < n:
        if not below[j]:
            j += 1
            continue
        lo = hi = j
        while hi + 1 < n and below[hi + 1]:
            hi += 1
        j = hi + 1
        while lo > 0 and ov[lo - 1] < recovery:
            lo -= 1
        while hi + 1 < n and ov[hi + 1] < recovery:
            hi += 1
        if spans and lo <= spans[-1][1] + 1:
            spans[-1][1] = max(spans[-1][1], hi)
        else:
            spans.append([lo, hi])
    return spans


def detect_pi_jump(
    trace: PhaseTrace,
    jump_threshold: float = DEFAULT_JUMP_THRESHOLD,
    dip_threshold: float = DEFAULT_DIP_THRESHOLD,
    recovery_threshold: float = DEFAULT_RECOVERY_THRESHOLD,
) -> list[JumpReport]:
    """Locate near-singular +-pi phase turns in a trace.

    A crossing event starts from a run of steps whose overlap magnitude is
    below ``dip_threshold``. The run is widened on both sides while the
    overlap stays below ``recovery_threshold``. The event's magnitude is the
    net phase change across the widened window. It is reported only when
    that change exceeds ``jump_threshold`` in absolute value. Requiring
    both a large change and an overlap dip keeps coarse but regular
    sampling from being flagged.

    For a trace whose sampling already places the whole turn inside one
    step, the window is that step, and the magnitude is the step increment.

    Returns
    -------
    list of JumpReport
        One report per event, in path order. ``index`` is the step with the
        deepest overlap dip.
    """
    ov = trace.step_overlap_magnitude
    cp = trace.cumulative_phase
    reports = []
    for lo, hi in _windows(ov, dip_threshold, max(recovery_threshold, dip_threshold)):
        mag = float(cp[hi + 1] - cp[lo])
        if abs(mag) <= jump_threshold:
            continue
        k = lo + int(np.argmin(ov[lo : hi + 1]))
        reports.append(JumpReport(k, mag, 1 if mag > 0 else -1, float(ov[k])))
    return reports
