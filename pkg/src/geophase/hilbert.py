"""Finite-dimensional state vectors and the geometry of their rays.

A :class:`StateVector` is a unit vector in C^n standing in for its ray (the
class of vectors that differ from it by a complex phase). The functions here
are the substrate of the rest of the package: inner products, the
Fubini-Study distance between rays, in-phase geodesics, and pointwise gauge
changes along sampled paths.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import (
    DimensionMismatch,
    InvalidConfig,
    LengthMismatch,
    NonMonotoneTimestamps,
    OrthogonalEndpoints,
    ZeroVector,
)

NORM_TOL = 1e-12
# already-unit vectors are kept bit-for-bit rather than re-divided
_UNIT_SLACK = 4 * np.finfo(float).eps
#: Overlap magnitudes at or below this are treated as orthogonal.
EPS_ORTH = 1e-9


class StateVector:
    """Unit-norm complex vector of dimension >= 2.

    The constructor normalizes its input, so near-unit vectors coming out of
    long arithmetic chains are accepted as they are. The stored array is
    read-only.
    """

    __slots__ = ("_c",)
    # let numpy scalars defer to __rmul__ instead of broadcasting over us
    __array_ufunc__ = None

    def __init__(self, components):
        c = np.array(components, dtype=np.complex128).reshape(-1)
        if c.size < 2:
            raise DimensionMismatch(f"state dimension must be >= 2, got {c.size}")
        norm = np.linalg.norm(c)
        if not np.isfinite(norm) or norm <= NORM_TOL:
            raise ZeroVector(f"cannot normalize vector of norm {norm:.3e}")
        if abs(norm - 1.0) > _UNIT_SLACK:
            c = c / norm
        c.flags.writeable = False
        self._c = c

    @property
    def components(self) -> np.ndarray:
        return self._c

    @property
    def dim(self) -> int:
        return self._c.size

    def __array__(self, dtype=None, copy=None):
        return self._c if dtype is None else self._c.astype(dtype)

    def __len__(self):
        return self.dim

    def __eq__(self, other):
        if not isinstance(other, StateVector):
            return NotImplemented
        return self.dim == other.dim and bool(np.all(self._c == other._c))

    def __hash__(self):
        return hash(self._c.tobytes())

    def __mul__(self, scalar):
        # Used for phase factors; the result is renormalized.
        return StateVector(self._c * scalar)

    __rmul__ = __mul__

    def __repr__(self):
        body = ", ".join(f"{z.real:.6g}{z.imag:+.6g}j" for z in self._c[:4])
        more = ", ..." if self.dim > 4 else ""
        return f"StateVector([{body}{more}])"

    def to_json(self) -> list:
        """``[[re, im], ...]`` representation used for CLI I/O."""
        return [[float(z.real), float(z.imag)] for z in self._c]

    @classmethod
    def from_json(cls, pairs) -> "StateVector":
        try:
            arr = np.asarray(pairs, dtype=float)
        except (TypeError, ValueError) as exc:
            raise InvalidConfig(f"state must be a list of [re, im] pairs: {exc}") from None
        if arr.ndim != 2 or arr.shape[1] != 2:
            raise InvalidConfig("state must be a list of [re, im] pairs")
        return cls(arr[:, 0] + 1j * arr[:, 1])


def normalize(v) -> StateVector:
    """Return ``v / |v|`` as a :class:`StateVector`.

    Raises
    ------
    ZeroVector
        If ``|v| <= 1e-12``.
    """
    return StateVector(v)


def _check_dims(a: StateVector, b: StateVector) -> None:
    if a.dim != b.dim:
        raise DimensionMismatch(f"dimensions differ: {a.dim} vs {b.dim}")


def overlap(a: StateVector, b: StateVector) -> complex:
    """Inner product <a|b>, antilinear in the first argument."""
    _check_dims(a, b)
    return complex(np.vdot(a.components, b.components))


def _align(a: StateVector, b: StateVector, ov: complex) -> np.ndarray:
    """Representative of b's ray that is in phase with a (<a|b'> real >= 0)."""
    mag = abs(ov)
    if mag == 0.0:
        return b.components
    return b.components * (ov.conjugate() / mag)


def fubini_study_distance(a: StateVector, b: StateVector) -> float:
    """Fubini-Study angle ``arccos|<a|b>|`` between the rays of a and b.

    Evaluated through the chord between in-phase representatives,
    ``2 arcsin(|a - b'| / 2)``, which equals the arccos form for unit vectors
    but stays accurate for nearly identical rays, where arccos loses half
    the significant digits.
    """
    ov = overlap(a, b)
    chord = np.linalg.norm(a.components - _align(a, b, ov))
    return float(2.0 * np.arcsin(min(chord / 2.0, np.sqrt(0.5))))


def geodesic_interpolate(a: StateVector, b: StateVector, t: float) -> StateVector:
    """Point at fraction ``t`` of the Fubini-Study geodesic from a to b.

    The geodesic ends at the representative of b that is in phase with a,
    so ``t=1`` returns ``b`` itself only when ``<a|b>`` is already real and
    positive.

    Raises
    ------
    OrthogonalEndpoints
        If ``|<a|b>| <= 1e-9``; every great circle through a reaches b then.
    """
    ov = overlap(a, b)
    mag = abs(ov)
    if mag <= EPS_ORTH:
        raise OrthogonalEndpoints(f"|<a|b>| = {mag:.3e}: geodesic is not unique")
    if t == 0:
        return a
    b_al = _align(a, b, ov)
    if t == 1:
        return b if np.array_equal(b_al, b.components) else StateVector(b_al)
    theta = fubini_study_distance(a, b)
    if theta == 0.0:
        return a
    s = np.sin(theta)
    v = (np.sin((1.0 - t) * theta) / s) * a.components + (np.sin(t * theta) / s) * b_al
    return StateVector(v)


@dataclass(frozen=True)
class GaugePhases:
    """One real phase (radians) per path point."""

    phases: tuple

    def __init__(self, phases: Iterable[float]):
        arr = np.asarray(list(phases), dtype=float)
        if not np.all(np.isfinite(arr)):
            raise InvalidConfig("gauge phases must be finite")
        object.__setattr__(self, "phases", tuple(arr.tolist()))

    def __len__(self):
        return len(self.phases)

    @classmethod
    def random(cls, n: int, rng: np.random.Generator) -> "GaugePhases":
        return cls(rng.uniform(-np.pi, np.pi, size=n))


class DiscretizedPath:
    """Ordered samples of a trajectory through ray space.

    Parameters
    ----------
    states : sequence of StateVector
        At least two states, all of the same dimension.
    timestamps : sequence of float, optional
        Strictly increasing parameter values, one per state.
    """

    __slots__ = ("_states", "_matrix", "_t")

    def __init__(self, states: Sequence[StateVector], timestamps=None):
        states = tuple(s if isinstance(s, StateVector) else StateVector(s) for s in states)
        if len(states) < 2:
            raise LengthMismatch(f"a path needs at least 2 states, got {len(states)}")
        dim = states[0].dim
        for s in states:
            _check_dims(states[0], s)
        self._states = states
        m = np.empty((len(states), dim), dtype=np.complex128)
        for k, s in enumerate(states):
            m[k] = s.components
        m.flags.writeable = False
        self._matrix = m
        if timestamps is not None:
            t = np.asarray(timestamps, dtype=float).reshape(-1)
            if t.size != len(states):
                raise LengthMismatch(
                    f"{t.size} timestamps for {len(states)} states"
                )
            if not np.all(np.diff(t) > 0):
                raise NonMonotoneTimestamps("timestamps must be strictly increasing")
            t.flags.writeable = False
            self._t = t
        else:
            self._t = None

    @classmethod
    def from_matrix(cls, rows, timestamps=None) -> "DiscretizedPath":
        """Build a path from an ``(N, dim)`` array; each row is normalized."""
        return cls([StateVector(r) for r in np.asarray(rows)], timestamps)

    @property
    def states(self) -> tuple:
        return self._states

    @property
    def timestamps(self):
        return self._t

    @property
    def matrix(self) -> np.ndarray:
        """Read-only ``(N, dim)`` array of the state components."""
        return self._matrix

    @property
    def dim(self) -> int:
        return self._matrix.shape[1]

    def __len__(self):
        return len(self._states)

    def __getitem__(self, k):
        return self._states[k]

    def __iter__(self):
        return iter(self._states)

    def rotated(self, shift: int) -> "DiscretizedPath":
        """Cyclically relabel the points so the path starts at ``shift``."""
        shift %= len(self)
        return DiscretizedPath(self._states[shift:] + self._states[:shift])

    def to_json(self) -> dict:
        out = {"states": [s.to_json() for s in self._states]}
        if self._t is not None:
            out["timestamps"] = [float(x) for x in self._t]
        return out

    @classmethod
    def from_json(cls, obj) -> "DiscretizedPath":
        """Accept either ``{"states": [...], "timestamps": [...]}`` or a bare list of states."""
        if isinstance(obj, str):
            obj = json.loads(obj)
        if isinstance(obj, list):
            obj = {"states": obj}
        if not isinstance(obj, dict) or "states" not in obj:
            raise InvalidConfig("path JSON needs a 'states' list")
        unknown = set(obj) - {"states", "timestamps"}
        if unknown:
            raise InvalidConfig(f"unknown key(s) in path JSON: {sorted(unknown)}")
        states = [StateVector.from_json(s) for s in obj["states"]]
        return cls(states, obj.get("timestamps"))


def apply_gauge(path: DiscretizedPath, g: GaugePhases) -> DiscretizedPath:
    """Multiply point k of ``path`` by ``exp(i * g.phases[k])``."""
    if len(g) != len(path):
        raise LengthMismatch(f"{len(g)} gauge phases for a path of {len(path)} points")
    factors = np.exp(1j * np.asarray(g.phases))
    return DiscretizedPath.from_matrix(path.matrix * factors[:, None], path.timestamps)
