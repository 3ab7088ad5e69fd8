"""Raised-cosine drive signal and its exact derivative stack.

The default drive is x(t) = 1 - cos(t) for t >= 0 and 0 before that: it
starts from rest at the origin, sweeps the abscissa over [0, 2A], and
returns.  Derivatives of any order stay closed form because the stack
cycles through sin, cos, -sin, -cos.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ConfigError, DomainError

__all__ = ["Excitation", "SampleGrid", "excite", "grid", "DEFAULT_GRID_N"]

DEFAULT_GRID_N = 4096
_MIN_GRID_N = 64


@dataclass(frozen=True)
class Excitation:
    """Raised-cosine drive x(t) = offset - amplitude * cos(omega * t).

    The default offset equals the amplitude, which pins x(0) = 0 and
    keeps the sweep inside [0, 2 * amplitude].
    """

    amplitude: float = 1.0
    omega: float = 1.0
    offset: float | None = None

    def __post_init__(self) -> None:
        if not (self.amplitude > 0.0):
            raise DomainError("amplitude must be positive")
        if not (self.omega > 0.0):
            raise DomainError("omega must be positive")
        if self.offset is None:
            object.__setattr__(self, "offset", float(self.amplitude))

    @property
    def period(self) -> float:
        return 2.0 * np.pi / self.omega

    @property
    def sweep_range(self) -> tuple[float, float]:
        return (self.offset - self.amplitude, self.offset + self.amplitude)


def excite(exc: Excitation, t, level: int = 0):
    """Level-th time derivative of the drive at time t (0 for t < 0).

    level = 0 is the drive itself; positive levels walk the derivative
    stack sin, cos, -sin, -cos exactly, with amplitude * omega**level
    scaling.  Scalar in, scalar out; array in, array out.
    """
    level = int(level)
    if level < 0:
        raise DomainError("derivative level must be non-negative")
    ta = np.asarray(t, dtype=float)
    theta = exc.omega * ta
    if level == 0:
        out = exc.offset - exc.amplitude * np.cos(theta)
    else:
        scale = exc.amplitude * exc.omega ** level
        r = level % 4
        if r == 0:
            out = -scale * np.cos(theta)
        elif r == 1:
            out = scale * np.sin(theta)
        elif r == 2:
            out = scale * np.cos(theta)
        else:
            out = -scale * np.sin(theta)
    out = np.where(ta < 0.0, 0.0, out)
    return float(out) if np.ndim(t) == 0 else out


@dataclass(frozen=True)
class SampleGrid:
    """Uniform closed time grid over one drive period.

    t_values has count + 1 entries: both endpoints are included so that
    loci close up exactly.
    """

    t_values: np.ndarray
    count: int

    def __post_init__(self) -> None:
        if self.count < _MIN_GRID_N:
            raise ConfigError(f"grid needs at least {_MIN_GRID_N} intervals, got {self.count}")
        t = np.asarray(self.t_values, dtype=float)
        if t.ndim != 1 or len(t) != self.count + 1:
            raise ConfigError("t_values must be one-dimensional with count + 1 entries")
        if t[0] != 0.0:
            raise ConfigError("grid must start at t = 0")
        steps = np.diff(t)
        if np.any(steps <= 0) or np.max(np.abs(steps - steps[0])) > 1e-9 * steps[0]:
            raise ConfigError("grid must be strictly increasing and uniform")
        t = t.copy()
        t.flags.writeable = False
        object.__setattr__(self, "t_values", t)

    @property
    def spacing(self) -> float:
        return float(self.t_values[1] - self.t_values[0])

    def __len__(self) -> int:
        return len(self.t_values)


def grid(exc: Excitation, n: int = DEFAULT_GRID_N) -> SampleGrid:
    """Uniform grid of n intervals spanning one period of the drive."""
    n = int(n)
    if n < _MIN_GRID_N:
        raise ConfigError(f"grid needs at least {_MIN_GRID_N} intervals, got {n}")
    return SampleGrid(t_values=np.linspace(0.0, exc.period, n + 1), count=n)
