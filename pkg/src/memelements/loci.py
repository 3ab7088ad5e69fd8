"""Geometric analyses of parametric loci.

Everything here consumes a ParametricLocus and reports geometry with
numerical witnesses: origin crossings, tangent landmarks, symmetry,
valuedness, negative-slope arcs, and the ordinate/abscissa phase lag.
Roots are located by sign-change scans over the sample grid and refined
by bisection through the locus evaluation hooks when those exist.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np
from scipy.optimize import bisect

from .constitutive import ConstitutiveCurve
from .errors import CapabilityError, NumericalError
from .excitation import Excitation, excite
from .transform import ParametricLocus, chain_ordinate, periodic_derivative

__all__ = [
    "PointKind",
    "SpecialPoint",
    "ArcInterval",
    "SymmetryReport",
    "Valuedness",
    "ValuednessWitness",
    "ValuednessReport",
    "OriginCrossing",
    "PhaseClass",
    "PhaseReport",
    "point_at",
    "origin_crossing",
    "valuedness",
    "odd_symmetry",
    "zero_tangent_points",
    "vertical_tangent_points",
    "negative_slope_arcs",
    "phase_shift",
]


class PointKind(Enum):
    PINCH = "pinch"
    ZERO_TANGENT = "zero_tangent"
    VERTICAL_TANGENT = "vertical_tangent"
    ACTIVITY_WITNESS = "activity_witness"
    PROJECTED = "projected"


@dataclass(frozen=True)
class SpecialPoint:
    """A landmark on a locus: where it sits, what it is, how it points.

    chord_angle is the direction of the chord from the origin and is None
    exactly when the point lies on the origin.  tangent_angle, when set,
    is the traversal tangent direction at the point (principal value for
    projections, 0 for zero tangents, pi/2 for vertical tangents).
    """

    t: float
    u: float
    w: float
    kind: PointKind
    chord_angle: float | None = None
    tangent_angle: float | None = None

    @property
    def chord_defined(self) -> bool:
        return self.chord_angle is not None


@dataclass(frozen=True)
class ArcInterval:
    """Maximal time interval over which the locus slope dw/du is negative."""

    t_start: float
    t_end: float


@dataclass(frozen=True)
class SymmetryReport:
    odd_symmetric: bool
    max_violation: float


class Valuedness(Enum):
    SINGLE = "single"
    DOUBLE = "double"


@dataclass(frozen=True)
class ValuednessWitness:
    """Two times sharing an abscissa, with their (possibly equal) ordinates."""

    t: float
    t_pair: float
    w: float
    w_pair: float

    @property
    def gap(self) -> float:
        return abs(self.w - self.w_pair)


@dataclass(frozen=True)
class ValuednessReport:
    kind: Valuedness
    max_gap: float
    witnesses: tuple[ValuednessWitness, ...]


@dataclass(frozen=True)
class OriginCrossing:
    """Origin behaviour of a locus.

    abscissa_zeros lists every time the abscissa vanishes, tagged PINCH
    when the ordinate vanishes with it and ACTIVITY_WITNESS otherwise.
    """

    crosses_origin: bool
    pinch_points: tuple[SpecialPoint, ...]
    abscissa_zeros: tuple[SpecialPoint, ...]


class PhaseClass(Enum):
    LAG = "lag"
    ADVANCE = "advance"
    IN_PHASE = "in_phase"


@dataclass(frozen=True)
class PhaseReport:
    """Timing of the first ordinate peak against the abscissa peak."""

    t_peak_ordinate: float
    t_peak_abscissa: float
    shift: float
    classification: PhaseClass


# ----------------------------------------------------------------------
# evaluation helpers
# ----------------------------------------------------------------------

def point_at(locus: ParametricLocus, t):
    """Locus coordinates at arbitrary time: exact via hooks, else interpolated."""
    if locus.value_fn is not None:
        u, w = locus.value_fn(t)
    else:
        u = np.interp(t, locus.t_values, locus.u_values)
        w = np.interp(t, locus.t_values, locus.w_values)
    if np.ndim(t) == 0:
        return float(u), float(w)
    return np.asarray(u, dtype=float), np.asarray(w, dtype=float)


def _derivative_arrays(locus: ParametricLocus) -> tuple[np.ndarray, np.ndarray]:
    if locus.derivative_fn is not None:
        du, dw = locus.derivative_fn(locus.t_values)
        return np.asarray(du, dtype=float), np.asarray(dw, dtype=float)
    h = locus.spacing
    return (
        periodic_derivative(locus.u_values, h),
        periodic_derivative(locus.w_values, h),
    )


def _derivative_at(locus: ParametricLocus, t: float,
                   arrays: tuple[np.ndarray, np.ndarray] | None = None):
    if locus.derivative_fn is not None:
        du, dw = locus.derivative_fn(t)
        return float(du), float(dw)
    du_a, dw_a = arrays if arrays is not None else _derivative_arrays(locus)
    return (
        float(np.interp(t, locus.t_values, du_a)),
        float(np.interp(t, locus.t_values, dw_a)),
    )


def _refined_roots(t: np.ndarray, vals: np.ndarray, fn=None,
                   xtol: float = 1e-12, transversal_only: bool = False) -> list[float]:
    """Roots of a sampled signal: sign-change scan plus bisection via fn.

    A run of exact-zero samples yields one representative root at its
    middle.  With transversal_only the signal must change sign across a
    root, which drops tangential (double) zeros; the signal is treated
    as periodic when looking up the run's neighbours.  Without fn, roots
    between samples fall back to linear interpolation in the bracket.
    """
    vals = np.asarray(vals, dtype=float)
    n = len(t)
    core_n = n - 1  # last sample duplicates the first, one period later

    def neighbor_sign(idx: int, step: int) -> float:
        for k in range(1, core_n):
            v = float(vals[(idx + step * k) % core_n])
            if v != 0.0:
                return float(np.sign(v))
        return 0.0

    roots: list[float] = []
    i = 0
    while i < n:
        if float(vals[i]) == 0.0:
            j = i
            while j + 1 < n and float(vals[j + 1]) == 0.0:
                j += 1
            keep = True
            if transversal_only:
                left = neighbor_sign(i % core_n, -1)
                right = neighbor_sign(j % core_n, +1)
                keep = left * right < 0.0
            if keep:
                roots.append(float(t[(i + j) // 2]))
            i = j + 1
            continue
        if i + 1 < n and float(vals[i]) * float(vals[i + 1]) < 0.0:
            if fn is not None:
                roots.append(float(bisect(fn, float(t[i]), float(t[i + 1]), xtol=xtol)))
            else:
                a, b = float(vals[i]), float(vals[i + 1])
                roots.append(float(t[i]) - a * (float(t[i + 1]) - float(t[i])) / (b - a))
        i += 1
    return _dedupe(roots, max(10.0 * xtol, 1e-12))


def _dedupe(values: list[float], tol: float) -> list[float]:
    out: list[float] = []
    for v in sorted(values):
        if not out or v - out[-1] > tol:
            out.append(v)
    return out


def _component_fn(locus: ParametricLocus, index: int):
    if locus.value_fn is None:
        return None

    def fn(t, _idx=index):
        return float(locus.value_fn(t)[_idx])

    return fn


def _derivative_component_fn(locus: ParametricLocus, index: int):
    if locus.derivative_fn is None:
        return None

    def fn(t, _idx=index):
        return float(locus.derivative_fn(t)[_idx])

    return fn


# ----------------------------------------------------------------------
# origin behaviour
# ----------------------------------------------------------------------

def origin_crossing(locus: ParametricLocus, pinch_tol: float = 1e-9) -> OriginCrossing:
    """Find every abscissa zero and sort pinches from off-origin crossings."""
    t = locus.t_values
    u = locus.u_values
    w = locus.w_values
    scale_u = max(1.0, float(np.max(np.abs(u))))
    scale_w = max(1.0, float(np.max(np.abs(w))))

    roots = _refined_roots(t, u, _component_fn(locus, 0))

    # tangential zeros never flip sign; pick them up from near-zero samples
    near = np.abs(u) <= pinch_tol * scale_u
    h = locus.spacing
    for idx in _cluster_minima(near, np.abs(u)):
        cand = float(t[idx])
        if all(abs(cand - r) > 2.0 * h for r in roots):
            roots.append(cand)
    roots = _dedupe(roots, 1e-12)

    points: list[SpecialPoint] = []
    for r in roots:
        ur, wr = point_at(locus, r)
        if abs(ur) <= pinch_tol * scale_u and abs(wr) <= pinch_tol * scale_w:
            points.append(SpecialPoint(t=r, u=ur, w=wr, kind=PointKind.PINCH))
        else:
            points.append(
                SpecialPoint(
                    t=r, u=ur, w=wr, kind=PointKind.ACTIVITY_WITNESS,
                    chord_angle=float(np.arctan2(wr, ur)),
                )
            )
    pinches = tuple(p for p in points if p.kind is PointKind.PINCH)
    return OriginCrossing(
        crosses_origin=bool(pinches),
        pinch_points=pinches,
        abscissa_zeros=tuple(points),
    )


def _cluster_minima(mask: np.ndarray, magnitude: np.ndarray) -> list[int]:
    """Index of the smallest magnitude inside each run of True samples."""
    out: list[int] = []
    i = 0
    n = len(mask)
    while i < n:
        if mask[i]:
            j = i
            while j + 1 < n and mask[j + 1]:
                j += 1
            seg = magnitude[i : j + 1]
            out.append(i + int(np.argmin(seg)))
            i = j + 1
        else:
            i += 1
    return out


# ----------------------------------------------------------------------
# valuedness and symmetry
# ----------------------------------------------------------------------

def valuedness(locus: ParametricLocus, tol: float = 1e-9) -> ValuednessReport:
    """Single- vs double-valuedness via the time pairing of equal abscissae.

    Odd-depth loci revisit each abscissa at (T/2 - t) mod T, even-depth
    loci at T - t.  A locus is double-valued when the paired ordinates
    disagree anywhere beyond tolerance.
    """
    t = locus.t_values
    T = locus.period
    if locus.depth % 2 == 1:
        t_pair = np.mod(0.5 * T - t, T)
    else:
        t_pair = np.mod(T - t, T)
    _, w_pair = point_at(locus, t_pair)
    gap = np.abs(locus.w_values - w_pair)
    scale = max(1.0, float(np.max(np.abs(locus.w_values))))
    max_gap = float(np.max(gap))
    if max_gap <= tol * scale:
        return ValuednessReport(Valuedness.SINGLE, max_gap, ())

    order = np.argsort(gap)[::-1]
    witnesses: list[ValuednessWitness] = []
    min_sep = T / 64.0
    for idx in order:
        if gap[idx] <= tol * scale:
            break
        tv = float(t[idx])
        if any(abs(tv - wv.t) < min_sep for wv in witnesses):
            continue
        witnesses.append(
            ValuednessWitness(
                t=tv,
                t_pair=float(t_pair[idx]),
                w=float(locus.w_values[idx]),
                w_pair=float(w_pair[idx]),
            )
        )
        if len(witnesses) == 4:
            break
    return ValuednessReport(Valuedness.DOUBLE, max_gap, tuple(witnesses))


def odd_symmetry(locus: ParametricLocus, tol: float = 1e-9) -> SymmetryReport:
    """Point symmetry through the origin under time reversal t -> T - t."""
    u = locus.u_values
    w = locus.w_values
    viol_u = float(np.max(np.abs(u + u[::-1])))
    viol_w = float(np.max(np.abs(w + w[::-1])))
    violation = max(viol_u, viol_w)
    scale = max(
        1.0, float(np.max(np.abs(u))), float(np.max(np.abs(w)))
    )
    return SymmetryReport(odd_symmetric=violation <= tol * scale,
                          max_violation=violation)


# ----------------------------------------------------------------------
# tangent landmarks
# ----------------------------------------------------------------------

def _tangent_points(locus: ParametricLocus, root_tol: float, vertical: bool
                    ) -> tuple[SpecialPoint, ...]:
    du_a, dw_a = _derivative_arrays(locus)
    if vertical:
        scan, other = du_a, dw_a
        fn = _derivative_component_fn(locus, 0)
        kind = PointKind.VERTICAL_TANGENT
        tangent_angle = 0.5 * np.pi
    else:
        scan, other = dw_a, du_a
        fn = _derivative_component_fn(locus, 1)
        kind = PointKind.ZERO_TANGENT
        tangent_angle = 0.0

    gate = root_tol * max(1.0, float(np.max(np.abs(other))))
    points: list[SpecialPoint] = []
    for r in _refined_roots(locus.t_values, scan, fn, transversal_only=True):
        du_r, dw_r = _derivative_at(locus, r, (du_a, dw_a))
        other_r = dw_r if vertical else du_r
        if abs(other_r) <= gate:
            continue  # both rates vanish: a cusp, not a tangent landmark
        ur, wr = point_at(locus, r)
        chord = None
        if max(abs(ur), abs(wr)) > 0.0:
            chord = float(np.arctan2(wr, ur))
        points.append(
            SpecialPoint(t=r, u=ur, w=wr, kind=kind,
                         chord_angle=chord, tangent_angle=float(tangent_angle))
        )
    return tuple(points)


def zero_tangent_points(locus: ParametricLocus, root_tol: float = 1e-10
                        ) -> tuple[SpecialPoint, ...]:
    """Points where dw/dt vanishes while du/dt does not (horizontal tangent)."""
    return _tangent_points(locus, root_tol, vertical=False)


def vertical_tangent_points(locus: ParametricLocus, root_tol: float = 1e-10
                            ) -> tuple[SpecialPoint, ...]:
    """Points where du/dt vanishes while dw/dt does not (vertical tangent)."""
    return _tangent_points(locus, root_tol, vertical=True)


# ----------------------------------------------------------------------
# slope arcs
# ----------------------------------------------------------------------

def negative_slope_arcs(locus: ParametricLocus, root_tol: float = 1e-10
                        ) -> tuple[ArcInterval, ...]:
    """Maximal intervals where the locus slope dw/du is negative.

    Breakpoints are the refined roots of either coordinate rate, so each
    arc endpoint is a tangent landmark, a cusp, or a period boundary.
    """
    t = locus.t_values
    du_a, dw_a = _derivative_arrays(locus)
    breaks = set(
        _refined_roots(t, dw_a, _derivative_component_fn(locus, 1), transversal_only=True)
    )
    breaks.update(
        _refined_roots(t, du_a, _derivative_component_fn(locus, 0), transversal_only=True)
    )
    breaks.update((float(t[0]), float(t[-1])))
    bps = _dedupe(list(breaks), 1e-9)

    negative: list[tuple[float, float]] = []
    for a, b in zip(bps[:-1], bps[1:]):
        if b - a <= 1e-9:
            continue
        mid = 0.5 * (a + b)
        du_m, dw_m = _derivative_at(locus, mid, (du_a, dw_a))
        if du_m * dw_m < 0.0:
            if negative and abs(negative[-1][1] - a) <= 1e-9:
                negative[-1] = (negative[-1][0], b)
            else:
                negative.append((a, b))
    return tuple(ArcInterval(t_start=a, t_end=b) for a, b in negative)


# ----------------------------------------------------------------------
# phase
# ----------------------------------------------------------------------

def phase_shift(curve: ConstitutiveCurve, exc: Excitation,
                phase_tol: float = 1e-6) -> PhaseReport:
    """Timing of the first depth-1 ordinate peak against the drive-rate peak.

    Peaks are maxima: roots of the second chain derivative crossed from
    positive to negative, located on the outgoing half-period.  Requires
    second derivatives of the curve.
    """
    if curve.max_derivative_order < 2:
        raise CapabilityError("phase analysis needs curve second derivatives")

    T = exc.period

    def rate_w(t):
        return chain_ordinate(curve, exc, t, 2)

    def rate_u(t):
        return excite(exc, t, 2)

    t_w = _first_maximum(rate_w, T)
    t_u = _first_maximum(rate_u, T)
    shift = t_w - t_u
    if shift > phase_tol:
        cls = PhaseClass.LAG
    elif shift < -phase_tol:
        cls = PhaseClass.ADVANCE
    else:
        cls = PhaseClass.IN_PHASE
    return PhaseReport(
        t_peak_ordinate=t_w, t_peak_abscissa=t_u, shift=shift, classification=cls
    )


def _first_maximum(rate_fn, T: float) -> float:
    """First time in (0, T/2) where rate_fn crosses from + to -."""
    ts = np.linspace(0.0, 0.5 * T, 4097)
    vals = np.asarray(rate_fn(ts))
    probe = min(1e-7 * T, 0.25 * (ts[1] - ts[0]))
    for r in _refined_roots(ts, vals, rate_fn):
        if not (0.0 < r < 0.5 * T):
            continue
        if rate_fn(max(r - probe, 0.0)) > 0.0 > rate_fn(min(r + probe, 0.5 * T)):
            return float(r)
    raise NumericalError("no ordinate maximum found on the outgoing half-period")
