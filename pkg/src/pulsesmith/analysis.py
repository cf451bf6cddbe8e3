"""Robustness certification and figure-style datasets.

The cancellation order of a family is certified numerically: infidelity
1 - F along a ray in the (epsilon, f) plane scales as t^2 for an
uncompensated sequence and as t^4 once the first-order term vanishes, so a
log-log slope fit distinguishes the two. For palindromic sequences the
first-order off-resonance term collapses to a single scalar
s1 a1 + ... + s_{k-1} a_{k-1} + s_k (s_i = sin(theta_i/2)), whose root is
exactly the switchback tuning condition; the residual is evaluated here and
cross-checked against a finite-difference derivative of the composed matrix.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .sequences import PulseSequence, compose_with_errors, scorbutus, skinsc, total_time
from .su2 import SIGMA_0, ErrorPair, Pulse, Unitary2, gate_fidelity, rotation

INFIDELITY_FLOOR = 1e-14
FD_STEP = 1e-5


@dataclass(frozen=True)
class SlopeReport:
    """Log-log slope of infidelity along one error ray."""

    ray: tuple[float, float]
    t_values: tuple[float, ...]
    infidelities: tuple[float, ...]
    fitted_slope: float
    fit_residual: float

    def to_dict(self) -> dict:
        return {
            "ray": {"d_eps": self.ray[0], "d_f": self.ray[1]},
            "t_values": list(self.t_values),
            "infidelities": list(self.infidelities),
            "fitted_slope": self.fitted_slope,
            "fit_residual": self.fit_residual,
        }


@dataclass(frozen=True)
class OreResidualReport:
    """Scalar first-order off-resonance condition for a palindromic sequence."""

    s_values: tuple[float, ...]
    alpha_values: tuple[float, ...]
    residual: float

    def to_dict(self) -> dict:
        return {
            "s_values": list(self.s_values),
            "alpha_values": list(self.alpha_values),
            "residual": self.residual,
        }


@dataclass(frozen=True)
class AxisSpec:
    """Inclusive linspace: count points from start to stop."""

    start: float
    stop: float
    count: int

    def points(self) -> np.ndarray:
        return np.linspace(self.start, self.stop, self.count)

    def to_dict(self) -> dict:
        return {"start": self.start, "stop": self.stop, "count": self.count}


@dataclass(frozen=True, eq=False)
class FidelityGrid:
    """Gate fidelity over an error grid; rows follow f, columns epsilon."""

    target: Pulse
    family: str
    eps_axis: AxisSpec
    f_axis: AxisSpec
    values: np.ndarray

    def to_dict(self) -> dict:
        return {
            "family": self.family,
            "target": {"theta": self.target.theta, "phi": self.target.phi},
            "eps_axis": self.eps_axis.to_dict(),
            "f_axis": self.f_axis.to_dict(),
            "values": [[float(v) for v in row] for row in self.values],
        }


def _unit_ray(ray: tuple[float, float]) -> tuple[float, float]:
    d_eps, d_f = ray
    nrm = math.hypot(d_eps, d_f)
    if nrm == 0.0:
        raise ValueError("ray direction must be nonzero")
    return (d_eps / nrm, d_f / nrm)


def infidelity_ray(
    seq: PulseSequence, ray: tuple[float, float], t_values: list[float]
) -> list[float]:
    """1 - F between the erroneous sequence and its target at errors
    t * (d_eps, d_f) for each scale t, with the ray normalized to unit length."""
    d_eps, d_f = _unit_ray(ray)
    target = rotation(seq.target)
    out = []
    for t in t_values:
        if not 0.0 <= t <= 0.5:
            raise ValueError(f"ray scale {t!r} outside [0, 0.5]")
        err = ErrorPair(t * d_eps, t * d_f)
        out.append(1.0 - gate_fidelity(compose_with_errors(seq, err), target))
    return out


def fit_loglog_slope(t_values: list[float], values: list[float]) -> tuple[float, float]:
    """Least-squares slope of log(value) against log(t).

    Points at or below the double-precision infidelity floor are dropped; at
    least 4 points must survive. Returns (slope, max abs log-deviation from
    the fit line).
    """
    if len(t_values) != len(values):
        raise ValueError("t_values and values must have equal length")
    kept_t = []
    kept_v = []
    for t, v in zip(t_values, values):
        if v > INFIDELITY_FLOOR:
            kept_t.append(t)
            kept_v.append(v)
    if len(kept_t) < 4:
        raise ValueError("insufficient dynamic range")
    log_t = np.log(np.asarray(kept_t))
    log_v = np.log(np.asarray(kept_v))
    slope, intercept = np.polyfit(log_t, log_v, 1)
    residual = float(np.max(np.abs(log_v - (slope * log_t + intercept))))
    return float(slope), residual


def slope_report(
    seq: PulseSequence, ray: tuple[float, float], t_values: list[float]
) -> SlopeReport:
    """Run :func:`infidelity_ray` and fit its log-log slope."""
    unit = _unit_ray(ray)
    infidelities = infidelity_ray(seq, unit, t_values)
    slope, residual = fit_loglog_slope(t_values, infidelities)
    return SlopeReport(unit, tuple(t_values), tuple(infidelities), slope, residual)


def first_order_coefficient(seq: PulseSequence, which: str) -> Unitary2:
    """Derivative of the composed matrix along one error parameter at zero.

    Central differences with step FD_STEP plus one Richardson refinement
    (combining steps h and h/2), accurate enough to resolve coefficients at
    the 1e-8 level.
    """
    if which == "eps":
        def evaluate(x: float) -> Unitary2:
            return compose_with_errors(seq, ErrorPair(x, 0.0))
    elif which == "f":
        def evaluate(x: float) -> Unitary2:
            return compose_with_errors(seq, ErrorPair(0.0, x))
    else:
        raise ValueError(f"unknown error parameter {which!r}, expected 'eps' or 'f'")
    h = FD_STEP
    coarse = (evaluate(h) - evaluate(-h)) / (2.0 * h)
    fine = (evaluate(0.5 * h) - evaluate(-0.5 * h)) / h
    return (4.0 * fine - coarse) / 3.0


def _palindrome_half(seq: PulseSequence) -> list[Pulse]:
    pulses = seq.pulses
    if len(pulses) % 2 == 0 or pulses != tuple(reversed(pulses)):
        raise ValueError("sequence is not palindromic")
    return list(pulses[: (len(pulses) + 1) // 2])


def alpha_coefficient(seq: PulseSequence, i: int) -> float:
    """Weight of the i-th mirrored pulse pair in the first-order
    off-resonance term of a palindromic sequence (2k-1 pulses, pair indices
    1..k-1 counted from the outside; the central pulse enters with weight 1).

    alpha_i is the trace of the product of the inverses of pulses 1..i-1
    followed by pulses i+1 up the half-sequence to k and back down to 1; the
    trace of an SU(2) product is real. The assembly is validated against a
    brute-force derivative of the composed matrix in the test suite.
    """
    half = _palindrome_half(seq)
    k = len(half)
    if not 1 <= i <= k - 1:
        raise ValueError(f"pair index {i} outside 1..{k - 1}")
    rotations = [rotation(p) for p in half]
    v = SIGMA_0
    for j in range(i - 1):
        v = v @ rotations[j].conj().T
    for j in range(i, k):
        v = v @ rotations[j]
    for j in range(k - 2, -1, -1):
        v = v @ rotations[j]
    return float(np.trace(v).real)


def symmetric_ore_residual(seq: PulseSequence) -> OreResidualReport:
    """Evaluate s1 a1 + ... + s_{k-1} a_{k-1} + s_k for a palindromic
    sequence. Zero residual means the first-order off-resonance term of the
    composed sequence vanishes; the full derivative matrix equals
    -i * residual * sigma_z."""
    half = _palindrome_half(seq)
    k = len(half)
    s_values = [math.sin(0.5 * p.theta) for p in half]
    alpha_values = [alpha_coefficient(seq, i) for i in range(1, k)]
    residual = math.fsum(s * a for s, a in zip(s_values, alpha_values)) + s_values[-1]
    return OreResidualReport(tuple(s_values), tuple(alpha_values), residual)


def fidelity_grid(
    seq: PulseSequence,
    eps_axis: AxisSpec,
    f_axis: AxisSpec,
    workers: int = 1,
) -> FidelityGrid:
    """Gate fidelity of the erroneous sequence against its target over an
    inclusive (epsilon, f) grid.

    Rows may be computed by a worker pool; each row is an independent pure
    computation assembled in axis order, so the output is identical for any
    worker count.
    """
    if eps_axis.count < 2 or f_axis.count < 2:
        raise ValueError("grid axes need at least two points")
    eps_points = eps_axis.points()
    target = rotation(seq.target)

    def row(f: float) -> list[float]:
        return [
            gate_fidelity(compose_with_errors(seq, ErrorPair(float(e), f)), target)
            for e in eps_points
        ]

    f_points = [float(f) for f in f_axis.points()]
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(row, f_points))
    else:
        rows = [row(f) for f in f_points]
    return FidelityGrid(seq.target, seq.family, eps_axis, f_axis, np.array(rows))


def grid_to_csv(grid: FidelityGrid) -> str:
    """CSV with header epsilon,f,fidelity; f varies slowest. Floats carry 17
    significant digits so the values round-trip."""
    lines = ["epsilon,f,fidelity"]
    eps_points = grid.eps_axis.points()
    f_points = grid.f_axis.points()
    for i, f in enumerate(f_points):
        for j, e in enumerate(eps_points):
            lines.append(f"{e:.17g},{f:.17g},{grid.values[i, j]:.17g}")
    return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class TimeComparisonRow:
    theta: float
    scorbutus_time: float | None
    skinsc_time: float | None
    note: str = ""


def time_compare(theta_values: list[float], phi: float = 0.0) -> list[TimeComparisonRow]:
    """Total operation time of SCORBUTUS and SKinsC per target angle. The
    phase never changes a total; domain failures are annotated per row."""
    rows = []
    for theta in theta_values:
        theta = float(theta)
        notes = []
        scorbutus_time = None
        skinsc_time = None
        try:
            scorbutus_time = total_time(scorbutus(theta, phi))
        except ValueError as exc:
            notes.append(f"scorbutus: {exc}")
        try:
            skinsc_time = total_time(skinsc(theta, phi))
        except ValueError as exc:
            notes.append(f"skinsc: {exc}")
        rows.append(TimeComparisonRow(theta, scorbutus_time, skinsc_time, "; ".join(notes)))
    return rows


def time_compare_to_csv(rows: list[TimeComparisonRow]) -> str:
    lines = ["theta,L_scorbutus,L_skinsc,note"]
    for r in rows:
        sc = "nan" if r.scorbutus_time is None else repr(r.scorbutus_time)
        sk = "nan" if r.skinsc_time is None else repr(r.skinsc_time)
        note = '"%s"' % r.note.replace('"', '""') if r.note else ""
        lines.append(f"{r.theta!r},{sc},{sk},{note}")
    return "\n".join(lines) + "\n"


def time_compare_to_dict(rows: list[TimeComparisonRow]) -> dict:
    return {
        "rows": [
            {
                "theta": r.theta,
                "L_scorbutus": r.scorbutus_time,
                "L_skinsc": r.skinsc_time,
                "note": r.note,
            }
            for r in rows
        ]
    }
