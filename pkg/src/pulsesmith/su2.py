"""Exact SU(2) arithmetic for one-qubit pulse simulation.

Rotations about axes in the xy plane, their error-deformed counterparts,
products over pulse sequences, and the fidelity/distance metrics used to
compare them. Matrices are plain 2x2 complex numpy arrays.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

Unitary2 = np.ndarray
"""A 2x2 complex matrix; everything below produces and consumes these."""

TWO_PI = 2.0 * math.pi

SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)
SIGMA_0 = np.eye(2, dtype=complex)

UNITARITY_TOL = 1e-10


def normalize_phase(phi: float) -> float:
    """Reduce a phase to [0, 2*pi). Idempotent, also at the wrap boundary
    (tiny negative inputs can round onto 2*pi itself)."""
    p = phi % TWO_PI
    if p >= TWO_PI:
        p -= TWO_PI
    return p


@dataclass(frozen=True)
class Pulse:
    """One elementary rotation: angle ``theta`` about the in-plane axis
    (cos phi, sin phi, 0). The phase is stored normalized to [0, 2*pi)."""

    theta: float
    phi: float

    def __post_init__(self):
        object.__setattr__(self, "phi", normalize_phase(self.phi))

    def axis(self) -> tuple[float, float, float]:
        return (math.cos(self.phi), math.sin(self.phi), 0.0)


@dataclass(frozen=True)
class ErrorPair:
    """Dimensionless systematic error magnitudes.

    ``epsilon`` scales the rotation angle (pulse length error); ``f`` tilts
    the rotation axis toward z (off-resonance error).
    """

    epsilon: float
    f: float


NO_ERROR = ErrorPair(0.0, 0.0)


def _axis_angle(half_angle: float, mx: float, my: float, mz: float) -> Unitary2:
    # cos(a) I - i sin(a) m.sigma for a unit axis m; shared by the exact and
    # error-free paths so that zero error reproduces the same bits.
    c = math.cos(half_angle)
    s = math.sin(half_angle)
    return np.array(
        [
            [c - 1j * s * mz, -1j * s * (mx - 1j * my)],
            [-1j * s * (mx + 1j * my), c + 1j * s * mz],
        ]
    )


def rotation(pulse: Pulse) -> Unitary2:
    """Ideal rotation cos(theta/2) I - i sin(theta/2) (cos phi sx + sin phi sy)."""
    return _axis_angle(0.5 * pulse.theta, math.cos(pulse.phi), math.sin(pulse.phi), 0.0)


def rotation_with_error(pulse: Pulse, err: ErrorPair) -> Unitary2:
    """Deformed rotation exp(-i theta (1+eps) (n_phi . sigma/2 + f sigma_z/2)).

    Evaluated in closed form: the generator axis n_phi + f z has length
    sqrt(1 + f^2), so this is a rotation by theta (1+eps) sqrt(1+f^2) about
    the normalized tilted axis. Reduces exactly to :func:`rotation` at zero
    error.
    """
    nx, ny = math.cos(pulse.phi), math.sin(pulse.phi)
    nrm = math.sqrt(1.0 + err.f * err.f)
    angle = pulse.theta * (1.0 + err.epsilon) * nrm
    return _axis_angle(0.5 * angle, nx / nrm, ny / nrm, err.f / nrm)


def first_order_expansion(pulse: Pulse, err: ErrorPair) -> Unitary2:
    """Series for the deformed rotation truncated after the linear error terms:

        (theta)_phi - i eps (theta n_phi . sigma/2) (theta)_phi
                    - i f sin(theta/2) sigma_z

    Not unitary in general; kept as a cross-check oracle for
    :func:`rotation_with_error`, never as a production path.
    """
    ideal = rotation(pulse)
    nx, ny = math.cos(pulse.phi), math.sin(pulse.phi)
    generator = 0.5 * pulse.theta * (nx * SIGMA_X + ny * SIGMA_Y)
    return (
        ideal
        - 1j * err.epsilon * (generator @ ideal)
        - 1j * err.f * math.sin(0.5 * pulse.theta) * SIGMA_Z
    )


def compose(matrices: list[Unitary2]) -> Unitary2:
    """Product of unitaries given in application order (index 0 acts first),
    i.e. U_k ... U_1 as a matrix product."""
    if len(matrices) == 0:
        raise ValueError("empty sequence")
    acc = matrices[0]
    for u in matrices[1:]:
        acc = u @ acc
    return acc


def unitarity_defect(U: Unitary2) -> float:
    """Frobenius norm of U†U - I."""
    return float(np.linalg.norm(U.conj().T @ U - SIGMA_0))


def gate_fidelity(U: Unitary2, V: Unitary2) -> float:
    """|tr(U† V)| / 2, clamped to [0, 1].

    Equals 1 exactly when the two gates agree up to a global phase, which is
    the right notion of equality here: composed sequences can reproduce their
    target only up to an overall sign.
    """
    if unitarity_defect(U) > UNITARITY_TOL or unitarity_defect(V) > UNITARITY_TOL:
        raise ValueError("non-unitary operand")
    return min(1.0, abs(complex(np.trace(U.conj().T @ V))) / 2.0)


def frobenius_distance(U: Unitary2, V: Unitary2) -> float:
    """Entrywise distance sqrt(sum |u_ij - v_ij|^2)."""
    return float(np.linalg.norm(U - V))


def matrix_to_dict(U: Unitary2) -> dict:
    """Row-major split into real and imaginary parts for JSON output."""
    return {
        "re": [[float(U[i, j].real) for j in range(2)] for i in range(2)],
        "im": [[float(U[i, j].imag) for j in range(2)] for i in range(2)],
    }


def matrix_from_dict(data: dict) -> Unitary2:
    re = np.asarray(data["re"], dtype=float)
    im = np.asarray(data["im"], dtype=float)
    if re.shape != (2, 2) or im.shape != (2, 2):
        raise ValueError("matrix payload must be 2x2")
    return re + 1j * im
