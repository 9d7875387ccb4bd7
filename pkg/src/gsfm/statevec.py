"""Dense statevector engine for small qubit registers.

A state is a complex amplitude array over the 2**n computational basis
states.  Basis index j encodes qubit q as bit q of j, with qubit 0 the
least significant bit.  All operations are pure: they return fresh states
and never renormalize behind the caller's back -- unitary operations must
preserve the norm on their own, and a violated norm is treated as a bug,
not something to patch over.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

# Dense amplitudes become unwieldy past this point; callers needing more
# qubits are outside the scope of this engine.
MAX_QUBITS = 14

NORM_ATOL = 1e-10


@dataclass
class StateVector:
    """Normalized pure state over 2**n_qubits computational basis states."""

    n_qubits: int
    amplitudes: np.ndarray

    def __post_init__(self):
        if not 1 <= self.n_qubits <= MAX_QUBITS:
            raise ValueError(
                f"n_qubits must be in 1..{MAX_QUBITS}, got {self.n_qubits}"
            )
        amps = np.asarray(self.amplitudes, dtype=np.complex128)
        if amps.shape != (1 << self.n_qubits,):
            raise ValueError(
                f"expected {1 << self.n_qubits} amplitudes for "
                f"{self.n_qubits} qubits, got shape {amps.shape}"
            )
        norm_sq = float(np.sum(np.abs(amps) ** 2))
        if abs(norm_sq - 1.0) > NORM_ATOL:
            raise ValueError(f"state is not normalized: |psi|^2 = {norm_sq!r}")
        self.amplitudes = amps

    @property
    def dim(self) -> int:
        return 1 << self.n_qubits

    def probabilities(self) -> np.ndarray:
        """Born-rule occupation of each computational basis state."""
        return np.abs(self.amplitudes) ** 2


@dataclass
class DiagonalOperator:
    """Operator that is diagonal in the computational basis.

    ``values[j]`` is the eigenvalue on basis state ``|j>``.
    """

    n_qubits: int
    values: np.ndarray

    def __post_init__(self):
        if not 1 <= self.n_qubits <= MAX_QUBITS:
            raise ValueError(
                f"n_qubits must be in 1..{MAX_QUBITS}, got {self.n_qubits}"
            )
        vals = np.asarray(self.values, dtype=np.float64)
        if vals.shape != (1 << self.n_qubits,):
            raise ValueError(
                f"expected {1 << self.n_qubits} diagonal values for "
                f"{self.n_qubits} qubits, got shape {vals.shape}"
            )
        if not np.all(np.isfinite(vals)):
            raise ValueError("diagonal values must be finite")
        self.values = vals


def _check_same_register(n_a: int, n_b: int) -> None:
    if n_a != n_b:
        raise ValueError(f"dimension mismatch: {n_a} qubits vs {n_b} qubits")


def plus_state(n: int) -> StateVector:
    """Uniform superposition of all basis states (every qubit in |+>)."""
    if not 1 <= n <= MAX_QUBITS:
        raise ValueError(f"n must be in 1..{MAX_QUBITS}, got {n}")
    amp = 2.0 ** (-n / 2)
    return StateVector(n, np.full(1 << n, amp, dtype=np.complex128))


def basis_state(n: int, index: int) -> StateVector:
    """Computational basis state |index> on an n-qubit register."""
    if not 1 <= n <= MAX_QUBITS:
        raise ValueError(f"n must be in 1..{MAX_QUBITS}, got {n}")
    if not 0 <= index < (1 << n):
        raise ValueError(f"basis index {index} out of range for {n} qubits")
    amps = np.zeros(1 << n, dtype=np.complex128)
    amps[index] = 1.0
    return StateVector(n, amps)


def apply_diagonal_phase(
    state: StateVector, d: DiagonalOperator, angle: float
) -> StateVector:
    """Multiply each amplitude by exp(-i * angle * d_j).

    This is the exact propagator of a diagonal generator; the norm is
    preserved because every factor has unit modulus.
    """
    _check_same_register(state.n_qubits, d.n_qubits)
    phases = np.exp(-1j * angle * d.values)
    return StateVector(state.n_qubits, state.amplitudes * phases)


def apply_rx_all(state: StateVector, angle: float) -> StateVector:
    """Rotate every qubit by the 2x2 unitary [[c, -is], [-is, c]].

    With c = cos(angle) and s = sin(angle) this is exp(-i*angle*X) applied
    to each qubit, i.e. the exact exponential of angle times the uniform
    transverse field (the single-qubit terms commute).
    """
    amps = _rotate_all_qubits(state.amplitudes[np.newaxis, :], state.n_qubits, angle)
    return StateVector(state.n_qubits, amps[0])


def inner(a: StateVector, b: StateVector) -> complex:
    """Inner product <a|b> (conjugate-linear in the first argument)."""
    _check_same_register(a.n_qubits, b.n_qubits)
    return complex(np.vdot(a.amplitudes, b.amplitudes))


def expect_diagonal(state: StateVector, d: DiagonalOperator) -> float:
    """Expectation value of a diagonal operator, sum_j d_j |a_j|^2."""
    _check_same_register(state.n_qubits, d.n_qubits)
    return float(np.dot(d.values, state.probabilities()))


def _apply_uniform_2x2(
    amps: np.ndarray,
    n_qubits: int,
    m00: complex,
    m01: complex,
    m10: complex,
    m11: complex,
) -> np.ndarray:
    """Apply one 2x2 matrix to every qubit of a (batch, 2**n) array.

    Internal kernel shared by the real-time rotation and the
    imaginary-time transverse factor; returns a new array.
    """
    batch, dim = amps.shape
    out = amps
    for q in range(n_qubits):
        post = 1 << q
        pre = dim >> (q + 1)
        v = out.reshape(batch, pre, 2, post)
        a0 = v[:, :, 0, :]
        a1 = v[:, :, 1, :]
        nxt = np.empty_like(v)
        nxt[:, :, 0, :] = m00 * a0 + m01 * a1
        nxt[:, :, 1, :] = m10 * a0 + m11 * a1
        out = nxt.reshape(batch, dim)
    return out


def _rotate_all_qubits(amps: np.ndarray, n_qubits: int, angle: float) -> np.ndarray:
    """exp(-i*angle*X) on every qubit of a (batch, 2**n) array."""
    if angle == 0.0:
        return amps.copy()
    c = math.cos(angle)
    s = math.sin(angle)
    return _apply_uniform_2x2(amps, n_qubits, c, -1j * s, -1j * s, c)


def _damp_all_qubits(amps: np.ndarray, n_qubits: int, a: float) -> np.ndarray:
    """exp(-a*X) on every qubit of a (batch, 2**n) array (imaginary time)."""
    if a == 0.0:
        return amps.copy()
    ch = math.cosh(a)
    sh = math.sinh(a)
    return _apply_uniform_2x2(amps, n_qubits, ch, -sh, -sh, ch)
