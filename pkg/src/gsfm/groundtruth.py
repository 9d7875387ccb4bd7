"""Reference ground states for validating approximate preparation.

Two independent routes: exact diagonalization of the dense Hamiltonian,
and imaginary-time evolution of the uniform superposition.  Both fix the
global phase the same way so states can be compared amplitude by
amplitude, not just through fidelities.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .hamiltonians import (
    DENSE_MAX_QUBITS,
    IsingParams,
    ising_diagonal,
    ising_dense,
    anneal_hamiltonian,
    magnetization_diagonal,
)
from .statevec import (
    DiagonalOperator,
    StateVector,
    _damp_all_qubits,
    expect_diagonal,
    plus_state,
)

HERMITICITY_ATOL = 1e-9


@dataclass(frozen=True)
class GroundStateResult:
    """Ground state together with its energy and the gap to the first
    excited level."""

    state: StateVector
    energy: float
    gap: float


def _fix_phase(amps: np.ndarray) -> np.ndarray:
    """Rotate the global phase so the largest-magnitude amplitude is real
    and positive.

    The pivot entry is pinned to its absolute value exactly, so applying
    the fix twice is a bitwise no-op.
    """
    idx = int(np.argmax(np.abs(amps)))
    pivot = amps[idx]
    mag = abs(pivot)
    if mag == 0.0:
        raise ValueError("cannot fix phase of the zero vector")
    out = amps * (mag / pivot)
    out[idx] = mag
    return out


def exact_ground_state(hamiltonian: np.ndarray) -> GroundStateResult:
    """Ground state of a dense Hermitian matrix by full diagonalization.

    Limited to 2**10 dimensions; raises if the matrix is visibly
    non-Hermitian.
    """
    mat = np.asarray(hamiltonian)
    if mat.ndim != 2 or mat.shape[0] != mat.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {mat.shape}")
    dim = mat.shape[0]
    if dim < 2 or (dim & (dim - 1)) != 0:
        raise ValueError(f"dimension {dim} is not a power of two")
    n = dim.bit_length() - 1
    if n > DENSE_MAX_QUBITS:
        raise ValueError(f"dimension {dim} exceeds 2**{DENSE_MAX_QUBITS}")
    if np.max(np.abs(mat - mat.conj().T)) > HERMITICITY_ATOL:
        raise ValueError("matrix is not Hermitian")
    evals, evecs = np.linalg.eigh(mat)
    amps = _fix_phase(evecs[:, 0].astype(np.complex128))
    amps = amps / np.linalg.norm(amps)
    state = StateVector(n, amps)
    return GroundStateResult(state, float(evals[0]), float(evals[1] - evals[0]))


def ite_ground_state(
    params: IsingParams, tau: float = 20.0, dtau: float = 0.01
) -> StateVector:
    """Ground state via imaginary-time evolution exp(-tau * H(x)) of the
    uniform superposition, renormalized after every step.

    Each step splits exp(-dtau * H) symmetrically: half the diagonal
    factor, the transverse factor, half the diagonal factor.  The
    symmetric form keeps the splitting error quadratic in dtau, which
    the reference-quality bound on this oracle requires; a plain
    diagonal-transverse product falls short at dtau = 0.01.
    tau = 0 returns the initial superposition unchanged.
    """
    if tau < 0:
        raise ValueError(f"tau must be >= 0, got {tau}")
    if not dtau > 0:
        raise ValueError(f"dtau must be positive, got {dtau}")
    n = params.n_qubits
    start = plus_state(n)
    if tau == 0.0:
        return start

    n_steps = max(1, round(tau / dtau))
    step = tau / n_steps
    diag = ising_diagonal(params).values
    # exp(-a*D) can underflow to an all-zero vector for extreme fields;
    # shifting the diagonal by its minimum leaves the renormalized state
    # unchanged and keeps the factors in range.
    half = np.exp(-0.5 * step * (diag - diag.min()))

    amps = start.amplitudes[np.newaxis, :].copy()
    for _ in range(n_steps):
        amps *= half
        amps = _damp_all_qubits(amps, n, step * params.h)
        amps *= half
        norm = float(np.linalg.norm(amps))
        if norm == 0.0:
            raise ValueError("imaginary-time state underflowed to zero")
        amps /= norm
    return StateVector(n, _fix_phase(amps[0]))


def min_anneal_gap(params: IsingParams, resolution: int = 201) -> float:
    """Smallest spectral gap of the interpolated Hamiltonian along the
    schedule, scanned on a uniform grid of s in [0, 1]."""
    if resolution < 2:
        raise ValueError(f"resolution must be >= 2, got {resolution}")
    gaps = [
        exact_ground_state(anneal_hamiltonian(params, s)).gap
        for s in np.linspace(0.0, 1.0, resolution)
    ]
    return min(gaps)


def magnetization_curve(
    n: int, xs: np.ndarray, h: float = 0.2, periodic: bool = True
) -> np.ndarray:
    """Per-site ground-state magnetization |<sum_j Z_j>| / n over a grid
    of longitudinal fields.  Returns an array of (x, value) rows."""
    xs = np.asarray(xs, dtype=np.float64)
    if xs.ndim != 1 or xs.size == 0:
        raise ValueError("xs must be a non-empty 1-d array")
    mag = DiagonalOperator(n, magnetization_diagonal(n))
    rows = np.empty((xs.size, 2), dtype=np.float64)
    for i, x in enumerate(xs):
        params = IsingParams(n, float(x), h=h, periodic=periodic)
        ground = exact_ground_state(ising_dense(params)).state
        rows[i] = (x, abs(expect_diagonal(ground, mag)) / n)
    return rows
