"""Ising-chain Hamiltonians and annealing schedule parameters.

The model is an antiferromagnetic transverse-field Ising chain with a
longitudinal field x,

    H(x) = sum_j Z_j Z_{j+1} + x * sum_j Z_j + h * sum_j X_j,

with unit ZZ coupling and, by default, periodic boundary conditions
(site N identified with site 1).  On a periodic two-site ring both
directed bonds land on the same pair, so the ZZ term counts that bond
twice; this is kept as-is rather than special-cased.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .statevec import MAX_QUBITS, DiagonalOperator

# Dense 2**n x 2**n matrices are only built for small registers.
DENSE_MAX_QUBITS = 10


@dataclass(frozen=True)
class IsingParams:
    """Parameters of the Ising chain H(x).

    ``x`` is the longitudinal field (the feature being encoded), ``h``
    the transverse field.  The ZZ coupling is fixed at +1
    (antiferromagnetic).
    """

    n_qubits: int
    x: float
    h: float = 0.2
    periodic: bool = True

    def __post_init__(self):
        if not 1 <= self.n_qubits <= MAX_QUBITS:
            raise ValueError(
                f"n_qubits must be in 1..{MAX_QUBITS}, got {self.n_qubits}"
            )
        if self.periodic and self.n_qubits < 2:
            raise ValueError("periodic chain needs at least 2 sites")
        if not np.isfinite(self.x) or not np.isfinite(self.h):
            raise ValueError("fields must be finite")


@dataclass(frozen=True)
class ScheduleParams:
    """Linear annealing schedule: total time t_total split into steps."""

    t_total: float
    steps: int

    def __post_init__(self):
        if not self.t_total > 0:
            raise ValueError(f"t_total must be positive, got {self.t_total}")
        if self.steps < 1:
            raise ValueError(f"steps must be >= 1, got {self.steps}")

    @property
    def dt(self) -> float:
        return self.t_total / self.steps

    @property
    def step_times(self) -> np.ndarray:
        """Per-step evolution times t_m = dt^2 * m / t_total, m = 1..steps.

        These sum to t_total * (steps + 1) / (2 * steps), i.e. half the
        total time in the large-step limit, reflecting the linear ramp of
        the target Hamiltonian's weight.
        """
        m = np.arange(1, self.steps + 1, dtype=np.float64)
        return (self.dt**2 / self.t_total) * m


def _spin_z(n: int) -> np.ndarray:
    """Z eigenvalue (+1 for bit 0, -1 for bit 1) of each qubit at each
    basis index, shaped (n, 2**n)."""
    idx = np.arange(1 << n, dtype=np.uint32)
    bits = (idx[np.newaxis, :] >> np.arange(n)[:, np.newaxis]) & 1
    return 1.0 - 2.0 * bits


def coupling_diagonal(n: int, periodic: bool = True) -> np.ndarray:
    """Diagonal of sum_j Z_j Z_{j+1} over basis indices.

    Periodic chains include the wrap-around bond; the two-site ring keeps
    both directed bonds, giving the pair weight 2.
    """
    if not 1 <= n <= MAX_QUBITS:
        raise ValueError(f"n must be in 1..{MAX_QUBITS}, got {n}")
    z = _spin_z(n)
    if periodic:
        if n < 2:
            raise ValueError("periodic chain needs at least 2 sites")
        bonds = [(j, (j + 1) % n) for j in range(n)]
    else:
        bonds = [(j, j + 1) for j in range(n - 1)]
    out = np.zeros(1 << n, dtype=np.float64)
    for a, b in bonds:
        out += z[a] * z[b]
    return out


def magnetization_diagonal(n: int) -> np.ndarray:
    """Diagonal of sum_j Z_j over basis indices (n minus twice the
    number of set bits)."""
    if not 1 <= n <= MAX_QUBITS:
        raise ValueError(f"n must be in 1..{MAX_QUBITS}, got {n}")
    return np.sum(_spin_z(n), axis=0)


def ising_diagonal(params: IsingParams) -> DiagonalOperator:
    """Diagonal part of H(x): the ZZ coupling plus x times the
    longitudinal field.  The transverse term is excluded."""
    vals = coupling_diagonal(params.n_qubits, params.periodic)
    vals = vals + params.x * magnetization_diagonal(params.n_qubits)
    return DiagonalOperator(params.n_qubits, vals)


def transverse_dense(n: int) -> np.ndarray:
    """Dense matrix of sum_j X_j."""
    if not 1 <= n <= DENSE_MAX_QUBITS:
        raise ValueError(f"n must be in 1..{DENSE_MAX_QUBITS}, got {n}")
    dim = 1 << n
    mat = np.zeros((dim, dim), dtype=np.float64)
    rows = np.arange(dim)
    for q in range(n):
        mat[rows, rows ^ (1 << q)] += 1.0
    return mat


def ising_dense(params: IsingParams) -> np.ndarray:
    """Dense 2**n x 2**n matrix of the full H(x), transverse term
    included."""
    if params.n_qubits > DENSE_MAX_QUBITS:
        raise ValueError(
            f"dense form limited to {DENSE_MAX_QUBITS} qubits, "
            f"got {params.n_qubits}"
        )
    diag = ising_diagonal(params).values
    mat = np.diag(diag).astype(np.float64)
    mat += params.h * transverse_dense(params.n_qubits)
    return mat


def anneal_hamiltonian(params: IsingParams, s: float) -> np.ndarray:
    """Dense interpolated Hamiltonian (1 - s) * H0 + s * H(x) at
    schedule fraction s in [0, 1], where H0 = -sum_j X_j (so the uniform
    superposition is its ground state)."""
    if not 0.0 <= s <= 1.0:
        raise ValueError(f"s must be in [0, 1], got {s}")
    h0 = -transverse_dense(params.n_qubits)
    return (1.0 - s) * h0 + s * ising_dense(params)


def tower_generator(n: int) -> DiagonalOperator:
    """Diagonal generator sum_j j * Z_j with site-indexed weights 1..n.

    Its spectrum forms an arithmetic tower whose distinct eigenvalue
    count grows quadratically while degeneracies thin out, in contrast
    to the binomially degenerate uniform-weight magnetization.
    """
    if not 1 <= n <= MAX_QUBITS:
        raise ValueError(f"n must be in 1..{MAX_QUBITS}, got {n}")
    z = _spin_z(n)
    weights = np.arange(1, n + 1, dtype=np.float64)
    return DiagonalOperator(n, weights @ z)
