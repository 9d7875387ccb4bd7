"""Trotterized annealing feature map and fidelity diagnostics.

The map prepares |psi(x)> by evolving the uniform superposition under a
linear interpolation from the mixer -sum_j X_j to the Ising target H(x),
discretized into M steps of length dt = T/M.  Step m applies the mixer
factor exp(-i*dt*(1 - m*dt/T)*H0) followed by the target factor
exp(-i*(dt^2*m/T)*H(x)), with m = 1 acting first.

Two realizations of the target factor are available: a symmetric
diagonal/transverse/diagonal splitting that scales to larger registers,
and an exact dense exponential used as the error baseline.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .groundtruth import exact_ground_state, ite_ground_state
from .hamiltonians import (
    DENSE_MAX_QUBITS,
    IsingParams,
    ScheduleParams,
    coupling_diagonal,
    ising_dense,
    magnetization_diagonal,
)
from .statevec import StateVector, _rotate_all_qubits, inner

SPLITTINGS = ("strang_split", "dense_exact")

FIDELITY_SLACK = 1e-12


def thread_count() -> int:
    """Worker cap for x-grid sweeps, from GSFM_THREADS (default 1)."""
    raw = os.environ.get("GSFM_THREADS", "1")
    try:
        k = int(raw)
    except ValueError as exc:
        raise ValueError(f"GSFM_THREADS must be an integer, got {raw!r}") from exc
    if k < 1:
        raise ValueError(f"GSFM_THREADS must be >= 1, got {k}")
    return k


@dataclass(frozen=True)
class AnnealRun:
    """One annealing evolution: inputs plus the prepared state."""

    params: IsingParams
    schedule: ScheduleParams
    splitting: str
    final_state: StateVector

    def __post_init__(self):
        if self.splitting not in SPLITTINGS:
            raise ValueError(f"unknown splitting {self.splitting!r}")


@dataclass(frozen=True)
class FidelityScan:
    """Fidelity of the prepared state against a reference across an
    x-grid, under both the full and the probability-only metric."""

    xs: np.ndarray
    full_fidelity: np.ndarray
    approx_fidelity: np.ndarray
    t_total: float
    steps: int

    def __post_init__(self):
        for name in ("xs", "full_fidelity", "approx_fidelity"):
            arr = np.asarray(getattr(self, name), dtype=np.float64)
            object.__setattr__(self, name, arr)
        if not (
            self.xs.shape == self.full_fidelity.shape == self.approx_fidelity.shape
        ):
            raise ValueError("scan arrays must have matching shapes")
        f = self.full_fidelity
        if np.any(f < -FIDELITY_SLACK) or np.any(f > 1 + FIDELITY_SLACK):
            raise ValueError("full fidelity out of [0, 1]")
        if np.any(self.approx_fidelity > 1 + FIDELITY_SLACK):
            raise ValueError("approx fidelity above 1")


def _mixer_angles(sched: ScheduleParams) -> np.ndarray:
    """Per-step rotation angles realizing exp(-i*dt*(1-m*dt/T)*H0).

    H0 = -sum_j X_j, so the single-qubit rotation angle picks up a minus
    sign relative to the schedule weight.
    """
    m = np.arange(1, sched.steps + 1, dtype=np.float64)
    return -sched.dt * (1.0 - m * sched.dt / sched.t_total)


def _strang_batch(
    n: int,
    h: float,
    periodic: bool,
    xs: np.ndarray,
    sched: ScheduleParams,
    workers: int = 1,
) -> np.ndarray:
    """Evolve the uniform superposition for every x at once.

    Returns a (len(xs), 2**n) amplitude array.  Rows are independent, so
    the batch may be split across threads without changing any result.
    """
    xs = np.asarray(xs, dtype=np.float64)
    if workers > 1 and xs.size > 1:
        chunks = np.array_split(np.arange(xs.size), min(workers, xs.size))
        with ThreadPoolExecutor(max_workers=len(chunks)) as pool:
            parts = list(
                pool.map(
                    lambda idx: _strang_batch(n, h, periodic, xs[idx], sched),
                    chunks,
                )
            )
        return np.concatenate(parts, axis=0)

    diag = (
        coupling_diagonal(n, periodic)[np.newaxis, :]
        + xs[:, np.newaxis] * magnetization_diagonal(n)[np.newaxis, :]
    )
    amps = np.full((xs.size, 1 << n), 2.0 ** (-n / 2), dtype=np.complex128)
    for mix, a in zip(_mixer_angles(sched), sched.step_times):
        amps = _rotate_all_qubits(amps, n, mix)
        half = np.exp(-0.5j * a * diag)
        amps *= half
        amps = _rotate_all_qubits(amps, n, a * h)
        amps *= half
    return amps


def _dense_exact_single(params: IsingParams, sched: ScheduleParams) -> np.ndarray:
    """Evolve one x with the target factor applied exactly.

    H(x) is step-independent, so a single diagonalization serves every
    step's exponential.
    """
    if params.n_qubits > DENSE_MAX_QUBITS:
        raise ValueError(
            f"dense_exact limited to {DENSE_MAX_QUBITS} qubits, "
            f"got {params.n_qubits}"
        )
    n = params.n_qubits
    evals, evecs = np.linalg.eigh(ising_dense(params))
    basis_t = evecs.conj().T
    amps = np.full(1 << n, 2.0 ** (-n / 2), dtype=np.complex128)
    for mix, a in zip(_mixer_angles(sched), sched.step_times):
        amps = _rotate_all_qubits(amps[np.newaxis, :], n, mix)[0]
        amps = evecs @ (np.exp(-1j * a * evals) * (basis_t @ amps))
    return amps


def trotter_anneal(
    params: IsingParams,
    sched: ScheduleParams,
    splitting: str = "strang_split",
) -> StateVector:
    """Prepared state |psi(x; T, M)> for one parameter point."""
    if splitting == "strang_split":
        amps = _strang_batch(
            params.n_qubits,
            params.h,
            params.periodic,
            np.array([params.x]),
            sched,
        )[0]
    elif splitting == "dense_exact":
        amps = _dense_exact_single(params, sched)
    else:
        raise ValueError(f"unknown splitting {splitting!r}")
    return StateVector(params.n_qubits, amps)


def run_anneal(
    params: IsingParams,
    sched: ScheduleParams,
    splitting: str = "strang_split",
) -> AnnealRun:
    return AnnealRun(params, sched, splitting, trotter_anneal(params, sched, splitting))


def fidelity_full(a: StateVector, b: StateVector) -> float:
    """|<a|b>|^2."""
    return abs(inner(a, b)) ** 2


def fidelity_approx(a: StateVector, b: StateVector) -> float:
    """Probability-only overlap 1 - sum_j |p_j - q_j| / 2**N.

    The 2**N denominator is part of the metric's definition here; note
    it differs from the conventional total-variation normalization by a
    factor 2**(N-1).
    """
    if a.n_qubits != b.n_qubits:
        raise ValueError(
            f"dimension mismatch: {a.n_qubits} qubits vs {b.n_qubits} qubits"
        )
    dist = float(np.sum(np.abs(a.probabilities() - b.probabilities())))
    return 1.0 - dist / (1 << a.n_qubits)


def _reference_states(
    n: int, h: float, periodic: bool, xs: np.ndarray, reference: str
) -> list[StateVector]:
    if reference == "exact":
        return [
            exact_ground_state(ising_dense(IsingParams(n, float(x), h, periodic))).state
            for x in xs
        ]
    if reference == "ite":
        return [
            ite_ground_state(IsingParams(n, float(x), h, periodic)) for x in xs
        ]
    raise ValueError(f"unknown reference {reference!r}")


def fidelity_scan(
    n: int,
    sched: ScheduleParams,
    xs: np.ndarray,
    reference: str = "exact",
    h: float = 0.2,
    periodic: bool = True,
    splitting: str = "strang_split",
) -> FidelityScan:
    """Both fidelity metrics of the prepared state against a reference
    ground state, across an x-grid."""
    xs = np.asarray(xs, dtype=np.float64)
    if xs.ndim != 1 or xs.size == 0:
        raise ValueError("x grid must be a non-empty 1-d array")
    refs = _reference_states(n, h, periodic, xs, reference)

    if splitting == "strang_split":
        amps = _strang_batch(n, h, periodic, xs, sched, workers=thread_count())
        states = [StateVector(n, amps[i]) for i in range(xs.size)]
    elif splitting == "dense_exact":
        states = [
            trotter_anneal(IsingParams(n, float(x), h, periodic), sched, splitting)
            for x in xs
        ]
    else:
        raise ValueError(f"unknown splitting {splitting!r}")

    full = np.array([fidelity_full(s, r) for s, r in zip(states, refs)])
    approx = np.array([fidelity_approx(s, r) for s, r in zip(states, refs)])
    return FidelityScan(xs, full, approx, sched.t_total, sched.steps)


def parse_m_rule(rule: str):
    """Parse a step-count rule 'fixed:K' or 'prop:c' into a callable
    T -> M.  'prop' scales quadratically, M = round(c * T^2)."""
    kind, sep, arg = rule.partition(":")
    if not sep:
        raise ValueError(f"malformed step rule {rule!r}, expected kind:value")
    if kind == "fixed":
        m = int(arg)
        if m < 1:
            raise ValueError(f"fixed step count must be >= 1, got {m}")
        return lambda t: m
    if kind == "prop":
        c = float(arg)
        if not c > 0:
            raise ValueError(f"proportionality constant must be > 0, got {c}")
        return lambda t: max(1, round(c * t * t))
    raise ValueError(f"unknown step rule kind {kind!r}")


def infidelity_vs_T(
    params: IsingParams, t_list, m_rule: str, splitting: str = "strang_split"
) -> list[tuple[float, int, float, float]]:
    """Rows (T, M, 1-F, 1-F_approx) against the exact ground state at
    the fixed feature value in params."""
    t_list = [float(t) for t in t_list]
    if not t_list:
        raise ValueError("t_list must be non-empty")
    steps_for = parse_m_rule(m_rule)
    ref = exact_ground_state(ising_dense(params)).state
    rows = []
    for t in t_list:
        sched = ScheduleParams(t, steps_for(t))
        state = trotter_anneal(params, sched, splitting)
        rows.append(
            (
                t,
                sched.steps,
                1.0 - fidelity_full(state, ref),
                1.0 - fidelity_approx(state, ref),
            )
        )
    return rows


def basis_functions(
    n: int,
    sched: ScheduleParams,
    xs: np.ndarray,
    h: float = 0.2,
    periodic: bool = True,
) -> np.ndarray:
    """Basis-state occupations phi_j(x) = |<j|psi(x)>|^2 as a
    (2**n, len(xs)) matrix; each column sums to 1."""
    xs = np.asarray(xs, dtype=np.float64)
    if xs.ndim != 1 or xs.size == 0:
        raise ValueError("x grid must be a non-empty 1-d array")
    amps = _strang_batch(n, h, periodic, xs, sched, workers=thread_count())
    return (np.abs(amps) ** 2).T
