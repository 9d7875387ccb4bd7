"""Fourier analysis of the magnetization model f(x) = <psi(x)|H_Z|psi(x)>.

The prepared state is sampled on a uniform x-window, the samples are
transformed with the FFT normalization c_k = (1/P) sum_i f_i e^{+2*pi*i*k*i/P},
and coefficient concentration at low harmonics is quantified by an
energy ratio.  Harmonics are integer indices of the window; the physical
frequency per index, 2*pi/(x_max - x_min), travels as metadata.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .anneal import _strang_batch, thread_count, trotter_anneal
from .hamiltonians import IsingParams, ScheduleParams, magnetization_diagonal

MIN_POINTS = 64

CONJ_SYMMETRY_ATOL = 1e-10
PARSEVAL_ATOL = 1e-8
RATIO_EPS = 1e-30

DEFAULT_WINDOW = (0.0, 2.0 * math.pi)
PHASE_WINDOW = (0.0, 4.0)
DEFAULT_POINTS = 4096


def _check_points(points: int) -> None:
    if points < MIN_POINTS or points & (points - 1):
        raise ValueError(
            f"points must be a power of two >= {MIN_POINTS}, got {points}"
        )


@dataclass(frozen=True)
class ModelSamples:
    """Model values on a uniform half-open window [x_min, x_max),
    together with the run parameters that produced them."""

    x_grid: np.ndarray
    values: np.ndarray
    n_qubits: int
    h: float
    t_total: float
    steps: int
    splitting: str

    def __post_init__(self):
        xs = np.asarray(self.x_grid, dtype=np.float64)
        vals = np.asarray(self.values, dtype=np.float64)
        if xs.ndim != 1 or xs.shape != vals.shape or xs.size < 2:
            raise ValueError("grid and values must be matching 1-d arrays")
        diffs = np.diff(xs)
        if not np.allclose(diffs, diffs[0], rtol=1e-12, atol=1e-12):
            raise ValueError("x grid must be uniform")
        if np.max(np.abs(vals)) > self.n_qubits + 1e-9:
            raise ValueError("model values exceed the magnetization bound")
        object.__setattr__(self, "x_grid", xs)
        object.__setattr__(self, "values", vals)

    @property
    def window(self) -> tuple:
        step = self.x_grid[1] - self.x_grid[0]
        return (float(self.x_grid[0]), float(self.x_grid[-1] + step))


@dataclass(frozen=True)
class CoefficientTable:
    """Fourier coefficients by integer harmonic k in [-P/2, P/2)."""

    harmonics: np.ndarray
    coefficients: np.ndarray
    window: tuple

    def __post_init__(self):
        ks = np.asarray(self.harmonics, dtype=np.int64)
        cs = np.asarray(self.coefficients, dtype=np.complex128)
        if ks.shape != cs.shape or ks.ndim != 1 or ks.size < 2:
            raise ValueError("harmonics and coefficients must be matching 1-d arrays")
        p = ks.size
        if np.any(ks != np.arange(-(p // 2), p - p // 2)):
            raise ValueError("harmonics must run contiguously from -P/2")
        object.__setattr__(self, "harmonics", ks)
        object.__setattr__(self, "coefficients", cs)

    @property
    def points(self) -> int:
        return self.harmonics.size

    @property
    def frequency_per_harmonic(self) -> float:
        lo, hi = self.window
        return 2.0 * math.pi / (hi - lo)


def sample_model(
    n: int,
    sched: ScheduleParams,
    window: tuple = DEFAULT_WINDOW,
    points: int = DEFAULT_POINTS,
    h: float = 0.2,
    periodic: bool = True,
    splitting: str = "strang_split",
) -> ModelSamples:
    """Magnetization expectation of the prepared state on a uniform
    half-open grid over the window."""
    _check_points(points)
    lo, hi = float(window[0]), float(window[1])
    if not hi > lo:
        raise ValueError(f"window must satisfy x_max > x_min, got {window}")
    xs = lo + (hi - lo) * np.arange(points) / points
    z_diag = magnetization_diagonal(n)

    if splitting == "strang_split":
        amps = _strang_batch(n, h, periodic, xs, sched, workers=thread_count())
        vals = (np.abs(amps) ** 2) @ z_diag
    elif splitting == "dense_exact":
        vals = np.array(
            [
                float(
                    np.dot(
                        trotter_anneal(
                            IsingParams(n, float(x), h, periodic), sched, splitting
                        ).probabilities(),
                        z_diag,
                    )
                )
                for x in xs
            ]
        )
    else:
        raise ValueError(f"unknown splitting {splitting!r}")
    return ModelSamples(xs, vals, n, h, sched.t_total, sched.steps, splitting)


def fft_coefficients(samples: ModelSamples) -> CoefficientTable:
    """Coefficient table with c_k = (1/P) sum_i f_i e^{+2*pi*i*k*i/P},
    centered so k runs from -P/2 to P/2 - 1.

    Conjugate symmetry (real input) and Parseval's identity are checked
    before the table is returned.
    """
    p = samples.values.size
    _check_points(p)
    coeffs = np.fft.fftshift(np.fft.ifft(samples.values))
    ks = np.arange(-(p // 2), p - p // 2)

    # k = -P/2 is its own alias and has no positive partner.
    paired = coeffs[1:] if p % 2 == 0 else coeffs
    sym_err = np.max(np.abs(paired - np.conj(paired[::-1])))
    if sym_err > CONJ_SYMMETRY_ATOL:
        raise ValueError(f"conjugate symmetry violated by {sym_err:g}")
    parseval_err = abs(
        float(np.sum(np.abs(coeffs) ** 2)) - float(np.mean(samples.values**2))
    )
    if parseval_err > PARSEVAL_ATOL:
        raise ValueError(f"Parseval identity violated by {parseval_err:g}")
    return CoefficientTable(ks, coeffs, samples.window)


def concentration_ratio(table: CoefficientTable, k_cut: int) -> float:
    """Spectral energy at harmonics |k| <= k_cut over the energy above
    the cut.  A spectrum with no energy above the cut reports +inf.
    """
    if not 0 < k_cut < table.points // 2:
        raise ValueError(
            f"k_cut must be in 1..{table.points // 2 - 1}, got {k_cut}"
        )
    energy = np.abs(table.coefficients) ** 2
    mask = np.abs(table.harmonics) <= k_cut
    low = float(np.sum(energy[mask]))
    high = float(np.sum(energy[~mask]))
    if high <= RATIO_EPS:
        return math.inf
    return low / (high + RATIO_EPS)


def coefficient_report(
    settings,
    n: int = 4,
    h: float = 0.2,
    points: int = DEFAULT_POINTS,
    windows: tuple = (DEFAULT_WINDOW, PHASE_WINDOW),
    splitting: str = "strang_split",
) -> list:
    """Coefficient rows for every (T, M) setting on every window.

    Each row is a dict with keys T, M, window, k, abs_c, re_c, im_c;
    window is the (x_min, x_max) tuple.
    """
    settings = [(float(t), int(m)) for t, m in settings]
    if not settings:
        raise ValueError("settings must be non-empty")
    rows = []
    for t_total, steps in settings:
        sched = ScheduleParams(t_total, steps)
        for window in windows:
            table = fft_coefficients(
                sample_model(n, sched, window, points, h, splitting=splitting)
            )
            for k, c in zip(table.harmonics, table.coefficients):
                rows.append(
                    {
                        "T": t_total,
                        "M": steps,
                        "window": table.window,
                        "k": int(k),
                        "abs_c": abs(c),
                        "re_c": c.real,
                        "im_c": c.imag,
                    }
                )
    return rows
