"""Exact frequency-spectrum combinatorics of the annealing feature map.

A diagonal generator with integer eigenvalues, applied for step-weighted
times t_m = m * dt^2 / T, produces model frequencies

    omega = sum_{m=1..M} m * lambda_{l_m}

in integer units of dt^2/T, one term per step's eigenvalue choice.  The
mode histogram counts choice sequences per frequency; the gap histogram
counts frequency differences.  Counts are exact arbitrary-precision
integers: weighted totals reach (2**N)**M.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

# Refuse convolutions whose support would exceed this many bins per side.
MAX_DEGREE_BINS = 1_000_000

# Above this dense support length, autocorrelation switches from the
# direct quadratic loop to packed big-integer multiplication.
_DIRECT_CORR_MAX = 1024


@dataclass(frozen=True)
class EigenvalueSet:
    """Unique integer eigenvalues of a diagonal generator with the
    dimensions of their eigenspaces."""

    values: tuple
    multiplicities: tuple

    def __post_init__(self):
        vals = tuple(int(v) for v in self.values)
        mults = tuple(int(d) for d in self.multiplicities)
        if len(vals) != len(mults) or not vals:
            raise ValueError("values and multiplicities must align and be non-empty")
        if any(b <= a for a, b in zip(vals, vals[1:])):
            raise ValueError("values must be strictly ascending")
        if any(d < 1 for d in mults):
            raise ValueError("multiplicities must be positive")
        total = sum(mults)
        if total & (total - 1):
            raise ValueError(f"multiplicities must sum to a power of two, got {total}")
        object.__setattr__(self, "values", vals)
        object.__setattr__(self, "multiplicities", mults)

    @property
    def n_qubits(self) -> int:
        return sum(self.multiplicities).bit_length() - 1


@dataclass(frozen=True)
class SpectrumHistogram:
    """Exact counts per integer frequency (unit dt^2/T, i.e. T/M**2;
    conversion to physical frequency is left to presentation)."""

    counts: dict
    steps: int
    weighted: bool = False

    def __post_init__(self):
        if self.steps < 1:
            raise ValueError(f"steps must be >= 1, got {self.steps}")
        if not self.counts:
            raise ValueError("histogram must be non-empty")
        clean = {}
        for freq, count in self.counts.items():
            f = int(freq)
            c = int(count)
            if c <= 0:
                raise ValueError(f"count at frequency {f} must be positive, got {c}")
            clean[f] = c
        for f, c in clean.items():
            if clean.get(-f) != c:
                raise ValueError(f"counts not symmetric at frequency {f}")
        object.__setattr__(self, "counts", clean)

    @property
    def degree(self) -> int:
        """Largest frequency carrying a nonzero count."""
        return max(abs(f) for f in self.counts)

    @property
    def width(self) -> float:
        """Half the number of nonzero bins beyond the center,
        (|support| - 1) / 2."""
        return (len(self.counts) - 1) / 2

    @property
    def total(self) -> int:
        return sum(self.counts.values())


def ising_eigenvalue_set(n: int) -> EigenvalueSet:
    """Spectrum of the uniform magnetization sum_j Z_j: eigenvalues
    -N, -N+2, ..., N with binomial eigenspace dimensions."""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    values = [-n + 2 * k for k in range(n + 1)]
    mults = [math.comb(n, k) for k in range(n + 1)]
    return EigenvalueSet(tuple(values), tuple(mults))


def tower_eigenvalue_set(n: int) -> EigenvalueSet:
    """Spectrum of the site-weighted magnetization sum_j j*Z_j, by
    subset-sum convolution over the sign choices of each weight."""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    counts = {0: 1}
    for j in range(1, n + 1):
        nxt = {}
        for s, c in counts.items():
            for t in (s + j, s - j):
                nxt[t] = nxt.get(t, 0) + c
        counts = nxt
    values = sorted(counts)
    return EigenvalueSet(tuple(values), tuple(counts[v] for v in values))


def mode_spectrum(
    ev: EigenvalueSet, steps: int, weighted: bool = False
) -> SpectrumHistogram:
    """Histogram of omega = sum_m m*lambda_{l_m} over all eigenvalue
    choice sequences, by iterated convolution with the step-m polynomial
    sum_l w_l z^(m*lambda_l)."""
    if steps < 1:
        raise ValueError(f"steps must be >= 1, got {steps}")
    lam_max = max(abs(v) for v in ev.values)
    if lam_max * steps * (steps + 1) // 2 > MAX_DEGREE_BINS:
        raise ValueError(
            f"spectrum support exceeds {MAX_DEGREE_BINS} bins per side"
        )
    weights = ev.multiplicities if weighted else (1,) * len(ev.values)
    counts = {0: 1}
    for m in range(1, steps + 1):
        nxt = {}
        for freq, count in counts.items():
            for lam, w in zip(ev.values, weights):
                key = freq + m * lam
                nxt[key] = nxt.get(key, 0) + count * w
        counts = nxt
    return SpectrumHistogram(counts, steps, weighted)


def _correlate_direct(dense: list) -> list:
    """Autocorrelation of an exact-integer sequence, quadratic loop.

    Returns length 2*len - 1, lag g at index g + len - 1.
    """
    length = len(dense)
    out = [0] * (2 * length - 1)
    for i, ci in enumerate(dense):
        if ci == 0:
            continue
        for j, cj in enumerate(dense):
            if cj:
                out[i - j + length - 1] += ci * cj
    return out


def _correlate_packed(dense: list) -> list:
    """Autocorrelation via one big-integer product.

    The sequence is packed into fixed-width byte slots of a single
    integer; multiplying by its reversal makes each slot of the product
    one correlation lag.  Slot width is sized so no lag can overflow
    into its neighbor (every lag is at most total**2).
    """
    length = len(dense)
    total = sum(dense)
    slot_bytes = (2 * total.bit_length() + 2 + 7) // 8
    slot_bits = 8 * slot_bytes

    packed = 0
    for i, c in enumerate(dense):
        packed |= c << (slot_bits * i)
    reverse = 0
    for i, c in enumerate(reversed(dense)):
        reverse |= c << (slot_bits * i)

    product = packed * reverse
    n_slots = 2 * length - 1
    raw = product.to_bytes(n_slots * slot_bytes, "little")
    return [
        int.from_bytes(raw[k * slot_bytes : (k + 1) * slot_bytes], "little")
        for k in range(n_slots)
    ]


def gap_spectrum(mode: SpectrumHistogram) -> SpectrumHistogram:
    """Histogram of all pairwise frequency differences, weighted by the
    product of the mode counts: counts[g] = sum_f c[f] * c[f-g]."""
    lo = min(mode.counts)
    hi = max(mode.counts)
    dense = [mode.counts.get(f, 0) for f in range(lo, hi + 1)]
    if len(dense) <= _DIRECT_CORR_MAX:
        corr = _correlate_direct(dense)
    else:
        corr = _correlate_packed(dense)
    offset = len(dense) - 1
    counts = {g - offset: c for g, c in enumerate(corr) if c}
    return SpectrumHistogram(counts, mode.steps, mode.weighted)


def tower_spectrum(n: int):
    """Eigenvalue set, mode histogram, and gap histogram of the
    site-weighted rotation map.

    The map applies the generator once, so the mode spectrum is the
    eigenvalue support itself, one count per distinct frequency (flat);
    the gap counts then decay linearly from zero frequency.
    """
    ev = tower_eigenvalue_set(n)
    mode = SpectrumHistogram({v: 1 for v in ev.values}, 1, False)
    return ev, mode, gap_spectrum(mode)


GAP_MODELS = ("poly", "exp")


def degree_scaling(n_list, gap_model: str, c: float = 1.0) -> list:
    """Rows (N, rotation degree, annealing degree) comparing the
    site-weighted rotation map against ground-state preparation whose
    runtime is set by the closing gap.

    The annealing degree is max(eigenvalue) * T = N * T with T the
    inverse square of the minimum gap: c/N gives N**3 / c**2, while
    c * 2**(-N/2) gives N * 2**N / c**2.  Both are evaluated in the
    algebraically reduced form so integer cases come out exact.
    """
    if gap_model not in GAP_MODELS:
        raise ValueError(f"unknown gap model {gap_model!r}")
    if not c > 0:
        raise ValueError(f"c must be positive, got {c}")
    n_list = [int(n) for n in n_list]
    if not n_list:
        raise ValueError("n_list must be non-empty")
    if any(n < 1 for n in n_list):
        raise ValueError("every N must be >= 1")
    rows = []
    for n in n_list:
        if gap_model == "poly":
            gsp = float(n) ** 3 / (c * c)
        else:
            gsp = n * 2.0**n / (c * c)
        rows.append((n, n * (n + 1), gsp))
    return rows
