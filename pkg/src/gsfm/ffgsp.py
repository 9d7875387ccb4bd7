"""Fast-forwarded ground-state preparation on an ancilla-extended register.

With the initial and target states placed in disjoint ancilla sectors,
the rank-two generator G = |b><a| + |a><b| rotates one into the other:

    U_ff(theta) = (1 - P) + cos(theta) * P - i sin(theta) * G,

where P = G^2 projects onto span{a, b}.  At theta = pi/2 the extended
initial state maps to the extended target up to a global -i.  The module
also decomposes G into Pauli words, groups the words into commuting
sets, and Trotterizes the rotation one group exponential at a time.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .groundtruth import exact_ground_state
from .hamiltonians import IsingParams, ising_dense
from .statevec import StateVector, plus_state

ORTHOGONALITY_ATOL = 1e-10
PRUNE_THRESHOLD = 1e-12

# 4**n words at O(2**n) each; beyond this the sweep is not worth it.
MAX_TOTAL_QUBITS = 7

PARTITION_RULES = ("general", "qubitwise")

_PAULI_CHARS = {(0, 0): "I", (1, 0): "X", (0, 1): "Z", (1, 1): "Y"}
_PAULI_MASKS = {c: bits for bits, c in _PAULI_CHARS.items()}


@dataclass(frozen=True)
class RankTwoGenerator:
    """Orthogonal state pair spanning the rotation plane.

    ``a`` extends the initial state with ancilla 0, ``b`` the target
    state with ancilla 1; the ancilla is the most significant qubit.
    """

    n_total: int
    a: StateVector
    b: StateVector

    def __post_init__(self):
        if self.a.n_qubits != self.n_total or self.b.n_qubits != self.n_total:
            raise ValueError("state dimensions do not match n_total")
        overlap = abs(np.vdot(self.a.amplitudes, self.b.amplitudes))
        if overlap > ORTHOGONALITY_ATOL:
            raise ValueError(f"states not orthogonal, |<a|b>| = {overlap:g}")

    def apply_g(self, vec: np.ndarray) -> np.ndarray:
        """G v = b <a|v> + a <b|v>."""
        return self.b.amplitudes * np.vdot(
            self.a.amplitudes, vec
        ) + self.a.amplitudes * np.vdot(self.b.amplitudes, vec)

    def apply_projector(self, vec: np.ndarray) -> np.ndarray:
        """P v = a <a|v> + b <b|v> (orthogonal pair makes G^2 = P)."""
        return self.a.amplitudes * np.vdot(
            self.a.amplitudes, vec
        ) + self.b.amplitudes * np.vdot(self.b.amplitudes, vec)


@dataclass(frozen=True)
class PauliWordTerm:
    """One word of a Pauli expansion; position q of the word string is
    qubit q (least significant first)."""

    word: str
    coefficient: complex

    def __post_init__(self):
        if not self.word or any(c not in _PAULI_MASKS for c in self.word):
            raise ValueError(f"invalid Pauli word {self.word!r}")
        if self.coefficient == 0:
            raise ValueError("zero-coefficient term")

    @property
    def masks(self) -> tuple:
        """(xmask, zmask) bit masks of the word."""
        x = z = 0
        for q, char in enumerate(self.word):
            xb, zb = _PAULI_MASKS[char]
            x |= xb << q
            z |= zb << q
        return x, z


@dataclass(frozen=True)
class CommutingPartition:
    """Terms split into groups that commute pairwise under the rule."""

    groups: list
    rule: str

    def __post_init__(self):
        if self.rule not in PARTITION_RULES:
            raise ValueError(f"unknown rule {self.rule!r}")
        if not self.groups or any(not g for g in self.groups):
            raise ValueError("groups must be non-empty")
        for group in self.groups:
            for i, t1 in enumerate(group):
                for t2 in group[i + 1 :]:
                    if not _commutes(t1.masks, t2.masks, self.rule):
                        raise ValueError(
                            f"{t1.word} and {t2.word} do not commute "
                            f"under {self.rule}"
                        )

    @property
    def num_groups(self) -> int:
        return len(self.groups)

    @property
    def num_words(self) -> int:
        return sum(len(g) for g in self.groups)


@dataclass(frozen=True)
class GeneratorIdentityReport:
    """Largest deviations of the generator algebra over random states."""

    squared_vs_projector: float
    projector_idempotence: float
    g_after_projector: float
    projector_on_plane: float
    projector_kills_complement: float
    unitarity: float
    n_states: int

    @property
    def max_deviation(self) -> float:
        return max(
            self.squared_vs_projector,
            self.projector_idempotence,
            self.g_after_projector,
            self.projector_on_plane,
            self.projector_kills_complement,
            self.unitarity,
        )


def build_generator(
    psi_initial: StateVector, psi_ground: StateVector
) -> RankTwoGenerator:
    """Extend both states with an ancilla qubit (most significant bit:
    0 for the initial state, 1 for the target), making them orthogonal
    by construction."""
    if psi_initial.n_qubits != psi_ground.n_qubits:
        raise ValueError(
            f"dimension mismatch: {psi_initial.n_qubits} qubits vs "
            f"{psi_ground.n_qubits} qubits"
        )
    n_total = psi_initial.n_qubits + 1
    dim = 1 << psi_initial.n_qubits
    a = np.zeros(2 * dim, dtype=np.complex128)
    b = np.zeros(2 * dim, dtype=np.complex128)
    a[:dim] = psi_initial.amplitudes
    b[dim:] = psi_ground.amplitudes
    return RankTwoGenerator(n_total, StateVector(n_total, a), StateVector(n_total, b))


def u_ff_apply(g: RankTwoGenerator, theta: float, state: StateVector) -> StateVector:
    """Closed-form v + (cos(theta) - 1) P v - i sin(theta) G v, costing
    four inner products."""
    if state.n_qubits != g.n_total:
        raise ValueError(
            f"dimension mismatch: state has {state.n_qubits} qubits, "
            f"generator acts on {g.n_total}"
        )
    v = state.amplitudes
    out = (
        v
        + (np.cos(theta) - 1.0) * g.apply_projector(v)
        - 1j * np.sin(theta) * g.apply_g(v)
    )
    return StateVector(g.n_total, out)


def _random_states(n: int, count: int, rng: np.random.Generator) -> list:
    dim = 1 << n
    out = []
    for _ in range(count):
        vec = rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
        out.append(vec / np.linalg.norm(vec))
    return out


def verify_generator_identities(
    g: RankTwoGenerator, n_states: int = 50, seed: int = 7
) -> GeneratorIdentityReport:
    """Deviations of G^2 = P, P^2 = P, G P = G, the projector's action
    on the plane and its complement, and norm preservation of the
    rotation, maximized over random test states."""
    rng = np.random.default_rng(seed)
    dev_g2 = dev_p2 = dev_gp = dev_unit = 0.0
    for vec in _random_states(g.n_total, n_states, rng):
        pv = g.apply_projector(vec)
        dev_g2 = max(dev_g2, float(np.linalg.norm(g.apply_g(g.apply_g(vec)) - pv)))
        dev_p2 = max(dev_p2, float(np.linalg.norm(g.apply_projector(pv) - pv)))
        dev_gp = max(
            dev_gp, float(np.linalg.norm(g.apply_g(pv) - g.apply_g(vec)))
        )
        for theta in (0.3, 1.0, 2.5):
            rotated = u_ff_apply(g, theta, StateVector(g.n_total, vec))
            dev_unit = max(
                dev_unit, abs(float(np.linalg.norm(rotated.amplitudes)) - 1.0)
            )

    dev_plane = max(
        float(np.linalg.norm(g.apply_projector(g.a.amplitudes) - g.a.amplitudes)),
        float(np.linalg.norm(g.apply_projector(g.b.amplitudes) - g.b.amplitudes)),
    )
    # Any vector with its a and b components removed must be annihilated.
    vec = _random_states(g.n_total, 1, rng)[0]
    vec = vec - g.apply_projector(vec)
    norm = np.linalg.norm(vec)
    if norm > 1e-6:
        vec = vec / norm
        dev_comp = float(np.linalg.norm(g.apply_projector(vec)))
    else:
        dev_comp = 0.0
    return GeneratorIdentityReport(
        dev_g2, dev_p2, dev_gp, dev_plane, dev_comp, dev_unit, n_states
    )


def _popcounts(limit: int) -> np.ndarray:
    counts = np.zeros(limit, dtype=np.int64)
    for i in range(1, limit):
        counts[i] = counts[i >> 1] + (i & 1)
    return counts


def apply_pauli_word(word: str, vec: np.ndarray) -> np.ndarray:
    """Action of a Pauli word on raw amplitudes, using the convention
    P = i^{#Y} X^xmask Z^zmask."""
    x, z = PauliWordTerm(word, 1.0).masks
    return _apply_masks(x, z, word.count("Y"), vec)


_POPCOUNT_CACHE = {}


def _ensure_popcounts(dim: int) -> None:
    if dim not in _POPCOUNT_CACHE:
        _POPCOUNT_CACHE[dim] = _popcounts(dim)


def _apply_masks(x: int, z: int, n_y: int, vec: np.ndarray) -> np.ndarray:
    _ensure_popcounts(vec.size)
    idx = np.arange(vec.size)
    signs = 1.0 - 2.0 * (_POPCOUNT_CACHE[vec.size][idx & z] & 1)
    out = np.empty_like(vec, dtype=np.complex128)
    out[idx ^ x] = (1j**n_y) * signs * vec
    return out


def pauli_decompose(
    g: RankTwoGenerator, threshold: float = PRUNE_THRESHOLD
) -> list:
    """All Pauli words of G with |coefficient| above the threshold.

    The trace inner product collapses to state overlaps for a rank-two
    operator: Tr(W G) = <a|W|b> + <b|W|a> = 2 Re <a|W|b>, so each
    coefficient costs one permuted inner product instead of a dense
    trace.  Coefficients are exactly real by Hermiticity.
    """
    n = g.n_total
    if n > MAX_TOTAL_QUBITS:
        raise ValueError(f"decomposition limited to {MAX_TOTAL_QUBITS} qubits")
    dim = 1 << n
    _ensure_popcounts(dim)
    pops = _POPCOUNT_CACHE[dim]
    idx = np.arange(dim)
    a = g.a.amplitudes
    b = g.b.amplitudes

    terms = []
    for xmask in range(dim):
        a_perm = a[idx ^ xmask]
        for zmask in range(dim):
            n_y = int(pops[xmask & zmask])
            signs = 1.0 - 2.0 * (pops[idx & zmask] & 1)
            overlap = (1j**n_y) * np.vdot(a_perm, signs * b)
            coeff = 2.0 * overlap.real / dim
            if abs(coeff) > threshold:
                word = "".join(
                    _PAULI_CHARS[((xmask >> q) & 1, (zmask >> q) & 1)]
                    for q in range(n)
                )
                terms.append(PauliWordTerm(word, complex(coeff)))
    return terms


def _commutes(masks1: tuple, masks2: tuple, rule: str) -> bool:
    x1, z1 = masks1
    x2, z2 = masks2
    if rule == "general":
        parity = bin(x1 & z2).count("1") + bin(x2 & z1).count("1")
        return parity % 2 == 0
    if rule == "qubitwise":
        overlap = (x1 | z1) & (x2 | z2)
        return ((x1 ^ x2) | (z1 ^ z2)) & overlap == 0
    raise ValueError(f"unknown rule {rule!r}")


def commuting_partition(terms, rule: str = "general") -> CommutingPartition:
    """Greedy first-fit grouping of terms sorted by descending
    |coefficient|; each term joins the first group it commutes with
    entirely, else opens a new group."""
    terms = list(terms)
    if not terms:
        raise ValueError("terms must be non-empty")
    ordered = sorted(terms, key=lambda t: -abs(t.coefficient))
    groups = []
    group_masks = []
    for term in ordered:
        masks = term.masks
        for members, mask_list in zip(groups, group_masks):
            if all(_commutes(masks, m, rule) for m in mask_list):
                members.append(term)
                mask_list.append(masks)
                break
        else:
            groups.append([term])
            group_masks.append([masks])
    return CommutingPartition(groups, rule)


def _word_matrix(term: PauliWordTerm, dim: int) -> np.ndarray:
    _ensure_popcounts(dim)
    pops = _POPCOUNT_CACHE[dim]
    x, z = term.masks
    n_y = int(pops[x & z])
    idx = np.arange(dim)
    signs = 1.0 - 2.0 * (pops[idx & z] & 1)
    mat = np.zeros((dim, dim), dtype=np.complex128)
    mat[idx ^ x, idx] = (1j**n_y) * signs
    return mat


def trotterized_ff(g: RankTwoGenerator, partition: CommutingPartition, ms_values):
    """Rotation angle pi/2 realized as M_S sweeps of per-group
    exponentials exp(-i * (pi / (2 M_S)) * H_group).

    Returns one (M_S, fidelity, state) row per requested step count,
    with fidelity measured against the extended target state.  Groups
    act in partition order, the first group first.
    """
    if g.n_total > MAX_TOTAL_QUBITS:
        raise ValueError(f"dense exponentials limited to {MAX_TOTAL_QUBITS} qubits")
    ms_values = [int(m) for m in ms_values]
    if not ms_values or any(m < 1 for m in ms_values):
        raise ValueError("ms_values must be positive integers")
    dim = 1 << g.n_total
    bases = []
    for group in partition.groups:
        h_group = np.zeros((dim, dim), dtype=np.complex128)
        for term in group:
            h_group += term.coefficient * _word_matrix(term, dim)
        evals, evecs = np.linalg.eigh(h_group)
        bases.append((evals.real, evecs))

    rows = []
    for ms in ms_values:
        angle = np.pi / (2.0 * ms)
        step = np.eye(dim, dtype=np.complex128)
        for evals, evecs in bases:
            u_group = (evecs * np.exp(-1j * angle * evals)) @ evecs.conj().T
            step = u_group @ step
        final = np.linalg.matrix_power(step, ms) @ g.a.amplitudes
        final = final / np.linalg.norm(final)
        fidelity = abs(np.vdot(g.b.amplitudes, final)) ** 2
        rows.append((ms, float(fidelity), StateVector(g.n_total, final)))
    return rows


def word_count_scaling(
    n_list, x: float, h: float = 0.2, periodic: bool = True
) -> list:
    """Rows (N, nonzero words, groups under general rule, groups under
    qubit-wise rule) for the Ising ground-state generator at feature x."""
    n_list = [int(n) for n in n_list]
    if not n_list:
        raise ValueError("n_list must be non-empty")
    if max(n_list) > MAX_TOTAL_QUBITS - 1:
        raise ValueError(f"N must be <= {MAX_TOTAL_QUBITS - 1}")
    rows = []
    for n in n_list:
        ground = exact_ground_state(ising_dense(IsingParams(n, x, h, periodic))).state
        g = build_generator(plus_state(n), ground)
        terms = pauli_decompose(g)
        general = commuting_partition(terms, "general")
        qubitwise = commuting_partition(terms, "qubitwise")
        rows.append((n, len(terms), general.num_groups, qubitwise.num_groups))
    return rows
