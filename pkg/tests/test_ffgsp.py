import itertools

import numpy as np
import pytest

from gsfm.ffgsp import (
    CommutingPartition,
    PauliWordTerm,
    RankTwoGenerator,
    apply_pauli_word,
    build_generator,
    commuting_partition,
    pauli_decompose,
    trotterized_ff,
    u_ff_apply,
    verify_generator_identities,
    word_count_scaling,
)
from gsfm.groundtruth import exact_ground_state
from gsfm.hamiltonians import IsingParams, ising_dense
from gsfm.statevec import StateVector, basis_state, plus_state

from oracles import dense_rank_two, kron_word, random_state


def _ising_generator(n, x):
    ground = exact_ground_state(ising_dense(IsingParams(n, x))).state
    return build_generator(plus_state(n), ground)


def test_build_generator_layout():
    g = build_generator(plus_state(2), basis_state(2, 3))
    assert g.n_total == 3
    np.testing.assert_array_equal(g.a.amplitudes[4:], 0.0)
    np.testing.assert_array_equal(g.b.amplitudes[:4], 0.0)
    assert g.b.amplitudes[4 + 3] == 1.0


def test_build_generator_rejects_mismatched_registers():
    with pytest.raises(ValueError):
        build_generator(plus_state(1), plus_state(2))


def test_generator_requires_orthogonal_states():
    with pytest.raises(ValueError):
        RankTwoGenerator(1, plus_state(1), basis_state(1, 0))


def test_quarter_turn_sends_initial_to_target():
    g = _ising_generator(3, 1.2)
    rotated = u_ff_apply(g, np.pi / 2.0, g.a)
    np.testing.assert_allclose(
        rotated.amplitudes, -1j * g.b.amplitudes, atol=1e-14
    )


def test_rotation_matches_dense_expm():
    scipy_linalg = pytest.importorskip("scipy.linalg")
    rng = np.random.default_rng(11)
    for n in (2, 3):
        g = _ising_generator(n, 0.8)
        g_dense = dense_rank_two(g.a.amplitudes, g.b.amplitudes)
        for theta in (0.4, 1.1, 2.9):
            u_dense = scipy_linalg.expm(-1j * theta * g_dense)
            vec = random_state(rng, 2 ** g.n_total)
            got = u_ff_apply(g, theta, StateVector(g.n_total, vec))
            np.testing.assert_allclose(got.amplitudes, u_dense @ vec, atol=1e-12)


def test_generator_identities_hold():
    report = verify_generator_identities(_ising_generator(3, 1.9))
    assert report.n_states == 50
    assert report.max_deviation < 1e-12


def test_u_ff_dimension_mismatch():
    g = _ising_generator(2, 1.0)
    with pytest.raises(ValueError):
        u_ff_apply(g, 0.5, plus_state(2))


def test_pauli_word_term_validation():
    term = PauliWordTerm("XZY", 0.5)
    assert term.masks == (0b101, 0b110)
    with pytest.raises(ValueError):
        PauliWordTerm("XQ", 1.0)
    with pytest.raises(ValueError):
        PauliWordTerm("", 1.0)
    with pytest.raises(ValueError):
        PauliWordTerm("XX", 0.0)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_word_application_matches_kron(n):
    rng = np.random.default_rng(n)
    vec = random_state(rng, 2**n)
    for chars in itertools.product("IXYZ", repeat=n):
        word = "".join(chars)
        got = apply_pauli_word(word, vec)
        want = kron_word(word) @ vec
        np.testing.assert_allclose(got, want, atol=1e-14)


def test_decomposition_of_single_qubit_flip():
    g = build_generator(basis_state(1, 0), basis_state(1, 1))
    terms = {t.word: t.coefficient for t in pauli_decompose(g)}
    assert terms == {"XX": (0.5 + 0j), "YY": (-0.5 + 0j)}


def test_decomposition_against_trace_oracle():
    g = build_generator(plus_state(1), basis_state(1, 0))
    g_dense = dense_rank_two(g.a.amplitudes, g.b.amplitudes)
    got = {t.word: t.coefficient for t in pauli_decompose(g)}
    for chars in itertools.product("IXYZ", repeat=2):
        word = "".join(chars)
        coeff = np.trace(kron_word(word) @ g_dense) / 4.0
        if abs(coeff) > 1e-12:
            assert got.pop(word) == pytest.approx(coeff, abs=1e-14)
        else:
            assert word not in got
    assert not got


def test_coefficients_are_real():
    terms = pauli_decompose(_ising_generator(2, 1.5))
    assert all(t.coefficient.imag == 0.0 for t in terms)


def test_decomposition_reconstructs_generator():
    g = _ising_generator(3, 1.0)
    dim = 2 ** g.n_total
    rebuilt = np.zeros((dim, dim), dtype=complex)
    for term in pauli_decompose(g):
        rebuilt += term.coefficient * kron_word(term.word)
    np.testing.assert_allclose(
        rebuilt, dense_rank_two(g.a.amplitudes, g.b.amplitudes), atol=1e-12
    )


def test_squared_coefficients_sum_to_trace_of_projector():
    for n, x in ((2, 1.0), (3, 2.0)):
        g = _ising_generator(n, x)
        terms = pauli_decompose(g)
        total = sum(abs(t.coefficient) ** 2 for t in terms) * 2**g.n_total
        assert total == pytest.approx(2.0, abs=1e-12)


def test_nonzero_word_counts():
    for n, expected in ((2, 16), (3, 64), (4, 256)):
        terms = pauli_decompose(_ising_generator(n, 1.0))
        assert len(terms) == expected


def test_decompose_size_guard():
    a = np.zeros(256, dtype=complex)
    b = np.zeros(256, dtype=complex)
    a[0] = 1.0
    b[255] = 1.0
    g = RankTwoGenerator(8, StateVector(8, a), StateVector(8, b))
    with pytest.raises(ValueError):
        pauli_decompose(g)
    with pytest.raises(ValueError):
        trotterized_ff(g, CommutingPartition([[PauliWordTerm("X" * 8, 1.0)]], "general"), [1])


def test_commutation_partition_examples():
    zz_family = [
        PauliWordTerm("ZI", 1.0),
        PauliWordTerm("IZ", 0.5),
        PauliWordTerm("ZZ", 0.25),
    ]
    assert commuting_partition(zz_family, "general").num_groups == 1
    assert commuting_partition(zz_family, "qubitwise").num_groups == 1

    mixed = [PauliWordTerm("XI", 1.0), PauliWordTerm("ZI", 0.5)]
    assert commuting_partition(mixed, "general").num_groups == 2

    bell_family = [
        PauliWordTerm("XX", 1.0),
        PauliWordTerm("YY", 0.5),
        PauliWordTerm("ZZ", 0.25),
    ]
    assert commuting_partition(bell_family, "general").num_groups == 1
    assert commuting_partition(bell_family, "qubitwise").num_groups == 3


def test_partition_rejects_clashing_group():
    with pytest.raises(ValueError):
        CommutingPartition(
            [[PauliWordTerm("XI", 1.0), PauliWordTerm("ZI", 1.0)]], "general"
        )
    with pytest.raises(ValueError):
        CommutingPartition([[PauliWordTerm("XI", 1.0)]], "diagonal")
    with pytest.raises(ValueError):
        commuting_partition([], "general")


def test_partition_counts_for_ising_generators():
    for n, general, qubitwise in ((2, 4, 9), (3, 8, 27), (4, 16, 81)):
        terms = pauli_decompose(_ising_generator(n, 1.0))
        assert commuting_partition(terms, "general").num_groups == general
        assert commuting_partition(terms, "qubitwise").num_groups == qubitwise


def test_single_group_trotterization_is_exact():
    g = build_generator(basis_state(1, 0), basis_state(1, 1))
    partition = commuting_partition(pauli_decompose(g), "general")
    assert partition.num_groups == 1
    rows = trotterized_ff(g, partition, [1])
    assert rows[0][1] == pytest.approx(1.0, abs=1e-12)


def test_trotterized_fidelity_climbs_to_one():
    g = _ising_generator(2, 1.0)
    partition = commuting_partition(pauli_decompose(g), "general")
    rows = trotterized_ff(g, partition, [1, 2, 4, 8, 16, 32, 64])
    fidelities = [row[1] for row in rows]
    assert fidelities[0] == pytest.approx(0.82844539, abs=1e-6)
    assert fidelities[-1] == pytest.approx(0.99996457, abs=1e-6)
    assert all(a < b for a, b in zip(fidelities, fidelities[1:]))


def test_trotterized_state_converges_to_closed_form():
    g = _ising_generator(2, 1.0)
    partition = commuting_partition(pauli_decompose(g), "general")
    (row,) = trotterized_ff(g, partition, [256])
    target = u_ff_apply(g, np.pi / 2.0, g.a)
    overlap = abs(np.vdot(target.amplitudes, row[2].amplitudes)) ** 2
    assert overlap > 1.0 - 1e-5


def test_trotterized_rejects_bad_step_counts():
    g = build_generator(basis_state(1, 0), basis_state(1, 1))
    partition = commuting_partition(pauli_decompose(g), "general")
    with pytest.raises(ValueError):
        trotterized_ff(g, partition, [])
    with pytest.raises(ValueError):
        trotterized_ff(g, partition, [0])


def test_word_count_scaling_rows():
    rows = word_count_scaling([2, 3, 4], 1.0)
    assert rows == [(2, 16, 4, 9), (3, 64, 8, 27), (4, 256, 16, 81)]
    with pytest.raises(ValueError):
        word_count_scaling([7], 1.0)
    with pytest.raises(ValueError):
        word_count_scaling([], 1.0)
