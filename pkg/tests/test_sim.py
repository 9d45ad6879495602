import numpy as np
import pytest

from qsvt import sim
from qsvt.errors import FullyThresholdedError, ValidationError


def random_state(n, seed):
    rng = np.random.default_rng(seed)
    amp = rng.normal(size=1 << n) + 1j * rng.normal(size=1 << n)
    return sim.QuantumState(n, amp / np.linalg.norm(amp))


def test_new_state_two_qubits_all_zeros():
    layout = sim.RegisterLayout(0, range(0, 0), range(0, 0), range(1, 2))
    state = sim.new_state(layout)
    assert np.allclose(state.amplitudes, [1, 0, 0, 0])


def test_new_state_single_qubit():
    layout = sim.RegisterLayout(0, range(0, 0), range(0, 0), range(1, 2))
    state = sim.new_state(layout)
    assert state.amplitudes.shape == (4,)
    layout1 = sim.RegisterLayout.standard(1, 1, 1)
    assert sim.new_state(layout1).amplitudes[0] == 1.0


def test_new_state_seven_qubit_layout_with_folded_l():
    # 1 ancilla + 3 C + 3 B, L folded away (empty range)
    layout = sim.RegisterLayout(0, range(1, 1), range(1, 4), range(4, 7))
    state = sim.new_state(layout)
    assert len(state.amplitudes) == 128
    assert state.amplitudes[0] == 1.0
    assert abs(np.abs(state.amplitudes[1:]).sum()) == 0.0


def test_new_state_qubit_budget():
    layout = sim.RegisterLayout.standard(12, 12, 4)
    with pytest.raises(ValidationError, match="budget"):
        sim.new_state(layout, max_qubits=26)


def test_layout_rejects_overlap_and_gaps():
    with pytest.raises(ValidationError):
        sim.RegisterLayout(0, range(1, 3), range(2, 4), range(4, 6))
    with pytest.raises(ValidationError):
        sim.RegisterLayout(0, range(1, 3), range(4, 5), range(5, 7))


def test_load_register_identity_case():
    layout = sim.RegisterLayout.standard(1, 1, 2)
    state = sim.new_state(layout)
    vec = np.zeros(4)
    vec[0] = 1.0
    sim.load_register(state, layout.reg_B, vec)
    assert state.amplitudes[0] == 1.0


def test_load_register_uniform_two_qubits():
    layout = sim.RegisterLayout.standard(1, 1, 2)
    state = sim.new_state(layout)
    sim.load_register(state, layout.reg_B, np.full(4, 0.5))
    mass = sim.register_mass(state, layout.reg_B)
    assert np.allclose(mass, 0.25)


def test_load_register_rejects_bad_input():
    layout = sim.RegisterLayout.standard(1, 1, 2)
    state = sim.new_state(layout)
    with pytest.raises(ValidationError, match="unit norm"):
        sim.load_register(state, layout.reg_B, np.full(4, 0.4))
    with pytest.raises(ValidationError, match="4 amplitudes"):
        sim.load_register(state, layout.reg_B, np.full(8, 1 / np.sqrt(8)))


def test_load_register_requires_other_registers_cleared():
    layout = sim.RegisterLayout.standard(1, 1, 2)
    state = sim.new_state(layout)
    sim.apply_unitary(state, sim.pauli_x(), [layout.ancilla])
    vec = np.zeros(4)
    vec[0] = 1.0
    with pytest.raises(ValidationError, match=r"not in \|0>"):
        sim.load_register(state, layout.reg_B, vec)


def test_apply_unitary_identity_noop():
    state = random_state(4, 1)
    before = state.amplitudes.copy()
    sim.apply_unitary(state, np.eye(4), [1, 3])
    assert np.allclose(state.amplitudes, before, atol=1e-14)


def test_apply_unitary_pauli_x_single_qubit():
    layout = sim.RegisterLayout(0, range(0, 0), range(0, 0), range(1, 2))
    state = sim.new_state(layout)
    sim.apply_unitary(state, sim.pauli_x(), [0])
    # qubit 0 is the most significant bit: |10> is index 2
    assert np.allclose(state.amplitudes, [0, 0, 1, 0])


def test_apply_unitary_hadamard_on_zero():
    state = sim.QuantumState(1, np.array([1.0, 0.0], dtype=complex))
    sim.apply_unitary(state, sim.hadamard(), [0])
    assert np.allclose(state.amplitudes, [1 / np.sqrt(2), 1 / np.sqrt(2)])


def test_apply_unitary_rejects_non_unitary():
    state = random_state(2, 2)
    with pytest.raises(ValidationError, match="unitary"):
        sim.apply_unitary(state, np.array([[1, 1], [0, 1]]), [0])
    with pytest.raises(ValidationError, match="distinct"):
        sim.apply_unitary(state, np.eye(4), [1, 1])


def test_apply_controlled_inactive_control():
    state = sim.QuantumState(2, np.array([1, 0, 0, 0], dtype=complex))
    sim.apply_controlled(state, sim.pauli_x(), 0, 1, [1])
    assert np.allclose(state.amplitudes, [1, 0, 0, 0])


def test_apply_controlled_cnot():
    state = sim.QuantumState(2, np.array([0, 0, 1, 0], dtype=complex))  # |10>
    sim.apply_controlled(state, sim.pauli_x(), 0, 1, [1])
    assert np.allclose(state.amplitudes, [0, 0, 0, 1])  # |11>


def test_apply_controlled_ry_pi_makes_bell_state():
    state = sim.QuantumState(2, np.array([1, 0, 0, 0], dtype=complex))
    sim.apply_unitary(state, sim.hadamard(), [0])
    sim.apply_controlled(state, sim.ry(np.pi), 0, 1, [1])
    expected = np.array([1, 0, 0, 1]) / np.sqrt(2)
    assert np.allclose(state.amplitudes, expected, atol=1e-12)


def test_apply_controlled_rejects_overlap():
    state = random_state(2, 3)
    with pytest.raises(ValidationError, match="overlap"):
        sim.apply_controlled(state, sim.pauli_x(), 1, 1, [1])


def test_basis_oracle_identity():
    state = random_state(3, 4)
    before = state.amplitudes.copy()
    sim.apply_basis_oracle(state, [0, 1, 2], {i: i for i in range(8)})
    assert np.allclose(state.amplitudes, before)


def test_basis_oracle_partial_map_on_register_c():
    # (2|100> + |001>)/sqrt(5) -> (2|110> + |100>)/sqrt(5)
    amp = np.zeros(8, dtype=complex)
    amp[4] = 2 / np.sqrt(5)
    amp[1] = 1 / np.sqrt(5)
    state = sim.QuantumState(3, amp)
    sim.apply_basis_oracle(state, [0, 1, 2], {4: 6, 1: 4})
    expected = np.zeros(8, dtype=complex)
    expected[6] = 2 / np.sqrt(5)
    expected[4] = 1 / np.sqrt(5)
    assert np.allclose(state.amplitudes, expected)


def test_basis_oracle_inverse_composition():
    rng = np.random.default_rng(5)
    perm = rng.permutation(16)
    inverse = np.argsort(perm)
    state = random_state(4, 6)
    before = state.amplitudes.copy()
    sim.apply_basis_oracle(state, [0, 1, 2, 3], perm)
    sim.apply_basis_oracle(state, [0, 1, 2, 3], inverse)
    assert np.abs(state.amplitudes - before).max() < 1e-12


def test_basis_oracle_rejects_non_injective():
    state = random_state(2, 7)
    with pytest.raises(ValidationError, match="injective"):
        sim.apply_basis_oracle(state, [0, 1], {0: 2, 1: 2})


def test_basis_oracle_on_register_subset():
    # permuting register C must not touch other registers' content
    state = random_state(4, 8)
    mass_before = sim.register_mass(state, [0, 1])
    sim.apply_basis_oracle(state, [2, 3], {0: 3, 3: 0})
    assert np.allclose(sim.register_mass(state, [0, 1]), mass_before)


def test_complete_permutation_fixes_free_labels():
    perm = sim.complete_permutation({4: 6, 1: 4}, 3)
    assert list(perm) == [0, 4, 2, 3, 6, 5, 1, 7]
    assert sorted(perm) == list(range(8))


def test_post_select_deterministic_outcome():
    amp = np.zeros(4, dtype=complex)
    amp[2] = 1.0  # |10>
    state = sim.QuantumState(2, amp)
    state, p = sim.post_select(state, 0, 1)
    assert p == pytest.approx(1.0)
    assert np.allclose(state.amplitudes, amp)


def test_post_select_half_probability():
    phi = np.array([0.6, 0.8])
    amp = np.kron(np.array([1, 1]) / np.sqrt(2), phi)
    state = sim.QuantumState(2, amp.astype(complex))
    state, p = sim.post_select(state, 0, 1)
    assert p == pytest.approx(0.5)
    expected = np.concatenate([np.zeros(2), phi])
    assert np.allclose(state.amplitudes, expected, atol=1e-12)


def test_post_select_probability_matches_mass():
    state = random_state(4, 9)
    mass = sim.register_mass(state, [2])
    _, p = sim.post_select(state.copy(), 2, 0)
    assert p == pytest.approx(mass[0], abs=1e-12)


def test_post_select_floor_error():
    amp = np.zeros(2, dtype=complex)
    amp[0] = 1.0
    state = sim.QuantumState(1, amp)
    with pytest.raises(FullyThresholdedError):
        sim.post_select(state, 0, 1)


def test_overlap_self_is_one():
    state = random_state(3, 10)
    assert sim.overlap(state, state) == pytest.approx(1.0)


def test_overlap_orthogonal_basis_states():
    a = sim.QuantumState(2, np.array([1, 0, 0, 0], dtype=complex))
    b = sim.QuantumState(2, np.array([0, 1, 0, 0], dtype=complex))
    assert sim.overlap(a, b) == 0


def test_overlap_dimension_mismatch():
    a = random_state(2, 11)
    b = random_state(3, 12)
    with pytest.raises(ValidationError):
        sim.overlap(a, b)


def test_norm_preserved_over_random_gate_sequences():
    rng = np.random.default_rng(13)
    state = random_state(5, 13)
    for _ in range(30):
        kind = rng.integers(3)
        if kind == 0:
            q = int(rng.integers(5))
            sim.apply_unitary(state, sim.ry(float(rng.uniform(0, np.pi))), [q])
        elif kind == 1:
            c, t = rng.choice(5, size=2, replace=False)
            sim.apply_controlled(state, sim.hadamard(), int(c), 1, [int(t)])
        else:
            sim.apply_basis_oracle(state, [0, 1, 2, 3, 4], rng.permutation(32))
    assert abs(state.norm() - 1.0) < 1e-10


def test_gate_linearity_on_superpositions():
    rng = np.random.default_rng(14)
    gate = sim.ry(0.7)
    for trial in range(5):
        a = random_state(4, 100 + trial)
        b = random_state(4, 200 + trial)
        c1, c2 = rng.normal(size=2)
        combo = sim.QuantumState(4, c1 * a.amplitudes + c2 * b.amplitudes)
        norm = np.linalg.norm(combo.amplitudes)
        combo.amplitudes /= norm
        sim.apply_unitary(combo, gate, [2])
        sim.apply_unitary(a, gate, [2])
        sim.apply_unitary(b, gate, [2])
        expected = (c1 * a.amplitudes + c2 * b.amplitudes) / norm
        assert np.abs(combo.amplitudes - expected).max() < 1e-12


def test_controlled_identity_is_noop():
    for seed in range(3):
        state = random_state(4, 300 + seed)
        before = state.amplitudes.copy()
        sim.apply_controlled(state, np.eye(2), 0, 1, [3])
        assert np.allclose(state.amplitudes, before, atol=1e-14)
