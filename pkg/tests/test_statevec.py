import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import (
    cnot_matrix,
    cphase_matrix,
    hadamard_on,
    not_matrix,
    random_state,
    walsh_entry_matrix,
)
from qgrover import Machine, Register, hadamard_matrix, new_machine
from qgrover.errors import CapacityError, InvalidRegister, NumericalError, OverlapError

S = 1 / math.sqrt(2)


def loaded(n, amps, seed=0):
    m = new_machine(max(n, 1), seed)
    m.allocate(n)
    m.load_amplitudes(amps)
    return m


def norm(m):
    return float(np.sum(np.abs(m.snapshot_amplitudes()) ** 2))


# -- construction and allocation ------------------------------------------------


def test_new_machine_is_scalar_one():
    m = new_machine(4, seed=7)
    assert m.num_qubits == 0
    np.testing.assert_array_equal(m.snapshot_amplitudes(), [1])


@pytest.mark.parametrize("cap", [0, 31, 32, -1])
def test_capacity_bounds(cap):
    with pytest.raises(CapacityError):
        new_machine(cap)


def test_allocate_one_qubit():
    m = new_machine(1, seed=0)
    reg = m.allocate(1)
    assert reg.indices == (0,)
    np.testing.assert_array_equal(m.snapshot_amplitudes(), [1, 0])


def test_allocate_two_on_empty():
    m = new_machine(4)
    m.allocate(2)
    np.testing.assert_array_equal(m.snapshot_amplitudes(), [1, 0, 0, 0])


def test_allocate_appends_most_significant():
    m = new_machine(4)
    a = m.allocate(1)
    m.apply_hadamard(a)
    b = m.allocate(1)
    assert b.indices == (1,)
    np.testing.assert_allclose(m.snapshot_amplitudes(), [S, S, 0, 0], atol=1e-15)


def test_allocate_beyond_cap():
    m = new_machine(3)
    m.allocate(2)
    with pytest.raises(CapacityError):
        m.allocate(2)
    assert m.num_qubits == 2


def test_register_rejects_duplicates_and_stale_indices():
    with pytest.raises(InvalidRegister):
        Register((0, 0))
    m = new_machine(4)
    m.allocate(2)
    with pytest.raises(InvalidRegister):
        m.apply_hadamard(Register((2,)))
    with pytest.raises(InvalidRegister):
        m.apply_not(Register((0, 5)))


# -- Hadamard ----------------------------------------------------------------------


def test_hadamard_two_qubits_uniform():
    m = new_machine(2)
    m.apply_hadamard(m.allocate(2))
    np.testing.assert_allclose(m.snapshot_amplitudes(), [0.5] * 4, atol=1e-15)


def test_hadamard_on_one():
    m = loaded(1, [0, 1])
    m.apply_hadamard(Register((0,)))
    np.testing.assert_allclose(m.snapshot_amplitudes(), [S, -S], atol=1e-15)


def test_hadamard_identities_on_superpositions():
    m = loaded(1, [S, -S])
    m.apply_hadamard(Register((0,)))
    np.testing.assert_allclose(m.snapshot_amplitudes(), [0, 1], atol=1e-15)
    m = loaded(1, [S, S])
    m.apply_hadamard(Register((0,)))
    np.testing.assert_allclose(m.snapshot_amplitudes(), [1, 0], atol=1e-15)


def test_hadamard_twice_is_identity(rng):
    psi = random_state(rng, 4)
    m = loaded(4, psi)
    reg = Register((0, 1, 2, 3))
    m.apply_hadamard(reg)
    m.apply_hadamard(reg)
    assert np.max(np.abs(m.snapshot_amplitudes() - psi)) <= 1e-12


@pytest.mark.parametrize("qubits", [(0,), (2,), (1, 3), (3, 0, 2)])
def test_hadamard_matches_entrywise_oracle(rng, qubits):
    psi = random_state(rng, 4)
    m = loaded(4, psi)
    m.apply_hadamard(Register(qubits))
    expected = hadamard_on(4, qubits) @ psi
    assert np.max(np.abs(m.snapshot_amplitudes() - expected)) <= 1e-12


# -- hadamard_matrix ---------------------------------------------------------------


def test_hadamard_matrix_small_cases():
    np.testing.assert_array_equal(hadamard_matrix(0), [[1.0]])
    np.testing.assert_allclose(hadamard_matrix(1), S * np.array([[1, 1], [1, -1]]), atol=1e-15)
    h2 = 0.5 * np.array([[1, 1, 1, 1], [1, -1, 1, -1], [1, 1, -1, -1], [1, -1, -1, 1]])
    np.testing.assert_allclose(hadamard_matrix(2), h2, atol=1e-15)


@pytest.mark.parametrize("m", range(0, 8))
def test_hadamard_matrix_matches_bitwise_dot_formula(m):
    np.testing.assert_allclose(hadamard_matrix(m), walsh_entry_matrix(m), atol=1e-15)


def test_hadamard_matrix_walsh_example_entry():
    # row 3, column 2: (-1)^((1,1).(1,0)) = -1
    assert hadamard_matrix(2)[3, 2] < 0


def test_hadamard_matrix_range():
    assert hadamard_matrix(10).shape == (1024, 1024)
    with pytest.raises(CapacityError):
        hadamard_matrix(11)


# -- Not / CNot / CPhase -----------------------------------------------------------


def test_not_full_register():
    m = new_machine(2)
    m.apply_not(m.allocate(2))
    np.testing.assert_array_equal(m.snapshot_amplitudes(), [0, 0, 0, 1])


def test_not_single_qubit_of_two():
    m = loaded(2, [0, 0, 1, 0])  # |10>: qubit 1 set
    m.apply_not(Register((0,)))
    np.testing.assert_array_equal(m.snapshot_amplitudes(), [0, 0, 0, 1])


def test_not_twice_is_exact(rng):
    psi = random_state(rng, 3)
    m = loaded(3, psi)
    m.apply_not(Register((0, 2)))
    m.apply_not(Register((0, 2)))
    np.testing.assert_array_equal(m.snapshot_amplitudes(), psi)


def _cnot_machine(controls_value):
    # qubits 0,1 are controls, qubit 2 target
    amps = np.zeros(8)
    amps[controls_value] = 1
    return loaded(3, amps)


def test_cnot_fires_on_all_ones():
    m = _cnot_machine(0b11)
    m.apply_cnot(Register((2,)), Register((0, 1)))
    assert m.snapshot_amplitudes()[0b111] == 1


def test_cnot_idle_when_a_control_is_zero():
    m = _cnot_machine(0b01)
    m.apply_cnot(Register((2,)), Register((0, 1)))
    assert m.snapshot_amplitudes()[0b001] == 1


def test_cnot_on_uniform_controls():
    m = new_machine(3)
    c = m.allocate(2)
    t = m.allocate(1)
    m.apply_hadamard(c)
    m.apply_cnot(t, c)
    expected = cnot_matrix(3, 2, [0, 1]) @ np.array([0.5, 0.5, 0.5, 0.5, 0, 0, 0, 0])
    # frozen from the oracle: |1>(x)|11> carries 1/2, the 0b011 slot is emptied
    np.testing.assert_allclose(expected, [0.5, 0.5, 0.5, 0, 0, 0, 0, 0.5])
    np.testing.assert_allclose(m.snapshot_amplitudes(), expected, atol=1e-15)


def test_cnot_requires_width_one_and_disjoint():
    m = new_machine(3)
    r = m.allocate(3)
    with pytest.raises(InvalidRegister):
        m.apply_cnot(r[0:2], r[2:3])
    with pytest.raises(OverlapError):
        m.apply_cnot(r[0], r)


def test_cphase_pi_on_plus():
    m = loaded(1, [S, S])
    m.apply_cphase(math.pi, Register((0,)))
    np.testing.assert_allclose(m.snapshot_amplitudes(), [S, -S], atol=1e-15)


def test_cphase_zero_is_identity(rng):
    psi = random_state(rng, 3)
    m = loaded(3, psi)
    m.apply_cphase(0.0, Register((0, 1)))
    np.testing.assert_array_equal(m.snapshot_amplitudes(), psi)


@pytest.mark.parametrize("seed", range(5))
def test_gates_match_brute_force_matrices(seed):
    rng = np.random.default_rng(seed)
    n = 4
    psi = random_state(rng, n)
    m = loaded(n, psi)
    ops = [
        (lambda: m.apply_not(Register((1, 3))), not_matrix(n, [1, 3])),
        (lambda: m.apply_cnot(Register((0,)), Register((2, 3))), cnot_matrix(n, 0, [2, 3])),
        (lambda: m.apply_cphase(0.7, Register((1, 2))), cphase_matrix(n, 0.7, [1, 2])),
        (lambda: m.apply_hadamard(Register((2,))), hadamard_on(n, [2])),
    ]
    for apply, mat in ops:
        apply()
        psi = mat @ psi
        assert np.max(np.abs(m.snapshot_amplitudes() - psi)) <= 1e-12


# -- measurement ---------------------------------------------------------------------


def test_measure_basis_state_is_deterministic():
    amps = np.zeros(16)
    amps[0b0110] = 1
    m = loaded(4, amps)
    out = m.measure(Register((0, 1, 2, 3)))
    assert (out.value, out.probability) == (6, 1.0)
    np.testing.assert_array_equal(m.snapshot_amplitudes(), amps)


@pytest.mark.parametrize("seed", range(8))
def test_measure_bell_pair(seed):
    m = new_machine(2, seed)
    r = m.allocate(2)
    m.apply_hadamard(r[0])
    m.apply_cnot(r[1], r[0])
    out = m.measure(r[0])
    assert out.probability == pytest.approx(0.5, abs=1e-12)
    expected = np.zeros(4)
    expected[0b11 if out.value else 0] = 1
    np.testing.assert_allclose(m.snapshot_amplitudes(), expected, atol=1e-12)


@pytest.mark.parametrize("seed", range(8))
def test_partial_measure_uniform_three_qubits(seed):
    m = new_machine(3, seed)
    r = m.allocate(3)
    m.apply_hadamard(r)
    out = m.measure(Register((0, 1)))
    assert out.probability == pytest.approx(0.25, abs=1e-12)
    post = m.snapshot_amplitudes()
    # enumerate: survivors are v and v | 0b100, each with amplitude 1/sqrt(2)
    for b in range(8):
        want = S if (b & 0b11) == out.value else 0.0
        assert abs(post[b] - want) <= 1e-12


def test_measure_rejects_unnormalized_state():
    m = loaded(1, [1, 0])
    m._psi = np.array([0.5, 0.5], dtype=complex)
    with pytest.raises(NumericalError):
        m.measure(Register((0,)))


def test_measurement_frequency():
    m = loaded(1, [math.sqrt(0.25), math.sqrt(0.75)], seed=123)
    reg = Register((0,))
    ones = 0
    for _ in range(10_000):
        m.load_amplitudes([math.sqrt(0.25), math.sqrt(0.75)])
        ones += m.measure(reg).value
    assert abs(ones / 10_000 - 0.75) <= 0.02


def test_same_seed_same_outcomes():
    def run(seed):
        m = new_machine(5, seed)
        r = m.allocate(5)
        out = []
        for _ in range(30):
            m.reset()
            m.apply_hadamard(r)
            out.append(m.measure(r))
        return out

    assert run(11) == run(11)
    assert run(11) != run(12)


# -- reset / snapshot ----------------------------------------------------------------


def test_reset(rng):
    m = loaded(3, random_state(rng, 3))
    m.reset()
    np.testing.assert_array_equal(m.snapshot_amplitudes(), [1, 0, 0, 0, 0, 0, 0, 0])
    assert m.measure(Register((0, 1, 2))).value == 0


def test_reset_on_empty_machine():
    m = new_machine(2)
    m.reset()
    np.testing.assert_array_equal(m.snapshot_amplitudes(), [1])


def test_snapshot_is_a_copy():
    m = new_machine(2)
    m.allocate(2)
    snap = m.snapshot_amplitudes()
    snap[0] = 99
    assert m.snapshot_amplitudes()[0] == 1
    assert len(snap) == 4


# -- properties ---------------------------------------------------------------------

gate = st.one_of(
    st.tuples(st.just("H"), st.lists(st.integers(0, 4), min_size=1, max_size=5, unique=True)),
    st.tuples(st.just("X"), st.lists(st.integers(0, 4), min_size=1, max_size=5, unique=True)),
    st.tuples(st.just("CP"), st.lists(st.integers(0, 4), min_size=1, max_size=5, unique=True),
              st.floats(-7, 7)),
    st.tuples(st.just("CX"), st.integers(0, 4), st.lists(st.integers(0, 4), max_size=4, unique=True)),
)


@settings(max_examples=60, deadline=None)
@given(st.lists(gate, max_size=25), st.integers(0, 2**32 - 1))
def test_normalization_survives_any_gate_sequence(ops, seed):
    m = Machine(5, seed)
    m.allocate(5)
    for op in ops:
        if op[0] == "H":
            m.apply_hadamard(Register(tuple(op[1])))
        elif op[0] == "X":
            m.apply_not(Register(tuple(op[1])))
        elif op[0] == "CP":
            m.apply_cphase(op[2], Register(tuple(op[1])))
        else:
            controls = tuple(c for c in op[2] if c != op[1])
            m.apply_cnot(Register((op[1],)), Register(controls))
        assert abs(norm(m) - 1) <= 1e-12
    m.measure(Register((0, 2)))
    assert abs(norm(m) - 1) <= 1e-12
    assert np.all(np.isfinite(m.snapshot_amplitudes()))
