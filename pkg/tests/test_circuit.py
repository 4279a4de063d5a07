import itertools

import numpy as np
import pytest

from oaqec import (
    BUILTIN_NAMES,
    Bipartition,
    EncodingCircuit,
    GateSpec,
    Isometry,
    WireSpec,
    apply_logical,
    builtin,
    compile_isometry,
    cz_variant,
    gate_unitary,
)
from oaqec.tensor import embed


def test_builtin_names():
    assert BUILTIN_NAMES == ("example-e", "four-qubit", "six-qubit")
    with pytest.raises(ValueError):
        builtin("nope")


def test_example_e_matrix_matches_hand_calculation():
    v = compile_isometry(builtin("example-e")).matrix
    expect = np.zeros((16, 2))
    s = 1 / np.sqrt(2)
    expect[0b0000, 0] = s
    expect[0b0100, 0] = s
    expect[0b1010, 1] = s
    expect[0b1111, 1] = s
    assert np.allclose(v, expect, atol=1e-12)


def test_four_qubit_matrix_action():
    # V|alpha i j> = |alpha i> (x) CNOT_{alpha->anc}|0 j> with the ancilla
    # on wire 2 and j on wire 3.
    v = compile_isometry(builtin("four-qubit")).matrix
    for alpha, i, j in itertools.product((0, 1), repeat=3):
        col = (alpha << 2) | (i << 1) | j
        anc = alpha
        row = (alpha << 3) | (i << 2) | (anc << 1) | j
        assert abs(v[row, col] - 1) < 1e-12
        assert abs(np.sum(np.abs(v[:, col])) - 1) < 1e-12


def test_six_qubit_codewords():
    # Wires: alpha, i, |+> c, |0> copy, j, |0> target.
    # V|alpha i j> = 2^{-1/2} sum_c |alpha, i, c, alpha, j, c*alpha>.
    v = compile_isometry(builtin("six-qubit")).matrix
    s = 1 / np.sqrt(2)
    for alpha, i, j in itertools.product((0, 1), repeat=3):
        col = (alpha << 2) | (i << 1) | j
        for c in (0, 1):
            row = (alpha << 5) | (i << 4) | (c << 3) | (alpha << 2) | (j << 1) | (c & alpha)
            assert abs(v[row, col] - s) < 1e-12


@pytest.mark.parametrize("name", BUILTIN_NAMES)
def test_isometry_and_projection_residuals(name):
    iso = compile_isometry(builtin(name))
    v, p = iso.matrix, iso.projection
    assert np.linalg.norm(v.conj().T @ v - np.eye(2**iso.k)) <= 1e-9
    assert np.linalg.norm(p @ p - p) <= 1e-9


@pytest.mark.parametrize("name", BUILTIN_NAMES)
def test_compile_matches_stepwise_application(name):
    circ = builtin(name)
    whole = compile_isometry(circ).matrix
    partial = compile_isometry(EncodingCircuit(circ.name, circ.wires, ())).matrix
    for g in circ.gates:
        partial = gate_unitary(g, circ.n) @ partial
    assert np.allclose(whole, partial, atol=1e-12)


@pytest.mark.parametrize("name", BUILTIN_NAMES)
def test_apply_logical_identity(name):
    iso = compile_isometry(builtin(name))
    n = iso.n
    for size in range(1, n):
        for region in itertools.combinations(range(n), size):
            b = Bipartition(n, region)
            for side in ("A", "Abar"):
                qubits = b.side(side)
                out = apply_logical(iso, np.eye(2**len(qubits)), b, side)
                assert np.linalg.norm(out - np.eye(2**iso.k)) <= 1e-9


def test_gate_unitary_cnot_and_toffoli():
    cnot01 = gate_unitary(GateSpec("CNOT", (0,), 1), 2)
    assert np.allclose(cnot01 @ np.array([0, 0, 1, 0]), [0, 0, 0, 1])
    # Control on wire 1, target on wire 0.
    cnot10 = gate_unitary(GateSpec("CNOT", (1,), 0), 2)
    assert np.allclose(cnot10 @ np.array([0, 1, 0, 0]), [0, 0, 0, 1])
    tof = gate_unitary(GateSpec("TOFFOLI", (0, 1), 2), 3)
    state = np.zeros(8)
    state[0b110] = 1
    assert np.allclose(tof @ state, np.eye(8)[0b111])


def test_gate_spec_validation():
    with pytest.raises(ValueError):
        GateSpec("CNOT", (0, 1), 2)  # too many controls
    with pytest.raises(ValueError):
        GateSpec("H", (0,), 1)
    with pytest.raises(ValueError):
        GateSpec("CNOT", (1,), 1)  # overlapping wires
    with pytest.raises(ValueError):
        GateSpec("SWAP", (), 0)


def test_circuit_validation():
    wires = (WireSpec("logical"), WireSpec("zero"))
    with pytest.raises(ValueError, match="gate 0"):
        EncodingCircuit("bad", wires, (GateSpec("CNOT", (0,), 5),))
    with pytest.raises(ValueError):
        EncodingCircuit("no-logical", (WireSpec("zero"),), ())
    with pytest.raises(ValueError):
        WireSpec("ancilla")


def test_cz_variant_structure():
    var = cz_variant(builtin("four-qubit"))
    assert var.name == "four-qubit-cz"
    assert [w.kind for w in var.wires] == ["logical", "logical", "plus", "logical"]
    assert [(g.gate, g.controls, g.target) for g in var.gates] == [
        ("H", (), 0), ("CZ", (0,), 2)]


def test_cz_variant_requires_zero_target():
    wires = (WireSpec("logical"), WireSpec("plus"))
    circ = EncodingCircuit("odd", wires, (GateSpec("CNOT", (0,), 1),))
    with pytest.raises(ValueError):
        cz_variant(circ)


def test_cz_variant_is_local_conjugation_of_example_e():
    # H on the retargeted ancilla wire after V, H on the logical qubit
    # before it: V_cz = (I x I x H x I) V H.
    v = compile_isometry(builtin("example-e")).matrix
    v_cz = compile_isometry(cz_variant(builtin("example-e"))).matrix
    h_phys = embed(hadamard(), (2,), 4)
    assert np.allclose(v_cz, h_phys @ v @ hadamard(), atol=1e-12)


def hadamard():
    return np.array([[1, 1], [1, -1]], dtype=complex) / np.sqrt(2)


def test_apply_logical_rejects_wrong_shape():
    iso = compile_isometry(builtin("example-e"))
    b = Bipartition(4, (0, 1))
    with pytest.raises(ValueError):
        apply_logical(iso, np.eye(8), b, "A")


def test_isometry_rejects_non_isometric_matrix():
    with pytest.raises(ValueError):
        Isometry(np.ones((4, 2), dtype=complex), 2, 1)
