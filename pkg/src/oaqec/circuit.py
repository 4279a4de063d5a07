"""Encoding circuits and their compiled isometries.

A circuit is a list of wires (logical inputs, |0> ancillas, |+> ancillas)
followed by gates from {CNOT, CZ, TOFFOLI, H, X, Z}.  Compiling yields
the isometry V : H_L -> H obtained by preparing the ancillas, injecting
the logical inputs at their wire positions, and applying the gates in
order.  The logical-space basis is ordered by the wire order of the
logical wires.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .channel import Bipartition
from .tensor import DEFAULT_TOL, MAX_QUBITS, embed, hs_norm

WIRE_KINDS = ("logical", "zero", "plus")

GATE_ARITY = {"CNOT": 1, "CZ": 1, "TOFFOLI": 2, "H": 0, "X": 0, "Z": 0}

_H = np.array([[1.0, 1.0], [1.0, -1.0]], dtype=complex) / np.sqrt(2.0)
_CNOT = np.array(
    [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]], dtype=complex
)
_CZ = np.diag([1.0, 1.0, 1.0, -1.0]).astype(complex)
_TOFFOLI = np.eye(8, dtype=complex)
_TOFFOLI[[6, 7]] = _TOFFOLI[[7, 6]]

_LOCAL_GATE = {
    "CNOT": _CNOT,
    "CZ": _CZ,
    "TOFFOLI": _TOFFOLI,
    "H": _H,
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Z": np.diag([1.0, -1.0]).astype(complex),
}


@dataclass(frozen=True)
class WireSpec:
    """One circuit wire: a logical input or an ancilla prepared in |0> or |+>."""

    kind: str

    def __post_init__(self):
        if self.kind not in WIRE_KINDS:
            raise ValueError(f"wire kind must be one of {WIRE_KINDS}, got {self.kind!r}")


@dataclass(frozen=True)
class GateSpec:
    """One gate application: controls (possibly empty) and a target wire."""

    gate: str
    controls: tuple[int, ...]
    target: int

    def __post_init__(self):
        if self.gate not in GATE_ARITY:
            raise ValueError(f"unknown gate {self.gate!r}")
        if len(self.controls) != GATE_ARITY[self.gate]:
            raise ValueError(
                f"{self.gate} expects {GATE_ARITY[self.gate]} control(s), "
                f"got {len(self.controls)}"
            )
        touched = (*self.controls, self.target)
        if len(set(touched)) != len(touched):
            raise ValueError(f"gate wires must be distinct, got {touched}")


@dataclass(frozen=True, eq=False)
class EncodingCircuit:
    """Named wire list plus gate list; validated on construction."""

    name: str
    wires: tuple[WireSpec, ...]
    gates: tuple[GateSpec, ...]

    def __post_init__(self):
        n = len(self.wires)
        if n == 0:
            raise ValueError("circuit has no wires")
        if n > MAX_QUBITS:
            raise ValueError(f"circuit has {n} wires, the cap is {MAX_QUBITS}")
        if not self.logical_wires:
            raise ValueError("circuit has no logical wire")
        for i, g in enumerate(self.gates):
            for q in (*g.controls, g.target):
                if q < 0 or q >= n:
                    raise ValueError(f"gate {i}: wire {q} out of range for {n} wires")

    @property
    def n(self) -> int:
        return len(self.wires)

    @property
    def logical_wires(self) -> tuple[int, ...]:
        return tuple(i for i, w in enumerate(self.wires) if w.kind == "logical")

    @property
    def k(self) -> int:
        return len(self.logical_wires)


@dataclass(frozen=True, eq=False)
class Isometry:
    """Encoding isometry V with V^dag V = I on the logical space."""

    matrix: np.ndarray
    n: int
    k: int

    def __post_init__(self):
        v = self.matrix
        if v.shape != (2**self.n, 2**self.k):
            raise ValueError(f"isometry shape {v.shape} does not match n={self.n}, k={self.k}")
        if not np.all(np.isfinite(v)):
            raise ValueError("non-finite entry in isometry")
        if hs_norm(v.conj().T @ v - np.eye(2**self.k)) > DEFAULT_TOL * 2**self.k:
            raise ValueError("columns are not orthonormal")

    @property
    def projection(self) -> np.ndarray:
        """Code projection P = V V^dag."""
        return self.matrix @ self.matrix.conj().T


def gate_unitary(gate: GateSpec, n: int) -> np.ndarray:
    """Full 2^n unitary of a gate; controls precede the target as factors."""
    wires = (*gate.controls, gate.target)
    if any(q < 0 or q >= n for q in wires):
        raise ValueError(f"gate wire out of range for n={n}")
    return embed(_LOCAL_GATE[gate.gate], wires, n)


def compile_isometry(circuit: EncodingCircuit) -> Isometry:
    """Compile a circuit to its encoding isometry.

    The embedding tensors an identity factor for each logical wire and the
    prepared state for each ancilla, all in wire order; the gate unitaries
    are then applied left to right.
    """
    zero = np.array([[1.0], [0.0]], dtype=complex)
    plus = np.array([[1.0], [1.0]], dtype=complex) / np.sqrt(2.0)
    v = np.array([[1.0 + 0.0j]])
    for w in circuit.wires:
        if w.kind == "logical":
            v = np.kron(v, np.eye(2, dtype=complex))
        elif w.kind == "zero":
            v = np.kron(v, zero)
        else:
            v = np.kron(v, plus)
    for g in circuit.gates:
        v = gate_unitary(g, circuit.n) @ v
    return Isometry(matrix=v, n=circuit.n, k=circuit.k)


_BUILTINS = {
    "example-e": EncodingCircuit(
        name="example-e",
        wires=(WireSpec("logical"), WireSpec("plus"), WireSpec("zero"), WireSpec("zero")),
        gates=(GateSpec("CNOT", (0,), 2), GateSpec("TOFFOLI", (0, 1), 3)),
    ),
    "four-qubit": EncodingCircuit(
        name="four-qubit",
        wires=(WireSpec("logical"), WireSpec("logical"), WireSpec("zero"), WireSpec("logical")),
        gates=(GateSpec("CNOT", (0,), 2),),
    ),
    "six-qubit": EncodingCircuit(
        name="six-qubit",
        wires=(
            WireSpec("logical"), WireSpec("logical"), WireSpec("plus"),
            WireSpec("zero"), WireSpec("logical"), WireSpec("zero"),
        ),
        gates=(GateSpec("CNOT", (0,), 3), GateSpec("TOFFOLI", (0, 2), 5)),
    ),
}

BUILTIN_NAMES = tuple(sorted(_BUILTINS))


def builtin(name: str) -> EncodingCircuit:
    """One of the bundled circuits: example-e, four-qubit, six-qubit."""
    try:
        return _BUILTINS[name]
    except KeyError:
        raise ValueError(f"unknown builtin {name!r}; choose from {BUILTIN_NAMES}") from None


def cz_variant(circuit: EncodingCircuit) -> EncodingCircuit:
    """Rewrite every CNOT into its phase form: H on the control, then CZ
    onto the target ancilla re-prepared in |+>.

    A bare CNOT -> CZ substitution would leave the gate acting trivially on
    a |0> target; moving the basis change onto the control instead swaps
    the roles of Z and X in the encoded correlations.
    """
    wires = list(circuit.wires)
    gates = []
    for g in circuit.gates:
        if g.gate == "CNOT":
            target = g.target
            if wires[target].kind != "zero":
                raise ValueError("CNOT target must be a |0> ancilla to take the phase form")
            wires[target] = WireSpec("plus")
            gates.append(GateSpec("H", (), g.controls[0]))
            gates.append(GateSpec("CZ", g.controls, target))
        else:
            gates.append(g)
    return EncodingCircuit(name=f"{circuit.name}-cz", wires=tuple(wires), gates=tuple(gates))


def apply_logical(v: Isometry, o_region: np.ndarray, b: Bipartition,
                  side: str) -> np.ndarray:
    """Compress a region operator to the logical space: V^dag (O tensor I) V.

    ``o_region`` acts on the qubits of the chosen side, in the side's wire
    order; the result is a 2^k x 2^k matrix on the logical space.
    """
    if b.n != v.n:
        raise ValueError(f"bipartition is on {b.n} qubits, isometry on {v.n}")
    qubits = b.side(side)
    o_region = np.asarray(o_region, dtype=complex)
    d = 2 ** len(qubits)
    if o_region.shape != (d, d):
        raise ValueError(f"operator shape {o_region.shape} does not match region size {len(qubits)}")
    full = embed(o_region, qubits, b.n)
    return v.matrix.conj().T @ full @ v.matrix
