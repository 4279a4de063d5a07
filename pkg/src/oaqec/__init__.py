"""Operator-algebra tools for erasure correction on small encoded codes.

The package decides, for an encoding isometry V and a bipartition of the
physical qubits, whether a logical von Neumann algebra admits
complementary recovery: the algebra must survive erasure of one side and
its commutant must survive erasure of the other.  Circuits compile to
isometries, erasure channels provide Kraus families, and the algebra
layer supplies spans, commutants, closures, and block decompositions.
"""

from .algebra import (
    DEFAULT_SEED,
    OperatorSpan,
    WedderburnDecomposition,
    bicommutant_check,
    center,
    commutant,
    is_vn_algebra,
    pauli_label,
    span_of,
    subspace_equal,
    subspace_leq,
    vn_closure,
    wedderburn,
)
from .channel import Bipartition, KrausChannel, erasure_channel
from .circuit import (
    BUILTIN_NAMES,
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
from .qec import (
    CodeContext,
    ContradictionReport,
    RecoveryReport,
    analyze,
    complementary_recovery,
    containment_correctable,
    contradiction_demo,
    find_representative,
    is_correctable,
    is_private,
    is_private_for_complement,
    logical_algebra,
)
from .tensor import DEFAULT_TOL, MAX_QUBITS, PAULI, embed, partial_trace, pauli_labels, pauli_string

__version__ = "0.1.0"

__all__ = [
    "BUILTIN_NAMES",
    "Bipartition",
    "CodeContext",
    "ContradictionReport",
    "DEFAULT_SEED",
    "DEFAULT_TOL",
    "EncodingCircuit",
    "GateSpec",
    "Isometry",
    "KrausChannel",
    "MAX_QUBITS",
    "OperatorSpan",
    "PAULI",
    "RecoveryReport",
    "WedderburnDecomposition",
    "WireSpec",
    "analyze",
    "apply_logical",
    "bicommutant_check",
    "builtin",
    "center",
    "commutant",
    "compile_isometry",
    "complementary_recovery",
    "containment_correctable",
    "contradiction_demo",
    "cz_variant",
    "embed",
    "erasure_channel",
    "find_representative",
    "gate_unitary",
    "is_correctable",
    "is_private",
    "is_private_for_complement",
    "is_vn_algebra",
    "logical_algebra",
    "partial_trace",
    "pauli_label",
    "pauli_labels",
    "pauli_string",
    "span_of",
    "subspace_equal",
    "subspace_leq",
    "vn_closure",
    "wedderburn",
]
