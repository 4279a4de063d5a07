"""Dense complex-matrix kernel for small multi-qubit systems.

Conventions used throughout the package: qubit 0 is the top circuit wire
and the most significant bit of a computational-basis index, so a basis
index ``x`` on ``n`` qubits assigns bit ``(x >> (n - 1 - q)) & 1`` to
qubit ``q``.  All functions are pure and never mutate their inputs.
"""

from __future__ import annotations

from itertools import product
from typing import Sequence

import numpy as np

DEFAULT_TOL = 1e-9
MAX_QUBITS = 12

PAULI = {
    "I": np.eye(2, dtype=complex),
    "X": np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex),
    "Y": np.array([[0.0, -1.0j], [1.0j, 0.0]], dtype=complex),
    "Z": np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex),
}


def kron(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Kronecker product with ``a`` as the leading (most significant) factor."""
    return np.kron(np.asarray(a, dtype=complex), np.asarray(b, dtype=complex))


def num_qubits(dim: int) -> int:
    """Qubit count for a Hilbert-space dimension, which must be a power of two."""
    dim = int(dim)
    n = dim.bit_length() - 1
    if dim <= 0 or 2**n != dim:
        raise ValueError(f"dimension {dim} is not a power of two")
    return n


def pauli_labels(n: int) -> tuple[str, ...]:
    """All 4**n Pauli-string labels on n qubits, lexicographic in I < X < Y < Z."""
    if n < 1:
        raise ValueError("need at least one qubit")
    return tuple("".join(p) for p in product("IXYZ", repeat=n))


def pauli_string(label: str) -> np.ndarray:
    """Tensor product of single-qubit Paulis; qubit 0 is the leftmost letter."""
    if not label:
        raise ValueError("empty Pauli label")
    if len(label) > MAX_QUBITS:
        raise ValueError(f"label {label!r} exceeds the {MAX_QUBITS}-qubit cap")
    out = np.array([[1.0 + 0.0j]])
    for ch in label:
        if ch not in PAULI:
            raise ValueError(f"unknown Pauli letter {ch!r} in {label!r}")
        out = np.kron(out, PAULI[ch])
    return out


def _basis_permutation(perm: Sequence[int], n: int) -> np.ndarray:
    """Index map pi with pi[x] = the basis index after sending wire q to perm[q]."""
    idx = np.arange(2**n)
    out = np.zeros_like(idx)
    for q, target in enumerate(perm):
        bit = (idx >> (n - 1 - q)) & 1
        out |= bit << (n - 1 - target)
    return out


def permute_qubits(m: np.ndarray, perm: Sequence[int]) -> np.ndarray:
    """Conjugate a square operator by the permutation sending wire q to perm[q]."""
    m = np.asarray(m, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {m.shape}")
    n = num_qubits(m.shape[0])
    perm = list(perm)
    if sorted(perm) != list(range(n)):
        raise ValueError(f"{perm} is not a permutation of 0..{n - 1}")
    pi = _basis_permutation(perm, n)
    out = np.empty_like(m)
    out[np.ix_(pi, pi)] = m
    return out


def embed(op: np.ndarray, qubits: Sequence[int], n: int) -> np.ndarray:
    """Operator acting as ``op`` on the listed qubits (in order), identity elsewhere."""
    op = np.asarray(op, dtype=complex)
    qubits = list(qubits)
    if len(set(qubits)) != len(qubits):
        raise ValueError(f"repeated qubit in {qubits}")
    if any(q < 0 or q >= n for q in qubits):
        raise ValueError(f"qubit out of range in {qubits} for n={n}")
    if op.shape != (2 ** len(qubits), 2 ** len(qubits)):
        raise ValueError(f"operator shape {op.shape} does not match {len(qubits)} qubits")
    rest = [q for q in range(n) if q not in set(qubits)]
    full = np.kron(op, np.eye(2 ** len(rest), dtype=complex))
    # Factor at position p of (qubits + rest) belongs on wire (qubits + rest)[p].
    return permute_qubits(full, qubits + rest)


def partial_trace(m: np.ndarray, keep: Sequence[int]) -> np.ndarray:
    """Trace out every qubit not listed in ``keep``; result in ``keep`` order."""
    m = np.asarray(m, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {m.shape}")
    n = num_qubits(m.shape[0])
    keep = list(keep)
    if len(set(keep)) != len(keep):
        raise ValueError(f"repeated qubit in {keep}")
    if any(q < 0 or q >= n for q in keep):
        raise ValueError(f"qubit out of range in {keep} for n={n}")
    traced = [q for q in range(n) if q not in set(keep)]
    perm = [0] * n
    for pos, q in enumerate(keep + traced):
        perm[q] = pos
    x = permute_qubits(m, perm)
    dk = 2 ** len(keep)
    dt = 2 ** len(traced)
    return np.trace(x.reshape(dk, dt, dk, dt), axis1=1, axis2=3)


def hs_inner(a: np.ndarray, b: np.ndarray) -> complex:
    """Hilbert-Schmidt inner product Tr(a^dag b)."""
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    if a.shape != b.shape:
        raise ValueError(f"shape mismatch {a.shape} vs {b.shape}")
    return complex(np.vdot(a, b))


def hs_norm(a: np.ndarray) -> float:
    """Frobenius norm, the norm induced by hs_inner."""
    return float(np.linalg.norm(np.asarray(a, dtype=complex)))
