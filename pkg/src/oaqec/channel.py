"""Erasure channels and their dual and complementary forms.

A :class:`KrausChannel` holds an explicit Kraus family {E_k} on the
physical space.  The erasure channel of a subregion S discards S and
re-prepares it maximally mixed; its Kraus family is

    E_(i,j) = (I_kept tensor |i><j|_S) / sqrt(dim S)

enumerated row-major over the (i, j) basis indices of S.  The
complementary channel maps rho to the environment matrix with entries
Tr(rho E_k^dag E_l), and the image of its dual compressed to a code
projection P is spanned by { P E_k^dag E_l P }.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .algebra import OperatorSpan, span_of
from .tensor import DEFAULT_TOL, hs_norm

SIDES = ("A", "Abar")


@dataclass(frozen=True, eq=False)
class Bipartition:
    """Split of n qubits into a region A and its complement.

    The region is stored sorted, so two bipartitions of the same qubit
    set behave identically regardless of how the caller listed them.
    """

    n: int
    region_a: tuple[int, ...]

    def __post_init__(self):
        if self.n < 2:
            raise ValueError("a bipartition needs at least two qubits")
        if len(set(self.region_a)) != len(self.region_a):
            raise ValueError(f"repeated qubit in region {self.region_a}")
        if any(q < 0 or q >= self.n for q in self.region_a):
            raise ValueError(f"qubit out of range in region {self.region_a}")
        if not 0 < len(self.region_a) < self.n:
            raise ValueError("region must be a nonempty proper subset")
        object.__setattr__(self, "region_a", tuple(sorted(self.region_a)))

    @property
    def complement(self) -> tuple[int, ...]:
        inside = set(self.region_a)
        return tuple(q for q in range(self.n) if q not in inside)

    def side(self, side: str) -> tuple[int, ...]:
        """Qubits of side 'A' (the region) or 'Abar' (its complement)."""
        if side == "A":
            return self.region_a
        if side == "Abar":
            return self.complement
        raise ValueError(f"side must be one of {SIDES}, got {side!r}")


@dataclass(frozen=True, eq=False)
class KrausChannel:
    """Trace-preserving channel given by an explicit Kraus family."""

    kraus: tuple[np.ndarray, ...]

    def __post_init__(self):
        if not self.kraus:
            raise ValueError("empty Kraus family")
        d = self.kraus[0].shape[0]
        for e in self.kraus:
            if e.ndim != 2 or e.shape != (d, d):
                raise ValueError(f"Kraus operators must share one square shape, got {e.shape}")
            if not np.all(np.isfinite(e)):
                raise ValueError("non-finite entry in Kraus operator")
        total = sum(e.conj().T @ e for e in self.kraus)
        if hs_norm(total - np.eye(d)) > DEFAULT_TOL * max(1.0, math.sqrt(d)):
            raise ValueError("Kraus family is not trace preserving")

    @property
    def dim(self) -> int:
        return self.kraus[0].shape[0]

    @property
    def env_dim(self) -> int:
        return len(self.kraus)

    def _stack(self) -> np.ndarray:
        return np.stack(self.kraus)

    def apply(self, rho: np.ndarray) -> np.ndarray:
        """sum_k E_k rho E_k^dag."""
        rho = np.asarray(rho, dtype=complex)
        if rho.shape != (self.dim, self.dim):
            raise ValueError(f"state shape {rho.shape} does not match channel dimension")
        k = self._stack()
        return np.einsum("kab,bc,kdc->ad", k, rho, k.conj(), optimize=True)

    def dual(self) -> "KrausChannel":
        """Adjoint family {E_k^dag}.

        Well-typed only for unital channels (erasure channels are unital),
        since the adjoint family must itself be trace preserving.
        """
        return KrausChannel(tuple(e.conj().T for e in self.kraus))

    def complementary_apply(self, rho: np.ndarray) -> np.ndarray:
        """Environment output: matrix with entries Tr(rho E_k^dag E_l)."""
        rho = np.asarray(rho, dtype=complex)
        if rho.shape != (self.dim, self.dim):
            raise ValueError(f"state shape {rho.shape} does not match channel dimension")
        k = self._stack()
        return np.einsum("ab,kcb,lca->kl", rho, k.conj(), k, optimize=True)

    def complementary_dual_image(self, p: np.ndarray,
                                 tol: float = DEFAULT_TOL) -> OperatorSpan:
        """Span of { P E_k^dag E_l P } over all Kraus pairs.

        ``p`` must be an orthogonal projection; the generators are
        compressed onto its range before orthonormalization, which is
        exact because each generator is supported there.
        """
        p = np.asarray(p, dtype=complex)
        if p.shape != (self.dim, self.dim):
            raise ValueError(f"projection shape {p.shape} does not match channel dimension")
        if hs_norm(p @ p - p) > tol * max(1.0, hs_norm(p)) or hs_norm(p - p.conj().T) > tol:
            raise ValueError("p is not an orthogonal projection")
        evals, evecs = np.linalg.eigh(p)
        w = evecs[:, evals > 0.5]
        kw = self._stack() @ w
        pairs = np.einsum("kda,ldb->klab", kw.conj(), kw)
        r = w.shape[1]
        compressed = span_of(list(pairs.reshape(-1, r, r)), tol)
        return OperatorSpan(tuple(w @ x @ w.conj().T for x in compressed.basis), self.dim)


def _subsystem_index_table(n: int, part_a: tuple[int, ...],
                           part_b: tuple[int, ...]) -> np.ndarray:
    """table[a, b] = physical basis index with bits a on part_a, b on part_b."""
    da, db = 2 ** len(part_a), 2 ** len(part_b)
    table = np.zeros((da, db), dtype=int)
    for pos, wire in enumerate(part_a):
        bit = (np.arange(da) >> (len(part_a) - 1 - pos)) & 1
        table |= (bit << (n - 1 - wire))[:, None]
    for pos, wire in enumerate(part_b):
        bit = (np.arange(db) >> (len(part_b) - 1 - pos)) & 1
        table |= (bit << (n - 1 - wire))[None, :]
    return table


def erasure_channel(b: Bipartition, erase: str) -> KrausChannel:
    """Erasure of one side of a bipartition.

    ``erase`` selects the discarded side: 'A' or 'Abar'.  The Kraus family
    is (I_kept tensor |i><j|_erased) / sqrt(d_erased) in row-major (i, j)
    order, so env_dim = d_erased ** 2.
    """
    erased = b.side(erase)
    kept = b.side("Abar" if erase == "A" else "A")
    table = _subsystem_index_table(b.n, kept, erased)
    d = 2**b.n
    de = 2 ** len(erased)
    norm = 1.0 / math.sqrt(de)
    ops = []
    for i in range(de):
        for j in range(de):
            e = np.zeros((d, d), dtype=complex)
            e[table[:, i], table[:, j]] = norm
            ops.append(e)
    return KrausChannel(tuple(ops))
