"""Finite-dimensional von Neumann algebra engine over dense matrices.

A subspace of L(C^d) is represented by a Hilbert-Schmidt-orthonormal
basis (an :class:`OperatorSpan`).  Subspace identity is always decided by
mutual projection residuals, never by comparing basis matrices, so any
two orthonormal bases of the same span behave identically.

The multiplicative structure is handled by :func:`vn_closure` (smallest
unital *-algebra containing a span), :func:`commutant`, :func:`center`
and :func:`wedderburn`, which factors a unital *-algebra on C^d into
irreducible blocks M_a(C) tensor I_b.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .tensor import DEFAULT_TOL, hs_norm, num_qubits, pauli_labels, pauli_string

DEFAULT_SEED = 7

# Eigenvalues of a random central element closer than this are treated as
# one central sector; collisions are detected and retried with new draws.
EIGENVALUE_GROUP_TOL = 1e-7

_WEDDERBURN_ATTEMPTS = 5


def _rank(singular_values: np.ndarray, shape: tuple[int, int], tol: float) -> int:
    """Numerical rank: count singular values above tol * s_max * max(shape).

    A matrix whose largest singular value is itself below tol counts as zero.
    """
    if singular_values.size == 0 or singular_values[0] <= tol:
        return 0
    cut = tol * singular_values[0] * max(shape)
    return int(np.sum(singular_values > cut))


@dataclass(frozen=True, eq=False)
class OperatorSpan:
    """Linear subspace of L(C^ambient_dim) with an HS-orthonormal basis."""

    basis: tuple[np.ndarray, ...]
    ambient_dim: int

    def __post_init__(self):
        d = self.ambient_dim
        for b in self.basis:
            if b.shape != (d, d):
                raise ValueError(f"basis element shape {b.shape} != ({d}, {d})")
            if not np.all(np.isfinite(b)):
                raise ValueError("non-finite entry in basis element")
        v = self.vecs()
        gram = v.conj() @ v.T
        if gram.size and hs_norm(gram - np.eye(self.dim)) > 1e-7:
            raise ValueError("basis is not orthonormal")

    @property
    def dim(self) -> int:
        return len(self.basis)

    def vecs(self) -> np.ndarray:
        """Basis as rows of a (dim, ambient_dim**2) matrix."""
        d = self.ambient_dim
        if not self.basis:
            return np.zeros((0, d * d), dtype=complex)
        return np.stack([b.ravel() for b in self.basis])

    def project(self, x: np.ndarray) -> np.ndarray:
        """Orthogonal projection of x onto the span."""
        x = np.asarray(x, dtype=complex)
        if x.shape != (self.ambient_dim, self.ambient_dim):
            raise ValueError(f"operator shape {x.shape} does not match ambient dimension")
        if not self.basis:
            return np.zeros_like(x)
        v = self.vecs()
        coeff = v.conj() @ x.ravel()
        return (coeff @ v).reshape(x.shape)

    def contains(self, x: np.ndarray, tol: float = DEFAULT_TOL) -> bool:
        x = np.asarray(x, dtype=complex)
        return hs_norm(x - self.project(x)) <= tol * max(1.0, hs_norm(x))


def span_of(generators: Sequence[np.ndarray], tol: float = DEFAULT_TOL) -> OperatorSpan:
    """Orthonormalize a list of generators into an OperatorSpan.

    Rank decisions use an SVD cut at tol * s_max * max(shape); a list of
    (numerically) zero matrices yields the zero span.
    """
    gens = [np.asarray(g, dtype=complex) for g in generators]
    if not gens:
        raise ValueError("empty generator list")
    d = gens[0].shape[0]
    for g in gens:
        if g.ndim != 2 or g.shape != (d, d):
            raise ValueError(f"generators must share one square shape, got {g.shape}")
        if not np.all(np.isfinite(g)):
            raise ValueError("non-finite entry in generator")
    mat = np.stack([g.ravel() for g in gens])
    _, sv, vh = np.linalg.svd(mat, full_matrices=False)
    r = _rank(sv, mat.shape, tol)
    return OperatorSpan(tuple(vh[i].reshape(d, d) for i in range(r)), d)


def subspace_leq(a: OperatorSpan, b: OperatorSpan, tol: float = DEFAULT_TOL) -> bool:
    """True iff every element of span a lies in span b (to tolerance)."""
    if a.ambient_dim != b.ambient_dim:
        raise ValueError("ambient dimensions differ")
    return all(b.contains(x, tol) for x in a.basis)


def subspace_equal(a: OperatorSpan, b: OperatorSpan, tol: float = DEFAULT_TOL) -> bool:
    return a.dim == b.dim and subspace_leq(a, b, tol) and subspace_leq(b, a, tol)


def vn_closure(s: OperatorSpan, tol: float = DEFAULT_TOL) -> OperatorSpan:
    """Smallest unital *-closed, product-closed span containing s.

    Alternates between adjoining all pairwise products plus adjoints and
    re-orthonormalizing, until the dimension stabilizes.  The dimension is
    strictly increasing until the fixed point, so at most ambient_dim**2
    rounds can occur.
    """
    d = s.ambient_dim
    cur = span_of(list(s.basis) + [np.eye(d, dtype=complex)], tol)
    for _ in range(d * d + 1):
        mats = list(cur.basis)
        ext = [a @ b for a in mats for b in mats]
        ext += [m.conj().T for m in mats]
        nxt = span_of(mats + ext, tol)
        if nxt.dim == cur.dim:
            return nxt
        cur = nxt
    raise ArithmeticError("closure failed to stabilize")  # pragma: no cover


def is_vn_algebra(s: OperatorSpan, tol: float = DEFAULT_TOL) -> bool:
    """True iff s contains the identity and is closed under products and adjoints."""
    d = s.ambient_dim
    if not s.contains(np.eye(d, dtype=complex), tol):
        return False
    for a in s.basis:
        if not s.contains(a.conj().T, tol):
            return False
    for a in s.basis:
        for b in s.basis:
            if not s.contains(a @ b, tol):
                return False
    return True


def commutant(s: OperatorSpan, within: Optional[np.ndarray] = None,
              tol: float = DEFAULT_TOL) -> OperatorSpan:
    """All operators commuting with every element of s.

    With ``within`` (a projection P), the commutant is taken inside
    operators supported on the range of P; every element of s must itself
    be supported there.  Without it, the commutant is taken in the full
    ambient matrix space.

    Computed as the joint nullspace of the superoperators X -> [X, b].
    """
    d = s.ambient_dim
    if within is not None:
        p = np.asarray(within, dtype=complex)
        if p.shape != (d, d):
            raise ValueError(f"projection shape {p.shape} does not match ambient dimension")
        if hs_norm(p @ p - p) > tol * max(1.0, hs_norm(p)) or hs_norm(p - p.conj().T) > tol:
            raise ValueError("'within' is not an orthogonal projection")
        evals, evecs = np.linalg.eigh(p)
        w = evecs[:, evals > 0.5]
        for b in s.basis:
            if hs_norm(p @ b @ p - b) > tol * max(1.0, hs_norm(b)):
                raise ValueError("span is not supported on the given projection")
        compressed = OperatorSpan(tuple(w.conj().T @ b @ w for b in s.basis), w.shape[1])
        inner = commutant(compressed, None, tol)
        return OperatorSpan(tuple(w @ x @ w.conj().T for x in inner.basis), d)

    if s.dim == 0:
        units = []
        for a in range(d):
            for b in range(d):
                e = np.zeros((d, d), dtype=complex)
                e[a, b] = 1.0
                units.append(e)
        return OperatorSpan(tuple(units), d)

    eye = np.eye(d, dtype=complex)
    blocks = [np.kron(b, eye) - np.kron(eye, b.T) for b in s.basis]
    k = np.vstack(blocks)
    _, sv, vh = np.linalg.svd(k)
    r = _rank(sv, k.shape, tol)
    # Right null vectors are the conjugated trailing rows of vh.
    return OperatorSpan(tuple(v.conj().reshape(d, d) for v in vh[r:]), d)


def bicommutant_check(s: OperatorSpan, tol: float = DEFAULT_TOL) -> bool:
    """True iff the double commutant of s equals s."""
    return subspace_equal(commutant(commutant(s, None, tol), None, tol), s, tol)


def _intersect(a: OperatorSpan, b: OperatorSpan, tol: float) -> OperatorSpan:
    d = a.ambient_dim
    if b.ambient_dim != d:
        raise ValueError("ambient dimensions differ")
    if a.dim == 0 or b.dim == 0:
        return OperatorSpan((), d)
    dd = d * d
    va, vb = a.vecs(), b.vecs()
    pa = va.T @ va.conj()
    pb = vb.T @ vb.conj()
    k = np.vstack([np.eye(dd) - pa, np.eye(dd) - pb])
    _, sv, vh = np.linalg.svd(k)
    r = _rank(sv, k.shape, tol)
    return OperatorSpan(tuple(v.conj().reshape(d, d) for v in vh[r:]), d)


def center(s: OperatorSpan, tol: float = DEFAULT_TOL) -> OperatorSpan:
    """Intersection of s with its commutant."""
    return _intersect(s, commutant(s, None, tol), tol)


@dataclass(frozen=True)
class WedderburnDecomposition:
    """Block structure of a unital *-algebra: H = H0 + sum_a H_Aa x H_ABara.

    ``blocks`` lists (dim H_Aa, dim H_ABara) pairs, ``null_dim`` is the
    dimension of the common nullspace H0 (zero for algebras containing the
    full identity).
    """

    blocks: tuple[tuple[int, int], ...]
    null_dim: int


def wedderburn(s: OperatorSpan, tol: float = DEFAULT_TOL,
               seed: int = DEFAULT_SEED) -> WedderburnDecomposition:
    """Factor a von Neumann algebra into irreducible blocks.

    A random Hermitian element of the center is diagonalized; its
    eigenspaces are the ranges of the minimal central projections when all
    sectors draw distinct eigenvalues.  Collisions (detected by restricted
    dimensions failing the perfect-square and divisibility checks) trigger
    a retry with a fresh random combination, up to five attempts.
    """
    d = s.ambient_dim
    if s.dim == 0:
        return WedderburnDecomposition((), d)

    stacked = np.vstack(s.basis)
    _, sv, vh = np.linalg.svd(stacked)
    act = _rank(sv, stacked.shape, tol)
    null_dim = d - act
    w = vh[:act].conj().T
    # Elements of a *-closed span kill the common nullspace on both sides,
    # so compressing onto its complement preserves HS inner products.
    cbasis = tuple(w.conj().T @ b @ w for b in s.basis)
    cspan = OperatorSpan(cbasis, act)

    cen = center(cspan, tol)
    herms = []
    for c in cen.basis:
        for h in (c + c.conj().T, 1j * (c - c.conj().T)):
            if hs_norm(h) > 1e-12:
                herms.append(h / hs_norm(h))
    if not herms:
        raise ArithmeticError("center has no Hermitian part")  # pragma: no cover

    rng = np.random.default_rng(seed)
    cstack = np.stack(cbasis)
    for _ in range(_WEDDERBURN_ATTEMPTS):
        h = sum(x * m for x, m in zip(rng.standard_normal(len(herms)), herms))
        h = (h + h.conj().T) / 2
        evals, evecs = np.linalg.eigh(h)
        splits = [0] + [i + 1 for i in range(len(evals) - 1)
                        if evals[i + 1] - evals[i] > EIGENVALUE_GROUP_TOL] + [len(evals)]
        blocks = []
        total_restricted = 0
        ok = True
        for lo, hi in zip(splits[:-1], splits[1:]):
            q = evecs[:, lo:hi]
            m = hi - lo
            sub = np.einsum("ri,krs,sj->kij", q.conj(), cstack, q)
            rdim = span_of(list(sub), tol).dim
            a = math.isqrt(rdim)
            if a * a != rdim or a == 0 or m % a != 0:
                ok = False
                break
            blocks.append((a, m // a))
            total_restricted += rdim
        if ok and total_restricted == s.dim and sum(a * b for a, b in blocks) == act:
            return WedderburnDecomposition(tuple(sorted(blocks, reverse=True)), null_dim)
    raise ArithmeticError("could not separate central sectors after retries")


def pauli_label(s: OperatorSpan, tol: float = DEFAULT_TOL) -> Optional[list[str]]:
    """Pauli-string labels of a span, or None if it is not Pauli-aligned.

    A span is Pauli-aligned when every Pauli string lies either inside it
    or orthogonal to it; the inside strings then form an orthogonal basis.
    """
    d = s.ambient_dim
    n = num_qubits(d)
    scale = math.sqrt(d)
    labels = []
    for lbl in pauli_labels(n):
        sigma = pauli_string(lbl)
        proj = s.project(sigma)
        res = hs_norm(sigma - proj)
        if res <= tol * scale:
            labels.append(lbl)
        elif hs_norm(proj) > tol * scale:
            return None
    if len(labels) != s.dim:
        return None
    return labels
