"""Permutative matrices and the Suleimanova realization.

A matrix is tau-permutative when row ``j`` is the first row read through
the permutation ``tau[j]``: ``A[j, k] = a[tau[j][k]]`` with ``tau[0]`` the
identity. Permutations are 0-based index arrays throughout.
"""
from dataclasses import dataclass
import math

import numpy as np

from .errors import GateError
from .matching import perfect_matching
from .spectra import Spectrum, as_spectrum, is_suleimanova


def _is_perm(p, n):
    return len(p) == n and sorted(p) == list(range(n))


@dataclass(frozen=True)
class PermutationTuple:
    """``n`` permutations of ``range(n)``; the first is the identity."""

    perms: tuple

    def __post_init__(self):
        perms = tuple(tuple(int(i) for i in p) for p in self.perms)
        n = len(perms)
        if n < 1:
            raise ValueError("need at least one permutation")
        for j, p in enumerate(perms):
            if not _is_perm(p, n):
                raise ValueError(f"entry {j} is not a permutation of range({n}): {p}")
        if perms[0] != tuple(range(n)):
            raise ValueError("the first permutation must be the identity")
        object.__setattr__(self, "perms", perms)

    def __len__(self):
        return len(self.perms)

    def __getitem__(self, j):
        return self.perms[j]

    @classmethod
    def from_powers(cls, phi):
        """``(id, phi, phi^2, ..., phi^(n-1))``; the tuple behind a phi-permutative matrix."""
        phi = np.asarray(phi, dtype=np.intp)
        n = phi.size
        if not _is_perm(phi.tolist(), n):
            raise ValueError(f"not a permutation: {phi.tolist()}")
        perms = [np.arange(n)]
        for _ in range(n - 1):
            perms.append(phi[perms[-1]])
        return cls(tuple(tuple(p.tolist()) for p in perms))

    @classmethod
    def circulant(cls, n):
        """Tuple generating circulant matrices: phi(i) = i - 1 (mod n)."""
        return cls.from_powers((np.arange(n) - 1) % n)

    @classmethod
    def left_circulant(cls, n):
        """Tuple generating left circulant matrices: phi(i) = i + 1 (mod n)."""
        return cls.from_powers((np.arange(n) + 1) % n)

    def apply(self, a):
        return build_tau_matrix(self, a)


def build_tau_matrix(tau, a):
    """The matrix whose row ``j`` is ``a`` permuted by ``tau[j]``."""
    if not isinstance(tau, PermutationTuple):
        tau = PermutationTuple(tau)
    a = np.asarray(a)
    if a.ndim != 1 or a.size != len(tau):
        raise ValueError(f"tuple of {len(tau)} permutations needs a vector of that length, got shape {a.shape}")
    idx = np.array(tau.perms, dtype=np.intp)
    return a[idx]


def paparella_matrix(x):
    """Row 0 is ``x``; row ``i`` is ``x`` with positions 0 and ``i`` swapped.

    Eigenvalues: ``sum(x)`` and ``x[0] - x[i]`` for ``i >= 1``.
    """
    x = np.asarray(x)
    if x.ndim != 1 or x.size < 2:
        raise ValueError("need a vector of length >= 2")
    n = x.size
    X = np.tile(x, (n, 1))
    rows = np.arange(1, n)
    X[rows, 0] = x[1:]
    X[rows, rows] = x[0]
    return X


def paparella_tuple(n):
    """The transposition tuple ``(id, (0 1), (0 2), ...)`` behind ``paparella_matrix``."""
    perms = []
    for i in range(n):
        p = list(range(n))
        p[0], p[i] = p[i], p[0]
        perms.append(tuple(p))
    return PermutationTuple(tuple(perms))


def paparella_spectrum(x):
    x = np.asarray(x)
    if x.ndim != 1 or x.size < 2:
        raise ValueError("need a vector of length >= 2")
    return Spectrum(np.concatenate([[x.sum()], x[0] - x[1:]]))


def suleimanova_vector(sigma):
    """First row realizing a Suleimanova list, after sorting it descending."""
    lam = np.sort(as_spectrum(sigma).values.real)[::-1]
    # exactly rounded, so a list summing to zero gives a zero diagonal
    x1 = math.fsum(lam) / lam.size
    return np.concatenate([[x1], x1 - lam[1:]])


def realize_suleimanova(sigma, tol=None):
    """Nonnegative permutative matrix with spectrum ``sigma``.

    ``sigma`` must be a Suleimanova list (in any order). When the list sums
    to zero the diagonal is exactly zero.
    """
    sigma = as_spectrum(sigma)
    if not is_suleimanova(sigma, tol):
        raise GateError("Suleimanova", f"{sigma.values.tolist()} is not a Suleimanova list")
    x = suleimanova_vector(sigma)
    if x.size == 1:
        return x.reshape(1, 1)
    return paparella_matrix(x)


def _row_assignment(target, source, tol):
    """``p`` with ``source[p[k]] ~ target[k]`` for every k, or None.

    ``target`` and ``source`` are (n,) or (n, d) arrays of values.
    """
    t = target.reshape(target.shape[0], -1)
    s = source.reshape(source.shape[0], -1)
    dist = np.abs(t[:, None, :] - s[None, :, :]).max(axis=2)
    return perfect_matching(dist <= tol)


def _matrix_tol(A):
    return 1e-12 * max(1.0, float(np.max(np.abs(A)))) if A.size else 0.0


def detect_permutative(A, tol=None):
    """A tuple ``tau`` with ``A = build_tau_matrix(tau, A[0])``, or None.

    Each row is matched to the first row independently, so with repeated
    first-row entries the first witness found is returned.
    """
    A = np.asarray(A)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {A.shape}")
    if tol is None:
        tol = _matrix_tol(A)
    n = A.shape[0]
    perms = [tuple(range(n))]
    for j in range(1, n):
        p = _row_assignment(A[j], A[0], tol)
        if p is None:
            return None
        perms.append(tuple(p.tolist()))
    return PermutationTuple(tuple(perms))


def common_tau(A, B, tol=None):
    """A single tuple generating both ``A`` and ``B`` from their first rows, or None."""
    A = np.asarray(A)
    B = np.asarray(B)
    if A.ndim != 2 or A.shape[0] != A.shape[1] or A.shape != B.shape:
        raise ValueError(f"need square matrices of equal order, got {A.shape} and {B.shape}")
    if tol is None:
        tol = max(_matrix_tol(A), _matrix_tol(B))
    n = A.shape[0]
    first = np.stack([A[0], B[0]], axis=1)
    perms = [tuple(range(n))]
    for j in range(1, n):
        p = _row_assignment(np.stack([A[j], B[j]], axis=1), first, tol)
        if p is None:
            return None
        perms.append(tuple(p.tolist()))
    return PermutationTuple(tuple(perms))


def are_permutatively_equivalent(A, B, tol=None):
    return common_tau(A, B, tol) is not None
