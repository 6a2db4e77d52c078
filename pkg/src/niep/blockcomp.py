"""Interleaved 2-by-2 block constructions of even and odd order.

A matrix of order 2n whose (i, j) block is ``[[a, b], [b, a]]`` has the
eigenvalues of ``S = (a + b)`` together with those of ``C = (a - b)``. The
odd order 2n+1 variant appends a duplicated last column and a free last
row. These functions build such matrices from (S, C), check the
nonnegativity gates, and undo the construction.
"""
from dataclasses import dataclass

import numpy as np

from .errors import GateError
from .matching import perfect_matching
from .permutative import paparella_matrix, suleimanova_vector
from .spectra import as_spectrum, is_suleimanova


@dataclass(frozen=True)
class CompositionParams:
    """``gamma`` in [0, 1] scales C; ``sign`` +1 builds M(+gamma), -1 builds M(-gamma)."""

    gamma: float = 1.0
    sign: int = 1

    def __post_init__(self):
        if not 0.0 <= self.gamma <= 1.0:
            raise GateError("gamma in [0, 1]", f"gamma = {self.gamma}")
        if self.sign not in (1, -1):
            raise ValueError(f"sign must be +1 or -1, got {self.sign}")

    @property
    def factor(self):
        return self.sign * self.gamma


@dataclass(frozen=True)
class OddTail:
    """Split of the last row of S between the two columns of each block pair."""

    phi1: np.ndarray
    phi2: np.ndarray

    def __post_init__(self):
        phi1 = np.asarray(self.phi1).ravel()
        phi2 = np.asarray(self.phi2).ravel()
        dtype = np.result_type(float, phi1, phi2)
        phi1, phi2 = phi1.astype(dtype), phi2.astype(dtype)
        if phi1.shape != phi2.shape:
            raise ValueError(f"phi1 and phi2 differ in length: {phi1.size} vs {phi2.size}")
        object.__setattr__(self, "phi1", phi1)
        object.__setattr__(self, "phi2", phi2)

    @classmethod
    def equal_split(cls, S):
        last = np.asarray(S)[-1, :-1] / 2
        return cls(last, last.copy())


def _square(M, name):
    M = np.asarray(M)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise ValueError(f"{name} must be square, got shape {M.shape}")
    return M


def check_majorization(S, C, tol=0.0):
    """True iff ``|C[i, j]| <= S[i, j]`` everywhere (S, S + C, S - C all nonnegative)."""
    S = _square(S, "S")
    C = _square(C, "C")
    if S.shape != C.shape:
        raise ValueError(f"S and C differ in shape: {S.shape} vs {C.shape}")
    if np.iscomplexobj(S) or np.iscomplexobj(C):
        if np.any(np.imag(S) != 0) or np.any(np.imag(C) != 0):
            return False
        S, C = S.real, C.real
    return bool(np.all(np.abs(C) <= S + tol))


def _first_majorization_failure(S, C):
    bad = np.argwhere(np.abs(C) > S)
    i, j = bad[0]
    return f"|C[{i},{j}]| = {abs(C[i, j])} > S[{i},{j}] = {S[i, j]}"


def _interleave(P, Q):
    """Order-2n matrix with blocks ``[[P_ij, Q_ij], [Q_ij, P_ij]]``."""
    n = P.shape[0]
    dtype = np.result_type(P, Q)
    M = np.empty((2 * n, 2 * n), dtype=dtype)
    M[0::2, 0::2] = P
    M[1::2, 1::2] = P
    M[0::2, 1::2] = Q
    M[1::2, 0::2] = Q
    return M


def compose_even(S, C, params=CompositionParams(), unchecked=False):
    """The order-2n matrix with blocks ``(s +- g c)/2`` on the diagonal, ``(s -+ g c)/2`` off it.

    Its spectrum is ``sigma(S)`` together with ``sign * gamma * sigma(C)``.
    With ``unchecked=True`` the majorization gate is skipped and complex
    entries are accepted, giving the plain block-spectrum identity.
    """
    S = _square(S, "S")
    C = _square(C, "C")
    if S.shape != C.shape:
        raise ValueError(f"S and C differ in shape: {S.shape} vs {C.shape}")
    if not unchecked and not check_majorization(S, C):
        raise GateError("majorization", _first_majorization_failure(S, C))
    gc = params.factor * C
    return _interleave((S + gc) / 2, (S - gc) / 2)


def _block_parts(A, n, tol):
    a = A[0:2 * n:2, 0:2 * n:2]
    b = A[0:2 * n:2, 1:2 * n:2]
    if (np.abs(A[1:2 * n:2, 1:2 * n:2] - a).max(initial=0.0) > tol
            or np.abs(A[1:2 * n:2, 0:2 * n:2] - b).max(initial=0.0) > tol):
        raise ValueError("blocks do not have the [[a, b], [b, a]] pattern within tolerance")
    return a, b


def extract_even(A, tol=0.0):
    """Recover ``(S, C) = (a + b, a - b)`` from an order-2n block matrix."""
    A = _square(A, "A")
    if A.shape[0] % 2:
        raise ValueError(f"order {A.shape[0]} is odd; use extract_odd")
    a, b = _block_parts(A, A.shape[0] // 2, tol)
    return a + b, a - b


def _phi_sum_gate(S, tail):
    n = S.shape[0] - 1
    if tail.phi1.size != n:
        raise ValueError(f"phi splits need length {n}, got {tail.phi1.size}")
    gap = np.abs(tail.phi1 + tail.phi2 - S[n, :n])
    tol = 1e-12 * max(1.0, float(np.abs(S[n, :n]).max(initial=0.0)))
    if np.any(gap > tol):
        i = int(np.argmax(gap))
        raise GateError("phi sum", f"phi1[{i}] + phi2[{i}] != S[{n},{i}] = {S[n, i]}")


def _odd_gates(S, C, tail):
    n = C.shape[0]
    lead = S[:n, :n]
    if not check_majorization(lead, C):
        raise GateError("majorization", _first_majorization_failure(lead, C))
    if np.any(S[:, n] < 0):
        i = int(np.argmax(S[:, n] < 0))
        raise GateError("last column nonnegative", f"S[{i},{n}] = {S[i, n]} < 0")
    if tail.phi1.size != n:
        raise ValueError(f"phi splits need length {n}, got {tail.phi1.size}")
    if np.any(tail.phi1 < 0) or np.any(tail.phi2 < 0):
        raise GateError("phi nonnegative", f"phi1 = {tail.phi1.tolist()}, phi2 = {tail.phi2.tolist()}")
    _phi_sum_gate(S, tail)


def compose_odd(S, C, params=CompositionParams(), tail=None, unchecked=False):
    """Order-2n+1 matrix from S (order n+1) and C (order n).

    The leading 2n-by-2n part is ``compose_even`` of the leading blocks of
    S and C, each block row gets ``S[i, n]`` twice in the last column, and
    the last row interleaves ``tail.phi1``/``tail.phi2`` and ends with the
    corner ``S[n, n]``. Spectrum: ``sigma(S)`` with ``sign * gamma * sigma(C)``.
    With ``unchecked=True`` only the split-sum condition is enforced, so
    complex or negative entries are accepted.
    """
    S = _square(S, "S")
    C = _square(C, "C")
    n = C.shape[0]
    if S.shape[0] != n + 1:
        raise ValueError(f"S must have order {n + 1} when C has order {n}, got {S.shape[0]}")
    if tail is None:
        tail = OddTail.equal_split(S)
    if unchecked:
        _phi_sum_gate(S, tail)
    else:
        _odd_gates(S, C, tail)
    gc = params.factor * C
    lead = S[:n, :n]
    M = np.empty((2 * n + 1, 2 * n + 1), dtype=np.result_type(S, gc, tail.phi1))
    M[:2 * n, :2 * n] = _interleave((lead + gc) / 2, (lead - gc) / 2)
    M[0:2 * n:2, 2 * n] = S[:n, n]
    M[1:2 * n:2, 2 * n] = S[:n, n]
    M[2 * n, 0:2 * n:2] = tail.phi1
    M[2 * n, 1:2 * n:2] = tail.phi2
    M[2 * n, 2 * n] = S[n, n]
    return M


def compose_odd_sym(A, B, x, y, u):
    """Order-2n+1 matrix with blocks ``[[a, b], [b, a]]``, last column ``x`` and last row ``y``, each doubled.

    Spectrum: that of ``S = [[A + B, x], [2 y, u]]`` together with that of
    ``C = A - B``. Symmetric when A and B are symmetric and ``x == y``.
    Every entry of the result is an entry of A, B, x, y or u, so all of
    them must be nonnegative.
    """
    A = _square(A, "A")
    B = _square(B, "B")
    if A.shape != B.shape:
        raise ValueError(f"A and B differ in shape: {A.shape} vs {B.shape}")
    n = A.shape[0]
    x = np.asarray(x).ravel()
    y = np.asarray(y).ravel()
    if x.size != n or y.size != n:
        raise ValueError(f"x and y need length {n}, got {x.size} and {y.size}")
    for name, part in (("A", A), ("B", B), ("x", x), ("y", y), ("u", np.asarray(u))):
        if np.any(np.asarray(part) < 0):
            raise GateError("nonnegative blocks", f"{name} has a negative entry")
    M = np.empty((2 * n + 1, 2 * n + 1), dtype=np.result_type(A, B, x, y, np.asarray(u)))
    M[:2 * n, :2 * n] = _interleave(A, B)
    M[:2 * n, 2 * n] = np.repeat(x, 2)
    M[2 * n, :2 * n] = np.repeat(y, 2)
    M[2 * n, 2 * n] = u
    return M


def odd_sym_parts(A, B, x, y, u):
    """The pair ``(S, C)`` whose spectra make up that of ``compose_odd_sym(A, B, x, y, u)``."""
    A = np.asarray(A)
    B = np.asarray(B)
    n = A.shape[0]
    S = np.empty((n + 1, n + 1), dtype=np.result_type(A, B, np.asarray(x), np.asarray(y), np.asarray(u)))
    S[:n, :n] = A + B
    S[:n, n] = np.asarray(x).ravel()
    S[n, :n] = 2 * np.asarray(y).ravel()
    S[n, n] = u
    return S, A - B


def extract_odd(A, tol=0.0):
    """Recover S (order n+1) and C (order n) from an order-2n+1 block matrix."""
    A = _square(A, "A")
    N = A.shape[0]
    if N % 2 == 0:
        raise ValueError(f"order {N} is even; use extract_even")
    n = (N - 1) // 2
    a, b = _block_parts(A, n, tol)
    col = A[:2 * n, 2 * n]
    if np.abs(col[0::2] - col[1::2]).max(initial=0.0) > tol:
        raise ValueError("last column entries are not duplicated within each block row")
    S = np.empty((n + 1, n + 1), dtype=A.dtype)
    S[:n, :n] = a + b
    S[:n, n] = col[0::2]
    S[n, :n] = A[2 * n, 0:2 * n:2] + A[2 * n, 1:2 * n:2]
    S[n, n] = A[2 * n, 2 * n]
    return S, a - b


PAIRINGS = ("sorted", "search", "given")


def _pair_gate_sorted(lam, mu, tol):
    """First 1-based index where the pointwise pairing condition fails, or None."""
    n = lam.size
    s_bar = lam.sum() / n
    c_bar = mu.sum() / n
    for i in range(1, n):
        if abs(c_bar - mu[i]) > s_bar - lam[i] + tol:
            return i + 1
    return None


def _search_pairing(lam, mu, tol):
    """Reorder ``mu`` so the pairing condition holds at every index, or None.

    For each choice of the entry paired with the Perron value, the rest is
    a bipartite matching problem between admissible (lambda_i, mu_j) pairs.
    """
    n = lam.size
    s_bar = lam.sum() / n
    c_bar = mu.sum() / n
    slack = s_bar - lam[1:]
    for lead in range(n):
        rest = np.delete(np.arange(n), lead)
        ok = np.abs(c_bar - mu[rest])[None, :] <= slack[:, None] + tol
        match = perfect_matching(ok)
        if match is not None:
            return np.concatenate([[mu[lead]], mu[rest[match]]])
    return None


def realize_pair_suleimanova(sigma_s, sigma_c, params=CompositionParams(), pairing="search", tol=None):
    """Permutative nonnegative matrix of order 2n realizing ``sigma_s`` with ``sign * gamma * sigma_c``.

    ``sigma_s`` must be a Suleimanova list; both lists are realized by
    permutatively equivalent matrices of the shape produced by
    ``paparella_matrix`` and combined with ``compose_even``.

    ``pairing`` decides which entries of the two lists share a row index:
    ``"sorted"`` pairs both lists sorted descending; ``"search"`` tries that
    first and falls back to a matching over all pairings; ``"given"`` keeps
    ``sigma_c`` in caller order against the sorted ``sigma_s``.
    """
    if pairing not in PAIRINGS:
        raise ValueError(f"pairing must be one of {PAIRINGS}, got {pairing!r}")
    sigma_s = as_spectrum(sigma_s)
    sigma_c = as_spectrum(sigma_c)
    if len(sigma_s) != len(sigma_c):
        raise ValueError(f"lists differ in length: {len(sigma_s)} vs {len(sigma_c)}")
    if not is_suleimanova(sigma_s):
        raise GateError("Suleimanova", f"{sigma_s.values.tolist()} is not a Suleimanova list")
    if np.any(np.abs(sigma_c.values.imag) > 0):
        raise GateError("real list", "the second list must be real")
    n = len(sigma_s)
    if n < 2:
        raise ValueError("lists need length >= 2")
    lam = np.sort(sigma_s.values.real)[::-1]
    scale = max(1.0, float(np.abs(lam).max()), float(np.abs(sigma_c.values).max()))
    if tol is None:
        tol = 1e-12 * scale

    total_s = lam.sum()
    total_c = sigma_c.values.real.sum()
    if abs(total_c) > total_s + tol:
        raise GateError("cc1", f"|sum of second list| = {abs(total_c)} exceeds sum of first = {total_s}")

    if pairing == "given":
        mu = sigma_c.values.real.copy()
    else:
        mu = np.sort(sigma_c.values.real)[::-1]
    bad = _pair_gate_sorted(lam, mu, tol)
    if bad is not None and pairing == "search":
        found = _search_pairing(lam, mu, tol)
        if found is None:
            raise GateError("cc2", f"fails under every pairing (sorted pairing fails at index {bad})")
        mu = found
    elif bad is not None:
        raise GateError("cc2", f"at index {bad} under {pairing} pairing")

    s_row = suleimanova_vector(lam)
    c1 = mu.sum() / n
    c_row = np.concatenate([[c1], c1 - mu[1:]])
    S = paparella_matrix(s_row)
    C = paparella_matrix(c_row)
    return compose_even(S, C, params)

