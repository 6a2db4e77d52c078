"""Circulant realizations and Guo perturbations.

Spectra handled here are in DFT-index order: position k holds the
eigenvalue belonging to the root of unity w^k, w = exp(2 pi i / n), so a
real circulant has conjugate pairs at positions k and n - k.
"""
from dataclasses import dataclass
import logging

import numpy as np

from .blockcomp import CompositionParams, compose_even
from .errors import GateError
from .spectra import Spectrum, as_spectrum

log = logging.getLogger(__name__)

VARIANTS = ("general", "even-middle")


@dataclass(frozen=True, eq=False)
class CirculantRow:
    """First row of a circulant matrix."""

    row: np.ndarray

    def __post_init__(self):
        row = np.array(self.row, dtype=np.complex128).ravel()
        if row.size < 1:
            raise ValueError("a circulant row needs at least one entry")
        if not np.all(np.isfinite(row)):
            raise ValueError("circulant row entries must be finite")
        row.setflags(write=False)
        object.__setattr__(self, "row", row)

    def __len__(self):
        return self.row.size

    def max_imag(self):
        return float(np.abs(self.row.imag).max())

    def is_real(self, tol=1e-12):
        return self.max_imag() <= tol * max(1.0, float(np.abs(self.row).max()))

    def real(self):
        return self.row.real.copy()

    def matrix(self):
        return circulant_matrix(self.row)


def _as_row(r):
    return r.row if isinstance(r, CirculantRow) else np.asarray(r)


def circulant_matrix(r):
    """``C[j, k] = r[(k - j) mod n]``: each row is the previous one shifted right."""
    r = np.asarray(_as_row(r)).ravel()
    n = r.size
    idx = (np.arange(n)[None, :] - np.arange(n)[:, None]) % n
    return r[idx]


def dft_matrix(n):
    """``F[k, j] = w^(k j)`` with ``w = exp(2 pi i / n)``; exponents reduced mod n."""
    k = np.arange(n)
    return np.exp(2j * np.pi * (np.outer(k, k) % n) / n)


def circulant_spectrum(r):
    """Eigenvalues of the circulant with first row ``r``, in DFT-index order."""
    r = np.asarray(_as_row(r), dtype=np.complex128).ravel()
    return Spectrum(dft_matrix(r.size) @ r)


def circulant_from_spectrum(sigma):
    """First row ``(1/n) conj(F) sigma`` of the circulant with spectrum ``sigma``.

    The row is real exactly when ``sigma[k] == conj(sigma[n - k])``; a
    complex row is returned as is, check ``CirculantRow.is_real``.
    """
    vals = as_spectrum(sigma).values
    n = vals.size
    return CirculantRow(dft_matrix(n).conj() @ vals / n)


@dataclass(frozen=True)
class GuoParams:
    t: float
    theta: float = 0.0
    branch: int = 1
    variant: str = "general"

    def __post_init__(self):
        if self.t < 0:
            raise ValueError(f"t must be nonnegative, got {self.t}")
        if self.branch not in (1, -1):
            raise ValueError(f"branch must be +1 or -1, got {self.branch}")
        if self.variant not in VARIANTS:
            raise ValueError(f"variant must be one of {VARIANTS}, got {self.variant!r}")


def _perturb(vals, t, theta, branch, variant):
    n = vals.size
    out = vals.astype(np.complex128).copy()
    if variant == "general":
        if n < 3:
            raise ValueError("the general perturbation needs n >= 3")
        shift = branch * t * np.exp(1j * theta)
        out[0] += 2 * t
        out[1] += shift
        out[n - 1] += np.conj(shift)
    else:
        if n % 2:
            raise ValueError(f"the even-middle perturbation needs n = 2m + 2, got n = {n}")
        out[0] += t
        out[n // 2] += branch * t
    return out


def guo_perturb(sigma, params):
    """Perturbed spectrum that stays realizable by a nonnegative circulant.

    ``general``: the Perron position gains ``2t`` and positions 1 and n-1
    gain ``branch * t * exp(+-i theta)``. ``even-middle`` (n even): the
    Perron position gains ``t`` and position n/2 gains ``branch * t``.
    """
    vals = as_spectrum(sigma).values
    return Spectrum(_perturb(vals, params.t, params.theta, params.branch, params.variant))


@dataclass(frozen=True, eq=False)
class GuoPairResult:
    matrix: np.ndarray
    S: np.ndarray
    C: np.ndarray
    sigma_s: Spectrum
    sigma_c: Spectrum
    expected: Spectrum
    clamped: int


def guo_pair_construct(sigma1, sigma2, t1, t2, branch=1, params=CompositionParams(), tol=None):
    """Perturb two circulant spectra (even-middle, same branch) and interleave them.

    ``sigma1`` and ``sigma2`` are spectra of circulants S and C of even
    order with S, S + C and S - C nonnegative; ``t1 >= |t2|``. Returns the
    block matrix together with the perturbed circulants and the spectrum it
    should have. Perturbed rows are rechecked numerically; negatives above
    ``-tol`` are roundoff and are clamped to zero (counted in ``clamped``).
    """
    vals1 = as_spectrum(sigma1).values
    vals2 = as_spectrum(sigma2).values
    n = vals1.size
    if vals2.size != n:
        raise ValueError(f"spectra differ in length: {n} vs {vals2.size}")
    if n % 2:
        raise ValueError(f"order must be even (n = 2m + 2), got {n}")
    if branch not in (1, -1):
        raise ValueError(f"branch must be +1 or -1, got {branch}")
    if t1 < abs(t2):
        raise GateError("t1 >= |t2|", f"t1 = {t1}, t2 = {t2}")

    r_s = circulant_from_spectrum(vals1)
    r_c = circulant_from_spectrum(vals2)
    scale = max(1.0, float(np.abs(r_s.row).max()), float(np.abs(r_c.row).max()), abs(t1))
    if tol is None:
        tol = 1e-12 * scale
    if not (r_s.is_real(tol) and r_c.is_real(tol)):
        raise GateError("real circulants", "spectra are not conjugate-closed in DFT order")
    rs, rc = r_s.real(), r_c.real()
    if np.any(rs + rc < -tol) or np.any(rs - rc < -tol):
        raise GateError("S, S+C, S-C nonnegative", "the unperturbed circulants fail the majorization gate")

    sig_s = _perturb(vals1, t1, 0.0, branch, "even-middle")
    sig_c = _perturb(vals2, t2, 0.0, branch, "even-middle")
    ts = circulant_from_spectrum(sig_s)
    tc = circulant_from_spectrum(sig_c)
    if not (ts.is_real(tol) and tc.is_real(tol)):
        raise GateError("real circulants", "perturbed rows are not real")
    plus = ts.real() + tc.real()
    minus = ts.real() - tc.real()
    if np.any(plus < -tol) or np.any(minus < -tol):
        raise GateError("perturbed rows nonnegative", f"min(S+C) = {plus.min()}, min(S-C) = {minus.min()}")
    clamped = int(np.sum(plus < 0) + np.sum(minus < 0))
    if clamped:
        log.warning("clamped %d roundoff negatives in perturbed rows", clamped)
    plus = np.maximum(plus, 0.0)
    minus = np.maximum(minus, 0.0)
    S = circulant_matrix((plus + minus) / 2)
    C = circulant_matrix((plus - minus) / 2)
    M = compose_even(S, C, params)
    sigma_s = Spectrum(sig_s)
    sigma_c = Spectrum(sig_c)
    return GuoPairResult(
        matrix=M,
        S=S,
        C=C,
        sigma_s=sigma_s,
        sigma_c=sigma_c,
        expected=sigma_s.union(sigma_c.scaled(params.factor)),
        clamped=clamped,
    )


def guo_pair_compose(sigma1, sigma2, t1, t2, branch=1, params=CompositionParams(), tol=None):
    """Permutative nonnegative matrix realizing both perturbed lists; see ``guo_pair_construct``."""
    return guo_pair_construct(sigma1, sigma2, t1, t2, branch, params, tol).matrix
