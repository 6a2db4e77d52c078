"""Eigenvalue lists, necessary-condition diagnostics and Suleimanova lists."""
from dataclasses import dataclass, field
import os

import numpy as np

from .matching import bottleneck_assignment


@dataclass(frozen=True, eq=False)
class Spectrum:
    """Ordered list of complex values with multiplicity.

    Order is meaningful only where an operation says so (circulant
    operations use DFT-index order); comparisons between spectra are
    multiset comparisons.
    """

    values: np.ndarray = field()

    def __post_init__(self):
        vals = np.array(self.values, dtype=np.complex128).ravel()
        if vals.size < 1:
            raise ValueError("a spectrum needs at least one value")
        if not np.all(np.isfinite(vals)):
            raise ValueError("spectrum values must be finite")
        vals.setflags(write=False)
        object.__setattr__(self, "values", vals)

    def __len__(self):
        return self.values.size

    def __iter__(self):
        return iter(self.values)

    def __getitem__(self, idx):
        return self.values[idx]

    def __array__(self, dtype=None, copy=None):
        return self.values if dtype is None else self.values.astype(dtype)

    def __repr__(self):
        return f"Spectrum({self.values.tolist()!r})"

    @property
    def spectral_radius(self):
        return float(np.max(np.abs(self.values)))

    @property
    def is_real(self):
        return bool(np.all(self.values.imag == 0))

    def sorted_desc(self):
        """Copy sorted by descending real part, ties by descending imaginary part."""
        order = np.lexsort((-self.values.imag, -self.values.real))
        return Spectrum(self.values[order])

    def union(self, other):
        return Spectrum(np.concatenate([self.values, as_spectrum(other).values]))

    def scaled(self, factor):
        return Spectrum(self.values * factor)


def as_spectrum(values):
    if isinstance(values, Spectrum):
        return values
    return Spectrum(values)


def default_tol(sigma):
    """``1e-9 * max(1, spectral radius)``, unless ``NIEP_TOL`` is set."""
    env = os.environ.get("NIEP_TOL")
    if env:
        return float(env)
    return 1e-9 * max(1.0, as_spectrum(sigma).spectral_radius)


@dataclass(frozen=True)
class NecessaryReport:
    perron_in_list: bool
    conjugate_closed: bool
    # (k, s_k, s_k >= -tol)
    power_sums: tuple
    # (k, m) with s_k^m > n^(m-1) s_km
    jll_violations: tuple

    @property
    def power_sums_ok(self):
        return all(ok for _, _, ok in self.power_sums)

    @property
    def passed(self):
        return (self.perron_in_list and self.conjugate_closed
                and self.power_sums_ok and not self.jll_violations)

    def failures(self):
        """Names of the failed conditions, empty when everything holds."""
        out = []
        if not self.perron_in_list:
            out.append("Perron value not in list")
        if not self.conjugate_closed:
            out.append("not closed under conjugation")
        out.extend(f"s_{k} < 0" for k, _, ok in self.power_sums if not ok)
        out.extend(f"JLL inequality fails at (k={k}, m={m})" for k, m in self.jll_violations)
        return out

    def to_json(self):
        return {
            "passed": self.passed,
            "perron_in_list": self.perron_in_list,
            "conjugate_closed": self.conjugate_closed,
            "power_sums": [[k, float(s), ok] for k, s, ok in self.power_sums],
            "jll_violations": [list(v) for v in self.jll_violations],
        }


def is_conjugate_closed(sigma, tol=None):
    """True iff conjugating every entry gives back the same multiset."""
    sigma = as_spectrum(sigma)
    if tol is None:
        tol = default_tol(sigma)
    _, dist = bottleneck_assignment(sigma.values, sigma.values.conj())
    return bool(dist.max() <= tol)


def power_sum(sigma, k):
    return complex(np.sum(as_spectrum(sigma).values ** k))


def check_necessary(sigma, K=4, M=3, tol=None):
    """Evaluate the classical necessary conditions for realizability.

    Power sums are compared on their real part. Tolerances are relative:
    ``tol`` is interpreted at the scale of the spectral radius, and the
    checks on ``s_k`` and on the JLL inequality are scaled by the natural
    size of the quantities compared (``n * rho^k`` and ``n^m * rho^(km)``).
    """
    sigma = as_spectrum(sigma)
    if K < 1 or M < 1:
        raise ValueError("K and M must be positive")
    if tol is None:
        tol = default_tol(sigma)
    vals = sigma.values
    n = vals.size
    rho = sigma.spectral_radius
    scale = max(1.0, rho)
    rel = tol / scale

    real_mask = np.abs(vals.imag) <= tol
    perron = bool(np.any(real_mask & (vals.real >= -tol) & (vals.real >= rho - tol)))

    sums = {}
    for k in range(1, K * M + 1):
        sums[k] = float(np.sum(vals ** k).real)
    power_sums = tuple(
        (k, sums[k], sums[k] >= -rel * n * scale ** k) for k in range(1, K + 1)
    )
    jll = []
    for k in range(1, K + 1):
        for m in range(2, M + 1):
            lhs = sums[k] ** m
            rhs = n ** (m - 1) * sums[k * m]
            if lhs > rhs + rel * n ** m * scale ** (k * m):
                jll.append((k, m))
    return NecessaryReport(
        perron_in_list=perron,
        conjugate_closed=is_conjugate_closed(sigma, tol),
        power_sums=power_sums,
        jll_violations=tuple(jll),
    )


def is_suleimanova(sigma, tol=None):
    """One positive value, the rest nonpositive, nonnegative sum (any order)."""
    sigma = as_spectrum(sigma)
    if tol is None:
        tol = default_tol(sigma)
    vals = sigma.values
    if np.any(np.abs(vals.imag) > tol):
        return False
    re = np.sort(vals.real)[::-1]
    if not re[0] > 0:
        return False
    if np.any(re[1:] > tol):
        return False
    return bool(re.sum() >= -tol)
