"""Eigenvalues, spectrum matching and structured eigenvector checks."""
from dataclasses import dataclass
import os

import numpy as np

from ..errors import EigenConvergenceError
from ..matching import bottleneck_assignment
from ..spectra import Spectrum, as_spectrum

#: QR sweeps allowed per deflated eigenvalue before giving up.
MAX_SWEEPS = 60


def _kernel_for(backend):
    from . import _kernel, _qr_py
    if backend is None:
        return _kernel
    if backend == "python":
        return _qr_py
    if backend == "cython":
        from . import _qr
        return _qr
    raise ValueError(f"unknown backend {backend!r}")


def _square(A):
    A = np.asarray(A)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {A.shape}")
    if A.shape[0] < 1:
        raise ValueError("matrix must have order >= 1")
    if not np.all(np.isfinite(A)):
        raise ValueError("matrix entries must be finite")
    return A


def eigenvalues(A, backend=None):
    """All eigenvalues of ``A`` with multiplicity.

    Householder reduction to Hessenberg form followed by single-shift
    complex QR with Wilkinson shifts. Output is sorted by descending real
    part, then descending imaginary part.

    Raises
    ------
    EigenConvergenceError
        If some eigenvalue fails to deflate within ``MAX_SWEEPS`` sweeps;
        the converged ones are attached as ``partial``.
    """
    A = _square(A)
    kernel = _kernel_for(backend)
    h = np.array(A, dtype=np.complex128, order="C", copy=True)
    n = h.shape[0]
    w = np.zeros(n, dtype=np.complex128)
    kernel.hessenberg(h)
    status = kernel.hqr(h, w, MAX_SWEEPS)
    if status:
        raise EigenConvergenceError(
            f"QR iteration did not converge for {status} of {n} eigenvalues",
            partial=w[status:].copy(),
        )
    return Spectrum(w).sorted_desc()


def charpoly_oracle(A):
    """Characteristic polynomial coefficients by the Faddeev-LeVerrier recurrence.

    Returns ``[1, c_{n-1}, ..., c_0]`` (highest degree first) so that
    ``numpy.polyval`` evaluates ``det(x I - A)``. Uses traces of matrix
    products only; no eigendecomposition is involved.
    """
    A = _square(A)
    n = A.shape[0]
    if n > 12:
        raise ValueError("charpoly_oracle is limited to order <= 12")
    A = A.astype(np.complex128)
    coeffs = np.zeros(n + 1, dtype=np.complex128)
    coeffs[0] = 1.0
    Mk = np.zeros_like(A)
    eye = np.eye(n, dtype=np.complex128)
    for k in range(1, n + 1):
        Mk = A @ Mk + coeffs[k - 1] * eye
        coeffs[k] = -np.trace(A @ Mk) / k
    return coeffs


def verification_tol(A):
    """``1e-9 * max(1, ||A||_F)``, unless ``NIEP_TOL`` is set."""
    env = os.environ.get("NIEP_TOL")
    if env:
        return float(env)
    return 1e-9 * max(1.0, float(np.linalg.norm(np.asarray(A))))


@dataclass(frozen=True)
class VerificationReport:
    expected: Spectrum
    computed: Spectrum
    # (expected index, computed index, distance)
    matching: tuple
    max_distance: float
    passed: bool
    tol: float
    residuals: tuple = None
    skipped: tuple = ()

    def to_json(self):
        out = {
            "passed": self.passed,
            "max_distance": self.max_distance,
            "tol": self.tol,
            "pairs": [[int(i), int(j), float(d)] for i, j, d in self.matching],
            "residuals": None if self.residuals is None else [float(r) for r in self.residuals],
            "expected": [[v.real, v.imag] for v in self.expected.values.tolist()],
            "computed": [[v.real, v.imag] for v in self.computed.values.tolist()],
        }
        if self.skipped:
            out["skipped"] = list(self.skipped)
        return out


def spectra_match(expected, computed, tol):
    """Multiset comparison of two spectra of equal length.

    The pairing minimises the largest matched distance and, among those,
    the total distance. Passes iff that largest distance is ``<= tol``.
    """
    expected = as_spectrum(expected)
    computed = as_spectrum(computed)
    if len(expected) != len(computed):
        raise ValueError(f"length mismatch: {len(expected)} expected vs {len(computed)} computed")
    perm, dist = bottleneck_assignment(expected.values, computed.values)
    max_distance = float(dist.max())
    return VerificationReport(
        expected=expected,
        computed=computed,
        matching=tuple((i, int(perm[i]), float(dist[i])) for i in range(len(expected))),
        max_distance=max_distance,
        passed=max_distance <= tol,
        tol=float(tol),
    )


def verify_matrix(A, expected, tol=None):
    """Compute ``eigenvalues(A)`` and match them against ``expected``."""
    if tol is None:
        tol = verification_tol(A)
    return spectra_match(expected, eigenvalues(A), tol)


def inverse_iteration(A, lam, steps=3, tol=None):
    """Eigenvector for the computed eigenvalue ``lam``, or None if it does not settle.

    The shift is nudged by ``1e-10 * max(1, ||A||_F)`` so the solve is never
    exactly singular.
    """
    A = _square(A).astype(np.complex128)
    n = A.shape[0]
    scale = max(1.0, float(np.linalg.norm(A)))
    if tol is None:
        tol = 1e-8 * scale * n
    shifted = A - (lam + 1e-10 * scale) * np.eye(n)
    rng = np.random.default_rng(n)
    v = rng.standard_normal(n) + 1j * rng.standard_normal(n)
    v /= np.linalg.norm(v)
    try:
        for _ in range(steps):
            v = np.linalg.solve(shifted, v)
            v /= np.linalg.norm(v)
    except np.linalg.LinAlgError:
        return None
    if not np.all(np.isfinite(v)) or np.linalg.norm(A @ v - lam * v) > tol:
        return None
    return v


def eigenpairs(A, steps=3):
    """``[(lam, v)]`` for every eigenvalue of ``A``; ``v`` is None where inverse iteration failed."""
    return [(lam, inverse_iteration(A, lam, steps)) for lam in eigenvalues(A)]


def structured_eigvec_check(A, S_pairs, C_pairs, odd=False, tol=None):
    """Lift eigenpairs of the compressed matrices to eigenpairs of ``A``.

    An eigenpair ``(lam, v)`` of S becomes ``w`` with blocks ``v_j (1, 1)``
    (plus the trailing scalar ``v_{n+1}`` when ``odd``); an eigenpair
    ``(mu, x)`` of C becomes ``y`` with blocks ``x_j (1, -1)`` (and a zero
    tail when ``odd``). ``C_pairs`` refers to the C recovered by
    ``extract_even``/``extract_odd``, i.e. already scaled by the composition
    sign and gamma. Pairs whose vector is None are reported as skipped.

    Residuals are ``||A w - lam w|| / ||w||``; ``computed`` holds the
    Rayleigh quotients of the lifted vectors.
    """
    A = _square(A).astype(np.complex128)
    N = A.shape[0]
    if tol is None:
        tol = verification_tol(A)
    e = np.array([1.0, 1.0])
    f = np.array([1.0, -1.0])

    lifted = []
    for lam, v in S_pairs:
        if v is None:
            lifted.append((lam, None))
            continue
        v = np.asarray(v, dtype=np.complex128)
        head, tail = (v[:-1], v[-1:]) if odd else (v, v[:0])
        w = np.concatenate([np.kron(head, e), tail])
        lifted.append((lam, w))
    for mu, x in C_pairs:
        if x is None:
            lifted.append((mu, None))
            continue
        x = np.asarray(x, dtype=np.complex128)
        y = np.concatenate([np.kron(x, f), np.zeros(1 if odd else 0)])
        lifted.append((mu, y))

    residuals, rayleigh, skipped = [], [], []
    for idx, (lam, vec) in enumerate(lifted):
        if vec is None:
            skipped.append(idx)
            residuals.append(float("nan"))
            rayleigh.append(lam)
            continue
        if vec.size != N:
            raise ValueError(f"lifted vector has length {vec.size}, matrix has order {N}")
        nrm = np.linalg.norm(vec)
        Av = A @ vec
        residuals.append(float(np.linalg.norm(Av - lam * vec) / nrm))
        rayleigh.append(np.vdot(vec, Av) / nrm ** 2)

    expected = Spectrum([lam for lam, _ in lifted])
    computed = Spectrum(rayleigh)
    dist = np.abs(expected.values - computed.values)
    checked = [r for i, r in enumerate(residuals) if i not in skipped]
    return VerificationReport(
        expected=expected,
        computed=computed,
        matching=tuple((i, i, float(dist[i])) for i in range(len(lifted))),
        max_distance=float(dist.max()) if len(lifted) else 0.0,
        passed=bool(checked) and max(checked) <= tol,
        tol=float(tol),
        residuals=tuple(residuals),
        skipped=tuple(skipped),
    )
