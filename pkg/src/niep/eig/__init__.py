"""Independent verification engine.

The QR kernel comes from the compiled ``_qr`` extension when it is
importable, otherwise from ``_qr_py``. Set ``NIEP_PURE_PYTHON=1`` to force
the fallback.
"""
import os

from . import _qr_py

if os.environ.get("NIEP_PURE_PYTHON"):
    _kernel = _qr_py
    BACKEND = "python"
else:
    try:
        from . import _qr as _kernel
        BACKEND = "cython"
    except ImportError:
        _kernel = _qr_py
        BACKEND = "python"

from .core import (  # noqa: E402
    VerificationReport,
    charpoly_oracle,
    eigenpairs,
    eigenvalues,
    inverse_iteration,
    spectra_match,
    structured_eigvec_check,
    verification_tol,
    verify_matrix,
)

__all__ = [
    "BACKEND",
    "VerificationReport",
    "charpoly_oracle",
    "eigenpairs",
    "eigenvalues",
    "inverse_iteration",
    "spectra_match",
    "structured_eigvec_check",
    "verification_tol",
    "verify_matrix",
]
