"""Nonnegative inverse eigenvalue constructions."""
from .blockcomp import (
    CompositionParams, OddTail, check_majorization, compose_even, compose_odd, compose_odd_sym,
    extract_even, extract_odd, odd_sym_parts, realize_pair_suleimanova,
)
from .circulant import (
    CirculantRow, GuoParams, circulant_from_spectrum, circulant_matrix, circulant_spectrum,
    dft_matrix, guo_pair_compose, guo_pair_construct, guo_perturb,
)
from .eig import BACKEND, charpoly_oracle, eigenvalues, verify_matrix
from .errors import EigenConvergenceError, GateError
from .permutative import (
    PermutationTuple, are_permutatively_equivalent, build_tau_matrix, common_tau, detect_permutative,
    paparella_matrix, realize_suleimanova,
)
from .spectra import Spectrum, check_necessary, is_conjugate_closed, is_suleimanova

__all__ = [
    "BACKEND", "CirculantRow", "CompositionParams", "EigenConvergenceError", "GateError", "GuoParams",
    "OddTail", "PermutationTuple", "Spectrum", "are_permutatively_equivalent", "build_tau_matrix",
    "charpoly_oracle", "check_majorization", "check_necessary", "circulant_from_spectrum",
    "circulant_matrix", "circulant_spectrum", "common_tau", "compose_even", "compose_odd",
    "compose_odd_sym", "detect_permutative", "dft_matrix", "eigenvalues", "extract_even", "extract_odd",
    "guo_pair_compose", "guo_pair_construct", "guo_perturb", "is_conjugate_closed", "is_suleimanova",
    "odd_sym_parts", "paparella_matrix", "realize_pair_suleimanova", "realize_suleimanova",
    "verify_matrix",
]
