"""Wootters concurrence for two-qubit states.

The mixed-state value comes from the spectrum of rho @ rho_tilde, where
rho_tilde is the spin-flipped matrix (sy1 sy2) rho* (sy1 sy2): take the
nonnegative square roots of the eigenvalue moduli in decreasing order
xi1 >= ... >= xi4 and evaluate max(0, xi1 - xi2 - xi3 - xi4).  A pure state
reduces to 2 |a_ee a_gg - a_ge a_eg| over the product-basis amplitudes,
which serves as an independent oracle for the matrix route.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .algebra import check_density_matrix, pauli
from .errors import ContractViolationError, NumericalDegeneracyError

_MODULUS_CLIP = 1e-12  # eigenvalue moduli below this are treated as exact zeros
_IMAG_FAIL = 1e-6


@dataclass(frozen=True)
class ConcurrenceResult:
    """Concurrence value together with the sorted spectrum roots xi1 >= ... >= xi4."""

    value: float
    xi: np.ndarray


def spin_flip(rho: np.ndarray) -> np.ndarray:
    """Spin-flipped matrix (sy1 sy2) rho* (sy1 sy2); an involution on states."""
    rho = check_density_matrix(rho)
    yy = pauli("y", 1) @ pauli("y", 2)
    return yy @ rho.conj() @ yy


def _from_moduli(moduli: np.ndarray) -> ConcurrenceResult:
    moduli = np.where(moduli < _MODULUS_CLIP, 0.0, moduli)
    xi = np.sort(np.sqrt(moduli))[::-1]
    value = max(0.0, float(xi[0] - xi[1] - xi[2] - xi[3]))
    return ConcurrenceResult(value=value, xi=xi)


def concurrence(rho: np.ndarray) -> ConcurrenceResult:
    """Concurrence of a two-qubit density matrix.

    Uses a general eigensolver on the non-Hermitian product rho @ rho_tilde,
    whose spectrum is real and nonnegative for physical states; eigenvalues
    with imaginary part at or above 1e-6 (or NaN moduli) abort with
    :class:`NumericalDegeneracyError` carrying the offending spectrum.
    """
    rho = check_density_matrix(rho)
    eigenvalues = np.linalg.eigvals(rho @ spin_flip(rho))
    moduli = np.abs(eigenvalues)
    if np.any(np.isnan(moduli)) or float(np.abs(eigenvalues.imag).max()) >= _IMAG_FAIL:
        raise NumericalDegeneracyError(
            f"spectrum of rho @ rho_tilde is not numerically real-nonnegative: {eigenvalues}"
        )
    return _from_moduli(moduli)


def concurrence_hermitian(rho: np.ndarray) -> ConcurrenceResult:
    """Concurrence via the Hermitian construction sqrt(rho) rho_tilde sqrt(rho).

    Mathematically identical to :func:`concurrence`; kept as a second,
    numerically safer route for cross-checking the eigensolver.
    """
    rho = check_density_matrix(rho)
    w, v = np.linalg.eigh(0.5 * (rho + rho.conj().T))
    root = (v * np.sqrt(np.clip(w, 0.0, None))) @ v.conj().T
    product = root @ spin_flip(rho) @ root
    moduli = np.clip(np.linalg.eigvalsh(0.5 * (product + product.conj().T)), 0.0, None)
    return _from_moduli(moduli)


def concurrence_pure(psi: np.ndarray) -> float:
    """Concurrence of a normalized pure state: 2 |a_ee a_gg - a_ge a_eg|."""
    psi = np.asarray(psi, dtype=complex)
    if psi.shape != (4,):
        raise ContractViolationError(f"expected a length-4 state vector, got {psi.shape}")
    norm = float(np.linalg.norm(psi))
    if abs(norm - 1.0) > 1e-10:
        raise ContractViolationError(f"state vector norm {norm} differs from 1 beyond 1e-10")
    return 2.0 * abs(psi[0] * psi[3] - psi[1] * psi[2])
