"""Hamiltonians for the driven Ising pair and its closed-system dynamics.

The model couples the two atoms through ``2J * sz1 * sz2`` and drives both
with equal strength ``alpha`` along y.  All rates are expressed in units of
the single-atom decay rate, which is therefore fixed at 1 and never appears
explicitly.  Closed-system time is handled in the scaled form tau = J * t;
master-equation time (units of inverse decay rate) is a separate argument
wherever it occurs, never an implicit conversion.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .algebra import is_hermitian, ket, pauli
from .errors import ContractViolationError, DomainError


@dataclass(frozen=True)
class ModelParams:
    """Scaled model parameters: drive alpha, zz coupling J, feedback strength lam.

    alpha and J are in units of the decay rate, lam in units of its square
    root.  The decay rate itself is 1 by convention.
    """

    alpha: float
    J: float
    lam: float = 0.0

    @property
    def eta(self) -> float:
        """Drive-to-coupling ratio alpha / J; requires J != 0."""
        if self.J == 0.0:
            raise DomainError("eta = alpha/J is undefined at J = 0")
        return self.alpha / self.J


@dataclass(frozen=True)
class EigenSystem:
    """Energies and eigenvectors of the total Hamiltonian.

    ``vectors[:, i]`` belongs to ``values[i]``.  The closed-form system keeps
    the fixed ordering (-2*sqrt(alpha^2+J^2), -2J, +2J, +2*sqrt(alpha^2+J^2)),
    which is ascending for J > 0; the numeric path sorts ascending.
    """

    values: np.ndarray
    vectors: np.ndarray


def build_h_int(p: ModelParams) -> np.ndarray:
    """Ising interaction 2J sz1 sz2, i.e. diag(2J, -2J, -2J, 2J)."""
    return 2.0 * p.J * pauli("z", 1) @ pauli("z", 2)


def build_h_drive(p: ModelParams) -> np.ndarray:
    """Local driving alpha (sy1 + sy2)."""
    return p.alpha * (pauli("y", 1) + pauli("y", 2))


def build_h_tot(p: ModelParams) -> np.ndarray:
    return build_h_drive(p) + build_h_int(p)


def _require_closed_form(p: ModelParams) -> float:
    if p.J <= 0.0:
        raise DomainError(
            "closed-form eigensystem requires J > 0; use numeric_eigensystem instead"
        )
    if p.alpha == 0.0:
        raise DomainError(
            "closed-form eigensystem is singular at alpha = 0 (eta = 0); "
            "use numeric_eigensystem instead"
        )
    return p.eta


def analytic_eigensystem(p: ModelParams) -> EigenSystem:
    """Closed-form eigensystem of the total Hamiltonian.

    The two eta-dependent eigenvectors mix (|gg> - |ee>) with an imaginary
    amplitude on (|eg> + |ge>); the other two are the Bell-like combinations
    (|eg> - |ge>)/sqrt(2) and (|gg> + |ee>)/sqrt(2) at energies -2J and +2J.
    """
    eta = _require_closed_form(p)
    s = np.sqrt(1.0 + eta * eta)
    d1 = 2.0 * np.sqrt(1.0 + eta * eta + s)
    d4 = 2.0 * np.sqrt(1.0 + eta * eta - s)
    r2 = np.sqrt(2.0)

    # basis order: ee, ge, eg, gg
    psi1 = np.array([-eta / d1, 1j * (1 + s) / d1, 1j * (1 + s) / d1, eta / d1])
    psi2 = np.array([0.0, -1.0 / r2, 1.0 / r2, 0.0], dtype=complex)
    psi3 = np.array([1.0 / r2, 0.0, 0.0, 1.0 / r2], dtype=complex)
    psi4 = np.array([-eta / d4, 1j * (1 - s) / d4, 1j * (1 - s) / d4, eta / d4])

    e_gap = 2.0 * np.sqrt(p.alpha**2 + p.J**2)
    values = np.array([-e_gap, -2.0 * p.J, 2.0 * p.J, e_gap])
    vectors = np.column_stack([psi1, psi2, psi3, psi4])
    return EigenSystem(values=values, vectors=vectors)


def numeric_eigensystem(h: np.ndarray, tol: float = 1e-12) -> EigenSystem:
    """Dense Hermitian eigendecomposition, eigenvalues ascending."""
    h = np.asarray(h, dtype=complex)
    if not is_hermitian(h, tol):
        raise ContractViolationError("numeric_eigensystem requires a Hermitian matrix")
    values, vectors = np.linalg.eigh(h)
    return EigenSystem(values=values, vectors=vectors)


def initial_expansion(p: ModelParams) -> np.ndarray:
    """Coefficients of |gg> in the closed-form eigenbasis.

    The second coefficient vanishes identically: |gg> has no overlap with the
    antisymmetric eigenvector.
    """
    eta = _require_closed_form(p)
    s = np.sqrt(1.0 + eta * eta)
    c1 = -(1.0 - s) * np.sqrt(1.0 + eta * eta + s) / (2.0 * eta * s)
    c4 = (1.0 + s) * np.sqrt(1.0 + eta * eta - s) / (2.0 * eta * s)
    return np.array([c1, 0.0, 1.0 / np.sqrt(2.0), c4], dtype=complex)


def evolve_closed(p: ModelParams, tau: float) -> np.ndarray:
    """State at scaled time tau = J*t, starting from |gg> and evolving under H_tot.

    Implemented by phase-rotating each eigencomponent with exp(-i E t); this
    matches dense matrix exponentiation of the Hamiltonian.
    """
    es = analytic_eigensystem(p)
    coeffs = initial_expansion(p)
    t = tau / p.J
    phases = np.exp(-1j * es.values * t)
    return es.vectors @ (coeffs * phases)


def marker_observable() -> np.ndarray:
    """Difference of the two x Paulis, whose variance tracks pair correlations."""
    return pauli("x", 1) - pauli("x", 2)


def marker_variance(p: ModelParams, tau: float) -> float:
    """Closed-form variance of the marker observable over the evolved state.

    Equals 2 - eta^2/(1+eta^2) * (1 - cos(4 tau sqrt(1+eta^2))); it starts at
    2 and dips below 2 at almost every later time.
    """
    eta = _require_closed_form(p)
    s2 = 1.0 + eta * eta
    return 2.0 - (eta * eta / s2) * (1.0 - np.cos(4.0 * tau * np.sqrt(s2)))


def marker_variance_numeric(p: ModelParams, tau: float) -> float:
    """Variance of the marker computed from expectation values over evolve_closed."""
    psi = evolve_closed(p, tau)
    obs = marker_observable()
    mean = np.vdot(psi, obs @ psi).real
    mean_sq = np.vdot(psi, obs @ (obs @ psi)).real
    return mean_sq - mean * mean


def ground_pair_state() -> np.ndarray:
    """The initial condition |g>1|g>2 used throughout."""
    return ket("gg")
