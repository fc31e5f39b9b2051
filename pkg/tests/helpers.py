"""Shared test utilities: random states and independent oracle routines."""

from __future__ import annotations

import numpy as np


def random_pure_state(rng: np.random.Generator) -> np.ndarray:
    psi = rng.standard_normal(4) + 1j * rng.standard_normal(4)
    return psi / np.linalg.norm(psi)


def random_density_matrix(rng: np.random.Generator) -> np.ndarray:
    raw = rng.standard_normal((4, 4)) + 1j * rng.standard_normal((4, 4))
    rho = raw @ raw.conj().T
    return rho / np.trace(rho).real


def random_hermitian(rng: np.random.Generator, dim: int = 4) -> np.ndarray:
    raw = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    return raw + raw.conj().T


def random_unitary(rng: np.random.Generator, dim: int = 2) -> np.ndarray:
    raw = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    q, r = np.linalg.qr(raw)
    return q * (np.diag(r) / np.abs(np.diag(r)))


def local_unitary(rng: np.random.Generator) -> np.ndarray:
    """kron-embedded product of independent single-atom unitaries (site 1 on the
    second factor, matching the package basis ordering)."""
    u1 = random_unitary(rng)
    u2 = random_unitary(rng)
    return np.kron(u2, u1)


def apply_dissipator_direct(a: np.ndarray, x: np.ndarray) -> np.ndarray:
    """Direct evaluation of a X a+ - (a+ a X + X a+ a)/2, independent of any
    superoperator machinery."""
    ad = a.conj().T
    return a @ x @ ad - 0.5 * (ad @ a @ x + x @ ad @ a)


def projector(v: np.ndarray) -> np.ndarray:
    return np.outer(v, v.conj())
