"""Fixed-basis matrix algebra for a pair of two-level atoms.

Everything in this package works with dense complex matrices over the
four-state product basis

    index 0: |e>1 |e>2      index 1: |g>1 |e>2
    index 2: |e>1 |g>2      index 3: |g>1 |g>2

so a site-1 operator embeds as kron(I, op) and a site-2 operator as
kron(op, I).  Single-site matrices are written in the {|e>, |g>} order with
sigma_z = diag(+1, -1), sigma_y = [[0, -i], [i, 0]], and the lowering
operator |g><e| = (sigma_x - i*sigma_y) / 2.

Superoperators are 16x16 matrices acting on column-stacked 4x4 matrices,
so vec(A @ X @ B) == kron(B.T, A) @ vec(X).
"""

from __future__ import annotations

import numpy as np

from .errors import ContractViolationError

DIM = 4
ATOL = 1e-12  # default tolerance for algebraic identity checks

BASIS_LABELS = ("ee", "ge", "eg", "gg")

_ID2 = np.eye(2, dtype=complex)
_SINGLE_PAULI = {
    "x": np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex),
    "y": np.array([[0.0, -1.0j], [1.0j, 0.0]], dtype=complex),
    "z": np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex),
}
_SINGLE_LOWER = np.array([[0.0, 0.0], [1.0, 0.0]], dtype=complex)  # |g><e|


def _embed(op: np.ndarray, site: int) -> np.ndarray:
    if site == 1:
        return np.kron(_ID2, op)
    if site == 2:
        return np.kron(op, _ID2)
    raise ContractViolationError(f"site must be 1 or 2, got {site!r}")


def pauli(axis: str, site: int) -> np.ndarray:
    """Pauli operator on one atom, identity on the other.

    ``pauli('z', site)`` has +1 on the excited and -1 on the ground state of
    that atom, e.g. ``pauli('z', 1) == diag(1, -1, 1, -1)``.
    """
    if axis not in _SINGLE_PAULI:
        raise ContractViolationError(f"axis must be one of 'x', 'y', 'z', got {axis!r}")
    return _embed(_SINGLE_PAULI[axis], site)


def lowering(site: int) -> np.ndarray:
    """Lowering operator |g><e| on one atom, equal to (pauli x - i pauli y)/2."""
    return _embed(_SINGLE_LOWER, site)


def collective_lowering(sign: str) -> np.ndarray:
    """Symmetric ('+') or antisymmetric ('-') combination of the two lowering ops."""
    if sign == "+":
        return (lowering(1) + lowering(2)) / np.sqrt(2.0)
    if sign == "-":
        return (lowering(1) - lowering(2)) / np.sqrt(2.0)
    raise ContractViolationError(f"sign must be '+' or '-', got {sign!r}")


def ket(label: str) -> np.ndarray:
    """Product basis vector; the first letter is atom 1, e.g. ket('ge') = |g>1|e>2."""
    if label not in BASIS_LABELS:
        raise ContractViolationError(f"label must be one of {BASIS_LABELS}, got {label!r}")
    v = np.zeros(DIM, dtype=complex)
    v[BASIS_LABELS.index(label)] = 1.0
    return v


def vectorize(m: np.ndarray) -> np.ndarray:
    """Column-stack a 4x4 matrix into a 16-vector."""
    m = np.asarray(m, dtype=complex)
    if m.shape != (DIM, DIM):
        raise ContractViolationError(f"expected a {DIM}x{DIM} matrix, got shape {m.shape}")
    return m.reshape(-1, order="F")


def unvectorize(v: np.ndarray) -> np.ndarray:
    """Inverse of :func:`vectorize`; the round trip is exact."""
    v = np.asarray(v, dtype=complex)
    if v.shape != (DIM * DIM,):
        raise ContractViolationError(f"expected a length-{DIM * DIM} vector, got shape {v.shape}")
    return v.reshape(DIM, DIM, order="F")


def sprepost(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Superoperator for X -> a @ X @ b under column stacking."""
    return np.kron(np.asarray(b, dtype=complex).T, np.asarray(a, dtype=complex))


def commutator_superoperator(x: np.ndarray) -> np.ndarray:
    """Superoperator for X -> [x, X]."""
    eye = np.eye(DIM, dtype=complex)
    return sprepost(x, eye) - sprepost(eye, x)


def dissipator(a: np.ndarray) -> np.ndarray:
    """Superoperator for X -> a X a+ - (a+ a X + X a+ a) / 2."""
    a = np.asarray(a, dtype=complex)
    ad = a.conj().T
    ada = ad @ a
    eye = np.eye(DIM, dtype=complex)
    return sprepost(a, ad) - 0.5 * (sprepost(ada, eye) + sprepost(eye, ada))


def is_hermitian(m: np.ndarray, tol: float = ATOL) -> bool:
    m = np.asarray(m)
    return bool(np.abs(m - m.conj().T).max() <= tol)


def check_density_matrix(
    rho: np.ndarray,
    *,
    herm_tol: float = 1e-10,
    trace_tol: float = 1e-10,
    eig_floor: float = -1e-8,
) -> np.ndarray:
    """Validate a density matrix (Hermitian, unit trace, positive up to noise).

    Returns the input unchanged so callers can use it inline; raises
    :class:`ContractViolationError` on the first violated property.
    """
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (DIM, DIM):
        raise ContractViolationError(f"expected a {DIM}x{DIM} matrix, got shape {rho.shape}")
    herm_dev = float(np.abs(rho - rho.conj().T).max())
    if herm_dev > herm_tol:
        raise ContractViolationError(f"matrix is not Hermitian: deviation {herm_dev:.3e}")
    trace_dev = abs(np.trace(rho) - 1.0)
    if trace_dev > trace_tol:
        raise ContractViolationError(f"trace differs from 1 by {trace_dev:.3e}")
    min_eig = float(np.linalg.eigvalsh(0.5 * (rho + rho.conj().T)).min())
    if min_eig < eig_floor:
        raise ContractViolationError(f"matrix is not positive: min eigenvalue {min_eig:.3e}")
    return rho
