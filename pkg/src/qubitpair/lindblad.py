"""Master-equation generators, steady states, and time propagation.

The no-feedback generator combines the coherent part with independent decay
of each atom.  The feedback generator modifies only the antisymmetric decay
channel: the measured-and-fed-back quadrature enters both through a modified
jump operator (c- - iF) and through an extra commutator coupling, so at
lam = 0 it collapses exactly onto the no-feedback generator.

All generators are 16x16 matrices acting on column-stacked density matrices
(see :mod:`.algebra`), with time in units of the inverse decay rate.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .algebra import (
    collective_lowering,
    commutator_superoperator,
    dissipator,
    lowering,
    pauli,
    sprepost,
    unvectorize,
    vectorize,
)
from .errors import (
    ContractViolationError,
    DegenerateSteadyStateError,
    NumericsError,
    TraceDriftError,
)
from .hamiltonian import ModelParams, build_h_tot

DEGENERACY_TOL = 1e-10
RESIDUAL_TOL = 1e-10


def liouvillian_nofb(p: ModelParams) -> np.ndarray:
    """Generator of -i[H, rho] + D[s1] rho + D[s2] rho.

    Splitting the decay over the collective channels c+ and c- instead gives
    the identical matrix; the validation suite asserts that equivalence.
    """
    h = build_h_tot(p)
    return -1j * commutator_superoperator(h) + dissipator(lowering(1)) + dissipator(lowering(2))


def feedback_operator(p: ModelParams) -> np.ndarray:
    """Hermitian feedback actuator (lam / sqrt(2)) (sy1 - sy2)."""
    return p.lam / np.sqrt(2.0) * (pauli("y", 1) - pauli("y", 2))


def liouvillian_fb(p: ModelParams) -> np.ndarray:
    """Feedback generator: -i[H, .] + D[c+] + D[c- - iF] - (i/2)[c-.F + F c-, .]."""
    h = build_h_tot(p)
    c_plus = collective_lowering("+")
    c_minus = collective_lowering("-")
    fb = feedback_operator(p)
    coupling = c_minus.conj().T @ fb + fb @ c_minus
    return (
        -1j * commutator_superoperator(h)
        + dissipator(c_plus)
        + dissipator(c_minus - 1j * fb)
        - 0.5j * commutator_superoperator(coupling)
    )


def liouvillian_fb_expanded(p: ModelParams) -> np.ndarray:
    """Feedback generator assembled from its expanded, algebraically equal form.

    Expanding D[c- - iF] and absorbing the commutator coupling yields

        -i[H, .] + D[c+] + D[c-] + D[F] - i (F c- rho + F rho c-. - c- rho F - rho c-. F)

    for Hermitian F.  Building the matrix along this second route gives an
    independent cross-check of :func:`liouvillian_fb`: the two agree entrywise
    for every lam, and any sign error in the commutator term breaks the
    agreement as soon as lam != 0.
    """
    h = build_h_tot(p)
    c_plus = collective_lowering("+")
    c_minus = collective_lowering("-")
    c_minus_dag = c_minus.conj().T
    fb = feedback_operator(p)
    eye = np.eye(4, dtype=complex)
    drive_coupling = (
        sprepost(fb @ c_minus, eye)
        + sprepost(fb, c_minus_dag)
        - sprepost(c_minus, fb)
        - sprepost(eye, c_minus_dag @ fb)
    )
    return (
        -1j * commutator_superoperator(h)
        + dissipator(c_plus)
        + dissipator(c_minus)
        + dissipator(fb)
        - 1j * drive_coupling
    )


def steady_state(
    liouvillian: np.ndarray,
    *,
    residual_tol: float = RESIDUAL_TOL,
    degeneracy_tol: float = DEGENERACY_TOL,
) -> np.ndarray:
    """Unique stationary density matrix of a trace-preserving generator.

    Solves the 16 linear equations L vec(rho) = 0 together with the trace
    normalization row as one least-squares system (SVD-backed), which is
    robust to the generator's rank-15 structure.

    Raises
    ------
    ContractViolationError
        If the generator does not preserve the trace.
    DegenerateSteadyStateError
        If the two smallest singular values of the generator both fall below
        ``degeneracy_tol``; a degenerate stationary manifold is never
        silently averaged over.
    NumericsError
        If the solution's residual ||L vec(rho)|| exceeds ``residual_tol``.
    """
    liouvillian = np.asarray(liouvillian, dtype=complex)
    if liouvillian.shape != (16, 16):
        raise ContractViolationError(f"expected a 16x16 generator, got {liouvillian.shape}")

    trace_row = vectorize(np.eye(4, dtype=complex)).conj()
    scale = max(1.0, float(np.abs(liouvillian).max()))
    trace_defect = float(np.abs(trace_row @ liouvillian).max())
    if trace_defect > 1e-9 * scale:
        raise ContractViolationError(
            f"generator is not trace-preserving: left-trace residual {trace_defect:.3e}"
        )

    singular = np.linalg.svd(liouvillian, compute_uv=False)
    if singular[-2] < degeneracy_tol:
        raise DegenerateSteadyStateError(float(singular[-1]), float(singular[-2]))

    stacked = np.vstack([liouvillian, trace_row])
    rhs = np.zeros(17, dtype=complex)
    rhs[16] = 1.0
    solution, *_ = np.linalg.lstsq(stacked, rhs, rcond=None)
    rho = unvectorize(solution)
    rho = 0.5 * (rho + rho.conj().T)
    rho /= np.trace(rho).real

    residual = float(np.linalg.norm(liouvillian @ vectorize(rho)))
    if residual > residual_tol:
        raise NumericsError(f"steady-state residual {residual:.3e} exceeds {residual_tol:.1e}")
    return rho


@dataclass(frozen=True)
class SteadyStateCoefficients:
    """Real parameters of the closed-form no-feedback steady state.

    ``a``..``l`` fill the matrix top-left to bottom-right: diagonal (a, e, h, l),
    off-diagonal pairs (re, im) as written out in :meth:`matrix`.  ``xi`` is
    the common normalizer; the diagonal sums to exactly 1.
    """

    a: float
    b1: float
    b2: float
    c1: float
    c2: float
    d1: float
    d2: float
    e: float
    f1: float
    f2: float
    g1: float
    g2: float
    h: float
    i1: float
    i2: float
    l: float
    xi: float

    def matrix(self) -> np.ndarray:
        """Assemble the Hermitian steady-state matrix from the coefficients."""
        return np.array(
            [
                [self.a, self.b1 + 1j * self.b2, self.c1 + 1j * self.c2, self.d1 + 1j * self.d2],
                [self.b1 - 1j * self.b2, self.e, self.f1 + 1j * self.f2, self.g1 + 1j * self.g2],
                [self.c1 - 1j * self.c2, self.f1 - 1j * self.f2, self.h, self.i1 + 1j * self.i2],
                [self.d1 - 1j * self.d2, self.g1 - 1j * self.g2, self.i1 - 1j * self.i2, self.l],
            ],
            dtype=complex,
        )


def steady_state_coefficients(p: ModelParams) -> SteadyStateCoefficients:
    """Closed-form coefficients of the no-feedback steady state.

    The zz coupling enters only through the full interaction strength, i.e.
    through 2J (the Hamiltonian carries ``2J sz1 sz2``), so the formulas below
    use w = 2J throughout.  At alpha = 0 everything collapses onto the ground
    pair |gg><gg|.
    """
    a = p.alpha
    w = 2.0 * p.J
    xi = 64.0 * a**4 + 16.0 * a**2 + 1.0 + 16.0 * w**2
    pop_mid = (16.0 * a**4 + 4.0 * a**2) / xi
    cross = -2.0 * a * (4.0 * a**2 + 1.0) / xi
    cross_im = -8.0 * a * w / xi
    return SteadyStateCoefficients(
        a=16.0 * a**4 / xi,
        b1=-8.0 * a**3 / xi,
        b2=0.0,
        c1=-8.0 * a**3 / xi,
        c2=0.0,
        d1=4.0 * a**2 / xi,
        d2=16.0 * a**2 * w / xi,
        e=pop_mid,
        f1=4.0 * a**2 / xi,
        f2=0.0,
        g1=cross,
        g2=cross_im,
        h=pop_mid,
        i1=cross,
        i2=cross_im,
        l=(16.0 * a**4 + 8.0 * a**2 + 1.0 + 16.0 * w**2) / xi,
        xi=xi,
    )


def analytic_steady_state(p: ModelParams) -> np.ndarray:
    """Closed-form no-feedback steady state as a density matrix."""
    return steady_state_coefficients(p).matrix()


def propagate(
    rho0: np.ndarray,
    liouvillian: np.ndarray,
    t_final: float,
    dt: float,
    *,
    drift_limit: float = 1e-6,
) -> np.ndarray:
    """Fixed-step RK4 integration of vec(rho)' = L vec(rho) up to t_final.

    The trace is monitored every step; drift beyond ``drift_limit`` aborts
    with :class:`TraceDriftError` advising a smaller dt.  A useful step-size
    guide is dt <= 0.05 / max(1, 4 alpha^2, 4 J^2, 2 lam^2).
    """
    if dt <= 0.0:
        raise ContractViolationError(f"dt must be positive, got {dt}")
    if t_final < 0.0:
        raise ContractViolationError(f"t_final must be nonnegative, got {t_final}")

    liouvillian = np.asarray(liouvillian, dtype=complex)
    state = vectorize(np.asarray(rho0, dtype=complex))
    trace0 = unvectorize(state).trace().real

    n_full, remainder = divmod(t_final, dt)
    steps = [dt] * int(round(n_full))
    if remainder > 1e-15 * max(1.0, t_final):
        steps.append(remainder)

    for step in steps:
        k1 = liouvillian @ state
        k2 = liouvillian @ (state + 0.5 * step * k1)
        k3 = liouvillian @ (state + 0.5 * step * k2)
        k4 = liouvillian @ (state + step * k3)
        state = state + (step / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        drift = abs(unvectorize(state).trace().real - trace0)
        if drift > drift_limit:
            raise TraceDriftError(
                f"trace drifted by {drift:.3e} (limit {drift_limit:.1e}); use a smaller dt"
            )
    return unvectorize(state)
