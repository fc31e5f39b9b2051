"""Self-validation suite: every closed form against an independent route.

Each check measures one deviation (closed-form eigenpairs against the dense
solver, the two decay-channel decompositions against each other, the two
feedback-generator assemblies, the closed-form steady state against the
null-space solve, concurrence through its pure-state shortcut, RK4 against
the linear solve...) and compares it to a fixed threshold.  The feedback
generator is injectable so a deliberately broken build can be shown to fail.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import hamiltonian as ham
from .algebra import collective_lowering, commutator_superoperator, dissipator, ket, unvectorize, vectorize
from .concurrence import concurrence, concurrence_hermitian, concurrence_pure
from .hamiltonian import ModelParams
from .lindblad import (
    analytic_steady_state,
    liouvillian_fb,
    liouvillian_fb_expanded,
    liouvillian_nofb,
    propagate,
    steady_state,
)

_GRID = [(0.25, 0.5), (1.0, 1.0), (2.0, 0.5), (0.5, 2.0)]
_SS_GRID = [(0.0, 1.0), (0.0, 0.25), (0.25, 0.25), (0.5, 1.0), (1.0, 1.0), (2.0, 4.0)]
_SEED = 20240817

GeneratorBuilder = Callable[[ModelParams], np.ndarray]


@dataclass(frozen=True)
class CheckResult:
    name: str
    deviation: float
    threshold: float

    @property
    def passed(self) -> bool:
        return self.deviation < self.threshold


def _eigensystem_residual() -> float:
    worst = 0.0
    for alpha, coupling in _GRID:
        p = ModelParams(alpha, coupling)
        h = ham.build_h_tot(p)
        es = ham.analytic_eigensystem(p)
        for i in range(4):
            res = np.linalg.norm(h @ es.vectors[:, i] - es.values[i] * es.vectors[:, i])
            worst = max(worst, float(res))
    return worst


def _spectrum_match() -> float:
    worst = 0.0
    for alpha, coupling in _GRID:
        p = ModelParams(alpha, coupling)
        numeric = ham.numeric_eigensystem(ham.build_h_tot(p)).values
        expected = np.sort(ham.analytic_eigensystem(p).values)
        worst = max(worst, float(np.abs(numeric - expected).max()))
    return worst


def _expansion_reconstruction() -> float:
    worst = 0.0
    for alpha, coupling in _GRID:
        p = ModelParams(alpha, coupling)
        es = ham.analytic_eigensystem(p)
        rebuilt = es.vectors @ ham.initial_expansion(p)
        worst = max(worst, float(np.linalg.norm(rebuilt - ket("gg"))))
    return worst


def _marker_variance_match() -> float:
    taus = np.linspace(0.0, np.pi, 60)
    worst = 0.0
    for alpha, coupling in [(1.0, 1.0), (2.0, 1.0), (0.5, 2.0)]:
        p = ModelParams(alpha, coupling)
        for tau in taus:
            diff = abs(ham.marker_variance(p, tau) - ham.marker_variance_numeric(p, tau))
            worst = max(worst, diff)
    return worst


def _decay_channel_equivalence() -> float:
    worst = 0.0
    for alpha, coupling in [(1.0, 2.0), (0.5, 0.5)]:
        p = ModelParams(alpha, coupling)
        via_sites = liouvillian_nofb(p)
        via_collective = (
            -1j * commutator_superoperator(ham.build_h_tot(p))
            + dissipator(collective_lowering("+"))
            + dissipator(collective_lowering("-"))
        )
        worst = max(worst, float(np.abs(via_sites - via_collective).max()))
    return worst


def _feedback_zero_reduction(fb_generator: GeneratorBuilder) -> float:
    p = ModelParams(1.0, 1.0, lam=0.0)
    return float(np.abs(fb_generator(p) - liouvillian_nofb(p)).max())


def _feedback_form_equivalence(fb_generator: GeneratorBuilder) -> float:
    worst = 0.0
    for lam in (0.7, -1.3):
        p = ModelParams(1.0, 1.0, lam=lam)
        worst = max(worst, float(np.abs(fb_generator(p) - liouvillian_fb_expanded(p)).max()))
    return worst


def _steady_state_closed_form() -> float:
    worst = 0.0
    for alpha, coupling in _SS_GRID:
        p = ModelParams(alpha, coupling)
        numeric = steady_state(liouvillian_nofb(p))
        worst = max(worst, float(np.abs(numeric - analytic_steady_state(p)).max()))
    return worst


def _generators_for(fb_generator: GeneratorBuilder) -> list[np.ndarray]:
    return [
        liouvillian_nofb(ModelParams(1.0, 1.0)),
        fb_generator(ModelParams(1.0, 1.0, lam=0.8)),
        fb_generator(ModelParams(0.5, 0.25, lam=-1.5)),
    ]


def _trace_preservation(fb_generator: GeneratorBuilder) -> float:
    trace_row = vectorize(np.eye(4, dtype=complex)).conj()
    return max(float(np.abs(trace_row @ gen).max()) for gen in _generators_for(fb_generator))


def _hermiticity_preservation(fb_generator: GeneratorBuilder) -> float:
    rng = np.random.default_rng(_SEED)
    worst = 0.0
    for gen in _generators_for(fb_generator):
        for _ in range(20):
            raw = rng.standard_normal((4, 4)) + 1j * rng.standard_normal((4, 4))
            hermitian = raw + raw.conj().T
            image = unvectorize(gen @ vectorize(hermitian))
            worst = max(worst, float(np.abs(image - image.conj().T).max()))
    return worst


def _concurrence_pure_agreement() -> float:
    rng = np.random.default_rng(_SEED)
    worst = 0.0
    for _ in range(100):
        psi = rng.standard_normal(4) + 1j * rng.standard_normal(4)
        psi /= np.linalg.norm(psi)
        rho = np.outer(psi, psi.conj())
        worst = max(worst, abs(concurrence(rho).value - concurrence_pure(psi)))
    return worst


def _concurrence_hermitian_agreement() -> float:
    rng = np.random.default_rng(_SEED + 1)
    worst = 0.0
    for _ in range(50):
        raw = rng.standard_normal((4, 4)) + 1j * rng.standard_normal((4, 4))
        rho = raw @ raw.conj().T
        rho /= np.trace(rho).real
        worst = max(worst, abs(concurrence(rho).value - concurrence_hermitian(rho).value))
    return worst


def _feedback_steady_positivity(fb_generator: GeneratorBuilder) -> float:
    rho = steady_state(fb_generator(ModelParams(1.0, 1.0, lam=0.5)))
    min_eig = float(np.linalg.eigvalsh(0.5 * (rho + rho.conj().T)).min())
    return max(0.0, -min_eig)


def _propagation_consistency() -> float:
    p = ModelParams(1.0, 1.0)
    gen = liouvillian_nofb(p)
    rho0 = np.outer(ket("gg"), ket("gg").conj())
    final = propagate(rho0, gen, t_final=30.0, dt=0.01)
    return float(np.linalg.norm(final - steady_state(gen)))


def run_checks(fb_generator: GeneratorBuilder = liouvillian_fb) -> list[CheckResult]:
    """Run the full validation suite and return one result per check.

    ``fb_generator`` replaces the feedback-generator builder everywhere it is
    exercised; passing a broken builder demonstrates which checks catch it.
    """
    return [
        CheckResult("eigensystem_residual", _eigensystem_residual(), 1e-12),
        CheckResult("spectrum_closed_form", _spectrum_match(), 1e-12),
        CheckResult("expansion_reconstruction", _expansion_reconstruction(), 1e-12),
        CheckResult("marker_variance_match", _marker_variance_match(), 1e-10),
        CheckResult("decay_channel_equivalence", _decay_channel_equivalence(), 1e-13),
        CheckResult("feedback_zero_reduction", _feedback_zero_reduction(fb_generator), 1e-13),
        CheckResult("feedback_form_equivalence", _feedback_form_equivalence(fb_generator), 1e-13),
        CheckResult("steady_state_closed_form", _steady_state_closed_form(), 1e-10),
        CheckResult("trace_preservation", _trace_preservation(fb_generator), 1e-12),
        CheckResult("hermiticity_preservation", _hermiticity_preservation(fb_generator), 1e-12),
        CheckResult("concurrence_pure_agreement", _concurrence_pure_agreement(), 1e-10),
        CheckResult("concurrence_hermitian_agreement", _concurrence_hermitian_agreement(), 1e-10),
        CheckResult("feedback_steady_positivity", _feedback_steady_positivity(fb_generator), 1e-8),
        CheckResult("propagation_consistency", _propagation_consistency(), 1e-6),
    ]
