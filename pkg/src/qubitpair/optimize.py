"""Feedback-strength optimization and (alpha, J) grid scans.

The stationary concurrence with feedback is maximized over lam with a coarse
grid pass followed by golden-section refinement inside the best bracket.
Nothing guarantees the lam landscape is unimodal globally, so the coarse pass
guards against secondary maxima and the refinement only assumes unimodality
inside one bracket.  lam = 0 is always a candidate, which pins the optimized
value at or above the no-feedback concurrence.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace

import numpy as np

from .concurrence import concurrence
from .errors import ContractViolationError, NumericsError
from .hamiltonian import ModelParams
from .lindblad import analytic_steady_state, liouvillian_fb, liouvillian_nofb, steady_state

_INV_GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0


@dataclass(frozen=True)
class OptimizationConfig:
    """Search window and resolution for the lam optimization."""

    lambda_min: float = -8.0
    lambda_max: float = 8.0
    coarse_points: int = 161
    refine_tol: float = 1e-6
    include_zero: bool = True

    def __post_init__(self):
        if not self.lambda_min < self.lambda_max:
            raise ContractViolationError(
                f"lambda_min must be below lambda_max, got [{self.lambda_min}, {self.lambda_max}]"
            )
        if self.coarse_points < 3:
            raise ContractViolationError(f"coarse_points must be >= 3, got {self.coarse_points}")
        if self.refine_tol <= 0.0:
            raise ContractViolationError(f"refine_tol must be positive, got {self.refine_tol}")


@dataclass(frozen=True)
class LambdaOptimum:
    """Best feedback strength found, its concurrence, and a boundary flag.

    ``at_boundary`` warns that the maximizer sits within refine_tol of a
    search bound, i.e. the true optimum may lie outside the window.
    """

    lambda_opt: float
    concurrence: float
    at_boundary: bool


@dataclass(frozen=True)
class ScanRecord:
    """One (alpha, J) grid point of a feedback-improvement scan."""

    alpha: float
    J: float
    C0: float
    Cfb: float
    lambda_opt: float
    delta: float
    at_boundary: bool = False
    error: str | None = None


def stationary_concurrence(p: ModelParams, *, cross_check: bool = False) -> float:
    """Concurrence of the no-feedback steady state (closed form).

    With ``cross_check=True`` the closed form is compared elementwise against
    the null-space solve of the generator and a disagreement beyond 1e-9
    raises :class:`NumericsError`.
    """
    rho = analytic_steady_state(p)
    if cross_check:
        rho_numeric = steady_state(liouvillian_nofb(p))
        deviation = float(np.abs(rho - rho_numeric).max())
        if deviation > 1e-9:
            raise NumericsError(
                f"closed-form and null-space steady states disagree by {deviation:.3e}"
            )
    return concurrence(rho).value


def _feedback_concurrence(p: ModelParams, lam: float) -> float:
    return concurrence(steady_state(liouvillian_fb(replace(p, lam=lam)))).value


def optimize_lambda(p: ModelParams, cfg: OptimizationConfig | None = None) -> LambdaOptimum:
    """Maximize the stationary concurrence over the feedback strength.

    ``p.lam`` is ignored; every candidate lam is substituted in turn.  The
    coarse grid (plus lam = 0 when configured) brackets the best candidate,
    then golden-section refinement narrows the bracket to ``refine_tol``.
    The best value ever evaluated is returned, so the result can only improve
    on the coarse scan and is always >= the lam = 0 value when included.
    """
    cfg = cfg or OptimizationConfig()
    candidates = np.linspace(cfg.lambda_min, cfg.lambda_max, cfg.coarse_points)
    if cfg.include_zero and cfg.lambda_min <= 0.0 <= cfg.lambda_max:
        candidates = np.union1d(candidates, [0.0])

    values = np.array([_feedback_concurrence(p, lam) for lam in candidates])
    best_idx = int(np.argmax(values))
    best_lam = float(candidates[best_idx])
    best_val = float(values[best_idx])

    lo = float(candidates[max(best_idx - 1, 0)])
    hi = float(candidates[min(best_idx + 1, len(candidates) - 1)])
    inner_lo = hi - _INV_GOLDEN * (hi - lo)
    inner_hi = lo + _INV_GOLDEN * (hi - lo)
    val_lo = _feedback_concurrence(p, inner_lo)
    val_hi = _feedback_concurrence(p, inner_hi)
    while hi - lo > cfg.refine_tol:
        if val_lo > val_hi:
            hi, inner_hi, val_hi = inner_hi, inner_lo, val_lo
            inner_lo = hi - _INV_GOLDEN * (hi - lo)
            val_lo = _feedback_concurrence(p, inner_lo)
        else:
            lo, inner_lo, val_lo = inner_lo, inner_hi, val_hi
            inner_hi = lo + _INV_GOLDEN * (hi - lo)
            val_hi = _feedback_concurrence(p, inner_hi)
    for lam, val in ((inner_lo, val_lo), (inner_hi, val_hi)):
        if val > best_val:
            best_lam, best_val = float(lam), float(val)

    at_boundary = (
        abs(best_lam - cfg.lambda_min) <= cfg.refine_tol
        or abs(best_lam - cfg.lambda_max) <= cfg.refine_tol
    )
    return LambdaOptimum(lambda_opt=best_lam, concurrence=best_val, at_boundary=at_boundary)


def _scan_point(task: tuple[float, float, OptimizationConfig]) -> ScanRecord:
    alpha, coupling, cfg = task
    try:
        p = ModelParams(alpha=alpha, J=coupling)
        c0 = stationary_concurrence(p)
        best = optimize_lambda(p, cfg)
        return ScanRecord(
            alpha=alpha,
            J=coupling,
            C0=c0,
            Cfb=best.concurrence,
            lambda_opt=best.lambda_opt,
            delta=best.concurrence - c0,
            at_boundary=best.at_boundary,
        )
    except Exception as exc:  # record and keep scanning
        return ScanRecord(
            alpha=alpha,
            J=coupling,
            C0=math.nan,
            Cfb=math.nan,
            lambda_opt=math.nan,
            delta=math.nan,
            error=f"{type(exc).__name__}: {exc}",
        )


def scan_grid(
    alphas,
    Js,
    cfg: OptimizationConfig | None = None,
    *,
    workers: int | None = None,
) -> list[ScanRecord]:
    """Optimize every (alpha, J) pair; rows ordered alpha-major, J fastest.

    Grid points are independent, so they run on a process pool when
    ``workers`` is not 1 (default: one worker per CPU).  Records are
    assembled in input order regardless of completion order, and per-point
    failures come back as error-tagged records instead of aborting the scan.
    """
    alphas = list(alphas)
    Js = list(Js)
    if not alphas or not Js:
        raise ContractViolationError("alpha and J lists must both be nonempty")
    cfg = cfg or OptimizationConfig()
    tasks = [(float(a), float(j), cfg) for a in alphas for j in Js]

    if workers is None:
        workers = os.cpu_count() or 1
    if workers <= 1 or len(tasks) == 1:
        return [_scan_point(task) for task in tasks]

    chunk = max(1, len(tasks) // (4 * workers))
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(_scan_point, tasks, chunksize=chunk))
