import numpy as np
import pytest

from qubitpair import (
    ContractViolationError,
    ModelParams,
    OptimizationConfig,
    concurrence,
    liouvillian_fb,
    optimize_lambda,
    scan_grid,
    stationary_concurrence,
    steady_state,
)
from qubitpair import optimize as optimize_module

FAST_CFG = OptimizationConfig(coarse_points=41, refine_tol=1e-5)


class TestOptimizationConfig:
    def test_defaults_valid(self):
        cfg = OptimizationConfig()
        assert cfg.lambda_min == -8.0 and cfg.lambda_max == 8.0
        assert cfg.coarse_points == 161 and cfg.include_zero

    @pytest.mark.parametrize(
        "kwargs",
        [
            {"lambda_min": 1.0, "lambda_max": -1.0},
            {"coarse_points": 2},
            {"refine_tol": 0.0},
        ],
    )
    def test_rejects_bad_values(self, kwargs):
        with pytest.raises(ContractViolationError):
            OptimizationConfig(**kwargs)


class TestStationaryConcurrence:
    def test_zero_drive_unentangled(self):
        for coupling in (0.5, 1.0, 3.0):
            assert stationary_concurrence(ModelParams(0.0, coupling)) == 0.0

    def test_zero_coupling_nearly_unentangled(self):
        # drive alone cannot sustain much steady entanglement
        for alpha in (0.25, 1.0, 2.0):
            assert stationary_concurrence(ModelParams(alpha, 0.0)) < 0.05

    def test_strong_coupling_entangled(self):
        assert stationary_concurrence(ModelParams(0.5, 5.0)) > 0.01

    def test_cross_check_mode(self):
        value = stationary_concurrence(ModelParams(1.0, 1.0), cross_check=True)
        assert value == pytest.approx(0.2206896551724138, abs=1e-12)


class TestOptimizeLambda:
    def test_never_below_no_feedback_value(self):
        p = ModelParams(1.0, 1.0)
        best = optimize_lambda(p, FAST_CFG)
        assert best.concurrence >= stationary_concurrence(p) - 1e-9

    def test_no_dynamics_matches_exhaustive_scan(self):
        # with neither drive nor coupling the exhaustive coarse grid is its own oracle
        p = ModelParams(0.0, 0.0)
        cfg = OptimizationConfig(coarse_points=21, refine_tol=1e-4)
        best = optimize_lambda(p, cfg)
        grid = np.linspace(cfg.lambda_min, cfg.lambda_max, cfg.coarse_points)
        exhaustive = max(
            concurrence(steady_state(liouvillian_fb(ModelParams(0.0, 0.0, lam)))).value
            for lam in grid
        )
        assert best.concurrence >= exhaustive - 1e-12
        assert best.concurrence >= 0.0

    def test_small_coupling_strict_gain(self):
        # feedback helps most where the bare coupling sustains little entanglement
        p = ModelParams(0.25, 0.05)
        best = optimize_lambda(p, FAST_CFG)
        assert best.concurrence - stationary_concurrence(p) > 1e-3
        assert not best.at_boundary

    def test_reproducible(self):
        p = ModelParams(0.5, 0.3)
        first = optimize_lambda(p, FAST_CFG)
        second = optimize_lambda(p, FAST_CFG)
        assert first.lambda_opt == second.lambda_opt
        assert first.concurrence == second.concurrence

    def test_round_trip_consistency(self):
        p = ModelParams(0.25, 0.1)
        best = optimize_lambda(p, FAST_CFG)
        replayed = concurrence(
            steady_state(liouvillian_fb(ModelParams(p.alpha, p.J, best.lambda_opt)))
        ).value
        assert replayed == pytest.approx(best.concurrence, abs=1e-9)

    def test_boundary_warning(self):
        # a window that excludes the interior optimum pins the best point to an edge
        cfg = OptimizationConfig(lambda_min=0.5, lambda_max=1.0, coarse_points=11, refine_tol=1e-4)
        best = optimize_lambda(ModelParams(0.25, 0.05), cfg)
        assert best.at_boundary


class TestScanGrid:
    def test_single_point_matches_direct_calls(self):
        records = scan_grid([1.0], [1.0], FAST_CFG, workers=1)
        assert len(records) == 1
        record = records[0]
        p = ModelParams(1.0, 1.0)
        best = optimize_lambda(p, FAST_CFG)
        assert record.C0 == stationary_concurrence(p)
        assert record.Cfb == best.concurrence
        assert record.lambda_opt == best.lambda_opt
        assert record.delta == record.Cfb - record.C0

    def test_row_major_ordering(self):
        records = scan_grid([0.2, 0.4], [0.5, 1.5], FAST_CFG, workers=1)
        assert [(r.alpha, r.J) for r in records] == [
            (0.2, 0.5), (0.2, 1.5), (0.4, 0.5), (0.4, 1.5),
        ]

    def test_deltas_never_negative(self):
        records = scan_grid([0.3, 0.9], [0.2, 1.0, 3.0], FAST_CFG, workers=2)
        assert all(r.delta >= -1e-9 for r in records)
        assert all(r.error is None for r in records)

    def test_no_feedback_concurrence_grows_toward_ridge(self):
        # empirical shape: at fixed drive the bare concurrence climbs with the
        # coupling until its ridge (checked here on the rising side)
        records = scan_grid([1.0], [0.05, 1.0, 2.0], FAST_CFG, workers=1)
        c0_values = [r.C0 for r in records]
        assert c0_values == sorted(c0_values)

    def test_parallel_matches_serial(self):
        serial = scan_grid([0.3, 0.7], [0.5, 2.0], FAST_CFG, workers=1)
        parallel = scan_grid([0.3, 0.7], [0.5, 2.0], FAST_CFG, workers=2)
        assert serial == parallel

    def test_point_failure_recorded_not_raised(self, monkeypatch):
        calls = {"count": 0}
        original = optimize_module.stationary_concurrence

        def flaky(p, **kwargs):
            calls["count"] += 1
            if p.alpha == 0.4:
                raise RuntimeError("synthetic point failure")
            return original(p, **kwargs)

        monkeypatch.setattr(optimize_module, "stationary_concurrence", flaky)
        records = scan_grid([0.2, 0.4], [0.5], FAST_CFG, workers=1)
        assert records[0].error is None
        assert records[1].error is not None and "synthetic" in records[1].error
        assert np.isnan(records[1].C0)

    def test_empty_grid_rejected(self):
        with pytest.raises(ContractViolationError):
            scan_grid([], [1.0], FAST_CFG)
