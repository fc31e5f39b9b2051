import numpy as np
import pytest

from qubitpair import (
    ContractViolationError,
    ModelParams,
    analytic_eigensystem,
    concurrence,
    concurrence_hermitian,
    concurrence_pure,
    evolve_closed,
    ket,
    spin_flip,
)

from helpers import local_unitary, projector, random_density_matrix, random_pure_state

RNG = np.random.default_rng(137)


def bell_states():
    r2 = np.sqrt(2)
    return [
        (ket("eg") - ket("ge")) / r2,
        (ket("eg") + ket("ge")) / r2,
        (ket("ee") + ket("gg")) / r2,
        (ket("ee") - ket("gg")) / r2,
    ]


class TestSpinFlip:
    def test_maximally_mixed_invariant(self):
        rho = np.eye(4, dtype=complex) / 4
        assert np.abs(spin_flip(rho) - rho).max() == 0.0

    def test_ground_pair_maps_to_excited_pair(self):
        flipped = spin_flip(projector(ket("gg")))
        assert np.abs(flipped - projector(ket("ee"))).max() == 0.0

    def test_involution(self):
        for _ in range(20):
            rho = random_density_matrix(RNG)
            assert np.abs(spin_flip(spin_flip(rho)) - rho).max() < 1e-14


class TestConcurrence:
    def test_bell_states_maximal(self):
        for psi in bell_states():
            assert concurrence(projector(psi)).value == pytest.approx(1.0, abs=1e-12)

    def test_product_state_zero(self):
        assert concurrence(projector(ket("gg"))).value == 0.0

    def test_maximally_mixed_zero(self):
        assert concurrence(np.eye(4, dtype=complex) / 4).value == 0.0

    def test_lowest_eigenvector_value(self):
        # product-basis amplitudes of the lowest eigenvector give 2|ad - bc|
        # = eta / sqrt(1 + eta^2), i.e. 1/sqrt(2) at eta = 1
        es = analytic_eigensystem(ModelParams(1.0, 1.0))
        rho = projector(es.vectors[:, 0])
        assert concurrence(rho).value == pytest.approx(1 / np.sqrt(2), abs=1e-10)

    def test_xi_sorted_nonnegative(self):
        for _ in range(20):
            result = concurrence(random_density_matrix(RNG))
            assert np.all(np.diff(result.xi) <= 0)
            assert np.all(result.xi >= 0)
            xi = result.xi
            assert result.value == max(0.0, float(xi[0] - xi[1] - xi[2] - xi[3]))

    def test_range_on_random_states(self):
        for _ in range(200):
            value = concurrence(random_density_matrix(RNG)).value
            assert 0.0 <= value <= 1.0 + 1e-10

    def test_local_unitary_invariance(self):
        for _ in range(50):
            rho = random_density_matrix(RNG)
            u = local_unitary(RNG)
            rotated = u @ rho @ u.conj().T
            assert concurrence(rotated).value == pytest.approx(
                concurrence(rho).value, abs=1e-9
            )

    def test_hermitian_route_agreement(self):
        for _ in range(100):
            rho = random_density_matrix(RNG)
            assert concurrence(rho).value == pytest.approx(
                concurrence_hermitian(rho).value, abs=1e-10
            )

    def test_rejects_invalid_input(self):
        with pytest.raises(ContractViolationError):
            concurrence(np.eye(4, dtype=complex))  # trace 4


class TestConcurrencePure:
    def test_bell_state(self):
        psi = (ket("ee") + ket("gg")) / np.sqrt(2)
        assert concurrence_pure(psi) == pytest.approx(1.0, abs=1e-15)

    def test_product_state(self):
        theta = 0.3
        psi = np.cos(theta) * ket("eg") + np.sin(theta) * ket("gg")  # (cos e + sin g) x g
        assert concurrence_pure(psi) == pytest.approx(0.0, abs=1e-15)

    def test_matches_density_matrix_path_on_evolved_state(self):
        psi = evolve_closed(ModelParams(1.0, 1.0), 0.4)
        assert concurrence_pure(psi) == pytest.approx(
            concurrence(projector(psi)).value, abs=1e-10
        )

    def test_agreement_on_many_random_states(self):
        for _ in range(500):
            psi = random_pure_state(RNG)
            assert concurrence_pure(psi) == pytest.approx(
                concurrence(projector(psi)).value, abs=1e-10
            )

    def test_unnormalized_rejected(self):
        with pytest.raises(ContractViolationError, match="norm"):
            concurrence_pure(2.0 * ket("gg"))


class TestClosedEvolutionEntanglement:
    def test_entangled_at_almost_every_time(self):
        # the evolved pair is entangled on all but a measure-zero set of times
        p = ModelParams(1.0, 1.0)
        taus = np.linspace(0.0, np.pi, 402)[1:]  # uniform sample of (0, pi]
        positive = sum(concurrence_pure(evolve_closed(p, tau)) > 1e-12 for tau in taus)
        assert positive >= 0.99 * len(taus)
