from itertools import permutations

import numpy as np
import pytest

from mubkit import (
    Basis,
    DimensionError,
    MubSet,
    bell_diagonal_state,
    bell_state,
    enclosure_check,
    fourier_pair,
    isotropic_state,
    isotropic_threshold,
    joint_probabilities,
    kron,
    maximally_entangled_state,
    maximally_mixed,
    mutual_predictability,
    optimal_relabeling,
    predictability_criterion,
    random_density_matrix,
    random_pure_state,
    same_state,
    schmidt_pair_criterion,
    schmidt_pair_criterion_direct,
    validate_density_matrix,
    weyl_operator,
)


def product_density(a, b):
    psi = kron(a, b)
    return np.outer(psi, psi.conj())


class TestMutualPredictability:
    def test_fully_correlated_product(self):
        rho = product_density(np.array([1, 0, 0]), np.array([1, 0, 0]))
        comp = Basis(np.eye(3, dtype=complex))
        assert abs(mutual_predictability(rho, comp, comp) - 1.0) < 1e-12

    @pytest.mark.parametrize("d", [2, 3, 5])
    def test_product_in_fourier_basis_loses_predictability(self, d):
        # a computational product state measured in the Fourier pair: 1/d
        e0 = np.zeros(d)
        e0[0] = 1.0
        rho = product_density(e0, e0)
        fourier = fourier_pair(d)[1]
        assert abs(mutual_predictability(rho, fourier, fourier) - 1 / d) < 1e-12

    def test_isotropic_value(self, mub_cache):
        rho = isotropic_state(3, 0.5)
        for basis in mub_cache(3):
            c = mutual_predictability(rho, basis, basis.conjugate())
            assert abs(c - (0.5 + 0.5 / 3)) < 1e-12

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionError):
            mutual_predictability(np.eye(4) / 4, Basis(np.eye(3)), Basis(np.eye(3)))


class TestJointProbabilities:
    def test_rows_sum_to_one(self, rng):
        rho = random_density_matrix(9, rng)
        comp = Basis(np.eye(3, dtype=complex))
        probs = joint_probabilities(rho, comp, comp)
        assert probs.shape == (3, 3)
        assert abs(probs.sum() - 1.0) < 1e-10
        assert (probs > -1e-12).all()

    def test_diagonal_matches_predictability(self, rng, mub_cache):
        rho = random_density_matrix(9, rng)
        basis = mub_cache(3)[2]
        probs = joint_probabilities(rho, basis, basis.conjugate())
        c = mutual_predictability(rho, basis, basis.conjugate())
        assert abs(np.trace(probs) - c) < 1e-12


class TestPredictabilityCriterion:
    def test_aligned_product_state_attains_bound(self, mub_cache):
        for d in (2, 3):
            mub = mub_cache(d)
            e0 = np.zeros(d)
            e0[0] = 1.0
            report = predictability_criterion(product_density(e0, e0), mub)
            assert abs(report.total - 2.0) < 1e-10
            assert not report.violated

    def test_bell_state_with_pauli_trio(self, mub_cache):
        rho = isotropic_state(2, 1.0)
        report = predictability_criterion(rho, mub_cache(2))
        assert abs(report.total - 3.0) < 1e-10
        assert report.bound == 2.0
        assert report.violated

    def test_maximally_mixed_never_violates(self, mub_cache):
        for d in (2, 3, 5):
            mub = mub_cache(d)
            report = predictability_criterion(maximally_mixed(d * d), mub)
            assert abs(report.total - mub.count / d) < 1e-10
            assert not report.violated

    def test_linearity(self, rng, mub_cache):
        mub = mub_cache(3)
        rho1 = random_density_matrix(9, rng)
        rho2 = random_density_matrix(9, rng)
        for p in (0.0, 0.3, 0.7, 1.0):
            mixed = p * rho1 + (1 - p) * rho2
            lhs = predictability_criterion(mixed, mub).total
            rhs = (p * predictability_criterion(rho1, mub).total
                   + (1 - p) * predictability_criterion(rho2, mub).total)
            assert abs(lhs - rhs) < 1e-10

    def test_isotropic_closed_form(self, mub_cache):
        for d, alpha in [(2, 0.2), (3, 0.5), (5, 0.9), (3, 0.0), (3, 1.0)]:
            mub = mub_cache(d)
            report = predictability_criterion(isotropic_state(d, alpha), mub)
            expected = mub.count * (alpha + (1 - alpha) / d)
            assert abs(report.total - expected) < 1e-10

    def test_report_consistency(self, rng, mub_cache):
        report = predictability_criterion(random_density_matrix(9, rng), mub_cache(3))
        assert abs(report.total - sum(report.c_values)) < 1e-12
        assert report.violated == (report.margin > 1e-9)

    def test_separable_soundness_smoke(self, rng, mub_cache):
        for d in (2, 3):
            mub = mub_cache(d)
            for _ in range(200):
                rho = product_density(random_pure_state(d, rng),
                                      random_pure_state(d, rng))
                assert not predictability_criterion(rho, mub).violated

    def test_separable_soundness_survives_relabeling(self, rng, mub_cache):
        # relabeled bases are the same bases as sets, so the bound holds
        for d in (2, 3):
            mub = mub_cache(d)
            for _ in range(100):
                rho = product_density(random_pure_state(d, rng),
                                      random_pure_state(d, rng))
                assert not predictability_criterion(rho, mub, relabel=True).violated

    def test_mismatched_sets_rejected(self, mub_cache):
        with pytest.raises(DimensionError):
            predictability_criterion(maximally_mixed(9), mub_cache(3), mub_cache(2))


class TestOptimalRelabeling:
    def test_shift_correlated_state(self):
        d = 3
        rho = np.zeros((9, 9), dtype=complex)
        for i in range(d):
            ket = kron(np.eye(d)[i], np.eye(d)[(i + 1) % d])
            rho += np.outer(ket, ket.conj()) / d
        comp = Basis(np.eye(d, dtype=complex))
        value, perm = optimal_relabeling(rho, comp, comp)
        assert abs(value - 1.0) < 1e-12
        np.testing.assert_array_equal(perm, [1, 2, 0])

    def test_already_aligned_state(self, mub_cache):
        rho = isotropic_state(3, 0.8)
        basis = mub_cache(3)[0]
        value, perm = optimal_relabeling(rho, basis, basis.conjugate())
        np.testing.assert_array_equal(perm, [0, 1, 2])
        assert abs(value - mutual_predictability(rho, basis, basis.conjugate())) < 1e-12

    @pytest.mark.parametrize("d", [2, 3, 4])
    def test_against_brute_force_oracle(self, d, rng):
        # oracle: exhaustive maximum over all d! outcome permutations
        comp = Basis(np.eye(d, dtype=complex))
        four = fourier_pair(d)[1]
        for _ in range(10):
            rho = random_density_matrix(d * d, rng)
            probs = joint_probabilities(rho, comp, four)
            brute = max(
                sum(probs[i, sigma[i]] for i in range(d))
                for sigma in permutations(range(d))
            )
            value, _ = optimal_relabeling(rho, comp, four)
            assert abs(value - brute) < 1e-12

    def test_relabel_dominates_fixed_labels(self, rng, mub_cache):
        mub = mub_cache(3)
        rho = random_density_matrix(9, rng)
        fixed = predictability_criterion(rho, mub)
        relabeled = predictability_criterion(rho, mub, relabel=True)
        assert relabeled.total >= fixed.total - 1e-12


class TestIsotropicState:
    def test_alpha_zero_is_maximally_mixed(self):
        np.testing.assert_allclose(isotropic_state(3, 0.0), np.eye(9) / 9)

    def test_alpha_one_is_projector(self):
        rho = isotropic_state(3, 1.0)
        phi = maximally_entangled_state(3)
        np.testing.assert_allclose(rho, np.outer(phi, phi.conj()), atol=1e-12)

    def test_qubit_eigenvalues(self):
        eigs = np.sort(np.linalg.eigvalsh(isotropic_state(2, 0.5)))
        np.testing.assert_allclose(eigs, [0.125, 0.125, 0.125, 0.625], atol=1e-12)

    def test_negative_alpha_within_psd_range(self):
        d = 3
        rho = isotropic_state(d, -1 / (d * d - 1))
        assert validate_density_matrix(rho).ok

    @pytest.mark.parametrize("alpha", [-0.2, 1.1])
    def test_out_of_range_rejected(self, alpha):
        with pytest.raises(ValueError):
            isotropic_state(3, alpha)


class TestIsotropicThreshold:
    def test_two_bases_mean_fifty_percent_noise(self):
        assert abs(isotropic_threshold(3, 2) - 0.5) < 1e-7

    def test_complete_set_reaches_separability_boundary(self):
        assert abs(isotropic_threshold(3, 4) - 0.25) < 1e-7

    def test_intermediate_case(self):
        assert abs(isotropic_threshold(5, 3) - 1 / 3) < 1e-7


class TestSchmidtPairCriterion:
    def test_product_state(self):
        for d in (2, 5):
            assert abs(schmidt_pair_criterion(np.array([1.0]), d) - (1 + 1 / d)) < 1e-12

    def test_maximally_entangled(self):
        lam = np.full(4, 0.5)
        assert abs(schmidt_pair_criterion(lam, 4) - 2.0) < 1e-12

    def test_entangled_states_always_violate(self, rng):
        for d in (2, 4, 8):
            for _ in range(20):
                lam = np.abs(rng.standard_normal(d)) + 1e-3
                lam /= np.linalg.norm(lam)
                assert schmidt_pair_criterion(lam, d) > 1 + 1 / d

    @pytest.mark.parametrize("d", [2, 3, 4, 5, 6, 7, 8])
    def test_closed_form_matches_direct_evaluation(self, d, rng):
        for _ in range(25):
            k = rng.integers(1, d + 1)
            lam = np.abs(rng.standard_normal(k))
            lam = np.sort(lam / np.linalg.norm(lam))[::-1]
            closed = schmidt_pair_criterion(lam, d)
            direct = schmidt_pair_criterion_direct(lam, d)
            assert abs(closed - direct) < 1e-10

    def test_unnormalized_rejected(self):
        with pytest.raises(ValueError):
            schmidt_pair_criterion(np.array([0.9, 0.9]), 3)


class TestWeylOperators:
    def test_identity(self):
        np.testing.assert_allclose(weyl_operator(3, 0, 0), np.eye(3))

    def test_qubit_cases(self):
        np.testing.assert_allclose(weyl_operator(2, 1, 0), np.diag([1, -1]), atol=1e-15)
        np.testing.assert_allclose(weyl_operator(2, 0, 1), [[0, 1], [1, 0]], atol=1e-15)

    def test_unitarity_sweep(self):
        for k in range(5):
            for l in range(5):
                w = weyl_operator(5, k, l)
                np.testing.assert_allclose(w @ w.conj().T, np.eye(5), atol=1e-12)

    def test_out_of_range(self):
        with pytest.raises(DimensionError):
            weyl_operator(3, 3, 0)


class TestBellStates:
    def test_zero_indices_give_maximally_entangled(self):
        np.testing.assert_allclose(bell_state(3, 0, 0), maximally_entangled_state(3))

    def test_qubit_quartet(self):
        s = 1 / np.sqrt(2)
        expected = {
            (0, 0): np.array([s, 0, 0, s]),
            (0, 1): np.array([0, s, s, 0]),
            (1, 0): np.array([s, 0, 0, -s]),
            (1, 1): np.array([0, s, -s, 0]),
        }
        for (k, l), target in expected.items():
            assert same_state(bell_state(2, k, l), target.astype(complex))

    def test_gram_matrix_is_identity(self):
        states = [bell_state(3, k, l) for k in range(3) for l in range(3)]
        gram = np.array([[np.vdot(a, b) for b in states] for a in states])
        np.testing.assert_allclose(gram, np.eye(9), atol=1e-10)


class TestBellDiagonal:
    def test_concentrated_weight(self):
        w = np.zeros((3, 3))
        w[0, 0] = 1.0
        phi = maximally_entangled_state(3)
        np.testing.assert_allclose(bell_diagonal_state(w),
                                   np.outer(phi, phi.conj()), atol=1e-12)

    def test_uniform_weights_give_white_noise(self):
        w = np.full((3, 3), 1 / 9)
        np.testing.assert_allclose(bell_diagonal_state(w), np.eye(9) / 9, atol=1e-12)

    def test_isotropic_is_bell_diagonal(self):
        d, alpha = 3, 0.4
        w = np.full((d, d), (1 - alpha) / d**2)
        w[0, 0] += alpha
        np.testing.assert_allclose(bell_diagonal_state(w),
                                   isotropic_state(d, alpha), atol=1e-12)

    def test_invalid_weights_rejected(self):
        with pytest.raises(ValueError):
            bell_diagonal_state(np.full((2, 2), 0.3))
        with pytest.raises(ValueError):
            bell_diagonal_state(np.array([[1.2, -0.2], [0.0, 0.0]]))


class TestEnclosureCheck:
    def test_uniform_weights(self, mub_cache):
        d = 3
        report = enclosure_check(np.full((d, d), 1 / d**2), mub_cache(d))
        assert abs(report.total - (1 + 1 / d)) < 1e-8
        assert not report.violated

    def test_concentrated_weight(self, mub_cache):
        d = 3
        w = np.zeros((d, d))
        w[1, 2] = 1.0
        report = enclosure_check(w, mub_cache(d))
        assert abs(report.total - (1 + d)) < 1e-8
        assert report.violated

    @pytest.mark.parametrize("d", [2, 3, 5])
    def test_closed_form_on_random_simplex(self, d, rng, mub_cache):
        mub = mub_cache(d)
        for _ in range(30):
            w = rng.dirichlet(np.ones(d * d)).reshape(d, d)
            report = enclosure_check(w, mub)
            assert abs(report.total - (1 + d * w.max())) < 1e-8
            assert report.violated == (w.max() > 1 / d + 1e-9 / d)

    def test_incomplete_set_rejected(self, mub_cache):
        mub = mub_cache(3)
        with pytest.raises(DimensionError):
            enclosure_check(np.full((3, 3), 1 / 9), MubSet(mub.bases[:3]))
