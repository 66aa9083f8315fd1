"""Tests for clustering, block samplers and the two generation algorithms."""
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from formstab.errors import FormKindError, InvalidArgumentError, InvalidDimensionError
from formstab.factor import canonical_skew_matrix
from formstab.formstab_config import DEFAULT_TOLERANCES
from formstab.forms import SKEW, SYMMETRIC, identity_form, indefinite_form, symplectic_form, validate_form
from formstab.haar import haar_unitary
from formstab.matcore import RngStream, conjugate_by_permutation
from formstab.stabilizer import (NEAR_DEGENERATE_WARNING, cluster_eigenvalues, generate, generate_batch,
                                 generate_skew, generate_symmetric, interleave_permutation, mu_embed,
                                 sample_block_diagonal_orthogonal, sample_block_diagonal_unitary)
from formstab.verify import certify, chi_square_uniform

from tests.conftest import random_orthogonal, random_skew_form, random_symmetric_form


def gen_tol(n):
    return DEFAULT_TOLERANCES.gen_tol_for(n)


def assert_in_stabilizer(A, S, residual_s_bound, residual_orth_bound):
    n = S.shape[0]
    assert np.linalg.norm(A.T @ S @ A - S) <= residual_s_bound * np.linalg.norm(S)
    assert np.linalg.norm(A.T @ A - np.eye(n)) <= residual_orth_bound


class TestClusterEigenvalues:
    """Tests for cluster_eigenvalues."""

    def test_exact_repeat(self):
        """(1, 1, 2) gives clusters (2, 1)."""
        c = cluster_eigenvalues([1.0, 1.0, 2.0], cluster_tol=1e-8)
        assert c.multiplicities == (2, 1)
        assert np.allclose(c.values, [1.0, 2.0])

    def test_sub_tolerance_gap_merges(self):
        """(1, 1 + 1e-12, 5) gives clusters (2, 1)."""
        c = cluster_eigenvalues([1.0, 1.0 + 1e-12, 5.0], cluster_tol=1e-8)
        assert c.multiplicities == (2, 1)

    def test_chained_merging(self):
        """(1, 1.5, 2) with tol 0.6 chains into one cluster."""
        c = cluster_eigenvalues([1.0, 1.5, 2.0], cluster_tol=0.6)
        assert c.multiplicities == (3,)
        assert c.count == 1

    def test_default_tolerance_scales(self):
        """Default cluster_tol is 1e-8 * max(1, max|lam|)."""
        c = cluster_eigenvalues([-100.0, 1.0])
        assert c.cluster_tol == pytest.approx(1e-6)
        assert cluster_eigenvalues([0.1, 0.2]).cluster_tol == pytest.approx(1e-8)

    def test_grouping_sorts_unsorted_input(self):
        """grouping sends each index to its sorted position."""
        c = cluster_eigenvalues([3.0, 1.0, 2.0, 1.0], cluster_tol=1e-8)
        assert c.multiplicities == (2, 1, 1)
        assert c.grouping.image == (3, 0, 2, 1)
        assert c.offsets == (0, 2, 3, 4)

    def test_near_degenerate_flag(self):
        """A gap between tol and 10 * tol is flagged."""
        assert cluster_eigenvalues([1.0, 1.0 + 5e-8], cluster_tol=1e-8).near_degenerate
        assert not cluster_eigenvalues([1.0, 2.0], cluster_tol=1e-8).near_degenerate

    def test_empty_rejected(self):
        """An empty spectrum cannot be clustered."""
        with pytest.raises(InvalidDimensionError):
            cluster_eigenvalues([])


class TestBlockDiagonalSamplers:
    """Tests for the block-diagonal commutant samplers."""

    def test_single_cluster_is_haar_block(self):
        """One cluster gives a single dense orthogonal block."""
        c = cluster_eigenvalues([2.0, 2.0, 2.0])
        B = sample_block_diagonal_orthogonal(c, RngStream(1))
        assert B.shape == (3, 3)
        assert np.linalg.norm(B.T @ B - np.eye(3)) <= 1e-13 * 3
        assert np.count_nonzero(np.abs(B) > 1e-12) > 3

    def test_commutes_with_grouped_spectrum(self):
        """k=(2, 1): B diag(m1, m1, m2) = diag(m1, m1, m2) B."""
        c = cluster_eigenvalues([1.0, 1.0, 4.0])
        B = sample_block_diagonal_orthogonal(c, RngStream(2))
        D = np.diag([1.0, 1.0, 4.0])
        assert np.max(np.abs(B @ D - D @ B)) <= 1e-12

    def test_distinct_spectrum_signs_uniform(self, stat_config):
        """All-simple clusters give diagonal +-1 matrices uniform over the 2^N sign patterns."""
        cfg = stat_config['block_signs']
        n = cfg['size']
        c = cluster_eigenvalues(np.arange(1.0, n + 1))
        rng = RngStream(cfg['seed'])
        counts = np.zeros(2 ** n)
        for _ in range(cfg['count']):
            B = sample_block_diagonal_orthogonal(c, rng)
            assert np.array_equal(np.abs(B), np.eye(n))
            counts[sum(1 << i for i in range(n) if B[i, i] < 0)] += 1
        assert chi_square_uniform(counts, alpha=stat_config['alpha']).passed

    def test_unitary_single_cluster(self):
        """One cluster gives a single Haar U(N) block."""
        c = cluster_eigenvalues([1.0, 1.0])
        V = sample_block_diagonal_unitary(c, RngStream(3))
        assert np.iscomplexobj(V)
        assert np.max(np.abs(V.conj().T @ V - np.eye(2))) <= 1e-12

    def test_unitary_simple_clusters_are_phases(self):
        """All-simple clusters give a diagonal of unit-modulus phases."""
        c = cluster_eigenvalues([1.0, 2.0, 3.0])
        V = sample_block_diagonal_unitary(c, RngStream(4))
        assert np.allclose(np.abs(np.diag(V)), 1.0)
        assert np.allclose(V - np.diag(np.diag(V)), 0)

    @settings(max_examples=40, deadline=None)
    @given(st.lists(st.integers(min_value=1, max_value=3), min_size=1, max_size=4),
           st.integers(min_value=0, max_value=2 ** 32 - 1))
    def test_unitary_commutation(self, sizes, seed):
        """V* D V = D for random clusterings up to N = 12."""
        lam = np.repeat(np.arange(1.0, len(sizes) + 1), sizes)
        c = cluster_eigenvalues(lam)
        V = sample_block_diagonal_unitary(c, RngStream(seed))
        D = np.diag(lam)
        assert np.max(np.abs(V.conj().T @ D @ V - D)) <= 1e-12 * np.max(lam)


class TestInterleaveAndMu:
    """Tests for interleave_permutation and mu_embed."""

    def test_n1_is_identity(self):
        """N=1 is the identity on two indices."""
        assert interleave_permutation(1).is_identity()

    def test_n2_image(self):
        """N=2 maps 0->0, 1->2, 2->1, 3->3."""
        assert interleave_permutation(2).image == (0, 2, 1, 3)

    @pytest.mark.parametrize('N', range(1, 6))
    def test_canonical_to_block_form(self, N, gen):
        """P T P^T is exactly [[0, D], [-D, 0]]."""
        lam = gen.uniform(0.1, 10.0, N)
        J = conjugate_by_permutation(interleave_permutation(N), canonical_skew_matrix(lam))
        D = np.diag(lam)
        assert np.array_equal(J, np.block([[np.zeros((N, N)), D], [-D, np.zeros((N, N))]]))

    def test_mu_identity(self):
        """mu(I_N) = I_2N."""
        assert np.array_equal(mu_embed(np.eye(3, dtype=complex)), np.eye(6))

    def test_mu_i(self):
        """mu([[i]]) = [[0, -1], [1, 0]]."""
        assert np.array_equal(mu_embed([[1j]]), [[0.0, -1.0], [1.0, 0.0]])

    def test_mu_real_input(self):
        """A real matrix embeds block-diagonally."""
        assert np.array_equal(mu_embed([[2.0]]), [[2.0, 0.0], [0.0, 2.0]])

    def test_mu_suite(self):
        """Homomorphism, orthogonality and preservation of J for commuting unitaries."""
        rng = RngStream(606)
        gen = np.random.default_rng(606)
        for _ in range(200):
            N = int(gen.integers(1, 7))
            u, v = haar_unitary(N, rng), haar_unitary(N, rng)
            assert np.linalg.norm(mu_embed(u @ v) - mu_embed(u) @ mu_embed(v)) <= 1e-13 * N
            assert np.max(np.abs(mu_embed(u).T @ mu_embed(u) - np.eye(2 * N))) <= 1e-12

            # D positive with repeats, u in its commutant
            lam = np.sort(gen.choice([0.5, 1.0, 3.0], N))
            w = sample_block_diagonal_unitary(cluster_eigenvalues(lam), rng)
            D = np.diag(lam)
            J = np.block([[np.zeros((N, N)), D], [-D, np.zeros((N, N))]])
            C = mu_embed(w)
            assert np.linalg.norm(C.T @ J @ C - J) <= 1e-12 * np.linalg.norm(J)


class TestGenerateSymmetric:
    """Tests for sampling the stabilizer of a symmetric form."""

    def test_identity_form(self):
        """S = I gives a Haar orthogonal matrix."""
        sample = generate_symmetric(identity_form(4), RngStream(1))
        assert sample.form_kind == SYMMETRIC
        assert sample.passed
        assert np.linalg.norm(sample.A.T @ sample.A - np.eye(4)) <= gen_tol(4)
        assert sample.det_sign == int(np.sign(np.linalg.det(sample.A)))

    def test_indefinite_two_cells(self, stat_config):
        """S = diag(1, -1) samples all four diag(+-1, +-1) uniformly."""
        cfg = stat_config['indefinite_cells']
        form = indefinite_form(1, 1)
        rng = RngStream(cfg['seed'])
        counts = np.zeros(4)
        for _ in range(cfg['count']):
            A = generate_symmetric(form, rng).A
            assert np.allclose(np.abs(A), np.eye(2), atol=1e-12)
            counts[(A[0, 0] < 0) + 2 * (A[1, 1] < 0)] += 1
        assert np.all(counts > 0)
        assert chi_square_uniform(counts, alpha=stat_config['alpha']).passed

    def test_random_ten_by_ten(self, gen):
        """A random invertible 10x10 form gives small residuals."""
        form = validate_form(random_symmetric_form(10, gen))
        sample = generate_symmetric(form, RngStream(10))
        assert sample.residual_s <= 1e-10
        assert sample.residual_orth <= 1e-12 * 10

    def test_rejects_skew_form(self):
        """A skew form is the wrong kind."""
        with pytest.raises(FormKindError):
            generate_symmetric(symplectic_form(1), RngStream(1))

    def test_residual_suite(self, gen):
        """Random mixed-sign forms N = 1..20: residuals within 1e-10 ||S|| and 1e-11 N."""
        rng = RngStream(2001)
        for n in range(1, 21):
            for _ in range(100):
                form = validate_form(random_symmetric_form(n, gen))
                A = generate_symmetric(form, rng).A
                assert_in_stabilizer(A, form.S, 1e-10, 1e-11 * n)

    def test_degenerate_clusters(self, gen):
        """Clusters (3, 3, 2, 2) at N = 10 exercise the multi-block commutant."""
        lam = np.array([-3.0, -3.0, -3.0, 0.5, 0.5, 0.5, 2.0, 2.0, 7.0, 7.0])
        Q = random_orthogonal(10, gen)
        form = validate_form((Q * lam) @ Q.T)
        rng = RngStream(33)
        for _ in range(20):
            sample = generate_symmetric(form, rng)
            assert_in_stabilizer(sample.A, form.S, 1e-10, 1e-11 * 10)
        clusters = cluster_eigenvalues(form.factorization.lam)
        assert clusters.multiplicities == (3, 3, 2, 2)

    def test_det_sign_from_block_qr(self, gen):
        """det_sign, read off each block's QR, equals the sign of det(A)."""
        lam = np.array([-3.0, -3.0, -3.0, 0.5, 0.5, 2.0])
        Q = random_orthogonal(6, gen)
        form = validate_form((Q * lam) @ Q.T)
        rng = RngStream(66)
        signs = set()
        for _ in range(30):
            sample = generate_symmetric(form, rng)
            assert sample.det_sign == int(np.sign(np.linalg.det(sample.A)))
            signs.add(sample.det_sign)
        assert signs == {1, -1}

    def test_near_degenerate_warning(self):
        """Clusters closer than 10 * cluster_tol put a warning on the certificate."""
        form = validate_form(np.diag([1.0, 1.0 + 3e-8, 2.0]))
        sample = generate_symmetric(form, RngStream(5))
        assert NEAR_DEGENERATE_WARNING in sample.warnings
        assert sample.passed


class TestGenerateSkew:
    """Tests for sampling the stabilizer of a skew form."""

    def test_omega1_is_rotation(self):
        """S = Omega(1) gives a rotation preserving Omega."""
        sample = generate_skew(symplectic_form(1), RngStream(7))
        A = sample.A
        assert sample.form_kind == SKEW
        assert sample.det_sign == 1
        assert abs(A[0, 0] - A[1, 1]) <= 1e-12
        assert abs(A[0, 1] + A[1, 0]) <= 1e-12
        assert abs(A[0, 0] ** 2 + A[0, 1] ** 2 - 1) <= 1e-12

    def test_rotation_angle(self, stat_config):
        """Omega(1) samples are rotations with mean cos(theta) near 0."""
        cfg = stat_config['rotation_angle']
        form = symplectic_form(1)
        rng = RngStream(cfg['seed'])
        cosines = []
        for _ in range(cfg['count']):
            A = generate_skew(form, rng).A
            assert abs(A[0, 0] - A[1, 1]) <= 1e-12
            assert abs(A[0, 1] + A[1, 0]) <= 1e-12
            assert abs(np.hypot(A[0, 0], A[0, 1]) - 1) <= 1e-12
            cosines.append(A[0, 0])
        assert abs(np.mean(cosines)) <= stat_config['sigma_band'] / np.sqrt(cfg['count'])

    @pytest.mark.parametrize('n', range(1, 7))
    def test_symplectic_single_cluster(self, n):
        """Omega(n) has one cluster and gives orthogonal symplectic matrices."""
        form = symplectic_form(n)
        assert cluster_eigenvalues(form.factorization.lam).multiplicities == (n,)
        sample = generate_skew(form, RngStream(n))
        assert_in_stabilizer(sample.A, form.S, 1e-10, gen_tol(2 * n))
        assert sample.passed

    def test_random_eight_by_eight(self, gen):
        """A random invertible 8x8 skew form gives small residuals."""
        form = validate_form(random_skew_form(4, gen))
        sample = generate_skew(form, RngStream(8))
        assert sample.residual_s <= 1e-10
        assert sample.residual_orth <= 1e-11

    def test_residual_suite(self, gen):
        """Random skew forms 2N = 2..20: residuals within 1e-10 ||S|| and 1e-11 2N."""
        rng = RngStream(2002)
        for n_pairs in range(1, 11):
            for _ in range(100):
                form = validate_form(random_skew_form(n_pairs, gen))
                sample = generate_skew(form, rng)
                assert_in_stabilizer(sample.A, form.S, 1e-10, 1e-11 * 2 * n_pairs)
                assert np.linalg.det(sample.A) > 0

    def test_weighted_repeats(self, gen):
        """Repeated lam in a rotated weighted form use multi-dimensional unitary blocks."""
        Q = random_orthogonal(8, gen)
        form = validate_form(Q @ canonical_skew_matrix([1.0, 3.0, 1.0, 3.0]) @ Q.T)
        assert cluster_eigenvalues(form.factorization.lam).multiplicities == (2, 2)
        sample = generate_skew(form, RngStream(44))
        assert_in_stabilizer(sample.A, form.S, 1e-10, gen_tol(8))

    @pytest.mark.parametrize('small', [1e-5, 1e-8])
    def test_wide_spectrum_samples_pass(self, gen, small):
        """A skew form with lam from small to 5 still gives certified samples."""
        Q = random_orthogonal(8, gen)
        form = validate_form(Q @ canonical_skew_matrix([small, 0.5, 1.0, 5.0]) @ Q.T)
        rng = RngStream(55)
        for _ in range(20):
            sample = generate_skew(form, rng)
            assert sample.passed
            assert_in_stabilizer(sample.A, form.S, 1e-10, gen_tol(8))

    def test_rejects_symmetric_form(self):
        """A symmetric form is the wrong kind."""
        with pytest.raises(FormKindError):
            generate_skew(identity_form(2), RngStream(1))


class TestGenerate:
    """Tests for generate dispatch, determinism and group properties."""

    def test_identity_dispatch(self):
        """I2 goes to the symmetric algorithm."""
        sample = generate(np.eye(2), RngStream(1))
        assert sample.form_kind == SYMMETRIC

    def test_omega_dispatch(self):
        """Omega(1) goes to the skew algorithm."""
        sample = generate([[0.0, 1.0], [-1.0, 0.0]], RngStream(1))
        assert sample.form_kind == SKEW

    def test_ambiguous_form(self):
        """A matrix that is neither symmetric nor skew raises."""
        with pytest.raises(FormKindError):
            generate([[1.0, 2.0], [3.0, 4.0]], RngStream(1))

    def test_deterministic(self, gen):
        """Same form and seed give bit-identical matrices."""
        S = random_skew_form(3, gen)
        a = generate(S, RngStream(99)).A
        b = generate(S.copy(), RngStream(99)).A
        assert np.array_equal(a, b)

    def test_sample_dict(self):
        """to_dict carries the kind, seed, det sign and certificate fields."""
        sample = generate(np.eye(2), RngStream(12))
        data = sample.to_dict()
        assert data['form_kind'] == SYMMETRIC
        assert data['seed'] == 12
        assert data['det_sign'] in (1, -1)
        assert set(data) >= {'residual_s', 'residual_orth', 'det_value', 'passed', 'warnings'}

    def test_group_closure(self, gen):
        """Products and transposes of samples pass certify with 3x tolerance."""
        rng = RngStream(1100)
        for i in range(100):
            if i % 2 == 0:
                n = int(gen.integers(1, 13))
                form = validate_form(random_symmetric_form(n, gen))
            else:
                form = validate_form(random_skew_form(int(gen.integers(1, 7)), gen))
            A1 = generate(form, rng).A
            A2 = generate(form, rng).A
            tol = 3 * gen_tol(form.size)
            assert certify(A1 @ A2, form, tol=tol).passed
            assert certify(A1.T, form, tol=tol).passed


class TestGenerateBatch:
    """Tests for generate_batch."""

    def test_child_streams(self):
        """Sample i equals a direct draw from child stream i."""
        form = symplectic_form(2)
        batch = generate_batch(form, 7, 3)
        for i, sample in enumerate(batch):
            direct = generate(form, RngStream(7).child(i))
            assert np.array_equal(sample.A, direct.A)
            assert sample.seed == RngStream(7).child(i).seed

    def test_jobs_do_not_change_results(self):
        """Parallel generation returns the same samples in index order."""
        form = indefinite_form(2, 3)
        serial = generate_batch(form, 5, 12)
        parallel = generate_batch(form, 5, 12, jobs=4)
        for a, b in zip(serial, parallel):
            assert np.array_equal(a.A, b.A)

    def test_raw_matrix_is_validated(self):
        """A raw matrix is validated before sampling."""
        batch = generate_batch(np.eye(3), 1, 2)
        assert len(batch) == 2

    @pytest.mark.parametrize('count,jobs', [(0, 1), (2, 0)])
    def test_invalid_counts(self, count, jobs):
        """count and jobs must be positive."""
        with pytest.raises(InvalidArgumentError):
            generate_batch(np.eye(2), 1, count, jobs=jobs)
