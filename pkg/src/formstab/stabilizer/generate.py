"""Random orthogonal matrices A with A^T S A = S.

Symmetric S = U diag(lam) U^T: A = U B U^T where B is block diagonal with
one Haar orthogonal block per eigenvalue cluster (the commutant of
diag(lam) inside O(N)).

Skew S = U T U^T (canonical blocks): the interleave permutation P takes T
to J = [[0, D], [-D, 0]]; the stabilizer of J inside O(2N) is mu(U_D), the
real image of the unitary matrices commuting with D. A Haar unitary block
per cluster of D gives V, Q relabels V back to D's order, and
A = U P^T mu(Q) P U^T.
"""
import logging
from dataclasses import dataclass, field
from typing import Tuple

import numpy as np
import scipy.linalg

from formstab.errors import FormKindError
from formstab.formstab_config import DEFAULT_TOLERANCES
from formstab.forms import SKEW, SYMMETRIC, BilinearForm, validate_form
from formstab.haar import haar_orthogonal_qr, haar_unitary
from formstab.matcore import Permutation, as_square_matrix, check_count, conjugate_by_permutation
from formstab.stabilizer.clustering import NEAR_DEGENERATE_WARNING, cluster_eigenvalues
from formstab.verify.certificate import Certificate, certify


@dataclass(frozen=True, eq=False)
class StabilizerSample:
    A: np.ndarray
    form_kind: str
    seed: int
    det_sign: int
    certificate: Certificate = field(repr=False)

    @property
    def residual_s(self):
        return self.certificate.residual_s

    @property
    def residual_orth(self):
        return self.certificate.residual_orth

    @property
    def warnings(self) -> Tuple[str, ...]:
        return self.certificate.warnings

    @property
    def passed(self):
        return self.certificate.passed

    def to_dict(self):
        return {
            'form_kind': self.form_kind,
            'seed': self.seed,
            'det_sign': self.det_sign,
            **self.certificate.to_dict(),
        }


def _orthogonal_blocks(clusters, rng, tolerances):
    return [haar_orthogonal_qr(k, rng, tolerances=tolerances) for k in clusters.multiplicities]


def sample_block_diagonal_orthogonal(clusters, rng, tolerances=DEFAULT_TOLERANCES):
    """diag(B_1, ..., B_M), B_i Haar on O(k_i), in cluster order."""
    return scipy.linalg.block_diag(*(pair.Q for pair in _orthogonal_blocks(clusters, rng, tolerances)))


def sample_block_diagonal_unitary(clusters, rng, tolerances=DEFAULT_TOLERANCES):
    """diag(V_1, ..., V_M), V_i Haar on U(k_i), in cluster order."""
    blocks = [haar_unitary(k, rng, tolerances=tolerances) for k in clusters.multiplicities]
    return scipy.linalg.block_diag(*blocks)


def interleave_permutation(N):
    """Sends index 2j to j and 2j + 1 to N + j (0-based), acting on 2N indices."""
    N = check_count(N, "N")
    image = [0] * (2 * N)
    for j in range(N):
        image[2 * j] = j
        image[2 * j + 1] = N + j
    return Permutation(tuple(image))


def mu_embed(u):
    """u = X + iY  ->  [[X, -Y], [Y, X]]."""
    u = as_square_matrix(u, "u")
    if not np.iscomplexobj(u):
        u = u.astype(np.complex128)
    return np.block([[u.real, -u.imag], [u.imag, u.real]])


def _ungroup(grouping, M):
    # M[g[i], g[j]] back at (i, j): W^* M W for the grouping permutation W
    return conjugate_by_permutation(grouping.inverse(), M)


def _warnings_for(clusters):
    if clusters.near_degenerate:
        logging.warning(
            f"Eigenvalue clusters separated by {clusters.min_gap:.3e} "
            f"(< 10 x cluster_tol = {10 * clusters.cluster_tol:.3e}); block structure may be ambiguous")
        return (NEAR_DEGENERATE_WARNING,)
    return ()


def generate_symmetric(form, rng, tolerances=DEFAULT_TOLERANCES, cluster_tol=None):
    if form.kind != SYMMETRIC:
        raise FormKindError(f"generate_symmetric needs a symmetric form, got {form.kind}")
    U, lam = form.factorization.U, form.factorization.lam
    clusters = cluster_eigenvalues(lam, cluster_tol=cluster_tol, tolerances=tolerances)
    logging.info(f"Symmetric form of size {form.size}: cluster sizes {clusters.multiplicities}")

    pairs = _orthogonal_blocks(clusters, rng, tolerances)
    det_sign = int(np.prod([pair.det_sign for pair in pairs]))
    B = _ungroup(clusters.grouping, scipy.linalg.block_diag(*(pair.Q for pair in pairs)))
    A = U @ B @ U.T

    certificate = certify(A, form, tolerances=tolerances, warnings=_warnings_for(clusters))
    return StabilizerSample(A=A, form_kind=SYMMETRIC, seed=rng.seed, det_sign=det_sign,
                            certificate=certificate)


def generate_skew(form, rng, tolerances=DEFAULT_TOLERANCES, cluster_tol=None):
    if form.kind != SKEW:
        raise FormKindError(f"generate_skew needs a skew-symmetric form, got {form.kind}")
    U, lam = form.factorization.U, form.factorization.lam
    P = interleave_permutation(lam.size)
    clusters = cluster_eigenvalues(lam, cluster_tol=cluster_tol, tolerances=tolerances)
    logging.info(f"Skew form of size {form.size}: cluster sizes {clusters.multiplicities}")

    V = sample_block_diagonal_unitary(clusters, rng, tolerances=tolerances)
    Q = _ungroup(clusters.grouping, V)
    C = mu_embed(Q)
    B = conjugate_by_permutation(P.inverse(), C)
    A = U @ B @ U.T

    certificate = certify(A, form, tolerances=tolerances, warnings=_warnings_for(clusters))
    if certificate.det_value < 0:
        logging.warning(f"Skew sample has det {certificate.det_value:.6g}; the unitary image has det +1")
    return StabilizerSample(A=A, form_kind=SKEW, seed=rng.seed, det_sign=1, certificate=certificate)


def generate(form, rng, tolerances=DEFAULT_TOLERANCES, cluster_tol=None):
    """Dispatch on the form kind; a raw matrix is validated first."""
    if not isinstance(form, BilinearForm):
        form = validate_form(form, tolerances=tolerances)
    if form.kind == SYMMETRIC:
        return generate_symmetric(form, rng, tolerances=tolerances, cluster_tol=cluster_tol)
    return generate_skew(form, rng, tolerances=tolerances, cluster_tol=cluster_tol)
