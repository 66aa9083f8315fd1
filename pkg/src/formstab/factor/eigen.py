"""Spectral factorizations of symmetric and skew-symmetric forms.

eigh_symmetric:  S = U diag(lam) U^T, lam ascending.
skew_canonical:  S = U T U^T with T block diagonal, block j = [[0, lam_j], [-lam_j, 0]],
                 lam_j > 0 ascending.

The skew factorization never calls a nonsymmetric Schur solver. iS is
Hermitian with eigenvalues +-lam_j; an eigenvector z of +lam_j gives the
column pair (sqrt(2) Re z, -sqrt(2) Im z), with S a = -lam b and S b = lam a.
Degenerate lam_j need no deflation: any orthonormal eigenbasis of the
positive half pairs up. The eigenvalues of iS carry absolute error of order
eps * ||S|| (no squaring), and the pairs are re-orthogonalized with one QR
before lam is read back from U^T S U.

Both factorizations are checked against tol_orth and tol_fact before they
are returned.
"""
import logging
from dataclasses import dataclass

import numpy as np
import scipy.linalg

from formstab.errors import FormKindError, IllConditionedError, InvalidDimensionError, SingularInputError
from formstab.factor.qr import qr_positive
from formstab.formstab_config import DEFAULT_TOLERANCES
from formstab.matcore import as_real_matrix

# an entry counts as leading once its modulus reaches this share of the largest
LEADING_SHARE = 0.5


@dataclass(frozen=True)
class SymmetricFactorization:
    U: np.ndarray
    lam: np.ndarray

    def reconstruct(self):
        return (self.U * self.lam[np.newaxis, :]) @ self.U.T


@dataclass(frozen=True)
class SkewCanonicalFactorization:
    U: np.ndarray
    lam: np.ndarray

    @property
    def T(self):
        return canonical_skew_matrix(self.lam)

    def reconstruct(self):
        return self.U @ self.T @ self.U.T


def canonical_skew_matrix(lam):
    """Quasi-diagonal matrix with blocks [[0, lam_j], [-lam_j, 0]]."""
    lam = np.asarray(lam, dtype=np.float64)
    T = np.zeros((2 * lam.size, 2 * lam.size))
    idx = np.arange(lam.size)
    T[2 * idx, 2 * idx + 1] = lam
    T[2 * idx + 1, 2 * idx] = -lam
    return T


def symmetry_residuals(S):
    """(||S - S^T||_F / ||S||_F, ||S + S^T||_F / ||S||_F); (0, 0) for S = 0."""
    norm = np.linalg.norm(S, 'fro')
    if norm == 0.0:
        return 0.0, 0.0
    return (float(np.linalg.norm(S - S.T, 'fro') / norm),
            float(np.linalg.norm(S + S.T, 'fro') / norm))


def _check_factorization(kind, U, reconstructed, S, tolerances):
    size = S.shape[0]
    orth = float(np.linalg.norm(U.T @ U - np.eye(size), 'fro'))
    fact = float(np.linalg.norm(reconstructed - S, 'fro'))
    fact_limit = tolerances.tol_fact(size) * float(np.linalg.norm(S, 'fro'))
    if orth > tolerances.tol_orth(size) or fact > fact_limit:
        raise IllConditionedError(
            f"{kind} factorization of size {size} missed its tolerances: "
            f"||U^T U - I|| = {orth:.3e} (limit {tolerances.tol_orth(size):.1e}), "
            f"||U T U^T - S|| = {fact:.3e} (limit {fact_limit:.1e})")


def eigh_symmetric(S, tolerances=DEFAULT_TOLERANCES):
    S = as_real_matrix(S, "S")
    if S.shape[0] != S.shape[1]:
        raise InvalidDimensionError(f"S must be square, got shape {S.shape}")
    sym_res, _ = symmetry_residuals(S)
    if sym_res > tolerances.sym_tol:
        raise FormKindError(
            f"Matrix is not symmetric: ||S - S^T||/||S|| = {sym_res:.3e} > {tolerances.sym_tol:.1e}")
    S = (S + S.T) / 2
    lam, U = scipy.linalg.eigh(S)
    factorization = SymmetricFactorization(U=U, lam=lam)
    _check_factorization("Symmetric", U, factorization.reconstruct(), S, tolerances)
    logging.info(f"Symmetric eigendecomposition of size {S.shape[0]}: lam in [{lam[0]:.6g}, {lam[-1]:.6g}]")
    return factorization


def _fix_phases(Z):
    """Scale each column so its first leading entry is real and positive."""
    mags = np.abs(Z)
    lead = np.argmax(mags >= LEADING_SHARE * mags.max(axis=0), axis=0)
    pivots = Z[lead, np.arange(Z.shape[1])]
    return Z * (np.conj(pivots) / np.abs(pivots))[np.newaxis, :]


def skew_canonical(S, tolerances=DEFAULT_TOLERANCES):
    S = as_real_matrix(S, "S")
    if S.shape[0] != S.shape[1]:
        raise InvalidDimensionError(f"S must be square, got shape {S.shape}")
    _, skew_res = symmetry_residuals(S)
    if skew_res > tolerances.sym_tol:
        raise FormKindError(
            f"Matrix is not skew-symmetric: ||S + S^T||/||S|| = {skew_res:.3e} > {tolerances.sym_tol:.1e}")
    size = S.shape[0]
    if size % 2 == 1:
        raise InvalidDimensionError(
            f"Skew-symmetric matrix has odd dimension {size}; odd skew-symmetric matrices are never invertible")
    S = (S - S.T) / 2
    half = size // 2

    # ascending: -lam_N .. -lam_1, lam_1 .. lam_N
    theta, Z = scipy.linalg.eigh(1j * S)
    if theta[-1] <= 0.0:
        raise SingularInputError("Skew-symmetric matrix is zero")
    if theta[half] <= tolerances.inv_tol * theta[-1]:
        raise SingularInputError(
            f"Skew-symmetric matrix of size {size} is numerically singular "
            f"(min lam = {theta[half]:.3e}, max lam = {theta[-1]:.3e})")

    Z = _fix_phases(Z[:, half:])
    U = np.empty((size, size))
    U[:, 0::2] = np.sqrt(2.0) * Z.real
    U[:, 1::2] = -np.sqrt(2.0) * Z.imag
    U = qr_positive(U, tolerances=tolerances).Q

    T = U.T @ S @ U
    idx = np.arange(half)
    lam = 0.5 * (T[2 * idx, 2 * idx + 1] - T[2 * idx + 1, 2 * idx])
    flipped = lam < 0
    U[:, 2 * idx[flipped] + 1] *= -1.0
    lam = np.abs(lam)
    order = np.argsort(lam, kind='stable')
    if not np.array_equal(order, idx):
        pair_cols = np.ravel(np.column_stack([2 * order, 2 * order + 1]))
        U = U[:, pair_cols]
        lam = lam[order]

    factorization = SkewCanonicalFactorization(U=U, lam=lam)
    _check_factorization("Skew canonical", U, factorization.reconstruct(), S, tolerances)
    logging.info(f"Skew canonical factorization of size {size}: lam in [{lam[0]:.6g}, {lam[-1]:.6g}]")
    return factorization
