import logging
from dataclasses import dataclass, field
from typing import Literal, Union

import numpy as np

from formstab.errors import FormKindError, InvalidArgumentError, InvalidDimensionError, SingularInputError
from formstab.factor import (SkewCanonicalFactorization, SymmetricFactorization, eigh_symmetric,
                             skew_canonical, symmetry_residuals)
from formstab.formstab_config import DEFAULT_TOLERANCES
from formstab.matcore import as_real_matrix, check_count

SYMMETRIC = 'symmetric'
SKEW = 'skew'

FormKind = Literal['symmetric', 'skew']


@dataclass(frozen=True, eq=False)
class BilinearForm:
    """A validated invertible symmetric or skew-symmetric form x^T S y.

    S is stored exactly (anti)symmetrized. `factorization` is the spectral
    factorization computed during validation; min_singular_estimate and
    norm_estimate are the smallest and largest |eigenvalue| it produced.
    """
    S: np.ndarray
    kind: FormKind
    min_singular_estimate: float
    norm_estimate: float
    factorization: Union[SymmetricFactorization, SkewCanonicalFactorization] = field(repr=False)

    @property
    def size(self):
        return self.S.shape[0]


def validate_form(S, tolerances=DEFAULT_TOLERANCES):
    """Classify S, store its nearest exact (anti)symmetric form and check invertibility."""
    S = as_real_matrix(S, "S")
    if S.shape[0] != S.shape[1]:
        raise InvalidDimensionError(f"Form matrix must be square, got shape {S.shape}")
    if not np.any(S):
        raise SingularInputError("Form matrix is zero")

    sym_res, skew_res = symmetry_residuals(S)
    kind = SYMMETRIC if sym_res <= skew_res else SKEW
    if min(sym_res, skew_res) > tolerances.sym_tol:
        raise FormKindError(
            f"Form matrix is neither symmetric nor skew-symmetric "
            f"(symmetric residual {sym_res:.3e}, skew residual {skew_res:.3e}, tolerance {tolerances.sym_tol:.1e})")

    if kind == SYMMETRIC:
        exact = (S + S.T) / 2
        factorization = eigh_symmetric(exact, tolerances=tolerances)
        magnitudes = np.abs(factorization.lam)
    else:
        if S.shape[0] % 2 == 1:
            raise InvalidDimensionError(
                f"Skew-symmetric form has odd dimension {S.shape[0]}; "
                f"no odd-sized skew-symmetric matrix is invertible")
        exact = (S - S.T) / 2
        factorization = skew_canonical(exact, tolerances=tolerances)
        magnitudes = factorization.lam

    smallest = float(magnitudes.min())
    largest = float(magnitudes.max())
    if smallest <= tolerances.inv_tol * largest:
        raise SingularInputError(
            f"Form matrix is numerically singular: min |lambda| = {smallest:.3e}, "
            f"max |lambda| = {largest:.3e}, threshold {tolerances.inv_tol:.1e} (relative)")

    logging.info(f"Validated {kind} form of size {S.shape[0]} (min |lambda| {smallest:.3e})")
    return BilinearForm(S=exact, kind=kind, min_singular_estimate=smallest,
                        norm_estimate=largest, factorization=factorization)


def symplectic_form(n, tolerances=DEFAULT_TOLERANCES):
    """Omega = [[0, I_n], [-I_n, 0]]."""
    n = check_count(n)
    eye = np.eye(n)
    zero = np.zeros((n, n))
    return validate_form(np.block([[zero, eye], [-eye, zero]]), tolerances=tolerances)


def indefinite_form(p, q, tolerances=DEFAULT_TOLERANCES):
    """g = diag(+1 (p times), -1 (q times)), signature (p, q)."""
    for name, value in (('p', p), ('q', q)):
        if isinstance(value, bool) or not isinstance(value, (int, np.integer)) or value < 0:
            raise InvalidDimensionError(f"{name} must be a non-negative integer, got {value!r}")
    if p + q < 1:
        raise InvalidDimensionError("Signature (p, q) must have p + q >= 1")
    return validate_form(np.diag(np.r_[np.ones(p), -np.ones(q)]), tolerances=tolerances)


def identity_form(n, tolerances=DEFAULT_TOLERANCES):
    return validate_form(np.eye(check_count(n)), tolerances=tolerances)


def minkowski_form(tolerances=DEFAULT_TOLERANCES):
    """The Lorentz form diag(1, -1, -1, -1)."""
    return indefinite_form(1, 3, tolerances=tolerances)


def split_form(n, tolerances=DEFAULT_TOLERANCES):
    """[[0, I_n], [I_n, 0]]: symmetric with signature (n, n)."""
    n = check_count(n)
    eye = np.eye(n)
    zero = np.zeros((n, n))
    return validate_form(np.block([[zero, eye], [eye, zero]]), tolerances=tolerances)


def weighted_symplectic_form(weights, tolerances=DEFAULT_TOLERANCES):
    """J = [[0, D], [-D, 0]] with D = diag(weights), all weights positive."""
    weights = np.asarray(weights, dtype=np.float64).ravel()
    if weights.size == 0:
        raise InvalidDimensionError("weighted symplectic form needs at least one weight")
    if not np.all(np.isfinite(weights)) or np.any(weights <= 0):
        raise InvalidArgumentError(f"weights must be positive and finite, got {weights.tolist()}")
    D = np.diag(weights)
    zero = np.zeros_like(D)
    return validate_form(np.block([[zero, D], [-D, zero]]), tolerances=tolerances)
