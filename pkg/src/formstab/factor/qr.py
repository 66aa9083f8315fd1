import logging
from dataclasses import dataclass
from typing import Optional

import numpy as np
import scipy.linalg

from formstab.errors import SingularInputError
from formstab.formstab_config import DEFAULT_TOLERANCES
from formstab.matcore import as_square_matrix


@dataclass(frozen=True)
class QrPair:
    Q: np.ndarray
    R: np.ndarray
    # det(Q) for real input, None for complex
    det_sign: Optional[int] = None


def qr_positive(M, tolerances=DEFAULT_TOLERANCES):
    """QR factorization with a real, strictly positive diagonal in R.

    Householder QR (LAPACK geqrf/orgqr through scipy) followed by the sign fix
    Q' = Q L, R' = L^-1 R with L = diag(r_ii / |r_ii|). For an invertible M
    this is the unique such factorization, independent of the QR routine.
    Works for real and complex square matrices.

    For real M, det(Q') = (-1)^(nontrivial reflectors) * det(L), which is
    also the sign of det(M).

    Raises SingularInputError when min |r_ii| <= inv_tol * max |r_ii|.
    """
    M = as_square_matrix(M)
    (h, tau), R = scipy.linalg.qr(M, mode='raw')
    d = np.diag(R)
    mags = np.abs(d)
    largest = mags.max()
    if largest == 0.0 or mags.min() <= tolerances.inv_tol * largest:
        raise SingularInputError(
            f"QR input of size {M.shape[0]} is numerically singular "
            f"(min |r_ii| = {mags.min():.3e}, max |r_ii| = {largest:.3e})")

    orgqr, = scipy.linalg.get_lapack_funcs(('orgqr',), (h,))
    Q, _, info = orgqr(h, tau)
    if info != 0:
        raise np.linalg.LinAlgError(f"orgqr failed with info = {info}")

    phases = d / mags
    det_sign = None
    if not np.iscomplexobj(Q):
        reflectors = int(np.count_nonzero(tau))
        det_sign = (-1) ** reflectors * int(np.prod(phases))
    Q = Q * phases[np.newaxis, :]
    R = np.triu(np.conj(phases)[:, np.newaxis] * R)
    np.fill_diagonal(R, mags)
    logging.debug(f"qr_positive: size {M.shape[0]}, min |r_ii| {mags.min():.3e}")
    return QrPair(Q=Q, R=R, det_sign=det_sign)
