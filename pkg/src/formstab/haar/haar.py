"""Haar-distributed orthogonal and unitary blocks.

A square Ginibre matrix (i.i.d. standard normal entries) pushed through
qr_positive gives a Haar sample of O(n) (real) or U(n) (complex).
"""
import logging

from formstab.errors import SingularInputError
from formstab.factor import qr_positive
from formstab.formstab_config import DEFAULT_TOLERANCES
from formstab.matcore import check_count, complex_gaussian_matrix, gaussian_matrix


def _sample_qr(draw, n, rng, tolerances):
    # singular draws have probability zero; one resample, then give up
    try:
        return qr_positive(draw(n, rng), tolerances=tolerances)
    except SingularInputError:
        logging.warning(f"Singular Ginibre draw of size {n} from {rng!r}, resampling once")
        return qr_positive(draw(n, rng), tolerances=tolerances)


def haar_orthogonal_qr(n, rng, tolerances=DEFAULT_TOLERANCES):
    """Haar O(n) sample as a QrPair; det_sign is det(Q), read off the QR."""
    n = check_count(n)
    return _sample_qr(gaussian_matrix, n, rng, tolerances)


def haar_orthogonal(n, rng, tolerances=DEFAULT_TOLERANCES):
    return haar_orthogonal_qr(n, rng, tolerances=tolerances).Q


def haar_unitary(n, rng, tolerances=DEFAULT_TOLERANCES):
    n = check_count(n)
    return _sample_qr(complex_gaussian_matrix, n, rng, tolerances).Q
