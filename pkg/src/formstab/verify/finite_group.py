import numpy as np

from formstab.errors import InvalidArgumentError
from formstab.formstab_config import DEFAULT_TOLERANCES
from formstab.forms import SYMMETRIC, BilinearForm, validate_form
from formstab.matcore import as_real_matrix
from formstab.stabilizer.clustering import cluster_eigenvalues

MAX_ENUMERATION_SIZE = 8


def enumerate_finite_stabilizer(form, cluster_tol=None, tolerances=DEFAULT_TOLERANCES):
    """All 2^N elements U diag(+-1) U^T of the stabilizer of a symmetric form with simple spectrum.

    Element k carries sign -1 at position i iff bit i of k is set.
    """
    if not isinstance(form, BilinearForm):
        form = validate_form(form, tolerances=tolerances)
    if form.kind != SYMMETRIC:
        raise InvalidArgumentError("Skew-symmetric forms have infinite stabilizers (they contain a circle group)")
    n = form.size
    if n > MAX_ENUMERATION_SIZE:
        raise InvalidArgumentError(f"Enumeration limited to N <= {MAX_ENUMERATION_SIZE}, got {n}")
    clusters = cluster_eigenvalues(form.factorization.lam, cluster_tol=cluster_tol, tolerances=tolerances)
    if max(clusters.multiplicities) > 1:
        raise InvalidArgumentError(
            f"Repeated eigenvalues (cluster sizes {clusters.multiplicities}) make the stabilizer infinite")

    U = form.factorization.U
    elements = []
    for k in range(2 ** n):
        signs = np.array([-1.0 if (k >> i) & 1 else 1.0 for i in range(n)])
        elements.append(U @ np.diag(signs) @ U.T)
    return elements


def match_finite_element(A, elements, tol=1e-10):
    """Index of the first element within tol of A entrywise, or None."""
    A = as_real_matrix(A, "A")
    for index, element in enumerate(elements):
        if element.shape == A.shape and np.max(np.abs(A - element)) <= tol:
            return index
    return None


def sign_pattern_index(A):
    """For a diagonal +-1 matrix, the integer whose bit i is set iff A[i, i] < 0."""
    diagonal = np.diag(as_real_matrix(A, "A"))
    return sum(1 << i for i, negative in enumerate(diagonal < 0) if negative)
