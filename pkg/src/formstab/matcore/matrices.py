"""Dense real/complex matrices and permutations.

Real matrices are C-ordered float64 numpy arrays and complex matrices are
complex128 arrays; `.real` / `.imag` give the two parts as views, so the
real embedding of a complex matrix is a pure re-layout.
"""
from dataclasses import dataclass
from typing import Tuple

import numpy as np

from formstab.errors import InvalidArgumentError, InvalidDimensionError


def check_count(n, what="n"):
    if isinstance(n, bool) or not isinstance(n, (int, np.integer)):
        raise InvalidDimensionError(f"{what} must be an integer, got {n!r}")
    if n < 1:
        raise InvalidDimensionError(f"{what} must be at least 1, got {n}")
    return int(n)


def as_real_matrix(M, name="matrix"):
    """Validate and return M as a finite 2-D float64 array."""
    arr = np.asarray(M)
    if np.iscomplexobj(arr):
        raise InvalidArgumentError(f"{name} must be real, got dtype {arr.dtype}")
    arr = np.ascontiguousarray(arr, dtype=np.float64)
    if arr.ndim != 2 or arr.shape[0] < 1 or arr.shape[1] < 1:
        raise InvalidDimensionError(f"{name} must be a non-empty 2-D matrix, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise InvalidArgumentError(f"{name} contains NaN or Inf entries")
    return arr


def as_square_matrix(M, name="matrix"):
    arr = np.asarray(M)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1] or arr.shape[0] < 1:
        raise InvalidDimensionError(f"{name} must be square, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise InvalidArgumentError(f"{name} contains NaN or Inf entries")
    if np.iscomplexobj(arr):
        return np.ascontiguousarray(arr, dtype=np.complex128)
    return np.ascontiguousarray(arr, dtype=np.float64)


def gaussian_matrix(n, rng):
    """n x n matrix of i.i.d. standard normals, n^2 draws in row-major order."""
    n = check_count(n)
    return rng.standard_normal((n, n))


def complex_gaussian_matrix(n, rng):
    """Real part (n^2 draws) first, then imaginary part (n^2 draws)."""
    n = check_count(n)
    real = rng.standard_normal((n, n))
    imag = rng.standard_normal((n, n))
    return real + 1j * imag


@dataclass(frozen=True)
class Permutation:
    """image[i] is the destination index of source index i."""
    image: Tuple[int, ...]

    def __post_init__(self):
        image = tuple(int(i) for i in self.image)
        if len(image) == 0:
            raise InvalidDimensionError("Permutation must act on at least one index")
        if sorted(image) != list(range(len(image))):
            raise InvalidArgumentError(f"Not a bijection on 0..{len(image) - 1}: {image}")
        object.__setattr__(self, 'image', image)

    @property
    def size(self):
        return len(self.image)

    @property
    def as_array(self):
        return np.array(self.image, dtype=np.intp)

    @classmethod
    def identity(cls, n):
        return cls(tuple(range(check_count(n))))

    @classmethod
    def from_order(cls, order):
        """Permutation moving source index order[k] to position k."""
        order = [int(i) for i in order]
        image = [0] * len(order)
        for position, source in enumerate(order):
            image[source] = position
        return cls(tuple(image))

    def inverse(self):
        inv = [0] * self.size
        for source, destination in enumerate(self.image):
            inv[destination] = source
        return Permutation(tuple(inv))

    def is_identity(self):
        return all(i == d for i, d in enumerate(self.image))


def permutation_to_matrix(p):
    """The 0/1 matrix M with M[p.image[j], j] = 1."""
    M = np.zeros((p.size, p.size))
    M[p.as_array, np.arange(p.size)] = 1.0
    return M


def conjugate_by_permutation(p, M):
    """P M P^T by relabeling: result[p.image[i], p.image[j]] = M[i, j]."""
    M = np.asarray(M)
    if M.ndim != 2 or M.shape != (p.size, p.size):
        raise InvalidDimensionError(
            f"Cannot conjugate a {M.shape} matrix by a permutation of size {p.size}")
    result = np.empty_like(M)
    idx = p.as_array
    result[np.ix_(idx, idx)] = M
    return result


def form_residuals(A, S):
    """(||A^T S A - S||_F / ||S||_F, ||A^T A - I||_F) for real A and S."""
    A = np.asarray(A, dtype=np.float64)
    S = np.asarray(S, dtype=np.float64)
    if A.ndim != 2 or A.shape[0] != A.shape[1] or A.shape != S.shape:
        raise InvalidDimensionError(f"Shape mismatch: A is {A.shape}, S is {S.shape}")
    s_norm = np.linalg.norm(S, 'fro')
    residual_s = np.linalg.norm(A.T @ S @ A - S, 'fro')
    if s_norm > 0:
        residual_s /= s_norm
    residual_orth = np.linalg.norm(A.T @ A - np.eye(A.shape[0]), 'fro')
    return float(residual_s), float(residual_orth)
