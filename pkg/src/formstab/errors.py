import numpy as np


class FormstabError(Exception):
    """Base class for every error raised by formstab."""


class InvalidDimensionError(FormstabError, ValueError):
    """A size is zero, odd where it must be even, or two shapes disagree."""


class FormKindError(FormstabError, ValueError):
    """A matrix is neither symmetric nor skew-symmetric within tolerance."""


class SingularInputError(FormstabError, np.linalg.LinAlgError):
    """A matrix that must be invertible is numerically singular."""


class IllConditionedError(SingularInputError):
    """A factorization missed its orthogonality or reconstruction tolerance."""


class InvalidArgumentError(FormstabError, ValueError):
    """A count, seed, weight list or option value is out of range."""


class MatrixFileError(FormstabError, ValueError):
    """A matrix file could not be read or parsed."""
