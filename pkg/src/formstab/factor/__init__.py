from .qr import *
from .eigen import *

__all__ = ['QrPair', 'qr_positive', 'SymmetricFactorization', 'SkewCanonicalFactorization',
           'eigh_symmetric', 'skew_canonical', 'canonical_skew_matrix', 'symmetry_residuals']
