from .clustering import *
from .generate import *
from .batch import *

__all__ = ['EigenClustering', 'cluster_eigenvalues', 'NEAR_DEGENERATE_WARNING',
           'StabilizerSample', 'sample_block_diagonal_orthogonal', 'sample_block_diagonal_unitary',
           'interleave_permutation', 'mu_embed', 'generate_symmetric', 'generate_skew', 'generate',
           'generate_batch']
