from .rng import *
from .matrices import *

__all__ = ['RngStream', 'check_seed', 'Permutation', 'gaussian_matrix', 'complex_gaussian_matrix',
           'permutation_to_matrix', 'conjugate_by_permutation', 'form_residuals',
           'as_real_matrix', 'as_square_matrix', 'check_count']
