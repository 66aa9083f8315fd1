from .forms import *

__all__ = ['BilinearForm', 'SYMMETRIC', 'SKEW', 'validate_form', 'symplectic_form', 'indefinite_form',
           'identity_form', 'minkowski_form', 'split_form', 'weighted_symplectic_form']
