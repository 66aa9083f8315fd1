from .certificate import *
from .statistics import *
from .finite_group import *

__all__ = ['Certificate', 'certify', 'MomentSummary', 'FitOutcome', 'moment_stats', 'chi_square_uniform',
           'ks_uniform', 'enumerate_finite_stabilizer', 'match_finite_element', 'sign_pattern_index']
