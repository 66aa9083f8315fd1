"""Random orthogonal matrices that preserve a symmetric or skew-symmetric bilinear form."""
from formstab.errors import (FormKindError, FormstabError, IllConditionedError, InvalidArgumentError,
                             InvalidDimensionError, MatrixFileError, SingularInputError)
from formstab.formstab_config import DEFAULT_TOLERANCES, Tolerances, load_tolerances
from formstab.forms import *
from formstab.stabilizer import StabilizerSample, generate, generate_batch
from formstab.verify import Certificate, certify, moment_stats
