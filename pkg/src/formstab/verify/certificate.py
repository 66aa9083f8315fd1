import json
from dataclasses import dataclass
from typing import Tuple

import scipy.linalg

from formstab.errors import InvalidDimensionError
from formstab.formstab_config import DEFAULT_TOLERANCES
from formstab.forms import BilinearForm, validate_form
from formstab.matcore import as_real_matrix, form_residuals


@dataclass(frozen=True)
class Certificate:
    """Numerical evidence that A is orthogonal and preserves the form S.

    residual_s is ||A^T S A - S||_F / ||S||_F and residual_orth is
    ||A^T A - I||_F. passed iff both are within tol and ||det A| - 1| is
    within det_tol.
    """
    residual_s: float
    residual_orth: float
    det_value: float
    passed: bool
    tol: float
    det_tol: float
    warnings: Tuple[str, ...] = ()

    def to_dict(self):
        return {
            'residual_s': self.residual_s,
            'residual_orth': self.residual_orth,
            'det_value': self.det_value,
            'passed': self.passed,
            'warnings': list(self.warnings),
        }

    def to_json(self):
        return json.dumps(self.to_dict())


def certify(A, form, tol=None, tolerances=DEFAULT_TOLERANCES, warnings=()):
    """Check A^T S A = S and A^T A = I for A against a form; inputs are not modified.

    tol defaults to tolerances.gen_tol_for(N). The determinant comes from an
    LU factorization with partial pivoting.
    """
    if not isinstance(form, BilinearForm):
        form = validate_form(form, tolerances=tolerances)
    A = as_real_matrix(A, "A")
    if A.shape != form.S.shape:
        raise InvalidDimensionError(f"Matrix shape {A.shape} does not match form shape {form.S.shape}")
    n = A.shape[0]
    tol = tolerances.gen_tol_for(n) if tol is None else float(tol)
    det_tol = tolerances.det_tol_for(n)

    residual_s, residual_orth = form_residuals(A, form.S)
    det_value = float(scipy.linalg.det(A))
    passed = bool(residual_s <= tol and residual_orth <= tol and abs(abs(det_value) - 1.0) <= det_tol)
    return Certificate(residual_s=residual_s, residual_orth=residual_orth, det_value=det_value,
                       passed=passed, tol=tol, det_tol=det_tol, warnings=tuple(warnings))
