from dataclasses import dataclass, field
from typing import Dict, Optional, Tuple

from formstab.errors import InvalidArgumentError
from formstab.formstab_config import DEFAULT_TOLERANCES, Tolerances
from formstab.forms import (identity_form, indefinite_form, minkowski_form, split_form, symplectic_form,
                            validate_form, weighted_symplectic_form)
from formstab.matrix_io import FORMATS, read_matrix

COMMANDS = ('gen', 'verify', 'stats')

# named form -> required parameters
NAMED_FORMS = {
    'identity': ('n',),
    'symplectic': ('n',),
    'indefinite': ('p', 'q'),
    'minkowski': (),
    'split': ('n',),
    'weighted-symplectic': ('weights',),
}


@dataclass
class RunConfig:
    command: str
    form_name: Optional[str] = None
    form_params: Dict[str, object] = field(default_factory=dict)
    form_file: Optional[str] = None
    matrix_file: Optional[str] = None
    count: int = 1
    seed: int = 0
    output_format: str = 'mm'
    out_dir: Optional[str] = None
    verify: bool = False
    jobs: int = 1
    progress: bool = False
    tolerances: Tolerances = DEFAULT_TOLERANCES

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise InvalidArgumentError(f"Unknown command '{self.command}'")
        if (self.form_name is None) == (self.form_file is None):
            raise InvalidArgumentError("Give exactly one form source: --form NAME or --file PATH")
        if self.form_name is not None and self.form_name not in NAMED_FORMS:
            raise InvalidArgumentError(
                f"Unknown form '{self.form_name}'. Known: {', '.join(NAMED_FORMS)}")
        if self.command in ('gen', 'stats') and self.count < 1:
            raise InvalidArgumentError(f"--count must be at least 1, got {self.count}")
        if self.jobs < 1:
            raise InvalidArgumentError(f"--jobs must be at least 1, got {self.jobs}")
        if self.output_format not in FORMATS:
            raise InvalidArgumentError(f"Unknown output format '{self.output_format}'")
        if self.command == 'verify' and self.matrix_file is None:
            raise InvalidArgumentError("verify needs --matrix PATH")
        if self.form_name is not None:
            missing = [p for p in NAMED_FORMS[self.form_name] if self.form_params.get(p) is None]
            if missing:
                flags = ', '.join(f"--{p}" for p in missing)
                raise InvalidArgumentError(f"Form '{self.form_name}' needs {flags}")


def parse_weights(text) -> Tuple[float, ...]:
    try:
        return tuple(float(w) for w in text.split(',') if w.strip())
    except ValueError:
        raise InvalidArgumentError(f"--weights must be comma-separated numbers, got {text!r}")


def resolve_form(run_config):
    """Build the validated BilinearForm named by the run configuration."""
    tolerances = run_config.tolerances
    if run_config.form_file is not None:
        return validate_form(read_matrix(run_config.form_file), tolerances=tolerances)

    params = run_config.form_params
    name = run_config.form_name
    if name == 'identity':
        return identity_form(params['n'], tolerances=tolerances)
    if name == 'symplectic':
        return symplectic_form(params['n'], tolerances=tolerances)
    if name == 'indefinite':
        return indefinite_form(params['p'], params['q'], tolerances=tolerances)
    if name == 'minkowski':
        return minkowski_form(tolerances=tolerances)
    if name == 'split':
        return split_form(params['n'], tolerances=tolerances)
    return weighted_symplectic_form(parse_weights(params['weights']), tolerances=tolerances)
