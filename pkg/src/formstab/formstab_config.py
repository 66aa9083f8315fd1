import math
import os
import sys
from dataclasses import asdict, dataclass, fields, replace

import numpy as np
import yaml

CONFIG_FILE = ".formstab.yaml"
ENV_PREFIX = "FORMSTAB_"


@dataclass(frozen=True)
class Tolerances:
    """Numerical tolerances shared by every module.

    Size-dependent tolerances are stored as their per-unit coefficient and
    scaled through the helper methods (e.g. gen_tol_for(n) = gen_tol * n).
    """
    sym_tol: float = 1e-12
    inv_tol: float = 1e-10
    cluster_tol: float = 1e-8
    orth_tol: float = 1e-13
    fact_tol: float = 1e-12
    gen_tol: float = 1e-11
    det_tol: float = 1e-9

    def tol_orth(self, n):
        return self.orth_tol * n

    def tol_fact(self, n):
        return self.fact_tol * math.sqrt(n)

    def gen_tol_for(self, n):
        return self.gen_tol * n

    def det_tol_for(self, n):
        return self.det_tol * n

    def cluster_tol_for(self, lam):
        """Absolute clustering gap for a spectrum: cluster_tol * max(1, max|lam|)."""
        lam = np.asarray(lam, dtype=float)
        scale = float(np.max(np.abs(lam))) if lam.size else 0.0
        return self.cluster_tol * max(1.0, scale)


DEFAULT_TOLERANCES = Tolerances()

TOLERANCE_NAMES = tuple(f.name for f in fields(Tolerances))


def env_var_name(name):
    return ENV_PREFIX + name.upper()


def _parse_tolerance(name, value, source):
    try:
        parsed = float(value)
    except (TypeError, ValueError):
        raise ValueError(f"Tolerance '{name}' from {source} is not a number: {value!r}")
    if not math.isfinite(parsed) or parsed <= 0:
        raise ValueError(f"Tolerance '{name}' from {source} must be a positive finite number, got {value!r}")
    return parsed


def read_config_file(fn=CONFIG_FILE):
    """Read .formstab.yaml, returns empty dict if missing."""
    if not os.path.exists(fn):
        return {}
    try:
        with open(fn, 'r') as f:
            data = yaml.safe_load(f) or {}
    except yaml.YAMLError as e:
        raise ValueError(f"{fn} is not valid YAML: {e}") from e
    if not isinstance(data, dict):
        raise ValueError(f"{fn} must hold a YAML mapping")
    return data


def load_tolerances(overrides=None, fn=CONFIG_FILE, environ=None):
    """Build the effective Tolerances.

    Layers, later wins: built-in defaults, the 'tolerances' mapping in
    .formstab.yaml, FORMSTAB_* environment variables, explicit overrides
    (CLI flags; None values are ignored).
    """
    environ = os.environ if environ is None else environ
    values = {}

    file_values = read_config_file(fn).get('tolerances', {}) or {}
    for name, value in file_values.items():
        if name not in TOLERANCE_NAMES:
            raise ValueError(f"Unknown tolerance '{name}' in {fn}. Known: {', '.join(TOLERANCE_NAMES)}")
        values[name] = _parse_tolerance(name, value, fn)

    for name in TOLERANCE_NAMES:
        var = env_var_name(name)
        if var in environ:
            values[name] = _parse_tolerance(name, environ[var], var)

    for name, value in (overrides or {}).items():
        if value is not None:
            values[name] = _parse_tolerance(name, value, "command line")

    return replace(DEFAULT_TOLERANCES, **values)


def save_tolerance(name, value, fn=CONFIG_FILE):
    """Add or update a tolerance default in .formstab.yaml."""
    if name not in TOLERANCE_NAMES:
        raise ValueError(f"Unknown tolerance '{name}'. Known: {', '.join(TOLERANCE_NAMES)}")
    parsed = _parse_tolerance(name, value, "command line")

    config_data = read_config_file(fn)
    if 'tolerances' not in config_data or config_data['tolerances'] is None:
        config_data['tolerances'] = {}
    config_data['tolerances'][name] = parsed

    with open(fn, 'w') as f:
        yaml.dump(config_data, f, default_flow_style=False)


def config(name=None, value=None, fn=CONFIG_FILE):
    """Display the effective tolerances, or persist one of them."""
    if name is not None:
        save_tolerance(name, value, fn=fn)
        print(f"Saved {name} = {float(value)!r} to {fn}")
        return

    effective = load_tolerances(fn=fn)
    if os.path.exists(fn):
        print(f"Configuration file: {fn}")
    else:
        print(f"No {fn} found, using built-in defaults.")
    print("Effective tolerances:")
    for key, val in asdict(effective).items():
        marker = f"  (from ${env_var_name(key)})" if env_var_name(key) in os.environ else ""
        print(f"  {key}: {val!r}{marker}")
    sys.stdout.flush()
