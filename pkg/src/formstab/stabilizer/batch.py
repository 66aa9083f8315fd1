import logging
import sys
from concurrent.futures import ThreadPoolExecutor

from tqdm import tqdm

from formstab.errors import InvalidArgumentError
from formstab.formstab_config import DEFAULT_TOLERANCES
from formstab.forms import BilinearForm, validate_form
from formstab.matcore import RngStream
from formstab.stabilizer.generate import generate


def generate_batch(form, seed, count, jobs=1, tolerances=DEFAULT_TOLERANCES, cluster_tol=None,
                   progress=False):
    """Generate `count` samples; sample i draws from child stream i of `seed`.

    Results are in sample-index order whatever `jobs` is, and identical for
    every value of `jobs`.
    """
    if isinstance(count, bool) or not isinstance(count, int) or count < 1:
        raise InvalidArgumentError(f"count must be a positive integer, got {count!r}")
    if isinstance(jobs, bool) or not isinstance(jobs, int) or jobs < 1:
        raise InvalidArgumentError(f"jobs must be a positive integer, got {jobs!r}")
    if not isinstance(form, BilinearForm):
        form = validate_form(form, tolerances=tolerances)
    master = RngStream(seed)
    logging.info(f"Generating {count} sample(s) for a {form.kind} form of size {form.size}, "
                 f"seed {master.seed}, {jobs} job(s)")

    def one(index):
        return generate(form, master.child(index), tolerances=tolerances, cluster_tol=cluster_tol)

    bar = dict(total=count, disable=not progress, file=sys.stderr, desc="samples")
    if jobs == 1:
        return [one(i) for i in tqdm(range(count), **bar)]
    with ThreadPoolExecutor(max_workers=jobs) as executor:
        return list(tqdm(executor.map(one, range(count)), **bar))
