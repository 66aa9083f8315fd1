import click
import json
import logging
import os
import sys

from formstab.errors import FormstabError, SingularInputError
from formstab.formstab_config import config as config_func, load_tolerances
from formstab.formstab_eachrun_setup import NAMED_FORMS, RunConfig, resolve_form
from formstab.matrix_io import EXTENSIONS, FORMATS, format_matrix, matrix_to_record, read_matrix, write_matrix
from formstab.stabilizer import generate_batch
from formstab.verify import certify, moment_stats

EXIT_INVALID = 2
EXIT_SINGULAR = 3
EXIT_CERTIFICATE = 4

#################
# logging setup #
#################

def setup_logging():
    logger = logging.getLogger()
    logger.setLevel(logging.INFO)
    logger.handlers.clear()


def enable_verbose_logging():
    """Add a stream handler to show log messages on stderr (stdout carries data)."""
    logger = logging.getLogger()
    stream = logging.StreamHandler(sys.stderr)
    formatter = logging.Formatter("%(asctime)s - %(levelname)s - %(message)s", "%H:%M:%S")
    stream.setFormatter(formatter)
    logger.addHandler(stream)


def fail(exc):
    """Report a library error on stderr and exit with its code."""
    code = EXIT_SINGULAR if isinstance(exc, SingularInputError) else EXIT_INVALID
    click.echo(f"Error: {exc}", err=True)
    sys.exit(code)


@click.group()
def cli():
    """formstab - random orthogonal matrices that preserve a bilinear form.

    Given an invertible symmetric or skew-symmetric S, generates random
    orthogonal A with A^T S A = S, verifies candidate matrices, and
    summarizes sample statistics.

    \b
    Exit codes:
      0  success
      2  invalid form, file or arguments
      3  singular form
      4  certificate failure
    """
    pass


def form_source_options(func):
    """Options shared by every command that needs a form."""
    options = [
        click.option('--form', 'form_name', type=click.Choice(list(NAMED_FORMS)), default=None,
                     help="Named form: identity (--n), symplectic (--n, size 2n), indefinite (--p --q), "
                          "minkowski, split (--n, size 2n), weighted-symplectic (--weights)"),
        click.option('--file', 'form_file', type=click.Path(dir_okay=False), default=None,
                     help="Form matrix file (.mtx, .mm, .csv or .json)"),
        click.option('--n', type=int, default=None, help="Size parameter of identity/symplectic/split"),
        click.option('--p', type=int, default=None, help="Number of +1 entries of an indefinite form"),
        click.option('--q', type=int, default=None, help="Number of -1 entries of an indefinite form"),
        click.option('--weights', default=None, help="Comma-separated positive weights, e.g. 1,1,2"),
        click.option('--sym-tol', type=float, default=None, help="Relative symmetry tolerance"),
        click.option('--inv-tol', type=float, default=None, help="Relative invertibility threshold"),
        click.option('--cluster-tol', type=float, default=None, help="Relative eigenvalue clustering tolerance"),
        click.option('--gen-tol', type=float, default=None, help="Per-dimension residual tolerance"),
        click.option('--show-formstab-log', is_flag=True, help="Show formstab internal log messages"),
    ]
    for option in reversed(options):
        func = option(func)
    return func


def build_run_config(command, form_name, form_file, n, p, q, weights,
                     sym_tol, inv_tol, cluster_tol, gen_tol, **rest):
    try:
        tolerances = load_tolerances({'sym_tol': sym_tol, 'inv_tol': inv_tol,
                                      'cluster_tol': cluster_tol, 'gen_tol': gen_tol})
        return RunConfig(command=command, form_name=form_name, form_file=form_file,
                         form_params={'n': n, 'p': p, 'q': q, 'weights': weights},
                         tolerances=tolerances, **rest)
    except (FormstabError, ValueError) as e:
        fail(e)


def run_samples(run_config):
    try:
        form = resolve_form(run_config)
        return generate_batch(form, run_config.seed, run_config.count, jobs=run_config.jobs,
                              tolerances=run_config.tolerances, progress=run_config.progress)
    except FormstabError as e:
        fail(e)


def emit_samples(run_config, samples):
    """Write samples to --out files, or to stdout in sample-index order."""
    fmt = run_config.output_format
    if run_config.out_dir is not None:
        os.makedirs(run_config.out_dir, exist_ok=True)
        for i, sample in enumerate(samples):
            stem = os.path.join(run_config.out_dir, f"sample_{i:04d}")
            write_matrix(f"{stem}.{EXTENSIONS[fmt]}", sample.A, fmt)
            if run_config.verify:
                with open(f"{stem}.cert.json", 'w') as f:
                    f.write(sample.certificate.to_json() + "\n")
        logging.info(f"Wrote {len(samples)} sample(s) to {run_config.out_dir}")
        return

    if fmt == 'json':
        records = []
        for i, sample in enumerate(samples):
            record = {'index': i, 'seed': sample.seed, 'matrix': matrix_to_record(sample.A)}
            if run_config.verify:
                record['certificate'] = sample.certificate.to_dict()
            records.append(record)
        click.echo(json.dumps(records))
        return

    for i, sample in enumerate(samples):
        if fmt == 'csv' and i > 0:
            click.echo("")
        click.echo(format_matrix(sample.A, fmt), nl=False)
        if run_config.verify:
            click.echo(json.dumps({'index': i, **sample.certificate.to_dict()}), err=True)


################
# formstab gen #
################
@click.command('gen')
@form_source_options
@click.option('--seed', type=int, default=0, show_default=True, help="Master seed (64-bit unsigned)")
@click.option('--count', type=int, default=1, show_default=True, help="Number of samples")
@click.option('--format', 'output_format', type=click.Choice(FORMATS), default='mm', show_default=True,
              help="Output matrix format")
@click.option('--out', 'out_dir', type=click.Path(file_okay=False), default=None,
              help="Write sample_NNNN files to this folder instead of stdout")
@click.option('--verify', is_flag=True, help="Emit a certificate per sample; exit 4 if any fails")
@click.option('--jobs', type=int, default=1, show_default=True, help="Parallel workers")
@click.option('--progress', is_flag=True, help="Show a progress bar on stderr")
def cmd_gen(show_formstab_log, **kwargs):
    """Generate random orthogonal matrices A with A^T S A = S.

    Sample i is drawn from child stream i of --seed, so the output depends
    only on the form, the seed and the count.

    \b
    Examples:
      formstab gen --form symplectic --n 1 --seed 7 --verify
      formstab gen --form indefinite --p 1 --q 3 --count 10 --verify
      formstab gen --file S.mtx --count 100 --out samples --format csv
    """
    if show_formstab_log:
        enable_verbose_logging()
    run_config = build_run_config('gen', **kwargs)
    samples = run_samples(run_config)
    emit_samples(run_config, samples)

    failed = [i for i, sample in enumerate(samples) if not sample.passed]
    if run_config.verify and failed:
        click.echo(f"Certificate failed for {len(failed)} of {len(samples)} sample(s): {failed}", err=True)
        sys.exit(EXIT_CERTIFICATE)


###################
# formstab verify #
###################
@click.command('verify')
@form_source_options
@click.option('--matrix', 'matrix_file', required=True, type=click.Path(dir_okay=False),
              help="Candidate matrix file")
def cmd_verify(show_formstab_log, **kwargs):
    """Check that a matrix is orthogonal and preserves the form.

    Prints the certificate JSON on stdout; exits 0 iff it passed.
    """
    if show_formstab_log:
        enable_verbose_logging()
    run_config = build_run_config('verify', **kwargs)
    try:
        form = resolve_form(run_config)
        A = read_matrix(run_config.matrix_file)
        certificate = certify(A, form, tolerances=run_config.tolerances)
    except FormstabError as e:
        fail(e)

    click.echo(certificate.to_json())
    if not certificate.passed:
        click.echo("Certificate failed", err=True)
        sys.exit(EXIT_CERTIFICATE)


##################
# formstab stats #
##################
@click.command('stats')
@form_source_options
@click.option('--seed', type=int, default=0, show_default=True, help="Master seed (64-bit unsigned)")
@click.option('--count', type=int, default=1000, show_default=True, help="Number of samples")
@click.option('--jobs', type=int, default=1, show_default=True, help="Parallel workers")
@click.option('--progress', is_flag=True, help="Show a progress bar on stderr")
def cmd_stats(show_formstab_log, **kwargs):
    """Generate samples and print their moment summary as JSON.

    The summary holds per-entry means and second moments and the
    frequencies of det = +1 and det = -1.
    """
    if show_formstab_log:
        enable_verbose_logging()
    run_config = build_run_config('stats', **kwargs)
    samples = run_samples(run_config)
    summary = moment_stats([sample.A for sample in samples])
    click.echo(json.dumps(summary.to_dict()))


###################
# formstab config #
###################
@click.command()
@click.option('--set', 'set_pair', type=(str, str), default=None,
              help="Persist a tolerance default in .formstab.yaml, e.g. --set gen_tol 1e-10")
def config(set_pair):
    """View or set tolerance defaults.

    Effective values layer built-in defaults, .formstab.yaml, FORMSTAB_*
    environment variables (e.g. FORMSTAB_GEN_TOL) and command-line flags.
    """
    try:
        if set_pair is None:
            config_func()
        else:
            config_func(*set_pair)
    except ValueError as e:
        fail(e)


###########################
# putting it all together #
###########################
cli.add_command(cmd_gen)
cli.add_command(cmd_verify)
cli.add_command(cmd_stats)
cli.add_command(config)

def main():
    setup_logging()
    logging.info("formstab CLI started")
    cli()

if __name__ == '__main__':
    main()
