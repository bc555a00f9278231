"""
Release script
"""

import os
import shutil
import subprocess
import sys
from pathlib import Path

import click

DIST_PATH = 'dist'
DIST_PATH_DELETE = 'dist_delete'
CONTEXT_SETTINGS = dict(help_option_names=['-h', '--help'])


@click.group(context_settings=CONTEXT_SETTINGS)
def cli():
    pass


def _has_dist_files():
    dist_path = Path(DIST_PATH)
    return dist_path.exists() and bool(list(dist_path.glob('*')))


@cli.command()
@click.option('--force/--no-force', default=False, help='Will force a new build removing the previous ones')
def build(force):
    """ Builds the netkeycast wheel and source distribution. """
    dist_path = Path(DIST_PATH)
    if _has_dist_files():
        if force or click.confirm('{} is not empty - delete contents?'.format(dist_path)):
            dist_path.rename(DIST_PATH_DELETE)
            shutil.rmtree(Path(DIST_PATH_DELETE))
            dist_path.mkdir()
        else:
            click.echo('Aborting')
            sys.exit(1)

    subprocess.check_call([sys.executable, 'setup.py', 'bdist_wheel'])
    subprocess.check_call([sys.executable, 'setup.py', 'sdist', '--formats=gztar'])


@cli.command()
@click.option('--release/--no-release', default=False, help='--release to upload to pypi otherwise upload to test.pypi')
@click.option('--rebuild/--no-rebuild', default=True, help='Will force a rebuild of the build files (src and wheels)')
@click.pass_context
def upload(ctx, release, rebuild):
    """ Uploads the distribution files to pypi or test.pypi. """
    if rebuild:
        ctx.invoke(build, force=True)
    elif not _has_dist_files():
        click.echo("No distribution files found. Please run 'build' command first")
        return

    args = ['twine', 'upload', 'dist/*']
    if not release:
        args[2:2] = ['--repository-url', 'https://test.pypi.org/legacy/']
    subprocess.call(args, env=os.environ.copy())


@cli.command()
def check():
    """ Checks the long description of the built files. """
    if not _has_dist_files():
        click.echo("No distribution files found. Please run 'build' command first")
        return
    subprocess.check_call(['twine', 'check', 'dist/*'])


@cli.command()
@click.option('--fast/--no-fast', default=False, help='Skip the 1000 instance property suites')
@click.option('--max-enum', type=int, help='Overrides KEYCAST_MAX_ENUM for the run')
@click.option('-v/-nv', default=False, help='Verbose')
def test(fast, max_enum, v):
    """ Runs the test suite. """
    args = [sys.executable, '-m', 'pytest', 'tests/']
    if fast:
        args += ['-k', 'not random_corpus']
    if v:
        args.append('-v')

    env = os.environ.copy()
    if max_enum is not None:
        env['KEYCAST_MAX_ENUM'] = str(max_enum)
    sys.exit(subprocess.call(args, env=env))


if __name__ == "__main__":
    cli()
