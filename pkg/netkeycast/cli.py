"""
Command line front end: ``netkeycast gen | analyze | construct | verify | plotkin | gap``

Exit codes: 0 when every check passes (or the analysis completes), 1 on a
verification or feasibility failure, 2 on usage or input errors.
"""
import json
import logging
import sys
from fractions import Fraction

import click

from . import analysis, keycast, securecast
from .__version__ import __version__
from .generators import generate
from .graph import (InstanceError, count_edge_disjoint_paths, count_vertex_disjoint_paths,
                    cut_set, load_instance, normalize_terminals, prune_unreachable, save_instance,
                    tight_set_cut)
from .lincode import CodeFormatError, EnumerationCapError, export_code, import_code, verify_code
from .utils import (CheckResult, ConstructionMode, InstanceFamily, Report, SecrecyMode,
                    node_key)
from .utils.dot import keycast_graph, secure_graph, write_dot

log = logging.getLogger(__name__)

CONTEXT_SETTINGS = dict(help_option_names=['-h', '--help'])
EXIT_FAILURE = 1


class InputError(click.ClickException):
    """ Malformed or invalid input files """
    exit_code = 2


class RationalType(click.ParamType):
    """ Exact rationals such as 1/8, 0.5 or 3 """
    name = 'rational'

    def convert(self, value, param, ctx):
        if isinstance(value, Fraction):
            return value
        try:
            return Fraction(value)
        except (ValueError, ZeroDivisionError):
            self.fail('{!r} is not a rational number'.format(value), param, ctx)


class CaseEnumType(click.ParamType):
    """ Accepts any casing of a CaseEnum value (secure-tight, secureTight...) """

    def __init__(self, enum):
        self.enum = enum
        self.name = enum.__name__

    def convert(self, value, param, ctx):
        member = self.enum.from_value(value)
        if member is None:
            self.fail('{!r} is not one of: {}'.format(
                value, ', '.join(m.value for m in self.enum)), param, ctx)
        return member


RATIONAL = RationalType()


def _emit(report, as_json):
    if as_json:
        click.echo(json.dumps(report.to_dict(), indent=2))
    else:
        click.echo(report.to_text())


def _load(path):
    try:
        return load_instance(path)
    except (InstanceError, ValueError) as e:
        raise InputError('Invalid instance {}: {}'.format(path, e))


@click.group(context_settings=CONTEXT_SETTINGS)
@click.version_option(__version__)
@click.option('-v', '--verbose', count=True, help='-v for info logs, -vv for debug logs')
def cli(verbose):
    """ Multiple key-cast over acyclic networks. """
    level = logging.WARNING if not verbose else (logging.INFO if verbose == 1 else logging.DEBUG)
    logging.basicConfig(level=level, format='%(levelname)s %(name)s: %(message)s', stream=sys.stderr)


@cli.command()
@click.argument('family', type=CaseEnumType(InstanceFamily))
@click.option('--ell', type=click.IntRange(min=1), default=2, show_default=True, help='Terminal sets')
@click.option('--seed', type=int, default=0, show_default=True, help='Seed of the random family')
@click.option('--nodes', type=click.IntRange(min=3), default=8, show_default=True)
@click.option('--edge-prob', type=click.FloatRange(0, 1), default=0.4, show_default=True)
@click.option('--terminals-per-set', type=click.IntRange(min=1), default=1, show_default=True)
@click.option('--secrecy-mode', type=CaseEnumType(SecrecyMode), default='none', show_default=True,
              help='Secrecy of the random family')
@click.option('-o', '--out', 'out_path', type=click.Path(dir_okay=False), help='Output file (stdout if omitted)')
def gen(family, ell, seed, nodes, edge_prob, terminals_per_set, secrecy_mode, out_path):
    """ Generates an instance of FAMILY: fig3, fig4, secure-tight, random or infeasible. """
    try:
        instance = generate(family, ell=ell, seed=seed, nodes=nodes, edge_prob=edge_prob,
                            terminals_per_set=terminals_per_set, secrecy_mode=secrecy_mode)
    except ValueError as e:
        raise click.UsageError(str(e))
    if out_path is None:
        click.echo(json.dumps(instance.to_dict(), indent=2))
        return
    if not save_instance(instance, out_path):
        raise click.ClickException('Could not write {}'.format(out_path))
    click.echo('{!r} written to {}'.format(instance, out_path))


def _analyze(instance):
    report = Report(title='analyze')
    report['instance'] = repr(instance)
    try:
        pruned = prune_unreachable(instance)
    except InstanceError as e:
        report['keycast'] = 'INFEASIBLE'
        report['secure'] = 'FAIL'
        report['reason'] = str(e)
        return report

    normalized = normalize_terminals(pruned)
    report['cut_sets'] = {j: sorted(cut_set(normalized, j)) for j in normalized.set_indices}
    report['tight_sets'] = {j: sorted(tight_set_cut(normalized, j)) for j in normalized.set_indices}
    report['connectivity'] = {
        str(v): {'edge_disjoint': count_edge_disjoint_paths(pruned, v),
                 'vertex_disjoint': count_vertex_disjoint_paths(pruned, v)}
        for v in sorted(pruned.nodes, key=node_key) if v != pruned.source}

    feasibility = keycast.check_feasibility(normalized)
    report['keycast'] = 'FEASIBLE' if feasibility else 'INFEASIBLE'
    if not feasibility:
        i, j, d = feasibility.witness
        report['keycast_witness'] = {'i': i, 'j': j, 'd': d}

    conditions = securecast.check_conditions(pruned)
    report['secure'] = 'PASS' if conditions else 'FAIL'
    if not conditions:
        report['secure_witness'] = {'node': conditions.witness, 'reason': conditions.reason}
    return report


@cli.command()
@click.argument('instance_path', type=click.Path(dir_okay=False))
@click.option('--json', 'as_json', is_flag=True, help='Print the report as json')
def analyze(instance_path, as_json):
    """ Cut sets, tight sets, connectivity and the feasibility verdicts of both modes. """
    _emit(_analyze(_load(instance_path)), as_json)


@cli.command()
@click.argument('instance_path', type=click.Path(dir_okay=False))
@click.option('--mode', type=CaseEnumType(ConstructionMode), default='keycast', show_default=True)
@click.option('-o', '--out', 'out_path', type=click.Path(dir_okay=False), required=True,
              help='Where to write the code json')
@click.option('--instance-out', type=click.Path(dir_okay=False),
              help='Also write the pruned / normalized instance the code runs on')
@click.option('--dot', 'dot_path', type=click.Path(dir_okay=False), help='Write the coloring as DOT')
@click.option('--exhaustive', is_flag=True, help='Cross check every clause with the exhaustive oracle')
@click.option('--json', 'as_json', is_flag=True, help='Print the report as json')
def construct(instance_path, mode, out_path, instance_out, dot_path, exhaustive, as_json):
    """ Builds and verifies a rate 1 code. Unverified codes are never written. """
    instance = _load(instance_path)
    try:
        if mode is ConstructionMode.KEYCAST:
            result = keycast.construct(instance, exhaustive=exhaustive)
            built_on = result.normalized
        else:
            result = securecast.construct(instance, exhaustive=exhaustive)
            built_on = result.instance
    except InstanceError as e:
        raise InputError(str(e))

    report = result.report
    if result.code is None:
        report.add(CheckResult('feasibility', False, subject=result.witness, detail=result.reason))
    _emit(report, as_json)
    if not result.verified:
        sys.exit(EXIT_FAILURE)

    if not export_code(result.code, out_path):
        raise click.ClickException('Could not write {}'.format(out_path))
    if instance_out and not save_instance(built_on, instance_out):
        raise click.ClickException('Could not write {}'.format(instance_out))
    if dot_path:
        if mode is ConstructionMode.KEYCAST:
            graph = keycast_graph(built_on, result.coloring)
        else:
            graph = secure_graph(built_on, result.coloring)
        write_dot(graph, dot_path)


def _instance_for_code(instance):
    """ Codes are built on the pruned instance, normalized unless it has node
    eavesdroppers. Both steps leave an already prepared instance unchanged """
    rebuilt = prune_unreachable(instance)
    if instance.secrecy_mode is not SecrecyMode.NODE_EAVESDROPPER:
        rebuilt = normalize_terminals(rebuilt)
    return rebuilt


@cli.command()
@click.argument('instance_path', type=click.Path(dir_okay=False))
@click.argument('code_path', type=click.Path(dir_okay=False))
@click.option('--exhaustive', is_flag=True, help='Also run the exhaustive oracle where enumerable')
@click.option('--json', 'as_json', is_flag=True, help='Print the report as json')
def verify(instance_path, code_path, exhaustive, as_json):
    """ Checks decoding, pairwise independence and secrecy of a code file. """
    instance = _load(instance_path)
    try:
        code = import_code(code_path)
        instance = _instance_for_code(instance)
        report = verify_code(instance, code, exhaustive=exhaustive)
    except (CodeFormatError, InstanceError) as e:
        raise InputError(str(e))
    _emit(report, as_json)
    if not report.is_success:
        sys.exit(EXIT_FAILURE)


@cli.command()
@click.option('--n', 'n', type=click.IntRange(min=1), required=True, help='Blocklength')
@click.option('--M', 'm', type=click.IntRange(min=2), required=True, help='Codebook size')
@click.option('--w', 'w', type=RATIONAL, required=True, help='Weight fraction, ex: 1/2')
@click.option('--eps', type=RATIONAL, help='Also print the corollary bound for this eps')
@click.option('--exhaustive', is_flag=True, help='Check every codebook')
@click.option('--json', 'as_json', is_flag=True, help='Print the report as json')
def plotkin(n, m, w, eps, exhaustive, as_json):
    """ Support union bound for M binary words of weight at most w n. """
    try:
        if exhaustive:
            report = analysis.verify_plotkin_exhaustive(n, m, w)
        else:
            report = Report(title='plotkin')
            report.update({'n': n, 'M': m, 'w': w, 'bound': analysis.plotkin_bound(m, n, w),
                           'sharp_bound': analysis.plotkin_bound_sharp(m, n, w)})
        if eps is not None:
            corollary_m, corollary = analysis.corollary1_bound(n, w, eps)
            report.update({'eps': eps, 'corollary_M': corollary_m, 'corollary_bound': corollary})
    except ValueError as e:
        raise click.UsageError(str(e))
    except EnumerationCapError as e:
        raise InputError(str(e))
    _emit(report, as_json)
    if not report.is_success:
        sys.exit(EXIT_FAILURE)


@cli.command()
@click.argument('regime', type=click.Choice(['nonsecure', 'secure']))
@click.option('--eps', type=RATIONAL, required=True, help='Gap parameter, ex: 1/8')
@click.option('--json', 'as_json', is_flag=True, help='Print the report as json')
def gap(regime, eps, as_json):
    """ Key-cast rate against the source reconstruction upper bound. """
    try:
        if regime == 'nonsecure':
            report = analysis.sr_gap_report_nonsecure(eps)
        else:
            report = analysis.sr_gap_report_secure(eps)
    except ValueError as e:
        raise click.UsageError(str(e))
    _emit(report, as_json)
    if not report.is_success:
        sys.exit(EXIT_FAILURE)


def main():
    cli()


if __name__ == '__main__':
    main()
