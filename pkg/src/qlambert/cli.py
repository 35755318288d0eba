"""
Command line front end: ``qlambert {expand,verify,group,sigma,list}``.

Exit codes: 0 success, 1 an identity failed, 2 usage, parse or
configuration error.
"""
import argparse
import dataclasses
import logging
import os
import sys
from typing import Dict, List, Mapping, Optional, Sequence

from autodict import AutoDict, Options

from qlambert import dsl, group, numbertheory, verifier
from qlambert.builders import Param
from qlambert.catalog import ENV_CATALOG, IdentityRecord, load_catalog, \
    resolve_catalog_path, select
from qlambert.errors import QLambertError
from qlambert.formats import Document, render
from qlambert.scalars import parse_rational

logger = logging.getLogger(__name__)

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

EXPAND_DEGREE = 60


@dataclasses.dataclass
class CliConfig:
    """
    Options shared by every subcommand.

    `degree` is `None` unless given on the command line, in which case it
    overrides each record's own degree.
    """

    degree: Optional[int] = None
    trials: int = 5
    seed: int = 0
    format: Optional[str] = None
    catalog_path: Optional[str] = None
    output: Optional[str] = None
    jobs: int = 1
    timings: bool = False
    verbose: int = 0

    @staticmethod
    def from_args(args: argparse.Namespace,
                  environ: Mapping[str, str]) -> 'CliConfig':
        path = resolve_catalog_path(args.catalog, environ)
        return CliConfig(
            degree=args.degree, trials=args.trials, seed=args.seed,
            format=args.format, catalog_path=str(path) if path else None,
            output=args.output, jobs=args.jobs, timings=args.timings,
            verbose=args.verbose,
        )

    def records(self) -> List[IdentityRecord]:
        return load_catalog(self.catalog_path)


def parse_binding(text: str) -> Dict[str, Param]:
    """
    ``name=c`` or ``name=c,e`` with ``c`` in the rational syntax ``p/r``.
    """
    name, sep, value = text.partition('=')
    if not sep or not name.strip():
        raise argparse.ArgumentTypeError(f'expected name=c/r[,e], got {text!r}')
    c, _, e = value.partition(',')
    try:
        return {name.strip().lstrip('$'):
                Param(parse_rational(c), int(e) if e.strip() else 0)}
    except ValueError as err:
        raise argparse.ArgumentTypeError(str(err)) from err


def _positive(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f'{value} is not >= 1')
    return value


# commands

def cmd_expand(args: argparse.Namespace, config: CliConfig) -> Document:
    bindings: Dict[str, Param] = {}
    for b in args.bind or []:
        bindings.update(b)
    degree = config.degree or EXPAND_DEGREE
    series = dsl.evaluate(args.expr, degree, bindings)
    coeffs = series.to_strings()
    return Document(
        data={'expression': args.expr, 'degree': degree, 'coefficients': coeffs},
        rows=[{'k': k, 'coefficient': c} for k, c in enumerate(coeffs)],
        text=', '.join(coeffs),
    )


def _report_text(report: verifier.VerificationReport) -> str:
    head = f'{report.identity}: {report.status} (degree {report.degree}, ' \
           f'{report.trials} trial{"s" if report.trials != 1 else ""})'
    lines = [head]
    for f in report.failures:
        where = ', '.join(f'{k}={v}' for k, v in f.bindings.items())
        if f.error is not None:
            lines.append(f'  trial {f.trial} [{where}]: {f.error}')
        else:
            lines.append(f'  trial {f.trial} [{where}]: q^{f.k}: '
                         f'lhs {f.lhs} != rhs {f.rhs}')
    return '\n'.join(lines)


def cmd_verify(args: argparse.Namespace, config: CliConfig) -> Document:
    records = select(config.records(), [] if args.all else args.id)
    reports = verifier.verify_all(records, config.degree, config.trials,
                                  config.seed, jobs=config.jobs,
                                  timings=config.timings)
    options = Options(with_cls=False)
    return Document(
        data=[AutoDict.to_dict(r, options=options) for r in reports],
        rows=[{'id': r.identity, 'status': r.status, 'degree': r.degree,
               'millis': r.millis} for r in reports],
        text='\n'.join(_report_text(r) for r in reports),
    )


def cmd_group(args: argparse.Namespace, config: CliConfig) -> Document:
    elements = group.closure()
    relations = group.relations()
    lines = [f'order: {len(elements)}']
    for m in elements:
        lines.append(f'{m.word or "I":<14} {m}')
    for rel, ok in relations.items():
        lines.append(f'{rel}: {"ok" if ok else "FAILED"}')
    return Document(
        data={'order': len(elements),
              'elements': [{'word': m.word, 'components': m.components()}
                           for m in elements],
              'relations': relations},
        rows=[dict(word=m.word, **dict(zip(group.VARIABLES, m.components())))
              for m in elements],
        text='\n'.join(lines),
    )


def cmd_sigma(args: argparse.Namespace, config: CliConfig) -> Document:
    column = f'sigma_{args.k}'
    rows = [{'n': n, column: numbertheory.sigma(args.k, n)}
            for n in range(1, args.max + 1)]
    return Document(
        data=rows, rows=rows,
        text='\n'.join(f'{r["n"]} {r[column]}' for r in rows),
    )


def cmd_list(args: argparse.Namespace, config: CliConfig) -> Document:
    rows = [{'id': r.id, 'mode': str(r.mode), 'degree': r.degree, 'cite': r.cite}
            for r in config.records()]
    width = max((len(r['id']) for r in rows), default=0)
    return Document(
        data=rows, rows=rows,
        text='\n'.join(f'{r["id"]:<{width}}  {r["mode"]:<8} {r["degree"]:>3}  '
                       f'{r["cite"]}' for r in rows),
    )


def _parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--degree', type=_positive, default=None,
                        help='truncation degree D; overrides catalog defaults')
    common.add_argument('--format', default=None,
                        help='text, json, csv or yaml (default: inferred from '
                             '--output, else text)')
    common.add_argument('--output', default=None, help='write to this file')
    common.add_argument('--catalog', default=None,
                        help=f'catalog file (default: ${ENV_CATALOG} '
                             f'or the packaged catalog)')
    common.add_argument('--trials', type=_positive, default=5)
    common.add_argument('--seed', type=int, default=0)
    common.add_argument('--jobs', type=_positive, default=1,
                        help='verify records in this many processes')
    common.add_argument('--timings', action='store_true',
                        help='report wall-clock milliseconds')
    common.add_argument('-v', '--verbose', action='count', default=0)

    parser = argparse.ArgumentParser(
        prog='qlambert',
        description='Exact truncated q-series engine for double Lambert '
                    'series identities.')
    sub = parser.add_subparsers(dest='command', required=True)

    expand = sub.add_parser('expand', parents=[common],
                            help='print the coefficients of an expression')
    expand.add_argument('expr')
    expand.add_argument('--bind', action='append', type=parse_binding,
                        metavar='NAME=C/R[,E]')
    expand.set_defaults(run=cmd_expand)

    verify = sub.add_parser('verify', parents=[common],
                            help='verify catalog identities')
    which = verify.add_mutually_exclusive_group(required=True)
    which.add_argument('--id', action='append', metavar='ID')
    which.add_argument('--all', action='store_true')
    verify.set_defaults(run=cmd_verify)

    group_cmd = sub.add_parser('group', parents=[common],
                               help='list the S/T transformation group')
    group_cmd.set_defaults(run=cmd_group)

    sigma = sub.add_parser('sigma', parents=[common],
                           help='print a divisor function table')
    sigma.add_argument('--k', type=int, default=1)
    sigma.add_argument('--max', type=_positive, default=30)
    sigma.set_defaults(run=cmd_sigma, default_format='csv')

    listing = sub.add_parser('list', parents=[common], help='list the catalog')
    listing.set_defaults(run=cmd_list)
    return parser


def _configure_logging(verbose: int):
    level = logging.WARNING if verbose <= 0 else \
        logging.INFO if verbose == 1 else logging.DEBUG
    logging.basicConfig(level=level, stream=sys.stderr,
                        format='%(levelname)s %(name)s: %(message)s')


def main(argv: Optional[Sequence[str]] = None,
         environ: Optional[Mapping[str, str]] = None) -> int:
    args = _parser().parse_args(argv)
    config = CliConfig.from_args(args, os.environ if environ is None else environ)
    _configure_logging(config.verbose)

    try:
        doc = args.run(args, config)
        fmt = config.format
        if fmt is None and config.output is None:
            fmt = getattr(args, 'default_format', 'text')
        text = render(doc, config.output, fmt=fmt)
    except QLambertError as e:
        print(f'qlambert: error: {e}', file=sys.stderr)
        return EXIT_USAGE
    except (OSError, ValueError) as e:
        print(f'qlambert: error: {e}', file=sys.stderr)
        return EXIT_USAGE

    if text is not None:
        sys.stdout.write(text)
    if args.command == 'verify' and not all(
            r['status'] == verifier.PASS for r in doc.rows):
        return EXIT_FAIL
    return EXIT_OK
