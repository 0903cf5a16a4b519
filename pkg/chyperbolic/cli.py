"""
Command line: `python -m chyperbolic <command> ...`.

Exit codes: 0 on success (classification verdicts are data), 1 when a verification suite fails or
sampling runs out of time, 2 on usage, spec, config or geometry errors.
"""
import argparse
import csv
import io
import math
import sys
from typing import List, Optional

import ujson

from chyperbolic.boundary import HeisenbergPoint
from chyperbolic.config import RunConfig
from chyperbolic.environment import HEISENBERG, Environment, chart_names
from chyperbolic.errors import ConfigError, GeometryError, NotUnitaryError, SpecSyntaxError, UnknownSuiteError
from chyperbolic.logger import logger, set_verbosity
from chyperbolic.objects.rcircle import RCircle
from chyperbolic.projective import ProjMap
from chyperbolic.spec_parser import (
    HEADER,
    literal_parser,
    load_json,
    parse_chain,
    parse_group,
    parse_heisenberg_row,
    parse_map,
    parse_rcircle,
)
from chyperbolic.verifiers.suites import report, suite_names

POINT_HEADER = ['z1_re', 'z1_im', 'z2_re', 'z2_im', 'z3_re', 'z3_im']


def dumps(value) -> str:
    return ujson.dumps(value, sort_keys=True, indent=2)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--config', help='YAML or JSON file with RunConfig settings')
    common.add_argument('--tol', type=float, help='classifier tolerance')
    common.add_argument('--samples', type=int, help='grid size for curves, sample count for circles')
    common.add_argument('--max-word-length', type=int, dest='max_word_length')
    common.add_argument('--seed', type=int)
    common.add_argument('--format', choices=['csv', 'json'])
    common.add_argument('--output', help='output file, stdout when omitted')
    common.add_argument('--input', help='input file')
    common.add_argument('--workers', type=int)
    common.add_argument('--time-budget', type=float, dest='time_budget')
    common.add_argument('--verbose', action='store_true')

    parser = argparse.ArgumentParser(prog='chyperbolic', description='Complex hyperbolic geometry toolkit.')
    commands = parser.add_subparsers(dest='command', required=True)

    convert = commands.add_parser('convert', parents=[common], help='convert points between charts')
    convert.add_argument('--from', dest='source', required=True, choices=chart_names())
    convert.add_argument('--to', dest='target', required=True, choices=chart_names())
    convert.add_argument('points', nargs='*', help='point literals such as "[1:0:0]" or "(1+2i, 0.5)"')

    classify = commands.add_parser('classify-curve', parents=[common], help='classify a closed boundary curve')
    classify.add_argument('spec', nargs='?', help='curve spec file or inline JSON')
    classify.add_argument('--map', help='isometry applied to the curve first, file or inline JSON')

    limitset = commands.add_parser('limitset', parents=[common], help='sample and classify a limit set')
    limitset.add_argument('group', nargs='?', help='group file or inline JSON')
    limitset.add_argument('--sidecar', help='path of the JSON classification sidecar')

    verify = commands.add_parser('verify', parents=[common], help='run property batteries')
    verify.add_argument('suite', help=f'one of {", ".join(suite_names())}')
    verify.add_argument('--scale', type=float, dest='verify_scale', help='multiplies the batch sizes')

    cartan = commands.add_parser('cartan', parents=[common], help='Cartan invariant of a boundary triple')
    cartan.add_argument('points', nargs='*', help='three Heisenberg points, e.g. "(0, 0)" "(1, 0)" inf')

    rcircle = commands.add_parser('rcircle', parents=[common], help='emit points of an R-circle')
    rcircle.add_argument('--base', help='Heisenberg point of an infinite R-circle')
    rcircle.add_argument('--theta', type=float, default=0.0)
    rcircle.add_argument('--center', help='Heisenberg centre of a finite R-circle')
    rcircle.add_argument('--radius', type=float, default=1.0)
    rcircle.add_argument('--rotation', type=float, default=0.0)
    rcircle.add_argument('--spec', help='R-circle document, file or inline JSON')
    rcircle.add_argument('--map', help='isometry applied to the R-circle, file or inline JSON')

    chain = commands.add_parser('chain', parents=[common], help='emit points of a chain')
    chain.add_argument('spec', nargs='?', help='chain document, file or inline JSON')
    chain.add_argument('--map', help='isometry applied to the chain, file or inline JSON')
    return parser


def make_config(args) -> RunConfig:
    overrides = {
        'classifier_tol': args.tol,
        'samples': args.samples,
        'max_word_length': args.max_word_length,
        'seed': args.seed,
        'format': args.format,
        'output': args.output,
        'input': args.input,
        'workers': args.workers,
        'time_budget': args.time_budget,
        'verify_scale': getattr(args, 'verify_scale', None),
    }
    if args.config:
        return RunConfig.from_file(args.config, **overrides)
    return RunConfig.from_dict({}, **overrides)


def write_text(text, path):
    if path is None:
        sys.stdout.write(text)
        if not text.endswith('\n'):
            sys.stdout.write('\n')
        return
    with open(path, 'w') as writer:
        writer.write(text)


def csv_text(header, rows) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator='\n')
    writer.writerow(header)
    writer.writerows(rows)
    return buffer.getvalue()


def read_rows(path) -> List[List[str]]:
    with open(path, 'r', newline='') as reader:
        rows = [row for row in csv.reader(reader) if row and not row[0].startswith('#')]
    if rows and rows[0][0].strip() in (HEADER[0], POINT_HEADER[0]):
        rows = rows[1:]
    return rows


def read_document(inline, path):
    source = inline if inline is not None else path
    if source is None:
        source = sys.stdin
    return load_json(source)


def read_map(value) -> Optional[ProjMap]:
    """A map document, a bare 3x3 matrix (Siegel model) or None."""
    if value is None:
        return None
    g = parse_map(load_json(value))
    residual = g.unitary_residual()
    if residual > 1e-9:
        raise NotUnitaryError(f'form-unitarity residual {residual:.3g}')
    return g


def cmd_convert(env: Environment, args) -> int:
    rows = [[p] for p in args.points]
    if env.config.input:
        rows.extend(read_rows(env.config.input))
    converted = env.convert(rows, args.source, args.target)
    if env.config.format == 'json':
        out = [{'row': r.index, 'cells': r.cells} if r.ok else {'row': r.index, 'error': r.error} for r in converted]
        write_text(dumps(out), env.config.output)
    else:
        header = HEADER if args.target == HEISENBERG else POINT_HEADER
        write_text(csv_text(header, [r.cells for r in converted if r.ok]), env.config.output)
    failed = sum(not r.ok for r in converted)
    if failed:
        logger.warning(f'{failed} of {len(converted)} rows could not be converted')
    return 0


def cmd_classify_curve(env: Environment, args) -> int:
    spec = read_document(args.spec, env.config.input)
    result = env.classify_curve(spec, read_map(args.map))
    write_text(dumps(env.sidecar(result)), env.config.output)
    return 0


def cmd_limitset(env: Environment, args) -> int:
    group = parse_group(read_document(args.group, env.config.input))
    try:
        sample, classification = env.limitset(group)
    except TimeoutError as e:
        logger.error(str(e))
        return 1
    sidecar = env.sidecar(classification, sample)
    zeta, v = sample.heisenberg()
    rows = []
    for z, h in zip(zeta, v):
        point = HeisenbergPoint.infinity() if math.isnan(h) else HeisenbergPoint(z, h)
        rows.append(point.as_row())

    if env.config.format == 'json':
        sidecar['points'] = rows
        write_text(dumps(sidecar), env.config.output)
        return 0
    write_text(csv_text(HEADER, rows), env.config.output)
    path = args.sidecar or (f'{env.config.output}.json' if env.config.output else None)
    if path is not None:
        write_text(dumps(sidecar), path)
    else:
        sys.stderr.write(dumps(sidecar) + '\n')
    return 0


def cmd_verify(env: Environment, args) -> int:
    results = env.verify(args.suite)
    if env.config.format == 'json':
        write_text(dumps({'config': env.sidecar_config(), 'suites': [r.as_dict() for r in results]}),
                   env.config.output)
    else:
        write_text(report(results), env.config.output)
    return 0 if all(r.passed for r in results) else 1


def cmd_cartan(env: Environment, args) -> int:
    parser = literal_parser()
    points = [parser.parse_heisenberg(p) for p in args.points]
    if env.config.input:
        points.extend(parse_heisenberg_row(row) for row in read_rows(env.config.input))
    value, kind = env.cartan(points)
    if env.config.format == 'json':
        write_text(dumps({'cartan': value, 'class': kind.value}), env.config.output)
    else:
        write_text(csv_text(['cartan', 'class'], [[repr(value), kind.value]]), env.config.output)
    return 0


def cmd_rcircle(env: Environment, args) -> int:
    parser = literal_parser()
    if args.spec is not None:
        spec = parse_rcircle(load_json(args.spec))
    elif args.center is not None:
        center = parser.parse_heisenberg(args.center)
        spec = RCircle.finite((center.zeta, center.v), args.radius, args.rotation)
    else:
        base = parser.parse_heisenberg(args.base) if args.base is not None else None
        spec = RCircle.infinite(base, args.theta)
    g = read_map(args.map)
    if g is not None:
        spec = env.transform(g, spec)
    rows = [p.as_row() for p in env.rcircle(spec)]
    if env.config.format == 'json':
        write_text(dumps({'rcircle': env.serialize(spec), 'points': rows}), env.config.output)
    else:
        write_text(csv_text(HEADER, rows), env.config.output)
    return 0


def cmd_chain(env: Environment, args) -> int:
    spec = parse_chain(read_document(args.spec, env.config.input))
    g = read_map(args.map)
    if g is not None:
        spec = env.transform(g, spec)
    rows = [p.as_row() for p in env.chain(spec)]
    if env.config.format == 'json':
        write_text(dumps({'chain': env.serialize(spec), 'points': rows}), env.config.output)
    else:
        write_text(csv_text(HEADER, rows), env.config.output)
    return 0


COMMANDS = {
    'convert': cmd_convert,
    'classify-curve': cmd_classify_curve,
    'limitset': cmd_limitset,
    'verify': cmd_verify,
    'cartan': cmd_cartan,
    'rcircle': cmd_rcircle,
    'chain': cmd_chain,
}


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return 0 if e.code == 0 else 2
    set_verbosity(args.verbose)

    try:
        env = Environment(make_config(args))
        return COMMANDS[args.command](env, args)
    except UnknownSuiteError as e:
        logger.error(str(e))
        return 2
    except (ConfigError, SpecSyntaxError, GeometryError, OSError) as e:
        logger.error(str(e))
        return 2


if __name__ == '__main__':
    sys.exit(main())
