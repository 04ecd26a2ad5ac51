'''
Command-line driver
Startup: python src/cli.py verify all --seed 7
Exit codes: 0 pass, 1 verification failure, 2 usage error
'''

import argparse
import json
import logging
import os
import sys

sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

import graded_ring
from cache import CacheCorruptedError
from checks import RunContext, build_report, report_json, report_passed, run_suite
from config import DEFAULT_TRUNCATION, TOOL_VERSION, load_settings
from weierstrass import WeierstrassData, build_g2, build_g3, compute_h, compute_r20

logger = logging.getLogger('orthoforms')

TARGETS = ('g2', 'g3', 'h', 'r20', 'k120', 'delta60', 'hilbert')
SUITE_NAMES = ('all', 'pipeline', 'rings', 'group', 'symfunc')
FORMATS = ('text', 'json', 'binary')
HILBERT_FORMATS = ('json',)
EXTENSIONS = {'text': 'txt', 'json': 'json', 'binary': 'bin'}


def positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f'invalid integer: {text!r}') from None
    if value < 1:
        raise argparse.ArgumentTypeError(f'must be at least 1, got {value}')
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog='orthoforms',
                                     description='Exact verification of modular form ring computations')
    parser.add_argument('--version', action='version', version=f'%(prog)s {TOOL_VERSION}')
    parser.add_argument('-v', '--verbose', action='store_true', help='debug logging')
    sub = parser.add_subparsers(dest='command', required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--cache-dir', default=None, help='artifact cache directory')
    common.add_argument('--no-cache', action='store_true', help='recompute everything')
    common.add_argument('--truncate', type=int, default=None, help='Hilbert series order')

    compute = sub.add_parser('compute', parents=[common], help='compute one artifact')
    compute.add_argument('target', choices=TARGETS)
    compute.add_argument('--format', choices=FORMATS, default=None,
                         help='text for polynomials, json for hilbert (the only format it supports)')
    compute.add_argument('--out', default=None, help='output file (default: <target>.<extension>)')
    compute.add_argument('--presentation', choices=sorted(graded_ring.PRESENTATIONS),
                         default='characters', help='ring for the hilbert target')
    compute.add_argument('--plot', default=None, help='save a figure of the hilbert series')

    verify = sub.add_parser('verify', parents=[common], help='run verification suites')
    verify.add_argument('suite', choices=SUITE_NAMES)
    verify.add_argument('--seed', type=int, default=None)
    verify.add_argument('--attempts', type=positive_int, default=None)
    verify.add_argument('--workers', type=positive_int, default=None)
    verify.add_argument('--report', default=None, help='write the JSON report here')
    verify.add_argument('--allow-inconclusive', action='store_true')
    verify.add_argument('--timings', action='store_true', help='include wall times in the report')
    return parser


def _settings(args):
    return load_settings(
        seed=getattr(args, 'seed', None),
        attempts=getattr(args, 'attempts', None),
        workers=getattr(args, 'workers', None),
        truncation=args.truncate,
        cache_dir=args.cache_dir,
        use_cache=not args.no_cache,
        allow_inconclusive=getattr(args, 'allow_inconclusive', False),
        timings=getattr(args, 'timings', False),
    )


def _compute_polynomial(target: str, ctx: RunContext):
    u = WeierstrassData.generic()
    simple = {'g2': build_g2, 'g3': build_g3, 'h': compute_h, 'r20': compute_r20}
    if target in simple:
        return simple[target](u)
    artifacts = ctx.artifacts()
    return artifacts.k120 if target == 'k120' else artifacts.delta60


def cmd_compute(args) -> int:
    settings = args.settings
    out = args.out or f'{args.target}.{EXTENSIONS[args.format]}'
    if args.target == 'hilbert':
        p = graded_ring.PRESENTATIONS[args.presentation]
        N = settings.truncation
        report = graded_ring.series_report(p, N)
        with open(out, 'w', encoding='utf-8') as fh:
            json.dump(report, fh, indent=2, sort_keys=True)
        print(f'hilbert[{p.name}]: order {N}, a-invariant {graded_ring.a_invariant(p)}, '
              f'counting match {report["match"]} -> {out}')
        if args.plot:
            from visualization import plot_hilbert_series
            plot_hilbert_series({p.name: graded_ring.hilbert_from_rational(p, N)},
                                save_path=args.plot, show=False)
            print(f'figure saved: {args.plot}')
        return 0 if report['match'] else 1

    poly = _compute_polynomial(args.target, RunContext(settings))
    integer = args.target == 'delta60'
    if args.format == 'binary':
        with open(out, 'wb') as fh:
            fh.write(poly.to_binary())
    elif args.format == 'json':
        payload = {'target': args.target, 'variables': list(poly.space.names),
                   'weights': list(poly.space.weights), 'weighted_degree': poly.weighted_degree(),
                   'terms': len(poly), 'text': poly.to_text(integer), 'hash': poly.content_hash()}
        with open(out, 'w', encoding='utf-8') as fh:
            json.dump(payload, fh, indent=2, sort_keys=True)
    else:
        with open(out, 'wb') as fh:
            fh.write(poly.serialize(integer) + b'\n')
    print(f'{args.target}: weighted degree {poly.weighted_degree()}, {len(poly)} terms -> {out}')
    return 0


def cmd_verify(args) -> int:
    settings = args.settings
    results = run_suite(args.suite, settings)
    report = build_report(args.suite, settings, results)
    text = report_json(report)
    if args.report:
        with open(args.report, 'w', encoding='utf-8') as fh:
            fh.write(text + '\n')
    for r in results:
        print(f'{r.status.upper():13s} {r.name}')
    summary = report['summary']
    print(f'{summary["pass"]} passed, {summary["fail"]} failed, {summary["inconclusive"]} inconclusive')
    return 0 if report_passed(results, settings.allow_inconclusive) else 1


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format='%(asctime)s %(name)s %(levelname)s %(message)s')
    if args.truncate is None:
        args.truncate = DEFAULT_TRUNCATION
    elif args.truncate < 0:
        parser.error('--truncate must be nonnegative')
    if args.command == 'compute':
        if args.target == 'hilbert':
            args.format = args.format or HILBERT_FORMATS[0]
            if args.format not in HILBERT_FORMATS:
                parser.error(f'compute hilbert supports --format {", ".join(HILBERT_FORMATS)}')
        else:
            args.format = args.format or 'text'
    try:
        args.settings = _settings(args)
    except ValueError as exc:
        parser.error(str(exc))
    try:
        if args.command == 'compute':
            return cmd_compute(args)
        return cmd_verify(args)
    except CacheCorruptedError as exc:
        print(f'cache error: {exc}', file=sys.stderr)
        return 1
    except (ArithmeticError, ValueError) as exc:
        logger.error('%s: %s', type(exc).__name__, exc)
        return 1


if __name__ == '__main__':
    sys.exit(main())
