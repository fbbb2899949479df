"""
Command line: build objects, verify identities, sweep (q, n) grids.

    python main.py build ig --q 3 --n 2 --format json --out outputs/
    python main.py verify igv --q 3 --n 3
    python main.py sweep --grid 2,3:1,2,3,4 --out outputs/ --pdf
"""

import argparse
import logging
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple

from src.analysis.verification import run_check, run_suite
from src.core.config import (
    BUILD_KINDS, CHECK_IDS, EXIT_CONFIG, EXIT_OK, OUTPUT_FORMATS, SUPPORTED_FIELDS, get_config,
)
from src.core.errors import ComponentGraphError, ConfigError, TooLargeError, UnsupportedCardinalityError
from src.core.order import build_boolean_vlattice, build_L, dual
from src.core.vspace import build_ig, build_ug
from src.core.zdg import ring_zdg, zdg_poset
from src.reports.report_generator import ReportGenerationError, ReportGenerator, VerificationReport
from src.reports.serialization import render, write_atomic

logger = logging.getLogger(__name__)


@dataclass
class SweepConfig:
    """Grid, caps and output settings for a sweep."""

    qs: List[int]
    ns: List[int]
    caps: Dict[str, int] = field(default_factory=lambda: dict(get_config()['caps']))
    output_dir: str = get_config()['output_dir']
    pdf: bool = False
    max_workers: int = get_config()['max_workers']

    def validate(self) -> None:
        for q in self.qs:
            if q not in SUPPORTED_FIELDS:
                raise ConfigError(f"q={q} is not a supported field size; choose from {sorted(SUPPORTED_FIELDS)}")
        for n in self.ns:
            if n < 1:
                raise ConfigError(f"n={n}: dimension must be >= 1")
        for name, cap in self.caps.items():
            if cap < 1:
                raise ConfigError(f"{name} cap must be positive, got {cap}")
        if self.max_workers < 1:
            raise ConfigError(f"--workers must be >= 1, got {self.max_workers}")


def parse_grid(text: str) -> Tuple[List[int], List[int]]:
    """'2,3:1,2,3,4' -> ([2, 3], [1, 2, 3, 4]); ':' is the empty grid."""
    if text.count(':') != 1:
        raise ConfigError(f"Grid must look like 'qlist:nlist', got {text!r}")
    q_part, n_part = text.split(':')
    try:
        qs = [int(x) for x in q_part.split(',') if x.strip()]
        ns = [int(x) for x in n_part.split(',') if x.strip()]
    except ValueError as e:
        raise ConfigError(f"Grid entries must be integers: {text!r}") from e
    return qs, ns


def build_object(kind: str, q: int, n: int):
    """The graph or poset named by kind."""
    if n < 1:
        raise ConfigError(f"n={n}: dimension must be >= 1")
    builders = {
        'ig': lambda: build_ig(q, n),
        'ug': lambda: build_ug(q, n),
        'L': lambda: build_L(q, n),
        'dualL': lambda: dual(build_L(q, n)),
        'zdg-poset': lambda: zdg_poset(build_L(q, n)),
        'ring-zdg': lambda: ring_zdg(q, n),
        'boolean-v': lambda: build_boolean_vlattice(q, n),
    }
    return builders[kind]()


def _caps_from_args(args: argparse.Namespace) -> Dict[str, int]:
    caps = dict(get_config()['caps'])
    caps['perfect'] = args.perfect_cap
    caps['color'] = args.color_cap
    return caps


def parse_arguments(argv: Optional[Sequence[str]] = None) -> argparse.Namespace:
    config = get_config()
    grid = config['default_grid']
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--log-level', default=config['log_level'],
                        choices=['DEBUG', 'INFO', 'WARNING', 'ERROR'], help='Logging verbosity')
    common.add_argument('--log-file', default=config['log_file'], help='Log file (overwritten per run)')

    caps = argparse.ArgumentParser(add_help=False)
    caps.add_argument('--perfect-cap', type=int, default=config['caps']['perfect'],
                      help='Largest twin kernel searched for odd holes')
    caps.add_argument('--color-cap', type=int, default=config['caps']['color'],
                      help='Largest twin kernel for clique search and exact colouring')

    parser = argparse.ArgumentParser(
        description='Component graphs of vector spaces and zero-divisor graphs of posets',
        formatter_class=argparse.ArgumentDefaultsHelpFormatter,
    )
    sub = parser.add_subparsers(dest='command', required=True)

    build = sub.add_parser('build', parents=[common], help='Build a graph or poset',
                           formatter_class=argparse.ArgumentDefaultsHelpFormatter)
    build.add_argument('kind', choices=BUILD_KINDS)
    build.add_argument('--q', type=int, required=True, help='Field size')
    build.add_argument('--n', type=int, required=True, help='Dimension')
    build.add_argument('--format', choices=OUTPUT_FORMATS, default='json')
    build.add_argument('--out', default=None, help='Output directory (stdout if omitted)')

    verify = sub.add_parser('verify', parents=[common, caps], help='Run one check (or all) at one (q, n)',
                            formatter_class=argparse.ArgumentDefaultsHelpFormatter)
    verify.add_argument('check', choices=list(CHECK_IDS) + ['all'])
    verify.add_argument('--q', type=int, required=True, help='Field size')
    verify.add_argument('--n', type=int, required=True, help='Dimension')
    verify.add_argument('--out', default=None, help='Also write report tables here')

    sweep = sub.add_parser('sweep', parents=[common, caps], help='Run every check over a grid',
                           formatter_class=argparse.ArgumentDefaultsHelpFormatter)
    sweep.add_argument('--grid', default=','.join(map(str, grid['q'])) + ':' + ','.join(map(str, grid['n'])),
                       help="Grid as 'qlist:nlist'")
    sweep.add_argument('--out', default=config['output_dir'], help='Output directory')
    sweep.add_argument('--pdf', action='store_true', help='Also render report.pdf')
    sweep.add_argument('--workers', type=int, default=config['max_workers'], help='Thread pool size')
    return parser.parse_args(argv)


def configure_logging(level: str, log_file: str) -> None:
    """File log (overwritten) plus stderr, so stdout carries only command output."""
    logging.basicConfig(
        level=getattr(logging, level),
        format='%(asctime)s - %(name)s - [%(levelname)s] - %(message)s',
        handlers=[
            logging.FileHandler(log_file, mode='w'),
            logging.StreamHandler(sys.stderr),
        ],
        force=True,
    )


def run_build(args: argparse.Namespace) -> int:
    obj = build_object(args.kind, args.q, args.n)
    text = render(obj, args.format, name=f'{args.kind}_q{args.q}_n{args.n}')
    if args.out is None:
        sys.stdout.write(text)
    else:
        path = write_atomic(Path(args.out) / f'{args.kind}_q{args.q}_n{args.n}.{args.format}', text)
        logger.info(f"Wrote {path}")
    return EXIT_OK


def run_verify(args: argparse.Namespace) -> int:
    SweepConfig([args.q], [args.n], caps=_caps_from_args(args)).validate()
    ids = CHECK_IDS if args.check == 'all' else (args.check,)
    report = VerificationReport([run_check(check_id, args.q, args.n, _caps_from_args(args)) for check_id in ids])
    sys.stdout.write(report.to_text())
    if args.out:
        ReportGenerator(args.out).write_tables(report)
    return report.exit_code


def run_sweep(args: argparse.Namespace) -> int:
    qs, ns = parse_grid(args.grid)
    config = SweepConfig(qs, ns, caps=_caps_from_args(args), output_dir=args.out,
                         pdf=args.pdf, max_workers=args.workers)
    config.validate()
    logger.info(f"Sweeping q={qs} n={ns} with {config.max_workers} workers")
    report = VerificationReport(run_suite(config.qs, config.ns, CHECK_IDS, config.caps, config.max_workers))

    generator = ReportGenerator(config.output_dir)
    generator.write_tables(report)
    if config.pdf:
        generator.write_pdf(report, title=f"Verification sweep q={qs} n={ns}")
    sys.stdout.write(report.summary_line() + '\n')
    if report.exit_code != EXIT_OK:
        for r in report.results:
            if r.failed:
                logger.error(f"  [FAILED] {r.check_id} q={r.q} n={r.n}: {r.detail}")
    logger.info(report.summary_line())
    return report.exit_code


COMMANDS = {'build': run_build, 'verify': run_verify, 'sweep': run_sweep}


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Parse arguments, run the command and return its exit code."""
    args = parse_arguments(argv)
    configure_logging(args.log_level, args.log_file)
    try:
        return COMMANDS[args.command](args)
    except (ConfigError, UnsupportedCardinalityError) as e:
        logger.error(f"Configuration error: {e}")
        return EXIT_CONFIG
    except TooLargeError as e:
        logger.error(f"Input too large: {e}")
        return EXIT_CONFIG
    except (ComponentGraphError, ReportGenerationError) as e:
        logger.exception(f"Command {args.command} failed: {e}")
        return EXIT_CONFIG
    except Exception as e:
        logger.exception(f"Unexpected error in {args.command}: {e}")
        return EXIT_CONFIG


if __name__ == '__main__':
    sys.exit(main())
