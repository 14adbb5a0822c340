"""
Command-line driver.

Examples
--------
    lcs_torsion bi --sig 3,0 --ring z --l 2 --deg 2,2,2
    lcs_torsion tables --id 2
    lcs_torsion verify --suite identities
    lcs_torsion scan --name no-4-torsion --sig 1,1 --max-total 8 --min-each 1

Exit codes: 0 on success, 1 on a usage error, 2 when a verification
fails or a table differs from its golden file.
"""

import argparse
import json
import logging
import os
import sys
from typing import Optional, Sequence, Tuple

from lcs_torsion.algebra import Signature
from lcs_torsion.reports import FORMATS, TABLES, DegreeRange, JobSpec, reproduce_table, run
from lcs_torsion.scanners import EVEN_SCANNERS, SCANNERS, run_scanner
from lcs_torsion.utils.persistent_storage import CellCache
from lcs_torsion.verify import SUITES, run_verification

SCAN_NAMES = sorted(list(SCANNERS) + list(EVEN_SCANNERS) + ['two-torsion-parity'])


########################################################################
class UsageError(ValueError):
    """Malformed command line."""


########################################################################
class _Parser(argparse.ArgumentParser):

    # ----------------------------------------------------------------------
    def error(self, message):
        raise UsageError(message)


# ----------------------------------------------------------------------
def parse_ints(text: str) -> Tuple[int, ...]:
    """``"2,2,2"`` to ``(2, 2, 2)``."""
    try:
        values = tuple(int(v) for v in text.replace(' ', '').split(',') if v)
    except ValueError:
        raise UsageError(f"Expected comma-separated integers, got '{text}'.") from None
    if not values or any(v < 0 for v in values):
        raise UsageError(f"Expected non-negative integers, got '{text}'.")
    return values


# ----------------------------------------------------------------------
def parse_levels(text: Optional[str]) -> Optional[Tuple[int, ...]]:
    """``"3"``, ``"2,4"`` or the inclusive range ``"2-6"``."""
    if text is None:
        return None
    if '-' in text:
        low, _, high = text.partition('-')
        low, high = int(low), int(high)
        if low > high:
            raise UsageError(f"Empty level range '{text}'.")
        return tuple(range(low, high + 1))
    return parse_ints(text)


# ----------------------------------------------------------------------
def degree_range(args, sig: Signature) -> DegreeRange:
    if args.deg is not None:
        deg = parse_ints(args.deg)
        if len(deg) != sig.n_gens:
            raise UsageError(f"--deg has {len(deg)} entries, signature {sig} needs {sig.n_gens}.")
        return DegreeRange(sig.n_gens, exact=deg)
    if args.max_total is None and args.max_each is None:
        raise UsageError("Give --deg or at least one of --max-total and --max-each.")
    for name in ('max_total', 'max_each'):
        value = getattr(args, name)
        if value is not None and value <= 0:
            raise UsageError(f"--{name.replace('_', '-')} must be positive.")
    descending = (tuple(range(sig.n_gens)),) if args.descending else ()
    return DegreeRange(
        sig.n_gens,
        min_each=args.min_each,
        max_each=args.max_each,
        max_total=args.max_total,
        descending=descending,
    )


# ----------------------------------------------------------------------
def _add_degrees(parser: argparse.ArgumentParser) -> None:
    parser.add_argument('--sig', type=str, default='2,0', help='Signature "n,k": even and odd generators')
    parser.add_argument('--deg', type=str, help='Exact multidegree, e.g. 2,2,2')
    parser.add_argument('--max-total', type=int, help='Cap on the total degree')
    parser.add_argument('--max-each', type=int, help='Cap on every entry')
    parser.add_argument('--min-each', type=int, default=1, help='Lower bound on every entry')
    parser.add_argument('--descending', action='store_true', help='Only non-increasing multidegrees')


# ----------------------------------------------------------------------
def _add_batch(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        '--workers', type=int, default=int(os.environ['LCS_TORSION_WORKERS']), help='Worker processes'
    )
    parser.add_argument(
        '--cache-dir', type=str, default=os.environ['LCS_TORSION_CACHE_DIR'], help='Cell cache directory'
    )
    parser.add_argument('--no-cache', action='store_true', help='Compute every cell')
    parser.add_argument('--output', type=str, help='Write the report here instead of stdout')


# ----------------------------------------------------------------------
def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog='lcs_torsion', description='Lower central series torsion calculator')
    parser.add_argument(
        '--log-level', type=str, default='WARNING', choices=['DEBUG', 'INFO', 'WARNING', 'ERROR'],
    )
    commands = parser.add_subparsers(dest='command', parser_class=_Parser)
    commands.required = True

    for name, text in (
        ('bi', 'B_l[m] = L_l / L_(l+1)'),
        ('barb1', 'B1bar[m] = A / (L_2 + M_3)'),
        ('nquot', 'N_i[m] = M_i / M_(i+1)'),
        ('derham', 'De Rham cohomology H^l[m]'),
    ):
        sub = commands.add_parser(name, help=text)
        _add_degrees(sub)
        _add_batch(sub)
        sub.add_argument('--ring', type=str, default='z', help='z, q, z2 or f<p>')
        sub.add_argument('--l', type=str, dest='levels', help='Level, list or range such as 2-6')
        sub.add_argument('--format', type=str, default='json', choices=FORMATS)
        sub.add_argument('--timings', action='store_true', help='Report wall time per cell')

    sub = commands.add_parser('tables', help='Reproduce golden tables')
    _add_batch(sub)
    sub.add_argument('--id', type=str, action='append', dest='ids', choices=sorted(TABLES))
    sub.add_argument(
        '--slow', action='store_true', default=os.environ['LCS_TORSION_SLOW'] == '1', help='Include the largest superalgebra cells'
    )
    sub.add_argument('--max-total', type=int, help='Skip degrees above this total')

    sub = commands.add_parser('verify', help='Run verification suites')
    sub.add_argument('--suite', type=str, action='append', dest='suites', choices=sorted(SUITES))
    sub.add_argument('--output', type=str)
    sub.add_argument('--slow', action='store_true', default=os.environ['LCS_TORSION_SLOW'] == '1')

    sub = commands.add_parser('scan', help='Search a degree range for counterexamples')
    _add_degrees(sub)
    sub.add_argument('--name', type=str, required=True, choices=SCAN_NAMES)
    sub.add_argument('--output', type=str)

    sub = commands.add_parser('cache', help='Inspect the cell cache')
    sub.add_argument('--cache-dir', type=str, default=os.environ['LCS_TORSION_CACHE_DIR'])
    action = sub.add_mutually_exclusive_group(required=True)
    action.add_argument('--list', action='store_true')
    action.add_argument('--clear', action='store_true')
    return parser


# ----------------------------------------------------------------------
def _emit(text: str, output: Optional[str]) -> None:
    if output:
        with open(output, 'w', encoding='utf-8') as stream:
            stream.write(text)
    else:
        sys.stdout.write(text)


# ----------------------------------------------------------------------
def _tables(args) -> Tuple[str, int]:
    cache = None if args.no_cache else CellCache(args.cache_dir)
    texts, code = [], 0
    for table_id in args.ids or sorted(TABLES):
        outcome = reproduce_table(
            table_id, workers=args.workers, cache=cache, slow=args.slow, max_total=args.max_total
        )
        texts.append(outcome.render())
        if not outcome.ok:
            code = 2
    return '\n'.join(texts), code


# ----------------------------------------------------------------------
def dispatch(args) -> Tuple[str, int]:
    if args.command == 'verify':
        return run_verification(args.suites, slow=args.slow)
    if args.command == 'tables':
        return _tables(args)
    if args.command == 'cache':
        cache = CellCache(args.cache_dir)
        if args.clear:
            count = len(cache.keys())
            cache.clear()
            return f"removed {count} cached cells\n", 0
        return ''.join(f"{key}\n" for key in cache.keys()), 0

    sig = Signature.parse(args.sig)
    degrees = degree_range(args, sig)
    if args.command == 'scan':
        report = run_scanner(args.name, sig, degrees.cells())
        return json.dumps(report.to_dict(), sort_keys=True, indent=2) + '\n', 0

    job = JobSpec(
        command=args.command,
        sig=sig,
        degrees=degrees,
        ring=args.ring,
        levels=parse_levels(args.levels),
        format=args.format,
        workers=args.workers,
        cache_dir=None if args.no_cache else args.cache_dir,
        timings=args.timings,
    )
    return run(job)


# ----------------------------------------------------------------------
def main(argv: Optional[Sequence[str]] = None) -> int:
    """Parse ``argv``, run the command and return the exit code."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as error:
        sys.stderr.write(f"{parser.prog}: {error}\n")
        return 1
    logging.basicConfig(level=getattr(logging, args.log_level))

    try:
        text, code = dispatch(args)
    except (UsageError, ValueError, KeyError) as error:
        sys.stderr.write(f"{parser.prog}: {error}\n")
        return 1
    _emit(text, getattr(args, 'output', None))
    return code


if __name__ == '__main__':
    sys.exit(main())
