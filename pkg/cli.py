"""
Command line front end.

    python cli.py kl --n 4 --i 2 --format csv
    python cli.py rouquier --n 4 --i 2 --mu UDUD
    python cli.py selftest --max-n 6 --jobs 4

Exit status: 0 on success, 1 on a library error or a failed verification,
2 on a usage error. Data goes to stdout (or --output), logs to stderr.
"""

import argparse
import csv
import io
import logging
import os
import pathlib
import sys
from concurrent.futures import ProcessPoolExecutor
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from pydantic import ValidationError

# Ensure local imports work when running from different directories
CURRENT_DIR = os.path.dirname(os.path.abspath(__file__))
if CURRENT_DIR not in sys.path:
    sys.path.append(CURRENT_DIR)

from config import settings
from demazure import check_demazure_suite, positivity_sweep
from dyck import (
    check_equal_size_example,
    check_order_suite,
    check_overlying_suite,
    check_two_row_lemma,
    enumerate_partitions,
)
from equivariant import check_commutativity, verify_pieri_gkm
from errors import UsageError
from fixtures import emit_fixtures
from hecke import check_inverse, check_valley_lemma, crucial_sweep, verify_szj
from homology import (
    cellular_rank,
    check_homology,
    hom1_dim,
    hom2_dim,
    hom_rank_notless,
    rouquier_terms,
)
from models import CommandRequest, VerificationReport
from paths import Path, bruhat_less, identity_path, path_from_string, region_boxes
from rendering import (
    dump_json,
    render_pair,
    render_partitions,
    render_region,
    render_report,
    render_rouquier,
    render_table,
)
from table_service import table_service
from zelevinsky import neat_orders, translation_pair, verify_small_resolution

logger = logging.getLogger(__name__)

# Suites that enumerate all of S_n or every valley configuration stop here
SMALL_SUITE_MAX_N = 5
# The smallest region with an equal-size comparable pair lives in n = 7
EQUAL_SIZE_EXAMPLE_N = 7

ACTIONS = {
    "kl": "compute KL table",
    "invkl": "compute inverse KL table",
    "partitions": "enumerate Dyck partitions",
    "render": "render region",
    "neat": "compute neat orders",
    "char-check": "check small resolutions",
    "rouquier": "compute Rouquier complex",
    "homdim": "compute Hom dimensions",
    "pieri-check": "check Pieri rules",
    "demazure-check": "check Demazure operators",
    "selftest": "run selftest",
}

CommandResult = Tuple[int, str]


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="dyckgrass", description=settings.app_description)
    parser.add_argument("subcommand", choices=sorted(ACTIONS), help="Command to run")
    parser.add_argument("--n", type=int, help="Number of steps of a path")
    parser.add_argument("--i", type=int, help="Number of Down steps of a path")
    parser.add_argument("--mu", help="Upper path as a U/D word")
    parser.add_argument("--lam", help="Lower path as a U/D word")
    parser.add_argument("--format", default="ascii", help="csv, json or ascii")
    parser.add_argument("--seed", type=int, default=settings.default_seed)
    parser.add_argument("--jobs", type=int, default=settings.jobs, help="Worker processes for selftest")
    parser.add_argument("--max-n", type=int, default=settings.max_n, help="Largest n covered by selftest")
    parser.add_argument("--cap", type=int, default=settings.neat_order_cap, help="Neat orders checked per path")
    parser.add_argument("--output", help="Write data output to this file instead of stdout")
    parser.add_argument("--emit-fixtures", metavar="DIR", help="Also write golden fixture files to DIR")
    parser.add_argument("--log-level", default=settings.log_level)
    return parser


def parse_request(argv: Optional[Sequence[str]] = None) -> Tuple[CommandRequest, str]:
    """Parse and validate the flags; returns the request and the log level."""
    args = build_parser().parse_args(argv)
    try:
        request = CommandRequest(
            subcommand=args.subcommand,
            n=args.n,
            i=args.i,
            mu=args.mu,
            lam=args.lam,
            format=args.format,
            seed=args.seed,
            jobs=args.jobs,
            max_n=args.max_n,
            cap=args.cap,
            output=args.output,
            emit_fixtures=args.emit_fixtures,
        )
    except ValidationError as e:
        messages = "; ".join(err["msg"] for err in e.errors())
        raise UsageError(messages) from e
    return request, args.log_level


def configure_logging(level: str) -> None:
    logging.basicConfig(
        level=getattr(logging, level.upper(), logging.WARNING),
        format="%(asctime)s %(name)s %(levelname)s %(message)s",
        stream=sys.stderr,
    )


# Rendering helpers

def _rows_csv(header: List[str], rows: List[List]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buffer.getvalue()


def _report_output(report: VerificationReport, fmt: str) -> CommandResult:
    if fmt == "json":
        text = dump_json(report.model_dump(mode="json"))
    elif fmt == "csv":
        text = _rows_csv(["name", "checked", "failures", "passed"],
                         [[report.name, report.checked, len(report.mismatches), report.passed]])
    else:
        text = render_report(report)
    return (0 if report.passed else 1), text


def _path(request: CommandRequest, name: str) -> Path:
    return path_from_string(getattr(request, name))


# Subcommands

def cmd_kl(request: CommandRequest) -> CommandResult:
    return 0, render_table(table_service.h_table(request.n, request.i), request.format)


def cmd_invkl(request: CommandRequest) -> CommandResult:
    return 0, render_table(table_service.g_table(request.n, request.i), request.format)


def cmd_partitions(request: CommandRequest) -> CommandResult:
    lam, mu = _path(request, "lam"), _path(request, "mu")
    return 0, render_partitions(lam, mu, enumerate_partitions(lam, mu), request.format)


def cmd_render(request: CommandRequest) -> CommandResult:
    mu = _path(request, "mu")
    lam = _path(request, "lam") if request.lam else identity_path(mu.n, mu.i)
    region = region_boxes(lam, mu)
    if request.format == "json":
        return 0, dump_json({"lambda": lam.steps, "mu": mu.steps, "boxes": region.to_json()})
    if request.format == "csv":
        return 0, _rows_csv(["x", "y", "label"], [[b.x, b.y, b.label] for b in sorted(region.boxes)])
    return 0, render_region(lam, mu) + "\n"


def cmd_neat(request: CommandRequest) -> CommandResult:
    mu = _path(request, "mu")
    orders = neat_orders(mu, limit=request.cap)
    pairs = [(order, translation_pair(mu, order)) for order in orders]
    if request.format == "json":
        return 0, dump_json([
            {"order": list(order), "pair": pair.model_dump(by_alias=True, mode="json")}
            for order, pair in pairs
        ])
    if request.format == "csv":
        return 0, _rows_csv(["order", "pair"],
                            [[" ".join(map(str, order)), pair.tensor_notation()] for order, pair in pairs])
    return 0, "".join(render_pair(mu, order, pair) + "\n" for order, pair in pairs)


def cmd_char_check(request: CommandRequest) -> CommandResult:
    return _report_output(verify_small_resolution(request.n, request.i, cap=request.cap), request.format)


def cmd_rouquier(request: CommandRequest) -> CommandResult:
    terms = rouquier_terms(_path(request, "mu"))
    if request.format == "json":
        return 0, dump_json(terms.model_dump(mode="json"))
    if request.format == "csv":
        rows = [[degree, s.path.steps, s.shift] for degree in sorted(terms.terms) for s in terms.terms[degree]]
        return 0, _rows_csv(["degree", "path", "shift"], rows)
    return 0, render_rouquier(terms)


def cmd_homdim(request: CommandRequest) -> CommandResult:
    lam, mu = _path(request, "lam"), _path(request, "mu")
    data = {
        "lambda": lam.steps,
        "mu": mu.steps,
        "hom1": hom1_dim(lam, mu) if lam != mu else None,
        "hom2": hom2_dim(lam, mu) if bruhat_less(lam, mu) else None,
        "notless": str(hom_rank_notless(lam, mu)),
        "cellular": str(cellular_rank(lam, mu)),
    }
    if request.format == "json":
        return 0, dump_json(data)
    if request.format == "csv":
        return 0, _rows_csv(list(data), [["" if v is None else v for v in data.values()]])
    return 0, "".join(f"{key}: {'-' if value is None else value}\n" for key, value in data.items())


def cmd_pieri_check(request: CommandRequest) -> CommandResult:
    report = verify_pieri_gkm(request.n, request.i)
    report.absorb(check_commutativity(request.n, request.i, seed=request.seed))
    return _report_output(report, request.format)


def cmd_demazure_check(request: CommandRequest) -> CommandResult:
    return _report_output(check_demazure_suite(request.n, request.i, seed=request.seed), request.format)


def selftest_item(n: int, i: int, seed: int, cap: int) -> VerificationReport:
    """Every suite for one (n, i)."""
    report = VerificationReport(name="selftest", parameters={"n": n, "i": i})
    h_table, g_table = table_service.h_table(n, i), table_service.g_table(n, i)
    report.absorb(verify_szj(n, i, h_table, g_table))
    report.absorb(check_inverse(n, i, h_table, g_table))
    report.absorb(check_order_suite(n, i))
    report.absorb(check_overlying_suite(n, i))
    report.absorb(check_two_row_lemma(n, i))
    report.absorb(check_valley_lemma(n, i))
    report.absorb(verify_small_resolution(n, i, cap=cap, h_table=h_table))
    report.absorb(check_homology(n, i))
    if n <= SMALL_SUITE_MAX_N:
        report.absorb(crucial_sweep(n, i, h_table))
        report.absorb(check_demazure_suite(n, i, seed=seed))
        report.absorb(verify_pieri_gkm(n, i))
        report.absorb(check_commutativity(n, i, seed=seed))
    elif n <= settings.positivity_max_n:
        report.absorb(positivity_sweep(n, i))
    logger.info(report.summary())
    return report


def selftest_spaces(max_n: int) -> List[Tuple[int, int]]:
    return [(n, i) for n in range(2, max_n + 1) for i in range(1, n)]


def cmd_selftest(request: CommandRequest) -> CommandResult:
    spaces = selftest_spaces(request.max_n)
    if request.jobs == 1:
        reports = [selftest_item(n, i, request.seed, request.cap) for n, i in spaces]
    else:
        with ProcessPoolExecutor(max_workers=request.jobs) as pool:
            futures = [pool.submit(selftest_item, n, i, request.seed, request.cap) for n, i in spaces]
            reports = [future.result() for future in futures]
    if request.max_n >= EQUAL_SIZE_EXAMPLE_N:
        reports.append(check_equal_size_example())
    total = VerificationReport(name="selftest", parameters={"max_n": request.max_n, "seed": request.seed})
    for report in reports:
        total.absorb(report)
    if request.format == "ascii":
        text = "".join(report.summary() + "\n" for report in reports) + render_report(total)
        return (0 if total.passed else 1), text
    return _report_output(total, request.format)


COMMANDS: Dict[str, Callable[[CommandRequest], CommandResult]] = {
    "kl": cmd_kl,
    "invkl": cmd_invkl,
    "partitions": cmd_partitions,
    "render": cmd_render,
    "neat": cmd_neat,
    "char-check": cmd_char_check,
    "rouquier": cmd_rouquier,
    "homdim": cmd_homdim,
    "pieri-check": cmd_pieri_check,
    "demazure-check": cmd_demazure_check,
    "selftest": cmd_selftest,
}


def _fixture_spaces(request: CommandRequest) -> List[Tuple[int, int]]:
    if request.n is not None and request.i is not None:
        return [(request.n, request.i)]
    return selftest_spaces(request.max_n)


def run(request: CommandRequest) -> CommandResult:
    """Dispatch a validated request; returns the exit status and the data output."""
    status, text = COMMANDS[request.subcommand](request)
    if request.emit_fixtures:
        for n, i in _fixture_spaces(request):
            emit_fixtures(request.emit_fixtures, n, i)
    return status, text


def main(argv: Optional[Sequence[str]] = None) -> int:
    try:
        request, log_level = parse_request(argv)
    except UsageError as e:
        print(f"Failed to parse arguments: {str(e)}", file=sys.stderr)
        return 2
    configure_logging(log_level)
    try:
        status, text = run(request)
    except Exception as e:
        logger.debug("%s failed", request.subcommand, exc_info=True)
        print(f"Failed to {ACTIONS[request.subcommand]}: {str(e)}", file=sys.stderr)
        return 1
    if request.output:
        pathlib.Path(request.output).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return status


if __name__ == "__main__":
    sys.exit(main())
