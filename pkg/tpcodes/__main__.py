"""
Main entry point for tpcodes (tpc).
"""

import argparse
import sys
from typing import List, Optional

from .analyzer import CLOSE_MODES, EXIT_USAGE, JobSpec, run
from .report_generator import EXPORT_FORMATS
from .search import SEARCH_MODES
from .utils import console


class ArgumentParser(argparse.ArgumentParser):
    """argparse parser whose usage errors exit with status 1."""

    def error(self, message: str):
        self.print_usage(sys.stderr)
        console.print(f"[bold red]Error:[/bold red] {message}")
        sys.exit(EXIT_USAGE)


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--threads", type=int, default=None,
                        help="Worker processes (default: $TPC_THREADS, then all cores)")
    parser.add_argument("--seed", type=int, default=0, help="Random seed (default: 0)")
    parser.add_argument("--check-assoc", action="store_true",
                        help="Check associativity of the group table")
    parser.add_argument("--close-conn", choices=CLOSE_MODES, default="none",
                        help="Close the connection set under inverses or conjugation (default: none)")
    parser.add_argument("--debug", action="store_true", help="Print debug information on standard error")
    parser.add_argument("--table", action="store_true", help="Also render the result as tables on standard error")
    parser.add_argument("--output", "-o", default=None, help="Write the result to this file instead of standard output")


def _add_graph(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--group", "-g", required=True,
                        help="Group spec: cyclic:n, elem2:k, dihedral:n, sym:n, product:(A),(B), json:<path>")
    parser.add_argument("--conn", "-s", required=True,
                        help="Connection set as comma-separated indices (or bit-strings on elem2 groups)")


def build_parser() -> argparse.ArgumentParser:
    parser = ArgumentParser(prog="tpc", description="Total perfect codes in Cayley graphs", allow_abbrev=False)
    commands = parser.add_subparsers(dest="command", required=True, parser_class=ArgumentParser)

    verify = commands.add_parser("verify", help="Verify a total perfect code", allow_abbrev=False)
    _add_graph(verify)
    verify.add_argument("--code", "-c", required=True, help="Candidate code as comma-separated elements")
    verify.add_argument("--crosscheck", action="store_true",
                        help="Also run every applicable algebraic characterization and compare")
    _add_common(verify)

    search = commands.add_parser("search", help="Search for total perfect codes", allow_abbrev=False)
    _add_graph(search)
    search.add_argument("--mode", choices=SEARCH_MODES, default="all", help="first, all or count (default: all)")
    search.add_argument("--limit", type=int, default=None, help="Stop after this many codes")
    search.add_argument("--canonical", action="store_true",
                        help="Report one representative per right-translation orbit")
    search.add_argument("--partition", action="store_true",
                        help="Also search for a partition of the vertices into codes")
    _add_common(search)

    cubelike = commands.add_parser("cubelike", help="Construct a linear code in a cubelike graph", allow_abbrev=False)
    cubelike.add_argument("--n", type=int, default=None, help="Dimension of the cubelike graph")
    cubelike.add_argument("--conn", "-s", default=None,
                          help="Spanning set as n-bit strings or indices, or random:t for 2^t random vectors")
    cubelike.add_argument("--hamming", type=int, default=None, metavar="T",
                          help="Hamming-style code of the hypercube of dimension 2^T")
    _add_common(cubelike)

    report = commands.add_parser("report", help="Evaluate necessary conditions", allow_abbrev=False)
    _add_graph(report)
    report.add_argument("--subgroup", default=None, help="Subgroup for the coset test as comma-separated elements")
    _add_common(report)

    export = commands.add_parser("export", help="Export the Cayley graph", allow_abbrev=False)
    _add_graph(export)
    export.add_argument("--format", choices=EXPORT_FORMATS, default="json", help="json, dot or csv (default: json)")
    _add_common(export)
    return parser


def parse_job(argv: Optional[List[str]] = None) -> JobSpec:
    args = build_parser().parse_args(argv)
    fields = {k: v for k, v in vars(args).items() if v is not None and k in JobSpec.__dataclass_fields__}
    return JobSpec(**fields)


def main(argv: Optional[List[str]] = None):
    """Main entrypoint function."""
    job = parse_job(argv)
    try:
        sys.exit(run(job))
    except KeyboardInterrupt:
        console.print("\n[yellow]Operation cancelled by user[/yellow]")
        sys.exit(130)
    except Exception as e:
        console.print(f"[bold red]Error:[/bold red] {str(e)}")
        if job.debug:
            import traceback
            console.print(traceback.format_exc())
        sys.exit(1)


if __name__ == "__main__":
    main()
