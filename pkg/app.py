#!/usr/bin/env python3
"""
tpcodes worked examples - one documented command per example, run through the CLI entry point.

    python app.py            # run every example
    python app.py z18-code   # run one example by name
"""

import argparse
import sys

from tpcodes.__main__ import parse_job
from tpcodes.analyzer import run
from tpcodes.utils import console

EXAMPLES = [
    ("z18-code", "Cay(Z18, {1,9,17}) has the total perfect code <3>",
     "verify --group cyclic:18 --conn 1,9,17 --code 0,3,6,9,12,15 --crosscheck"),
    ("z20-code", "Cay(Z20, {1,2,10,18,19}) has the total perfect code <5>",
     "verify --group cyclic:20 --conn 1,2,10,18,19 --code 0,5,10,15 --crosscheck"),
    ("z18-subgroups", "Normal subgroups that are codes, and a partition into codes",
     "search --group cyclic:18 --conn 1,9,17 --mode all --partition"),
    ("z20-report", "Necessary conditions on Z20, coset test for <4>",
     "report --group cyclic:20 --conn 1,2,10,18,19 --subgroup 0,4,8,12,16"),
    ("q4-code", "The code {0000,1110,0001,1111} in the hypercube Q4",
     "verify --group elem2:4 --conn 1000,0100,0010,0001 --code 0000,1110,0001,1111"),
    ("q4-hamming", "Hamming-style code of Q4 from all vectors of V(2,2) as check rows",
     "cubelike --hamming 2"),
    ("q4-partition", "Q4 splits into four total perfect codes",
     "search --group elem2:4 --conn 1000,0100,0010,0001 --mode count --partition"),
    ("q3-none", "Q3 has no total perfect code: degree 3 does not divide 8",
     "search --group elem2:3 --conn 1,2,4 --mode count"),
    ("q5-fast-fail", "Q5: degree 5 does not divide 32",
     "search --group elem2:5 --conn 1,2,4,8,16 --mode count"),
    ("cubelike-n3", "Linear code for S = {100,010,001,111} in V(3,2)",
     "cubelike --n 3 --conn 100,010,001,111"),
    ("cubelike-random", "Linear code for a random spanning set of size 8 in V(5,2)",
     "cubelike --n 5 --conn random:3 --seed 0"),
    ("c5-obstruction", "The 5-cycle: zero is not an eigenvalue",
     "report --group cyclic:5 --conn 1,4"),
    ("s3-codes", "Cay(S3, transpositions) = K33 has nine codes",
     "search --group sym:3 --conn 1,2,5 --mode all"),
]


def main():
    """Run the worked examples."""
    parser = argparse.ArgumentParser(description="tpcodes worked examples")
    parser.add_argument("names", nargs="*", help="Examples to run (default: all)")
    parser.add_argument("--list", action="store_true", help="List the examples and their commands")
    args = parser.parse_args()

    if args.list:
        for name, description, command in EXAMPLES:
            console.print(f"[bold cyan]{name}[/bold cyan]: {description}\n    tpc {command}")
        return 0

    selected = [e for e in EXAMPLES if not args.names or e[0] in args.names]
    unknown = set(args.names) - {e[0] for e in EXAMPLES}
    if unknown:
        console.print(f"[bold red]Error:[/bold red] unknown example(s): {', '.join(sorted(unknown))}")
        return 1

    for name, description, command in selected:
        console.print(f"\n[bold green]{name}[/bold green]: {description}")
        console.print(f"[dim]$ tpc {command}[/dim]")
        code = run(parse_job(command.split()))
        console.print(f"[dim]exit {code}[/dim]")
    return 0


if __name__ == "__main__":
    sys.exit(main())
