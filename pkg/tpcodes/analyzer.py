"""
Main analyzer module that turns a parsed command into a JSON result.
"""

import sys
from contextlib import nullcontext
from dataclasses import asdict, dataclass
from typing import Any, Dict, List, Optional, TextIO, Tuple

from .cayley import ConnectionSet, build_cayley, close_connection_set, make_connection_set
from .codes import (
    check_abelian_condition,
    check_matching_structure,
    check_normal_subgroup_code,
    check_conjugation_closed_code,
    check_translates,
    verify_tpc,
)
from .errors import InternalInvariantViolated, TPCError, UsageError
from .gf2 import (
    MAX_CUBELIKE_DIMENSION,
    LinearCode,
    check_linear_code_condition,
    construct_cubelike_tpc,
    coset_family,
    hamming_style_code,
    random_spanning_set,
    verify_cubelike_code,
)
from .groups import GroupTable, VertexSet, check_group_axioms, conjugacy_classes, is_normal, is_subgroup, make_group
from .report_generator import EXPORT_FORMATS, ReportGenerator
from .search import SEARCH_MODES, find_tpc_partition, find_tpcs
from .spectral import Conclusion, necessity_reports
from .utils import (
    bits_to_string,
    console,
    debug_print,
    display_banner,
    format_elements,
    parse_vertex_set,
    resolve_threads,
    string_to_bits,
)

COMMANDS = ("verify", "search", "cubelike", "report", "export")
CLOSE_MODES = ("none", "inverse", "conjugation")

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_NEGATIVE = 2


@dataclass
class JobSpec:
    """One command-line invocation."""

    command: str
    group: Optional[str] = None
    conn: Optional[str] = None
    code: Optional[str] = None
    subgroup: Optional[str] = None
    mode: str = "all"
    limit: Optional[int] = None
    seed: int = 0
    canonical: bool = False
    crosscheck: bool = False
    partition: bool = False
    n: Optional[int] = None
    hamming: Optional[int] = None
    format: str = "json"
    output: Optional[str] = None
    threads: Optional[int] = None
    check_assoc: bool = False
    close_conn: str = "none"
    debug: bool = False
    table: bool = False

    def validate(self) -> None:
        if self.command not in COMMANDS:
            raise UsageError(f"unknown command '{self.command}', expected one of {', '.join(COMMANDS)}")
        if self.mode not in SEARCH_MODES:
            raise UsageError(f"--mode must be one of {', '.join(SEARCH_MODES)}")
        if self.close_conn not in CLOSE_MODES:
            raise UsageError(f"--close-conn must be one of {', '.join(CLOSE_MODES)}")
        if self.format not in EXPORT_FORMATS:
            raise UsageError(f"--format must be one of {', '.join(EXPORT_FORMATS)}")
        if self.command != "cubelike" and not self.group:
            raise UsageError("--group is required")


class TPCAnalyzer:
    """Runs one JobSpec."""

    def __init__(self, job: JobSpec):
        """Initialize the analyzer.

        Args:
            job: The parsed command
        """
        self.job = job
        self.debug = job.debug
        self.report_generator = ReportGenerator(debug=job.debug)

    def run(self) -> Tuple[int, Any]:
        """Execute the job.

        Returns:
            Exit code and the JSON-ready payload
        """
        job = self.job
        job.validate()
        debug_print("Job", asdict(job), self.debug)
        handler = getattr(self, f"_run_{job.command}")
        return handler()

    def _status(self, message: str):
        if self.debug:
            return console.status(message)
        return nullcontext()

    def _load_group(self) -> GroupTable:
        with self._status(f"Building group {self.job.group}..."):
            group = make_group(self.job.group)
            if self.job.check_assoc:
                check_group_axioms(group, associativity=True)
        debug_print("Group", {"label": group.label, "order": group.order, "abelian": group.is_abelian}, self.debug)
        return group

    def _connection(self, group: GroupTable) -> ConnectionSet:
        seed = parse_vertex_set(group, self.job.conn, "--conn")
        mode = self.job.close_conn
        if mode == "none":
            conn = make_connection_set(group, seed)
        else:
            conn = close_connection_set(group, seed, under_conjugation=mode == "conjugation")
        debug_print(
            "Connection set",
            {"S": conn.set.indices(), "conjugation_closed": conn.conjugation_closed, "classes": conn.class_count},
            self.debug,
        )
        return conn

    def _run_verify(self) -> Tuple[int, Dict[str, Any]]:
        group = self._load_group()
        conn = self._connection(group)
        code = parse_vertex_set(group, self.job.code, "--code")
        graph = build_cayley(group, conn)
        verdict = verify_tpc(graph, code)
        payload = verdict.to_dict()
        if self.job.crosscheck:
            payload["crosscheck"] = self._crosscheck(group, conn, graph, code, verdict.ok)
        return (EXIT_OK if verdict.ok else EXIT_NEGATIVE), payload

    def _crosscheck(self, group, conn, graph, code: VertexSet, expected: bool) -> Dict[str, Any]:
        checks = {"matching_structure": check_matching_structure(graph, code)}
        classes = conjugacy_classes(group)
        if all(classes.parts[classes.part_of[x]].issubset(code) for x in code):
            checks["conjugation_closed_code"] = check_conjugation_closed_code(group, conn, code)
        if group.is_abelian:
            checks["abelian_difference"] = check_abelian_condition(group, conn, code)
        if is_subgroup(group, code) and is_normal(group, code):
            checks["normal_subgroup"] = check_normal_subgroup_code(group, conn, code)
        for name, verdict in checks.items():
            if verdict.ok != expected:
                raise InternalInvariantViolated(
                    f"{name} says {verdict.ok}, direct verification says {expected}",
                    witness={"check": name},
                )
        result = {name: verdict.to_dict() for name, verdict in checks.items()}
        if expected:
            result["translates"] = check_translates(graph, code).to_dict()
        return result

    def _run_search(self) -> Tuple[int, Dict[str, Any]]:
        group = self._load_group()
        graph = build_cayley(group, self._connection(group))
        workers = resolve_threads(self.job.threads)
        with self._status(f"Searching {self.job.mode} total perfect codes..."):
            result = find_tpcs(
                graph,
                mode=self.job.mode,
                limit=self.job.limit,
                workers=workers,
                canonical=self.job.canonical,
            )
        payload: Dict[str, Any] = {
            "count": result.count,
            "exhausted": result.exhausted,
            "limit_exceeded": result.limit_exceeded,
        }
        if self.job.mode != "count":
            payload["solutions"] = [format_elements(group, c) for c in result.solutions]
        if self.job.partition:
            with self._status("Searching for a partition into total perfect codes..."):
                parts = find_tpc_partition(graph)
            payload["partition"] = None if parts is None else [format_elements(group, p) for p in parts]
        debug_print("Search summary", {"count": result.count, "workers": workers}, self.debug)
        return EXIT_OK, payload

    def _cubelike_vectors(self, n: int) -> List[int]:
        text = self.job.conn
        if not text:
            raise UsageError("--conn is required with --n")
        if text.startswith("random:"):
            try:
                t = int(text.split(":", 1)[1])
            except ValueError:
                raise UsageError(f"--conn: malformed '{text}', expected random:t")
            return random_spanning_set(n, t, self.job.seed)
        vectors = []
        for token in (t.strip() for t in text.split(",") if t.strip()):
            if len(token) == n and set(token) <= {"0", "1"}:
                vectors.append(string_to_bits(token))
            else:
                try:
                    vectors.append(int(token))
                except ValueError:
                    raise UsageError(f"--conn: '{token}' is neither a {n}-bit string nor an index")
        return vectors

    def _run_cubelike(self) -> Tuple[int, Dict[str, Any]]:
        job = self.job
        if job.hamming is not None:
            if job.n is not None:
                raise UsageError("--hamming and --n are mutually exclusive")
            code = hamming_style_code(job.hamming)
        else:
            if job.n is None:
                raise UsageError("cubelike needs --n or --hamming")
            if not 1 <= job.n <= MAX_CUBELIKE_DIMENSION:
                raise UsageError(f"--n must lie in 1..{MAX_CUBELIKE_DIMENSION}, got {job.n}")
            vectors = self._cubelike_vectors(job.n)
            with self._status("Constructing a linear total perfect code..."):
                code = construct_cubelike_tpc(vectors, job.n, seed=job.seed)
        return EXIT_OK, self._code_payload(code)

    def _code_payload(self, code: LinearCode) -> Dict[str, Any]:
        n = code.n
        s = code.connection or []
        payload: Dict[str, Any] = {
            "n": n,
            "t": code.rank,
            "M": code.check_matrix.to_strings(),
            "S": [bits_to_string(u, n) for u in s],
            "size": code.size,
        }
        if code.materializable:
            payload["code"] = [bits_to_string(x, n) for x in code.codewords]
            payload["cosets"] = [[bits_to_string(x, n) for x in c] for c in coset_family(code)]
            payload["verified"] = verify_cubelike_code(n, s, code.codewords).ok
        else:
            payload["basis"] = [bits_to_string(x, n) for x in code.basis]
            payload["verified"] = check_linear_code_condition(code, s).ok
        if not payload["verified"]:
            raise InternalInvariantViolated("constructed code failed verification")
        return payload

    def _run_report(self) -> Tuple[int, List[Dict[str, Any]]]:
        group = self._load_group()
        conn = self._connection(group)
        subgroups = None
        if self.job.subgroup:
            subgroups = [parse_vertex_set(group, self.job.subgroup, "--subgroup")]
        with self._status("Computing necessary conditions..."):
            reports = necessity_reports(group, conn, subgroups)
        impossible = any(r.conclusion == Conclusion.TPC_IMPOSSIBLE for r in reports)
        return (EXIT_NEGATIVE if impossible else EXIT_OK), [r.to_dict() for r in reports]

    def _run_export(self) -> Tuple[int, Any]:
        group = self._load_group()
        graph = build_cayley(group, self._connection(group))
        if self.job.format == "json":
            return EXIT_OK, self.report_generator.graph_to_dict(graph)
        return EXIT_OK, self.report_generator.export_graph(graph, self.job.format)


def run(job: JobSpec, stream: Optional[TextIO] = None) -> int:
    """Run a job, write its JSON (or DOT/CSV export) and return the exit code."""
    stream = stream if stream is not None else sys.stdout
    analyzer = TPCAnalyzer(job)
    if job.table:
        display_banner()
    try:
        code, payload = analyzer.run()
    except TPCError as e:
        console.print(f"[bold red]Error:[/bold red] {e.message}")
        code, payload = e.exit_code, e.to_dict()
    if job.table:
        analyzer.report_generator.display(job.command, payload)
    text = payload if isinstance(payload, str) else ReportGenerator.to_json(payload)
    ReportGenerator.write_text(text, job.output, stream)
    return code
