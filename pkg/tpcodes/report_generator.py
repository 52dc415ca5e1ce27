"""
Module for generating reports and displaying results.
"""

import csv
import io
import json
from typing import Any, Dict, List, Optional, TextIO

from rich.panel import Panel
from rich.table import Table

from .cayley import CayleyGraph, edges
from .utils import console, format_element, format_elements

EXPORT_FORMATS = ("json", "dot", "csv")


class ReportGenerator:
    """Serializes results and renders them as rich tables."""

    def __init__(self, debug: bool = False):
        """Initialize the report generator.

        Args:
            debug: Whether to show debug information
        """
        self.debug = debug

    @staticmethod
    def to_json(payload: Any) -> str:
        """Stable JSON: sorted keys, two-space indentation, trailing newline."""
        return json.dumps(payload, sort_keys=True, indent=2) + "\n"

    @staticmethod
    def write_text(text: str, output_path: Optional[str], stream: TextIO) -> None:
        if output_path:
            with open(output_path, "w", encoding="utf-8", newline="") as f:
                f.write(text)
        else:
            stream.write(text)

    def graph_to_dict(self, graph: CayleyGraph) -> Dict[str, Any]:
        group = graph.group
        return {
            "group": group.label,
            "S": format_elements(group, graph.connection),
            "edges": [[format_element(group, u), format_element(group, v)] for u, v in edges(graph)],
        }

    def export_dot(self, graph: CayleyGraph) -> str:
        """Undirected DOT graph with element labels."""
        out = io.StringIO()
        write_line = lambda s: out.write(s + "\n")
        write_line("graph cayley {")
        write_line(f'\tlabel="Cay({graph.group.label})";')
        for v in range(graph.order):
            write_line(f'\t"{v}" [label="{format_element(graph.group, v)}"];')
        for u, v in edges(graph):
            write_line(f'\t"{u}" -- "{v}";')
        write_line("}")
        return out.getvalue()

    def export_csv(self, graph: CayleyGraph) -> str:
        """Edge list with a u,v header."""
        out = io.StringIO()
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(["u", "v"])
        for u, v in edges(graph):
            writer.writerow([format_element(graph.group, u), format_element(graph.group, v)])
        return out.getvalue()

    def export_graph(self, graph: CayleyGraph, fmt: str) -> str:
        if fmt == "dot":
            return self.export_dot(graph)
        if fmt == "csv":
            return self.export_csv(graph)
        return self.to_json(self.graph_to_dict(graph))

    def display(self, command: str, payload: Any) -> None:
        """Render a command result as tables on the console."""
        if isinstance(payload, dict) and "error" in payload:
            console.print(Panel(payload["message"], title=payload["error"], style="bold red"))
            return
        handlers = {
            "verify": self._display_verdict,
            "search": self._display_search,
            "cubelike": self._display_cubelike,
            "report": self._display_reports,
        }
        handler = handlers.get(command)
        if handler is not None:
            handler(payload)

    def _display_verdict(self, payload: Dict[str, Any]) -> None:
        ok = payload["ok"]
        body = "Total perfect code" if ok else f"Not a total perfect code: {payload.get('witness')}"
        console.print(Panel(body, title="Verdict", style="bold green" if ok else "bold red"))
        for name, check in sorted(payload.get("crosscheck", {}).items()):
            console.print(f"  {name}: {'[green]ok[/green]' if check.get('ok') else '[red]fail[/red]'}")

    def _display_search(self, payload: Dict[str, Any]) -> None:
        table = Table(title=f"Total perfect codes ({payload['count']} found)")
        table.add_column("#", style="cyan", justify="right")
        table.add_column("Code", style="green")
        for i, code in enumerate(payload.get("solutions", [])):
            table.add_row(str(i), ", ".join(str(x) for x in code))
        console.print()
        console.print(table)
        if payload.get("partition") is not None:
            parts = Table(title="Partition into total perfect codes")
            parts.add_column("Part", style="cyan", justify="right")
            parts.add_column("Code", style="magenta")
            for i, code in enumerate(payload["partition"]):
                parts.add_row(str(i), ", ".join(str(x) for x in code))
            console.print(parts)
        if not payload.get("exhausted", True):
            console.print("[yellow]Search stopped before exhausting the tree[/yellow]")

    def _display_cubelike(self, payload: Dict[str, Any]) -> None:
        table = Table(title=f"Check matrix M ({payload['n']} x {payload['t']})")
        table.add_column("Row", style="cyan", justify="right")
        table.add_column("Bits", style="green")
        for i, row in enumerate(payload["M"]):
            table.add_row(str(i), row)
        console.print()
        console.print(table)
        if "code" in payload:
            console.print(Panel(", ".join(payload["code"]), title=f"Code ({payload['size']} words)", style="cyan"))

    def _display_reports(self, reports: List[Dict[str, Any]]) -> None:
        table = Table(title="Necessary conditions")
        table.add_column("Condition", style="cyan")
        table.add_column("Holds", justify="center")
        table.add_column("Conclusion", style="magenta")
        table.add_column("Quantities", style="dim")
        for report in reports:
            holds = "[green]yes[/green]" if report["holds"] else "[red]no[/red]"
            quantities = ", ".join(f"{k}={v}" for k, v in sorted(report["quantities"].items()))
            table.add_row(report["condition"], holds, report["conclusion"], quantities)
        console.print()
        console.print(table)
