"""
Utility functions for tpcodes.
"""

import json
import os
from typing import Any, List, Optional, Union

from rich.console import Console

from .errors import UsageError
from .groups import GroupTable, VertexSet

console = Console(stderr=True)

THREADS_ENV_VAR = "TPC_THREADS"


def display_banner():
    """Display the application banner."""
    console.print("""
[bold cyan]
  _____ ____   ____
 |_   _|  _ \\ / ___|
   | | | |_) | |
   | | |  __/| |___
   |_| |_|    \\____|

[bold green]Total perfect codes in Cayley graphs[/bold green]
[/bold cyan]
    """)


def debug_print(message: str, data: Any = None, enabled: bool = False) -> None:
    """Print debug information if debug mode is enabled.

    Args:
        message: Debug message to print
        data: Optional data to print
        enabled: Whether debug mode is enabled
    """
    if not enabled:
        return

    console.print(f"\n[bold yellow]DEBUG: {message}[/bold yellow]")
    if data is not None:
        if isinstance(data, (dict, list)):
            console.print(json.dumps(data, indent=2, sort_keys=True, default=str))
        else:
            console.print(str(data))


def bits_to_string(value: int, width: int) -> str:
    """Little-endian bit-string: character i is bit i of ``value``."""
    return "".join("1" if value >> i & 1 else "0" for i in range(width))


def string_to_bits(text: str) -> int:
    """Inverse of bits_to_string."""
    if not text or set(text) - {"0", "1"}:
        raise UsageError(f"'{text}' is not a bit-string")
    return sum(1 << i for i, ch in enumerate(text) if ch == "1")


def format_element(group: GroupTable, x: int) -> Union[int, str]:
    """Element as printed in JSON output: bit-string for elem2 groups, else index."""
    if group.bit_width is not None:
        return bits_to_string(x, group.bit_width)
    return x


def format_elements(group: GroupTable, elements) -> List[Union[int, str]]:
    return [format_element(group, x) for x in elements]


def parse_element(group: GroupTable, token: str) -> int:
    """Parse an index, or a bit-string of exactly k digits on elem2:k groups."""
    token = token.strip()
    k = group.bit_width
    if k is not None and len(token) == k and set(token) <= {"0", "1"}:
        x = string_to_bits(token)
    else:
        try:
            x = int(token)
        except ValueError:
            raise UsageError(f"'{token}' is not an element of {group.label}")
    if not 0 <= x < group.order:
        raise UsageError(f"element {x} is outside 0..{group.order - 1} in {group.label}")
    return x


def parse_element_list(group: GroupTable, text: Optional[str], flag: str) -> List[int]:
    """Parse a comma-separated element list given on the command line.

    Args:
        group: Group the elements belong to
        text: Raw flag value
        flag: Flag name, used in error messages

    Returns:
        Element indices in the order given
    """
    if text is None:
        raise UsageError(f"{flag} is required")
    tokens = [t for t in text.split(",") if t.strip()]
    if not tokens:
        raise UsageError(f"{flag} needs at least one element")
    try:
        return [parse_element(group, t) for t in tokens]
    except UsageError as e:
        raise UsageError(f"{flag}: {e.message}")


def parse_vertex_set(group: GroupTable, text: Optional[str], flag: str) -> VertexSet:
    return VertexSet.from_indices(parse_element_list(group, text, flag), group.order)


def resolve_threads(threads: Optional[int] = None) -> int:
    """Number of worker processes: the flag, then TPC_THREADS, then all cores."""
    if threads is None:
        env = os.environ.get(THREADS_ENV_VAR)
        if env:
            try:
                threads = int(env)
            except ValueError:
                raise UsageError(f"{THREADS_ENV_VAR}='{env}' is not an integer")
        else:
            threads = os.cpu_count() or 1
    if threads < 1:
        raise UsageError(f"--threads must be at least 1, got {threads}")
    return threads

