"""OGC rich rendering of run reports and acceptance suites (stderr)."""

import os
import sys
from typing import Any, Dict, List

# Allow imports from the project root.
sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from rich.console import Console
from rich.panel import Panel
from rich.table import Table
from rich.text import Text

from config import APP_NAME, VERSION
from normalizer import to_jsonable
from schema import RunReport

console = Console(stderr=True)

# Scalars longer than this are elided in tables.
MAX_CELL = 80


def _cell(value: Any) -> str:
    text = str(to_jsonable(value))
    if len(text) > MAX_CELL:
        text = text[:MAX_CELL] + "..."
    return text


def show_banner() -> None:
    banner = Text()
    banner.append(APP_NAME, style="bold bright_cyan")
    banner.append("  v{}".format(VERSION), style="dim")
    console.print(Panel(banner, border_style="bright_cyan"))


def show_report(report: RunReport) -> None:
    """Summary panel plus one table of the top-level results."""
    status = "[bold green]ok[/]" if report.ok else "[bold red]FAILED[/]"
    lines = [
        "Command:     [bold]{}[/]".format(report.command),
        "Status:      {}".format(status),
        "Runtime:     [bold]{:,} ms[/]".format(report.runtime_ms),
        "Cache hits:  [bold]{}[/]".format(report.cache_hits),
    ]
    if report.artifacts:
        lines.append("Files:       {}".format(", ".join(report.artifacts)))
    console.print(Panel("\n".join(lines), title="ogc {}".format(report.command), border_style="bright_cyan"))

    if report.parameters:
        _show_mapping("Parameters", report.parameters, "cyan")
    if report.results:
        _show_mapping("Results", report.results, "green")
    for failure in report.failures:
        console.print("[red]- {}[/]".format(failure))
    if report.error:
        console.print("[bold red]Error: {}[/]".format(report.error))


def _show_mapping(title: str, data: Dict[str, Any], style: str) -> None:
    t = Table(title=title, show_header=False)
    t.add_column("Key", style="bold {}".format(style))
    t.add_column("Value")
    for key in sorted(data):
        t.add_row(str(key), _cell(data[key]))
    console.print(t)


def show_suite(suite: str, results: List[Dict[str, Any]]) -> None:
    """One row per acceptance check."""
    t = Table(title="Acceptance suite: {}".format(suite), show_lines=True)
    t.add_column("#", style="dim", width=4)
    t.add_column("Check", style="cyan")
    t.add_column("Result", justify="center")
    t.add_column("Time", justify="right")
    t.add_column("Detail")
    for r in results:
        verdict = "[bold green]pass[/]" if r["ok"] else "[bold red]FAIL[/]"
        detail = r.get("error") or _cell(r.get("detail", {}))
        t.add_row(r["id"], r["title"], verdict, "{:,} ms".format(r["runtime_ms"]), detail)
    console.print(t)
    passed = sum(1 for r in results if r["ok"])
    style = "green" if passed == len(results) else "red"
    console.print("[bold {}]{} / {} checks passed[/]".format(style, passed, len(results)))


def show_cache(rows: List[Dict[str, Any]]) -> None:
    if not rows:
        console.print("[yellow]The enumeration cache is empty.[/]")
        return
    t = Table(title="Cached enumerations")
    t.add_column("n", justify="right")
    t.add_column("k", justify="right")
    t.add_column("q", justify="right")
    t.add_column("Points", justify="right", style="bold")
    t.add_column("Checksum", style="dim")
    t.add_column("Created", style="cyan")
    for row in rows:
        t.add_row(str(row["n"]), str(row["k"]), str(row["q"]), str(row["count"]),
                  row["checksum"][:16], (row.get("created") or "")[:19])
    console.print(t)
