from __future__ import annotations

import json
from typing import TYPE_CHECKING, Any

from rich.console import Console
from rich.style import Style
from rich.table import Table
from rich.text import Text

from .commands import Command, CommandTree, _Command
from .reports import OutputFormat

if TYPE_CHECKING:
    from ..exceptions import FMTKitException
    from .reports import Report


def _table(*columns: str) -> Table:
    table = Table(box=None, padding=(0, 0, 0, 2), show_header=False, show_edge=False)
    for column in columns:
        table.add_column(column)
    return table


def _render(value: Any) -> Text:
    if isinstance(value, str):
        return Text(value)
    return Text(json.dumps(value, sort_keys=True, indent=2, ensure_ascii=False))


class RichPrinter:
    def _print_usage(self, console: Console, cmd: _Command) -> None:
        text = Text("Usage: " + cmd.get_cmd_path())
        if cmd.options:
            text.append(" [OPTIONS]...")
        if isinstance(cmd, Command):
            for argument in cmd.arguments:
                metavar = argument.resolve_metavar()
                if not argument.required:
                    metavar = "[" + metavar + "]"
                if argument.nargs == -1:
                    metavar += "..."
                text.append(" " + metavar)
        elif isinstance(cmd, CommandTree):
            text.append(" COMMAND [ARGS]...")
        console.print(text, soft_wrap=True)

    def print_error(self, cmd: _Command, exc: FMTKitException) -> None:
        console = Console(stderr=True)
        self._print_usage(console, cmd)
        console.print(Text(f"Try {cmd.get_cmd_path() + ' --help'!r} for help."), soft_wrap=True)
        console.print()
        # The message may quote user input, so it is never parsed as markup.
        console.print(Text("Error: " + exc.message, style=Style(color="red", bold=True)), soft_wrap=True)

    def print_help(self, cmd: _Command) -> None:
        console = Console()
        self._print_usage(console, cmd)
        if cmd.description:
            console.print()
            console.print(Text(cmd.description), soft_wrap=True)

        if isinstance(cmd, Command) and cmd.arguments:
            console.print("\nArguments:")
            table = _table("Arguments", "Descriptions")
            for argument in cmd.arguments:
                table.add_row(argument.resolve_metavar(), Text(argument.help))
            console.print(table)
        elif isinstance(cmd, CommandTree):
            for group_name, group in cmd.commands.items():
                console.print(f"\n{group_name}:")
                table = _table("Commands", "Descriptions")
                for name, sub in group.items():
                    table.add_row(name, Text(sub.description))
                console.print(table)

        if cmd.options:
            console.print("\nOptions:")
            table = _table("Options", "Descriptions")
            for option in cmd.options:
                opts = ", ".join(option.short_options + option.long_options)
                if metavar := option.resolve_metavar():
                    opts += " " + metavar
                table.add_row(Text(opts), Text(option.format_help()))
            console.print(table)

    def print_version(self, cmd: _Command) -> None:
        Console().print(f"{cmd.get_name()} {cmd.get_version()}", highlight=False)

    def print_report(self, cmd: _Command, report: Report, format: OutputFormat) -> None:
        console = Console()
        if format is OutputFormat.MACHINE:
            console.out(report.dumps(), end="", highlight=False)
            return
        table = _table("Field", "Value")
        table.add_row("verdict", _render(report.verdict))
        if report.witness is not None:
            table.add_row("witness", _render(report.witness))
        if report.bounds:
            table.add_row("bounds", Text(", ".join(f"{k}={v}" for k, v in sorted(report.bounds.items()))))
        table.add_row("time", Text(f"{report.timing_ms:.1f} ms"))
        console.print(Text(report.command, style=Style(bold=True)))
        console.print(table)
