from __future__ import annotations

import sys
from typing import TYPE_CHECKING, Any, Protocol

from typing_extensions import Self

from ..exceptions import FMTKitException, HelpSignal, VersionSignal

if TYPE_CHECKING:
    from .commands import _Command
    from .reports import OutputFormat, Report


class Printer(Protocol):
    """The printer protocol."""

    def print_error(self, cmd: _Command, exc: FMTKitException) -> None:
        """Print error information."""

    def print_help(self, cmd: _Command) -> None:
        """Print help information."""

    def print_version(self, cmd: _Command) -> None:
        """Print version information."""

    def print_report(self, cmd: _Command, report: Report, format: OutputFormat) -> None:
        """Print the report of a finished command."""


class PrinterHelper:
    """Maps exceptions and signals raised inside its block to printed messages
    and exit codes.

    Parameters:
        cmd (_Command):
            The running command.
        standalone (bool):
            If ``True``, exit this process after handling an exception or
            signal; otherwise, propagate it.
    """

    def __init__(self, cmd: _Command, *, standalone: bool) -> None:
        self.cmd = cmd
        self.standalone = standalone

    @property
    def printer(self) -> Printer:
        from ._rich import RichPrinter

        return RichPrinter()

    def __enter__(self) -> Self:
        return self

    def __exit__(self, exc_type: Any, exc_value: Any, traceback: Any) -> bool:
        if isinstance(exc_value, FMTKitException):
            self.printer.print_error(self.cmd, exc_value)
            return self._exit(exc_value.exit_code)
        if isinstance(exc_value, HelpSignal):
            self.printer.print_help(self.cmd)
            return self._exit(exc_value.exit_code)
        if isinstance(exc_value, VersionSignal):
            self.printer.print_version(self.cmd)
            return self._exit(exc_value.exit_code)
        return False

    def _exit(self, exit_code: int) -> bool:
        if self.standalone:
            sys.exit(exit_code)
        return False
