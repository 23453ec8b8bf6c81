from __future__ import annotations

import dataclasses
import logging
import sys
import time
from typing import Any, Callable, Optional, TypeVar, Union

from typing_extensions import Self, TypeAlias

from ..constants import DEST_COMMAND_NAME
from ..exceptions import CommandError, ParserContextError
from .arguments import Argument, Option
from .parsers import Parser, TreeParser
from .printers import PrinterHelper
from .reports import Report, Settings

logger = logging.getLogger(__name__)

CommandFunction: TypeAlias = Callable[..., Report]
TreeFunction: TypeAlias = Callable[..., Optional["dict[str, Any]"]]


def _exit_command(exit_code: int, standalone: bool) -> int:
    if standalone:
        sys.exit(exit_code)
    return exit_code


class _Command:
    parent: CommandTree | None = None
    _prog: str | None = None

    def __init__(self, name: str | None = None, version: str | None = None, description: str = "") -> None:
        self.name = name
        self.version = version
        self.description = description
        self.options: list[Option] = []

    def add_option(self, option: Option) -> Self:
        self.options.append(option)
        return self

    def get_name(self) -> str:
        if self.name is not None:
            return self.name
        if self.parent is not None:
            return self.parent.get_name()
        return "Unknown Program"

    def get_version(self) -> str:
        if self.version is not None:
            return self.version
        if self.parent is not None:
            return self.parent.get_version()
        return "Unknown Version"

    def get_cmd_path(self) -> str:
        if self.parent is None:
            return self.prog
        return f"{self.parent.get_cmd_path()} {self.prog}"

    @property
    def prog(self) -> str:
        if self._prog is None:
            raise ParserContextError("This command is not running.")
        return self._prog

    @prog.setter
    def prog(self, value: str) -> None:
        self._prog = value


class Command(_Command):
    """A leaf command whose function returns a :class:`Report`.

    The function receives the parsed values by destination plus ``settings``,
    a :class:`Settings` forwarded by the parent tree (defaults when run alone).
    The report is printed in the requested format and its verdict decides the
    exit code.

    Parameters:
        name (str | None, default=None):
            The name to display in the version information.
        version (str | None, default=None):
            The version to display in the version information.
        description (str, default=''):
            The description to display in help.
    """

    def __init__(self, name: str | None = None, version: str | None = None, description: str = "") -> None:
        super().__init__(name, version, description)
        self.arguments: list[Argument] = []
        self.function: CommandFunction = lambda **kwargs: Report(self.get_name(), None)

    def add_argument(self, argument: Argument) -> Self:
        self.arguments.append(argument)
        return self

    def __call__(
        self,
        args: dict[str, Any] | None = None,
        argv: list[str] | None = None,
        *,
        parent: CommandTree | None = None,
        prog: str | None = None,
        standalone: bool = True,
    ) -> int:
        """Invoke this command."""

        self.parent = parent
        self.prog = prog if prog is not None else sys.argv[0]
        args = dict(args) if args is not None else {}
        argv = argv if argv is not None else sys.argv[1:]
        settings = args.setdefault("settings", Settings())

        with PrinterHelper(self, standalone=standalone) as helper:
            Parser(self.arguments, self.options).parse_args(args, argv)
            start = time.perf_counter()
            report = self.function(**args)
            report = dataclasses.replace(report, timing_ms=(time.perf_counter() - start) * 1000)
            logger.info("%s finished in %.1f ms", report.command, report.timing_ms)
            helper.printer.print_report(self, report, settings.format)
        return _exit_command(report.exit_code, standalone)


class CommandTree(_Command):
    """A command dispatching to named subcommands.

    Its function receives the parsed root options and returns the arguments
    to seed the subcommand with, typically ``{"settings": Settings(...)}``.

    Parameters:
        name (str | None, default=None):
            The name to display in the version information.
        version (str | None, default=None):
            The version to display in the version information.
        description (str, default=''):
            The description to display in help.
    """

    def __init__(self, name: str | None = None, version: str | None = None, description: str = "") -> None:
        super().__init__(name, version, description)
        self.function: TreeFunction = lambda **kwargs: None
        self.commands: dict[str, dict[str, Command | CommandTree]] = {}

    def add_command(self, group_name: str, cmd_name: str, cmd: Command | CommandTree) -> Self:
        for group in self.commands.values():
            if cmd_name in group:
                raise ParserContextError(f"Command {cmd_name!r} conflicts.")
        self.commands.setdefault(group_name, {})[cmd_name] = cmd
        return self

    def register_command(self, group_name: str, cmd_name: str) -> Callable[[AnyCommand], AnyCommand]:
        def decorator(cmd: AnyCommand) -> AnyCommand:
            self.add_command(group_name, cmd_name, cmd)
            return cmd

        return decorator

    def load_command(self, name: str) -> Command | CommandTree | None:
        for group in self.commands.values():
            if name in group:
                return group[name]
        return None

    def __call__(
        self,
        args: dict[str, Any] | None = None,
        argv: list[str] | None = None,
        *,
        parent: CommandTree | None = None,
        prog: str | None = None,
        standalone: bool = True,
    ) -> int:
        """Invoke this command tree."""

        self.parent = parent
        self.prog = prog if prog is not None else sys.argv[0]
        args = dict(args) if args is not None else {}
        argv = argv if argv is not None else sys.argv[1:]

        with PrinterHelper(self, standalone=standalone):
            ctx = TreeParser(self.options).parse_args(args, argv)
            if (cmd_name := args.pop(DEST_COMMAND_NAME, None)) is None:
                raise CommandError("Missing command.")
            if (cmd := self.load_command(cmd_name)) is None:
                raise CommandError(f"Unknown command {cmd_name!r}.")
            forwarded = self.function(**args) or {}

        # The subcommand reports its own errors.
        return cmd(forwarded, ctx.argv_remained, parent=self, prog=cmd_name, standalone=standalone)


AnyCommand = TypeVar("AnyCommand", bound=Union[Command, CommandTree])
