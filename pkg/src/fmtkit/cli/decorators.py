"""Decorators building commands from annotated functions.

Argument and option decorators may be stacked in any order above
:func:`command`; they are attached in the order they are written.
"""

from __future__ import annotations

import inspect
from typing import TYPE_CHECKING, Any, Callable, TypeVar, Union

from ..exceptions import DefinitionError
from .arguments import Argument, CountOption, FlagOption, HelpOption, Option, VersionOption
from .commands import Command, CommandFunction, CommandTree, TreeFunction

if TYPE_CHECKING:
    from .types import Type

CF = TypeVar("CF", bound=CommandFunction)
TF = TypeVar("TF", bound=TreeFunction)
F = TypeVar("F", bound=Union[CommandFunction, TreeFunction])


def _prepare_definition(func: F, obj: Argument | Option) -> None:
    if not hasattr(func, "__fmtkit_definition__"):
        func.__fmtkit_definition__ = []  # type: ignore [union-attr]
    func.__fmtkit_definition__.append(obj)  # type: ignore [union-attr]


def _definitions(func: Callable[..., Any]) -> list[Argument | Option]:
    # Decorators apply bottom-up; reverse to get the written order.
    return list(reversed(getattr(func, "__fmtkit_definition__", [])))


def _describe(func: Callable[..., Any], description: str) -> str:
    if description:
        return description
    doc = inspect.getdoc(func)
    return doc.splitlines()[0] if doc else ""


def argument(
    decl: str,
    *,
    nargs: int = 1,
    required: bool = True,
    type: Type | type | None = None,
    default: Any = None,
    metavar: str | None = None,
    help: str = "",
) -> Callable[[CF], CF]:
    """Attach a positional argument; see :class:`~fmtkit.cli.arguments.Argument`."""

    def decorator(func: CF) -> CF:
        obj = Argument(
            decl, nargs=nargs, required=required, type=type, default=default, metavar=metavar, help=help
        )
        _prepare_definition(func, obj)
        return func

    return decorator


def option(
    *decls: str,
    dest: str | None = None,
    required: bool = False,
    type: Type | type | None = None,
    default: Any = None,
    show_default: bool = False,
    metavar: str | None = None,
    help: str = "",
) -> Callable[[F], F]:
    """Attach an option taking one value; see :class:`~fmtkit.cli.arguments.Option`."""

    def decorator(func: F) -> F:
        obj = Option(
            *decls,
            dest=dest,
            required=required,
            type=type,
            default=default,
            show_default=show_default,
            metavar=metavar,
            help=help,
        )
        _prepare_definition(func, obj)
        return func

    return decorator


def flag_option(
    *decls: str, dest: str | None = None, const: Any = True, default: Any = False, help: str = ""
) -> Callable[[F], F]:
    def decorator(func: F) -> F:
        _prepare_definition(func, FlagOption(*decls, dest=dest, const=const, default=default, help=help))
        return func

    return decorator


def count_option(*decls: str, dest: str | None = None, default: int = 0, help: str = "") -> Callable[[F], F]:
    def decorator(func: F) -> F:
        _prepare_definition(func, CountOption(*decls, dest=dest, default=default, help=help))
        return func

    return decorator


def help_option(*decls: str, help: str = "Show help information and exit.") -> Callable[[F], F]:
    def decorator(func: F) -> F:
        _prepare_definition(func, HelpOption(*decls, help=help))
        return func

    return decorator


def version_option(*decls: str, help: str = "Show version information and exit.") -> Callable[[F], F]:
    def decorator(func: F) -> F:
        _prepare_definition(func, VersionOption(*decls, help=help))
        return func

    return decorator


def command(name: str | None = None, version: str | None = None, description: str = "") -> Callable[[CF], Command]:
    """Turn a report-returning function into a :class:`Command`.

    Parameters:
        name (str | None, default=None):
            The name to display in the version information.
        version (str | None, default=None):
            The version to display in the version information.
        description (str, default=''):
            The description in help; defaults to the first docstring line.
    """

    def decorator(func: CF) -> Command:
        cmd = Command(name, version, _describe(func, description))
        for obj in _definitions(func):
            if isinstance(obj, Argument):
                cmd.add_argument(obj)
            else:
                cmd.add_option(obj)
        cmd.function = func
        return cmd

    return decorator


def command_tree(
    name: str | None = None, version: str | None = None, description: str = ""
) -> Callable[[TF], CommandTree]:
    """Turn a function into a :class:`CommandTree`; its options are parsed
    before the subcommand name."""

    def decorator(func: TF) -> CommandTree:
        cmd = CommandTree(name, version, _describe(func, description))
        for obj in _definitions(func):
            if isinstance(obj, Argument):
                raise DefinitionError("Command tree does not support argument.")
            cmd.add_option(obj)
        cmd.function = func
        return cmd

    return decorator
