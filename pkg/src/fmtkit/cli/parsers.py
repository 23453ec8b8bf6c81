from __future__ import annotations

from contextlib import contextmanager
from typing import Any, Callable, Generator, Sequence

from ..constants import DEST_COMMAND_NAME, SHORT_PREFIX_LEN
from ..exceptions import (
    InvalidArgument,
    InvalidOptionValue,
    MissingOption,
    MultiOption,
    ParserContextError,
    TooFewArguments,
    TooFewOptionValues,
    TooManyArguments,
    TooManyOptionValues,
    TypeConversionError,
    UnknownOption,
)
from .arguments import Argument, Option, is_long_option, is_separator, is_short_option


@contextmanager
def _raise_invalid(error: type[Exception], what: Callable[[], str]) -> Generator[None, None, None]:
    try:
        yield
    except TypeConversionError as e:
        raise error(f"Invalid value for {what()}. {e}") from e


class Context:
    """The cursor over ``argv`` for one parsing process."""

    def __init__(self, args: dict[str, Any], argv: list[str]) -> None:
        self.args = args
        self.argv = argv
        self._index = 0

    @property
    def next_arg(self) -> str | None:
        if self._index < len(self.argv):
            arg = self.argv[self._index]
            self._index += 1
            return arg
        return None

    @property
    def argv_remained(self) -> list[str]:
        return self.argv[self._index :]


class ArgumentParser:
    """Assigns positional values to the arguments in declaration order."""

    def __init__(self, arguments: Sequence[Argument]) -> None:
        self.arguments = list(arguments)
        self.occurred: set[str] = set()
        self._pos = 0

    def parse_argument(self, args: dict[str, Any], arg: str) -> None:
        if self._pos >= len(self.arguments):
            raise TooManyArguments(f"Got too many arguments. Found extra argument {arg!r}.")
        argument = self.arguments[self._pos]
        if argument.nargs == 1:
            self._pos += 1
        with _raise_invalid(InvalidArgument, lambda: f"argument {argument.format_decl()}"):
            argument.store(args, arg)
        self.occurred.add(argument.dest)

    def finalize(self, args: dict[str, Any]) -> None:
        for argument in self.arguments:
            if argument.dest in self.occurred:
                continue
            if argument.required:
                raise TooFewArguments(f"Got too few arguments. {argument.format_decl()} is required but not given.")
            with _raise_invalid(InvalidArgument, lambda: f"argument {argument.format_decl()}"):
                argument.store_default(args)


class OptionParser:
    """Looks up options by key and stores their values."""

    def __init__(self, options: Sequence[Option]) -> None:
        self.options = list(options)
        self.option_map: dict[str, Option] = {}
        for option in self.options:
            for key in option.long_options + option.short_options:
                if key in self.option_map:
                    raise ParserContextError(f"Option {key!r} conflicts.")
                self.option_map[key] = option
        self.occurred: set[int] = set()

    def _get_option(self, key: str) -> Option:
        option = self.option_map.get(key)
        if option is None:
            raise UnknownOption(f"Unknown option {key!r}.")
        if id(option) in self.occurred and not option.allow_multi:
            raise MultiOption(f"Option {key!r} is not allowed to occur multiple times.")
        self.occurred.add(id(option))
        return option

    @staticmethod
    def _store(option: Option, args: dict[str, Any], value: str, key: str) -> None:
        with _raise_invalid(InvalidOptionValue, lambda: f"option {key!r}"):
            option.store(args, value, key=key)

    def parse_long_option(self, ctx: Context, args: dict[str, Any], arg: str) -> None:
        if "=" in arg:  # --option=value
            key, value = arg.split("=", 1)
            option = self._get_option(key)
            if option.nargs == 0:
                raise TooManyOptionValues(f"Option {key!r} does not take a value.")
            self._store(option, args, value, key)
            return

        option = self._get_option(arg)
        if option.nargs == 0:
            option.store_const(args, key=arg)
        elif (value := ctx.next_arg) is None:
            raise TooFewOptionValues(f"Option {arg!r} requires a value.")
        else:
            self._store(option, args, value, arg)

    def parse_short_option(self, ctx: Context, args: dict[str, Any], arg: str) -> None:
        index = SHORT_PREFIX_LEN
        while index < len(arg):
            key = "-" + arg[index]
            index += 1
            option = self._get_option(key)
            if option.nargs == 0:
                option.store_const(args, key=key)
                continue
            if index < len(arg):  # -kvalue
                value: str | None = arg[index:]
            elif (value := ctx.next_arg) is None:
                raise TooFewOptionValues(f"Option {key!r} requires a value.")
            self._store(option, args, value, key)
            break

    def finalize(self, args: dict[str, Any]) -> None:
        for option in self.options:
            if id(option) in self.occurred:
                continue
            if option.required:
                raise MissingOption(f"Missing option {option.format_decls()}.")
            with _raise_invalid(InvalidOptionValue, lambda: f"option {option.format_decls()}"):
                option.store_default(args)


class Parser:
    """The parser of a leaf command: options anywhere, positionals in order."""

    def __init__(self, arguments: Sequence[Argument], options: Sequence[Option]) -> None:
        self.arguments = arguments
        self.options = options

    def parse_args(self, args: dict[str, Any], argv: list[str]) -> Context:
        ctx = Context(args, argv)
        argument_parser = ArgumentParser(self.arguments)
        option_parser = OptionParser(self.options)

        positional_only = False
        while (arg := ctx.next_arg) is not None:
            if positional_only:
                argument_parser.parse_argument(args, arg)
            elif is_separator(arg):
                positional_only = True
            elif is_long_option(arg):
                option_parser.parse_long_option(ctx, args, arg)
            elif is_short_option(arg):
                option_parser.parse_short_option(ctx, args, arg)
            else:
                argument_parser.parse_argument(args, arg)

        option_parser.finalize(args)
        argument_parser.finalize(args)
        return ctx


class TreeParser:
    """The parser of a command tree: options up to the first positional, which
    names the subcommand; the rest of ``argv`` belongs to the subcommand."""

    def __init__(self, options: Sequence[Option]) -> None:
        self.options = options

    def parse_args(self, args: dict[str, Any], argv: list[str]) -> Context:
        ctx = Context(args, argv)
        option_parser = OptionParser(self.options)

        while (arg := ctx.next_arg) is not None:
            if is_separator(arg):
                if (name := ctx.next_arg) is not None:
                    args[DEST_COMMAND_NAME] = name
                break
            if is_long_option(arg):
                option_parser.parse_long_option(ctx, args, arg)
            elif is_short_option(arg):
                option_parser.parse_short_option(ctx, args, arg)
            else:
                args[DEST_COMMAND_NAME] = arg
                break

        option_parser.finalize(args)
        return ctx
