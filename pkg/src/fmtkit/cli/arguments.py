from __future__ import annotations

from keyword import iskeyword
from typing import Any, Sequence, cast

from ..constants import LONG_PREFIX, LONG_PREFIX_LEN, SEPARATOR, SHORT_PREFIX, SHORT_PREFIX_LEN
from ..exceptions import DefinitionError, HelpSignal, TypeConversionError, VersionSignal
from .types import Int, Str, Type, resolve_type


def _check_dest(dest: str) -> str:
    dest = dest.replace("-", "_")
    if not dest.isidentifier():
        raise DefinitionError(f"{dest!r} is not a valid identifier.")
    if iskeyword(dest):
        raise DefinitionError(f"{dest!r} is a keyword.")
    return dest


def _norm_metavar(metavar: str) -> str:
    return metavar.replace("-", "_").upper()


def _parse_decls(decls: Sequence[str]) -> tuple[list[str], list[str]]:
    if not decls:
        raise DefinitionError("No option defined.")

    long_options: list[str] = []
    short_options: list[str] = []
    for decl in decls:
        if decl.startswith(LONG_PREFIX):
            if len(decl) == LONG_PREFIX_LEN:
                raise DefinitionError(f"{decl!r} is not a valid long option.")
            long_options.append(decl)
        elif decl.startswith(SHORT_PREFIX):
            if len(decl) != SHORT_PREFIX_LEN + 1:
                raise DefinitionError(f"{decl!r} is not a valid short option.")
            short_options.append(decl)
        else:
            raise DefinitionError(f"Option must start with {LONG_PREFIX!r} or {SHORT_PREFIX!r}, got {decl!r}.")
        if "=" in decl:
            raise DefinitionError(f"Option {decl!r} contains '='.")
    return long_options, short_options


class Argument:
    """A positional argument.

    Parameters:
        decl (str):
            The name of this argument, also its destination.
        nargs (int, default=1):
            ``1`` for a single value, ``-1`` to collect the remaining values.
        required (bool, default=True):
            Whether this argument must be given.
        type (Type | type | None, default=None):
            The type converter. If ``None``, use :class:`Str`.
        default (Any, default=None):
            The value used if the argument is omitted.
        metavar (str | None, default=None):
            The value name used in usage. If ``None``, infer from ``decl``.
        help (str, default=''):
            The help information.
    """

    def __init__(
        self,
        decl: str,
        *,
        nargs: int = 1,
        required: bool = True,
        type: Type | type | None = None,
        default: Any = None,
        metavar: str | None = None,
        help: str = "",
    ) -> None:
        if not decl:
            raise DefinitionError("Argument must be non-empty.")
        self.argument = decl
        self.dest = _check_dest(decl)
        self.nargs = nargs
        self.required = required
        self.type = resolve_type(type or Str())
        self.default = default
        self.metavar = metavar
        self.help = help

    def store(self, args: dict[str, Any], value: str) -> None:
        result = self.type.convert_str(value)
        if self.nargs == 1:
            args[self.dest] = result
        else:
            cast(list, args.setdefault(self.dest, [])).append(result)

    def store_default(self, args: dict[str, Any]) -> None:
        if self.dest in args:
            return
        if self.nargs == 1:
            args[self.dest] = self.type(self.default) if self.default is not None else None
        else:
            args[self.dest] = []

    def format_decl(self) -> str:
        return repr(self.argument)

    def resolve_metavar(self) -> str:
        return self.metavar if self.metavar is not None else _norm_metavar(self.argument)

    @property
    def nargs(self) -> int:
        return self._nargs

    @nargs.setter
    def nargs(self, value: int) -> None:
        if value not in (1, -1):
            raise DefinitionError(f"Require nargs == 1 or nargs == -1, got {value!r}.")
        self._nargs = value

    @property
    def default(self) -> Any:
        return self._default

    @default.setter
    def default(self, value: Any) -> None:
        if value is not None:
            if self.nargs != 1:
                raise DefinitionError("For nargs == -1, the default value must be None.")
            try:
                value = self.type.safe_convert(value)
            except TypeConversionError as e:
                raise DefinitionError(f"Invalid default value for argument {self.format_decl()}. {e}") from e
        self._default = value


class Option:
    """An option taking one value.

    Parameters:
        decls (tuple[str, ...]):
            The declarations, such as ``"-k"`` and ``"--rounds"``.
        dest (str | None, default=None):
            The destination. If ``None``, infer from the first long option, or
            the short option. If empty string, disable the store action.
        required (bool, default=False):
            Whether this option must be given.
        type (Type | type | None, default=None):
            The type converter. If ``None``, use :class:`Str`.
        default (Any, default=None):
            The value used if the option is omitted.
        show_default (bool, default=False):
            If ``True``, show the default value in help information.
        metavar (str | None, default=None):
            The value name used in help. If ``None``, infer from the type or
            the declarations.
        help (str, default=''):
            The help information.
    """

    allow_multi = False

    def __init__(
        self,
        *decls: str,
        dest: str | None = None,
        required: bool = False,
        type: Type | type | None = None,
        default: Any = None,
        show_default: bool = False,
        metavar: str | None = None,
        help: str = "",
    ) -> None:
        self.long_options, self.short_options = _parse_decls(decls)
        if dest is not None:
            self.dest = _check_dest(dest) if dest else ""
        elif self.long_options:
            self.dest = _check_dest(self.long_options[0][LONG_PREFIX_LEN:])
        else:
            self.dest = _check_dest(self.short_options[0][SHORT_PREFIX_LEN:])
        self.required = required
        self.type = resolve_type(type or Str())
        self.default = default
        self.show_default = show_default
        self.metavar = metavar
        self.help = help

    def store(self, args: dict[str, Any], value: str, *, key: str) -> None:
        """Store value to destination.

        Availability: ``nargs == 1``.
        """

        if self.dest:
            args[self.dest] = self.type.convert_str(value)

    def store_const(self, args: dict[str, Any], *, key: str) -> None:
        """Availability: ``nargs == 0``."""

        raise NotImplementedError

    def store_default(self, args: dict[str, Any]) -> None:
        if not self.dest or self.dest in args:
            return
        args[self.dest] = self.type(self.default) if self.default is not None else None

    def format_decls(self) -> str:
        return " / ".join(map(repr, self.short_options + self.long_options))

    def format_help(self) -> str:
        if self.show_default and self.default is not None:
            return f"{self.help} [default: {self.type.format(self.default)}]".lstrip()
        return self.help

    def resolve_metavar(self) -> str:
        if self.metavar is not None:
            return self.metavar
        if metavar := self.type.metavar:
            return metavar
        if self.long_options:
            return _norm_metavar(self.long_options[0][LONG_PREFIX_LEN:])
        return _norm_metavar(self.short_options[0][SHORT_PREFIX_LEN:])

    @property
    def nargs(self) -> int:
        return 1

    @property
    def default(self) -> Any:
        return self._default

    @default.setter
    def default(self, value: Any) -> None:
        if value is not None:
            try:
                value = self.type.safe_convert(value)
            except TypeConversionError as e:
                raise DefinitionError(f"Invalid default value for option {self.format_decls()}. {e}") from e
        self._default = value


class FlagOption(Option):
    """An option without value that stores ``const`` when given.

    Parameters:
        decls (tuple[str, ...]):
            The declarations.
        dest (str | None, default=None):
            The destination, inferred as for :class:`Option`.
        const (Any, default=True):
            The value stored if the option occurred.
        default (Any, default=False):
            The value stored if the option is omitted.
        help (str, default=''):
            The help information.
    """

    def __init__(
        self, *decls: str, dest: str | None = None, const: Any = True, default: Any = False, help: str = ""
    ) -> None:
        super().__init__(*decls, dest=dest, type=Type(), default=default, metavar="", help=help)
        self.const = const

    def store(self, args: dict[str, Any], value: str, *, key: str) -> None:
        raise NotImplementedError

    def store_const(self, args: dict[str, Any], *, key: str) -> None:
        if self.dest:
            args[self.dest] = self.const

    @property
    def nargs(self) -> int:
        return 0


class CountOption(Option):
    """An option without value that counts its occurrences, as in ``-vv``."""

    allow_multi = True

    def __init__(self, *decls: str, dest: str | None = None, default: int = 0, help: str = "") -> None:
        super().__init__(*decls, dest=dest, type=Int(), default=default, metavar="", help=help)

    def store(self, args: dict[str, Any], value: str, *, key: str) -> None:
        raise NotImplementedError

    def store_const(self, args: dict[str, Any], *, key: str) -> None:
        if self.dest:
            args[self.dest] = args.get(self.dest, 0) + 1

    @property
    def nargs(self) -> int:
        return 0


class SignalOption(Option):
    """An option that interrupts parsing by raising a signal."""

    def __init__(self, *decls: str, help: str = "") -> None:
        super().__init__(*decls, dest="", type=Type(), metavar="", help=help)

    def store(self, args: dict[str, Any], value: str, *, key: str) -> None:
        raise NotImplementedError

    def store_default(self, args: dict[str, Any]) -> None:
        pass

    @property
    def nargs(self) -> int:
        return 0


class HelpOption(SignalOption):
    def __init__(self, *decls: str, help: str = "Show help information and exit.") -> None:
        super().__init__(*decls, help=help)

    def store_const(self, args: dict[str, Any], *, key: str) -> None:
        raise HelpSignal


class VersionOption(SignalOption):
    def __init__(self, *decls: str, help: str = "Show version information and exit.") -> None:
        super().__init__(*decls, help=help)

    def store_const(self, args: dict[str, Any], *, key: str) -> None:
        raise VersionSignal


def is_separator(arg: str) -> bool:
    return arg == SEPARATOR


def is_long_option(arg: str) -> bool:
    return arg.startswith(LONG_PREFIX) and len(arg) > LONG_PREFIX_LEN


def is_short_option(arg: str) -> bool:
    """Determine whether ``arg`` is a short option; a lone ``-`` is positional."""

    return arg.startswith(SHORT_PREFIX) and len(arg) > SHORT_PREFIX_LEN
