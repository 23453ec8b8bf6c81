"""Converters from command-line strings to fmtkit values."""

from __future__ import annotations

import enum
import operator
import os
import pathlib
from contextlib import suppress
from typing import Any, Sequence

from typing_extensions import Never

from ..exceptions import DefinitionError, FMTKitException, TypeConversionError
from ..fixtures import resolve_structure
from ..formats import loads_structure, read_morphism
from ..locality import Equivalence
from ..structures import Structure, Vocabulary


class Type:
    """The base class for all fmtkit type converters.

    This class also represents *any* type which does not apply type conversion.
    """

    def __call__(self, value: Any) -> Any:
        """Convert to expected value."""

        if isinstance(value, str):
            return self.convert_str(value)
        return self.convert(value)

    def convert(self, value: Any) -> Any:
        """Convert non-string to expected value."""

        return value

    def convert_str(self, value: str) -> Any:
        """Convert string to expected value."""

        return value

    def safe_convert(self, value: Any) -> Any:
        """Convert a default or constant value without side effects."""

        return self(value)

    def format(self, value: Any) -> str:
        return str(value)

    @property
    def metavar(self) -> str:
        """The metavar suitable for this type. Empty string means unavailable."""

        return ""


class Str(Type):
    """Target type: :class:`str`."""

    def convert(self, value: Any) -> Any:
        raise TypeConversionError(f"{value!r} is not a valid string.")


class Int(Type):
    """Target type: :class:`int`."""

    def convert(self, value: Any) -> Any:
        if isinstance(value, int) and not isinstance(value, bool):
            return value
        raise TypeConversionError(f"{value!r} is not a valid integer.")

    def convert_str(self, value: str) -> Any:
        with suppress(ValueError):
            return int(value)
        raise TypeConversionError(f"{value!r} is not a valid integer.")

    @property
    def metavar(self) -> str:
        return "INTEGER"


class IntRange(Int):
    """Target type: :class:`int` within ``[minval, maxval]``.

    Parameters:
        minval (int | None, default=None):
            The minimum value. ``None`` means negative infinity.
        maxval (int | None, default=None):
            The maximum value. ``None`` means infinity.
    """

    def __init__(self, minval: int | None = None, maxval: int | None = None) -> None:
        if minval is not None and maxval is not None and minval > maxval:
            raise DefinitionError(f"Require minval <= maxval, but {minval!r} > {maxval!r}.")
        self.minval = minval
        self.maxval = maxval

    def convert(self, value: Any) -> Any:
        return self._check(super().convert(value))

    def convert_str(self, value: str) -> Any:
        return self._check(super().convert_str(value))

    def _check(self, value: int) -> int:
        for bound, outside in ((self.minval, operator.lt), (self.maxval, operator.gt)):
            if bound is not None and outside(value, bound):
                raise TypeConversionError(f"{value!r} is not in range {self._format_range()}.")
        return value

    def _format_range(self) -> str:
        lb = "(" if self.minval is None else "["
        rb = ")" if self.maxval is None else "]"
        lv = self.minval if self.minval is not None else "-inf"
        rv = self.maxval if self.maxval is not None else "inf"
        return f"{lb}{lv}, {rv}{rb}"

    @property
    def metavar(self) -> str:
        return "INTEGER"


class Choice(Type):
    """Target type: one of ``choices``.

    Parameters:
        choices (Sequence[str]):
            The allowed values.
    """

    def __init__(self, choices: Sequence[str]) -> None:
        if not choices:
            raise DefinitionError("No choice defined.")
        self.choices = list(choices)

    def convert(self, value: Any) -> Any:
        return self._error(value)

    def convert_str(self, value: str) -> Any:
        if value in self.choices:
            return value
        return self._error(value)

    def _error(self, value: Any) -> Never:
        choices_str = ", ".join(map(repr, self.choices))
        raise TypeConversionError(f"{value!r} is not one of {choices_str}.")

    @property
    def metavar(self) -> str:
        return "[" + "|".join(self.choices) + "]"


class EnumValue(Type):
    """Target type: the member of ``enum_type`` whose value is given.

    Parameters:
        enum_type (type[enum.Enum]):
            The enumeration type; members must have string values.
    """

    def __init__(self, enum_type: type[enum.Enum]) -> None:
        if len(enum_type) == 0:
            raise DefinitionError("No enumeration member defined.")
        self.enum_type = enum_type

    def convert(self, value: Any) -> Any:
        if isinstance(value, self.enum_type):
            return value
        return self._error(value)

    def convert_str(self, value: str) -> Any:
        for member in self.enum_type:
            if member.value == value:
                return member
        return self._error(value)

    def _error(self, value: Any) -> Never:
        values = ", ".join(repr(m.value) for m in self.enum_type)
        raise TypeConversionError(f"{value!r} is not one of {values}.")

    def format(self, value: Any) -> str:
        assert isinstance(value, self.enum_type)
        return str(value.value)

    @property
    def metavar(self) -> str:
        return "[" + "|".join(str(m.value) for m in self.enum_type) + "]"


class ElementList(Type):
    """Target type: ``tuple[str, ...]`` from ``a,b,c``; the empty string is the empty tuple."""

    def convert(self, value: Any) -> Any:
        if isinstance(value, (list, tuple)) and all(isinstance(v, str) for v in value):
            return tuple(value)
        raise TypeConversionError(f"{value!r} is not a valid element list.")

    def convert_str(self, value: str) -> Any:
        if not value.strip():
            return ()
        elements = tuple(part.strip() for part in value.split(","))
        if not all(elements):
            raise TypeConversionError(f"{value!r} contains an empty element name.")
        return elements

    @property
    def metavar(self) -> str:
        return "A,B,..."


class PinMap(Type):
    """Target type: ``dict[str, str]`` from ``a=x,b=y``."""

    def convert(self, value: Any) -> Any:
        if isinstance(value, dict):
            return dict(value)
        raise TypeConversionError(f"{value!r} is not a valid element map.")

    def convert_str(self, value: str) -> Any:
        pins: dict[str, str] = {}
        for part in filter(None, (p.strip() for p in value.split(","))):
            source, sep, target = part.partition("=")
            if not sep or not source.strip() or not target.strip():
                raise TypeConversionError(f"{part!r} is not of the form 'a=b'.")
            if pins.setdefault(source.strip(), target.strip()) != target.strip():
                raise TypeConversionError(f"{source.strip()!r} is mapped twice.")
        return pins

    @property
    def metavar(self) -> str:
        return "A=B,..."


def _reraise(value: str, exc: FMTKitException | OSError) -> Never:
    reason = exc.message if isinstance(exc, FMTKitException) else f"{exc.strerror}."
    raise TypeConversionError(f"Can not load {value!r}. {reason}") from exc


class StructureFile(Type):
    """Target type: :class:`~fmtkit.structures.Structure` read from a file or
    named fixture such as ``fixtures/K2``."""

    def convert(self, value: Any) -> Any:
        if isinstance(value, Structure):
            return value
        if isinstance(value, pathlib.Path):
            return self.convert_str(os.fspath(value))
        raise TypeConversionError(f"{value!r} is not a valid structure.")

    def convert_str(self, value: str) -> Any:
        try:
            return resolve_structure(value)
        except (FMTKitException, OSError) as e:
            _reraise(value, e)

    @property
    def metavar(self) -> str:
        return "STRUCTURE"


class MorphismFile(Type):
    """Target type: :class:`~fmtkit.structures.Morphism` read from a morphism document."""

    def convert_str(self, value: str) -> Any:
        try:
            return read_morphism(value)
        except (FMTKitException, OSError) as e:
            _reraise(value, e)

    @property
    def metavar(self) -> str:
        return "MORPHISM"


class StructureDirectory(Type):
    """Target type: ``tuple[labels, structures]`` for every ``*.json`` file of a
    directory, in file-name order."""

    def convert_str(self, value: str) -> Any:
        directory = pathlib.Path(value)
        if not directory.is_dir():
            raise TypeConversionError(f"{value!r} is not a directory.")
        labels: list[str] = []
        structures: list[Structure] = []
        for path in sorted(directory.glob("*.json")):
            try:
                structures.append(loads_structure(path.read_text(encoding="utf-8")))
            except (FMTKitException, OSError) as e:
                _reraise(str(path), e)
            labels.append(path.stem)
        return tuple(labels), tuple(structures)

    @property
    def metavar(self) -> str:
        return "DIRECTORY"


class VocabularyType(Type):
    """Target type: :class:`~fmtkit.structures.Vocabulary` from ``E/2,R/3;c1,c2``."""

    def convert(self, value: Any) -> Any:
        if isinstance(value, Vocabulary):
            return value
        raise TypeConversionError(f"{value!r} is not a valid vocabulary.")

    def convert_str(self, value: str) -> Any:
        relation_part, _, constant_part = value.partition(";")
        relations: dict[str, int] = {}
        for item in filter(None, (p.strip() for p in relation_part.split(","))):
            name, sep, arity = item.partition("/")
            if not sep or not name or not arity.isdigit():
                raise TypeConversionError(f"{item!r} is not of the form 'R/arity'.")
            if name in relations:
                raise TypeConversionError(f"Relation {name!r} is declared twice.")
            relations[name] = int(arity)
        constants = [c.strip() for c in constant_part.split(",") if c.strip()]
        try:
            return Vocabulary.create(relations, constants)
        except FMTKitException as e:
            raise TypeConversionError(e.message) from e

    @property
    def metavar(self) -> str:
        return "R/N,...;C,..."


class EquivalenceType(Type):
    """Target type: :class:`~fmtkit.locality.Equivalence` from ``iso``, ``ef:L`` or ``khom:L``."""

    def convert(self, value: Any) -> Any:
        if isinstance(value, Equivalence):
            return value
        raise TypeConversionError(f"{value!r} is not a valid equivalence.")

    def convert_str(self, value: str) -> Any:
        try:
            return Equivalence.parse(value)
        except FMTKitException as e:
            raise TypeConversionError(e.message) from e

    @property
    def metavar(self) -> str:
        return "iso|ef:L|khom:L"


def resolve_type(type: Type | type) -> Type:
    """Convert :class:`str` and :class:`int` to their converters. Return as is
    if ``type`` is already an instance of :class:`Type`."""

    if isinstance(type, Type):
        return type
    if type is str:
        return Str()
    if type is int:
        return Int()
    raise DefinitionError(f"{type!r} is not a valid type.")
