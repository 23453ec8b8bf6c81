from __future__ import annotations

from .constants import EXIT_INPUT, EXIT_LIMIT


class DefinitionError(ValueError):
    """Define a bad command, argument, option, type, etc."""


class ParserContextError(RuntimeError):
    """Parser context error."""


class TypeConversionError(TypeError):
    """Type conversion error."""


class FMTKitException(Exception):
    """The base class for all fmtkit exceptions."""

    exit_code = EXIT_INPUT

    def __init__(self, message: str) -> None:
        super().__init__(message)
        self.message = message

    def __str__(self) -> str:
        return self.message


class InputError(FMTKitException):
    """Malformed input."""


class StructureError(InputError):
    """A structure violates its invariants."""


class ArityError(StructureError):
    """A relation tuple has the wrong length."""


class DanglingElement(StructureError):
    """An element outside the universe is referenced."""


class ConstantError(StructureError):
    """A constant symbol is not interpreted."""


class VocabularyMismatch(InputError):
    """Two structures or a structure and a formula disagree on the vocabulary."""


class MorphismError(InputError):
    """Bad morphism or morphism configuration."""


class NotParallel(MorphismError):
    """Two morphisms do not share source and target."""


class NonCommutingSquare(MorphismError):
    """A lifting problem whose square does not commute."""


class EqualizerUndefined(MorphismError):
    """The agreement set misses a constant."""


class FormulaError(InputError):
    """Formula error."""


class FormulaSyntaxError(FormulaError):
    """Syntax error at a position of the formula text."""

    def __init__(self, message: str, position: int) -> None:
        super().__init__(f"{message} (at offset {position})")
        self.position = position


class UnknownSymbol(FormulaError):
    """A relation symbol missing from the vocabulary."""


class ArityMismatch(FormulaError):
    """An atom with the wrong number of arguments."""


class VariableShadowing(FormulaError):
    """A quantifier rebinds a variable of an enclosing scope."""


class UnboundVariable(FormulaError):
    """A free variable without an assigned element."""


class NotPrimitivePositive(FormulaError):
    """A construction that requires a primitive-positive sentence."""


class ArgumentError(InputError):
    """Argument error."""


class InvalidArgument(ArgumentError):
    """Invalid argument given."""


class TooFewArguments(ArgumentError):
    """Too few arguments given."""


class TooManyArguments(ArgumentError):
    """Too many arguments given."""


class OptionError(InputError):
    """Option error."""


class MissingOption(OptionError):
    """Missing option."""


class MultiOption(OptionError):
    """Multi option."""


class UnknownOption(OptionError):
    """Unknown option."""


class InvalidOptionValue(OptionError):
    """Invalid option value given."""


class TooFewOptionValues(OptionError):
    """Too few option values given."""


class TooManyOptionValues(OptionError):
    """Too many option values given."""


class CommandError(InputError):
    """Command error."""


class LimitError(FMTKitException):
    """A budget or cap stopped the computation."""

    exit_code = EXIT_LIMIT


class BudgetExceeded(LimitError):
    """A search ran out of nodes or time."""


class CapExceeded(LimitError):
    """An enumeration exceeds its configured cap."""


class FMTKitSignal(BaseException):
    """The base class for all fmtkit signals."""

    exit_code = 0


class HelpSignal(FMTKitSignal):
    """The signal for showing help information."""


class VersionSignal(FMTKitSignal):
    """The signal for showing version information."""
