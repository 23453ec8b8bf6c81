from .arguments import (
    Argument,
    CountOption,
    FlagOption,
    HelpOption,
    Option,
    SignalOption,
    VersionOption,
    is_long_option,
    is_separator,
    is_short_option,
)
from .commands import Command, CommandTree
from .decorators import (
    argument,
    command,
    command_tree,
    count_option,
    flag_option,
    help_option,
    option,
    version_option,
)
from .reports import OutputFormat, Report, Settings
from .types import (
    Choice,
    ElementList,
    EnumValue,
    EquivalenceType,
    Int,
    IntRange,
    MorphismFile,
    PinMap,
    Str,
    StructureDirectory,
    StructureFile,
    Type,
    VocabularyType,
    resolve_type,
)

__all__ = [
    # arguments
    "Argument",
    "Option",
    "FlagOption",
    "CountOption",
    "SignalOption",
    "HelpOption",
    "VersionOption",
    "is_separator",
    "is_long_option",
    "is_short_option",
    # commands
    "Command",
    "CommandTree",
    # decorators
    "argument",
    "option",
    "flag_option",
    "count_option",
    "help_option",
    "version_option",
    "command",
    "command_tree",
    # reports
    "OutputFormat",
    "Report",
    "Settings",
    # types
    "Type",
    "Str",
    "Int",
    "IntRange",
    "Choice",
    "EnumValue",
    "ElementList",
    "PinMap",
    "StructureFile",
    "MorphismFile",
    "StructureDirectory",
    "VocabularyType",
    "EquivalenceType",
    "resolve_type",
]
