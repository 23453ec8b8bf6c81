"""The result record of every command and the settings it runs under."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Any, Mapping

from ..constants import EXIT_FALSE, EXIT_OK
from ..formats import dumps
from ..homsearch import SearchBudget


class OutputFormat(enum.Enum):
    TEXT = "text"
    MACHINE = "machine"


@dataclass(frozen=True)
class Settings:
    """Options of the root command forwarded to every subcommand.

    Parameters:
        format (OutputFormat, default=OutputFormat.TEXT):
            How reports are printed.
        budget (SearchBudget, default=SearchBudget()):
            The limits of every search.
        verbose (int, default=0):
            The number of ``-v`` flags.
    """

    format: OutputFormat = OutputFormat.TEXT
    budget: SearchBudget = field(default_factory=SearchBudget)
    verbose: int = 0

    def bounds(self, **extra: Any) -> dict[str, Any]:
        """The budgets in force, plus command-specific caps."""

        return {"node_limit": self.budget.node_limit, "time_limit_ms": self.budget.time_limit, **extra}


@dataclass(frozen=True)
class Report:
    """The outcome of one command.

    ``verdict`` is a boolean for decision commands and a JSON value (a number,
    a string, a structure document) for computations. Only boolean verdicts
    affect the exit code.
    """

    command: str
    verdict: Any
    witness: Any = None
    bounds: Mapping[str, Any] = field(default_factory=dict)
    timing_ms: float = 0.0

    def to_document(self, *, timing: bool = True) -> dict[str, Any]:
        document = {
            "command": self.command,
            "verdict": self.verdict,
            "witness": self.witness,
            "bounds": dict(self.bounds),
        }
        if timing:
            document["timing_ms"] = round(self.timing_ms, 3)
        return document

    def dumps(self, *, timing: bool = True) -> str:
        return dumps(self.to_document(timing=timing))

    @property
    def exit_code(self) -> int:
        return EXIT_FALSE if self.verdict is False else EXIT_OK
