from typing import Final

# Search limits.
NODE_LIMIT: Final = 10_000_000
TIME_LIMIT_MS: Final = 0
ENUMERATION_CAP: Final = 1_000_000
SWEEP_ENUMERATION_CAP: Final = 10_000_000

# Exact tree-depth is exponential in the vertex count.
TREE_DEPTH_VERTEX_BUDGET: Final = 20

# Canonical forms enumerate relabelings.
CANONICAL_SIZE_LIMIT: Final = 8

# Sweep and pp-test defaults.
SWEEP_MAX_SIZE: Final = 3
PP_SIZE_CAP: Final = 3
K_RANGE: Final = (1, 2)

# Element identifier of the one-element terminal structure.
TOP_ELEMENT: Final = "1"

# Prefix of the constant symbols added by expansions.
EXPANSION_PREFIX: Final = "c"

# Environment variable overriding the bundled fixtures directory.
FIXTURES_ENV: Final = "FMT_FIXTURES"

# Keywords of the formula grammar.
KEYWORDS: Final = frozenset({"exists", "forall", "true", "false"})

# CLI exit codes.
EXIT_OK: Final = 0
EXIT_FALSE: Final = 1
EXIT_LIMIT: Final = 2
EXIT_INPUT: Final = 3

# CLI option syntax.
SEPARATOR: Final = "--"
LONG_PREFIX: Final = "--"
SHORT_PREFIX: Final = "-"
LONG_PREFIX_LEN: Final = len(LONG_PREFIX)
SHORT_PREFIX_LEN: Final = len(SHORT_PREFIX)

# The special destination used by parser to store command name.
DEST_COMMAND_NAME: Final = "<command_name>"
