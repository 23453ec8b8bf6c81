"""Bundled structures and small graph builders.

Fixtures are looked up in the directory named by ``FMT_FIXTURES`` when set,
otherwise in this package.
"""

from __future__ import annotations

import functools
import os
from importlib import resources
from pathlib import Path
from typing import Iterable, Sequence

from ..constants import FIXTURES_ENV
from ..exceptions import InputError
from ..formats import loads_structure
from ..structures import Structure, Vocabulary

GRAPH_VOCABULARY = Vocabulary((("E", 2),))

FIXTURE_NAMES = ("C4", "K2", "K3", "LOOP1", "P3", "PT1")


def fixtures_dir() -> Path | None:
    """The override directory from the environment, if any."""

    override = os.environ.get(FIXTURES_ENV)
    return Path(override) if override else None


def _read_fixture_text(name: str) -> str | None:
    directory = fixtures_dir()
    if directory is not None:
        path = directory / f"{name}.json"
        if path.is_file():
            return path.read_text(encoding="utf-8")
    resource = resources.files(__name__).joinpath(f"{name}.json")
    if resource.is_file():
        return resource.read_text(encoding="utf-8")
    return None


@functools.lru_cache(maxsize=None)
def _load_bundled(name: str, override: str | None) -> Structure:
    text = _read_fixture_text(name)
    if text is None:
        raise InputError(f"Unknown fixture {name!r}.")
    return loads_structure(text)


def load_fixture(name: str) -> Structure:
    """Load the fixture ``name`` (``"K2"`` or ``"fixtures/K2"``)."""

    if name.startswith("fixtures/"):
        name = name[len("fixtures/") :]
    if name.endswith(".json"):
        name = name[: -len(".json")]
    return _load_bundled(name, os.environ.get(FIXTURES_ENV))


def resolve_structure(value: str) -> Structure:
    """Read ``value`` as a structure file, falling back to a fixture name."""

    path = Path(value)
    if path.is_file():
        return loads_structure(path.read_text(encoding="utf-8"))
    return load_fixture(value)


def graph(edges: Iterable[Sequence[str]], vertices: Iterable[str] = ()) -> Structure:
    """A symmetric ``E`` structure with the given undirected edges."""

    universe = set(vertices)
    tuples: set[tuple[str, str]] = set()
    for a, b in edges:
        universe.update((a, b))
        tuples.update(((a, b), (b, a)))
    return Structure.create(GRAPH_VOCABULARY, universe, {"E": tuples})


def cycle(n: int, prefix: str = "v") -> Structure:
    names = [f"{prefix}{i}" for i in range(n)]
    return graph(((names[i], names[(i + 1) % n]) for i in range(n)), names)


def path(n: int, prefix: str = "v") -> Structure:
    names = [f"{prefix}{i}" for i in range(n)]
    return graph(((names[i], names[i + 1]) for i in range(n - 1)), names)


def complete(n: int, prefix: str = "v") -> Structure:
    names = [f"{prefix}{i}" for i in range(n)]
    return graph(((a, b) for i, a in enumerate(names) for b in names[i + 1 :]), names)
