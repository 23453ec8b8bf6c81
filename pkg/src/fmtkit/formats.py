"""JSON documents for structures and morphisms.

A structure document looks like::

    {
      "vocab": {"relations": {"E": 2}, "constants": ["c1"]},
      "universe": ["a", "b"],
      "relations": {"E": [["a", "b"]]},
      "constants": {"c1": "a"}
    }

Serialization sorts every collection, so equal structures produce equal text.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any, Mapping, Union

from .exceptions import InputError, StructureError
from .structures import Morphism, Structure, Vocabulary, canonical_form, validate

PathLike = Union[str, Path]


def vocabulary_to_document(vocabulary: Vocabulary) -> dict[str, Any]:
    return {"relations": dict(vocabulary.relations), "constants": list(vocabulary.constants)}


def document_to_vocabulary(document: Mapping[str, Any]) -> Vocabulary:
    if not isinstance(document, Mapping):
        raise InputError("Vocabulary must be an object.")
    relations = document.get("relations", {})
    constants = document.get("constants", [])
    if not isinstance(relations, Mapping) or not isinstance(constants, list):
        raise InputError("Vocabulary needs a 'relations' object and a 'constants' list.")
    return Vocabulary.create(relations, constants)


def structure_to_document(structure: Structure) -> dict[str, Any]:
    return {
        "vocab": vocabulary_to_document(structure.vocabulary),
        "universe": list(structure.universe),
        "relations": {name: [list(t) for t in sorted(ts)] for name, ts in structure.relations.items()},
        "constants": dict(sorted(structure.constants.items())),
    }


def document_to_structure(document: Mapping[str, Any]) -> Structure:
    """Build and validate a structure from its document."""

    if not isinstance(document, Mapping):
        raise StructureError("Structure document must be an object.")
    for key in ("vocab", "universe"):
        if key not in document:
            raise StructureError(f"Structure document is missing {key!r}.")
    vocabulary = document_to_vocabulary(document["vocab"])
    universe = document["universe"]
    if not isinstance(universe, list):
        raise StructureError("'universe' must be a list.")
    if len(set(map(str, universe))) != len(universe):
        raise StructureError("'universe' lists an element twice.")
    relations = document.get("relations", {})
    constants = document.get("constants", {})
    if not isinstance(relations, Mapping) or not isinstance(constants, Mapping):
        raise StructureError("'relations' and 'constants' must be objects.")
    for name, entries in relations.items():
        if not isinstance(entries, list) or not all(isinstance(t, list) for t in entries):
            raise StructureError(f"Relation {name!r} must be a list of element lists.")
    structure = Structure(vocabulary, universe, relations, constants)
    validate(structure)
    return structure


def morphism_to_document(morphism: Morphism) -> dict[str, Any]:
    return {
        "source": structure_to_document(morphism.source),
        "target": structure_to_document(morphism.target),
        "map": dict(sorted(morphism.items())),
    }


def document_to_morphism(document: Mapping[str, Any]) -> Morphism:
    """Build a verified homomorphism from its document."""

    if not isinstance(document, Mapping) or not {"source", "target", "map"}.issubset(document):
        raise InputError("Morphism document needs 'source', 'target' and 'map'.")
    source = document_to_structure(document["source"])
    target = document_to_structure(document["target"])
    mapping = {str(a): str(b) for a, b in document["map"].items()}
    return Morphism.create(source, target, mapping)


def dumps(document: Any) -> str:
    return json.dumps(document, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def _loads(text: str) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"Malformed JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}.") from None


def dumps_structure(structure: Structure) -> str:
    return dumps(structure_to_document(structure))


def loads_structure(text: str) -> Structure:
    return document_to_structure(_loads(text))


def dumps_morphism(morphism: Morphism) -> str:
    return dumps(morphism_to_document(morphism))


def loads_morphism(text: str) -> Morphism:
    return document_to_morphism(_loads(text))


def read_structure(path: PathLike) -> Structure:
    return loads_structure(Path(path).read_text(encoding="utf-8"))


def write_structure(structure: Structure, path: PathLike) -> None:
    Path(path).write_text(dumps_structure(structure), encoding="utf-8")


def read_morphism(path: PathLike) -> Morphism:
    return loads_morphism(Path(path).read_text(encoding="utf-8"))


def canonical_key(structure: Structure) -> str:
    """A string equal for two structures iff they are isomorphic."""

    return dumps_structure(canonical_form(structure))
