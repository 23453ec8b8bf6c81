from __future__ import annotations

import json
from pathlib import Path

import pytest

from fmtkit.constants import FIXTURES_ENV
from fmtkit.exceptions import InputError, MorphismError, StructureError
from fmtkit.fixtures import FIXTURE_NAMES, complete, cycle, load_fixture, resolve_structure
from fmtkit.formats import (
    canonical_key,
    dumps,
    dumps_structure,
    loads_morphism,
    loads_structure,
    morphism_to_document,
    read_morphism,
    read_structure,
    structure_to_document,
    write_structure,
)
from fmtkit.structures import Morphism, Structure


def test_dumps_is_stable(p3: Structure) -> None:
    text = dumps_structure(p3)
    assert text.endswith("}\n")
    assert text == dumps(json.loads(text))
    assert loads_structure(text) == p3


def test_structure_document(k2: Structure) -> None:
    assert structure_to_document(k2) == {
        "vocab": {"relations": {"E": 2}, "constants": []},
        "universe": ["x", "y"],
        "relations": {"E": [["x", "y"], ["y", "x"]]},
        "constants": {},
    }


@pytest.mark.parametrize(
    "text",
    [
        "{",
        "[]",
        '{"universe": []}',
        '{"vocab": {"relations": {"E": 2}}, "universe": "ab"}',
        '{"vocab": {"relations": {"E": 2}}, "universe": ["a", "a"]}',
        '{"vocab": {"relations": {"E": 2}}, "universe": ["a"], "relations": {"E": [["a", "b"]]}}',
        '{"vocab": {"relations": {"E": 2}}, "universe": ["a", "b"], "relations": {"E": ["ab"]}}',
        '{"vocab": {"relations": {"E": 2}}, "universe": ["a", "b"], "relations": {"E": "ab"}}',
    ],
)
def test_malformed_structures(text: str) -> None:
    with pytest.raises(InputError):
        loads_structure(text)


def test_missing_universe_is_structure_error() -> None:
    with pytest.raises(StructureError):
        loads_structure('{"vocab": {"relations": {}}}')


def test_files(tmp_path: Path, k2: Structure, p3: Structure) -> None:
    write_structure(p3, tmp_path / "p3.json")
    assert read_structure(tmp_path / "p3.json") == p3
    assert resolve_structure(str(tmp_path / "p3.json")) == p3

    h = Morphism.create(p3, k2, {"a": "x", "b": "y", "c": "x"})
    (tmp_path / "h.json").write_text(dumps(morphism_to_document(h)), encoding="utf-8")
    assert read_morphism(tmp_path / "h.json") == h

    document = morphism_to_document(h)
    document["map"]["c"] = "y"
    with pytest.raises(MorphismError):
        loads_morphism(dumps(document))


def test_fixtures() -> None:
    for name in FIXTURE_NAMES:
        assert load_fixture(name) == load_fixture(f"fixtures/{name}")
    assert canonical_key(load_fixture("C4")) == canonical_key(cycle(4))
    assert canonical_key(load_fixture("K3")) == canonical_key(complete(3))
    assert len(load_fixture("PT1").relation("E")) == 0
    with pytest.raises(InputError):
        load_fixture("K9")


def test_fixture_override(tmp_path: Path, monkeypatch: pytest.MonkeyPatch) -> None:
    write_structure(complete(4), tmp_path / "K2.json")
    monkeypatch.setenv(FIXTURES_ENV, str(tmp_path))
    assert len(load_fixture("K2")) == 4
    assert len(load_fixture("P3")) == 3
    monkeypatch.delenv(FIXTURES_ENV)
    assert len(load_fixture("K2")) == 2


def test_canonical_key(c4: Structure, p3: Structure) -> None:
    assert canonical_key(c4) == canonical_key(cycle(4, prefix="w"))
    assert canonical_key(c4) != canonical_key(p3)
