from __future__ import annotations

import itertools

import pytest

from fmtkit.constants import SWEEP_ENUMERATION_CAP
from fmtkit.enumeration import enumerate_structures, raw_count
from fmtkit.exceptions import CapExceeded
from fmtkit.fixtures import GRAPH_VOCABULARY
from fmtkit.structures import Structure, Vocabulary, canonical_form


def test_raw_count() -> None:
    assert raw_count(GRAPH_VOCABULARY, 0) == 1
    assert raw_count(GRAPH_VOCABULARY, 2) == 16
    assert raw_count(Vocabulary.create({"E": 2}, ["c1"]), 0) == 0
    assert raw_count(Vocabulary.create({"E": 2}, ["c1"]), 2) == 32


@pytest.mark.parametrize(("max_size", "expected"), [(0, 1), (1, 3), (2, 13), (3, 117)])
def test_directed_graphs(max_size: int, expected: int) -> None:
    assert len(enumerate_structures(GRAPH_VOCABULARY, max_size)) == expected


def test_unary_and_pointed() -> None:
    # A unary relation on n elements: n + 1 classes per size.
    assert len(enumerate_structures(Vocabulary.create({"P": 1}), 3)) == 1 + 2 + 3 + 4
    # One constant and no relations: one class per positive size.
    assert len(enumerate_structures(Vocabulary.create({}, ["c1"]), 3)) == 3


def test_order_and_canonical() -> None:
    found = enumerate_structures(GRAPH_VOCABULARY, 2, min_size=1)
    assert [len(s) for s in found] == sorted(len(s) for s in found)
    assert all(canonical_form(s) == s for s in found)


def test_cap() -> None:
    with pytest.raises(CapExceeded):
        enumerate_structures(GRAPH_VOCABULARY, 3, cap=100)


def _labeled_classes(vocabulary: Vocabulary, max_size: int) -> set[Structure]:
    classes = set()
    for size in range(max_size + 1):
        if size == 0 and vocabulary.constants:
            continue
        universe = [str(i) for i in range(size)]
        spaces = [list(itertools.product(universe, repeat=arity)) for _, arity in vocabulary.relations]
        for masks in itertools.product(*(range(2 ** len(space)) for space in spaces)):
            relations = {
                name: [t for i, t in enumerate(space) if mask >> i & 1]
                for name, space, mask in zip(vocabulary.relation_names, spaces, masks)
            }
            for values in itertools.product(universe, repeat=len(vocabulary.constants)):
                structure = Structure.create(vocabulary, universe, relations, dict(zip(vocabulary.constants, values)))
                classes.add(canonical_form(structure))
    return classes


@pytest.mark.parametrize(
    ("vocabulary", "max_size"),
    [
        (GRAPH_VOCABULARY, 3),
        (Vocabulary.create({"E": 2}, ["c1"]), 2),
        (Vocabulary.create({"P": 1, "R": 3}), 2),
        (Vocabulary.create({"P": 1}, ["c1", "c2"]), 3),
    ],
)
def test_matches_labeled_enumeration(vocabulary: Vocabulary, max_size: int) -> None:
    found = enumerate_structures(vocabulary, max_size)
    assert len(set(found)) == len(found)
    assert set(found) == _labeled_classes(vocabulary, max_size)


def test_min_size() -> None:
    found = enumerate_structures(GRAPH_VOCABULARY, 3, min_size=3)
    assert len(found) == 117 - 13
    assert {len(s) for s in found} == {3}


def test_five_elements_fit_the_sweep_cap() -> None:
    # 1 + 2 + 16 + 320 + 104 * 2**7 + 3044 * 2**9 candidates.
    with pytest.raises(CapExceeded):
        enumerate_structures(GRAPH_VOCABULARY, 5, cap=1_571_000)
    assert len(enumerate_structures(GRAPH_VOCABULARY, 4, cap=SWEEP_ENUMERATION_CAP)) == 3161
