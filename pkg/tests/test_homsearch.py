from __future__ import annotations

import pytest
from hypothesis import given

from fmtkit.exceptions import BudgetExceeded, CapExceeded, DanglingElement, StructureError, VocabularyMismatch
from fmtkit.fixtures import cycle, path
from fmtkit.homsearch import (
    NotFound,
    SearchBudget,
    are_isomorphic,
    automorphisms,
    endomorphisms,
    find_all_homomorphisms,
    find_homomorphism,
    find_isomorphism,
    find_retraction,
    hom_equivalent,
    iter_homomorphisms,
    maps_to,
    require_complete,
)
from fmtkit.structures import Structure, Vocabulary, check_homomorphism, product

from .conftest import digraphs


def test_find_homomorphism(k2: Structure, k3: Structure, c4: Structure, p3: Structure) -> None:
    h = find_homomorphism(c4, k2)
    assert h
    assert check_homomorphism(h, c4, k2)

    missing = find_homomorphism(k3, k2)
    assert isinstance(missing, NotFound)
    assert missing.complete
    assert not missing

    assert find_homomorphism(p3, k2, surjective=True)
    assert not find_homomorphism(p3, k2, injective=True)
    assert find_homomorphism(k2, p3, injective=True)


def test_pins_and_candidates(k2: Structure, p3: Structure) -> None:
    h = find_homomorphism(p3, k2, {"a": "y"})
    assert h
    assert h("a") == h("c") == "y"
    assert not find_homomorphism(p3, k2, {"a": "x", "c": "y"})
    assert not find_homomorphism(p3, k2, candidates={"b": []})
    with pytest.raises(DanglingElement):
        find_homomorphism(p3, k2, {"z": "x"})
    with pytest.raises(VocabularyMismatch):
        find_homomorphism(p3, Structure.create(Vocabulary.create({"R": 1}), ["a"]))


def test_constants_are_preserved() -> None:
    vocab = Vocabulary.create({"E": 2}, ["c1"])
    source = Structure.create(vocab, ["a", "b"], {"E": [("a", "b")]}, {"c1": "a"})
    target = Structure.create(vocab, ["u", "v"], {"E": [("u", "v"), ("v", "u")]}, {"c1": "v"})
    h = find_homomorphism(source, target)
    assert h
    assert h.mapping == {"a": "v", "b": "u"}


def test_enumerate(k2: Structure, p3: Structure) -> None:
    assert len(endomorphisms(p3)) == 6
    assert len(endomorphisms(k2)) == 2
    assert len(find_all_homomorphisms(p3, k2)) == 2
    assert len(find_all_homomorphisms(p3, k2, {"b": "x"})) == 1
    assert len(automorphisms(p3)) == 2
    with pytest.raises(CapExceeded):
        find_all_homomorphisms(p3, k2, cap=7)


def test_budget(k2: Structure, k3: Structure) -> None:
    budget = SearchBudget(node_limit=0)
    result = find_homomorphism(k3, k2, budget=budget)
    assert isinstance(result, NotFound)
    assert not result.complete
    with pytest.raises(BudgetExceeded):
        require_complete(result)
    with pytest.raises(BudgetExceeded):
        maps_to(k3, k2, budget=budget)
    with pytest.raises(BudgetExceeded):
        list(iter_homomorphisms(k3, k2, budget=budget))


def test_retraction(p3: Structure, c4: Structure) -> None:
    r = find_retraction(p3, ["a", "b"])
    assert r
    assert r("a") == "a"
    assert r("b") == "b"
    assert r.image() == frozenset({"a", "b"})
    assert not find_retraction(p3, ["a", "c"])
    assert find_retraction(c4, ["v0", "v1"])
    with pytest.raises(StructureError):
        find_retraction(p3, Structure.create(p3.vocabulary, ["a", "b"]))


def test_isomorphism(c4: Structure, p3: Structure) -> None:
    assert are_isomorphic(c4, cycle(4, prefix="u"))
    assert not are_isomorphic(c4, path(4))
    assert not find_isomorphism(p3, path(4))
    assert hom_equivalent(c4, p3)


@given(digraphs(max_size=3), digraphs(max_size=3))
def test_product_is_a_meet(left: Structure, right: Structure) -> None:
    both = product(left, right)
    assert maps_to(both, left)
    assert maps_to(both, right)
    for other in (left, right):
        assert maps_to(other, both) == (maps_to(other, left) and maps_to(other, right))
