from __future__ import annotations

import pytest
from hypothesis import given

from fmtkit.exceptions import (
    ArityError,
    ConstantError,
    DanglingElement,
    EqualizerUndefined,
    InputError,
    MorphismError,
    NotParallel,
    VocabularyMismatch,
)
from fmtkit.fixtures import GRAPH_VOCABULARY, path
from fmtkit.structures import (
    Morphism,
    Structure,
    Vocabulary,
    canonical_form,
    check_homomorphism,
    check_isomorphism,
    coequalizer,
    compose,
    copair,
    coproduct_injections,
    equalizer,
    free_term_structure,
    induced_substructure,
    pair,
    pair_element,
    pin,
    product_projections,
    relabel,
    top,
    unpin,
)

from .conftest import digraphs

POINTED = Vocabulary.create({"E": 2}, ["c1"])


def test_vocabulary() -> None:
    vocab = Vocabulary.create({"R": 3, "E": 2}, ["c1", "c2"])
    assert vocab.relation_names == ("E", "R")
    assert vocab.arity("R") == 3
    assert str(vocab) == "E/2,R/3;c1,c2"
    assert str(GRAPH_VOCABULARY) == "E/2"
    assert vocab.fresh_constants(2) == ("c3", "c4")
    assert vocab.relational() == Vocabulary.create({"E": 2, "R": 3})

    with pytest.raises(InputError):
        Vocabulary((("E", 2), ("E", 3)))
    with pytest.raises(InputError):
        Vocabulary.create({"E": 0})
    with pytest.raises(InputError):
        Vocabulary.create({"E": 2}, ["E"])
    with pytest.raises(VocabularyMismatch):
        vocab.arity("F")


def test_structure_create() -> None:
    s = Structure.create(POINTED, ["b", "a"], {"E": [("a", "b")]}, {"c1": "a"})
    assert s.universe == ("a", "b")
    assert s.relation("E") == frozenset({("a", "b")})
    assert s.constant("c1") == "a"
    assert len(s) == 2
    assert "a" in s

    with pytest.raises(ArityError):
        Structure.create(GRAPH_VOCABULARY, ["a"], {"E": [("a",)]})
    with pytest.raises(DanglingElement):
        Structure.create(GRAPH_VOCABULARY, ["a"], {"E": [("a", "b")]})
    with pytest.raises(ConstantError):
        Structure.create(POINTED, ["a"], {})
    with pytest.raises(DanglingElement):
        Structure.create(POINTED, ["a"], {}, {"c1": "b"})
    with pytest.raises(VocabularyMismatch):
        Structure.create(GRAPH_VOCABULARY, ["a"], {"F": []})


def test_empty_structure() -> None:
    empty = Structure.create(GRAPH_VOCABULARY, [])
    assert len(empty) == 0
    h = Morphism.create(empty, path(2), {})
    assert h
    assert len(h) == 0


def test_morphism(k2: Structure, p3: Structure) -> None:
    h = Morphism.create(p3, k2, {"a": "x", "b": "y", "c": "x"})
    assert h("b") == "y"
    assert h.image() == frozenset({"x", "y"})
    assert h.is_surjective()
    assert not h.is_injective()
    with pytest.raises(MorphismError):
        Morphism.create(p3, k2, {"a": "x", "b": "x", "c": "x"})

    g = Morphism.create(k2, p3, {"x": "a", "y": "b"})
    assert compose(h, g).mapping == {"x": "x", "y": "y"}
    with pytest.raises(MorphismError):
        compose(g, g)


def test_induced_and_pin(p3: Structure) -> None:
    sub = induced_substructure(p3, ["a", "b"])
    assert sub.relation("E") == frozenset({("a", "b"), ("b", "a")})

    pinned = pin(p3, ["c", "a"])
    assert pinned.vocabulary.constants == ("c1", "c2")
    assert pinned.constants == {"c1": "a", "c2": "c"}
    assert unpin(pinned, p3.vocabulary, ["a", "c"]) == p3


def test_product(k2: Structure, p3: Structure) -> None:
    result, first, second = product_projections(p3, k2)
    assert len(result) == 6
    assert len(result.relation("E")) == 4 * 2
    assert check_homomorphism(first, result, p3)
    assert check_homomorphism(second, result, k2)

    f = Morphism.create(p3, k2, {"a": "x", "b": "y", "c": "x"})
    mediating = pair(Morphism.identity(p3), f)
    assert compose(first, mediating) == Morphism.identity(p3)
    assert compose(second, mediating) == f


def test_pair_names_do_not_collide() -> None:
    assert pair_element("a", "b") == "(a,b)"
    assert pair_element("a,b", "c") != pair_element("a", "b,c")
    assert pair_element("a\\", "b") != pair_element("a", "\\b")

    left = Structure.create(GRAPH_VOCABULARY, ["a,b", "a"], {"E": []})
    right = Structure.create(GRAPH_VOCABULARY, ["c", "b,c"], {"E": []})
    result, _, _ = product_projections(left, right)
    assert len(result) == 4


def test_coproduct(k2: Structure, p3: Structure) -> None:
    result, first, second = coproduct_injections(k2, p3)
    assert len(result) == 5
    assert first("x") == "0:x"
    assert second("a") == "1:a"

    f = Morphism.create(k2, k2, {"x": "x", "y": "y"})
    g = Morphism.create(p3, k2, {"a": "x", "b": "y", "c": "x"})
    mediating = copair(f, g)
    assert compose(mediating, first) == f
    assert compose(mediating, second) == g


def test_coproduct_glues_constants() -> None:
    left = Structure.create(POINTED, ["a", "b"], {"E": [("a", "b")]}, {"c1": "a"})
    right = Structure.create(POINTED, ["u"], {"E": [("u", "u")]}, {"c1": "u"})
    result, first, second = coproduct_injections(left, right)
    assert len(result) == 2
    assert first("a") == second("u") == result.constant("c1")


def test_equalizer_coequalizer(p3: Structure) -> None:
    identity = Morphism.identity(p3)
    flip = Morphism.create(p3, p3, {"a": "c", "b": "b", "c": "a"})
    sub, inclusion = equalizer(identity, flip)
    assert sub.universe == ("b",)
    assert inclusion("b") == "b"

    quotient, projection = coequalizer(identity, flip)
    assert quotient.universe == ("a", "b")
    assert projection("c") == "a"

    k2 = path(2)
    with pytest.raises(NotParallel):
        equalizer(identity, Morphism.identity(k2))

    pointed = Structure.create(POINTED, ["a", "b"], {}, {"c1": "a"})
    f = Morphism.create(pointed, pointed, {"a": "a", "b": "b"})
    g = Morphism.create(pointed, pointed, {"a": "a", "b": "a"})
    assert equalizer(f, g)[0].universe == ("a",)
    with pytest.raises(EqualizerUndefined):
        h = Morphism(pointed, pointed, {"a": "b", "b": "b"})
        equalizer(f, h)


def test_initial_and_terminal() -> None:
    vocab = Vocabulary.create({"E": 2, "R": 1}, ["c1"])
    initial = free_term_structure(vocab)
    assert initial.universe == ("c1",)
    assert not any(initial.relations.values())

    terminal = top(vocab)
    assert len(terminal) == 1
    assert terminal.relation("E") == frozenset({("1", "1")})
    assert terminal.constant("c1") == "1"


@given(digraphs())
def test_canonical_form_invariant(structure: Structure) -> None:
    mapping = {a: f"z{a}" for a in structure.universe}
    renamed = relabel(structure, mapping)
    assert canonical_form(renamed) == canonical_form(structure)
    assert check_isomorphism(mapping, structure, renamed)
