from __future__ import annotations

from hypothesis import given

from fmtkit.cores import check_core_embeddings, core, core_retraction, is_core, quotient_poset
from fmtkit.fixtures import complete, cycle, path
from fmtkit.homsearch import are_isomorphic, hom_equivalent
from fmtkit.structures import Structure, Vocabulary

from .conftest import digraphs


def test_core(k2: Structure, k3: Structure, p3: Structure, c4: Structure, loop1: Structure) -> None:
    assert are_isomorphic(core(p3), k2)
    assert are_isomorphic(core(c4), k2)
    assert are_isomorphic(core(cycle(5)), cycle(5))
    assert core(k3) == k3
    assert is_core(k3)
    assert not is_core(p3)

    with_loop = Structure.create(k3.vocabulary, ["x", "y", "z"], {"E": set(k3.relation("E")) | {("z", "z")}})
    assert are_isomorphic(core(with_loop), loop1)


def test_core_over_pinned(p3: Structure) -> None:
    assert core(p3, ["a", "c"]) == p3
    assert is_core(p3, ["a", "c"])
    assert len(core(p3, ["a"])) == 2
    assert "a" in core(p3, ["a"])


def test_core_with_constants() -> None:
    vocab = Vocabulary.create({"E": 2}, ["c1", "c2"])
    structure = Structure.create(
        vocab, ["a", "b", "c"], {"E": [("a", "b"), ("b", "a"), ("b", "c"), ("c", "b")]}, {"c1": "a", "c2": "c"}
    )
    assert core(structure) == structure


def test_core_retraction(c4: Structure) -> None:
    r = core_retraction(c4)
    assert len(r.image()) == 2
    for a in r.image():
        assert r(a) == a
    assert check_core_embeddings(c4)
    assert check_core_embeddings(path(4), ["v0"])


def test_quotient_poset(k2: Structure, p3: Structure, c4: Structure, k3: Structure, loop1: Structure, pt1: Structure) -> None:
    labels = ("K2", "P3", "C4", "K3", "LOOP1", "PT1")
    poset = quotient_poset([k2, p3, c4, k3, loop1, pt1], labels=labels)
    assert [cls.members for cls in poset.classes] == [(0, 1, 2), (3,), (4,), (5,)]
    assert poset.labels == labels
    assert are_isomorphic(poset.classes[0].representative, k2)
    assert poset.hasse() == [(0, 1), (1, 2), (3, 0)]
    assert poset.leq(3, 2)
    assert not poset.leq(2, 3)
    assert poset.class_of(2) == 0


@given(digraphs())
def test_core_is_minimal_idempotent_and_order_free(structure: Structure) -> None:
    result = core(structure)
    assert hom_equivalent(result, structure)
    assert is_core(result)
    assert len(result) <= len(structure)
    assert core(result) == result
    reversed_result = core(structure, order=list(reversed(structure.universe)))
    assert are_isomorphic(reversed_result, result)
    assert set(reversed_result.universe) <= set(structure.universe)


def test_complete_graphs_are_cores() -> None:
    for n in range(1, 5):
        assert is_core(complete(n))
