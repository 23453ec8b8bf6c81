from __future__ import annotations

import pytest

from fmtkit.enumeration import enumerate_structures
from fmtkit.exceptions import MorphismError, NonCommutingSquare, NotParallel
from fmtkit.fixtures import GRAPH_VOCABULARY
from fmtkit.homotopy import (
    LiftingProblem,
    classify_morphism,
    find_lift,
    find_left_inverse,
    find_right_inverse,
    homotopic,
    homotopy_category,
    is_acyclic_fibration,
    is_acyclic_fibration_by_lifting,
    is_section,
    is_weak_equivalence,
    is_weak_k_equivalence,
    k_homotopy_category,
    left_homotopy,
    theorem3_verify,
)
from fmtkit.homsearch import find_all_homomorphisms, find_homomorphism
from fmtkit.structures import Morphism, Structure, compose


@pytest.fixture()
def fold(p3: Structure, k2: Structure) -> Morphism:
    return Morphism.create(p3, k2, {"a": "x", "b": "y", "c": "x"})


def test_lifting(pt1: Structure, k2: Structure, p3: Structure, fold: Morphism) -> None:
    i = Morphism.create(pt1, k2, {"x": "x"})
    f = Morphism.create(pt1, p3, {"x": "a"})
    g = Morphism.identity(k2)
    lift = find_lift(LiftingProblem(i, fold, f, g))
    assert lift
    assert lift.mapping == {"x": "a", "y": "b"}
    assert compose(lift, i) == f
    assert compose(fold, lift) == g

    with pytest.raises(NonCommutingSquare):
        LiftingProblem(i, fold, Morphism.create(pt1, p3, {"x": "b"}), g)
    with pytest.raises(MorphismError):
        LiftingProblem(g, fold, f, g)


def test_no_lift(k2: Structure, p3: Structure, loop1: Structure) -> None:
    # The ends of the edge are prescribed at distance two.
    two_points = Structure.create(k2.vocabulary, ["x", "y"])
    i = Morphism.create(two_points, k2, {"x": "x", "y": "y"})
    f = Morphism.create(two_points, p3, {"x": "a", "y": "c"})
    p = Morphism.create(p3, loop1, {"a": "x", "b": "x", "c": "x"})
    g = Morphism.create(k2, loop1, {"x": "x", "y": "x"})
    assert not find_lift(LiftingProblem(i, p, f, g))


def test_classify(fold: Morphism, k2: Structure) -> None:
    result = classify_morphism(fold)
    assert result.weak_equivalence
    assert result.acyclic_fibration
    assert result.retraction
    assert not result.section
    assert find_right_inverse(fold)
    assert not find_left_inverse(fold)
    assert is_acyclic_fibration_by_lifting(fold)
    assert is_weak_k_equivalence(fold, 2)

    identity = classify_morphism(Morphism.identity(k2))
    assert identity.weak_equivalence and identity.acyclic_fibration and identity.section


def test_inclusion(k2: Structure, k3: Structure) -> None:
    inclusion = Morphism.create(k2, k3, {"x": "x", "y": "y"})
    assert not is_weak_equivalence(inclusion)
    assert is_section(inclusion) is False
    assert not is_acyclic_fibration(inclusion)
    assert not is_acyclic_fibration_by_lifting(inclusion)
    assert is_weak_k_equivalence(inclusion, 2) is False


def test_homotopies(fold: Morphism, p3: Structure, k2: Structure) -> None:
    swap = Morphism.create(p3, k2, {"a": "y", "b": "x", "c": "y"})
    h = left_homotopy(fold, swap)
    assert len(h.source) == 6
    assert homotopic(fold, swap)
    with pytest.raises(NotParallel):
        left_homotopy(fold, Morphism.identity(k2))


def test_categories(k2: Structure, p3: Structure, k3: Structure, pt1: Structure) -> None:
    poset = homotopy_category([k2, p3, k3], labels=("K2", "P3", "K3"))
    assert [cls.members for cls in poset.classes] == [(0, 1), (2,)]
    assert poset.hasse() == [(0, 1)]

    coarse = k_homotopy_category([k2, k3, pt1], 2)
    assert [cls.members for cls in coarse.classes] == [(0, 1), (2,)]
    assert coarse.leq(1, 0)
    assert coarse.hasse() == [(1, 0)]


def test_theorem3(k2: Structure, pt1: Structure, k3: Structure) -> None:
    report = theorem3_verify(k2, pt1, 1)
    assert report.game_side and report.test_side and report.agree
    assert report.separating == ()

    report = theorem3_verify(k2, pt1, 2)
    assert not report.game_side
    assert not report.test_side
    assert report.agree
    assert len(report.separating) == 1

    assert theorem3_verify(k2, k3, 2).agree
    assert theorem3_verify(k2, k3, 3, size_cap=3).agree


@pytest.fixture(scope="module")
def small() -> tuple[Structure, ...]:
    return enumerate_structures(GRAPH_VOCABULARY, 2)


def test_weak_equivalences_two_out_of_three(small: tuple[Structure, ...]) -> None:
    maps = {(i, j): find_homomorphism(a, b) for i, a in enumerate(small) for j, b in enumerate(small)}
    for (i, j), f in maps.items():
        for (j2, m), g in maps.items():
            if j2 != j or not f or not g:
                continue
            verdicts = [is_weak_equivalence(f), is_weak_equivalence(g), is_weak_equivalence(compose(g, f))]
            assert sum(verdicts) != 2, (i, j, m, verdicts)


def test_acyclic_fibrations_are_weak_equivalences(small: tuple[Structure, ...]) -> None:
    for a in small:
        for b in small:
            for f in find_all_homomorphisms(a, b):
                if is_acyclic_fibration(f):
                    assert is_weak_equivalence(f)
                    assert is_acyclic_fibration_by_lifting(f, small)
