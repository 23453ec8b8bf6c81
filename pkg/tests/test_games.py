from __future__ import annotations

import pytest
from hypothesis import given

from fmtkit.enumeration import enumerate_structures
from fmtkit.exceptions import InputError
from fmtkit.fixtures import GRAPH_VOCABULARY, cycle, path
from fmtkit.games import ef_equivalent, k_core, k_extendable, k_hom, k_hom_equivalent, k_hom_pinned, lemma29_check
from fmtkit.homsearch import are_isomorphic, maps_to
from fmtkit.logic import preserves_pp
from fmtkit.structures import Structure

from .conftest import digraphs


def test_ef_rounds(k2: Structure, k3: Structure) -> None:
    assert ef_equivalent(k2, (), k3, (), 1)
    assert ef_equivalent(k2, (), k3, (), 2)
    assert not ef_equivalent(k2, (), k3, (), 3)
    assert ef_equivalent(k3, (), k3, (), 3)


def test_ef_with_tuples(p3: Structure) -> None:
    assert ef_equivalent(p3, ("a",), p3, ("c",), 3)
    assert not ef_equivalent(p3, ("a",), p3, ("b",), 1)
    assert ef_equivalent(p3, ("a",), p3, ("b",), 0)
    with pytest.raises(InputError):
        ef_equivalent(p3, ("a",), p3, (), 1)


def test_ef_cycles() -> None:
    # Large enough cycles agree on few rounds.
    assert ef_equivalent(cycle(6), (), cycle(7), (), 2)
    assert not ef_equivalent(cycle(3), (), cycle(4), (), 3)


def test_k_hom(k2: Structure, k3: Structure, pt1: Structure) -> None:
    assert k_hom(k2, pt1, 1)
    assert not k_hom(k2, pt1, 2)
    assert k_hom(k3, k2, 2)
    assert not k_hom(k3, k2, 3)
    assert k_hom_equivalent(k2, k3, 2)
    assert not k_hom_equivalent(k2, k3, 3)
    assert k_hom(path(7), path(2), 5)


def test_k_hom_pinned(p3: Structure, k2: Structure, pt1: Structure) -> None:
    assert k_hom_pinned(p3, ("a",), p3, ("c",), 2)
    assert k_hom_pinned(p3, ("b",), p3, ("a",), 2)
    assert not k_hom_pinned(k2, ("x",), pt1, ("x",), 1)
    assert k_hom_pinned(k2, ("x",), pt1, ("x",), 0)
    assert k_hom(p3, p3, 2, ["a", "c"])


@given(digraphs(max_size=3), digraphs(max_size=3))
def test_k_hom_matches_pp_tests(left: Structure, right: Structure) -> None:
    for k in (1, 2):
        assert k_hom(left, right, k) == preserves_pp(left, right, k)
    if maps_to(left, right):
        assert k_hom(left, right, 3)


@pytest.mark.parametrize("k", [1, 2])
def test_k_hom_is_a_preorder_refined_by_homomorphisms(k: int) -> None:
    small = enumerate_structures(GRAPH_VOCABULARY, 2)
    n = len(small)
    below = {(i, j): k_hom(small[i], small[j], k) for i in range(n) for j in range(n)}
    for i in range(n):
        assert below[i, i]
        for j in range(n):
            if maps_to(small[i], small[j]):
                assert below[i, j]
            if below[i, j]:
                assert k_hom(small[i], small[j], k - 1)
                for m in range(n):
                    assert not below[j, m] or below[i, m]


@pytest.mark.parametrize("k", [1, 2, 3])
def test_ef_equivalence_is_transitive(k: int) -> None:
    small = enumerate_structures(GRAPH_VOCABULARY, 3)
    n = len(small)
    classes: list[list[int]] = []
    for i in range(n):
        matches = [cls for cls in classes if ef_equivalent(small[cls[0]], (), small[i], (), k)]
        # An equivalence puts each structure in exactly one class.
        assert len(matches) <= 1
        if matches:
            assert all(ef_equivalent(small[j], (), small[i], (), k) for j in matches[0])
            matches[0].append(i)
        else:
            classes.append([i])


def test_k_core(p3: Structure, k2: Structure, k3: Structure, pt1: Structure) -> None:
    assert are_isomorphic(k_core(p3, 2), k2)
    assert are_isomorphic(k_core(k3, 1), pt1)
    assert are_isomorphic(k_core(k3, 2), k2)

    pinned = k_core(p3, 1, ["a", "c"])
    assert {"a", "c"} <= set(pinned.universe)


def test_k_extendable(k2: Structure, c4: Structure) -> None:
    pool = enumerate_structures(GRAPH_VOCABULARY, 2)
    assert k_extendable(k2, 1, pool)
    assert k_extendable(k2, 1, pool, strict=True)
    assert k_extendable(k2, 0, pool)

    report = lemma29_check(k2, k2, 2, pool)
    assert report.k_hom_equivalent
    assert report.ef_equivalent
    assert report.holds

    report = lemma29_check(k2, c4, 2, pool)
    assert report.k_hom_equivalent
    assert not report.ef_equivalent
    assert report.holds == (not report.premise)
