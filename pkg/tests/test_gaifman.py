from __future__ import annotations

import itertools
import math

import networkx as nx
import pytest
from hypothesis import given

from fmtkit.exceptions import CapExceeded, DanglingElement, InputError
from fmtkit.fixtures import complete, cycle, path
from fmtkit.gaifman import (
    EliminationTree,
    ball,
    distance,
    elimination_forest,
    gaifman_graph,
    graph_without,
    neighborhood,
    tree_depth,
    tree_depth_over,
)
from fmtkit.structures import Structure, Vocabulary

from .conftest import graphs


def test_gaifman_graph(p3: Structure, loop1: Structure) -> None:
    graph = gaifman_graph(p3)
    assert sorted(graph.nodes) == ["a", "b", "c"]
    assert sorted(map(sorted, graph.edges)) == [["a", "b"], ["b", "c"]]
    assert gaifman_graph(loop1).number_of_edges() == 0

    ternary = Structure.create(Vocabulary.create({"R": 3}), "abc", {"R": [("a", "b", "c")]})
    assert gaifman_graph(ternary).number_of_edges() == 3


def test_distance_and_ball(p3: Structure) -> None:
    assert distance(p3, "a", "c") == 2
    assert distance(p3, ("a", "c"), "b") == 1
    assert distance(p3, (), "b") == math.inf
    assert ball(p3, "a", 0) == {"a"}
    assert ball(p3, "a", 1) == {"a", "b"}
    assert ball(p3, ("a", "c"), 1) == {"a", "b", "c"}
    with pytest.raises(InputError):
        ball(p3, "a", -1)
    with pytest.raises(DanglingElement):
        ball(p3, "z", 1)


def test_neighborhood(p3: Structure) -> None:
    hood = neighborhood(p3, ("a",), 1)
    assert hood.universe == ("a", "b")
    assert hood.vocabulary.constants == ("c1",)
    assert hood.constant("c1") == "a"
    assert hood.relation("E") == frozenset({("a", "b"), ("b", "a")})


@pytest.mark.parametrize(
    ("structure", "expected"),
    [
        (path(1), 1),
        (path(3), 2),
        (path(7), 3),
        (path(8), 4),
        (cycle(4), 3),
        (complete(4), 4),
    ],
)
def test_tree_depth(structure: Structure, expected: int) -> None:
    assert tree_depth(gaifman_graph(structure)) == expected


def test_tree_depth_over(p3: Structure) -> None:
    assert tree_depth_over(p3, ["b"]) == 1
    assert tree_depth_over(p3, ["a", "b", "c"]) == 0
    assert tree_depth(nx.Graph()) == 0


def test_vertex_budget() -> None:
    with pytest.raises(CapExceeded):
        tree_depth(gaifman_graph(path(6)), budget=5)


def _brute_tree_depth(adjacency: dict[int, set[int]], vertices: frozenset[int]) -> int:
    if not vertices:
        return 0
    component = {min(vertices)}
    frontier = [min(vertices)]
    while frontier:
        for w in adjacency[frontier.pop()] & vertices:
            if w not in component:
                component.add(w)
                frontier.append(w)
    if len(component) < len(vertices):
        rest = vertices.difference(component)
        return max(_brute_tree_depth(adjacency, frozenset(component)), _brute_tree_depth(adjacency, rest))
    return 1 + min(_brute_tree_depth(adjacency, vertices - {v}) for v in vertices)


@pytest.mark.parametrize("n", range(6))
def test_tree_depth_matches_exhaustive_search(n: int) -> None:
    pairs = list(itertools.combinations(range(n), 2))
    for mask in range(2 ** len(pairs)):
        edges = [pair for i, pair in enumerate(pairs) if mask >> i & 1]
        graph = nx.Graph()
        graph.add_nodes_from(str(v) for v in range(n))
        graph.add_edges_from((str(u), str(v)) for u, v in edges)
        adjacency: dict[int, set[int]] = {v: set() for v in range(n)}
        for u, v in edges:
            adjacency[u].add(v)
            adjacency[v].add(u)
        assert tree_depth(graph) == _brute_tree_depth(adjacency, frozenset(range(n))), edges


@given(graphs(max_size=4), graphs(max_size=4))
def test_disjoint_union_is_max(left: Structure, right: Structure) -> None:
    first, second = gaifman_graph(left), gaifman_graph(right)
    union = nx.union(first, second, rename=("l", "r"))
    assert tree_depth(union) == max(tree_depth(first), tree_depth(second))


@given(graphs())
def test_forest_is_optimal_elimination(structure: Structure) -> None:
    graph = gaifman_graph(structure)
    forest = elimination_forest(graph)
    assert max((tree.depth for tree in forest), default=0) == tree_depth(graph)
    assert sorted(v for tree in forest for v in tree.vertices()) == sorted(graph.nodes)

    # Every edge joins an ancestor and a descendant.
    ancestors: dict[str, set[str]] = {}

    def visit(tree: EliminationTree, above: set[str]) -> None:
        ancestors[tree.root] = above
        for child in tree.children:
            visit(child, above | {tree.root})

    for tree in forest:
        visit(tree, set())
    for u, v in graph.edges:
        assert u in ancestors[v] or v in ancestors[u]


def test_graph_without(c4: Structure) -> None:
    graph = graph_without(c4, ["v0"])
    assert sorted(graph.nodes) == ["v1", "v2", "v3"]
    assert tree_depth(graph) == 2
