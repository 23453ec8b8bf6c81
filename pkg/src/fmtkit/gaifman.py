from __future__ import annotations

import itertools
import logging
import math
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence, Union

import networkx as nx

from .constants import TREE_DEPTH_VERTEX_BUDGET
from .exceptions import CapExceeded, InputError
from .structures import Structure, expand, reduct, require_elements

logger = logging.getLogger(__name__)

Elements = Union[str, Sequence[str]]


def _as_tuple(elements: Elements) -> tuple[str, ...]:
    if isinstance(elements, str):
        return (elements,)
    return tuple(elements)


def gaifman_graph(structure: Structure) -> nx.Graph:
    """The simple graph joining distinct elements that share a tuple."""

    graph = nx.Graph()
    graph.add_nodes_from(structure.universe)
    for _, t in structure.tuples():
        graph.add_edges_from(itertools.combinations(sorted(set(t)), 2))
    return graph


def distance(structure: Structure, source: Elements, target: str) -> Union[int, float]:
    """The Gaifman distance from ``source`` (an element or a tuple) to ``target``.

    Returns ``math.inf`` when no path exists.
    """

    sources = require_elements(structure, _as_tuple(source))
    require_elements(structure, (target,))
    if not sources:
        return math.inf
    lengths = nx.multi_source_dijkstra_path_length(gaifman_graph(structure), set(sources))
    return lengths.get(target, math.inf)


def ball(structure: Structure, center: Elements, radius: int) -> frozenset[str]:
    """The elements at distance at most ``radius`` from ``center``."""

    if radius < 0:
        raise InputError(f"Radius must be >= 0, got {radius!r}.")
    sources = require_elements(structure, _as_tuple(center))
    if not sources:
        return frozenset()
    lengths = nx.multi_source_dijkstra_path_length(gaifman_graph(structure), set(sources), cutoff=radius)
    return frozenset(lengths)


def neighborhood(structure: Structure, center: Elements, radius: int) -> Structure:
    """The ``radius``-neighborhood of ``center``.

    The result lives over the relational part of the vocabulary expanded by
    one constant per entry of ``center``, interpreted in order.
    """

    center = _as_tuple(center)
    elements = ball(structure, center, radius)
    relational = reduct(structure, structure.vocabulary.relational())
    relations = {name: [t for t in ts if elements.issuperset(t)] for name, ts in relational.relations.items()}
    restricted = Structure(relational.vocabulary, elements, relations)
    return expand(restricted, center)


@dataclass(frozen=True)
class EliminationTree:
    """A rooted tree of an elimination forest."""

    root: str
    children: tuple[EliminationTree, ...] = ()

    @property
    def depth(self) -> int:
        return 1 + max((child.depth for child in self.children), default=0)

    def vertices(self) -> Iterator[str]:
        yield self.root
        for child in self.children:
            yield from child.vertices()


class _TreeDepthSolver:
    def __init__(self, graph: nx.Graph) -> None:
        self.adjacency = {v: frozenset(u for u in graph[v] if u != v) for v in graph}
        self.memo: dict[frozenset[str], tuple[int, str]] = {}

    def components(self, vertices: frozenset[str]) -> list[frozenset[str]]:
        seen: set[str] = set()
        result: list[frozenset[str]] = []
        for start in sorted(vertices):
            if start in seen:
                continue
            component = {start}
            stack = [start]
            while stack:
                v = stack.pop()
                for u in self.adjacency[v] & vertices:
                    if u not in component:
                        component.add(u)
                        stack.append(u)
            seen |= component
            result.append(frozenset(component))
        return result

    def solve(self, vertices: frozenset[str]) -> int:
        if not vertices:
            return 0
        return max(self._connected(component)[0] for component in self.components(vertices))

    def _connected(self, component: frozenset[str]) -> tuple[int, str]:
        if component in self.memo:
            return self.memo[component]
        n = len(component)
        degree = {v: len(self.adjacency[v] & component) for v in component}
        if n == 1 or all(d == n - 1 for d in degree.values()):
            result = (n, min(component))
        else:
            # A connected graph with a non-adjacent pair has depth at least 2,
            # and a path of n vertices needs at least log2(n + 1).
            lower = max(2, math.ceil(math.log2(nx.diameter(self._subgraph(component)) + 2)))
            best, best_root = n, min(component)
            for v in sorted(component, key=lambda v: (-degree[v], v)):
                value = 1 + self.solve(component - {v})
                if value < best:
                    best, best_root = value, v
                if best <= lower:
                    break
            result = (best, best_root)
        self.memo[component] = result
        return result

    def _subgraph(self, component: frozenset[str]) -> nx.Graph:
        graph = nx.Graph()
        graph.add_nodes_from(component)
        graph.add_edges_from((v, u) for v in component for u in self.adjacency[v] & component)
        return graph

    def forest(self, vertices: frozenset[str]) -> tuple[EliminationTree, ...]:
        trees = []
        for component in self.components(vertices):
            _, root = self._connected(component)
            trees.append(EliminationTree(root, self.forest(component - {root})))
        return tuple(trees)


def _solver(graph: nx.Graph, budget: int) -> _TreeDepthSolver:
    if graph.number_of_nodes() > budget:
        raise CapExceeded(f"Tree-depth is limited to {budget} vertices, got {graph.number_of_nodes()}.")
    return _TreeDepthSolver(graph)


def tree_depth(graph: nx.Graph, budget: int = TREE_DEPTH_VERTEX_BUDGET) -> int:
    """The exact tree-depth of ``graph``; self-loops are ignored."""

    solver = _solver(graph, budget)
    value = solver.solve(frozenset(graph.nodes))
    logger.debug("tree-depth %d on %d vertices (%d memoized)", value, graph.number_of_nodes(), len(solver.memo))
    return value


def elimination_forest(graph: nx.Graph, budget: int = TREE_DEPTH_VERTEX_BUDGET) -> tuple[EliminationTree, ...]:
    """An elimination forest of ``graph`` of optimal depth, one tree per component."""

    return _solver(graph, budget).forest(frozenset(graph.nodes))


def graph_without(structure: Structure, removed: Iterable[str]) -> nx.Graph:
    graph = gaifman_graph(structure)
    graph.remove_nodes_from(require_elements(structure, removed))
    return graph


def tree_depth_over(structure: Structure, removed: Iterable[str], budget: int = TREE_DEPTH_VERTEX_BUDGET) -> int:
    """The tree-depth of the Gaifman graph with ``removed`` deleted."""

    return tree_depth(graph_without(structure, removed), budget)
