from __future__ import annotations

import logging
import time
from dataclasses import dataclass
from typing import Collection, Iterable, Iterator, Mapping, Union

from .constants import ENUMERATION_CAP, NODE_LIMIT, TIME_LIMIT_MS
from .exceptions import BudgetExceeded, CapExceeded, DefinitionError, StructureError
from .structures import (
    ElementTuple,
    Morphism,
    Structure,
    induced_substructure,
    require_elements,
    require_same_vocabulary,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SearchBudget:
    """Limits on a single search.

    Parameters:
        node_limit (int, default=NODE_LIMIT):
            The largest number of search-tree nodes to visit.
        time_limit (int, default=TIME_LIMIT_MS):
            Wall-clock limit in milliseconds; 0 means unlimited.
    """

    node_limit: int = NODE_LIMIT
    time_limit: int = TIME_LIMIT_MS

    def __post_init__(self) -> None:
        if self.node_limit < 0 or self.time_limit < 0:
            raise DefinitionError("Search budgets must be nonnegative.")


DEFAULT_BUDGET = SearchBudget()


class BudgetMeter:
    """Counts nodes against a :class:`SearchBudget`."""

    def __init__(self, budget: SearchBudget | None = None) -> None:
        self.budget = budget or DEFAULT_BUDGET
        self.nodes = 0
        self._deadline = time.monotonic() + self.budget.time_limit / 1000 if self.budget.time_limit else None

    def exhausted(self) -> bool:
        self.nodes += 1
        if self.nodes > self.budget.node_limit:
            return True
        return self._deadline is not None and self.nodes % 1024 == 0 and time.monotonic() > self._deadline

    def tick(self) -> None:
        if self.exhausted():
            raise BudgetExceeded(f"Search budget exhausted after {self.nodes} nodes.")


@dataclass(frozen=True)
class NotFound:
    """The result of a search without a witness.

    ``complete`` is ``False`` when the search stopped on its budget, so the
    absence is not proven.
    """

    complete: bool = True
    nodes: int = 0

    def __bool__(self) -> bool:
        return False


SearchResult = Union[Morphism, NotFound]


def _pattern(t: ElementTuple) -> tuple[int, ...]:
    first: dict[str, int] = {}
    return tuple(first.setdefault(a, i) for i, a in enumerate(t))


class _Search:
    """Backtracking search for homomorphisms ``source -> target``.

    Domains are seeded with the constants and the pins and filtered by unary
    consistency; every tuple of the source is checked as soon as its last
    element is assigned.
    """

    def __init__(
        self,
        source: Structure,
        target: Structure,
        pins: Mapping[str, str] | None = None,
        candidates: Mapping[str, Iterable[str]] | None = None,
        *,
        injective: bool = False,
        surjective: bool = False,
        budget: SearchBudget | None = None,
    ) -> None:
        vocabulary = require_same_vocabulary(source, target)
        self.source = source
        self.target = target
        self.injective = injective
        self.surjective = surjective
        self.meter = BudgetMeter(budget)
        self.exhausted = False

        domains: dict[str, set[str]] = {a: set(target.universe) for a in source.universe}
        fixed: list[tuple[str, str]] = [(source.constant(c), target.constant(c)) for c in vocabulary.constants]
        for a, b in (pins or {}).items():
            require_elements(source, (a,))
            require_elements(target, (b,))
            fixed.append((a, b))
        for a, b in fixed:
            domains[a] &= {b}
        for a, allowed in (candidates or {}).items():
            domains[require_elements(source, (a,))[0]] &= set(allowed)

        # Unary consistency: an element can only go where every tuple around it can.
        matching: dict[tuple[str, tuple[int, ...]], list[ElementTuple]] = {}
        for name, t in source.tuples():
            key = (name, _pattern(t))
            if key not in matching:
                pattern = key[1]
                matching[key] = [s for s in target.relation(name) if _pattern_allows(pattern, s)]
            image = matching[key]
            for i, a in enumerate(t):
                if t.index(a) == i:
                    domains[a] &= {s[i] for s in image}

        self.empty = any(not domain for domain in domains.values())
        self.order = self._ordering(domains)
        position = {a: i for i, a in enumerate(self.order)}
        self.domains = [sorted(domains[a]) for a in self.order]
        self.checks: list[list[tuple[tuple[int, ...], frozenset[ElementTuple]]]] = [[] for _ in self.order]
        for name, t in source.tuples():
            last = max(position[a] for a in t)
            self.checks[last].append((tuple(position[a] for a in t), target.relation(name)))

    def _ordering(self, domains: Mapping[str, Collection[str]]) -> list[str]:
        neighbours: dict[str, set[str]] = {a: set() for a in self.source.universe}
        for _, t in self.source.tuples():
            for a in t:
                neighbours[a].update(b for b in t if b != a)
        order: list[str] = []
        placed: set[str] = set()
        remaining = set(self.source.universe)
        while remaining:
            # Prefer forced elements, then those tied to the placed ones, then high degree.
            a = min(
                remaining,
                key=lambda a: (len(domains[a]) > 1, -len(neighbours[a] & placed), -len(neighbours[a]), a),
            )
            order.append(a)
            placed.add(a)
            remaining.discard(a)
        return order

    def run(self) -> Iterator[dict[str, str]]:
        if self.empty:
            return
        if self.surjective and len(self.target) > len(self.source):
            return
        values: list[str] = []
        used: dict[str, int] = {}
        yield from self._extend(values, used)

    def _extend(self, values: list[str], used: dict[str, int]) -> Iterator[dict[str, str]]:
        depth = len(values)
        if depth == len(self.order):
            if not self.surjective or len(used) == len(self.target):
                yield dict(zip(self.order, values))
            return
        for b in self.domains[depth]:
            if self.exhausted:
                return
            if self.meter.exhausted():
                self.exhausted = True
                return
            if self.injective and b in used:
                continue
            values.append(b)
            if all(tuple(values[i] for i in positions) in tuples for positions, tuples in self.checks[depth]):
                used[b] = used.get(b, 0) + 1
                uncovered = len(self.target) - len(used)
                if not self.surjective or uncovered <= len(self.order) - depth - 1:
                    yield from self._extend(values, used)
                used[b] -= 1
                if not used[b]:
                    del used[b]
            values.pop()


def _pattern_allows(pattern: tuple[int, ...], candidate: ElementTuple) -> bool:
    return all(candidate[i] == candidate[j] for i, j in enumerate(pattern))


def _search(source: Structure, target: Structure, pins, candidates, injective, surjective, budget) -> SearchResult:
    search = _Search(source, target, pins, candidates, injective=injective, surjective=surjective, budget=budget)
    for mapping in search.run():
        logger.debug("homomorphism found after %d nodes", search.meter.nodes)
        return Morphism.create(source, target, mapping)
    logger.debug("no homomorphism after %d nodes (complete=%s)", search.meter.nodes, not search.exhausted)
    return NotFound(complete=not search.exhausted, nodes=search.meter.nodes)


def find_homomorphism(
    source: Structure,
    target: Structure,
    pins: Mapping[str, str] | None = None,
    budget: SearchBudget | None = None,
    *,
    candidates: Mapping[str, Iterable[str]] | None = None,
    injective: bool = False,
    surjective: bool = False,
) -> SearchResult:
    """Search for a homomorphism extending ``pins``.

    Parameters:
        source (Structure):
            The domain.
        target (Structure):
            The codomain, over the same vocabulary.
        pins (Mapping[str, str] | None, default=None):
            Prescribed images.
        budget (SearchBudget | None, default=None):
            Search limits.
        candidates (Mapping[str, Iterable[str]] | None, default=None):
            Allowed images per element.
        injective (bool, default=False):
            Only accept injective maps.
        surjective (bool, default=False):
            Only accept maps onto the target.

    Returns:
        A verified :class:`Morphism`, or a falsy :class:`NotFound`.
    """

    return _search(source, target, pins, candidates, injective, surjective, budget)


def iter_homomorphisms(
    source: Structure,
    target: Structure,
    pins: Mapping[str, str] | None = None,
    *,
    candidates: Mapping[str, Iterable[str]] | None = None,
    injective: bool = False,
    surjective: bool = False,
    budget: SearchBudget | None = None,
) -> Iterator[Morphism]:
    """Iterate homomorphisms in search order; raises when the budget runs out."""

    search = _Search(source, target, pins, candidates, injective=injective, surjective=surjective, budget=budget)
    for mapping in search.run():
        yield Morphism(source, target, mapping)
    if search.exhausted:
        raise BudgetExceeded(f"Search budget exhausted after {search.meter.nodes} nodes.")


def find_all_homomorphisms(
    source: Structure,
    target: Structure,
    pins: Mapping[str, str] | None = None,
    *,
    candidates: Mapping[str, Iterable[str]] | None = None,
    cap: int = ENUMERATION_CAP,
    budget: SearchBudget | None = None,
) -> list[Morphism]:
    """All homomorphisms, ordered by their images in the source's element order."""

    if len(target) ** len(source) > cap:
        raise CapExceeded(f"{len(target)}^{len(source)} candidate maps exceed the cap of {cap}.")
    found = iter_homomorphisms(source, target, pins, candidates=candidates, budget=budget)
    return sorted(found, key=lambda h: tuple(h(a) for a in source.universe))


def require_complete(result: SearchResult) -> SearchResult:
    """Turn a budget-limited :class:`NotFound` into :class:`BudgetExceeded`."""

    if isinstance(result, NotFound) and not result.complete:
        raise BudgetExceeded(f"Search budget exhausted after {result.nodes} nodes.")
    return result


def maps_to(
    source: Structure,
    target: Structure,
    pinned: Iterable[str] = (),
    budget: SearchBudget | None = None,
) -> bool:
    """Decide ``source ->_X target`` for ``X = pinned``, which must lie in both."""

    pins = {x: x for x in pinned}
    return bool(require_complete(find_homomorphism(source, target, pins, budget)))


def exists_surjective_homomorphism(source: Structure, target: Structure, budget: SearchBudget | None = None) -> bool:
    return bool(require_complete(find_homomorphism(source, target, budget=budget, surjective=True)))


def find_retraction(
    structure: Structure,
    onto: Union[Structure, Iterable[str]],
    budget: SearchBudget | None = None,
) -> SearchResult:
    """Search for an endomorphism with image in ``onto`` fixing ``onto`` pointwise."""

    if isinstance(onto, Structure):
        subset = onto.universe
        if onto != induced_substructure(structure, subset):
            raise StructureError("Retraction target is not an induced substructure.")
    else:
        subset = tuple(onto)
    target = induced_substructure(structure, subset)
    found = find_homomorphism(structure, target, {a: a for a in target.universe}, budget)
    if isinstance(found, NotFound):
        return found
    return Morphism.create(structure, structure, found.mapping)


def endomorphisms(structure: Structure, *, cap: int = ENUMERATION_CAP, budget: SearchBudget | None = None) -> list[Morphism]:
    return find_all_homomorphisms(structure, structure, cap=cap, budget=budget)


def hom_equivalent(
    left: Structure,
    right: Structure,
    pinned: Iterable[str] = (),
    budget: SearchBudget | None = None,
) -> bool:
    """Decide whether ``left`` and ``right`` map to each other over ``pinned``."""

    pinned = tuple(pinned)
    return maps_to(left, right, pinned, budget) and maps_to(right, left, pinned, budget)


def _same_shape(left: Structure, right: Structure) -> bool:
    if len(left) != len(right):
        return False
    return all(len(left.relation(name)) == len(right.relation(name)) for name in left.vocabulary.relation_names)


def find_isomorphism(
    left: Structure,
    right: Structure,
    pins: Mapping[str, str] | None = None,
    budget: SearchBudget | None = None,
) -> SearchResult:
    """An injective homomorphism between equally shaped structures is an isomorphism."""

    require_same_vocabulary(left, right)
    if not _same_shape(left, right):
        return NotFound()
    return find_homomorphism(left, right, pins, budget, injective=True)


def are_isomorphic(
    left: Structure,
    right: Structure,
    pinned: Iterable[str] = (),
    budget: SearchBudget | None = None,
) -> bool:
    if left.vocabulary != right.vocabulary:
        return False
    pins = {x: x for x in pinned}
    return bool(require_complete(find_isomorphism(left, right, pins, budget)))


def automorphisms(structure: Structure, *, cap: int = ENUMERATION_CAP, budget: SearchBudget | None = None) -> list[Morphism]:
    if len(structure) ** len(structure) > cap:
        raise CapExceeded(f"{len(structure)}^{len(structure)} candidate maps exceed the cap of {cap}.")
    found = iter_homomorphisms(structure, structure, injective=True, budget=budget)
    return sorted(found, key=lambda h: tuple(h(a) for a in structure.universe))
