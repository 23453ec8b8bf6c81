from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

from .exceptions import InputError, StructureError
from .formats import canonical_key
from .homsearch import (
    SearchBudget,
    find_all_homomorphisms,
    find_homomorphism,
    find_retraction,
    hom_equivalent,
    maps_to,
    require_complete,
)
from .structures import Morphism, Structure, induced_substructure, pin, require_elements, require_same_vocabulary

logger = logging.getLogger(__name__)


def _fixed(structure: Structure, pinned: Iterable[str]) -> frozenset[str]:
    return frozenset(require_elements(structure, pinned)) | structure.constant_elements


def _shrink(structure: Structure, fixed: frozenset[str], order: Sequence[str] | None, budget) -> Structure | None:
    candidates = [a for a in (order if order is not None else structure.universe) if a in structure and a not in fixed]
    pins = {x: x for x in fixed}
    for v in candidates:
        smaller = induced_substructure(structure, (a for a in structure.universe if a != v))
        found = require_complete(find_homomorphism(structure, smaller, pins, budget))
        if found:
            return induced_substructure(structure, found.image())
    return None


def is_core(structure: Structure, pinned: Iterable[str] = (), budget: SearchBudget | None = None) -> bool:
    """Decide whether every endomorphism fixing ``pinned`` is an automorphism.

    Equivalently, no element outside ``pinned`` and the constants can be
    avoided by an endomorphism fixing ``pinned``.
    """

    return _shrink(structure, _fixed(structure, pinned), None, budget) is None


def core(
    structure: Structure,
    pinned: Iterable[str] = (),
    *,
    order: Sequence[str] | None = None,
    budget: SearchBudget | None = None,
) -> Structure:
    """The core of ``structure`` over ``pinned``, as an induced substructure.

    Parameters:
        structure (Structure):
            The structure.
        pinned (Iterable[str], default=()):
            Elements every endomorphism must fix.
        order (Sequence[str] | None, default=None):
            The order in which elements are tried for removal; sorted by default.
        budget (SearchBudget | None, default=None):
            Limits for each search. An incomplete search raises
            :class:`BudgetExceeded`.
    """

    fixed = _fixed(structure, pinned)
    current = structure
    while (smaller := _shrink(current, fixed, order, budget)) is not None:
        logger.debug("core descent: %d -> %d elements", len(current), len(smaller))
        current = smaller
    return current


def core_retraction(structure: Structure, pinned: Iterable[str] = (), budget: SearchBudget | None = None) -> Morphism:
    """A retraction of ``structure`` onto its core over ``pinned``."""

    result = require_complete(find_retraction(structure, core(structure, pinned, budget=budget), budget))
    if not result:
        raise StructureError("Core is not a retract.")
    return result


def check_core_embeddings(structure: Structure, pinned: Iterable[str] = (), budget: SearchBudget | None = None) -> bool:
    """Check that every map from the core over ``pinned`` into ``structure`` is
    injective and has a retract of ``structure`` as its image."""

    pinned = tuple(pinned)
    result = core(structure, pinned, budget=budget)
    for h in find_all_homomorphisms(result, structure, {x: x for x in pinned}, budget=budget):
        if not h.is_injective():
            return False
        if not require_complete(find_retraction(structure, h.image(), budget)):
            return False
    return True


@dataclass(frozen=True)
class PosetClass:
    """A hom-equivalence class of a collection.

    Parameters:
        members (tuple[int, ...]):
            Indices into the quotiented collection.
        representative (Structure):
            The core of the first member.
        key (str):
            The canonical serialization identifying the representative up to
            isomorphism over the pinned set.
    """

    members: tuple[int, ...]
    representative: Structure
    key: str


@dataclass(frozen=True)
class Poset:
    """A finite collection quotiented by an equivalence, ordered by a preorder."""

    classes: tuple[PosetClass, ...]
    order: frozenset[tuple[int, int]]
    labels: tuple[str, ...] = ()

    def __len__(self) -> int:
        return len(self.classes)

    def leq(self, i: int, j: int) -> bool:
        return (i, j) in self.order

    def class_of(self, member: int) -> int:
        for index, cls in enumerate(self.classes):
            if member in cls.members:
                return index
        raise InputError(f"Index {member!r} is not in the collection.")

    def hasse(self) -> list[tuple[int, int]]:
        """The cover relation of the order."""

        n = len(self.classes)
        edges = []
        for i in range(n):
            for j in range(n):
                if i == j or not self.leq(i, j):
                    continue
                if not any(k not in (i, j) and self.leq(i, k) and self.leq(k, j) for k in range(n)):
                    edges.append((i, j))
        return edges


def build_poset(
    collection: Sequence[Structure],
    equivalent: Callable[[Structure, Structure], bool],
    below: Callable[[Structure, Structure], bool],
    represent: Callable[[Structure], tuple[Structure, str]],
    labels: Sequence[str] = (),
) -> Poset:
    """Quotient ``collection`` by ``equivalent`` and order the classes by ``below``.

    Classes keep the order of first appearance. Classes whose representatives
    share a key are merged.
    """

    groups: list[list[int]] = []
    for index, structure in enumerate(collection):
        for group in groups:
            if equivalent(collection[group[0]], structure):
                group.append(index)
                break
        else:
            groups.append([index])

    classes: list[PosetClass] = []
    for group in groups:
        representative, key = represent(collection[group[0]])
        for i, existing in enumerate(classes):
            if existing.key == key:
                classes[i] = PosetClass(tuple(sorted(existing.members + tuple(group))), existing.representative, key)
                break
        else:
            classes.append(PosetClass(tuple(group), representative, key))

    order = frozenset(
        (i, j)
        for i, left in enumerate(classes)
        for j, right in enumerate(classes)
        if i == j or below(left.representative, right.representative)
    )
    return Poset(tuple(classes), order, tuple(labels))


def quotient_poset(
    collection: Sequence[Structure],
    pinned: Iterable[str] = (),
    labels: Sequence[str] = (),
    budget: SearchBudget | None = None,
) -> Poset:
    """Quotient ``collection`` by hom-equivalence over ``pinned``, ordered by ``->``."""

    pinned = tuple(sorted(set(pinned)))
    if collection:
        require_same_vocabulary(*collection)

    def represent(structure: Structure) -> tuple[Structure, str]:
        result = core(structure, pinned, budget=budget)
        return result, canonical_key(pin(result, pinned))

    return build_poset(
        collection,
        lambda a, b: hom_equivalent(a, b, pinned, budget),
        lambda a, b: maps_to(a, b, pinned, budget),
        represent,
        labels,
    )
