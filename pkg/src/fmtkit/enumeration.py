from __future__ import annotations

import functools
import itertools
import logging
from typing import Iterator, Sequence

from .constants import ENUMERATION_CAP
from .exceptions import CapExceeded
from .formats import dumps_structure
from .structures import ElementTuple, Structure, Vocabulary, canonical_form

logger = logging.getLogger(__name__)


def raw_count(vocabulary: Vocabulary, size: int) -> int:
    """The number of labeled structures on ``size`` elements."""

    if size == 0:
        return 0 if vocabulary.constants else 1
    tuples = sum(size**arity for _, arity in vocabulary.relations)
    return 2**tuples * size ** len(vocabulary.constants)


def _subsets(items: Sequence[ElementTuple]) -> Iterator[list[ElementTuple]]:
    for mask in range(2 ** len(items)):
        yield [t for i, t in enumerate(items) if mask >> i & 1]


def _extensions(structure: Structure, size: int) -> Iterator[Structure]:
    """Every structure on ``size`` elements whose restriction to the old ones is ``structure``."""

    vocabulary = structure.vocabulary
    universe = [str(i) for i in range(size)]
    new = universe[-1]
    spaces = [
        [t for t in itertools.product(universe, repeat=arity) if new in t] for _, arity in vocabulary.relations
    ]
    for choice in itertools.product(*(list(_subsets(space)) for space in spaces)):
        relations = {
            name: structure.relation(name).union(added) for name, added in zip(vocabulary.relation_names, choice)
        }
        yield Structure(vocabulary, universe, relations)


def _charge(visited: int, layer: int, cap: int) -> int:
    visited += layer
    if visited > cap:
        raise CapExceeded(f"Enumeration would visit over {cap} candidate structures.")
    return visited


@functools.lru_cache(maxsize=32)
def _enumerate(vocabulary: Vocabulary, max_size: int, min_size: int, cap: int) -> tuple[Structure, ...]:
    # Every structure on n elements extends one on n - 1 elements, so layers of
    # relational classes grow one element at a time; constants are placed last.
    relational = vocabulary.relational()
    layer: set[Structure] = {Structure(relational, [])}
    visited = _charge(0, 1, cap)
    found: dict[str, Structure] = {}
    for size in range(max_size + 1):
        if size > 0:
            new_tuples = sum(size**arity - (size - 1) ** arity for _, arity in relational.relations)
            visited = _charge(visited, len(layer) * 2**new_tuples, cap)
            layer = {canonical_form(s) for previous in layer for s in _extensions(previous, size)}
        if size < min_size or (size == 0 and vocabulary.constants):
            continue
        if vocabulary.constants:
            visited = _charge(visited, len(layer) * size ** len(vocabulary.constants), cap)
            for base in layer:
                for values in itertools.product(base.universe, repeat=len(vocabulary.constants)):
                    form = canonical_form(
                        Structure(vocabulary, base.universe, base.relations, dict(zip(vocabulary.constants, values)))
                    )
                    found.setdefault(dumps_structure(form), form)
        else:
            for form in layer:
                found.setdefault(dumps_structure(form), form)
        logger.debug("enumerated sizes <= %d over %s: %d classes, %d candidates", size, vocabulary, len(found), visited)
    return tuple(found[key] for key in sorted(found, key=lambda key: (len(found[key]), key)))


def enumerate_structures(
    vocabulary: Vocabulary,
    max_size: int,
    *,
    min_size: int = 0,
    cap: int = ENUMERATION_CAP,
) -> tuple[Structure, ...]:
    """All structures over ``vocabulary`` with at most ``max_size`` elements, up to isomorphism.

    Each class is represented by its canonical form. The result is ordered by
    size, then by canonical serialization.

    Parameters:
        vocabulary (Vocabulary):
            The vocabulary.
        max_size (int):
            The largest universe size.
        min_size (int, default=0):
            The smallest universe size.
        cap (int, default=ENUMERATION_CAP):
            The largest number of candidate structures to visit.
    """

    return _enumerate(vocabulary, max_size, min_size, cap)
