from __future__ import annotations

import enum
import logging
from dataclasses import dataclass
from typing import Mapping, Sequence, Union

import networkx as nx

from .exceptions import CapExceeded, InputError
from .formats import canonical_key
from .gaifman import ball, neighborhood
from .games import ef_equivalent, k_hom_equivalent
from .homsearch import NotFound, SearchBudget, are_isomorphic
from .structures import Structure, require_elements, require_same_vocabulary

logger = logging.getLogger(__name__)


class EquivalenceKind(enum.Enum):
    ISO = "iso"
    EF = "ef"
    KHOM = "khom"


@dataclass(frozen=True)
class Equivalence:
    """A relation used to compare neighborhoods: ``iso``, ``ef:L`` or ``khom:L``."""

    kind: EquivalenceKind
    rank: int = 0

    @classmethod
    def parse(cls, text: str) -> Equivalence:
        name, _, rank = text.partition(":")
        try:
            kind = EquivalenceKind(name)
        except ValueError:
            raise InputError(f"Unknown equivalence {text!r}; expected iso, ef:L or khom:L.") from None
        if kind is EquivalenceKind.ISO:
            if rank:
                raise InputError(f"Equivalence 'iso' takes no rank, got {text!r}.")
            return cls(kind)
        if not rank.isdigit():
            raise InputError(f"Equivalence {name!r} needs a rank, as in '{name}:2'; got {text!r}.")
        return cls(kind, int(rank))

    def __str__(self) -> str:
        return self.kind.value if self.kind is EquivalenceKind.ISO else f"{self.kind.value}:{self.rank}"

    def holds(self, left: Structure, right: Structure, budget: SearchBudget | None = None) -> bool:
        if left.vocabulary != right.vocabulary:
            return False
        if self.kind is EquivalenceKind.ISO:
            return are_isomorphic(left, right, budget=budget)
        if self.kind is EquivalenceKind.EF:
            return ef_equivalent(left, (), right, (), self.rank, budget)
        return k_hom_equivalent(left, right, self.rank, budget=budget)


def _key(structure: Structure) -> str | None:
    try:
        return canonical_key(structure)
    except CapExceeded:
        return None


def _check_tuples(left_tuple: Sequence[str], right_tuple: Sequence[str]) -> None:
    if len(left_tuple) != len(right_tuple):
        raise InputError(f"Tuples differ in length: {len(left_tuple)} and {len(right_tuple)}.")


def hanf_check(
    left: Structure,
    left_tuple: Sequence[str],
    right: Structure,
    right_tuple: Sequence[str],
    radius: int,
    equivalence: Equivalence,
    budget: SearchBudget | None = None,
) -> Union[Mapping[str, str], NotFound]:
    """Search a bijection ``f`` with ``N(left, left_tuple c) ~ N(right, right_tuple f(c))`` for all ``c``.

    The bijection is a perfect matching of the compatibility graph between
    the two universes; a missing perfect matching proves there is none.
    """

    require_same_vocabulary(left, right)
    _check_tuples(left_tuple, right_tuple)
    require_elements(left, left_tuple)
    require_elements(right, right_tuple)
    if len(left) != len(right):
        return NotFound()

    left_hoods = {c: neighborhood(left, (*left_tuple, c), radius) for c in left.universe}
    right_hoods = {e: neighborhood(right, (*right_tuple, e), radius) for e in right.universe}
    memo: dict[tuple[str, str], bool] = {}

    def compatible(c: str, e: str) -> bool:
        keys = (_key(left_hoods[c]), _key(right_hoods[e]))
        if keys[0] is None or keys[1] is None:
            return equivalence.holds(left_hoods[c], right_hoods[e], budget)
        if keys not in memo:
            memo[keys] = equivalence.holds(left_hoods[c], right_hoods[e], budget)
        return memo[keys]

    graph = nx.Graph()
    top = [("left", c) for c in left.universe]
    graph.add_nodes_from(top)
    graph.add_nodes_from(("right", e) for e in right.universe)
    graph.add_edges_from(
        (("left", c), ("right", e)) for c in left.universe for e in right.universe if compatible(c, e)
    )
    matching = nx.bipartite.hopcroft_karp_matching(graph, top_nodes=top)
    bijection = {c: matching[("left", c)][1] for c in left.universe if ("left", c) in matching}
    logger.debug("Hanf matching covers %d of %d elements", len(bijection), len(left))
    if len(bijection) < len(left):
        return NotFound()
    return dict(sorted(bijection.items()))


def gaifman_check(
    left: Structure,
    left_tuple: Sequence[str],
    right: Structure,
    right_tuple: Sequence[str],
    radius: int,
    equivalence: Equivalence,
    budget: SearchBudget | None = None,
) -> bool:
    """The premise of Gaifman locality: equivalent structures with equivalent tuple neighborhoods."""

    require_same_vocabulary(left, right)
    _check_tuples(left_tuple, right_tuple)
    return equivalence.holds(left, right, budget) and equivalence.holds(
        neighborhood(left, left_tuple, radius), neighborhood(right, right_tuple, radius), budget
    )


def weakly_local_premise(
    structure: Structure,
    left_tuple: Sequence[str],
    right_tuple: Sequence[str],
    radius: int,
    equivalence: Equivalence,
    budget: SearchBudget | None = None,
) -> bool:
    """Disjoint balls around the two tuples with equivalent neighborhoods."""

    _check_tuples(left_tuple, right_tuple)
    if ball(structure, left_tuple, radius) & ball(structure, right_tuple, radius):
        return False
    return equivalence.holds(
        neighborhood(structure, left_tuple, radius), neighborhood(structure, right_tuple, radius), budget
    )


class LocalityKind(enum.Enum):
    HANF = "hanf"
    GAIFMAN = "gaifman"
    WEAK = "weak"


@dataclass(frozen=True)
class LocalityVerdict:
    """A locality implication evaluated on one instance."""

    kind: LocalityKind
    premise: bool
    conclusion: bool
    witness: Mapping[str, str] | None = None

    @property
    def holds(self) -> bool:
        return not self.premise or self.conclusion


def locality_instance(
    kind: LocalityKind,
    left: Structure,
    left_tuple: Sequence[str],
    right: Structure,
    right_tuple: Sequence[str],
    radius: int,
    equivalence: Equivalence,
    rounds: int,
    budget: SearchBudget | None = None,
) -> LocalityVerdict:
    """Evaluate one locality implication with conclusion ``(left, left_tuple) =_rounds (right, right_tuple)``.

    For ``weak`` both tuples are taken in ``left`` and ``right`` is ignored.
    """

    witness = None
    if kind is LocalityKind.HANF:
        found = hanf_check(left, left_tuple, right, right_tuple, radius, equivalence, budget)
        premise = not isinstance(found, NotFound)
        witness = None if isinstance(found, NotFound) else found
    elif kind is LocalityKind.GAIFMAN:
        premise = gaifman_check(left, left_tuple, right, right_tuple, radius, equivalence, budget)
    else:
        right = left
        premise = weakly_local_premise(left, left_tuple, right_tuple, radius, equivalence, budget)
    conclusion = ef_equivalent(left, left_tuple, right, right_tuple, rounds, budget)
    return LocalityVerdict(kind, premise, conclusion, witness)
