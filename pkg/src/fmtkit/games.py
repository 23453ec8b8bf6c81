from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass
from typing import FrozenSet, Iterable, Sequence, Tuple

from typing_extensions import TypeAlias

from .constants import PP_SIZE_CAP
from .cores import core
from .exceptions import InputError
from .homsearch import BudgetMeter, SearchBudget, maps_to
from .logic import enumerate_pp_tests
from .structures import (
    Structure,
    coproduct,
    free_term_structure,
    pin,
    require_elements,
    require_same_vocabulary,
    unpin,
)

logger = logging.getLogger(__name__)

Position: TypeAlias = FrozenSet[Tuple[str, str]]


def _start(left: Structure, left_tuple: Sequence[str], right: Structure, right_tuple: Sequence[str]) -> Position:
    vocabulary = require_same_vocabulary(left, right)
    if len(left_tuple) != len(right_tuple):
        raise InputError(f"Pebbled tuples differ in length: {len(left_tuple)} and {len(right_tuple)}.")
    pairs = set(zip(require_elements(left, left_tuple), require_elements(right, right_tuple)))
    pairs.update((left.constant(c), right.constant(c)) for c in vocabulary.constants)
    return frozenset(pairs)


class _Game:
    """Shared memoized recursion over pebble positions."""

    def __init__(self, left: Structure, right: Structure, budget: SearchBudget | None) -> None:
        self.left = left
        self.right = right
        self.meter = BudgetMeter(budget)
        self.memo: dict[tuple[Position, int], bool] = {}

    def condition(self, position: Position) -> bool:
        raise NotImplementedError

    def replies(self, position: Position, rounds: int) -> bool:
        raise NotImplementedError

    def wins(self, position: Position, rounds: int) -> bool:
        """Whether the duplicator survives ``rounds`` more rounds from ``position``."""

        key = (position, rounds)
        if key in self.memo:
            return self.memo[key]
        self.meter.tick()
        result = self.condition(position) and (rounds == 0 or self.replies(position, rounds))
        self.memo[key] = result
        return result


class EFGame(_Game):
    """The Ehrenfeucht-Fraisse game; positions must stay partial isomorphisms."""

    def condition(self, position: Position) -> bool:
        forward: dict[str, str] = {}
        backward: dict[str, str] = {}
        for a, b in position:
            if forward.setdefault(a, b) != b or backward.setdefault(b, a) != a:
                return False
        for name in self.left.vocabulary.relation_names:
            image = {tuple(forward[a] for a in t) for t in self.left.relation(name) if all(a in forward for a in t)}
            restricted = {t for t in self.right.relation(name) if all(b in backward for b in t)}
            if image != restricted:
                return False
        return True

    def replies(self, position: Position, rounds: int) -> bool:
        played_left = {a for a, _ in position}
        played_right = {b for _, b in position}
        for a in self.left.universe:
            if a not in played_left and not any(self.wins(position | {(a, b)}, rounds - 1) for b in self.right.universe):
                return False
        for b in self.right.universe:
            if b not in played_right and not any(self.wins(position | {(a, b)}, rounds - 1) for a in self.left.universe):
                return False
        return True


class ExistentialGame(_Game):
    """The one-sided game: the spoiler plays in the left structure only and
    positions must stay partial homomorphisms."""

    def condition(self, position: Position) -> bool:
        forward: dict[str, str] = {}
        for a, b in position:
            if forward.setdefault(a, b) != b:
                return False
        for name in self.left.vocabulary.relation_names:
            tuples = self.right.relation(name)
            for t in self.left.relation(name):
                if all(a in forward for a in t) and tuple(forward[a] for a in t) not in tuples:
                    return False
        return True

    def replies(self, position: Position, rounds: int) -> bool:
        played = {a for a, _ in position}
        return all(
            any(self.wins(position | {(a, b)}, rounds - 1) for b in self.right.universe)
            for a in self.left.universe
            if a not in played
        )


def ef_equivalent(
    left: Structure,
    left_tuple: Sequence[str],
    right: Structure,
    right_tuple: Sequence[str],
    rounds: int,
    budget: SearchBudget | None = None,
) -> bool:
    """Decide whether the duplicator wins the ``rounds``-round EF game from the given tuples."""

    game = EFGame(left, right, budget)
    result = game.wins(_start(left, left_tuple, right, right_tuple), rounds)
    logger.debug("EF game with %d rounds: %s after %d positions", rounds, result, game.meter.nodes)
    return result


def k_hom_pinned(
    left: Structure,
    left_tuple: Sequence[str],
    right: Structure,
    right_tuple: Sequence[str],
    k: int,
    budget: SearchBudget | None = None,
) -> bool:
    """Decide the ``k``-round existential game from the given tuples."""

    game = ExistentialGame(left, right, budget)
    return game.wins(_start(left, left_tuple, right, right_tuple), k)


def k_hom(
    left: Structure,
    right: Structure,
    k: int,
    pinned: Iterable[str] = (),
    budget: SearchBudget | None = None,
) -> bool:
    """Decide ``left ->^k_X right``: every pp test of tree-depth at most ``k`` over
    ``X`` that maps into ``left`` maps into ``right``."""

    pinned = tuple(sorted(set(pinned)))
    return k_hom_pinned(left, pinned, right, pinned, k, budget)


def k_hom_equivalent(
    left: Structure,
    right: Structure,
    k: int,
    pinned: Iterable[str] = (),
    budget: SearchBudget | None = None,
) -> bool:
    pinned = tuple(pinned)
    return k_hom(left, right, k, pinned, budget) and k_hom(right, left, k, pinned, budget)


def k_core(
    structure: Structure,
    k: int,
    pinned: Iterable[str] = (),
    pool: Sequence[Structure] | None = None,
    *,
    size_cap: int = PP_SIZE_CAP,
    budget: SearchBudget | None = None,
) -> Structure:
    """The core of the amalgam over ``pinned`` of all pool members mapping into ``structure``.

    Parameters:
        structure (Structure):
            The structure.
        k (int):
            The tree-depth bound of the pool.
        pinned (Iterable[str], default=()):
            The common elements, kept under their names.
        pool (Sequence[Structure] | None, default=None):
            Structures over the vocabulary expanded by ``pinned``; defaults to
            :func:`enumerate_pp_tests` up to ``size_cap``.
        size_cap (int, default=PP_SIZE_CAP):
            The size cap of the default pool.
        budget (SearchBudget | None, default=None):
            Limits for each homomorphism search.
    """

    pinned = tuple(sorted(set(pinned)))
    expanded = pin(structure, pinned)
    if pool is None:
        pool = enumerate_pp_tests(expanded.vocabulary, k, size_cap)
    result = free_term_structure(expanded.vocabulary)
    for member in pool:
        if maps_to(member, expanded, budget=budget):
            result = coproduct(result, member)
    return unpin(core(result, budget=budget), structure.vocabulary, pinned)


def _pinned_equivalent(
    left: Structure,
    left_tuple: Sequence[str],
    right: Structure,
    right_tuple: Sequence[str],
    rounds: int,
    budget: SearchBudget | None,
) -> bool:
    return k_hom_pinned(left, left_tuple, right, right_tuple, rounds, budget) and k_hom_pinned(
        right, right_tuple, left, left_tuple, rounds, budget
    )


def k_extendable(
    structure: Structure,
    k: int,
    pool: Sequence[Structure],
    *,
    strict: bool = False,
    budget: SearchBudget | None = None,
) -> bool:
    """Decide extendability of ``structure`` against the structures of ``pool``.

    For every ``X`` of size below ``k`` and every designated copy of ``X`` in a
    pool member ``B`` with ``(A, X) <->^(k-|X|) (B, X')``, every ``b`` of ``B``
    must be answered by some ``a`` with ``(A, X a) <->^(k-|X|-1) (B, X' b)``.
    With ``strict`` the answer is only required to keep ``(A, X)`` and
    ``(B, X')`` equivalent for one round fewer, independently of ``a`` and ``b``.
    """

    for size in range(k):
        rounds = k - size
        for chosen in itertools.combinations(structure.universe, size):
            for member in pool:
                for image in itertools.permutations(member.universe, size):
                    if not _pinned_equivalent(structure, chosen, member, image, rounds, budget):
                        continue
                    if strict:
                        if member.universe and not (
                            structure.universe
                            and _pinned_equivalent(structure, chosen, member, image, rounds - 1, budget)
                        ):
                            return False
                        continue
                    for b in member.universe:
                        if not any(
                            _pinned_equivalent(structure, chosen + (a,), member, image + (b,), rounds - 1, budget)
                            for a in structure.universe
                        ):
                            logger.debug("not %d-extendable: X=%r, b=%r unanswered", k, chosen, b)
                            return False
    return True


@dataclass(frozen=True)
class ExtensionReport:
    """The premise and conclusion of the extension transfer on one pair.

    Parameters:
        left_extendable (bool): whether the left structure is extendable.
        right_extendable (bool): whether the right structure is extendable.
        k_hom_equivalent (bool): whether the structures are ``k``-hom-equivalent.
        ef_equivalent (bool): whether they agree on all sentences of rank ``k``.
    """

    left_extendable: bool
    right_extendable: bool
    k_hom_equivalent: bool
    ef_equivalent: bool

    @property
    def premise(self) -> bool:
        return self.left_extendable and self.right_extendable and self.k_hom_equivalent

    @property
    def holds(self) -> bool:
        return not self.premise or self.ef_equivalent


def lemma29_check(
    left: Structure,
    right: Structure,
    k: int,
    pool: Sequence[Structure],
    *,
    strict: bool = False,
    budget: SearchBudget | None = None,
) -> ExtensionReport:
    """Check that extendable ``k``-hom-equivalent structures are ``k``-EF-equivalent."""

    return ExtensionReport(
        left_extendable=k_extendable(left, k, pool, strict=strict, budget=budget),
        right_extendable=k_extendable(right, k, pool, strict=strict, budget=budget),
        k_hom_equivalent=k_hom_equivalent(left, right, k, budget=budget),
        ef_equivalent=ef_equivalent(left, (), right, (), k, budget),
    )
