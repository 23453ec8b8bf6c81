from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Iterable, Sequence

from .constants import PP_SIZE_CAP
from .cores import Poset, build_poset, core, quotient_poset
from .exceptions import MorphismError, NonCommutingSquare, NotParallel
from .formats import canonical_key
from .games import k_hom, k_hom_equivalent
from .homsearch import (
    NotFound,
    SearchBudget,
    SearchResult,
    find_all_homomorphisms,
    find_homomorphism,
    hom_equivalent,
    require_complete,
)
from .logic import canonical_sentence, format_formula, separating_test
from .structures import Morphism, Structure, copair, initial_morphism, require_same_vocabulary

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class LiftingProblem:
    """A commutative square ``p f = g i``; a lift is ``h: B -> X`` with ``h i = f`` and ``p h = g``.

    Parameters:
        i (Morphism): the left map ``A -> B``.
        p (Morphism): the right map ``X -> Y``.
        f (Morphism): the top map ``A -> X``.
        g (Morphism): the bottom map ``B -> Y``.
    """

    i: Morphism
    p: Morphism
    f: Morphism
    g: Morphism

    def __post_init__(self) -> None:
        i, p, f, g = self.i, self.p, self.f, self.g
        if i.source != f.source or i.target != g.source or p.source != f.target or p.target != g.target:
            raise MorphismError("Lifting problem maps do not form a square.")
        for a in i.source.universe:
            if p(f(a)) != g(i(a)):
                raise NonCommutingSquare(f"Square does not commute at {a!r}: {p(f(a))!r} != {g(i(a))!r}.")


def find_lift(problem: LiftingProblem, budget: SearchBudget | None = None) -> SearchResult:
    i, p, f, g = problem.i, problem.p, problem.f, problem.g
    pins: dict[str, str] = {}
    for a in i.source.universe:
        if pins.setdefault(i(a), f(a)) != f(a):
            return NotFound()
    candidates = {b: [x for x in p.source.universe if p(x) == g(b)] for b in g.source.universe}
    return find_homomorphism(g.source, p.source, pins, budget, candidates=candidates)


def is_weak_equivalence(f: Morphism, budget: SearchBudget | None = None) -> bool:
    """Whether the endpoints of ``f`` are hom-equivalent (constants are always fixed)."""

    return hom_equivalent(f.source, f.target, budget=budget)


def find_right_inverse(f: Morphism, budget: SearchBudget | None = None) -> SearchResult:
    """A section ``s`` with ``f s = id``."""

    candidates = {y: [a for a in f.source.universe if f(a) == y] for y in f.target.universe}
    return find_homomorphism(f.target, f.source, budget=budget, candidates=candidates)


def find_left_inverse(f: Morphism, budget: SearchBudget | None = None) -> SearchResult:
    """A retraction ``r`` with ``r f = id``."""

    if not f.is_injective():
        return NotFound()
    return find_homomorphism(f.target, f.source, {f(a): a for a in f.source.universe}, budget)


def is_acyclic_fibration(f: Morphism, budget: SearchBudget | None = None) -> bool:
    """Whether ``f`` is a retraction, i.e. has a section."""

    return bool(require_complete(find_right_inverse(f, budget)))


def is_acyclic_fibration_by_lifting(
    f: Morphism,
    objects: Sequence[Structure] | None = None,
    budget: SearchBudget | None = None,
) -> bool:
    """Whether ``f`` lifts against the initial inclusion of every structure in ``objects``.

    ``objects`` defaults to the target of ``f``, which already decides the property.
    """

    vocabulary = require_same_vocabulary(f.source, f.target)
    base = initial_morphism(vocabulary, f.source)
    for structure in objects if objects is not None else (f.target,):
        inclusion = initial_morphism(vocabulary, structure)
        for g in find_all_homomorphisms(structure, f.target, budget=budget):
            lift = require_complete(find_lift(LiftingProblem(inclusion, f, base, g), budget))
            if not lift:
                logger.debug("no lift for %r against %r", g, structure)
                return False
    return True


def is_section(f: Morphism, budget: SearchBudget | None = None) -> bool:
    return bool(require_complete(find_left_inverse(f, budget)))


def _require_parallel(f: Morphism, g: Morphism) -> None:
    if f.source != g.source or f.target != g.target:
        raise NotParallel("Morphisms are not parallel.")


def left_homotopy(f: Morphism, g: Morphism) -> Morphism:
    """The map ``A + A -> X`` restricting to ``f`` and ``g`` on the two copies."""

    _require_parallel(f, g)
    return copair(f, g)


def homotopic(f: Morphism, g: Morphism) -> bool:
    """Parallel morphisms are always homotopic; :func:`left_homotopy` is the witness."""

    left_homotopy(f, g)
    return True


def is_weak_k_equivalence(f: Morphism, k: int, budget: SearchBudget | None = None) -> bool:
    return is_weak_equivalence(f, budget) and k_hom_equivalent(f.source, f.target, k, budget=budget)


@dataclass(frozen=True)
class MorphismClassification:
    weak_equivalence: bool
    acyclic_fibration: bool
    section: bool

    @property
    def retraction(self) -> bool:
        return self.acyclic_fibration


def classify_morphism(f: Morphism, budget: SearchBudget | None = None) -> MorphismClassification:
    return MorphismClassification(
        weak_equivalence=is_weak_equivalence(f, budget),
        acyclic_fibration=is_acyclic_fibration(f, budget),
        section=is_section(f, budget),
    )


def homotopy_category(
    collection: Sequence[Structure],
    pinned: Iterable[str] = (),
    labels: Sequence[str] = (),
    budget: SearchBudget | None = None,
) -> Poset:
    """The hom-equivalence quotient of ``collection``."""

    return quotient_poset(collection, pinned, labels, budget)


def k_homotopy_category(
    collection: Sequence[Structure],
    k: int,
    labels: Sequence[str] = (),
    budget: SearchBudget | None = None,
) -> Poset:
    """The quotient of ``collection`` by ``<->^k``, ordered by ``->^k``."""

    if collection:
        require_same_vocabulary(*collection)

    def represent(structure: Structure) -> tuple[Structure, str]:
        result = core(structure, budget=budget)
        return result, canonical_key(result)

    return build_poset(
        collection,
        lambda a, b: k_hom_equivalent(a, b, k, budget=budget),
        lambda a, b: k_hom(a, b, k, budget=budget),
        represent,
        labels,
    )


@dataclass(frozen=True)
class Theorem3Report:
    """The two sides of the comparison between ``<->^k`` and pp agreement.

    ``game_side`` is exact; ``test_side`` is bounded by ``size_cap``.
    """

    k: int
    size_cap: int
    game_side: bool
    test_side: bool
    separating: tuple[str, ...] = ()

    @property
    def agree(self) -> bool:
        return self.game_side == self.test_side


def theorem3_verify(
    left: Structure,
    right: Structure,
    k: int,
    size_cap: int = PP_SIZE_CAP,
    budget: SearchBudget | None = None,
) -> Theorem3Report:
    """Compare ``k``-hom-equivalence over the constants with agreement on the pp tests of rank ``k``."""

    game_side = k_hom_equivalent(left, right, k, budget=budget)
    separating = [
        test
        for test in (
            separating_test(left, right, k, size_cap=size_cap, budget=budget),
            separating_test(right, left, k, size_cap=size_cap, budget=budget),
        )
        if test is not None
    ]
    return Theorem3Report(
        k=k,
        size_cap=size_cap,
        game_side=game_side,
        test_side=not separating,
        separating=tuple(format_formula(canonical_sentence(test)) for test in separating),
    )
