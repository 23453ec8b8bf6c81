"""Exhaustive cross-checks over all small structures of a vocabulary.

Each check turns the enumerated structures into a list of cases; every case
is run independently and reports its counterexamples. Cases are run in
order, optionally on a process pool, and merged in case order.
"""

from __future__ import annotations

import enum
import functools
import itertools
import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Any, Callable, Iterator, Sequence

from .constants import K_RANGE, SWEEP_ENUMERATION_CAP, SWEEP_MAX_SIZE
from .cores import core, is_core
from .enumeration import enumerate_structures
from .formats import structure_to_document
from .gaifman import tree_depth_over
from .games import ExtensionReport, ef_equivalent, k_extendable, k_hom, k_hom_equivalent
from .homotopy import is_acyclic_fibration, is_acyclic_fibration_by_lifting, is_weak_equivalence, theorem3_verify
from .homsearch import SearchBudget, are_isomorphic, find_all_homomorphisms, find_retraction, maps_to
from .logic import canonical_sentence, canonical_structure, evaluate, preserves_pp, quantifier_rank
from .structures import (
    Structure,
    Vocabulary,
    coequalizer,
    coproduct_injections,
    equalizer,
    pair_element,
    product_projections,
)

logger = logging.getLogger(__name__)

MAX_RECORDED = 20


class Check(enum.Enum):
    LEMMA28 = "lemma28"
    THEOREM2 = "theorem2"
    THEOREM3 = "theorem3"
    LEMMA29 = "lemma29"
    UNIVERSAL = "universal-properties"
    CORES = "cores"
    EF = "ef"
    CHANDRA_MERLIN = "chandra-merlin"


@dataclass(frozen=True)
class Counterexample:
    case: str
    details: dict[str, Any] = field(default_factory=dict)


@dataclass(frozen=True)
class SweepReport:
    check: Check
    vocabulary: Vocabulary
    max_size: int
    ks: tuple[int, ...]
    structures: int
    cases: int
    counterexamples: tuple[Counterexample, ...]
    failures: int

    @property
    def passed(self) -> bool:
        return self.failures == 0


@dataclass(frozen=True)
class _Case:
    check: Check
    structures: tuple[Structure, ...]
    indices: tuple[int, ...]
    k: int
    max_size: int
    budget: SearchBudget | None

    def label(self) -> str:
        names = ",".join(f"#{i}" for i in self.indices)
        return f"{self.check.value}[{names}" + (f"; k={self.k}]" if self.k else "]")

    def fail(self, **details: Any) -> Counterexample:
        documents = {f"structure_{n}": structure_to_document(self.structures[i]) for n, i in enumerate(self.indices)}
        return Counterexample(self.label(), {**documents, **details})

    # Workers receive the structures once, through _install_structures.
    def __reduce__(self) -> tuple:
        return (_restore_case, (self.check, self.indices, self.k, self.max_size, self.budget))


_WORKER_STRUCTURES: tuple[Structure, ...] = ()


def _install_structures(structures: tuple[Structure, ...]) -> None:
    global _WORKER_STRUCTURES
    _WORKER_STRUCTURES = structures


def _restore_case(check: Check, indices: tuple[int, ...], k: int, max_size: int, budget: SearchBudget | None) -> _Case:
    return _Case(check, _WORKER_STRUCTURES, indices, k, max_size, budget)


def _cases(
    check: Check, structures: tuple[Structure, ...], ks: Sequence[int], max_size: int, budget: SearchBudget | None
) -> Iterator[_Case]:
    n = len(structures)
    if check in (Check.LEMMA28, Check.THEOREM2, Check.UNIVERSAL):
        pairs: Iterator[tuple[int, ...]] = itertools.product(range(n), repeat=2)
    elif check in (Check.THEOREM3, Check.LEMMA29, Check.EF):
        pairs = itertools.combinations_with_replacement(range(n), 2)
    else:
        pairs = ((i,) for i in range(n))
    uses_k = check in (Check.LEMMA28, Check.THEOREM3, Check.LEMMA29, Check.EF)
    for indices in pairs:
        for k in ks if uses_k else (0,):
            yield _Case(check, structures, indices, k, max_size, budget)


def _lemma28(case: _Case) -> list[Counterexample]:
    a, b = (case.structures[i] for i in case.indices)
    game = k_hom(a, b, case.k, budget=case.budget)
    tests = preserves_pp(a, b, case.k, size_cap=case.max_size, budget=case.budget)
    return [] if game == tests else [case.fail(game=game, tests=tests)]


def _theorem3(case: _Case) -> list[Counterexample]:
    a, b = (case.structures[i] for i in case.indices)
    report = theorem3_verify(a, b, case.k, size_cap=case.max_size, budget=case.budget)
    if report.agree:
        return []
    return [case.fail(game_side=report.game_side, test_side=report.test_side, separating=list(report.separating))]


def _theorem2(case: _Case) -> list[Counterexample]:
    a, b = (case.structures[i] for i in case.indices)
    found = []
    for f in find_all_homomorphisms(a, b, budget=case.budget):
        by_section = is_acyclic_fibration(f, case.budget)
        by_lifting = is_acyclic_fibration_by_lifting(f, case.structures, case.budget)
        if by_section != by_lifting:
            found.append(case.fail(map=dict(f.items()), section=by_section, lifting=by_lifting))
        elif by_section and not is_weak_equivalence(f, case.budget):
            found.append(case.fail(map=dict(f.items()), reason="retraction that is not a weak equivalence"))
    return found


@functools.lru_cache(maxsize=None)
def _extendable(structure: Structure, k: int, pool: tuple[Structure, ...], budget: SearchBudget | None) -> bool:
    return k_extendable(structure, k, pool, budget=budget)


def _lemma29(case: _Case) -> list[Counterexample]:
    a, b = (case.structures[i] for i in case.indices)
    report = ExtensionReport(
        left_extendable=_extendable(a, case.k, case.structures, case.budget),
        right_extendable=_extendable(b, case.k, case.structures, case.budget),
        k_hom_equivalent=k_hom_equivalent(a, b, case.k, budget=case.budget),
        ef_equivalent=ef_equivalent(a, (), b, (), case.k, case.budget),
    )
    if report.holds:
        return []
    return [case.fail(premise=report.premise, ef_equivalent=report.ef_equivalent)]


def _count_mediating(source: Structure, target: Structure, pins: dict[str, str], budget) -> int:
    return len(find_all_homomorphisms(source, target, pins, budget=budget))


def _universal(case: _Case) -> list[Counterexample]:
    a, b = (case.structures[i] for i in case.indices)
    budget = case.budget
    found: list[Counterexample] = []

    prod, _, _ = product_projections(a, b)
    union, left_in, right_in = coproduct_injections(a, b)
    for d in case.structures:
        into_a = find_all_homomorphisms(d, a, budget=budget)
        into_b = find_all_homomorphisms(d, b, budget=budget)
        for f, g in itertools.product(into_a, into_b):
            pins = {x: pair_element(f(x), g(x)) for x in d.universe}
            if _count_mediating(d, prod, pins, budget) != 1:
                found.append(case.fail(property="product", test=structure_to_document(d)))
        from_a = find_all_homomorphisms(a, d, budget=budget)
        from_b = find_all_homomorphisms(b, d, budget=budget)
        for f, g in itertools.product(from_a, from_b):
            glue: dict[str, str] = {}
            consistent = True
            for inclusion, morphism in ((left_in, f), (right_in, g)):
                for x in morphism.source.universe:
                    consistent &= glue.setdefault(inclusion(x), morphism(x)) == morphism(x)
            if not consistent or _count_mediating(union, d, glue, budget) != 1:
                found.append(case.fail(property="coproduct", test=structure_to_document(d)))

    for f, g in itertools.combinations_with_replacement(find_all_homomorphisms(a, b, budget=budget), 2):
        eq, _ = equalizer(f, g)
        quotient, projection = coequalizer(f, g)
        for d in case.structures:
            for h in find_all_homomorphisms(d, a, budget=budget):
                if all(f(h(x)) == g(h(x)) for x in d.universe):
                    if _count_mediating(d, eq, {x: h(x) for x in d.universe}, budget) != 1:
                        found.append(case.fail(property="equalizer", test=structure_to_document(d)))
            for h in find_all_homomorphisms(b, d, budget=budget):
                if all(h(f(x)) == h(g(x)) for x in a.universe):
                    pins = {projection(y): h(y) for y in b.universe}
                    if _count_mediating(quotient, d, pins, budget) != 1:
                        found.append(case.fail(property="coequalizer", test=structure_to_document(d)))
    return found


def _cores(case: _Case) -> list[Counterexample]:
    (a,) = (case.structures[i] for i in case.indices)
    result = core(a, budget=case.budget)
    reversed_result = core(a, order=list(reversed(a.universe)), budget=case.budget)
    failures = []
    if not is_core(result, budget=case.budget):
        failures.append(case.fail(reason="core is not a core"))
    if not find_retraction(a, result.universe, case.budget):
        failures.append(case.fail(reason="core is not a retract"))
    if not are_isomorphic(result, reversed_result, budget=case.budget):
        failures.append(case.fail(reason="core depends on the element order"))
    return failures


def _ef(case: _Case) -> list[Counterexample]:
    a, b = (case.structures[i] for i in case.indices)
    k, budget = case.k, case.budget
    forward = ef_equivalent(a, (), b, (), k, budget)
    failures = []
    if forward != ef_equivalent(b, (), a, (), k, budget):
        failures.append(case.fail(reason="not symmetric"))
    if ef_equivalent(a, (), b, (), k + 1, budget) and not forward:
        failures.append(case.fail(reason="k+1 rounds do not refine k rounds"))
    if are_isomorphic(a, b, budget=budget) and not forward:
        failures.append(case.fail(reason="isomorphic but distinguished"))
    if not ef_equivalent(a, (), a, (), k, budget):
        failures.append(case.fail(reason="not reflexive"))
    return failures


def _chandra_merlin(case: _Case) -> list[Counterexample]:
    (c,) = (case.structures[i] for i in case.indices)
    sentence = canonical_sentence(c)
    failures = []
    if quantifier_rank(sentence) != tree_depth_over(c, c.constant_elements):
        failures.append(case.fail(reason="rank differs from tree-depth"))
    database = canonical_structure(sentence, c.vocabulary)
    if not (maps_to(database, c, budget=case.budget) and maps_to(c, database, budget=case.budget)):
        failures.append(case.fail(reason="canonical structure of the canonical sentence is not equivalent"))
    for b in case.structures:
        if evaluate(b, sentence) != maps_to(c, b, budget=case.budget):
            failures.append(case.fail(reason="sentence and homomorphism disagree", test=structure_to_document(b)))
    return failures


_RUNNERS: dict[Check, Callable[[_Case], list[Counterexample]]] = {
    Check.LEMMA28: _lemma28,
    Check.THEOREM2: _theorem2,
    Check.THEOREM3: _theorem3,
    Check.LEMMA29: _lemma29,
    Check.UNIVERSAL: _universal,
    Check.CORES: _cores,
    Check.EF: _ef,
    Check.CHANDRA_MERLIN: _chandra_merlin,
}


def run_case(case: _Case) -> list[Counterexample]:
    return _RUNNERS[case.check](case)


def sweep(
    check: Check,
    vocabulary: Vocabulary,
    max_size: int = SWEEP_MAX_SIZE,
    ks: Sequence[int] = K_RANGE,
    *,
    jobs: int = 1,
    budget: SearchBudget | None = None,
) -> SweepReport:
    """Run ``check`` on every case built from the structures with at most ``max_size`` elements.

    Parameters:
        check (Check):
            The cross-check to run.
        vocabulary (Vocabulary):
            The vocabulary to enumerate.
        max_size (int, default=SWEEP_MAX_SIZE):
            The largest universe size, also the size cap of the pp tests and
            the extendability pool.
        ks (Sequence[int], default=K_RANGE):
            The ranks to check, for checks that take one.
        jobs (int, default=1):
            Worker processes; 1 runs in this process.
        budget (SearchBudget | None, default=None):
            Limits for every search.
    """

    structures = enumerate_structures(vocabulary, max_size, cap=SWEEP_ENUMERATION_CAP)
    cases = list(_cases(check, structures, tuple(ks), max_size, budget))
    logger.info("sweep %s over %s: %d structures, %d cases", check.value, vocabulary, len(structures), len(cases))
    if jobs > 1 and len(cases) > 1:
        with ProcessPoolExecutor(max_workers=jobs, initializer=_install_structures, initargs=(structures,)) as pool:
            results = list(pool.map(run_case, cases, chunksize=max(1, len(cases) // (4 * jobs))))
    else:
        results = [run_case(case) for case in cases]
    failures = [c for found in results for c in found]
    return SweepReport(
        check=check,
        vocabulary=vocabulary,
        max_size=max_size,
        ks=tuple(ks),
        structures=len(structures),
        cases=len(cases),
        counterexamples=tuple(failures[:MAX_RECORDED]),
        failures=len(failures),
    )
