"""The ``fmtkit`` command tree.

Global options come before the subcommand::

    fmtkit --format machine core fixtures/P3
    fmtkit khom fixtures/K2 fixtures/PT1 -k 1
"""

from __future__ import annotations

import logging
from dataclasses import asdict
from typing import Any, Sequence

from rich.console import Console
from rich.logging import RichHandler

from .. import __version__
from ..constants import ENUMERATION_CAP, K_RANGE, NODE_LIMIT, PP_SIZE_CAP, SWEEP_MAX_SIZE, TIME_LIMIT_MS
from ..cores import Poset, core_retraction, quotient_poset
from ..enumeration import enumerate_structures
from ..exceptions import FMTKitException, FMTKitSignal, InputError
from ..formats import structure_to_document
from ..gaifman import EliminationTree, ball, elimination_forest, gaifman_graph, graph_without, neighborhood
from ..games import ef_equivalent, k_core, k_extendable, k_hom, lemma29_check
from ..homotopy import (
    LiftingProblem,
    classify_morphism,
    find_lift,
    homotopy_category,
    is_weak_k_equivalence,
    k_homotopy_category,
    theorem3_verify,
)
from ..homsearch import (
    NotFound,
    SearchBudget,
    find_all_homomorphisms,
    find_homomorphism,
    find_retraction,
    require_complete,
)
from ..locality import Equivalence, LocalityKind, gaifman_check, hanf_check, locality_instance, weakly_local_premise
from ..logic import (
    canonical_sentence,
    canonical_structure,
    classify,
    evaluate,
    format_formula,
    parse,
    quantifier_rank,
    query,
)
from ..structures import Morphism, Structure, Vocabulary, coproduct_injections, induced_substructure, product_projections
from ..sweeps import Check, SweepReport, sweep
from .decorators import argument, command, command_tree, count_option, flag_option, help_option, option, version_option
from .reports import OutputFormat, Report, Settings
from .types import (
    ElementList,
    EnumValue,
    EquivalenceType,
    IntRange,
    MorphismFile,
    PinMap,
    StructureDirectory,
    StructureFile,
    VocabularyType,
)

STRUCTURES = "Structures"
HOMOMORPHISMS = "Homomorphisms and cores"
LOGIC = "Logic"
GAMES = "Games and locality"
HOMOTOPY = "Model structure"
SWEEPS = "Sweeps"

_LEVELS = (logging.WARNING, logging.INFO, logging.DEBUG)


def _configure_logging(verbose: int) -> None:
    handler = RichHandler(console=Console(stderr=True), show_path=False)
    logging.basicConfig(level=_LEVELS[min(verbose, 2)], format="%(message)s", handlers=[handler], force=True)


def _map(morphism: Morphism) -> dict[str, str]:
    return dict(sorted(morphism.items()))


def _forest_document(trees: Sequence[EliminationTree]) -> list[dict[str, Any]]:
    return [{"root": tree.root, "children": _forest_document(tree.children)} for tree in trees]


def _poset_document(poset: Poset) -> dict[str, Any]:
    size = sum(len(cls.members) for cls in poset.classes)
    labels = poset.labels or tuple(str(i) for i in range(size))
    return {
        "classes": [
            {"members": [labels[i] for i in cls.members], "representative": structure_to_document(cls.representative)}
            for cls in poset.classes
        ],
        "hasse": [list(edge) for edge in poset.hasse()],
    }


def _sweep_report(name: str, report: SweepReport, settings: Settings) -> Report:
    witness = {
        "structures": report.structures,
        "cases": report.cases,
        "failures": report.failures,
        "counterexamples": [{"case": c.case, "details": c.details} for c in report.counterexamples],
    }
    bounds = settings.bounds(vocabulary=str(report.vocabulary), max_size=report.max_size, ks=list(report.ks))
    return Report(name, report.passed, witness, bounds)


@command_tree("fmtkit", __version__, "Finite model theory workbench.")
@option("--format", type=EnumValue(OutputFormat), default=OutputFormat.TEXT, show_default=True, help="Report format.")
@option("--node-limit", type=IntRange(0), default=NODE_LIMIT, show_default=True, help="Nodes per search.")
@option(
    "--time-limit",
    type=IntRange(0),
    default=TIME_LIMIT_MS,
    show_default=True,
    help="Milliseconds per search; 0 disables the limit.",
)
@count_option("-v", "--verbose", help="Log INFO with -v and DEBUG with -vv.")
@help_option("-h", "--help")
@version_option("--version")
def root(format: OutputFormat, node_limit: int, time_limit: int, verbose: int) -> dict[str, Any]:
    _configure_logging(verbose)
    return {"settings": Settings(format, SearchBudget(node_limit, time_limit), verbose)}


# Structures


@root.register_command(STRUCTURES, "validate")
@command()
@argument("structure", type=StructureFile(), metavar="A")
@help_option("-h", "--help")
def validate_command(structure: Structure, settings: Settings) -> Report:
    """Check a structure file and print its canonical document."""

    return Report("validate", True, structure_to_document(structure))


@root.register_command(STRUCTURES, "enumerate")
@command()
@option("--vocab", type=VocabularyType(), default="E/2", show_default=True, help="Vocabulary as R/N,...;C,...")
@option("--max-size", type=IntRange(0), default=SWEEP_MAX_SIZE, show_default=True, help="Largest universe.")
@help_option("-h", "--help")
def enumerate_command(vocab: Vocabulary, max_size: int, settings: Settings) -> Report:
    """List all structures up to isomorphism."""

    found = enumerate_structures(vocab, max_size)
    witness = [structure_to_document(s) for s in found]
    return Report("enumerate", len(found), witness, settings.bounds(max_size=max_size, cap=ENUMERATION_CAP))


@root.register_command(STRUCTURES, "gaifman")
@command()
@argument("structure", type=StructureFile(), metavar="A")
@help_option("-h", "--help")
def gaifman_command(structure: Structure, settings: Settings) -> Report:
    """Print the Gaifman graph."""

    graph = gaifman_graph(structure)
    verdict = {
        "vertices": sorted(graph.nodes),
        "edges": sorted(sorted(edge) for edge in graph.edges),
    }
    return Report("gaifman", verdict)


@root.register_command(STRUCTURES, "neighborhood")
@command()
@argument("structure", type=StructureFile(), metavar="A")
@option("-d", "--radius", type=IntRange(0), required=True, help="Ball radius.")
@option("--tuple", dest="center", type=ElementList(), required=True, help="The center tuple.")
@help_option("-h", "--help")
def neighborhood_command(structure: Structure, radius: int, center: tuple[str, ...], settings: Settings) -> Report:
    """Print the neighborhood of a tuple, the tuple named by constants."""

    result = neighborhood(structure, center, radius)
    return Report("neighborhood", structure_to_document(result), {"ball": sorted(ball(structure, center, radius))})


@root.register_command(STRUCTURES, "treedepth")
@command()
@argument("structure", type=StructureFile(), metavar="A")
@option("--over", type=ElementList(), default=(), help="Elements deleted first.")
@help_option("-h", "--help")
def treedepth_command(structure: Structure, over: tuple[str, ...], settings: Settings) -> Report:
    """Compute the exact tree-depth of the Gaifman graph."""

    forest = elimination_forest(graph_without(structure, over))
    depth = max((tree.depth for tree in forest), default=0)
    return Report("treedepth", depth, _forest_document(forest))


@root.register_command(STRUCTURES, "product")
@command()
@argument("left", type=StructureFile(), metavar="A")
@argument("right", type=StructureFile(), metavar="B")
@help_option("-h", "--help")
def product_command(left: Structure, right: Structure, settings: Settings) -> Report:
    """Build the product with its projections."""

    result, first, second = product_projections(left, right)
    return Report("product", structure_to_document(result), {"left": _map(first), "right": _map(second)})


@root.register_command(STRUCTURES, "coproduct")
@command()
@argument("left", type=StructureFile(), metavar="A")
@argument("right", type=StructureFile(), metavar="B")
@help_option("-h", "--help")
def coproduct_command(left: Structure, right: Structure, settings: Settings) -> Report:
    """Build the coproduct, glued along the constants, with its injections."""

    result, first, second = coproduct_injections(left, right)
    return Report("coproduct", structure_to_document(result), {"left": _map(first), "right": _map(second)})


# Homomorphisms and cores


@root.register_command(HOMOMORPHISMS, "hom")
@command()
@argument("source", type=StructureFile(), metavar="A")
@argument("target", type=StructureFile(), metavar="B")
@option("--pin", dest="pins", type=PinMap(), default={}, help="Prescribed images.")
@flag_option("--injective", help="Only injective maps.")
@flag_option("--surjective", help="Only surjective maps.")
@flag_option("--all", dest="all_maps", help="List every homomorphism.")
@help_option("-h", "--help")
def hom_command(
    source: Structure,
    target: Structure,
    pins: dict[str, str],
    injective: bool,
    surjective: bool,
    all_maps: bool,
    settings: Settings,
) -> Report:
    """Search homomorphisms from A to B."""

    budget = settings.budget
    if all_maps:
        found = [
            h
            for h in find_all_homomorphisms(source, target, pins, budget=budget)
            if (h.is_injective() or not injective) and (h.is_surjective() or not surjective)
        ]
        return Report("hom", bool(found), [_map(h) for h in found], settings.bounds(cap=ENUMERATION_CAP))
    result = require_complete(
        find_homomorphism(source, target, pins, budget, injective=injective, surjective=surjective)
    )
    return Report("hom", bool(result), _map(result) if result else None, settings.bounds())


@root.register_command(HOMOMORPHISMS, "retract")
@command()
@argument("structure", type=StructureFile(), metavar="A")
@option("--onto", type=ElementList(), required=True, help="The elements to retract onto.")
@help_option("-h", "--help")
def retract_command(structure: Structure, onto: tuple[str, ...], settings: Settings) -> Report:
    """Search a retraction onto a set of elements."""

    result = require_complete(find_retraction(structure, onto, settings.budget))
    return Report("retract", bool(result), _map(result) if result else None, settings.bounds())


@root.register_command(HOMOMORPHISMS, "core")
@command()
@argument("structure", type=StructureFile(), metavar="A")
@option("--over", type=ElementList(), default=(), help="Elements every endomorphism fixes.")
@help_option("-h", "--help")
def core_command(structure: Structure, over: tuple[str, ...], settings: Settings) -> Report:
    """Compute the core and a retraction onto it."""

    retraction = core_retraction(structure, over, settings.budget)
    result = induced_substructure(structure, retraction.image())
    return Report("core", structure_to_document(result), _map(retraction), settings.bounds())


@root.register_command(HOMOMORPHISMS, "poset")
@command()
@argument("directory", type=StructureDirectory(), metavar="DIR")
@option("--over", type=ElementList(), default=(), help="Elements fixed by every homomorphism.")
@help_option("-h", "--help")
def poset_command(directory: tuple[tuple[str, ...], tuple[Structure, ...]], over: tuple[str, ...], settings: Settings) -> Report:
    """Quotient the structures of a directory by hom-equivalence."""

    labels, structures = directory
    poset = quotient_poset(structures, over, labels, settings.budget)
    return Report("poset", _poset_document(poset), None, settings.bounds())


# Logic


@root.register_command(LOGIC, "eval")
@command()
@argument("structure", type=StructureFile(), metavar="A")
@argument("formula", metavar="FORMULA")
@option("--assign", type=PinMap(), default={}, help="Values of the free variables.")
@help_option("-h", "--help")
def eval_command(structure: Structure, formula: str, assign: dict[str, str], settings: Settings) -> Report:
    """Decide whether a formula holds."""

    parsed = parse(formula, structure.vocabulary)
    return Report("eval", evaluate(structure, parsed, assign), {"formula": format_formula(parsed)})


@root.register_command(LOGIC, "query")
@command()
@argument("structure", type=StructureFile(), metavar="A")
@argument("formula", metavar="FORMULA")
@option("--vars", dest="variables", type=ElementList(), default=(), help="The answer variables, in order.")
@help_option("-h", "--help")
def query_command(structure: Structure, formula: str, variables: tuple[str, ...], settings: Settings) -> Report:
    """List the tuples satisfying a formula."""

    parsed = parse(formula, structure.vocabulary)
    answers = sorted(query(structure, parsed, variables))
    return Report("query", [list(t) for t in answers], {"variables": list(variables)})


@root.register_command(LOGIC, "qr")
@command()
@argument("formula", metavar="FORMULA")
@help_option("-h", "--help")
def qr_command(formula: str, settings: Settings) -> Report:
    """Print the quantifier rank."""

    return Report("qr", quantifier_rank(parse(formula)))


@root.register_command(LOGIC, "classify")
@command()
@argument("formula", metavar="FORMULA")
@help_option("-h", "--help")
def classify_command(formula: str, settings: Settings) -> Report:
    """Classify as primitive-positive, existential-positive or general."""

    return Report("classify", classify(parse(formula)).value)


@root.register_command(LOGIC, "canonical-structure")
@command()
@argument("formula", metavar="FORMULA")
@option("--vocab", type=VocabularyType(), help="Vocabulary; inferred from the formula by default.")
@help_option("-h", "--help")
def canonical_structure_command(formula: str, vocab: Vocabulary | None, settings: Settings) -> Report:
    """Build the canonical structure of a pp sentence."""

    parsed = parse(formula, vocab)
    return Report("canonical-structure", structure_to_document(canonical_structure(parsed, vocab)))


@root.register_command(LOGIC, "canonical-sentence")
@command()
@argument("structure", type=StructureFile(), metavar="C")
@option("--over", type=ElementList(), default=(), help="Elements left free.")
@help_option("-h", "--help")
def canonical_sentence_command(structure: Structure, over: tuple[str, ...], settings: Settings) -> Report:
    """Build a pp sentence of minimal quantifier rank describing a structure."""

    sentence = canonical_sentence(structure, over)
    return Report("canonical-sentence", format_formula(sentence), {"quantifier_rank": quantifier_rank(sentence)})


# Games and locality


@root.register_command(GAMES, "ef")
@command()
@argument("left", type=StructureFile(), metavar="A")
@argument("right", type=StructureFile(), metavar="B")
@option("-k", type=IntRange(0), required=True, help="Rounds.")
@option("--tuple-a", type=ElementList(), default=(), help="Pebbled tuple in A.")
@option("--tuple-b", type=ElementList(), default=(), help="Pebbled tuple in B.")
@help_option("-h", "--help")
def ef_command(
    left: Structure, right: Structure, k: int, tuple_a: tuple[str, ...], tuple_b: tuple[str, ...], settings: Settings
) -> Report:
    """Decide the Ehrenfeucht-Fraisse game."""

    verdict = ef_equivalent(left, tuple_a, right, tuple_b, k, settings.budget)
    return Report("ef", verdict, None, settings.bounds(rounds=k))


@root.register_command(GAMES, "khom")
@command()
@argument("left", type=StructureFile(), metavar="A")
@argument("right", type=StructureFile(), metavar="B")
@option("-k", type=IntRange(0), required=True, help="Rounds.")
@option("--over", type=ElementList(), default=(), help="Common elements kept fixed.")
@help_option("-h", "--help")
def khom_command(left: Structure, right: Structure, k: int, over: tuple[str, ...], settings: Settings) -> Report:
    """Decide A ->^k B with the existential game."""

    return Report("khom", k_hom(left, right, k, over, settings.budget), None, settings.bounds(rounds=k))


@root.register_command(GAMES, "kcore")
@command()
@argument("structure", type=StructureFile(), metavar="A")
@option("-k", type=IntRange(0), required=True, help="Tree-depth bound.")
@option("--pool-cap", type=IntRange(0), default=PP_SIZE_CAP, show_default=True, help="Largest pool member.")
@option("--over", type=ElementList(), default=(), help="Elements kept under their names.")
@help_option("-h", "--help")
def kcore_command(structure: Structure, k: int, pool_cap: int, over: tuple[str, ...], settings: Settings) -> Report:
    """Compute the k-core from the pool of small tree-depth-k cores."""

    result = k_core(structure, k, over, size_cap=pool_cap, budget=settings.budget)
    return Report("kcore", structure_to_document(result), None, settings.bounds(rounds=k, pool_cap=pool_cap))


def _locality_options(func: Any) -> Any:
    for decorate in (
        option("--equiv", type=EquivalenceType(), default="iso", show_default=True, help="Neighborhood equivalence."),
        option("-d", "--radius", type=IntRange(0), required=True, help="Neighborhood radius."),
    ):
        func = decorate(func)
    return func


@root.register_command(GAMES, "hanf")
@command()
@argument("left", type=StructureFile(), metavar="A")
@argument("right", type=StructureFile(), metavar="B")
@option("--tuple-a", type=ElementList(), default=(), help="Tuple in A.")
@option("--tuple-b", type=ElementList(), default=(), help="Tuple in B.")
@_locality_options
@help_option("-h", "--help")
def hanf_command(
    left: Structure,
    right: Structure,
    tuple_a: tuple[str, ...],
    tuple_b: tuple[str, ...],
    radius: int,
    equiv: Equivalence,
    settings: Settings,
) -> Report:
    """Search a bijection matching equivalent neighborhoods."""

    found = hanf_check(left, tuple_a, right, tuple_b, radius, equiv, settings.budget)
    if isinstance(found, NotFound):
        return Report("hanf", False, None, settings.bounds(radius=radius, equivalence=str(equiv)))
    return Report("hanf", True, dict(sorted(found.items())), settings.bounds(radius=radius, equivalence=str(equiv)))


@root.register_command(GAMES, "gaifman-check")
@command()
@argument("left", type=StructureFile(), metavar="A")
@argument("right", type=StructureFile(), metavar="B")
@option("--tuple-a", type=ElementList(), required=True, help="Tuple in A.")
@option("--tuple-b", type=ElementList(), required=True, help="Tuple in B.")
@_locality_options
@help_option("-h", "--help")
def gaifman_check_command(
    left: Structure,
    right: Structure,
    tuple_a: tuple[str, ...],
    tuple_b: tuple[str, ...],
    radius: int,
    equiv: Equivalence,
    settings: Settings,
) -> Report:
    """Decide whether the structures and the tuple neighborhoods are equivalent."""

    verdict = gaifman_check(left, tuple_a, right, tuple_b, radius, equiv, settings.budget)
    return Report("gaifman-check", verdict, None, settings.bounds(radius=radius, equivalence=str(equiv)))


@root.register_command(GAMES, "weak-local")
@command()
@argument("structure", type=StructureFile(), metavar="A")
@option("--ta", type=ElementList(), required=True, help="First tuple.")
@option("--tb", type=ElementList(), required=True, help="Second tuple.")
@_locality_options
@help_option("-h", "--help")
def weak_local_command(
    structure: Structure, ta: tuple[str, ...], tb: tuple[str, ...], radius: int, equiv: Equivalence, settings: Settings
) -> Report:
    """Decide whether two tuples have disjoint, equivalent neighborhoods."""

    verdict = weakly_local_premise(structure, ta, tb, radius, equiv, settings.budget)
    return Report("weak-local", verdict, None, settings.bounds(radius=radius, equivalence=str(equiv)))


@root.register_command(GAMES, "locality")
@command()
@argument("kind", type=EnumValue(LocalityKind), metavar="KIND")
@argument("left", type=StructureFile(), metavar="A")
@argument("right", type=StructureFile(), required=False, metavar="B")
@option("--tuple-a", type=ElementList(), default=(), help="Tuple in A.")
@option("--tuple-b", type=ElementList(), default=(), help="Tuple in B, or the second tuple in A for 'weak'.")
@option("-k", type=IntRange(0), required=True, help="Rounds of the concluding EF game.")
@_locality_options
@help_option("-h", "--help")
def locality_command(
    kind: LocalityKind,
    left: Structure,
    right: Structure | None,
    tuple_a: tuple[str, ...],
    tuple_b: tuple[str, ...],
    k: int,
    radius: int,
    equiv: Equivalence,
    settings: Settings,
) -> Report:
    """Evaluate a locality implication on one instance."""

    if right is None:
        if kind is not LocalityKind.WEAK:
            raise InputError(f"Locality kind {kind.value!r} needs a second structure.")
        right = left
    verdict = locality_instance(kind, left, tuple_a, right, tuple_b, radius, equiv, k, settings.budget)
    witness = {
        "premise": verdict.premise,
        "conclusion": verdict.conclusion,
        "bijection": dict(verdict.witness) if verdict.witness is not None else None,
    }
    return Report("locality", verdict.holds, witness, settings.bounds(radius=radius, equivalence=str(equiv), rounds=k))


def _pool(vocabulary: Vocabulary, pool_cap: int) -> tuple[Structure, ...]:
    return enumerate_structures(vocabulary, pool_cap)


@root.register_command(GAMES, "extendable")
@command()
@argument("structure", type=StructureFile(), metavar="A")
@option("-k", type=IntRange(0), required=True, help="Rounds.")
@option("--pool-cap", type=IntRange(0), default=SWEEP_MAX_SIZE, show_default=True, help="Largest pool member.")
@flag_option("--strict-reading", dest="strict", help="Use the answer-independent condition.")
@help_option("-h", "--help")
def extendable_command(structure: Structure, k: int, pool_cap: int, strict: bool, settings: Settings) -> Report:
    """Decide k-extendability against all structures up to the pool cap."""

    pool = _pool(structure.vocabulary, pool_cap)
    verdict = k_extendable(structure, k, pool, strict=strict, budget=settings.budget)
    return Report("extendable", verdict, None, settings.bounds(rounds=k, pool_cap=pool_cap, strict=strict))


@root.register_command(GAMES, "lemma29")
@command()
@argument("left", type=StructureFile(), metavar="A")
@argument("right", type=StructureFile(), metavar="B")
@option("-k", type=IntRange(0), required=True, help="Rounds.")
@option("--pool-cap", type=IntRange(0), default=SWEEP_MAX_SIZE, show_default=True, help="Largest pool member.")
@flag_option("--strict-reading", dest="strict", help="Use the answer-independent condition.")
@help_option("-h", "--help")
def lemma29_command(
    left: Structure, right: Structure, k: int, pool_cap: int, strict: bool, settings: Settings
) -> Report:
    """Check that extendable k-hom-equivalent structures are EF-equivalent."""

    report = lemma29_check(left, right, k, _pool(left.vocabulary, pool_cap), strict=strict, budget=settings.budget)
    witness = {**asdict(report), "premise": report.premise}
    return Report("lemma29", report.holds, witness, settings.bounds(rounds=k, pool_cap=pool_cap, strict=strict))


# Model structure


@root.register_command(HOMOTOPY, "lift")
@command()
@option("--i", type=MorphismFile(), required=True, help="Left map A -> B.")
@option("--p", type=MorphismFile(), required=True, help="Right map X -> Y.")
@option("--f", type=MorphismFile(), required=True, help="Top map A -> X.")
@option("--g", type=MorphismFile(), required=True, help="Bottom map B -> Y.")
@help_option("-h", "--help")
def lift_command(i: Morphism, p: Morphism, f: Morphism, g: Morphism, settings: Settings) -> Report:
    """Search a diagonal filler of a commutative square."""

    result = require_complete(find_lift(LiftingProblem(i, p, f, g), settings.budget))
    return Report("lift", bool(result), _map(result) if result else None, settings.bounds())


@root.register_command(HOMOTOPY, "classify-morphism")
@command()
@argument("morphism", type=MorphismFile(), metavar="F")
@option("-k", type=IntRange(0), help="Also decide weak k-equivalence.")
@help_option("-h", "--help")
def classify_morphism_command(morphism: Morphism, k: int | None, settings: Settings) -> Report:
    """Classify a homomorphism in the model structure."""

    result = classify_morphism(morphism, settings.budget)
    verdict = {**asdict(result), "retraction": result.retraction}
    if k is not None:
        verdict["weak_k_equivalence"] = is_weak_k_equivalence(morphism, k, settings.budget)
    return Report("classify-morphism", verdict, None, settings.bounds())


@root.register_command(HOMOTOPY, "homotopy-category")
@command()
@argument("directory", type=StructureDirectory(), metavar="DIR")
@option("--over", type=ElementList(), default=(), help="Elements fixed by every homomorphism.")
@option("-k", type=IntRange(0), help="Quotient by k-hom-equivalence instead.")
@help_option("-h", "--help")
def homotopy_category_command(
    directory: tuple[tuple[str, ...], tuple[Structure, ...]], over: tuple[str, ...], k: int | None, settings: Settings
) -> Report:
    """Quotient the structures of a directory by weak equivalence."""

    labels, structures = directory
    if k is None:
        poset = homotopy_category(structures, over, labels, settings.budget)
    elif over:
        raise InputError("Options '--over' and '-k' can not be combined.")
    else:
        poset = k_homotopy_category(structures, k, labels, settings.budget)
    return Report("homotopy-category", _poset_document(poset), None, settings.bounds())


@root.register_command(HOMOTOPY, "theorem3")
@command()
@argument("left", type=StructureFile(), metavar="N1")
@argument("right", type=StructureFile(), metavar="N2")
@option("-k", type=IntRange(0), required=True, help="Rounds.")
@option("--caps", dest="size_cap", type=IntRange(0), default=PP_SIZE_CAP, show_default=True, help="Largest pp test.")
@help_option("-h", "--help")
def theorem3_command(left: Structure, right: Structure, k: int, size_cap: int, settings: Settings) -> Report:
    """Compare k-hom-equivalence with agreement on bounded pp tests."""

    report = theorem3_verify(left, right, k, size_cap, settings.budget)
    witness = {"game_side": report.game_side, "test_side": report.test_side, "separating": list(report.separating)}
    return Report("theorem3", report.agree, witness, settings.bounds(rounds=k, size_cap=size_cap, exact="game_side"))


# Sweeps


def _ks(k: int | None) -> tuple[int, ...]:
    return K_RANGE if k is None else tuple(range(1, k + 1))


@root.register_command(SWEEPS, "sweep")
@command()
@argument("check", type=EnumValue(Check), metavar="CHECK")
@option("--vocab", type=VocabularyType(), default="E/2", show_default=True, help="Vocabulary as R/N,...;C,...")
@option("--max-size", type=IntRange(0), default=SWEEP_MAX_SIZE, show_default=True, help="Largest universe.")
@option("-k", type=IntRange(1), help="Check every rank from 1 to K; 1 and 2 by default.")
@option("--jobs", type=IntRange(1), default=1, show_default=True, help="Worker processes.")
@help_option("-h", "--help")
def sweep_command(
    check: Check, vocab: Vocabulary, max_size: int, k: int | None, jobs: int, settings: Settings
) -> Report:
    """Run an exhaustive cross-check over all small structures."""

    report = sweep(check, vocab, max_size, _ks(k), jobs=jobs, budget=settings.budget)
    return _sweep_report("sweep", report, settings)


@root.register_command(SWEEPS, "theorem3-sweep")
@command()
@option("--vocab", type=VocabularyType(), default="E/2", show_default=True, help="Vocabulary as R/N,...;C,...")
@option("--max-size", type=IntRange(0), default=SWEEP_MAX_SIZE, show_default=True, help="Largest universe.")
@option("-k", type=IntRange(1), help="Check every rank from 1 to K; 1 and 2 by default.")
@option("--jobs", type=IntRange(1), default=1, show_default=True, help="Worker processes.")
@help_option("-h", "--help")
def theorem3_sweep_command(vocab: Vocabulary, max_size: int, k: int | None, jobs: int, settings: Settings) -> Report:
    """Run the k-hom-equivalence against pp-agreement sweep."""

    report = sweep(Check.THEOREM3, vocab, max_size, _ks(k), jobs=jobs, budget=settings.budget)
    return _sweep_report("theorem3-sweep", report, settings)


def run(argv: Sequence[str] | None = None) -> int:
    """Run the command tree without exiting; errors are printed and mapped to exit codes."""

    try:
        return root(argv=list(argv) if argv is not None else None, prog="fmtkit", standalone=False)
    except (FMTKitException, FMTKitSignal) as e:
        return e.exit_code


def main() -> None:
    root(prog="fmtkit")
