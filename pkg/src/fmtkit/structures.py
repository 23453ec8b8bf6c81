from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping, Sequence, Tuple, Union

from typing_extensions import Self, TypeAlias

from .constants import CANONICAL_SIZE_LIMIT, EXPANSION_PREFIX, TOP_ELEMENT
from .exceptions import (
    ArityError,
    CapExceeded,
    ConstantError,
    DanglingElement,
    EqualizerUndefined,
    InputError,
    MorphismError,
    NotParallel,
    StructureError,
    VocabularyMismatch,
)

Element: TypeAlias = str
ElementTuple: TypeAlias = Tuple[str, ...]
MapLike: TypeAlias = Union[Mapping[str, str], "Morphism"]


@dataclass(frozen=True)
class Vocabulary:
    """A relational vocabulary with an ordered list of constant symbols.

    Parameters:
        relations (tuple[tuple[str, int], ...], default=()):
            The relation symbols with their arities. Stored sorted by name.
        constants (tuple[str, ...], default=()):
            The constant symbols, in order.
    """

    relations: Tuple[Tuple[str, int], ...] = ()
    constants: Tuple[str, ...] = ()

    def __post_init__(self) -> None:
        names = [name for name, _ in self.relations]
        if len(set(names)) != len(names):
            raise InputError(f"Duplicate relation symbol in {names!r}.")
        if len(set(self.constants)) != len(self.constants):
            raise InputError(f"Duplicate constant symbol in {list(self.constants)!r}.")
        if clash := set(names).intersection(self.constants):
            raise InputError(f"Symbols {sorted(clash)!r} are both relations and constants.")
        for name, arity in self.relations:
            if not isinstance(arity, int) or arity < 1:
                raise InputError(f"Relation {name!r} must have arity >= 1, got {arity!r}.")
        object.__setattr__(self, "relations", tuple(sorted((str(n), a) for n, a in self.relations)))
        object.__setattr__(self, "constants", tuple(str(c) for c in self.constants))

    @classmethod
    def create(cls, relations: Mapping[str, int] | None = None, constants: Sequence[str] = ()) -> Self:
        return cls(tuple((relations or {}).items()), tuple(constants))

    @property
    def relation_names(self) -> tuple[str, ...]:
        return tuple(name for name, _ in self.relations)

    @property
    def arities(self) -> dict[str, int]:
        return dict(self.relations)

    def arity(self, name: str) -> int:
        for rel, arity in self.relations:
            if rel == name:
                return arity
        raise VocabularyMismatch(f"Unknown relation symbol {name!r}.")

    def fresh_constants(self, n: int) -> tuple[str, ...]:
        """Return ``n`` new constant names ``c1, c2, ...`` skipping names in use."""

        used = set(self.relation_names).union(self.constants)
        names: list[str] = []
        index = 1
        while len(names) < n:
            name = f"{EXPANSION_PREFIX}{index}"
            if name not in used:
                names.append(name)
            index += 1
        return tuple(names)

    def expand(self, n: int) -> Vocabulary:
        """The vocabulary expanded with ``n`` fresh constant symbols."""

        return Vocabulary(self.relations, self.constants + self.fresh_constants(n))

    def relational(self) -> Vocabulary:
        """The vocabulary without its constant symbols."""

        return Vocabulary(self.relations, ())

    def __str__(self) -> str:
        rels = ",".join(f"{name}/{arity}" for name, arity in self.relations)
        if self.constants:
            return rels + ";" + ",".join(self.constants)
        return rels


class Structure:
    """A finite structure over a vocabulary.

    The constructor only normalizes its input; use :meth:`create` or
    :func:`validate` to enforce the invariants.
    """

    __slots__ = ("_vocabulary", "_universe", "_relations", "_constants", "_hash")

    def __init__(
        self,
        vocabulary: Vocabulary,
        universe: Iterable[str],
        relations: Mapping[str, Iterable[Sequence[str]]] | None = None,
        constants: Mapping[str, str] | None = None,
    ) -> None:
        relations = relations or {}
        constants = constants or {}
        if unknown := set(relations).difference(vocabulary.relation_names):
            raise VocabularyMismatch(f"Relations {sorted(unknown)!r} are not in the vocabulary.")
        if unknown := set(constants).difference(vocabulary.constants):
            raise VocabularyMismatch(f"Constants {sorted(unknown)!r} are not in the vocabulary.")

        self._vocabulary = vocabulary
        self._universe: tuple[str, ...] = tuple(sorted({str(a) for a in universe}))
        self._relations: dict[str, frozenset[ElementTuple]] = {
            name: frozenset(tuple(str(a) for a in t) for t in relations.get(name, ()))
            for name in vocabulary.relation_names
        }
        self._constants: dict[str, str] = {name: str(constants[name]) for name in vocabulary.constants if name in constants}
        self._hash: int | None = None

    @classmethod
    def create(
        cls,
        vocabulary: Vocabulary,
        universe: Iterable[str],
        relations: Mapping[str, Iterable[Sequence[str]]] | None = None,
        constants: Mapping[str, str] | None = None,
    ) -> Self:
        """Construct and validate."""

        structure = cls(vocabulary, universe, relations, constants)
        validate(structure)
        return structure

    @property
    def vocabulary(self) -> Vocabulary:
        return self._vocabulary

    @property
    def universe(self) -> tuple[str, ...]:
        """The elements, sorted."""

        return self._universe

    @property
    def relations(self) -> Mapping[str, frozenset[ElementTuple]]:
        return self._relations

    @property
    def constants(self) -> Mapping[str, str]:
        return self._constants

    def relation(self, name: str) -> frozenset[ElementTuple]:
        try:
            return self._relations[name]
        except KeyError:
            raise VocabularyMismatch(f"Unknown relation symbol {name!r}.") from None

    def constant(self, name: str) -> str:
        try:
            return self._constants[name]
        except KeyError:
            raise ConstantError(f"Constant {name!r} is not interpreted.") from None

    @property
    def constant_elements(self) -> frozenset[str]:
        return frozenset(self._constants.values())

    def tuples(self) -> Iterator[tuple[str, ElementTuple]]:
        """Iterate ``(relation, tuple)`` pairs in sorted order."""

        for name in self._vocabulary.relation_names:
            for t in sorted(self._relations[name]):
                yield name, t

    def __len__(self) -> int:
        return len(self._universe)

    def __contains__(self, element: object) -> bool:
        return element in self._universe

    def _key(self) -> tuple:
        return (
            self._vocabulary,
            self._universe,
            tuple((name, tuple(sorted(self._relations[name]))) for name in self._vocabulary.relation_names),
            tuple(sorted(self._constants.items())),
        )

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Structure):
            return NotImplemented
        return self._key() == other._key()

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self._key())
        return self._hash

    def __getstate__(self) -> tuple:
        return (self._vocabulary, self._universe, self._relations, self._constants)

    def __setstate__(self, state: tuple) -> None:
        self._vocabulary, self._universe, self._relations, self._constants = state
        self._hash = None

    def __repr__(self) -> str:
        rels = {name: sorted(ts) for name, ts in self._relations.items()}
        return f"Structure(universe={list(self._universe)!r}, relations={rels!r}, constants={self._constants!r})"


def validate(structure: Structure) -> None:
    """Check the structure invariants, raising on the first violation."""

    universe = set(structure.universe)
    for name, t in structure.tuples():
        arity = structure.vocabulary.arity(name)
        if len(t) != arity:
            raise ArityError(f"Tuple {t!r} of relation {name!r} has length {len(t)}, expected {arity}.")
        for element in t:
            if element not in universe:
                raise DanglingElement(f"Tuple {t!r} of relation {name!r} uses {element!r} outside the universe.")
    for name in structure.vocabulary.constants:
        if name not in structure.constants:
            raise ConstantError(f"Constant {name!r} is not interpreted.")
        if structure.constants[name] not in universe:
            raise DanglingElement(f"Constant {name!r} is interpreted by {structure.constants[name]!r} outside the universe.")


def require_same_vocabulary(*structures: Structure) -> Vocabulary:
    vocabulary = structures[0].vocabulary
    for other in structures[1:]:
        if other.vocabulary != vocabulary:
            raise VocabularyMismatch(f"Vocabularies {str(vocabulary)!r} and {str(other.vocabulary)!r} differ.")
    return vocabulary


def require_elements(structure: Structure, elements: Iterable[str]) -> tuple[str, ...]:
    result = tuple(elements)
    for element in result:
        if element not in structure:
            raise DanglingElement(f"Element {element!r} is not in the universe.")
    return result


class Morphism:
    """A map between the universes of two structures over one vocabulary.

    Use :meth:`create` to obtain a verified homomorphism.
    """

    __slots__ = ("source", "target", "_mapping")

    def __init__(self, source: Structure, target: Structure, mapping: Mapping[str, str]) -> None:
        self.source = source
        self.target = target
        self._mapping: dict[str, str] = {a: mapping[a] for a in source.universe}

    @classmethod
    def create(cls, source: Structure, target: Structure, mapping: Mapping[str, str]) -> Self:
        if not check_homomorphism(mapping, source, target):
            raise MorphismError(f"Map {dict(mapping)!r} is not a homomorphism.")
        return cls(source, target, mapping)

    @classmethod
    def identity(cls, structure: Structure) -> Self:
        return cls(structure, structure, {a: a for a in structure.universe})

    @property
    def mapping(self) -> Mapping[str, str]:
        return self._mapping

    def __call__(self, element: str) -> str:
        return self._mapping[element]

    def __getitem__(self, element: str) -> str:
        return self._mapping[element]

    def __iter__(self) -> Iterator[str]:
        return iter(self._mapping)

    def __len__(self) -> int:
        return len(self._mapping)

    # A found map is truthy even from the empty structure; NotFound is falsy.
    def __bool__(self) -> bool:
        return True

    def keys(self) -> Iterable[str]:
        return self._mapping.keys()

    def items(self) -> Iterable[tuple[str, str]]:
        return self._mapping.items()

    def image(self) -> frozenset[str]:
        return frozenset(self._mapping.values())

    def is_injective(self) -> bool:
        return len(self.image()) == len(self._mapping)

    def is_surjective(self) -> bool:
        return self.image() == frozenset(self.target.universe)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Morphism):
            return NotImplemented
        return (self.source, self.target, self._mapping) == (other.source, other.target, other._mapping)

    def __hash__(self) -> int:
        return hash((self.source, self.target, tuple(sorted(self._mapping.items()))))

    def __repr__(self) -> str:
        return f"Morphism({self._mapping!r})"


def _as_dict(mapping: MapLike) -> Mapping[str, str]:
    if isinstance(mapping, Morphism):
        return mapping.mapping
    return mapping


def check_homomorphism(mapping: MapLike, source: Structure, target: Structure) -> bool:
    """Return ``True`` iff ``mapping`` is a homomorphism from ``source`` to ``target``."""

    vocabulary = require_same_vocabulary(source, target)
    mapping = _as_dict(mapping)
    target_universe = set(target.universe)
    for a in source.universe:
        if a not in mapping or mapping[a] not in target_universe:
            return False
    for name in vocabulary.constants:
        if mapping[source.constant(name)] != target.constant(name):
            return False
    for name in vocabulary.relation_names:
        target_tuples = target.relation(name)
        for t in source.relation(name):
            if tuple(mapping[a] for a in t) not in target_tuples:
                return False
    return True


def check_isomorphism(mapping: MapLike, source: Structure, target: Structure) -> bool:
    """Return ``True`` iff ``mapping`` is a bijective homomorphism with homomorphic inverse."""

    if not check_homomorphism(mapping, source, target):
        return False
    mapping = _as_dict(mapping)
    inverse = {b: a for a, b in mapping.items() if a in source}
    if len(inverse) != len(source) or len(inverse) != len(target):
        return False
    return check_homomorphism(inverse, target, source)


def compose(g: Morphism, f: Morphism) -> Morphism:
    """Return ``g ∘ f``."""

    if f.target != g.source:
        raise MorphismError("Morphisms are not composable.")
    return Morphism.create(f.source, g.target, {a: g(f(a)) for a in f.source.universe})


def induced_substructure(structure: Structure, subset: Iterable[str]) -> Structure:
    """The substructure induced on ``subset``, which must contain all constants."""

    elements = frozenset(require_elements(structure, subset))
    if missing := structure.constant_elements.difference(elements):
        raise ConstantError(f"Subset misses constant elements {sorted(missing)!r}.")
    relations = {name: [t for t in ts if elements.issuperset(t)] for name, ts in structure.relations.items()}
    return Structure(structure.vocabulary, elements, relations, structure.constants)


def relabel(structure: Structure, mapping: Mapping[str, str]) -> Structure:
    """Rename elements through the injective ``mapping``."""

    if len(set(mapping[a] for a in structure.universe)) != len(structure):
        raise InputError("Relabeling must be injective.")
    relations = {name: [tuple(mapping[a] for a in t) for t in ts] for name, ts in structure.relations.items()}
    constants = {name: mapping[a] for name, a in structure.constants.items()}
    return Structure(structure.vocabulary, (mapping[a] for a in structure.universe), relations, constants)


def reduct(structure: Structure, vocabulary: Vocabulary) -> Structure:
    """Forget the symbols of ``structure`` that are not in ``vocabulary``."""

    for name, arity in vocabulary.relations:
        if structure.vocabulary.arity(name) != arity:
            raise VocabularyMismatch(f"Relation {name!r} has a different arity.")
    if missing := set(vocabulary.constants).difference(structure.vocabulary.constants):
        raise VocabularyMismatch(f"Constants {sorted(missing)!r} are not in the vocabulary.")
    relations = {name: structure.relation(name) for name in vocabulary.relation_names}
    constants = {name: structure.constant(name) for name in vocabulary.constants}
    return Structure(vocabulary, structure.universe, relations, constants)


def expand(structure: Structure, elements: Sequence[str]) -> Structure:
    """Expand by fresh constants interpreted as ``elements``, in order."""

    elements = require_elements(structure, elements)
    vocabulary = structure.vocabulary.expand(len(elements))
    names = vocabulary.constants[len(structure.vocabulary.constants) :]
    constants = dict(structure.constants)
    constants.update(zip(names, elements))
    return Structure(vocabulary, structure.universe, structure.relations, constants)


def pin(structure: Structure, pinned: Iterable[str]) -> Structure:
    """Expand by constants naming the sorted ``pinned`` set.

    Structures over one vocabulary pinned on equally sized sets share the
    expanded vocabulary, so homomorphisms over ``pinned`` are exactly the
    homomorphisms between the expansions.
    """

    return expand(structure, sorted(set(pinned)))


def unpin(structure: Structure, vocabulary: Vocabulary, pinned: Sequence[str]) -> Structure:
    """Invert :func:`pin`: name the pinned elements back and drop their constants."""

    pinned = sorted(set(pinned))
    names = structure.vocabulary.constants[len(vocabulary.constants) :]
    if len(names) != len(pinned):
        raise VocabularyMismatch("Pinned constants do not match the pinned set.")
    mapping: dict[str, str] = {}
    for name, element in zip(names, pinned):
        source = structure.constant(name)
        if mapping.setdefault(source, element) != element:
            raise StructureError(f"Pinned elements collapse at {source!r}.")
    taken = set(mapping.values())
    for a in structure.universe:
        if a in mapping:
            continue
        fresh = a
        while fresh in taken:
            fresh += "'"
        mapping[a] = fresh
        taken.add(fresh)
    return reduct(relabel(structure, mapping), vocabulary)


def pair_element(a: str, b: str) -> str:
    """The name of the pair (a, b). Backslashes and commas inside the parts are escaped so names never collide."""

    return f"({_escape_component(a)},{_escape_component(b)})"


def _escape_component(element: str) -> str:
    return element.replace("\\", "\\\\").replace(",", "\\,")


def product(left: Structure, right: Structure) -> Structure:
    """The categorical product on the Cartesian product of the universes."""

    return product_projections(left, right)[0]


def product_projections(left: Structure, right: Structure) -> tuple[Structure, Morphism, Morphism]:
    vocabulary = require_same_vocabulary(left, right)
    universe = [pair_element(a, b) for a in left.universe for b in right.universe]
    relations = {
        name: [
            tuple(pair_element(a, b) for a, b in zip(s, t))
            for s in sorted(left.relation(name))
            for t in sorted(right.relation(name))
        ]
        for name in vocabulary.relation_names
    }
    constants = {name: pair_element(left.constant(name), right.constant(name)) for name in vocabulary.constants}
    result = Structure(vocabulary, universe, relations, constants)
    first = Morphism(result, left, {pair_element(a, b): a for a in left.universe for b in right.universe})
    second = Morphism(result, right, {pair_element(a, b): b for a in left.universe for b in right.universe})
    return result, first, second


def pair(f: Morphism, g: Morphism) -> Morphism:
    """The mediating morphism ``D → A × B`` of ``f: D → A`` and ``g: D → B``."""

    if f.source != g.source:
        raise NotParallel("Paired morphisms must share their source.")
    target = product(f.target, g.target)
    return Morphism.create(f.source, target, {d: pair_element(f(d), g(d)) for d in f.source.universe})


class UnionFind:
    def __init__(self, elements: Iterable[str]) -> None:
        self.parent = {a: a for a in elements}

    def find(self, a: str) -> str:
        root = a
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[a] != root:
            self.parent[a], a = root, self.parent[a]
        return root

    def union(self, a: str, b: str) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            # The lexicographically least identifier represents the class.
            if rb < ra:
                ra, rb = rb, ra
            self.parent[rb] = ra

    def classes(self) -> dict[str, str]:
        return {a: self.find(a) for a in self.parent}


def _quotient(
    vocabulary: Vocabulary,
    universe: Iterable[str],
    relations: Mapping[str, Iterable[ElementTuple]],
    constants: Mapping[str, str],
    pairs: Iterable[tuple[str, str]],
) -> tuple[Structure, dict[str, str]]:
    uf = UnionFind(universe)
    for a, b in pairs:
        uf.union(a, b)
    rep = uf.classes()
    result = Structure(
        vocabulary,
        set(rep.values()),
        {name: [tuple(rep[a] for a in t) for t in ts] for name, ts in relations.items()},
        {name: rep[a] for name, a in constants.items()},
    )
    return result, rep


def tagged(index: int, element: str) -> str:
    return f"{index}:{element}"


def coproduct(left: Structure, right: Structure) -> Structure:
    """The coproduct: disjoint union, amalgamated over the constants."""

    return coproduct_injections(left, right)[0]


def coproduct_injections(left: Structure, right: Structure) -> tuple[Structure, Morphism, Morphism]:
    vocabulary = require_same_vocabulary(left, right)
    universe = [tagged(0, a) for a in left.universe] + [tagged(1, b) for b in right.universe]
    relations = {
        name: [tuple(tagged(0, a) for a in t) for t in left.relation(name)]
        + [tuple(tagged(1, b) for b in t) for t in right.relation(name)]
        for name in vocabulary.relation_names
    }
    constants = {name: tagged(0, left.constant(name)) for name in vocabulary.constants}
    glue = [(tagged(0, left.constant(name)), tagged(1, right.constant(name))) for name in vocabulary.constants]
    result, rep = _quotient(vocabulary, universe, relations, constants, glue)
    first = Morphism(left, result, {a: rep[tagged(0, a)] for a in left.universe})
    second = Morphism(right, result, {b: rep[tagged(1, b)] for b in right.universe})
    return result, first, second


def copair(f: Morphism, g: Morphism) -> Morphism:
    """The mediating morphism ``A ⊔ B → D`` of ``f: A → D`` and ``g: B → D``."""

    if f.target != g.target:
        raise NotParallel("Copaired morphisms must share their target.")
    result, first, second = coproduct_injections(f.source, g.source)
    mapping: dict[str, str] = {}
    for inclusion, morphism in ((first, f), (second, g)):
        for a in morphism.source.universe:
            if mapping.setdefault(inclusion(a), morphism(a)) != morphism(a):
                raise MorphismError("Copaired morphisms disagree on the constants.")
    return Morphism.create(result, f.target, mapping)


def _require_parallel(f: Morphism, g: Morphism) -> None:
    if f.source != g.source or f.target != g.target:
        raise NotParallel("Morphisms are not parallel.")


def equalizer(f: Morphism, g: Morphism) -> tuple[Structure, Morphism]:
    """The substructure on which ``f`` and ``g`` agree, with its inclusion."""

    _require_parallel(f, g)
    source = f.source
    agreement = [a for a in source.universe if f(a) == g(a)]
    if missing := source.constant_elements.difference(agreement):
        raise EqualizerUndefined(f"Constant elements {sorted(missing)!r} are outside the agreement set.")
    result = induced_substructure(source, agreement)
    return result, Morphism(result, source, {a: a for a in agreement})


def coequalizer(f: Morphism, g: Morphism) -> tuple[Structure, Morphism]:
    """The quotient of the target by the equivalence generated by ``f(x) ~ g(x)``."""

    _require_parallel(f, g)
    target = f.target
    result, rep = _quotient(
        target.vocabulary,
        target.universe,
        target.relations,
        target.constants,
        ((f(a), g(a)) for a in f.source.universe),
    )
    return result, Morphism(target, result, rep)


def free_term_structure(vocabulary: Vocabulary) -> Structure:
    """The initial structure: the constant symbols themselves, no tuples."""

    return Structure(vocabulary, vocabulary.constants, {}, {c: c for c in vocabulary.constants})


def initial_morphism(vocabulary: Vocabulary, structure: Structure) -> Morphism:
    if structure.vocabulary != vocabulary:
        raise VocabularyMismatch(f"Structure is not over {str(vocabulary)!r}.")
    return Morphism(free_term_structure(vocabulary), structure, {c: structure.constant(c) for c in vocabulary.constants})


def top(vocabulary: Vocabulary) -> Structure:
    """The terminal structure: one element, every relation full."""

    relations = {name: [(TOP_ELEMENT,) * arity] for name, arity in vocabulary.relations}
    constants = {c: TOP_ELEMENT for c in vocabulary.constants}
    return Structure(vocabulary, [TOP_ELEMENT], relations, constants)


def _element_invariant(structure: Structure, element: str) -> tuple:
    names = tuple(sorted(c for c, a in structure.constants.items() if a == element))
    counts: list[int] = []
    for name, arity in structure.vocabulary.relations:
        ts = structure.relation(name)
        counts.append(sum(1 for t in ts if all(a == element for a in t)))
        for i in range(arity):
            counts.append(sum(1 for t in ts if t[i] == element))
    return (names, tuple(counts))


def canonical_labeling(structure: Structure) -> dict[str, str]:
    """A relabeling onto ``"0", "1", ...`` minimizing the relabeled tuples.

    Elements are first split into cells by an isomorphism-invariant profile;
    only labelings that respect the cell order are compared.
    """

    n = len(structure)
    if n > CANONICAL_SIZE_LIMIT:
        raise CapExceeded(f"Canonical forms are limited to {CANONICAL_SIZE_LIMIT} elements, got {n}.")
    profile = {a: _element_invariant(structure, a) for a in structure.universe}
    cells: dict[tuple, list[str]] = {}
    for a in sorted(structure.universe, key=lambda a: profile[a]):
        cells.setdefault(profile[a], []).append(a)
    ordered_cells = [cells[key] for key in sorted(cells)]

    names = structure.vocabulary.relation_names
    best_key: tuple | None = None
    best: dict[str, int] = {}
    for choice in itertools.product(*(itertools.permutations(cell) for cell in ordered_cells)):
        labels = {a: i for i, a in enumerate(itertools.chain.from_iterable(choice))}
        key = tuple(tuple(sorted(tuple(labels[a] for a in t) for t in structure.relation(name))) for name in names)
        if best_key is None or key < best_key:
            best_key, best = key, labels
    return {a: str(i) for a, i in best.items()}


def canonical_form(structure: Structure) -> Structure:
    """The relabeling by :func:`canonical_labeling`; equal iff isomorphic."""

    return relabel(structure, canonical_labeling(structure))


