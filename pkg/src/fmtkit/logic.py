"""First-order formulas over relational vocabularies with constants.

Grammar::

    formula := ('exists' | 'forall') NAME '.' formula | implication
    implication := disjunction ('->' formula)?
    disjunction := conjunction ('|' conjunction)*
    conjunction := unary ('&' unary)*
    unary := '!' unary | quantified | '(' formula ')' | 'true' | 'false' | atom
    atom := NAME '(' term (',' term)* ')' | term '=' term
"""

from __future__ import annotations

import enum
import functools
import itertools
import logging
import re
from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping, Sequence, Union

from .constants import ENUMERATION_CAP, KEYWORDS, PP_SIZE_CAP
from .cores import core
from .enumeration import enumerate_structures
from .exceptions import (
    ArityMismatch,
    DanglingElement,
    FormulaSyntaxError,
    NotPrimitivePositive,
    UnboundVariable,
    UnknownSymbol,
    VariableShadowing,
    VocabularyMismatch,
)
from .formats import canonical_key
from .gaifman import EliminationTree, elimination_forest, graph_without, tree_depth_over
from .homsearch import SearchBudget, maps_to
from .structures import (
    Structure,
    UnionFind,
    Vocabulary,
    canonical_form,
    free_term_structure,
    pin,
    require_same_vocabulary,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Var:
    name: str

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True)
class Const:
    name: str

    def __str__(self) -> str:
        return self.name


Term = Union[Var, Const]


class Formula:
    """Base class of the formula tree."""

    __slots__ = ()

    def __str__(self) -> str:
        return format_formula(self)


@dataclass(frozen=True)
class Atom(Formula):
    relation: str
    terms: tuple[Term, ...]


@dataclass(frozen=True)
class Equals(Formula):
    left: Term
    right: Term


@dataclass(frozen=True)
class Truth(Formula):
    value: bool


@dataclass(frozen=True)
class Not(Formula):
    body: Formula


@dataclass(frozen=True)
class And(Formula):
    parts: tuple[Formula, ...]


@dataclass(frozen=True)
class Or(Formula):
    parts: tuple[Formula, ...]


@dataclass(frozen=True)
class Implies(Formula):
    premise: Formula
    conclusion: Formula


@dataclass(frozen=True)
class Exists(Formula):
    var: str
    body: Formula


@dataclass(frozen=True)
class ForAll(Formula):
    var: str
    body: Formula


Quantifier = (Exists, ForAll)


# Parsing

_TOKEN = re.compile(r"\s*(?:(?P<name>[A-Za-z_][A-Za-z0-9_']*)|(?P<punct>->|[().,&|!=]))")


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    position: int


def tokenize(text: str) -> list[Token]:
    tokens: list[Token] = []
    position = 0
    while True:
        match = _TOKEN.match(text, position)
        if match is None:
            stripped = len(text) - len(text[position:].lstrip())
            if stripped == len(text):
                break
            raise FormulaSyntaxError(f"Unexpected character {text[stripped]!r}", stripped)
        kind = match.lastgroup or "punct"
        start = match.start(kind)
        tokens.append(Token(kind, match.group(kind), start))
        position = match.end()
    tokens.append(Token("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str, vocabulary: Vocabulary | None) -> None:
        self.tokens = tokenize(text)
        self.index = 0
        self.vocabulary = vocabulary
        self.arities: dict[str, int] = dict(vocabulary.relations) if vocabulary else {}
        self.bound: list[str] = []

    @property
    def current(self) -> Token:
        return self.tokens[self.index]

    def advance(self) -> Token:
        token = self.current
        self.index += 1
        return token

    def accept(self, text: str) -> bool:
        if self.current.kind != "end" and self.current.text == text:
            self.index += 1
            return True
        return False

    def expect(self, text: str) -> Token:
        token = self.current
        if token.text != text or token.kind == "end":
            raise FormulaSyntaxError(f"Expected {text!r}, found {self._describe(token)}", token.position)
        self.index += 1
        return token

    def expect_name(self) -> Token:
        token = self.current
        if token.kind != "name" or token.text in KEYWORDS:
            raise FormulaSyntaxError(f"Expected a name, found {self._describe(token)}", token.position)
        self.index += 1
        return token

    @staticmethod
    def _describe(token: Token) -> str:
        return "end of input" if token.kind == "end" else repr(token.text)

    def parse(self) -> Formula:
        formula = self.formula()
        if self.current.kind != "end":
            raise FormulaSyntaxError(f"Unexpected {self._describe(self.current)}", self.current.position)
        return formula

    def formula(self) -> Formula:
        if self.current.kind == "name" and self.current.text in ("exists", "forall"):
            return self.quantified()
        return self.implication()

    def quantified(self) -> Formula:
        keyword = self.advance()
        name = self.expect_name()
        if name.text in self.bound:
            raise VariableShadowing(f"Variable {name.text!r} is already bound (at offset {name.position}).")
        if self.vocabulary is not None and name.text in self.vocabulary.constants:
            raise VariableShadowing(f"Variable {name.text!r} rebinds a constant (at offset {name.position}).")
        self.expect(".")
        self.bound.append(name.text)
        body = self.formula()
        self.bound.pop()
        node = Exists if keyword.text == "exists" else ForAll
        return node(name.text, body)

    def implication(self) -> Formula:
        premise = self.disjunction()
        if self.accept("->"):
            return Implies(premise, self.formula())
        return premise

    def disjunction(self) -> Formula:
        parts = [self.conjunction()]
        while self.accept("|"):
            parts.append(self.conjunction())
        return parts[0] if len(parts) == 1 else Or(tuple(parts))

    def conjunction(self) -> Formula:
        parts = [self.unary()]
        while self.accept("&"):
            parts.append(self.unary())
        return parts[0] if len(parts) == 1 else And(tuple(parts))

    def unary(self) -> Formula:
        token = self.current
        if self.accept("!"):
            return Not(self.unary())
        if self.accept("("):
            inner = self.formula()
            self.expect(")")
            return inner
        if token.kind == "name" and token.text in ("exists", "forall"):
            return self.quantified()
        if token.kind == "name" and token.text in ("true", "false"):
            self.advance()
            return Truth(token.text == "true")
        return self.atom()

    def atom(self) -> Formula:
        name = self.expect_name()
        if self.accept("("):
            terms = [self.term()]
            while self.accept(","):
                terms.append(self.term())
            self.expect(")")
            self._check_relation(name, len(terms))
            return Atom(name.text, tuple(terms))
        left = self._resolve(name.text)
        self.expect("=")
        return Equals(left, self.term())

    def term(self) -> Term:
        return self._resolve(self.expect_name().text)

    def _resolve(self, name: str) -> Term:
        if name not in self.bound and self.vocabulary is not None and name in self.vocabulary.constants:
            return Const(name)
        return Var(name)

    def _check_relation(self, name: Token, arity: int) -> None:
        if self.vocabulary is not None and name.text not in self.arities:
            raise UnknownSymbol(f"Unknown relation symbol {name.text!r} (at offset {name.position}).")
        expected = self.arities.setdefault(name.text, arity)
        if expected != arity:
            raise ArityMismatch(
                f"Relation {name.text!r} takes {expected} arguments, got {arity} (at offset {name.position})."
            )


def parse(text: str, vocabulary: Vocabulary | None = None) -> Formula:
    """Parse ``text``.

    Without a vocabulary, relation arities are inferred from first use and
    every name in term position is a variable.
    """

    return _Parser(text, vocabulary).parse()


# Printing

def _format(formula: Formula, level: int) -> str:
    if isinstance(formula, Quantifier):
        keyword = "exists" if isinstance(formula, Exists) else "forall"
        text, needed = f"{keyword} {formula.var}. {_format(formula.body, 0)}", 0
    elif isinstance(formula, Implies):
        text, needed = f"{_format(formula.premise, 1)} -> {_format(formula.conclusion, 0)}", 0
    elif isinstance(formula, Or):
        if not formula.parts:
            return "false"
        text, needed = " | ".join(_format(part, 2) for part in formula.parts), 1
    elif isinstance(formula, And):
        if not formula.parts:
            return "true"
        text, needed = " & ".join(_format(part, 3) for part in formula.parts), 2
    elif isinstance(formula, Not):
        return "!" + _format(formula.body, 3)
    elif isinstance(formula, Atom):
        return f"{formula.relation}({','.join(map(str, formula.terms))})"
    elif isinstance(formula, Equals):
        text, needed = f"{formula.left} = {formula.right}", 3
    elif isinstance(formula, Truth):
        return "true" if formula.value else "false"
    else:
        raise TypeError(f"Not a formula: {formula!r}.")
    return f"({text})" if level > needed else text


def format_formula(formula: Formula) -> str:
    """Render ``formula`` so that :func:`parse` reads it back."""

    return _format(formula, 0)


# Syntactic measures

def children(formula: Formula) -> tuple[Formula, ...]:
    if isinstance(formula, (And, Or)):
        return formula.parts
    if isinstance(formula, (Not, Exists, ForAll)):
        return (formula.body,)
    if isinstance(formula, Implies):
        return (formula.premise, formula.conclusion)
    return ()


def subformulas(formula: Formula) -> Iterator[Formula]:
    yield formula
    for child in children(formula):
        yield from subformulas(child)


def quantifier_rank(formula: Formula) -> int:
    below = max((quantifier_rank(child) for child in children(formula)), default=0)
    return below + 1 if isinstance(formula, Quantifier) else below


def _terms(formula: Formula) -> tuple[Term, ...]:
    if isinstance(formula, Atom):
        return formula.terms
    if isinstance(formula, Equals):
        return (formula.left, formula.right)
    return ()


def free_variables(formula: Formula) -> frozenset[str]:
    if isinstance(formula, Quantifier):
        return free_variables(formula.body) - {formula.var}
    own = frozenset(t.name for t in _terms(formula) if isinstance(t, Var))
    return own.union(*(free_variables(child) for child in children(formula)))


class FormulaClass(enum.Enum):
    PRIMITIVE_POSITIVE = "primitive-positive"
    EXISTENTIAL_POSITIVE = "existential-positive"
    GENERAL = "general"


def classify(formula: Formula) -> FormulaClass:
    """Primitive-positive: atoms, ``&``, ``exists`` and ``true``. Existential-positive also allows ``|``."""

    result = FormulaClass.PRIMITIVE_POSITIVE
    for node in subformulas(formula):
        if isinstance(node, (Not, ForAll, Implies)):
            return FormulaClass.GENERAL
        if isinstance(node, Or) or (isinstance(node, Truth) and not node.value):
            result = FormulaClass.EXISTENTIAL_POSITIVE
    return result


def signature(formula: Formula) -> tuple[dict[str, int], frozenset[str]]:
    """The relation arities and constant names occurring in ``formula``."""

    relations: dict[str, int] = {}
    constants: set[str] = set()
    for node in subformulas(formula):
        if isinstance(node, Atom):
            relations[node.relation] = len(node.terms)
        constants.update(t.name for t in _terms(node) if isinstance(t, Const))
    return relations, frozenset(constants)


# Semantics

def _check_vocabulary(structure: Structure, formula: Formula) -> None:
    relations, constants = signature(formula)
    arities = structure.vocabulary.arities
    for name, arity in relations.items():
        if arities.get(name) != arity:
            raise VocabularyMismatch(f"Relation {name}/{arity} is not in the structure's vocabulary.")
    if missing := constants.difference(structure.vocabulary.constants):
        raise VocabularyMismatch(f"Constants {sorted(missing)!r} are not in the structure's vocabulary.")


def _holds(structure: Structure, formula: Formula, env: dict[str, str]) -> bool:
    def value(term: Term) -> str:
        return structure.constant(term.name) if isinstance(term, Const) else env[term.name]

    if isinstance(formula, Atom):
        return tuple(value(t) for t in formula.terms) in structure.relation(formula.relation)
    if isinstance(formula, Equals):
        return value(formula.left) == value(formula.right)
    if isinstance(formula, Truth):
        return formula.value
    if isinstance(formula, Not):
        return not _holds(structure, formula.body, env)
    if isinstance(formula, And):
        return all(_holds(structure, part, env) for part in formula.parts)
    if isinstance(formula, Or):
        return any(_holds(structure, part, env) for part in formula.parts)
    if isinstance(formula, Implies):
        return not _holds(structure, formula.premise, env) or _holds(structure, formula.conclusion, env)
    if isinstance(formula, Quantifier):
        test = any if isinstance(formula, Exists) else all
        return test(_holds(structure, formula.body, {**env, formula.var: a}) for a in structure.universe)
    raise TypeError(f"Not a formula: {formula!r}.")


def evaluate(structure: Structure, formula: Formula, assignment: Mapping[str, str] | None = None) -> bool:
    """Decide ``structure |= formula`` under ``assignment`` of the free variables."""

    _check_vocabulary(structure, formula)
    assignment = dict(assignment or {})
    if missing := free_variables(formula).difference(assignment):
        raise UnboundVariable(f"Free variables {sorted(missing)!r} have no value.")
    for name, element in assignment.items():
        if element not in structure:
            raise DanglingElement(f"Variable {name!r} is assigned {element!r} outside the universe.")
    return _holds(structure, formula, assignment)


def query(structure: Structure, formula: Formula, variables: Sequence[str]) -> frozenset[tuple[str, ...]]:
    """The tuples satisfying ``formula`` with ``variables`` as its free variables, in order."""

    _check_vocabulary(structure, formula)
    if missing := free_variables(formula).difference(variables):
        raise UnboundVariable(f"Free variables {sorted(missing)!r} are not listed.")
    return frozenset(
        values
        for values in itertools.product(structure.universe, repeat=len(variables))
        if _holds(structure, formula, dict(zip(variables, values)))
    )


# Canonical structures and sentences

def _require_pp_sentence(formula: Formula) -> None:
    if classify(formula) is not FormulaClass.PRIMITIVE_POSITIVE:
        raise NotPrimitivePositive(f"{format_formula(formula)!r} is not primitive-positive.")
    if free := free_variables(formula):
        raise NotPrimitivePositive(f"{format_formula(formula)!r} has free variables {sorted(free)!r}.")


def canonical_structure(sentence: Formula, vocabulary: Vocabulary | None = None) -> Structure:
    """The canonical database of a primitive-positive sentence.

    Bound variables become elements named after them (``x``, ``x.1``, ... when a
    name is reused), constants become elements named after the constant, and
    equalities merge elements.
    """

    _require_pp_sentence(sentence)
    relations, constants = signature(sentence)
    if vocabulary is None:
        vocabulary = Vocabulary(tuple(relations.items()), tuple(sorted(constants)))
    else:
        _check_vocabulary(free_term_structure(vocabulary), sentence)

    elements: list[str] = list(vocabulary.constants)
    atoms: list[tuple[str, tuple[str, ...]]] = []
    equalities: list[tuple[str, str]] = []

    def fresh(name: str) -> str:
        candidate, index = name, 0
        while candidate in elements:
            index += 1
            candidate = f"{name}.{index}"
        elements.append(candidate)
        return candidate

    def walk(formula: Formula, env: dict[str, str]) -> None:
        def element(term: Term) -> str:
            return term.name if isinstance(term, Const) else env[term.name]

        if isinstance(formula, Atom):
            atoms.append((formula.relation, tuple(element(t) for t in formula.terms)))
        elif isinstance(formula, Equals):
            equalities.append((element(formula.left), element(formula.right)))
        elif isinstance(formula, And):
            for part in formula.parts:
                walk(part, env)
        elif isinstance(formula, Exists):
            walk(formula.body, {**env, formula.var: fresh(formula.var)})

    walk(sentence, {})
    classes = UnionFind(elements)
    for a, b in equalities:
        classes.union(a, b)
    rep = classes.classes()
    tuples: dict[str, list[tuple[str, ...]]] = {}
    for name, t in atoms:
        tuples.setdefault(name, []).append(tuple(rep[a] for a in t))
    return Structure.create(vocabulary, set(rep.values()), tuples, {c: rep[c] for c in vocabulary.constants})


_IDENTIFIER = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")


def _variable_names(structure: Structure, elements: Iterable[str]) -> dict[str, str]:
    reserved = set(KEYWORDS) | set(structure.vocabulary.relation_names) | set(structure.vocabulary.constants)
    names: dict[str, str] = {}
    pending: list[str] = []
    for a in sorted(elements):
        if _IDENTIFIER.match(a) and a not in reserved:
            names[a] = a
            reserved.add(a)
        else:
            pending.append(a)
    counter = itertools.count()
    for a in pending:
        while (name := f"v{next(counter)}") in reserved:
            pass
        names[a] = name
        reserved.add(name)
    return names


def _conjoin(parts: list[Formula]) -> Formula:
    if not parts:
        return Truth(True)
    return parts[0] if len(parts) == 1 else And(tuple(parts))


def canonical_sentence(structure: Structure, pinned: Iterable[str] = ()) -> Formula:
    """A primitive-positive formula true in ``B`` iff ``structure ->_X B``.

    Elements outside ``pinned`` and the constants are quantified along an
    optimal elimination forest, so the quantifier rank equals
    ``tree_depth_over(structure, pinned + constants)``. Pinned elements that
    are not constants stay free, named after themselves where possible.
    """

    fixed = frozenset(pinned) | structure.constant_elements
    forest = elimination_forest(graph_without(structure, fixed))
    names = _variable_names(structure, (a for a in structure.universe if a not in structure.constant_elements))
    constant_of = {}
    for name in sorted(structure.vocabulary.constants):
        constant_of.setdefault(structure.constant(name), name)

    def term(a: str) -> Term:
        return Const(constant_of[a]) if a in constant_of else Var(names[a])

    depth: dict[str, int] = {}

    def visit(tree: EliminationTree, level: int) -> None:
        depth[tree.root] = level
        for child in tree.children:
            visit(child, level + 1)

    for tree in forest:
        visit(tree, 0)

    placed: dict[str | None, list[Formula]] = {}
    for name, t in structure.tuples():
        quantified = [a for a in t if a not in fixed]
        owner = max(quantified, key=lambda a: depth[a]) if quantified else None
        placed.setdefault(owner, []).append(Atom(name, tuple(term(a) for a in t)))

    def build(tree: EliminationTree) -> Formula:
        body = placed.get(tree.root, []) + [build(child) for child in tree.children]
        return Exists(names[tree.root], _conjoin(body))

    return _conjoin(placed.get(None, []) + [build(tree) for tree in forest])


@functools.lru_cache(maxsize=64)
def _pp_tests(vocabulary: Vocabulary, k: int, size_cap: int, cap: int) -> tuple[Structure, ...]:
    found: dict[str, Structure] = {}
    for structure in enumerate_structures(vocabulary, size_cap, cap=cap):
        if tree_depth_over(structure, structure.constant_elements) > k:
            continue
        reduced = canonical_form(core(structure))
        found.setdefault(canonical_key(reduced), reduced)
    family = sorted(found.values(), key=lambda s: (len(s), len(tuple(s.tuples())), canonical_key(s)))
    trivial = canonical_key(free_term_structure(vocabulary))
    if len(family) > 1:
        family = [s for s in family if canonical_key(s) != trivial]
    logger.debug("pp tests over %s with k=%d, cap=%d: %d structures", vocabulary, k, size_cap, len(family))
    return tuple(family)


def enumerate_pp_tests(
    vocabulary: Vocabulary,
    k: int,
    size_cap: int = PP_SIZE_CAP,
    *,
    cap: int = ENUMERATION_CAP,
) -> tuple[Structure, ...]:
    """The cores of tree-depth at most ``k`` over the constants, up to ``size_cap`` elements.

    The free term structure maps everywhere and is left out unless it is the
    only member.
    Tests come smallest first, then with fewer tuples.
    """

    return _pp_tests(vocabulary, k, size_cap, cap)


def separating_test(
    left: Structure,
    right: Structure,
    k: int,
    pinned: Iterable[str] = (),
    size_cap: int = PP_SIZE_CAP,
    budget: SearchBudget | None = None,
) -> Structure | None:
    """The first pp test mapping into ``left`` but not into ``right``, over ``pinned``."""

    require_same_vocabulary(left, right)
    pinned = tuple(pinned)
    left, right = pin(left, pinned), pin(right, pinned)
    for test in enumerate_pp_tests(left.vocabulary, k, size_cap):
        if maps_to(test, left, budget=budget) and not maps_to(test, right, budget=budget):
            return test
    return None


def preserves_pp(
    left: Structure,
    right: Structure,
    k: int,
    pinned: Iterable[str] = (),
    size_cap: int = PP_SIZE_CAP,
    budget: SearchBudget | None = None,
) -> bool:
    """Decide whether every pp test of rank ``k`` true in ``left`` holds in ``right``."""

    return separating_test(left, right, k, pinned, size_cap, budget) is None
