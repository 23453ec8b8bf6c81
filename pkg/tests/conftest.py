from __future__ import annotations

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from fmtkit.fixtures import GRAPH_VOCABULARY, load_fixture
from fmtkit.logic import And, Atom, Equals, Exists, ForAll, Formula, Implies, Not, Or, Truth, Var
from fmtkit.structures import Structure

settings.register_profile("fmtkit", deadline=None, max_examples=40, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("fmtkit")


@st.composite
def digraphs(draw: st.DrawFn, min_size: int = 1, max_size: int = 4) -> Structure:
    """Small ``E/2`` structures on elements ``"0", "1", ...``, loops allowed."""

    n = draw(st.integers(min_size, max_size))
    universe = [str(i) for i in range(n)]
    pairs = [(a, b) for a in universe for b in universe]
    edges = draw(st.sets(st.sampled_from(pairs), max_size=len(pairs))) if pairs else set()
    return Structure.create(GRAPH_VOCABULARY, universe, {"E": edges})


@st.composite
def graphs(draw: st.DrawFn, min_size: int = 1, max_size: int = 5) -> Structure:
    """Small symmetric loopless ``E/2`` structures."""

    n = draw(st.integers(min_size, max_size))
    universe = [str(i) for i in range(n)]
    pairs = [(a, b) for i, a in enumerate(universe) for b in universe[i + 1 :]]
    chosen = draw(st.sets(st.sampled_from(pairs), max_size=len(pairs))) if pairs else set()
    edges = {(a, b) for a, b in chosen} | {(b, a) for a, b in chosen}
    return Structure.create(GRAPH_VOCABULARY, universe, {"E": edges})



VARIABLES = ("x", "y", "z")


@st.composite
def formulas(draw: st.DrawFn, depth: int = 3, bound: frozenset[str] = frozenset()) -> Formula:
    """Small ``E/2`` formulas over :data:`VARIABLES`; quantifiers never rebind a variable."""

    variable = st.sampled_from(VARIABLES).map(Var)
    free = [v for v in VARIABLES if v not in bound]
    kinds = ["atom", "equals", "truth"]
    if depth > 0:
        kinds += ["not", "and", "or", "implies"] + (["exists", "forall"] if free else [])
    kind = draw(st.sampled_from(kinds))
    if kind == "atom":
        return Atom("E", (draw(variable), draw(variable)))
    if kind == "equals":
        return Equals(draw(variable), draw(variable))
    if kind == "truth":
        return Truth(draw(st.booleans()))
    sub = formulas(depth - 1, bound)
    if kind == "not":
        return Not(draw(sub))
    if kind == "and":
        return And(tuple(draw(st.lists(sub, min_size=2, max_size=3))))
    if kind == "or":
        return Or(tuple(draw(st.lists(sub, min_size=2, max_size=3))))
    if kind == "implies":
        return Implies(draw(sub), draw(sub))
    var = draw(st.sampled_from(free))
    body = draw(formulas(depth - 1, bound | {var}))
    return Exists(var, body) if kind == "exists" else ForAll(var, body)


@pytest.fixture()
def k2() -> Structure:
    return load_fixture("K2")


@pytest.fixture()
def k3() -> Structure:
    return load_fixture("K3")


@pytest.fixture()
def p3() -> Structure:
    return load_fixture("P3")


@pytest.fixture()
def c4() -> Structure:
    return load_fixture("C4")


@pytest.fixture()
def loop1() -> Structure:
    return load_fixture("LOOP1")


@pytest.fixture()
def pt1() -> Structure:
    return load_fixture("PT1")
