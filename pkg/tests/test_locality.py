from __future__ import annotations

import pytest

from fmtkit.exceptions import InputError
from fmtkit.fixtures import cycle, path
from fmtkit.homsearch import NotFound
from fmtkit.locality import (
    Equivalence,
    EquivalenceKind,
    LocalityKind,
    gaifman_check,
    hanf_check,
    locality_instance,
    weakly_local_premise,
)
from fmtkit.structures import Structure, coproduct

ISO = Equivalence.parse("iso")


def test_parse_equivalence() -> None:
    assert ISO == Equivalence(EquivalenceKind.ISO)
    assert Equivalence.parse("ef:2") == Equivalence(EquivalenceKind.EF, 2)
    assert Equivalence.parse("khom:1") == Equivalence(EquivalenceKind.KHOM, 1)
    assert str(Equivalence.parse("ef:2")) == "ef:2"
    assert str(ISO) == "iso"
    for text in ("iso:1", "ef", "ef:x", "cores"):
        with pytest.raises(InputError):
            Equivalence.parse(text)


def test_equivalence_holds(k2: Structure, k3: Structure, pt1: Structure) -> None:
    assert not ISO.holds(k2, k3)
    assert Equivalence.parse("ef:2").holds(k2, k3)
    assert Equivalence.parse("khom:2").holds(k2, k3)
    assert not Equivalence.parse("khom:2").holds(k2, pt1)


def test_hanf(c4: Structure) -> None:
    found = hanf_check(c4, (), cycle(4, prefix="u"), (), 1, ISO)
    assert not isinstance(found, NotFound)
    assert sorted(found) == list(c4.universe)
    assert sorted(found.values()) == ["u0", "u1", "u2", "u3"]

    assert not hanf_check(c4, (), path(4), (), 1, ISO)
    assert not hanf_check(c4, (), cycle(5), (), 1, ISO)
    # Radius 1 cannot tell one long cycle from two shorter ones.
    two = cycle(6)
    assert hanf_check(cycle(12), (), coproduct(two, two), (), 1, ISO)
    with pytest.raises(InputError):
        hanf_check(c4, ("v0",), c4, (), 1, ISO)


def test_gaifman_check(c4: Structure, p3: Structure, k2: Structure, k3: Structure) -> None:
    assert gaifman_check(c4, ("v0",), c4, ("v2",), 1, ISO)
    assert not gaifman_check(p3, ("a",), p3, ("b",), 1, ISO)
    assert gaifman_check(p3, ("a",), p3, ("b",), 0, ISO)
    # Two rounds cannot count past two vertices, so K2 and K3 agree.
    assert gaifman_check(k3, (), k2, (), 1, Equivalence.parse("ef:2"))
    assert not gaifman_check(k3, (), k2, (), 1, Equivalence.parse("ef:3"))


def test_weakly_local() -> None:
    c6 = cycle(6)
    assert weakly_local_premise(c6, ("v0",), ("v3",), 1, ISO)
    assert not weakly_local_premise(c6, ("v0",), ("v3",), 2, ISO)
    assert weakly_local_premise(path(5), ("v0",), ("v4",), 1, ISO)
    assert not weakly_local_premise(path(5), ("v0",), ("v2",), 1, ISO)


def test_locality_instance(c4: Structure) -> None:
    verdict = locality_instance(LocalityKind.HANF, c4, (), cycle(4, prefix="u"), (), 1, ISO, 2)
    assert verdict.premise
    assert verdict.conclusion
    assert verdict.holds
    assert verdict.witness is not None

    c6 = cycle(6)
    verdict = locality_instance(LocalityKind.WEAK, c6, ("v0",), c6, ("v3",), 1, ISO, 2)
    assert verdict.premise
    assert verdict.conclusion

    verdict = locality_instance(LocalityKind.GAIFMAN, c4, (), path(4), (), 1, ISO, 3)
    assert not verdict.premise
    assert verdict.holds
