from __future__ import annotations

import pytest

from fmtkit.sweeps import Check, SweepReport, sweep
from fmtkit.structures import Vocabulary

GRAPHS = Vocabulary.create({"E": 2})
POINTED = Vocabulary.create({"E": 2}, ["c1"])


@pytest.mark.parametrize(
    "check, max_size",
    [
        (Check.CORES, 2),
        (Check.CHANDRA_MERLIN, 2),
        (Check.EF, 2),
        (Check.THEOREM3, 2),
        (Check.LEMMA28, 2),
        (Check.THEOREM2, 1),
        (Check.LEMMA29, 1),
        (Check.UNIVERSAL, 1),
    ],
)
def test_small_sweeps(check: Check, max_size: int) -> None:
    report = sweep(check, GRAPHS, max_size, (1,))
    assert isinstance(report, SweepReport)
    assert report.passed, report.counterexamples
    assert report.counterexamples == ()
    assert report.ks == (1,)


def test_case_counts() -> None:
    report = sweep(Check.CORES, GRAPHS, 2, (1, 2))
    assert report.structures == 13
    assert report.cases == 13

    report = sweep(Check.EF, GRAPHS, 2, (1, 2))
    assert report.cases == 13 * 14 // 2 * 2

    report = sweep(Check.UNIVERSAL, GRAPHS, 1, (1, 2))
    assert report.structures == 3
    assert report.cases == 9


def test_unary_vocabulary() -> None:
    report = sweep(Check.CHANDRA_MERLIN, Vocabulary.create({"P": 1}), 2)
    assert report.structures == 6
    assert report.passed


def test_check_values() -> None:
    assert Check("universal-properties") is Check.UNIVERSAL
    assert Check("chandra-merlin") is Check.CHANDRA_MERLIN
    with pytest.raises(ValueError):
        Check("lemma30")


@pytest.mark.slow
@pytest.mark.filterwarnings("ignore::DeprecationWarning")
def test_parallel_matches_serial() -> None:
    serial = sweep(Check.EF, GRAPHS, 2, (1,))
    parallel = sweep(Check.EF, GRAPHS, 2, (1,), jobs=2)
    assert parallel == serial


@pytest.mark.slow
@pytest.mark.filterwarnings("ignore::DeprecationWarning")
@pytest.mark.parametrize(
    "check, vocabulary, max_size",
    [
        (Check.LEMMA28, GRAPHS, 3),
        (Check.EF, GRAPHS, 3),
        (Check.THEOREM2, GRAPHS, 3),
        (Check.LEMMA29, GRAPHS, 3),
        (Check.CHANDRA_MERLIN, GRAPHS, 3),
        (Check.LEMMA28, POINTED, 2),
        (Check.THEOREM3, POINTED, 2),
        (Check.UNIVERSAL, POINTED, 2),
    ],
)
def test_full_sweeps(check: Check, vocabulary: Vocabulary, max_size: int) -> None:
    report = sweep(check, vocabulary, max_size, (1, 2), jobs=4)
    assert report.passed, report.counterexamples


def test_pointed_case_counts() -> None:
    report = sweep(Check.THEOREM3, POINTED, 1, (1, 2))
    assert report.structures == 2
    assert report.cases == 3 * 2


@pytest.mark.slow
@pytest.mark.filterwarnings("ignore::DeprecationWarning")
def test_cores_up_to_five_elements() -> None:
    report = sweep(Check.CORES, GRAPHS, 5, (1,), jobs=4)
    assert report.structures == 1 + 2 + 10 + 104 + 3044 + 291968
    assert report.passed, report.counterexamples
