import pytest

from monogenic_chain.errors import DomainError
from monogenic_chain.lemmas import LEMMA_IDS, describe, verify_all, verify_lemma


@pytest.mark.parametrize("m", range(2, 11))
def test_catalog_has_no_failures(m):
    reports = verify_all(m)
    failures = [(r.lemma_id, i.label, i.detail) for r in reports for i in r.instances if i.status == "FAIL"]
    assert failures == []


@pytest.mark.parametrize("m, passed, skipped", [(5, 277, 58), (6, 304, 31), (7, 335, 0), (10, 335, 0)])
def test_catalog_counts(m, passed, skipped):
    totals = {"PASS": 0, "FAIL": 0, "SKIP": 0}
    for rep in verify_all(m):
        for key, value in rep.counts().items():
            totals[key] += value
    assert totals == {"PASS": passed, "FAIL": 0, "SKIP": skipped}


def test_convolution_ladder_pairs():
    report = verify_lemma("lem2-iii", 5)
    assert report.passed
    pairs = {i.indices for i in report.instances}
    assert {(j, k) for j in range(-5, 0) for k in range(-5, 0)} <= {p[:2] for p in pairs}


def test_fundamental_solution_entry():
    report = verify_lemma("lemintiem-ii", 5)
    assert report.passed
    first = report.instances[0]
    assert first.lhs == first.rhs == "3/4*pi^(-4/2) * T*[-5]"


def test_upstream_dirac_ladder():
    report = verify_lemma("lem58-i", 12)
    assert report.counts() == {"PASS": 5, "FAIL": 0, "SKIP": 0}
    assert verify_lemma("lem58-i", 5).counts() == {"PASS": 3, "FAIL": 0, "SKIP": 2}


def test_small_dimension_is_skipped_not_failed():
    report = verify_all(3, n=2)
    statuses = {i.status for r in report for i in r.instances}
    assert statuses == {"SKIP"}
    assert any("m" in i.detail for r in report for i in r.instances)


def test_index_filter():
    report = verify_lemma("lem2-iii", 6, n=-3)
    assert report.instances and all(-3 in i.indices for i in report.instances)


def test_unknown_id():
    with pytest.raises(DomainError):
        verify_lemma("lem99", 5)
    with pytest.raises(DomainError):
        describe("lem99")


def test_descriptions():
    assert len(set(LEMMA_IDS)) == len(LEMMA_IDS)
    assert all(describe(lid) for lid in LEMMA_IDS)
