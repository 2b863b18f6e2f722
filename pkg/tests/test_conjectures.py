"""Scanner tests: log-concavity and residue-bias reports on exact data."""

import pytest

from mexmoments import MexParams, ValidationError, partition_numbers
from mexmoments.conjectures import scan_bias, scan_log_concavity


def test_logconcave_partition_numbers_small_range():
    # Scan p(n) itself (varsigma, r=0).  The failing n below 26 are exactly
    # the odd ones; recompute that fact here directly from the recurrence
    # values, then pin the classical list.
    report = scan_log_concavity("varsigma", MexParams(1, 1, 1, 0), 1, 30)
    pn = partition_numbers(30)
    direct = [n for n in range(1, 30) if pn[n] ** 2 <= pn[n - 1] * pn[n + 1]]
    assert list(report.violations) == direct
    assert direct == [1, 3, 5, 7, 9, 11, 13, 15, 17, 19, 21, 23, 25]
    assert report.equalities == ()
    assert report.stabilized_at == 26  # right after the last violation
    # a range that ends on a violation has no violation-free suffix
    assert scan_log_concavity("varsigma", MexParams(1, 1, 1, 0), 1, 26).stabilized_at is None


def test_logconcave_partition_numbers_clean_range():
    report = scan_log_concavity("varsigma", MexParams(2, 3, 1, 0), 26, 400)
    assert report.violations == ()
    assert report.stabilized_at == 26
    assert report.ordering == ()


def test_logconcave_flags_zero_prefix_equalities():
    # sigma with A=3 mod 3 is 0 for n < 3; the 0,0,0 prefix produces
    # equality-type failures that must be reported, not suppressed.
    report = scan_log_concavity("sigma", MexParams(1, 3, 3, 0), 1, 10)
    assert 1 in report.violations and 1 in report.equalities
    assert 2 in report.violations  # 0*0 = 0 >= 0 at the boundary of the prefix
    assert set(report.equalities) <= set(report.violations)


def test_logconcave_report_shape():
    report = scan_log_concavity("sigma", MexParams(1, 2, 1, 0), 2, 50)
    d = report.to_json_dict()
    assert d["params"] == {"kind": "sigma", "s": 1, "M": 2, "A": 1, "r": 0}
    assert d["range"] == [2, 50]
    assert isinstance(d["violations"], list)
    assert d["ordering"] == []
    # determinism
    again = scan_log_concavity("sigma", MexParams(1, 2, 1, 0), 2, 50)
    assert again.to_json_dict() == d


def test_logconcave_validation():
    with pytest.raises(ValidationError):
        scan_log_concavity("sigma", MexParams(1, 2, 1, 0), 0, 10)
    with pytest.raises(ValidationError):
        scan_log_concavity("sigma", MexParams(1, 2, 1, 0), 10, 5)
    with pytest.raises(ValidationError):
        scan_log_concavity("sigma", MexParams(1, 2, 1, 0), 1, 50, order=20)


def test_bias_trivial_modulus():
    report = scan_bias("sigma", 1, 1, 0, 1, 20)
    assert all(e.perm == (1,) and e.ties == () for e in report.ordering)
    assert report.stabilized_at == 1
    assert report.violations == ()


def test_bias_varsigma_r0_all_ties():
    report = scan_bias("varsigma", 1, 3, 0, 1, 40)
    for entry in report.ordering:
        assert entry.perm == (1, 2, 3)
        assert entry.ties == ((1, 2, 3),)
    assert report.stabilized_at == 1


def test_bias_sigma_orderings_are_permutations():
    report = scan_bias("sigma", 1, 4, 1, 1, 60)
    for entry in report.ordering:
        assert sorted(entry.perm) == [1, 2, 3, 4]
        for group in entry.ties:
            assert len(group) >= 2
            assert sorted(group) == list(group)


def test_bias_sigma_known_small_orderings():
    # sigma, s=1, M=2, r=0: values (A=1 first) are n=1: (0,1); n=2: (1,1);
    # n=3: (2,1); n=4: (3,2).  The ordering flips at n=3 and then stays.
    report = scan_bias("sigma", 1, 2, 0, 1, 4)
    perms = [e.perm for e in report.ordering]
    assert perms == [(1, 2), (1, 2), (2, 1), (2, 1)]
    assert report.ordering[1].ties == ((1, 2),)
    assert report.stabilized_at == 3


def test_bias_stabilized_none_when_changing_at_end():
    report = scan_bias("sigma", 1, 2, 0, 1, 3)
    assert [e.perm for e in report.ordering] == [(1, 2), (1, 2), (2, 1)]
    assert report.stabilized_at is None
    assert "stabilized_at" not in report.to_json_dict()


def test_bias_single_point_range():
    report = scan_bias("sigma", 1, 2, 0, 5, 5)
    assert report.stabilized_at == 5


def test_bias_report_shape_and_determinism():
    report = scan_bias("varsigma", 2, 3, 1, 1, 25)
    d = report.to_json_dict()
    assert d["params"] == {"kind": "varsigma", "s": 2, "M": 3, "r": 1}
    assert d["range"] == [1, 25]
    assert len(d["ordering"]) == 25
    assert d["ordering"][0].keys() == {"n", "perm", "ties"}
    assert scan_bias("varsigma", 2, 3, 1, 1, 25).to_json_dict() == d


def test_bias_validation():
    with pytest.raises(ValidationError):
        scan_bias("bogus", 1, 2, 0, 1, 10)
    with pytest.raises(ValidationError):
        scan_bias("sigma", 1, 2, 0, 0, 10)
    with pytest.raises(ValidationError):
        scan_bias("sigma", 1, 2, 0, 1, 50, order=10)
