"""Half-factoriality verdicts, elasticity by Davenport, and the full
imaginary classification table. Every not_hfd witness is re-multiplied.
"""

from fractions import Fraction
from functools import reduce
from operator import mul

import pytest

from normset_lab import (
    BadDiscriminant,
    WitnessSearchExhausted,
    bounded_hfd_check,
    carlitz_verdict,
    classification_check,
    elasticity_via_davenport,
    order_hfd_witness,
    order_of,
)
from normset_lab.hfd_lab import HFD_DS, UFD_DS
from normset_lab.quadratic import canonical_associate


def _remultiplies(verdict) -> bool:
    short, long_ = verdict.witness
    return (canonical_associate(reduce(mul, short.atoms)) == verdict.element
            and canonical_associate(reduce(mul, long_.atoms)) == verdict.element)


# ---------------------------------------------------------------------------
# class-number dichotomy


def test_carlitz_ufd_and_hfd():
    for d in (-1, -2, -163):
        v = carlitz_verdict(order_of(d))
        assert v.verdict == "ufd" and bool(v)
        assert v.witness is None and v.method == "carlitz"
    for d in (-5, -10, -15):
        v = carlitz_verdict(order_of(d))
        assert v.verdict == "hfd" and bool(v)


def test_carlitz_witness_d_minus_14():
    v = carlitz_verdict(order_of(-14))
    assert v.verdict == "not_hfd" and not bool(v)
    assert str(v.element) == "18+0*w"
    short, long_ = v.witness
    assert (short.length, long_.length) == (2, 3)
    assert sorted(str(a) for a in short) == ["-2+1*w", "2+1*w"]
    assert sorted(str(a) for a in long_) == ["2+0*w", "3+0*w", "3+0*w"]
    assert _remultiplies(v)


def test_carlitz_rejects_wrong_orders():
    with pytest.raises(ValueError):
        carlitz_verdict(order_of(34))
    with pytest.raises(ValueError):
        carlitz_verdict(order_of(-3, 2))


def test_carlitz_tiny_bound_exhausts():
    with pytest.raises(WitnessSearchExhausted):
        carlitz_verdict(order_of(-14), witness_bound=2)


# ---------------------------------------------------------------------------
# elasticity


def test_elasticity_via_davenport():
    assert elasticity_via_davenport(order_of(-1)) == Fraction(1)
    assert elasticity_via_davenport(order_of(-5)) == Fraction(1)   # D(Z_2)/2
    assert elasticity_via_davenport(order_of(-14)) == Fraction(2)  # D(Z_4)/2
    assert elasticity_via_davenport(order_of(-41)) == Fraction(4)  # D(Z_8)/2
    assert elasticity_via_davenport(order_of(34)) == Fraction(1)   # wide Z_2
    with pytest.raises(ValueError):
        elasticity_via_davenport(order_of(-1, 2))


# ---------------------------------------------------------------------------
# bounded window checks


def test_bounded_check_z2i():
    chk = bounded_hfd_check(order_of(-1, 2), 10)
    assert not chk.holds
    x, short, long_ = chk.witness
    assert x.norm() == 64  # the element 8
    assert (short.length, long_.length) == (2, 3)


def test_bounded_check_exceptional_order():
    assert bounded_hfd_check(order_of(-3, 2), 400).holds
    with pytest.raises(ValueError):
        bounded_hfd_check(order_of(34), 10)


# ---------------------------------------------------------------------------
# non-maximal orders


def test_order_witness_exception_pair():
    v = order_hfd_witness(-3, 2)
    assert v.verdict == "hfd" and v.method == "order_argument"
    assert v.witness is None


@pytest.mark.parametrize("d,n,elem_str", [
    (-1, 2, "8+0*w"),
    (-2, 3, "18+0*w"),
    (-7, 2, "8+0*w"),
])
def test_order_witness_direct_branches(d, n, elem_str):
    v = order_hfd_witness(d, n)
    assert v.verdict == "not_hfd" and v.method == "order_argument"
    assert str(v.element) == elem_str
    short, long_ = v.witness
    assert short.length == 2 and long_.length >= 3
    assert _remultiplies(v)


def test_order_witness_d_minus_3_window():
    v = order_hfd_witness(-3, 3)
    assert v.verdict == "not_hfd" and v.method == "direct_window"
    assert str(v.element) == "27+0*w"
    short, long_ = v.witness
    assert (short.length, long_.length) == (2, 3)
    assert sorted(str(a) for a in short) == ["-6+1*w", "3+1*w"]
    assert _remultiplies(v)


def test_order_witness_validation():
    with pytest.raises(BadDiscriminant):
        order_hfd_witness(-4, 2)
    with pytest.raises(BadDiscriminant):
        order_hfd_witness(5, 2)
    with pytest.raises(ValueError):
        order_hfd_witness(-3, 1)


# ---------------------------------------------------------------------------
# the classification table


@pytest.fixture(scope="module")
def report():
    return classification_check()


def test_classification_counts_and_ok(report):
    assert len(report) == 151
    assert report.ok
    by_expected = {}
    for row in report:
        by_expected[row.expected] = by_expected.get(row.expected, 0) + 1
    assert by_expected == {"h=1": 9, "h=2": 18, "hfd": 1, "not_hfd": 123}


def test_classification_spot_rows(report):
    rows = {(r.d, r.n): r for r in report}
    assert rows[(-163, 1)].computed == "h=1"
    assert rows[(-427, 1)].computed == "h=2"
    assert rows[(-3, 2)].computed == "hfd"
    assert rows[(-1, 2)].computed == "not_hfd"
    assert all(r.ok for r in report)


def test_classification_records_are_plain(report):
    for rec in report.to_records():
        assert set(rec) == {"d", "n", "expected", "computed", "ok", "witness"}
        w = rec["witness"]
        assert w is None or isinstance(w, (int, str, list))
        if isinstance(w, list):
            assert all(isinstance(t, str) for t in w)


def test_known_discriminant_lists():
    assert len(UFD_DS) == 9
    assert len(HFD_DS) == 18
    assert -163 in UFD_DS and -427 in HFD_DS
