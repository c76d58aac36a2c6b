from fractions import Fraction
from itertools import combinations, combinations_with_replacement, product

import pytest
from hypothesis import given, settings, strategies as st

from normset_lab.errors import CapExceeded, SearchBudgetExceeded
from normset_lab.monoid_core import (AbelianGroup, FactorMultiset, FactorSession,
                                     davenport, davenport_witness,
                                     elasticity_window,
                                     invariant_factors_from_table,
                                     is_hfm_window, is_length_factorial_window,
                                     is_ufm_window, numerical_monoid_view)


# ---------------------------------------------------------------------------
# abelian groups


def test_invariant_factor_normalization():
    assert AbelianGroup.from_cyclic([2, 3]).invariant_factors == (6,)
    assert AbelianGroup.from_cyclic([2, 2]).invariant_factors == (2, 2)
    assert AbelianGroup.from_cyclic([4, 6]).invariant_factors == (2, 12)
    assert AbelianGroup.from_cyclic([2, 2, 3, 9]).invariant_factors == (2, 6, 9) or \
        AbelianGroup.from_cyclic([2, 2, 3, 9]).invariant_factors == (6, 18)
    assert AbelianGroup.from_cyclic([1, 1]).invariant_factors == ()


def test_invariant_factor_chain_enforced():
    with pytest.raises(ValueError):
        AbelianGroup((4, 2))
    with pytest.raises(ValueError):
        AbelianGroup((1,))


def test_from_string_forms():
    assert AbelianGroup.from_string("3,3").invariant_factors == (3, 3)
    assert AbelianGroup.from_string("Z_2 x Z_4").invariant_factors == (2, 4)
    assert AbelianGroup.from_string("trivial").invariant_factors == ()
    assert str(AbelianGroup((2, 4))) == "Z_2 x Z_4"


@given(st.lists(st.integers(min_value=1, max_value=12), max_size=4))
def test_from_cyclic_preserves_order_and_chain(orders):
    g = AbelianGroup.from_cyclic(orders)
    expect = 1
    for m in orders:
        expect *= m
    assert g.order == expect
    fs = g.invariant_factors
    assert all(b % a == 0 for a, b in zip(fs, fs[1:]))


def test_group_table_reconstruction():
    for fs in [(), (2,), (4,), (2, 2), (2, 4), (3, 3), (2, 2, 2), (12,)]:
        g = AbelianGroup(fs)
        elems = list(g.elements())
        assert invariant_factors_from_table(elems, g.add, g.zero()) == fs


# ---------------------------------------------------------------------------
# Davenport constant against an independent brute oracle


def _davenport_oracle(g: AbelianGroup) -> int:
    """Definition chased literally: least n such that every size-n multiset
    over g has a nonempty zero-sum sub-multiset.
    """
    dims = g.invariant_factors
    elems = [e for e in g.elements() if any(e)]
    if not elems:
        return 1

    def has_zero_subsum(ms):
        for r in range(1, len(ms) + 1):
            for sub in set(combinations(ms, r)):
                tot = tuple(sum(v) % d for v, d in zip(zip(*sub), dims))
                if not any(tot):
                    return True
        return False

    n = 1
    while True:
        if all(has_zero_subsum(ms)
               for ms in combinations_with_replacement(elems, n)):
            return n
        n += 1


@pytest.mark.parametrize("factors", [(), (2,), (3,), (4,), (2, 2), (5,),
                                     (2, 4), (3, 3), (2, 2, 2), (6,)])
def test_davenport_matches_oracle(factors):
    g = AbelianGroup(factors)
    assert davenport(g) == _davenport_oracle(g)


def test_davenport_witness_is_zero_sum_free_and_maximal():
    for factors in [(2,), (2, 2), (4,), (3, 3), (2, 4)]:
        g = AbelianGroup(factors)
        D, wit = davenport_witness(g)
        assert len(wit) == D - 1
        dims = g.invariant_factors
        for r in range(1, len(wit) + 1):
            for sub in combinations(wit, r):
                tot = tuple(sum(v) % d for v, d in zip(zip(*sub), dims))
                assert any(tot), (factors, sub)


def test_davenport_known_values():
    # cyclic: D = n; rank-2 p-groups: D = d1 + d2 - 1
    assert davenport(AbelianGroup(())) == 1
    assert davenport(AbelianGroup((2,))) == 2
    assert davenport(AbelianGroup((2, 2))) == 3
    assert davenport(AbelianGroup((4,))) == 4
    assert davenport(AbelianGroup((3, 3))) == 5
    assert davenport(AbelianGroup((2, 6))) == 7
    assert davenport(AbelianGroup((4, 4))) == 7


def test_davenport_cap_and_budget():
    with pytest.raises(CapExceeded):
        davenport(AbelianGroup.from_cyclic([7, 11]))
    with pytest.raises(SearchBudgetExceeded):
        davenport_witness(AbelianGroup((8, 8)), state_budget=1000)


# ---------------------------------------------------------------------------
# factorization machinery on <2,3>


def _splits_23(m: int):
    """All (count2, count3) with 2a + 3b = m."""
    return [(a, (m - 2 * a) // 3) for a in range(m // 2 + 1)
            if (m - 2 * a) % 3 == 0]


@pytest.fixture(scope="module")
def view23():
    return numerical_monoid_view(2, 3)


def test_23_factorizations_match_split_oracle(view23):
    session = FactorSession(view23)
    for m in range(2, 80):
        facts = session.factorizations(m)
        expect = {tuple(sorted([2] * a + [3] * b)) for a, b in _splits_23(m)}
        got = {tuple(sorted(f.atoms)) for f in facts}
        assert got == expect, m


def test_23_atoms(view23):
    session = FactorSession(view23)
    assert session.is_atom(2) and session.is_atom(3)
    assert not any(session.is_atom(m) for m in range(4, 40))


def test_factor_multiset_identity(view23):
    a = FactorMultiset((2, 2, 3))
    b = FactorMultiset((2, 2, 3))
    assert a == b and len(a) == 3 and list(a) == [2, 2, 3]
    assert a.length == 3


def test_23_trio_of_window_verdicts(view23):
    lf = is_length_factorial_window(view23, 200)
    assert lf.holds and lf.bound == 200

    hf = is_hfm_window(view23, 200)
    assert not hf.holds
    x, short, long_ = hf.witness
    assert x == 6
    assert sorted(short.atoms) == [3, 3] and sorted(long_.atoms) == [2, 2, 2]

    rho = elasticity_window(view23, 200)
    assert rho == Fraction(3, 2)
    assert rho.witness == 6
    assert Fraction(rho) == Fraction(3, 2)


def test_23_elasticity_monotone_in_bound(view23):
    # window elasticities never decrease as the window grows
    vals = [elasticity_window(view23, b) for b in (4, 6, 20, 100)]
    assert all(x <= y for x, y in zip(vals, vals[1:]))
    assert vals[0] == 1  # no two-length element below 6


def test_ufm_window_on_23(view23):
    v = is_ufm_window(view23, 50)
    assert not v.holds
    # either a two-factorization element or a non-prime atom is reported
    assert v.witness[0] in ("non_unique", "non_prime_atom")


def test_numerical_monoid_rejects_bad_generators():
    with pytest.raises(ValueError):
        numerical_monoid_view(0, 2)
    with pytest.raises(ValueError):
        numerical_monoid_view()


@settings(max_examples=60)
@given(st.integers(min_value=2, max_value=7), st.integers(min_value=2, max_value=9),
       st.integers(min_value=4, max_value=60))
def test_random_numerical_monoid_refactors(g1, g2, m):
    view = numerical_monoid_view(g1, g2)
    if m not in view.elements_up_to(m):
        return
    session = FactorSession(view)
    facts = session.factorizations(m)
    assert facts  # numerical monoids are atomic
    for f in facts:
        assert sum(f.atoms) == m
        assert all(session.is_atom(a) for a in f.atoms)
