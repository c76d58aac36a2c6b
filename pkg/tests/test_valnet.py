"""Valuation nets: arithmetic laws, the sequence domain, generated monoids,
factorization outcomes, covers, and the eps-flagged ideal norms.
"""

from fractions import Fraction
from functools import reduce
from math import inf

import pytest
from hypothesis import given
from hypothesis import strategies as st

from normset_lab import (
    DepthExhausted,
    DivisorCount,
    EpsVal,
    IndexMismatch,
    NetMonoid,
    SearchOutcome,
    ValNet,
    accp_chain,
    bfd_bound,
    comaximal_family,
    divides,
    e_net,
    eps_add,
    finite_cover_check,
    finite_indices,
    find_atomic_factorization,
    ffd_window,
    generated_monoid,
    ideal_norm,
    ideal_norm_product_check,
    idempotent_cover_check,
    inf_S_b,
    is_bounded,
    is_uniformly_bounded,
    length,
    load_net_monoid,
    make_net,
    max_of,
    monoid_divisors,
    net_add,
    net_factorizations,
    net_leq,
    net_lt,
    net_sub,
    omega_indices,
    omega_net,
    parse_net,
    parse_value,
    q_net,
    S_b,
    sequence_domain,
    zero_net,
)
from normset_lab.valnet_sim import DENSE, DISCRETE, INF_INDEX, IndexSet

OMEGA = omega_indices()
SEQ = sequence_domain()
FIN = finite_indices("M1", "M2")
MIX = finite_indices("M1:dense", "M2:discrete")


def fnet(a, b):
    return make_net(FIN, {"M1": a, "M2": b})


M2 = generated_monoid(FIN, [fnet(2, 0), fnet(0, 2), fnet(1, 1)])
M3 = generated_monoid(FIN, [fnet(1, 0), fnet(0, 1), fnet(1, 1)])

B23 = make_net(OMEGA, {1: 2, 3: 3})
W1 = omega_net(OMEGA, 1)
Q = q_net(OMEGA)


@st.composite
def omega_nets(draw):
    vals = draw(st.dictionaries(st.integers(1, 8), st.integers(0, 4), max_size=5))
    tail = draw(st.integers(0, 2))
    infv = draw(st.integers(0, 3))
    return make_net(OMEGA, vals, tail=tail, at_infinity=infv)


# ---------------------------------------------------------------------------
# index sets and net construction


def test_index_set_basics():
    assert MIX.tag_of("M1") == DENSE and MIX.tag_of("M2") == DISCRETE
    assert FIN.tag_of("M1") == DISCRETE  # untagged labels default discrete
    assert OMEGA.tag_of(7) == DISCRETE
    assert omega_indices(DENSE).tag_of(INF_INDEX) == DENSE
    assert MIX.valid_index("M1") and not MIX.valid_index("M3")
    assert OMEGA.valid_index(1) and OMEGA.valid_index(INF_INDEX)
    assert not OMEGA.valid_index(0) and not OMEGA.valid_index("M1")


def test_index_set_validation():
    with pytest.raises(ValueError):
        IndexSet("weird")
    with pytest.raises(ValueError):
        finite_indices("A:discrete", "A:dense")  # duplicate label
    with pytest.raises(ValueError):
        finite_indices("A:squishy")


def test_make_net_canonicalizes():
    a = make_net(OMEGA, {1: 2, 3: 3, 5: 0})
    b = make_net(OMEGA, {3: 3, 1: 2})
    assert a == b  # equal functions compare equal
    assert a.support == ((1, 2), (3, 3))
    # entries equal to the tail are not stored
    c = make_net(OMEGA, {2: 1, 4: 1}, tail=1)
    assert c.support == ()
    assert c.value_at(99) == 1


def test_make_net_value_rules():
    with pytest.raises(ValueError):
        make_net(OMEGA, {1: -1})
    with pytest.raises(ValueError):
        make_net(OMEGA, {1: Fraction(1, 2)})  # omega indices are discrete
    with pytest.raises(ValueError):
        make_net(FIN, {"M1": 1}, tail=1)  # finite index sets have no tail
    half = make_net(MIX, {"M1": Fraction(1, 2), "M2": 1})
    assert half.value_at("M1") == Fraction(1, 2)
    whole = make_net(MIX, {"M1": Fraction(4, 2)})
    assert whole.value_at("M1") == 2 and isinstance(whole.value_at("M1"), int)
    # at_infinity defaults to the tail
    assert make_net(OMEGA, {}, tail=1).at_infinity == 1
    with pytest.raises(ValueError):
        make_net(OMEGA, {INF_INDEX: 1})


def test_str_forms():
    assert str(make_net(OMEGA, {1: 2}, tail=1)) == "(1:2, tail:1, inf:1)"
    assert str(zero_net(OMEGA)) == "(tail:0, inf:0)"
    assert str(fnet(2, 0)) == "(M1:2)"
    assert str(zero_net(FIN)) == "(0)"


# ---------------------------------------------------------------------------
# arithmetic laws


@given(a=omega_nets(), b=omega_nets(), c=omega_nets())
def test_addition_laws(a, b, c):
    assert net_add(a, b) == net_add(b, a)
    assert net_add(net_add(a, b), c) == net_add(a, net_add(b, c))
    assert net_add(a, zero_net(OMEGA)) == a


@given(a=omega_nets(), b=omega_nets())
def test_sub_inverts_add(a, b):
    s = net_add(a, b)
    assert net_sub(s, b) == a
    assert divides(a, s)
    assert net_leq(a, s)


@given(a=omega_nets(), b=omega_nets())
def test_divides_iff_subtractable(a, b):
    assert divides(a, b) == (net_sub(b, a) is not None)
    if net_leq(a, b) and net_leq(b, a):
        assert a == b
    assert not net_lt(a, a)


def test_index_mismatch():
    with pytest.raises(IndexMismatch):
        net_add(B23, fnet(1, 0))
    with pytest.raises(IndexMismatch):
        net_leq(Q, fnet(1, 1))


def test_length():
    assert length(Q) == inf
    assert length(W1) == inf
    assert length(B23) == 5
    assert length(e_net(OMEGA, 5)) == 1
    assert length(make_net(OMEGA, {}, tail=0, at_infinity=2)) == 2
    assert length(zero_net(OMEGA)) == 0


def test_named_net_identities():
    assert net_add(e_net(OMEGA, 1), W1) == Q
    assert omega_net(OMEGA, 0) == Q
    for k in range(5):
        wk = omega_net(OMEGA, k)
        assert net_sub(wk, e_net(OMEGA, k + 1)) == omega_net(OMEGA, k + 1)
    assert net_lt(omega_net(OMEGA, 2), W1)
    for i in (1, 2, 17):
        assert Q.value_at(i) == 1
    assert Q.at_infinity == 1


# ---------------------------------------------------------------------------
# membership


def test_sequence_domain_membership():
    for x in (Q, W1, B23, e_net(OMEGA, 7), zero_net(OMEGA)):
        assert SEQ.contains(x)
    stranded = make_net(OMEGA, {}, tail=1, at_infinity=0)
    assert not SEQ.contains(stranded)
    assert not SEQ.contains(fnet(1, 1))  # wrong index set


def test_generated_membership():
    assert M2.contains(fnet(2, 2))
    assert M2.contains(fnet(1, 1))
    assert M2.contains(zero_net(FIN))
    assert not M2.contains(fnet(1, 0))
    assert not M2.contains(fnet(0, 3))
    with pytest.raises(DepthExhausted):
        M2.contains(fnet(8, 8), depth=2)


def test_monoid_validation():
    with pytest.raises(ValueError):
        NetMonoid(FIN, "generated", ())
    with pytest.raises(ValueError):
        generated_monoid(FIN, [zero_net(FIN)])
    with pytest.raises(IndexMismatch):
        generated_monoid(FIN, [B23])
    with pytest.raises(ValueError):
        NetMonoid(FIN, "sequence_domain")


# ---------------------------------------------------------------------------
# divisors and length sets


def test_divisors_sequence_finite_support():
    divs = monoid_divisors(SEQ, B23)
    assert len(divs) == 11  # (2+1)(3+1) - 1 nonzero sub-nets
    assert B23 in divs
    for d in divs:
        assert divides(d, B23)
        assert SEQ.contains(d)


def test_divisors_sequence_with_tail():
    divs = monoid_divisors(SEQ, W1, depth=6)
    assert W1 in divs
    assert omega_net(OMEGA, 2) in divs
    assert e_net(OMEGA, 3) in divs
    assert e_net(OMEGA, 1) not in divs  # W1 is zero at index 1
    for d in divs:
        assert divides(d, W1)


def test_divisors_generated():
    divs = monoid_divisors(M2, fnet(2, 2))
    assert divs == sorted(
        [fnet(1, 1), fnet(2, 0), fnet(0, 2), fnet(2, 2)],
        key=lambda x: (x.tail, x.at_infinity, tuple((str(i), v) for i, v in x.support)),
    )
    # a generator that splits is still a divisor
    assert fnet(1, 1) in monoid_divisors(M3, fnet(1, 1))
    with pytest.raises(DepthExhausted):
        monoid_divisors(M2, fnet(8, 8), depth=2)


def test_s_b_and_bfd_bound():
    assert S_b(SEQ, B23) == {1, 2, 3, 4, 5}
    assert inf_S_b(SEQ, B23) == 1
    assert bfd_bound(SEQ, B23) == 5
    assert S_b(SEQ, W1, depth=6) == {1, 2, 3, 4, 5, inf}
    assert bfd_bound(SEQ, W1) is None       # infinite length
    assert bfd_bound(SEQ, zero_net(OMEGA)) is None
    assert S_b(M3, fnet(1, 1)) == {1, 2}
    assert bfd_bound(M3, fnet(1, 1)) == 2
    assert S_b(M2, fnet(2, 2)) == {2, 4}
    assert bfd_bound(M2, fnet(2, 2)) == 2


# ---------------------------------------------------------------------------
# factorization


def test_factorizations_generated():
    facs = net_factorizations(M2, fnet(2, 2))
    assert len(facs) == 2
    shapes = {tuple(sorted(str(a) for a in f)) for f in facs}
    assert shapes == {("(M1:1, M2:1)", "(M1:1, M2:1)"), ("(M1:2)", "(M2:2)")}
    for f in facs:
        assert reduce(net_add, f.atoms) == fnet(2, 2)
    # the redundant generator (1,1) = (1,0) + (0,1) never appears as an atom
    facs3 = net_factorizations(M3, fnet(1, 1))
    assert len(facs3) == 1 and facs3[0].length == 2


def test_factorizations_edge_cases():
    assert net_factorizations(M2, fnet(1, 0)) == ()
    with pytest.raises(ValueError):
        net_factorizations(M2, zero_net(FIN))
    with pytest.raises(ValueError):
        net_factorizations(SEQ, B23)
    with pytest.raises(DepthExhausted):
        net_factorizations(M2, fnet(8, 8), depth=2)


def test_find_atomic_sequence():
    out = find_atomic_factorization(SEQ, B23)
    assert out.status == "found" and bool(out)
    assert out.value.length == 5
    assert reduce(net_add, out.value.atoms) == B23
    pend = find_atomic_factorization(SEQ, W1)
    assert pend.status == "none_within_depth" and not bool(pend)
    assert find_atomic_factorization(SEQ, Q).status == "none_within_depth"
    with pytest.raises(ValueError):
        find_atomic_factorization(SEQ, make_net(OMEGA, {}, tail=1, at_infinity=0))
    with pytest.raises(ValueError):
        find_atomic_factorization(SEQ, zero_net(OMEGA))


def test_find_atomic_generated():
    assert find_atomic_factorization(M2, fnet(2, 2)).status == "found"
    assert find_atomic_factorization(M2, fnet(1, 0)).status == "proven_none"
    deep = find_atomic_factorization(M2, fnet(8, 8), depth=3)
    assert deep.status == "none_within_depth"


def test_accp_chain_sequence():
    chain = accp_chain(SEQ, W1, 10)
    assert chain == [omega_net(OMEGA, k) for k in range(1, 11)]
    chain50 = accp_chain(SEQ, W1, 50)
    assert len(chain50) == 50
    for cur, nxt in zip(chain50, chain50[1:]):
        assert net_lt(nxt, cur) and divides(nxt, cur)
    # zero tail runs out after ||b|| - 1 strict descents
    assert accp_chain(SEQ, B23, 5) is not None
    assert accp_chain(SEQ, B23, 6) is None


def test_accp_chain_generated():
    chain = accp_chain(M2, fnet(2, 2), 2)
    assert chain is not None and len(chain) == 2
    assert divides(chain[1], chain[0]) and chain[1] != chain[0]
    assert accp_chain(M2, fnet(2, 2), 4) is None
    assert accp_chain(M2, fnet(2, 2), 0) is None


def test_boundedness_flags():
    for b in (Q, W1, B23):
        assert is_bounded(b)
        assert is_uniformly_bounded(b)


# ---------------------------------------------------------------------------
# supports, comaximal families, covers


def test_max_of():
    mb = max_of(B23)
    assert not mb.cofinite and mb.positive == (1, 3)
    assert mb.covers(1) and mb.covers(3) and not mb.covers(2)
    assert not mb.covers(INF_INDEX)
    mw = max_of(W1)
    assert mw.cofinite and mw.excluded == (1,)
    assert mw.covers(5) and not mw.covers(1) and mw.covers(INF_INDEX)
    assert max_of(fnet(2, 0)).positive == ("M1",)


def test_comaximal_sequence():
    fam = comaximal_family(SEQ, B23, 2)
    assert fam == [e_net(OMEGA, 1), e_net(OMEGA, 3)]
    assert comaximal_family(SEQ, B23, 3) is None
    fam5 = comaximal_family(SEQ, W1, 5)
    assert len(fam5) == 5
    for d in fam5:
        assert divides(d, W1)
    sups = [max_of(d) for d in fam5]
    for i, x in enumerate(sups):
        for y in sups[i + 1:]:
            assert not (set(x.positive) & set(y.positive))


def test_comaximal_generated():
    fam = comaximal_family(M2, fnet(2, 2), 2)
    assert fam is not None
    assert sorted(str(d) for d in fam) == ["(M1:2)", "(M2:2)"]
    assert comaximal_family(M2, fnet(2, 2), 3) is None


def test_finite_cover_sequence():
    assert finite_cover_check(SEQ, B23, [1, 3])
    assert not finite_cover_check(SEQ, B23, [1])
    assert not finite_cover_check(SEQ, Q, [1, 2, 3])
    assert not finite_cover_check(SEQ, W1, [2, 3, 4])
    with pytest.raises(ValueError):
        finite_cover_check(SEQ, B23, [0])


def test_finite_cover_generated():
    assert finite_cover_check(M2, fnet(2, 2), ["M1", "M2"])
    assert not finite_cover_check(M2, fnet(2, 2), ["M1"])
    with pytest.raises(ValueError):
        finite_cover_check(M2, fnet(2, 2), ["M3"])


def test_idempotent_cover():
    assert idempotent_cover_check(SEQ)
    both = generated_monoid(MIX, [make_net(MIX, {"M1": 1, "M2": 1})])
    assert idempotent_cover_check(both)
    dense_only = generated_monoid(MIX, [make_net(MIX, {"M1": 1})])
    assert not idempotent_cover_check(dense_only)
    disc_only = generated_monoid(MIX, [make_net(MIX, {"M2": 1})])
    assert idempotent_cover_check(disc_only)


def test_ffd_window():
    assert ffd_window(SEQ, B23) == DivisorCount(11, True)
    trunc = ffd_window(SEQ, W1)
    assert not trunc.exact and trunc.count > 0
    assert ffd_window(M2, fnet(2, 2)) == DivisorCount(4, True)
    assert str(DivisorCount(4, True)) == "4"
    assert "depth" in str(DivisorCount(4, False))


# ---------------------------------------------------------------------------
# eps values and ideal norms


def test_eps_add_identities():
    # attained values add plainly
    assert eps_add(EpsVal(2), EpsVal(3), DISCRETE) == EpsVal(5, True)
    # a dangling eps in a discrete group is a full step
    assert eps_add(EpsVal(1, False), EpsVal(2, True), DISCRETE) == EpsVal(4, True)
    # in a dense group the eps survives
    assert eps_add(EpsVal(1, False), EpsVal(2, True), DENSE) == EpsVal(3, False)
    assert eps_add(EpsVal(1, False), EpsVal(2, False), DENSE) == EpsVal(3, False)
    assert str(EpsVal(2, False)) == "2+eps"
    assert str(EpsVal(2)) == "2"


def test_ideal_norm():
    n = ideal_norm(SEQ, [B23, e_net(OMEGA, 1)])
    assert n[1] == EpsVal(1, True)
    assert n[3] == EpsVal(0, True)
    assert n["tail"] == EpsVal(0, True)
    assert n["inf"] == EpsVal(0, True)
    m = ideal_norm(SEQ, [W1, omega_net(OMEGA, 2)])
    assert m["tail"] == EpsVal(1, True)
    assert m[1] == EpsVal(0, True) and m[2] == EpsVal(0, True)
    with pytest.raises(ValueError):
        ideal_norm(SEQ, [])
    with pytest.raises(IndexMismatch):
        ideal_norm(SEQ, [fnet(1, 0)])


def test_ideal_norm_product_additivity():
    assert ideal_norm_product_check(SEQ, [e_net(OMEGA, 1)], [e_net(OMEGA, 1)])
    assert ideal_norm_product_check(SEQ, [B23, e_net(OMEGA, 1)], [W1])
    assert ideal_norm_product_check(SEQ, [W1, omega_net(OMEGA, 3)], [Q, B23])
    assert ideal_norm_product_check(M2, [fnet(2, 0)], [fnet(0, 2), fnet(1, 1)])


@given(st.data())
def test_ideal_norm_product_random(data):
    members = st.builds(
        lambda vals, tail: make_net(OMEGA, vals, tail=tail),
        st.dictionaries(st.integers(1, 6), st.integers(0, 3), max_size=4),
        st.integers(0, 2),
    )
    gens_i = data.draw(st.lists(members, min_size=1, max_size=3))
    gens_j = data.draw(st.lists(members, min_size=1, max_size=3))
    assert ideal_norm_product_check(SEQ, gens_i, gens_j)


# ---------------------------------------------------------------------------
# parsing and monoid files


def test_parse_value():
    assert parse_value("1/2") == Fraction(1, 2)
    assert parse_value(" 3 ") == 3
    assert isinstance(parse_value("4/2"), Fraction)


def test_parse_net_named():
    assert parse_net(SEQ, "q") == Q
    assert parse_net(SEQ, "0") == zero_net(OMEGA)
    assert parse_net(SEQ, "omega3") == omega_net(OMEGA, 3)
    assert parse_net(SEQ, "w3") == omega_net(OMEGA, 3)
    assert parse_net(SEQ, "e7") == e_net(OMEGA, 7)
    assert parse_net(OMEGA, "e7") == e_net(OMEGA, 7)  # bare index set works


def test_parse_net_sparse():
    got = parse_net(SEQ, "1:2, 3:1, tail:1, inf:1")
    assert got == make_net(OMEGA, {1: 2, 3: 1}, tail=1, at_infinity=1)
    assert parse_net(M2, "M1:2,M2:2") == fnet(2, 2)
    half = parse_net(MIX, "M1:1/2")
    assert half.value_at("M1") == Fraction(1, 2)
    with pytest.raises(ValueError):
        parse_net(SEQ, "garbage")
    with pytest.raises(ValueError):
        parse_net(M2, "M9:1")


def test_load_net_monoid_generated(tmp_path):
    p = tmp_path / "mono.valnet"
    p.write_text(
        "# a two-generator test monoid\n"
        "indexset finite M1:dense M2:discrete\n"
        "kind generated\n"
        "name mixed pair\n"
        "atom M1:1/2,M2:1\n"
        "atom M2:1\n",
        encoding="utf-8",
    )
    m = load_net_monoid(p)
    assert m.kind == "generated" and m.name == "mixed pair"
    assert len(m.atoms) == 2
    assert m.atoms[0].value_at("M1") == Fraction(1, 2)
    assert m.contains(net_add(m.atoms[0], m.atoms[1]))


def test_load_net_monoid_sequence(tmp_path):
    p = tmp_path / "seq.valnet"
    p.write_text(
        "indexset omega_plus_point dense\n"
        "kind sequence_domain\n",
        encoding="utf-8",
    )
    m = load_net_monoid(p)
    assert m.kind == "sequence_domain"
    assert m.index_set.infinity_tag == DENSE
    assert m.contains(parse_net(m, "q"))


def test_load_net_monoid_errors(tmp_path):
    p = tmp_path / "bad.valnet"
    p.write_text("indexset omega_plus_point\n", encoding="utf-8")
    with pytest.raises(ValueError):
        load_net_monoid(p)
    p.write_text("frobnicate 3\n", encoding="utf-8")
    with pytest.raises(ValueError):
        load_net_monoid(p)
