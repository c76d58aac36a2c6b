import pytest
from hypothesis import given, settings, strategies as st

from normset_lab.errors import BadDiscriminant, NeedsBound
from normset_lab.quadratic import (canonical_associate, divide_exact,
                                   element_monoid_view, elements_of_norm,
                                   exact_real_search_bound, factor_element,
                                   fundamental_unit, is_irreducible,
                                   norm_plus_unit, order_fundamental_unit,
                                   order_of, parse_element, units)

ORDERS = [order_of(-1), order_of(-3), order_of(-7), order_of(-10),
          order_of(-14), order_of(-3, 2), order_of(-2, 3), order_of(-1, 2),
          order_of(2), order_of(5), order_of(34), order_of(2, 2)]

coord = st.integers(min_value=-30, max_value=30)


@pytest.mark.parametrize("order", ORDERS, ids=str)
@given(a=coord, b=coord, c=coord, e=coord)
@settings(max_examples=40)
def test_norm_is_conjugate_product_and_multiplicative(order, a, b, c, e):
    x = order.element(a, b)
    y = order.element(c, e)
    xx = x * x.conj()
    assert xx.b == 0 and xx.a == x.norm()
    assert (x * y).norm() == x.norm() * y.norm()
    assert x.conj().conj() == x
    assert (x * y).conj() == x.conj() * y.conj()


def test_order_construction_guards():
    with pytest.raises(BadDiscriminant):
        order_of(12)
    with pytest.raises(BadDiscriminant):
        order_of(0)
    with pytest.raises(BadDiscriminant):
        order_of(1)
    with pytest.raises(BadDiscriminant):
        order_of(-5, 0)


def test_discriminants():
    assert order_of(-1).discriminant == -4
    assert order_of(-3).discriminant == -3
    assert order_of(-3, 2).discriminant == -12
    assert order_of(5).discriminant == 5
    assert order_of(34).discriminant == 136
    assert order_of(2, 2).discriminant == 32


def test_half_kind_norm_values():
    # Z[(1+sqrt(-3))/2]: N(a + b xi) = a^2 + ab + b^2
    o = order_of(-3)
    assert o.element(1, 1).norm() == 3
    assert o.element(2, -1).norm() == 3
    assert o.element(0, 1).norm() == 1  # xi is a unit here
    # Z[(1+sqrt(5))/2]: N(xi) = -1
    assert order_of(5).element(0, 1).norm() == -1


def test_unit_groups():
    assert len(units(order_of(-1))) == 4
    assert len(units(order_of(-3))) == 6
    assert len(units(order_of(-7))) == 2
    assert len(units(order_of(-1, 2))) == 2  # i leaves the order Z[2i]
    for o in (order_of(-1), order_of(-3), order_of(-10)):
        for u in units(o):
            assert u.is_unit() and u.norm() in (1, -1)
    with pytest.raises(ValueError):
        units(order_of(2))


def test_fundamental_units_pell_fixtures():
    eps, sign = fundamental_unit(2)
    assert (eps.a, eps.b, sign) == (1, 1, -1)
    eps, sign = fundamental_unit(3)
    assert (eps.a, eps.b, sign) == (2, 1, 1)
    eps, sign = fundamental_unit(5)
    assert (eps.a, eps.b, sign) == (0, 1, -1)  # (1+sqrt 5)/2
    eps, sign = fundamental_unit(34)
    assert (eps.a, eps.b, sign) == (35, 6, 1)
    for d in (2, 3, 5, 7, 10, 13, 34, 94):
        eps, sign = fundamental_unit(d)
        assert eps.norm() == sign


def test_order_fundamental_unit_conductor():
    # Z[2 sqrt 2]: (1+sqrt2)^2 = 3 + 2 sqrt 2, the least unit in the suborder
    o = order_of(2, 2)
    eps, sign = order_fundamental_unit(o)
    assert (eps.a, eps.b, sign) == (3, 1, 1)
    assert eps.norm() == 1


@pytest.mark.parametrize("order", [o for o in ORDERS if o.is_imaginary], ids=str)
@given(a=coord, b=coord)
@settings(max_examples=30)
def test_canonical_associate_is_orbit_invariant(order, a, b):
    x = order.element(a, b)
    if x.is_zero():
        return
    reps = {canonical_associate(u * x) for u in units(order)}
    rep = canonical_associate(x)
    assert reps == {rep}
    assert abs(rep.norm()) == abs(x.norm())


def test_canonical_associate_real():
    o = order_of(34)
    x = o.element(6, 1)  # norm 2
    eps, _ = order_fundamental_unit(o)
    for assoc in (x, -x, x * eps, -(x * eps * eps)):
        assert canonical_associate(assoc) == canonical_associate(x)


def test_canonical_associate_same_norm():
    # N(eps) = -1 in Z[sqrt(10)], so the full associate class of 10*eps mixes
    # norms -100 and +100; a norm search must slide by eps^2 instead
    o = order_of(10)
    eps, sign = order_fundamental_unit(o)
    assert sign == -1
    u = norm_plus_unit(o)
    assert u == eps * eps and u.norm() == 1
    x = o.element(30, 10)  # 10 * eps, norm -100
    assert canonical_associate(x) == o.element(10, 0)
    for assoc in (x, -x, x * u, -(x * u * u)):
        assert canonical_associate(assoc, same_norm=True) == x
    # norm-+1 unit orders: both notions coincide
    o34 = order_of(34)
    y = o34.element(5, 1)  # norm -9
    assert canonical_associate(y, same_norm=True) == canonical_associate(y)


def _imaginary_norm_oracle(order, m, box=80):
    hits = set()
    for a in range(-box, box + 1):
        for b in range(-box, box + 1):
            x = order.element(a, b)
            if x.norm() == m:
                hits.add((a, b))
    return hits


@pytest.mark.parametrize("order", [order_of(-1), order_of(-3), order_of(-10),
                                   order_of(-3, 2), order_of(-1, 2)], ids=str)
def test_elements_of_norm_imaginary_against_double_loop(order):
    for m in list(range(1, 40)) + [49, 64, 81]:
        sols = elements_of_norm(order, m)
        assert sols.exact
        assert {(x.a, x.b) for x in sols} == _imaginary_norm_oracle(order, m)
        assert all(x.norm() == m for x in sols)
    assert elements_of_norm(order, -5) == []
    assert elements_of_norm(order, -5).exact  # negative norms provably absent


def test_elements_of_norm_real_needs_bound():
    with pytest.raises(NeedsBound):
        elements_of_norm(order_of(34), 2)


def test_elements_of_norm_real_witnesses():
    o = order_of(34)
    for m, coords in [(2, (6, 1)), (-9, (5, 1)), (-25, (3, 1)), (-18, (4, 1))]:
        bound = exact_real_search_bound(o, m)
        sols = elements_of_norm(o, m, bound)
        assert sols.exact
        assert any((x.a, x.b) == coords or x.norm() == m for x in sols)
        assert all(x.norm() == m for x in sols)
    # 3 is not a norm of Z[sqrt 34]: x^2 = 3 mod 17 has no solution
    sols = elements_of_norm(o, 3, exact_real_search_bound(o, 3))
    assert sols == [] and sols.exact


def test_exact_real_bound_is_saturating():
    # growing the bound past the exact one adds no associate classes
    o = order_of(34)
    for m in (2, -9, 30, -25):
        b0 = exact_real_search_bound(o, m)
        small = {(x.a, x.b) for x in elements_of_norm(o, m, b0)}
        large = {(x.a, x.b) for x in elements_of_norm(o, m, b0 + 25)}
        assert small == large


def test_elements_of_norm_negative_unit_orders():
    # the smallest norm -100 element of Z[sqrt(10)] is 10*eps = 30+10*w, well
    # above the naive coordinate range of a norm +-100 solution
    o = order_of(10)
    sols = elements_of_norm(o, -100, exact_real_search_bound(o, -100))
    assert sols.exact
    assert [(x.a, x.b) for x in sols] == [(30, 10)]
    o2 = order_of(2)
    for m in (-2, 7, -7, 14):
        sols = elements_of_norm(o2, m, exact_real_search_bound(o2, m))
        assert sols.exact and sols
        assert all(x.norm() == m for x in sols)
    # saturation across both norm-(-1)-unit orders
    for o_, m in ((o, -100), (o2, -7)):
        b0 = exact_real_search_bound(o_, m)
        small = {(x.a, x.b) for x in elements_of_norm(o_, m, b0)}
        large = {(x.a, x.b) for x in elements_of_norm(o_, m, b0 + 40)}
        assert small == large


def test_is_irreducible_gaussian():
    o = order_of(-1)
    assert is_irreducible(o.element(1, 1))
    assert is_irreducible(o.element(3, 0))
    assert is_irreducible(o.element(2, 1))
    assert not is_irreducible(o.element(2, 0))
    assert not is_irreducible(o.element(5, 0))
    with pytest.raises(ValueError):
        is_irreducible(o.element(1, 0))
    with pytest.raises(ValueError):
        is_irreducible(order_of(2).element(2, 0))


def test_factor_element_gaussian_unique():
    o = order_of(-1)
    facts = factor_element(o, o.element(10, 0))
    assert len(facts) == 1
    assert facts[0].length == 4
    prod = o.one()
    for atom in facts[0]:
        prod = prod * atom
    assert canonical_associate(prod) == canonical_associate(o.element(10, 0))


def test_factor_element_two_lengths():
    o = order_of(-14)
    lengths = {f.length for f in factor_element(o, o.element(18, 0))}
    assert lengths == {2, 3}
    lengths81 = {f.length for f in factor_element(o, o.element(81, 0))}
    assert lengths81 == {2, 4}


def test_divide_exact():
    o = order_of(-1)
    x, y = o.element(10, 0), o.element(1, 1)
    q = divide_exact(x, y)
    assert q is not None and q * y == x
    assert divide_exact(o.element(3, 0), y) is None


def test_parse_element_round_trip():
    o = order_of(-14)
    for text, coords in [("3+2w", (3, 2)), ("-w", (0, -1)), ("7", (7, 0)),
                         ("2 - 3*w", (2, -3)), ("w+1", (1, 1))]:
        x = parse_element(o, text)
        assert (x.a, x.b) == coords
    with pytest.raises(ValueError):
        parse_element(o, "")
    with pytest.raises(ValueError):
        parse_element(o, "3+2q")


def test_element_window_includes_integers_by_magnitude():
    # rational integers are windowed by |m|, other elements by |norm|
    view = element_monoid_view(order_of(-14))
    window = view.elements_up_to(20)
    assert any(x.b == 0 and x.a == 4 for x in window)      # N(4) = 16 > 20
    assert any(abs(x.norm()) == 15 and x.b != 0 for x in window)
    assert all(abs(x.a) <= 20 if x.b == 0 else abs(x.norm()) <= 20
               for x in window)
