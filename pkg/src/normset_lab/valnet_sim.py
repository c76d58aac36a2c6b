"""Valuation-net simulator: norms of elements as nets over an index set.

An element's norm is its tuple of valuations, one per maximal-ideal index;
multiplication becomes componentwise addition and divisibility becomes the
componentwise order. The simulator works with two monoid descriptions:

* generated: elements are finite sums of declared atom nets over a finite
  labeled index set (values are non-negative integers at discrete indices,
  non-negative rationals at dense ones);
* sequence_domain: the index set is N plus one point at infinity, and the
  elements are exactly the eventually constant nets whose value at infinity
  equals the tail constant. Atoms are the one-hot nets e_n; the nets
  omega_k (zero through index k, then ones) and q (all ones) reproduce the
  classical non-ACCP behavior: omega_k = e_{k+1} + omega_{k+1} descends
  forever, and q = e_1 + omega_1 lies in every index's ideal.

Nets are canonical: the support stores only deviations from the tail, so
equality of nets is equality of functions. All searches over infinite
divisor posets are depth-limited and report three-valued outcomes; a
"proven_none" is only produced where the enumeration is genuinely complete.

Ideal norms carry an attainment flag: (gamma, attained=False) encodes the
value gamma + epsilon of an infimum that no element reaches. Epsilons
collapse additively (m*eps ~ eps) and normalize to a full unit step in a
discrete value group (eps ~ 1).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import ceil, inf
from typing import Any, Iterable

from .errors import DepthExhausted, IndexMismatch
from .monoid_core import FactorMultiset, FactorSession, MonoidView

INF_INDEX = "inf"
DISCRETE, DENSE = "discrete", "dense"


# ---------------------------------------------------------------------------
# index sets and nets


@dataclass(frozen=True)
class IndexSet:
    """Either finitely many labeled indices (each tagged discrete or dense)
    or N plus a point at infinity, where every finite index is discrete and
    only the infinite one may be dense.
    """

    kind: str  # "finite" | "omega_plus_point"
    labels: tuple[str, ...] = ()
    tags: tuple[str, ...] = ()
    infinity_tag: str = DISCRETE

    def __post_init__(self):
        if self.kind not in ("finite", "omega_plus_point"):
            raise ValueError(f"unknown index set kind {self.kind!r}")
        if self.kind == "finite":
            if len(self.labels) != len(self.tags) or not self.labels:
                raise ValueError("finite index sets need one tag per label")
            if len(set(self.labels)) != len(self.labels):
                raise ValueError("duplicate index labels")
        for t in tuple(self.tags) + (self.infinity_tag,):
            if t not in (DISCRETE, DENSE):
                raise ValueError(f"unknown value tag {t!r}")

    def tag_of(self, idx) -> str:
        if self.kind == "finite":
            return self.tags[self.labels.index(idx)]
        return self.infinity_tag if idx == INF_INDEX else DISCRETE

    def valid_index(self, idx) -> bool:
        if self.kind == "finite":
            return idx in self.labels
        return idx == INF_INDEX or (isinstance(idx, int) and idx >= 1)


def finite_indices(*labeled: str) -> IndexSet:
    """IndexSet from "label:tag" strings, e.g. finite_indices("M1:dense", "M2:discrete")."""
    labels, tags = [], []
    for item in labeled:
        lab, _, tag = item.partition(":")
        labels.append(lab)
        tags.append(tag or DISCRETE)
    return IndexSet("finite", tuple(labels), tuple(tags))


def omega_indices(infinity_tag: str = DISCRETE) -> IndexSet:
    return IndexSet("omega_plus_point", infinity_tag=infinity_tag)


def _check_value(v, tag: str):
    if isinstance(v, bool) or not isinstance(v, (int, Fraction)):
        raise ValueError(f"net values are integers or fractions, got {v!r}")
    if v < 0:
        raise ValueError("net values are non-negative")
    if tag == DISCRETE and (isinstance(v, Fraction) and v.denominator != 1):
        raise ValueError(f"index is discrete but value {v} is fractional")
    if isinstance(v, Fraction) and v.denominator == 1:
        return int(v)
    return v


@dataclass(frozen=True)
class ValNet:
    """An eventually constant valuation net, stored sparsely.

    support lists only the indices whose value differs from tail, so two
    nets are equal as dataclasses iff they are equal as functions. The zero
    net (empty support, zero tail, zero at infinity) represents the units.
    """

    index_set: IndexSet
    support: tuple[tuple[Any, Any], ...] = ()
    tail: Any = 0
    at_infinity: Any = 0

    def value_at(self, idx):
        if idx == INF_INDEX:
            return self.at_infinity
        for i, v in self.support:
            if i == idx:
                return v
        return self.tail

    @property
    def is_zero(self) -> bool:
        return not self.support and self.tail == 0 and self.at_infinity == 0

    def support_indices(self) -> tuple:
        return tuple(i for i, _ in self.support)

    def __str__(self):
        parts = [f"{i}:{v}" for i, v in self.support]
        if self.index_set.kind == "omega_plus_point":
            parts.append(f"tail:{self.tail}")
            parts.append(f"inf:{self.at_infinity}")
        return "(" + ", ".join(parts) + ")" if parts else "(0)"


def make_net(index_set: IndexSet, values: dict | None = None, tail=0,
             at_infinity=None) -> ValNet:
    """Canonical net constructor; values is a sparse index -> value map."""
    values = values or {}
    if index_set.kind == "finite":
        if tail != 0:
            raise ValueError("finite index sets have tail 0")
        if at_infinity not in (None, 0):
            raise ValueError("finite index sets have no point at infinity")
        at_infinity = 0
    else:
        tail = _check_value(tail, DISCRETE)
        if at_infinity is None:
            at_infinity = tail
        at_infinity = _check_value(at_infinity, index_set.infinity_tag)
    sup = []
    for i, v in values.items():
        if i == INF_INDEX:
            raise ValueError("pass the infinity value via at_infinity")
        if not index_set.valid_index(i):
            raise ValueError(f"{i!r} is not an index of {index_set.kind}")
        v = _check_value(v, index_set.tag_of(i))
        if v != tail:
            sup.append((i, v))
    if index_set.kind == "finite":
        sup.sort(key=lambda p: index_set.labels.index(p[0]))
    else:
        sup.sort()
    return ValNet(index_set, tuple(sup), tail, at_infinity)


def zero_net(index_set: IndexSet) -> ValNet:
    return make_net(index_set)


def _same_index_set(a: ValNet, b: ValNet):
    if a.index_set != b.index_set:
        raise IndexMismatch("nets live over different index sets")


def _union_indices(a: ValNet, b: ValNet) -> list:
    seen = dict.fromkeys(a.support_indices())
    seen.update(dict.fromkeys(b.support_indices()))
    return list(seen)


def net_add(a: ValNet, b: ValNet) -> ValNet:
    _same_index_set(a, b)
    vals = {i: a.value_at(i) + b.value_at(i) for i in _union_indices(a, b)}
    return make_net(a.index_set, vals, tail=a.tail + b.tail,
                    at_infinity=a.at_infinity + b.at_infinity)


def net_sub(a: ValNet, b: ValNet) -> ValNet | None:
    """a - b componentwise, or None if any component would go negative."""
    _same_index_set(a, b)
    vals = {}
    for i in _union_indices(a, b):
        w = a.value_at(i) - b.value_at(i)
        if w < 0:
            return None
        vals[i] = w
    if a.tail < b.tail or a.at_infinity < b.at_infinity:
        return None
    return make_net(a.index_set, vals, tail=a.tail - b.tail,
                    at_infinity=a.at_infinity - b.at_infinity)


def net_leq(a: ValNet, b: ValNet) -> bool:
    _same_index_set(a, b)
    if a.tail > b.tail or a.at_infinity > b.at_infinity:
        return False
    return all(a.value_at(i) <= b.value_at(i) for i in _union_indices(a, b))


def net_lt(a: ValNet, b: ValNet) -> bool:
    return net_leq(a, b) and a != b


def divides(a: ValNet, b: ValNet) -> bool:
    """Model divisibility: a | b iff the net of a is componentwise <= that
    of b (the cofactor is then the componentwise difference).
    """
    return net_leq(a, b)


def length(b: ValNet):
    """The norm-sum ||b||: total of all components. Infinite as soon as the
    tail is positive; otherwise the support sum plus the value at infinity.
    """
    if b.tail != 0:
        return inf
    return sum(v for _, v in b.support) + b.at_infinity


# ---------------------------------------------------------------------------
# monoid descriptions


@dataclass(frozen=True)
class NetMonoid:
    """A monoid of nets: either finitely generated by declared atoms or the
    full sequence domain (eventually constant, value at infinity == tail).
    """

    index_set: IndexSet
    kind: str  # "generated" | "sequence_domain"
    atoms: tuple[ValNet, ...] = ()
    name: str = ""

    def __post_init__(self):
        if self.kind not in ("generated", "sequence_domain"):
            raise ValueError(f"unknown monoid kind {self.kind!r}")
        if self.kind == "generated":
            if not self.atoms:
                raise ValueError("generated monoids need at least one atom")
            for g in self.atoms:
                if g.index_set != self.index_set:
                    raise IndexMismatch("atom over the wrong index set")
                if g.is_zero:
                    raise ValueError("the zero net is a unit, not an atom")
        elif self.index_set.kind != "omega_plus_point":
            raise ValueError("the sequence domain lives over omega plus a point")

    def zero(self) -> ValNet:
        return zero_net(self.index_set)

    def contains(self, x: ValNet, depth: int = 64) -> bool:
        if x.index_set != self.index_set:
            return False
        if self.kind == "sequence_domain":
            return x.at_infinity == x.tail
        if x.is_zero:
            return True
        return x in _members_below(self, x, depth)

    def __str__(self):
        return self.name or f"{self.kind} net monoid"


def sequence_domain(infinity_tag: str = DISCRETE) -> NetMonoid:
    return NetMonoid(omega_indices(infinity_tag), "sequence_domain",
                     name="sequence domain")


def generated_monoid(index_set: IndexSet, atoms: Iterable[ValNet],
                     name: str = "") -> NetMonoid:
    return NetMonoid(index_set, "generated", tuple(atoms), name)


def e_net(index_set: IndexSet, i: int) -> ValNet:
    """The atom e_i of the sequence domain: one at index i, zero elsewhere."""
    return make_net(index_set, {i: 1}, tail=0, at_infinity=0)


def omega_net(index_set: IndexSet, k: int) -> ValNet:
    """omega_k: zero at indices 1..k, one beyond and at infinity."""
    if k < 0:
        raise ValueError("omega_k needs k >= 0")
    return make_net(index_set, {i: 0 for i in range(1, k + 1)},
                    tail=1, at_infinity=1)


def q_net(index_set: IndexSet) -> ValNet:
    """The all-ones net: the image of the element q lying in every ideal."""
    return make_net(index_set, {}, tail=1, at_infinity=1)


def _net_key(x: ValNet):
    return (x.tail, x.at_infinity, tuple((str(i), v) for i, v in x.support))


def _min_atom_length(m: NetMonoid):
    return min(length(g) for g in m.atoms)


def _members_below(m: NetMonoid, b: ValNet, depth: int) -> set[ValNet]:
    """Every element of a generated monoid that is <= b, by breadth-first
    atom accumulation (terminates: each atom adds positive length).
    Raises DepthExhausted if some sums might need more than `depth` atoms.
    """
    zero = m.zero()
    seen = {zero}
    frontier = [zero]
    for _ in range(depth):
        if not frontier:
            return seen
        nxt = []
        for x in frontier:
            for g in m.atoms:
                y = net_add(x, g)
                if y not in seen and net_leq(y, b):
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    if frontier:
        raise DepthExhausted(
            f"atom sums below {b} still growing after {depth} layers")
    return seen


def monoid_divisors(m: NetMonoid, b: ValNet, depth: int = 32) -> list[ValNet]:
    """Nonunit divisors of b inside m, i.e. members d <= b whose cofactor
    b - d is also a member. Complete for generated monoids (up to depth);
    depth-truncated for the sequence domain when b has a positive tail.
    """
    if m.kind == "generated":
        mem = _members_below(m, b, depth)
        out = [d for d in mem
               if not d.is_zero and net_sub(b, d) in mem]
        return sorted(out, key=_net_key)
    # sequence domain: divisors are exactly the member nets <= b; enumerate
    # finite-support divisors over a bounded index range, plus the tail-
    # carrying divisors obtained by lowering b at finitely many indices
    out = []
    hi = max([i for i in b.support_indices()] + [0]) + depth
    idxs = [i for i in range(1, hi + 1) if b.value_at(i) > 0]
    # finite-length divisors: cap total mass at depth to stay finite
    def rec(pos, current, budget):
        if len(out) >= 10000:
            return
        if pos == len(idxs):
            if current:
                out.append(make_net(m.index_set, dict(current)))
            return
        i = idxs[pos]
        top = min(b.value_at(i), budget)
        for v in range(0, top + 1):
            rec(pos + 1, current + ([(i, v)] if v else []), budget - v)
    rec(0, [], depth)
    if b.tail > 0:
        # divisors that keep the tail: lower finitely many components of b
        out.append(b)
        for i in range(1, hi + 1):
            v = b.value_at(i)
            if v > 0:
                out.append(net_sub(b, e_net(m.index_set, i)))
    uniq = {x for x in out if x is not None and not x.is_zero}
    return sorted(uniq, key=_net_key)


# ---------------------------------------------------------------------------
# length analytics


def S_b(m: NetMonoid, b: ValNet, depth: int = 12) -> set:
    """Lengths ||d|| of nonunit divisors of b in m, to the stated depth.
    For the sequence domain this is analytic: with zero tail every total
    from 1 to ||b|| occurs; with positive tail every depth-bounded finite
    total occurs and infinity joins (b divides b).
    """
    if m.kind == "sequence_domain":
        if b.is_zero:
            return set()
        if b.tail == 0:
            top = length(b)
            return set(range(1, top + 1))
        finite_top = sum(b.value_at(i) for i in range(1, depth + 1))
        return set(range(1, finite_top + 1)) | {inf}
    return {length(d) for d in monoid_divisors(m, b, depth)}


def inf_S_b(m: NetMonoid, b: ValNet, depth: int = 12):
    s = S_b(m, b, depth)
    return min(s) if s else None


def bfd_bound(m: NetMonoid, b: ValNet, depth: int = 12) -> int | None:
    """ceil(||b|| / inf S_b): a bound on the length of every factorization
    of b. None when ||b|| is infinite or b is a unit.
    """
    t = inf_S_b(m, b, depth)
    lb = length(b)
    if t is None or t == 0 or lb == inf:
        return None
    return ceil(Fraction(lb) / Fraction(t))


# ---------------------------------------------------------------------------
# factorization and chains


@dataclass(frozen=True)
class SearchOutcome:
    """Found / proven_none / none_within_depth, with the payload when found."""

    status: str
    value: Any = None

    def __bool__(self):
        return self.status == "found"

    def __str__(self):
        return self.status if self.value is None else f"{self.status}: {self.value}"


def _generated_view(m: NetMonoid, depth: int) -> MonoidView:
    def proper_divisors(x):
        # monoid_divisors already guarantees the cofactor is a member
        for d in monoid_divisors(m, x, depth):
            if d != x:
                yield d, net_sub(x, d)

    def divide(d, x):
        c = net_sub(x, d)
        if c is None or not m.contains(c, depth):
            return None
        return c

    return MonoidView(
        name=str(m),
        identity=m.zero(),
        op=net_add,
        divide=divide,
        proper_divisors=proper_divisors,
        key=_net_key,
        size=lambda x: int(length(x)) if length(x) != inf else 10**9,
        elements_up_to=lambda bound: [],
    )


def net_factorizations(m: NetMonoid, b: ValNet,
                       depth: int = 32) -> tuple[FactorMultiset, ...]:
    """All factorizations of b into atoms of a generated monoid. Raises
    DepthExhausted when the member enumeration cannot finish.
    """
    if m.kind != "generated":
        raise ValueError("exhaustive factorization is for generated monoids")
    if b.is_zero:
        raise ValueError("the zero net is a unit")
    if not m.contains(b, depth):
        return ()  # not a sum of atoms at all
    return FactorSession(_generated_view(m, depth)).factorizations(b)


def find_atomic_factorization(m: NetMonoid, b: ValNet,
                              depth: int = 32) -> SearchOutcome:
    """One factorization of b into atoms, three-valued.

    Sequence domain: zero tail means b is literally a finite sum of e_i
    (found); a positive tail never resolves within finite depth, so the
    honest answer is none_within_depth, not a proof of absence.
    """
    if b.is_zero:
        raise ValueError("the zero net is a unit")
    if m.kind == "sequence_domain":
        if not m.contains(b):
            raise ValueError(f"{b} is not in {m}")
        if b.tail == 0:
            atoms = []
            for i, v in b.support:
                atoms.extend([e_net(m.index_set, i)] * v)
            return SearchOutcome("found", FactorMultiset(tuple(atoms)))
        return SearchOutcome("none_within_depth")
    try:
        facts = net_factorizations(m, b, depth)
    except DepthExhausted:
        return SearchOutcome("none_within_depth")
    if facts:
        return SearchOutcome("found", facts[0])
    return SearchOutcome("proven_none")


def accp_chain(m: NetMonoid, b: ValNet, k: int) -> list[ValNet] | None:
    """A chain of k nets starting at b, each a strictly smaller nonunit
    divisor of the previous: a length-k witness against the ascending chain
    condition when it exists, else None.
    """
    if k < 1 or b.is_zero:
        return None
    chain = [b]
    if m.kind == "sequence_domain":
        cur = b
        while len(chain) < k:
            if cur.tail > 0:
                # strip one unit at the first tail index beyond the support
                nxt_idx = max([i for i in cur.support_indices()] + [0]) + 1
                step = e_net(m.index_set, nxt_idx)
            else:
                pos = [i for i in cur.support_indices() if cur.value_at(i) > 0]
                if not pos and cur.at_infinity == 0:
                    return None
                step = e_net(m.index_set, pos[0]) if pos else None
                if step is None:
                    return None
            cur = net_sub(cur, step)
            if cur is None or cur.is_zero:
                return None
            chain.append(cur)
        return chain

    def extend(cur, need, seen):
        if need == 0:
            return []
        for d in monoid_divisors(m, cur, 32):
            if d == cur or d in seen:
                continue
            rest = extend(d, need - 1, seen | {d})
            if rest is not None:
                return [d] + rest
        return None

    tail = extend(b, k - 1, {b})
    return None if tail is None else chain + tail


# ---------------------------------------------------------------------------
# boundedness, covers, counting


def is_bounded(b: ValNet) -> bool:
    """Every representable net takes finitely many distinct values, so a
    ceiling always exists; kept as a predicate for symmetry with the
    uniform version.
    """
    return True


def is_uniformly_bounded(b: ValNet) -> bool:
    """Bounded with a positive floor under the nonzero components. Again
    automatic here: the nonzero values of an eventually constant net form a
    finite set, so their minimum is positive.
    """
    return True


@dataclass(frozen=True)
class MaxSupport:
    """The index region where a net is positive. cofinite=False: exactly
    the `positive` indices. cofinite=True: every finite index except the
    listed `excluded` zeros. at_infinity flags the infinite point.
    """

    positive: tuple = ()
    excluded: tuple = ()
    cofinite: bool = False
    at_infinity: bool = False

    def covers(self, idx) -> bool:
        if idx == INF_INDEX:
            return self.at_infinity
        if self.cofinite:
            return idx not in self.excluded
        return idx in self.positive


def max_of(b: ValNet) -> MaxSupport:
    if b.tail > 0:
        return MaxSupport(
            excluded=tuple(i for i, v in b.support if v == 0),
            positive=tuple(i for i, v in b.support if v > 0),
            cofinite=True,
            at_infinity=b.at_infinity > 0,
        )
    return MaxSupport(
        positive=tuple(i for i, v in b.support if v > 0),
        cofinite=False,
        at_infinity=b.at_infinity > 0,
    )


def _disjoint(x: MaxSupport, y: MaxSupport) -> bool:
    if (x.cofinite and y.cofinite) or (x.at_infinity and y.at_infinity):
        return False
    if x.cofinite:
        x, y = y, x
    if y.cofinite:
        return all(i in y.excluded for i in x.positive)
    return not set(x.positive) & set(y.positive)


def comaximal_family(m: NetMonoid, b: ValNet, k: int,
                     depth: int = 16) -> list[ValNet] | None:
    """k nonunit divisors of b with pairwise disjoint positive regions, or
    None if the (depth-limited) divisor pool cannot supply them.
    """
    if k < 1:
        return None
    if m.kind == "sequence_domain":
        idxs = [i for i in range(1, max([*b.support_indices(), 0]) + depth + 1)
                if b.value_at(i) > 0]
        if len(idxs) < k:
            return None
        return [e_net(m.index_set, i) for i in idxs[:k]]
    pool = monoid_divisors(m, b, depth)
    sups = [max_of(d) for d in pool]

    def pick(start, acc):
        if len(acc) == k:
            return acc
        for j in range(start, len(pool)):
            if all(_disjoint(sups[j], sups[i]) for i in acc):
                got = pick(j + 1, acc + [j])
                if got is not None:
                    return got
        return None

    got = pick(0, [])
    return None if got is None else [pool[j] for j in got]


def finite_cover_check(m: NetMonoid, b: ValNet, candidate: list,
                       depth: int = 32) -> bool:
    """Do the candidate indices cover the divisors of b: does every nonunit
    divisor have positive value at some candidate index? The binding cases
    are the atoms e_i (single-index divisors), so a positive tail with a
    finite candidate list always fails once the scan passes the largest
    candidate.
    """
    cand = set(candidate)
    for idx in cand:
        if not b.index_set.valid_index(idx):
            raise ValueError(f"{idx!r} is not an index here")
    if m.kind == "sequence_domain":
        hi = max([i for i in b.support_indices() if isinstance(i, int)] + [0])
        hi = max(hi, max([i for i in cand if isinstance(i, int)] + [0])) + depth
        for i in range(1, hi + 1):
            if b.value_at(i) > 0 and i not in cand:
                return False  # e_i divides b and escapes every candidate
        return True
    for d in monoid_divisors(m, b, depth):
        if not any(d.value_at(i) > 0 for i in cand):
            return False
    return True


def idempotent_cover_check(m: NetMonoid) -> bool:
    """Every member positive at a dense index must be positive at some
    discrete index. Exact: sums inherit positivity, so checking the atoms
    settles every member; in the sequence domain a positive value at the
    (possibly dense) infinite point forces a positive tail.
    """
    if m.kind == "sequence_domain":
        return True
    iset = m.index_set
    dense = [i for i in iset.labels if iset.tag_of(i) == DENSE]
    disc = [i for i in iset.labels if iset.tag_of(i) == DISCRETE]
    for g in m.atoms:
        if any(g.value_at(i) > 0 for i in dense):
            if not any(g.value_at(i) > 0 for i in disc):
                return False
    return True


@dataclass(frozen=True)
class DivisorCount:
    count: int
    exact: bool  # False: the enumeration hit its depth, a lower bound only

    def __str__(self):
        return str(self.count) if self.exact else f">={self.count} (depth hit)"


def ffd_window(m: NetMonoid, b: ValNet, depth: int = 16) -> DivisorCount:
    """Number of distinct nonunit divisors of b. Exact for generated
    monoids and zero-tail sequence members; a positive tail has infinitely
    many divisors, so the count is a depth-truncated lower bound.
    """
    if m.kind == "sequence_domain" and b.tail == 0:
        n = 1
        for _, v in b.support:
            n *= v + 1
        return DivisorCount(n - 1, True)
    if m.kind == "sequence_domain":
        return DivisorCount(len(monoid_divisors(m, b, depth)), False)
    try:
        return DivisorCount(len(monoid_divisors(m, b, depth)), True)
    except DepthExhausted:
        return DivisorCount(len(monoid_divisors(m, b, depth // 2)), False)


# ---------------------------------------------------------------------------
# epsilon-flagged ideal norms


@dataclass(frozen=True)
class EpsVal:
    """A value gamma plus an attainment flag; attained=False reads as
    gamma + epsilon (an infimum no element reaches).
    """

    gamma: Any
    attained: bool = True

    def __str__(self):
        return str(self.gamma) if self.attained else f"{self.gamma}+eps"


def eps_add(x: EpsVal, y: EpsVal, tag: str = DISCRETE) -> EpsVal:
    """Add two epsilon-flagged values. Epsilons absorb (eps + eps ~ eps);
    in a discrete value group a dangling epsilon is a whole step, so the
    result normalizes to (gamma + 1, attained).
    """
    g = x.gamma + y.gamma
    att = x.attained and y.attained
    if not att and tag == DISCRETE:
        return EpsVal(g + 1, True)
    return EpsVal(g, att)


def ideal_norm(m: NetMonoid, generators: list[ValNet]) -> dict:
    """Norm of a finitely generated net ideal: at each index the minimum
    over the generators, attained (the minimizing generator realizes it).
    Keys: every deviation index of any generator, plus "tail" and "inf".
    """
    if not generators:
        raise ValueError("ideal_norm needs at least one generator")
    for g in generators:
        if g.index_set != m.index_set:
            raise IndexMismatch("generator over the wrong index set")
    idxs: dict = {}
    for g in generators:
        idxs.update(dict.fromkeys(g.support_indices()))
    out = {i: EpsVal(min(g.value_at(i) for g in generators), True)
           for i in idxs}
    out["tail"] = EpsVal(min(g.tail for g in generators), True)
    out["inf"] = EpsVal(min(g.at_infinity for g in generators), True)
    return out


def ideal_norm_product_check(m: NetMonoid, gens_i: list[ValNet],
                             gens_j: list[ValNet]) -> bool:
    """Additivity of the ideal norm: the product ideal (all pairwise sums
    of generators) must have norm equal to the eps-sum of the factors'
    norms at every index.
    """
    prod = [net_add(a, b) for a in gens_i for b in gens_j]
    ni, nj, np_ = ideal_norm(m, gens_i), ideal_norm(m, gens_j), ideal_norm(m, prod)
    keys = set(ni) | set(nj) | set(np_)

    def at(n, k):
        if k in n:
            return n[k]
        return n["inf" if k == "inf" else "tail"]

    for k in keys:
        if k == "inf":
            tag = m.index_set.infinity_tag
        elif k == "tail" or m.index_set.kind == "omega_plus_point":
            tag = DISCRETE
        else:
            tag = m.index_set.tag_of(k)
        if eps_add(at(ni, k), at(nj, k), tag) != at(np_, k):
            return False
    return True


# ---------------------------------------------------------------------------
# declarative monoid files and net literals


def parse_value(text: str):
    text = text.strip()
    if "/" in text:
        return Fraction(text)
    return int(text)


def parse_net(m, text: str) -> ValNet:
    """Net literals: named nets of the sequence domain ("e5", "w3"/"omega3",
    "q", "0"), or sparse "idx:val,idx:val,tail:v,inf:v" lists (indices are
    labels for finite index sets, positive integers otherwise). Accepts a
    NetMonoid or a bare IndexSet.
    """
    text = text.strip()
    iset = m.index_set if isinstance(m, NetMonoid) else m
    if iset.kind == "omega_plus_point":
        low = text.lower()
        if low == "q":
            return q_net(iset)
        if low == "0":
            return zero_net(iset)
        for pre in ("omega", "w"):
            if low.startswith(pre) and low[len(pre):].isdigit():
                return omega_net(iset, int(low[len(pre):]))
        if low.startswith("e") and low[1:].isdigit():
            return e_net(iset, int(low[1:]))
    if text == "0":
        return zero_net(iset)
    vals: dict = {}
    tail, at_inf = 0, None
    for item in text.split(","):
        if not item.strip():
            continue
        key, sep, val = item.partition(":")
        if not sep:
            raise ValueError(f"bad net component {item!r}; want idx:value")
        key = key.strip()
        v = parse_value(val)
        if key == "tail":
            tail = v
        elif key == INF_INDEX:
            at_inf = v
        else:
            idx = int(key) if iset.kind == "omega_plus_point" else key
            vals[idx] = v
    return make_net(iset, vals, tail=tail, at_infinity=at_inf)


def load_net_monoid(path) -> NetMonoid:
    """Read a monoid description:

        # comment lines and blanks are skipped
        indexset finite M1:dense M2:discrete      (or: indexset omega_plus_point [dense])
        kind generated                            (or: sequence_domain)
        atom M1:1/2,M2:1
        atom M2:1
        name my monoid                            (optional)
    """
    iset = None
    kind = None
    name = ""
    atom_lines: list[str] = []
    with open(path, encoding="utf-8") as fh:
        for raw in fh:
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            word, _, rest = line.partition(" ")
            rest = rest.strip()
            if word == "indexset":
                parts = rest.split()
                if parts[0] == "finite":
                    iset = finite_indices(*parts[1:])
                elif parts[0] == "omega_plus_point":
                    iset = omega_indices(*(parts[1:] or [DISCRETE]))
                else:
                    raise ValueError(f"unknown index set {parts[0]!r}")
            elif word == "kind":
                kind = rest
            elif word == "atom":
                atom_lines.append(rest)
            elif word == "name":
                name = rest
            else:
                raise ValueError(f"unknown directive {word!r}")
    if iset is None or kind is None:
        raise ValueError("monoid file needs indexset and kind directives")
    if kind == "sequence_domain":
        return NetMonoid(iset, kind, name=name or "sequence domain")
    if kind != "generated":
        raise ValueError(f"unknown monoid kind {kind!r}")
    atoms = tuple(parse_net(iset, text) for text in atom_lines)
    return NetMonoid(iset, "generated", atoms, name)
