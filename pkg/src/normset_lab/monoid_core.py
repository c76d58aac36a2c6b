"""Reduced commutative cancellative monoids: atoms, factorizations, windows.

Everything here runs against a MonoidView, which adapts a concrete monoid
(normset integers, quadratic-order elements up to associates, additive
numerical monoids) to one small interface. Views hand us canonical
representatives only; associate reduction is the adapter's job.

Global properties (UFM, HFM, length-factorial, elasticity) are reported as
verdicts over an explicit window bound, never as proofs. Callers that need
the distinction keep the bound around; WindowVerdict carries it.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from math import prod
from typing import Any, Callable, Iterable, Optional

from .arith import factorize
from .errors import CapExceeded, NotAtomic, SearchBudgetExceeded

# ---------------------------------------------------------------------------
# finite abelian groups and the Davenport constant


@dataclass(frozen=True)
class AbelianGroup:
    """Finite abelian group in invariant-factor form: Z_d1 x ... x Z_dk with
    d1 | d2 | ... | dk and every d_i >= 2. The empty tuple is the trivial group.
    """

    invariant_factors: tuple[int, ...] = ()

    def __post_init__(self):
        fs = tuple(int(d) for d in self.invariant_factors)
        object.__setattr__(self, "invariant_factors", fs)
        for d in fs:
            if d < 2:
                raise ValueError(f"invariant factor {d} < 2")
        for a, b in zip(fs, fs[1:]):
            if b % a:
                raise ValueError(f"invariant factors must form a divisor chain, got {a} then {b}")

    @classmethod
    def from_cyclic(cls, orders: Iterable[int]) -> "AbelianGroup":
        """Build from any list of cyclic orders, e.g. [2, 3] -> Z_6."""
        parts: dict[int, list[int]] = {}
        for m in orders:
            m = int(m)
            if m < 1:
                raise ValueError(f"cyclic order {m} < 1")
            for p, e in factorize(m) if m > 1 else []:
                parts.setdefault(p, []).append(e)
        for exps in parts.values():
            exps.sort(reverse=True)
        rank = max((len(v) for v in parts.values()), default=0)
        # largest invariant factor collects the largest exponent of every prime
        descending = []
        for i in range(rank):
            descending.append(prod(p ** exps[i] for p, exps in parts.items() if i < len(exps)))
        return cls(tuple(reversed(descending)))

    @classmethod
    def from_string(cls, text: str) -> "AbelianGroup":
        """Parse 'trivial', 'Z_2 x Z_4', or bare comma lists like '3,3'."""
        t = text.strip().lower()
        if t in ("trivial", "1", "z_1", "()", ""):
            return cls(())
        chunks = t.replace("x", ",").split(",")
        orders = []
        for chunk in chunks:
            c = chunk.strip()
            if not c:
                continue
            c = c.removeprefix("z_").removeprefix("z")
            orders.append(int(c))
        return cls.from_cyclic(orders)

    @property
    def order(self) -> int:
        return prod(self.invariant_factors)

    @property
    def exponent(self) -> int:
        return self.invariant_factors[-1] if self.invariant_factors else 1

    def zero(self) -> tuple[int, ...]:
        return (0,) * len(self.invariant_factors)

    def elements(self):
        return itertools.product(*(range(d) for d in self.invariant_factors))

    def add(self, x, y):
        return tuple((a + b) % d for a, b, d in zip(x, y, self.invariant_factors))

    def neg(self, x):
        return tuple((-a) % d for a, d in zip(x, self.invariant_factors))

    def __str__(self):
        if not self.invariant_factors:
            return "trivial"
        return " x ".join(f"Z_{d}" for d in self.invariant_factors)


def davenport_witness(g: AbelianGroup, cap: int = 64,
                      state_budget: int = 200_000) -> tuple[int, tuple]:
    """Davenport constant of g with a certificate.

    Returns (D, witness) where D is the least n such that every multiset of n
    group elements has a nonempty zero-sum sub-multiset, and witness is a
    zero-sum-free multiset of the maximal size D-1.

    Search order: grow zero-sum-free multisets one element at a time (elements
    nondecreasing to enumerate multisets once); D is the first size where no
    extension survives. States with equal subset-sum sets extend identically,
    so the frontier is deduplicated on (sums, last element) -- an optimization
    only, the frontier still covers every viable multiset profile. The
    frontier can still blow up exponentially near the cap, so its size is
    budgeted rather than trusted.
    """
    if g.order > cap:
        raise CapExceeded(f"group order {g.order} exceeds brute-force cap {cap}", cap=cap)
    zero = g.zero()
    elems = [e for e in g.elements() if e != zero]
    if not elems:
        return 1, ()
    frontier: dict[tuple[frozenset, int], tuple] = {}
    for i, e in enumerate(elems):
        frontier.setdefault((frozenset([e]), i), (e,))
    size = 1
    last = frontier
    while frontier:
        nxt: dict[tuple[frozenset, int], tuple] = {}
        for (sums, i), rep in frontier.items():
            for j in range(i, len(elems)):
                e = elems[j]
                new_sums = {e}
                ok = True
                for s in sums:
                    t = g.add(s, e)
                    if t == zero:
                        ok = False
                        break
                    new_sums.add(t)
                if not ok:
                    continue
                new_sums.update(sums)
                key = (frozenset(new_sums), j)
                if key not in nxt:
                    nxt[key] = rep + (e,)
            if len(nxt) > state_budget:
                raise SearchBudgetExceeded(
                    f"davenport frontier for {g} exceeded {state_budget} "
                    f"states at multiset size {size + 1}",
                    partial=size)
        last, frontier = frontier, nxt
        size += 1
    witness = next(iter(last.values()))
    return size, witness


def davenport(g: AbelianGroup, cap: int = 64) -> int:
    return davenport_witness(g, cap)[0]


def invariant_factors_from_table(elements: list, add: Callable, zero) -> tuple[int, ...]:
    """Invariant factors of a finite abelian group given by its elements and
    operation. Counts, for each prime p and each k, the solutions of p^k x = 0;
    the counts determine the p-part partitions, which assemble largest-first
    into the divisor chain.
    """
    n = len(elements)
    if n == 1:
        return ()
    parts: dict[int, list[int]] = {}
    for p, _ in factorize(n):
        current = list(elements)
        logs = [0]  # logs[k] = log_p of #{x : p^k x = 0}
        while True:
            nxt = []
            for x in current:
                y = x
                for _ in range(p - 1):
                    y = add(y, x)
                nxt.append(y)
            count = sum(1 for y in nxt if y == zero)
            # count = number of x killed by p^(k+1); it is a power of p
            e = 0
            c = count
            while c > 1:
                if c % p:
                    raise ValueError("operation table is not a group table")
                c //= p
                e += 1
            logs.append(e)
            if count == n or logs[-1] == logs[-2]:
                break
            current = nxt
        # conjugate partition: number of parts >= k is logs[k] - logs[k-1]
        col = [logs[k] - logs[k - 1] for k in range(1, len(logs))]
        exps = []
        for k, t in enumerate(col, start=1):
            nxt_t = col[k] if k < len(col) else 0
            exps.extend([k] * (t - nxt_t))
        if exps:
            parts[p] = sorted(exps, reverse=True)
    rank = max((len(v) for v in parts.values()), default=0)
    descending = []
    for i in range(rank):
        descending.append(prod(p ** exps[i] for p, exps in parts.items() if i < len(exps)))
    fs = tuple(reversed(descending))
    if prod(fs) != n:
        raise ValueError("operation table is not a group table")
    return fs


# ---------------------------------------------------------------------------
# factorization machinery


@dataclass(frozen=True)
class FactorMultiset:
    """A factorization into atoms, stored as a tuple sorted by the owning
    view's canonical key. Equal multisets compare equal regardless of the
    order the search found the atoms in.
    """

    atoms: tuple

    @property
    def length(self) -> int:
        return len(self.atoms)

    def __len__(self):
        return len(self.atoms)

    def __iter__(self):
        return iter(self.atoms)

    def __str__(self):
        return " * ".join(str(a) for a in self.atoms)


@dataclass(frozen=True)
class MonoidView:
    """Adapter interface a concrete monoid provides to the generic machinery.

    Elements are canonical representatives, one per associate class; `size` is
    the magnitude windows are measured against; `key` is a total sort key.
    `proper_divisors(x)` yields (d, cofactor) pairs with both parts nonunit
    members; it must be finite and complete for every element it is asked
    about. `divide(d, x)` returns the cofactor when d | x (a unit cofactor is
    reported as the identity-marker None-cofactor convention is NOT used:
    it returns the actual cofactor element, which may equal the identity).
    """

    name: str
    identity: Any
    op: Callable[[Any, Any], Any]
    divide: Callable[[Any, Any], Any]          # -> cofactor or None
    proper_divisors: Callable[[Any], Iterable[tuple]]
    key: Callable[[Any], Any]
    size: Callable[[Any], int]
    elements_up_to: Callable[[int], list]
    generators: tuple = ()
    divides_hint: Optional[Callable[[Any, Any, Any], bool]] = None
    # divides_hint(q, a, b): False means q certainly does not divide op(a, b)


class FactorSession:
    """Memoized exhaustive factorization over one MonoidView.

    Results are exact for every queried element (completeness is inherited
    from the view's proper_divisors); the session is only a cache plus a
    work budget, not a window.
    """

    def __init__(self, view: MonoidView, budget: int = 10_000_000):
        self.view = view
        self.budget = budget
        self.spent = 0
        self._atom: dict = {}
        self._facts: dict = {}

    def _charge(self, n: int = 1):
        self.spent += n
        if self.spent > self.budget:
            raise SearchBudgetExceeded(
                f"factorization budget {self.budget} exhausted in {self.view.name}",
                partial=None,
            )

    def is_atom(self, x) -> bool:
        k = self.view.key(x)
        hit = self._atom.get(k)
        if hit is None:
            self._charge()
            first = next(iter(self.view.proper_divisors(x)), None)
            hit = first is None
            self._atom[k] = hit
        return hit

    def factorizations(self, x) -> tuple[FactorMultiset, ...]:
        """All factorizations of x into atoms; empty tuple means x admits none."""
        kx = self.view.key(x)
        hit = self._facts.get(kx)
        if hit is not None:
            return hit
        if self.is_atom(x):
            res = (FactorMultiset((x,)),)
            self._facts[kx] = res
            return res
        atom_pairs = {}
        for d, q in self.view.proper_divisors(x):
            self._charge()
            kd = self.view.key(d)
            if kd not in atom_pairs and self.is_atom(d):
                atom_pairs[kd] = (d, q)
        acc: dict[tuple, FactorMultiset] = {}
        for kd, (d, q) in sorted(atom_pairs.items()):
            for rest in self.factorizations(q):
                # each multiset is found once, at its key-minimal atom
                if self.view.key(rest.atoms[0]) < kd:
                    continue
                atoms = (d,) + rest.atoms
                acc.setdefault(tuple(self.view.key(a) for a in atoms), FactorMultiset(atoms))
        res = tuple(acc[k] for k in sorted(acc))
        self._facts[kx] = res
        return res

    def length_set(self, x) -> tuple[int, ...]:
        facts = self.factorizations(x)
        if not facts:
            raise NotAtomic(f"{x} has no atomic factorization in {self.view.name}")
        return tuple(sorted({f.length for f in facts}))

    def elasticity(self, x) -> Fraction:
        ls = self.length_set(x)
        return Fraction(ls[-1], ls[0])


def factorizations(view: MonoidView, x, session: FactorSession | None = None):
    return (session or FactorSession(view)).factorizations(x)


def length_set(view: MonoidView, x, session: FactorSession | None = None):
    return (session or FactorSession(view)).length_set(x)


def elasticity_of_element(view: MonoidView, x, session: FactorSession | None = None) -> Fraction:
    return (session or FactorSession(view)).elasticity(x)


# ---------------------------------------------------------------------------
# window verdicts


@dataclass(frozen=True)
class WindowVerdict:
    """Outcome of an exhaustive check over all elements of size <= bound.
    Truthiness is the verdict; the bound rides along because a pass is only
    evidence up to the window.
    """

    holds: bool
    bound: int
    witness: Any = None

    def __bool__(self):
        return self.holds

    def __str__(self):
        tag = "holds" if self.holds else "fails"
        extra = "" if self.witness is None else f", witness {self.witness}"
        return f"{tag} up to {self.bound}{extra}"


class WindowElasticity(Fraction):
    """Maximal element elasticity seen in a window. Compares and computes as
    the exact rational; bound and witness ride along as attributes.
    """

    bound: int
    witness: Any

    def __new__(cls, value, bound, witness=None):
        self = super().__new__(cls, value)
        self.bound = bound
        self.witness = witness
        return self


def _window_members(view: MonoidView, bound: int) -> list:
    return list(view.elements_up_to(bound))


def is_hfm_window(view: MonoidView, bound: int, session: FactorSession | None = None) -> WindowVerdict:
    """Half-factorial over the window: every member of size <= bound has all
    its factorizations of one length.
    """
    session = session or FactorSession(view)
    for x in _window_members(view, bound):
        facts = session.factorizations(x)
        lengths = sorted({f.length for f in facts})
        if len(lengths) > 1:
            short = min(facts, key=lambda f: f.length)
            long = max(facts, key=lambda f: f.length)
            return WindowVerdict(False, bound, (x, short, long))
    return WindowVerdict(True, bound)


def is_length_factorial_window(view: MonoidView, bound: int, session: FactorSession | None = None) -> WindowVerdict:
    """At most one factorization of each length, for every member in the window."""
    session = session or FactorSession(view)
    for x in _window_members(view, bound):
        by_len: dict[int, FactorMultiset] = {}
        for f in session.factorizations(x):
            other = by_len.setdefault(f.length, f)
            if other is not f:
                return WindowVerdict(False, bound, (x, other, f))
    return WindowVerdict(True, bound)


def is_ufm_window(view: MonoidView, bound: int, session: FactorSession | None = None) -> WindowVerdict:
    """Unique factorization over the window, checked in two exhaustive legs:

    (a) every member of size <= bound has exactly one atom multiset;
    (b) every atom q <= bound is prime relative to the window: whenever
        q | a*b with a, b window members, q divides a or b.

    Leg (b) matters. A monoid can factor uniquely below a bound while the
    first colliding element sits far above it; a non-prime atom betrays the
    failure with witnesses of roughly the atom's own size. A unique
    factorization monoid passes both legs at every bound, since its atoms
    are prime outright.
    """
    session = session or FactorSession(view)
    members = _window_members(view, bound)
    for x in members:
        facts = session.factorizations(x)
        if len(facts) > 1:
            return WindowVerdict(False, bound, ("non_unique", x, facts[0], facts[1]))
    atoms = [x for x in members if session.is_atom(x)]
    hint = view.divides_hint
    div_memo: dict[tuple, bool] = {}

    def divides(q, a):
        k = (view.key(q), view.key(a))
        hit = div_memo.get(k)
        if hit is None:
            hit = view.divide(q, a) is not None
            div_memo[k] = hit
        return hit

    for q in atoms:
        clear = [a for a in members if not divides(q, a)]
        for i, a in enumerate(clear):
            for b in clear[i:]:
                if hint is not None and not hint(q, a, b):
                    continue
                if view.divide(q, view.op(a, b)) is not None:
                    return WindowVerdict(False, bound, ("non_prime_atom", q, a, b))
    return WindowVerdict(True, bound)


def elasticity_window(view: MonoidView, bound: int, session: FactorSession | None = None) -> WindowElasticity:
    """Maximum element elasticity over the window, with a witness element.
    The empty window reports 1 (the elasticity of a monoid with no nonunits).
    """
    session = session or FactorSession(view)
    best = Fraction(1)
    witness = None
    for x in _window_members(view, bound):
        facts = session.factorizations(x)
        if not facts:
            continue
        lengths = [f.length for f in facts]
        rho = Fraction(max(lengths), min(lengths))
        if rho > best:
            best, witness = rho, x
    return WindowElasticity(best, bound, witness)


# ---------------------------------------------------------------------------
# additive numerical monoids, e.g. <2,3> inside N_0


def numerical_monoid_view(*generators: int) -> MonoidView:
    """The additive submonoid of N_0 generated by the given positive integers."""
    gens = tuple(sorted(set(int(g) for g in generators)))
    if not gens or gens[0] < 1:
        raise ValueError("generators must be positive integers")
    member_cache = [True]  # index 0: the identity

    def member(x: int) -> bool:
        if x < 0:
            return False
        while len(member_cache) <= x:
            y = len(member_cache)
            member_cache.append(any(g <= y and member_cache[y - g] for g in gens))
        return member_cache[x]

    def divide(d, x):
        c = x - d
        return c if c >= 0 and member(c) else None

    def proper_divisors(x):
        for d in range(gens[0], x - gens[0] + 1):
            if member(d) and member(x - d):
                yield d, x - d

    def elements_up_to(bound):
        return [m for m in range(1, bound + 1) if member(m)]

    return MonoidView(
        name="<" + ",".join(str(g) for g in gens) + ">",
        identity=0,
        op=lambda a, b: a + b,
        divide=divide,
        proper_divisors=proper_divisors,
        key=lambda x: x,
        size=lambda x: x,
        elements_up_to=elements_up_to,
        generators=gens,
    )
