"""Binary quadratic forms and class groups of quadratic discriminants.

Forms (a, b, c) of discriminant D = b^2 - 4ac realize the ideal class group:
reduced positive definite forms for D < 0, reduction cycles of indefinite
forms for D > 0. Composition is the classical united-forms congruence
algorithm, applied uniformly (no squaring shortcut; the general path is
valid for every pair of primitive forms with equal discriminant).

For D > 0 the cycle partition gives the narrow class group; the wide group
is its quotient by the class of the form with leading coefficient -1. Both
are exposed since saturation arguments want the wide group while sign
questions about norms want the narrow one.

Also here: Minkowski bounds with outward rational rounding, prime splitting
via the Kronecker symbol, and the class-index calculus (which classes carry
an ideal of a given norm) that the normset membership backend runs on.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd, isqrt

from .arith import divisors, factorize, kronecker
from .errors import BadDiscriminant
from .monoid_core import AbelianGroup, invariant_factors_from_table
from .quadratic import QuadraticField, QuadraticOrder


@dataclass(frozen=True)
class BQForm:
    a: int
    b: int
    c: int

    def discriminant(self) -> int:
        return self.b * self.b - 4 * self.a * self.c

    @property
    def is_primitive(self) -> bool:
        return gcd(gcd(self.a, self.b), self.c) == 1

    def tuple(self) -> tuple[int, int, int]:
        return (self.a, self.b, self.c)

    def __str__(self):
        return f"({self.a},{self.b},{self.c})"


def _validate_disc(D: int):
    if D % 4 not in (0, 1):
        raise BadDiscriminant(f"{D} is not congruent to 0 or 1 mod 4")
    if D >= 0 and isqrt(D) ** 2 == D:
        raise BadDiscriminant(f"{D} is a square, not a field-like discriminant")


def principal_form(D: int) -> BQForm:
    _validate_disc(D)
    if D < 0:
        b = D % 2
        return BQForm(1, b, (b * b - D) // 4)
    s = isqrt(D)
    b = s if (s - D) % 2 == 0 else s - 1
    return BQForm(1, b, (b * b - D) // 4)


# ---------------------------------------------------------------------------
# reduction


def is_reduced_definite(f: BQForm) -> bool:
    a, b, c = f.a, f.b, f.c
    if abs(b) > a or a > c:
        return False
    if b < 0 and (abs(b) == a or a == c):
        return False
    return True


def reduce_definite(f: BQForm) -> BQForm:
    if f.discriminant() >= 0:
        raise BadDiscriminant("definite reduction needs negative discriminant")
    a, b, c = f.a, f.b, f.c
    if a <= 0:
        raise BadDiscriminant("positive definite forms have a > 0")
    while True:
        if c < a:
            a, b, c = c, -b, a
        elif not (-a < b <= a):
            r = (a - b) // (2 * a)
            b2 = b + 2 * r * a
            c = a * r * r + b * r + c
            b = b2
        elif b < 0 and (b == -a or a == c):
            b = -b
        else:
            return BQForm(a, b, c)


def is_reduced_indefinite(f: BQForm) -> bool:
    D = f.discriminant()
    if D <= 0:
        return False
    s = isqrt(D)
    return 0 < f.b <= s and s + 1 - f.b <= 2 * abs(f.a) <= s + f.b


def rho_step(f: BQForm) -> BQForm:
    """One step of the indefinite reduction operator; on reduced forms it
    walks the form's cycle.
    """
    D = f.discriminant()
    s = isqrt(D)
    c = f.c
    ac = abs(c)
    # r = -b mod 2|c|, placed in (-|c|, |c|] or (s - 2|c|, s]
    lo = (-ac + 1) if ac > s else (s - 2 * ac + 1)
    r = lo + ((-f.b - lo) % (2 * ac))
    return BQForm(c, r, (r * r - D) // (4 * c))


def reduce_indefinite(f: BQForm) -> BQForm:
    if f.discriminant() <= 0:
        raise BadDiscriminant("indefinite reduction needs positive discriminant")
    for _ in range(10000):
        if is_reduced_indefinite(f):
            return f
        f = rho_step(f)
    raise AssertionError("indefinite reduction failed to terminate")


def reduce_form(f: BQForm) -> BQForm:
    return reduce_definite(f) if f.discriminant() < 0 else reduce_indefinite(f)


def form_cycle(f: BQForm) -> tuple[BQForm, ...]:
    """The full rho-cycle of a reduced indefinite form."""
    f = reduce_indefinite(f)
    out = [f]
    g = rho_step(f)
    while g != f:
        out.append(g)
        g = rho_step(g)
    return tuple(out)


# ---------------------------------------------------------------------------
# composition


def _solve_linmod(a: int, b: int, m: int) -> tuple[int, int]:
    """Least x >= 0 with a*x = b (mod m), plus the solution stride m/gcd."""
    g = gcd(a, m)
    if b % g:
        raise ValueError("linear congruence has no solution")
    mm = m // g
    if mm == 1:
        return 0, 1
    x = ((b // g) % mm) * pow((a // g) % mm, -1, mm) % mm
    return x, mm


def _positive_a(f: BQForm) -> BQForm:
    if f.a > 0:
        return f
    # reduced indefinite cycles alternate the sign of a
    f = reduce_indefinite(f)
    return f if f.a > 0 else rho_step(f)


def compose(f: BQForm, g: BQForm) -> BQForm:
    """Gauss composition of primitive forms of one discriminant, reduced."""
    D = f.discriminant()
    if g.discriminant() != D:
        raise BadDiscriminant(f"discriminants differ: {D} vs {g.discriminant()}")
    if not (f.is_primitive and g.is_primitive):
        raise BadDiscriminant("composition needs primitive forms")
    if D < 0:
        f, g = reduce_definite(f), reduce_definite(g)
    else:
        f, g = _positive_a(f), _positive_a(g)
    a1, b1, c1 = f.tuple()
    a2, b2, _ = g.tuple()
    bsum = (b1 + b2) // 2
    h = (b2 - b1) // 2
    w = gcd(gcd(a1, a2), bsum)
    s, t, u = a1 // w, a2 // w, bsum // w
    mu, nu = _solve_linmod(t * u, h * u + s * c1, s * t)
    lam = _solve_linmod(t * nu, h - t * mu, s)[0]
    k = mu + nu * lam
    el = (k * t - h) // s
    m = (t * u * k - h * u - c1 * s) // (s * t)
    raw = BQForm(s * t, w * u - (k * t + el * s), k * el - w * m)
    return reduce_form(raw)


# ---------------------------------------------------------------------------
# class groups


def reduced_forms(D: int) -> list[BQForm]:
    """All primitive reduced positive definite forms of discriminant D < 0.
    The primitivity filter is what makes non-fundamental discriminants give
    the Picard group of the order rather than an inflated count.
    """
    _validate_disc(D)
    if D >= 0:
        raise BadDiscriminant("reduced_forms enumerates definite forms; D must be < 0")
    out = []
    for b in range(abs(D) % 2, isqrt(-D // 3) + 1, 2):
        m4 = (b * b - D) // 4
        for a in divisors(m4):
            if a * a > m4:
                break
            if a < max(b, 1):
                continue
            c = m4 // a
            if gcd(gcd(a, b), c) != 1:
                continue
            out.append(BQForm(a, b, c))
            if 0 < b < a < c:
                out.append(BQForm(a, -b, c))
    return sorted(out, key=lambda f: (f.a, abs(f.b), f.b < 0, f.c))


def reduced_indefinite_forms(D: int) -> list[BQForm]:
    _validate_disc(D)
    if D <= 0:
        raise BadDiscriminant("indefinite enumeration needs D > 0")
    s = isqrt(D)
    out = []
    for b in range(2 - (D % 2), s + 1, 2):
        m4 = (D - b * b) // 4
        for u in divisors(m4):
            if not (s + 1 - b <= 2 * u <= s + b):
                continue
            c = m4 // u
            for f in (BQForm(u, b, -c), BQForm(-u, b, c)):
                if f.is_primitive:
                    out.append(f)
    return sorted(out, key=lambda f: (abs(f.a), f.a < 0, f.b, f.c))


@dataclass(frozen=True)
class ClassGroupData:
    """A class group realized on canonical form representatives.

    classes[i] is the representative of class i; composition_table gives the
    group operation on indices; cycles (indefinite only) hold every reduced
    form of each class so membership lookups are a set probe.
    """

    discriminant: int
    classes: tuple[BQForm, ...]
    structure: AbelianGroup
    composition_table: tuple[tuple[int, ...], ...]
    identity_index: int
    kind: str = "definite"  # definite | narrow | wide
    cycles: tuple[frozenset, ...] = ()
    neg_principal_index: int | None = None

    @property
    def class_number(self) -> int:
        return len(self.classes)

    def compose_indices(self, i: int, j: int) -> int:
        return self.composition_table[i][j]

    def inverse_index(self, i: int) -> int:
        row = self.composition_table[i]
        return row.index(self.identity_index)

    def power_index(self, i: int, k: int) -> int:
        if k < 0:
            i, k = self.inverse_index(i), -k
        out = self.identity_index
        for _ in range(k):
            out = self.composition_table[out][i]
        return out

    def index_of(self, f: BQForm) -> int:
        if f.discriminant() != self.discriminant:
            raise BadDiscriminant("form has the wrong discriminant")
        g = reduce_form(f)
        if self.kind == "definite":
            for i, rep in enumerate(self.classes):
                if rep == g:
                    return i
        else:
            for i, cyc in enumerate(self.cycles):
                if g in cyc:
                    return i
        raise ValueError(f"{f} does not reduce into any class of D={self.discriminant}")

    def is_principal(self, f: BQForm) -> bool:
        return self.index_of(f) == self.identity_index

    def __str__(self):
        return f"Cl({self.discriminant}) = {self.structure} ({self.kind})"


def _table_structure(table, identity_index) -> AbelianGroup:
    n = len(table)
    fs = invariant_factors_from_table(
        list(range(n)), lambda i, j: table[i][j], identity_index
    )
    return AbelianGroup(fs)


@lru_cache(maxsize=None)
def class_group_imaginary(D: int) -> ClassGroupData:
    forms = reduced_forms(D)
    index = {f.tuple(): i for i, f in enumerate(forms)}
    table = tuple(
        tuple(index[compose(fi, fj).tuple()] for fj in forms) for fi in forms
    )
    ident = index[reduce_definite(principal_form(D)).tuple()]
    return ClassGroupData(
        discriminant=D,
        classes=tuple(forms),
        structure=_table_structure(table, ident),
        composition_table=table,
        identity_index=ident,
    )


@lru_cache(maxsize=None)
def narrow_class_group_real(D: int) -> ClassGroupData:
    forms = reduced_indefinite_forms(D)
    cycles: list[tuple[BQForm, ...]] = []
    seen: set[tuple] = set()
    for f in forms:
        if f.tuple() in seen:
            continue
        cyc = form_cycle(f)
        seen.update(g.tuple() for g in cyc)
        cycles.append(cyc)
    reps = [min((g for g in cyc if g.a > 0), key=BQForm.tuple) for cyc in cycles]
    cycle_sets = [frozenset(cyc) for cyc in cycles]

    def locate(form: BQForm) -> int:
        g = reduce_indefinite(form)
        for i, cyc in enumerate(cycle_sets):
            if g in cyc:
                return i
        raise AssertionError("reduced form escaped the cycle partition")

    table = tuple(
        tuple(locate(compose(ri, rj)) for rj in reps) for ri in reps
    )
    ident = locate(principal_form(D))
    s = isqrt(D)
    b0 = s if (s - D) % 2 == 0 else s - 1
    neg = locate(BQForm(-1, b0, (D - b0 * b0) // 4))
    return ClassGroupData(
        discriminant=D,
        classes=tuple(reps),
        structure=_table_structure(table, ident),
        composition_table=table,
        identity_index=ident,
        kind="narrow",
        cycles=tuple(cycle_sets),
        neg_principal_index=neg,
    )


@lru_cache(maxsize=None)
def class_group_real(D: int) -> ClassGroupData:
    """The wide class group: narrow classes modulo the class of the leading
    coefficient -1 form. Equals the narrow group exactly when the fundamental
    unit has norm -1.
    """
    nar = narrow_class_group_real(D)
    sub = {nar.identity_index, nar.neg_principal_index}
    cosets: list[frozenset] = []
    for i in range(nar.class_number):
        cs = frozenset(nar.compose_indices(i, h) for h in sub)
        if cs not in cosets:
            cosets.append(cs)
    cosets.sort(key=min)
    where = {i: ci for ci, cs in enumerate(cosets) for i in cs}
    table = tuple(
        tuple(where[nar.compose_indices(min(ci), min(cj))] for cj in cosets)
        for ci in cosets
    )
    ident = where[nar.identity_index]
    merged = tuple(
        frozenset().union(*(nar.cycles[i] for i in cs)) for cs in cosets
    )
    return ClassGroupData(
        discriminant=D,
        classes=tuple(nar.classes[min(cs)] for cs in cosets),
        structure=_table_structure(table, ident),
        composition_table=table,
        identity_index=ident,
        kind="wide",
        cycles=merged,
    )


def class_group(D: int) -> ClassGroupData:
    return class_group_imaginary(D) if D < 0 else class_group_real(D)


def class_number(D: int) -> int:
    if D < 0:
        return len(reduced_forms(D))
    return class_group_real(D).class_number


def class_group_structure(D: int) -> AbelianGroup:
    return class_group(D).structure


def is_principal(f: BQForm) -> bool:
    D = f.discriminant()
    if D < 0:
        return reduce_definite(f) == reduce_definite(principal_form(D))
    return class_group_real(D).is_principal(f)


def galois_action_trivial(cg: ClassGroupData) -> bool:
    """Conjugation sends each class to its inverse, so it fixes every class
    iff the exponent divides 2.
    """
    return cg.structure.exponent <= 2


# ---------------------------------------------------------------------------
# splitting, Minkowski bound, ideal-class calculus


@dataclass(frozen=True)
class PrimeSplit:
    p: int
    kind: str  # split | inert | ramified
    f_p: int   # residue degree: 2 iff inert

    def __str__(self):
        return f"{self.p}: {self.kind} (f={self.f_p})"


def _field_of(obj) -> QuadraticField:
    if isinstance(obj, QuadraticOrder):
        return obj.field
    if isinstance(obj, QuadraticField):
        return obj
    raise TypeError(f"expected a quadratic field or order, got {obj!r}")


def splitting_type(field, p: int) -> PrimeSplit:
    D = _field_of(field).field_discriminant
    chi = kronecker(D, p)
    if chi == 0:
        return PrimeSplit(p, "ramified", 1)
    if chi == 1:
        return PrimeSplit(p, "split", 1)
    return PrimeSplit(p, "inert", 2)


def minkowski_bound(field) -> Fraction:
    """Rational M-hat with M <= M-hat < M + 2e-6, M the Minkowski bound
    (2/pi)sqrt|D| (imaginary) or sqrt(D)/2 (real). Outward rounding only:
    a downward error could silently drop a prime from the UFD criterion set.
    """
    D = _field_of(field).field_discriminant
    s = isqrt(abs(D) * 10**24)  # s <= sqrt|D| * 10^12 < s+1
    if D < 0:
        pi15 = 3141592653589793  # truncation of pi * 10^15
        k = -(-(2 * (s + 1) * 10**9) // pi15)
    else:
        k = -(-(s + 1) // (2 * 10**6))
    return Fraction(k, 10**6)


def prime_form(D: int, p: int) -> BQForm:
    """A form of discriminant D representing p: the class of a prime ideal
    above p. Exists iff p is not inert.
    """
    for b in range(0, 2 * p):
        if (b * b - D) % (4 * p) == 0:
            return BQForm(p, b, (b * b - D) // (4 * p))
    raise ValueError(f"{p} is inert at discriminant {D}; no ideal of norm {p}")


def ideal_class_options(cg: ClassGroupData, q: int) -> set[int] | None:
    """Indices of the classes containing an ideal of norm q, or None when no
    ideal of norm q exists. Follows the splitting of each prime power: inert
    primes force even exponents and contribute principally; a ramified prime
    contributes its unique class to the power e; a split prime contributes
    [P]^(e-2i) as the exponent splits between the two conjugates.
    """
    if q < 1:
        raise ValueError("ideal norms are positive")
    opts = {cg.identity_index}
    for p, e in factorize(q):
        chi = kronecker(cg.discriminant, p)
        if chi == -1:
            if e % 2:
                return None
            continue
        pi = cg.index_of(prime_form(cg.discriminant, p))
        if chi == 0:
            per = {cg.power_index(pi, e)}
        else:
            per = {cg.power_index(pi, e - 2 * i) for i in range(e + 1)}
        opts = {cg.compose_indices(x, y) for x in opts for y in per}
    return opts
