"""Finite groups with explicit carriers, plus the subgroup, homomorphism and
double-coset machinery built on top of them.

Three element backends are supported: Cayley tables (elements are integer
indices), permutations (image tuples on 0..degree-1), and invertible square
matrices over Z/m (row-major entry tuples).  Elements are plain hashable
values whose natural sort order doubles as the canonical key order, so every
representative choice made below is deterministic across runs and backends.

All types are immutable once constructed and safe to share between workers.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from functools import cached_property

# Element values are ints (Cayley indices) or int tuples (permutation images,
# row-major matrix entries); the value itself is the canonical sort key.
Element = object


class InputError(ValueError):
    """An argument violates a documented precondition."""


class InvariantViolation(RuntimeError):
    """An internal structural guarantee failed; this signals a bug."""


@dataclass(frozen=True)
class CheckPolicy:
    """Budget for eager law checks.

    A check enumerates exhaustively while the carrier has at most
    ``exhaustive_threshold`` elements and the enumeration stays within
    ``op_budget`` primitive operations; beyond either bound it falls back to
    ``sample_count`` seeded random probes.
    """

    exhaustive_threshold: int = 4096
    sample_count: int = 100_000
    op_budget: int = 2_000_000
    seed: int = 0

    def pairs_exhaustive(self, n: int) -> bool:
        return n <= self.exhaustive_threshold and n * n <= self.op_budget

    def triples_exhaustive(self, n: int) -> bool:
        return n <= self.exhaustive_threshold and n**3 <= self.op_budget


DEFAULT_POLICY = CheckPolicy()


def _mulclose(mul, identity, gens):
    """Closure of {identity} ∪ gens under two-sided products (finite case)."""
    els = {identity}
    els.update(gens)
    frontier = list(els)
    while frontier:
        fresh = []
        for a in frontier:
            for g in gens:
                for c in (mul(a, g), mul(g, a)):
                    if c not in els:
                        els.add(c)
                        fresh.append(c)
        frontier = fresh
    return els


def _greedy_generators(mul, identity, members_sorted):
    """A small deterministic generating set: first sweep in key order."""
    gens = []
    closed = {identity}
    for x in members_sorted:
        if x not in closed:
            gens.append(x)
            closed = _mulclose(mul, identity, gens)
    return tuple(gens)


class FiniteGroup:
    """A finite group with an explicit, sorted carrier.

    Subclasses provide ``mul``/``inv`` and the element text format; the base
    class handles carrier bookkeeping and eager law checks.
    """

    backend = "abstract"

    def __init__(self, elements, identity, *, check=True, policy=DEFAULT_POLICY):
        self.elements = tuple(sorted(elements))
        self.element_set = frozenset(self.elements)
        if len(self.elements) != len(self.element_set):
            raise InputError("carrier contains duplicate elements")
        self.identity = identity
        self.policy = policy
        if identity not in self.element_set:
            raise InputError("identity is missing from the carrier")
        if check:
            self._check_identity_inverse()
            self._check_closure()

    # -- group operations ---------------------------------------------------

    def mul(self, a, b):
        raise NotImplementedError

    def inv(self, a):
        raise NotImplementedError

    def conjugate(self, x, a):
        "x * a * x^-1"
        return self.mul(self.mul(x, a), self.inv(x))

    # -- carrier protocol ---------------------------------------------------

    @property
    def order(self) -> int:
        return len(self.elements)

    def __contains__(self, a):
        return a in self.element_set

    def __iter__(self):
        return iter(self.elements)

    def __len__(self):
        return len(self.elements)

    def __repr__(self):
        return f"<{type(self).__name__} order={self.order}>"

    # -- backend surface ----------------------------------------------------

    def space(self) -> tuple:
        """Signature of the element space; equal spaces share element values."""
        raise NotImplementedError

    def format_element(self, a) -> str:
        raise NotImplementedError

    def parse_element(self, text: str):
        raise NotImplementedError

    def _copy_backend_fields(self, other):
        raise NotImplementedError

    def restrict(self, members) -> "FiniteGroup":
        """The same backend operations on a smaller carrier."""
        g = object.__new__(type(self))
        self._copy_backend_fields(g)
        FiniteGroup.__init__(g, members, self.identity, check=False, policy=self.policy)
        return g

    # -- eager checks ---------------------------------------------------------

    def _check_identity_inverse(self):
        e = self.identity
        for a in self.elements:
            if self.mul(e, a) != a or self.mul(a, e) != a:
                raise InputError(f"identity law fails at {self.format_element(a)}")
            b = self.inv(a)
            if b not in self.element_set or self.mul(a, b) != e or self.mul(b, a) != e:
                raise InputError(f"inverse law fails at {self.format_element(a)}")

    def _check_closure(self):
        n = self.order
        if self.policy.pairs_exhaustive(n):
            pairs = itertools.product(self.elements, self.elements)
        else:
            rng = random.Random(self.policy.seed)
            pairs = (
                (self.elements[rng.randrange(n)], self.elements[rng.randrange(n)])
                for _ in range(self.policy.sample_count)
            )
        for a, b in pairs:
            if self.mul(a, b) not in self.element_set:
                raise InputError("carrier is not closed under multiplication")


def validate_group_laws(group: FiniteGroup, *, policy: CheckPolicy | None = None):
    """Full law battery: identity, inverses, closure, associativity.

    Associativity runs over all triples within the policy budget and over
    seeded random triples beyond it.
    """
    policy = policy or group.policy
    group._check_identity_inverse()
    group._check_closure()
    n = group.order
    if policy.triples_exhaustive(n):
        triples = itertools.product(group.elements, group.elements, group.elements)
    else:
        rng = random.Random(policy.seed)
        els = group.elements
        triples = (
            (els[rng.randrange(n)], els[rng.randrange(n)], els[rng.randrange(n)])
            for _ in range(policy.sample_count)
        )
    for a, b, c in triples:
        if group.mul(group.mul(a, b), c) != group.mul(a, group.mul(b, c)):
            raise InputError("multiplication is not associative")


# ---------------------------------------------------------------------------
# permutation backend
# ---------------------------------------------------------------------------


class PermutationGroup(FiniteGroup):
    """Permutations of {0..degree-1} stored as image tuples.

    The product applies the right factor first: (a*b)(i) = a[b[i]].
    """

    backend = "permutation"

    def __init__(self, degree, elements, *, check=True, policy=DEFAULT_POLICY):
        self.degree = int(degree)
        super().__init__(elements, tuple(range(self.degree)), check=check, policy=policy)

    def mul(self, a, b):
        return tuple(a[i] for i in b)

    def inv(self, a):
        out = [0] * self.degree
        for i, img in enumerate(a):
            out[img] = i
        return tuple(out)

    def space(self):
        return ("permutation", self.degree)

    def _copy_backend_fields(self, other):
        other.degree = self.degree

    def format_element(self, a) -> str:
        cycles = []
        seen = [False] * self.degree
        for i in range(self.degree):
            if seen[i] or a[i] == i:
                seen[i] = True
                continue
            cyc = [i]
            seen[i] = True
            j = a[i]
            while j != i:
                cyc.append(j)
                seen[j] = True
                j = a[j]
            cycles.append(cyc)
        if not cycles:
            return "()"
        return "".join("(" + " ".join(str(p) for p in c) + ")" for c in cycles)

    def parse_element(self, text: str):
        s = text.strip().replace(",", " ")
        if s in ("()", ""):
            return self.identity
        if not (s.startswith("(") and s.endswith(")")):
            raise InputError(f"cannot parse permutation literal {text!r}")
        out = list(range(self.degree))
        for body in s[1:-1].split(")("):
            points = [int(tok) for tok in body.split()]
            if len(points) != len(set(points)):
                raise InputError(f"repeated point in cycle {text!r}")
            for p in points:
                if not 0 <= p < self.degree:
                    raise InputError(f"point {p} outside 0..{self.degree - 1}")
            for p, q in zip(points, points[1:] + points[:1]):
                out[p] = q
        elem = tuple(out)
        if elem not in self.element_set:
            raise InputError(f"permutation {text!r} is not in this group")
        return elem

    @classmethod
    def from_generators(cls, degree, generators, *, policy=DEFAULT_POLICY):
        degree = int(degree)
        gens = []
        for g in generators:
            g = tuple(int(i) for i in g)
            if sorted(g) != list(range(degree)):
                raise InputError(f"{g} is not a permutation of 0..{degree - 1}")
            gens.append(g)
        identity = tuple(range(degree))
        mul = lambda a, b: tuple(a[i] for i in b)
        return cls(degree, _mulclose(mul, identity, gens), policy=policy)

    @classmethod
    def symmetric(cls, degree, *, policy=DEFAULT_POLICY):
        if degree > 8:
            raise InputError("symmetric group carrier too large to enumerate")
        return cls(degree, itertools.permutations(range(degree)), check=False, policy=policy)


# ---------------------------------------------------------------------------
# matrix backend
# ---------------------------------------------------------------------------


def _int_det(rows):
    n = len(rows)
    if n == 1:
        return rows[0][0]
    if n == 2:
        return rows[0][0] * rows[1][1] - rows[0][1] * rows[1][0]
    total = 0
    for j, a in enumerate(rows[0]):
        if a == 0:
            continue
        minor = [r[:j] + r[j + 1 :] for r in rows[1:]]
        total += (-1) ** j * a * _int_det(minor)
    return total


class MatrixGroup(FiniteGroup):
    """Invertible size x size matrices over Z/modulus, stored row-major."""

    backend = "matrix"

    def __init__(self, size, modulus, elements, *, check=True, policy=DEFAULT_POLICY):
        self.size = int(size)
        self.modulus = int(modulus)
        if self.size < 1 or self.modulus < 2:
            raise InputError("matrix backend needs size >= 1 and modulus >= 2")
        n = self.size
        identity = tuple(1 if i == j else 0 for i in range(n) for j in range(n))
        super().__init__(elements, identity, check=check, policy=policy)

    def mul(self, a, b):
        m = self.modulus
        if self.size == 2:
            a0, a1, a2, a3 = a
            b0, b1, b2, b3 = b
            return (
                (a0 * b0 + a1 * b2) % m,
                (a0 * b1 + a1 * b3) % m,
                (a2 * b0 + a3 * b2) % m,
                (a2 * b1 + a3 * b3) % m,
            )
        n = self.size
        return tuple(
            sum(a[i * n + k] * b[k * n + j] for k in range(n)) % m
            for i in range(n)
            for j in range(n)
        )

    def det(self, a) -> int:
        n = self.size
        rows = [list(a[i * n : (i + 1) * n]) for i in range(n)]
        return _int_det(rows) % self.modulus

    def inv(self, a):
        m = self.modulus
        if self.size == 2:
            a0, a1, a2, a3 = a
            di = pow((a0 * a3 - a1 * a2) % m, -1, m)
            return ((a3 * di) % m, (-a1 * di) % m, (-a2 * di) % m, (a0 * di) % m)
        n = self.size
        rows = [list(a[i * n : (i + 1) * n]) for i in range(n)]
        di = pow(_int_det(rows) % m, -1, m)
        out = [0] * (n * n)
        for i in range(n):
            for j in range(n):
                minor = [r[:j] + r[j + 1 :] for k, r in enumerate(rows) if k != i]
                out[j * n + i] = ((-1) ** (i + j) * _int_det(minor) * di) % m
        return tuple(out)

    def space(self):
        return ("matrix", self.size, self.modulus)

    def _copy_backend_fields(self, other):
        other.size = self.size
        other.modulus = self.modulus

    def format_element(self, a) -> str:
        return "[" + ",".join(str(v) for v in a) + "]"

    def parse_element(self, text: str):
        s = text.strip()
        if s.startswith("[") and s.endswith("]"):
            s = s[1:-1]
        try:
            entries = tuple(int(tok) % self.modulus for tok in s.split(","))
        except ValueError as exc:
            raise InputError(f"cannot parse matrix literal {text!r}") from exc
        if len(entries) != self.size * self.size:
            raise InputError(f"matrix literal {text!r} needs {self.size * self.size} entries")
        if entries not in self.element_set:
            raise InputError(f"matrix {text!r} is not in this group")
        return entries

    @classmethod
    def from_generators(cls, size, modulus, generators, *, policy=DEFAULT_POLICY):
        size, modulus = int(size), int(modulus)
        gens = []
        for g in generators:
            g = tuple(int(v) % modulus for v in g)
            if len(g) != size * size:
                raise InputError(f"generator {g} needs {size * size} entries")
            gens.append(g)
        probe = cls(size, modulus, [tuple(1 if i == j else 0 for i in range(size) for j in range(size))], check=False, policy=policy)
        from math import gcd

        for g in gens:
            if gcd(probe.det(g), modulus) != 1:
                raise InputError(f"generator {probe.format_element(g)} is not invertible mod {modulus}")
        return cls(size, modulus, _mulclose(probe.mul, probe.identity, gens), policy=policy)

    @classmethod
    def general_linear(cls, size, modulus, *, policy=DEFAULT_POLICY):
        """All invertible matrices, by enumeration; practical for small sizes."""
        size, modulus = int(size), int(modulus)
        if modulus ** (size * size) > 5_000_000:
            raise InputError("general linear carrier too large to enumerate")
        from math import gcd

        carrier = []
        for entries in itertools.product(range(modulus), repeat=size * size):
            rows = [list(entries[i * size : (i + 1) * size]) for i in range(size)]
            if gcd(_int_det(rows) % modulus, modulus) == 1:
                carrier.append(entries)
        return cls(size, modulus, carrier, check=False, policy=policy)


# ---------------------------------------------------------------------------
# Cayley-table backend
# ---------------------------------------------------------------------------


class CayleyTableGroup(FiniteGroup):
    """A group given by an explicit multiplication table on 0..n-1."""

    backend = "cayley"

    def __init__(self, table, *, check=True, policy=DEFAULT_POLICY):
        table = tuple(tuple(int(x) for x in row) for row in table)
        n = len(table)
        for i, row in enumerate(table):
            if len(row) != n:
                raise InputError(f"Cayley table row {i} has length {len(row)}, expected {n}")
            for x in row:
                if not 0 <= x < n:
                    raise InputError(f"Cayley table entry {x} outside 0..{n - 1}")
        self.table = table
        self._table_hash = hash(table)
        identity = None
        for e in range(n):
            if all(table[e][i] == i and table[i][e] == i for i in range(n)):
                identity = e
                break
        if identity is None:
            raise InputError("Cayley table has no identity element")
        inv_table = [None] * n
        for i in range(n):
            for j in range(n):
                if table[i][j] == identity and table[j][i] == identity:
                    inv_table[i] = j
                    break
            if inv_table[i] is None:
                raise InputError(f"Cayley table element {i} has no inverse")
        self.inv_table = tuple(inv_table)
        super().__init__(range(n), identity, check=check, policy=policy)
        if check:
            self._check_associativity()

    def mul(self, a, b):
        return self.table[a][b]

    def inv(self, a):
        return self.inv_table[a]

    def space(self):
        return ("cayley", len(self.table), self._table_hash)

    def _copy_backend_fields(self, other):
        other.table = self.table
        other.inv_table = self.inv_table
        other._table_hash = self._table_hash

    def format_element(self, a) -> str:
        return str(a)

    def parse_element(self, text: str):
        try:
            a = int(text.strip())
        except ValueError as exc:
            raise InputError(f"cannot parse Cayley index {text!r}") from exc
        if a not in self.element_set:
            raise InputError(f"index {a} is not in this group")
        return a

    def _check_associativity(self):
        n = len(self.table)
        tab = self.table
        if self.policy.triples_exhaustive(n):
            triples = itertools.product(range(n), repeat=3)
        else:
            rng = random.Random(self.policy.seed)
            triples = (
                (rng.randrange(n), rng.randrange(n), rng.randrange(n))
                for _ in range(self.policy.sample_count)
            )
        for a, b, c in triples:
            if tab[tab[a][b]][c] != tab[a][tab[b][c]]:
                raise InputError("Cayley table is not associative")


# ---------------------------------------------------------------------------
# subgroups
# ---------------------------------------------------------------------------


class Subgroup:
    """A subgroup of an ambient group, stored as a set of carrier elements."""

    def __init__(self, ambient: FiniteGroup, members):
        members = frozenset(members)
        if not members <= ambient.element_set:
            raise InputError("subgroup members outside the ambient carrier")
        self.ambient = ambient
        self.members = members

    @cached_property
    def elements(self) -> tuple:
        return tuple(sorted(self.members))

    @property
    def order(self) -> int:
        return len(self.members)

    def __contains__(self, a):
        return a in self.members

    def __iter__(self):
        return iter(self.elements)

    def __len__(self):
        return len(self.members)

    def __eq__(self, other):
        if not isinstance(other, Subgroup):
            return NotImplemented
        return self.ambient.space() == other.ambient.space() and self.members == other.members

    def __hash__(self):
        return hash((self.ambient.space(), self.members))

    def __repr__(self):
        return f"<Subgroup order={self.order} of {self.ambient!r}>"

    def is_full(self) -> bool:
        return self.members == self.ambient.element_set

    @cached_property
    def generating_set(self) -> tuple:
        return _greedy_generators(self.ambient.mul, self.ambient.identity, self.elements)

    @cached_property
    def _as_group(self) -> FiniteGroup:
        return self.ambient if self.is_full() else self.ambient.restrict(self.elements)

    def as_group(self) -> FiniteGroup:
        """The subgroup as a standalone group sharing element values."""
        return self._as_group

    def validate(self):
        """Check identity membership and closure under product and inverse."""
        amb = self.ambient
        if amb.identity not in self.members:
            raise InputError("subgroup does not contain the identity")
        for a in self.elements:
            if amb.inv(a) not in self.members:
                raise InputError("subgroup not closed under inverse")
        n = self.order
        if amb.policy.pairs_exhaustive(n):
            pairs = itertools.product(self.elements, self.elements)
        else:
            rng = random.Random(amb.policy.seed)
            pairs = (
                (self.elements[rng.randrange(n)], self.elements[rng.randrange(n)])
                for _ in range(amb.policy.sample_count)
            )
        for a, b in pairs:
            if amb.mul(a, b) not in self.members:
                raise InputError("subgroup not closed under product")


def full_subgroup(group: FiniteGroup) -> Subgroup:
    return Subgroup(group, group.element_set)


def trivial_subgroup(group: FiniteGroup) -> Subgroup:
    return Subgroup(group, frozenset([group.identity]))


def closure(ambient: FiniteGroup, generators) -> Subgroup:
    """Smallest subgroup of the ambient group containing the generators."""
    gens = list(generators)
    for g in gens:
        if g not in ambient:
            raise InputError("closure generator outside the ambient carrier")
    return Subgroup(ambient, _mulclose(ambient.mul, ambient.identity, gens))


def conjugate(sub: Subgroup, x) -> Subgroup:
    """The subgroup {x * h * x^-1 : h in sub}."""
    amb = sub.ambient
    if x not in amb:
        raise InputError("conjugating element outside the ambient carrier")
    xinv = amb.inv(x)
    return Subgroup(amb, frozenset(amb.mul(amb.mul(x, h), xinv) for h in sub.members))


# ---------------------------------------------------------------------------
# homomorphisms
# ---------------------------------------------------------------------------


class Homomorphism:
    """A group homomorphism materialized as a full element table.

    The table is validated at construction time: totality, identity and the
    multiplicative law (exhaustive within the source policy budget, sampled
    beyond it).  Preimage queries are then plain set scans.
    """

    def __init__(self, source: FiniteGroup, target: FiniteGroup, table: dict, *, check=True):
        if set(table) != source.element_set:
            raise InputError("homomorphism table must cover the source carrier exactly")
        for img in table.values():
            if img not in target:
                raise InputError("homomorphism image outside the target carrier")
        self.source = source
        self.target = target
        self.table = dict(table)
        if check:
            self._check_structure()

    def __call__(self, e):
        return self.table[e]

    def __eq__(self, other):
        if not isinstance(other, Homomorphism):
            return NotImplemented
        return (
            self.source.space() == other.source.space()
            and self.target.space() == other.target.space()
            and self.source.element_set == other.source.element_set
            and self.table == other.table
        )

    def __hash__(self):
        return hash((self.source.space(), self.target.space(), frozenset(self.table.items())))

    def __repr__(self):
        return f"<Homomorphism {self.source!r} -> {self.target!r}>"

    def _check_structure(self):
        if self.table[self.source.identity] != self.target.identity:
            raise InputError("map does not send identity to identity")
        src = self.source.elements
        n = len(src)
        policy = self.source.policy
        if policy.pairs_exhaustive(n):
            pairs = itertools.product(src, src)
        else:
            rng = random.Random(policy.seed)
            pairs = ((src[rng.randrange(n)], src[rng.randrange(n)]) for _ in range(policy.sample_count))
        mul_s, mul_t, tab = self.source.mul, self.target.mul, self.table
        for a, b in pairs:
            if tab[mul_s(a, b)] != mul_t(tab[a], tab[b]):
                raise InputError(
                    f"map is not multiplicative at ({self.source.format_element(a)}, "
                    f"{self.source.format_element(b)})"
                )

    @cached_property
    def _full_image(self) -> Subgroup:
        return Subgroup(self.target, frozenset(self.table.values()))

    def image(self, sub: Subgroup | None = None) -> Subgroup:
        """Image of a subgroup of the source (the whole source by default)."""
        if sub is None:
            return self._full_image
        if sub.ambient.space() != self.source.space() or not sub.members <= self.source.element_set:
            raise InputError("image argument is not a subgroup of the source")
        return Subgroup(self.target, frozenset(self.table[e] for e in sub.members))

    def preimage(self, sub: Subgroup) -> Subgroup:
        """Full preimage of a subgroup of the target."""
        if sub.ambient.space() != self.target.space() or not sub.members <= self.target.element_set:
            raise InputError("preimage argument is not a subgroup of the target")
        want = sub.members
        return Subgroup(self.source, frozenset(e for e in self.source.elements if self.table[e] in want))

    @cached_property
    def kernel(self) -> Subgroup:
        return self.preimage(trivial_subgroup(self.target))

    @cached_property
    def _preimage_rep(self) -> dict:
        rep = {}
        for e in self.source.elements:
            rep.setdefault(self.table[e], e)
        return rep

    def preimage_rep(self, t):
        """The key-minimal source element mapping onto t."""
        try:
            return self._preimage_rep[t]
        except KeyError:
            raise InputError("element has no preimage under this map") from None

    def restrict(self, new_source: FiniteGroup, new_target: FiniteGroup) -> "Homomorphism":
        """Re-materialize on a smaller source, targeting a smaller group."""
        if not new_source.element_set <= self.source.element_set:
            raise InputError("restricted source is not contained in the original source")
        table = {e: self.table[e] for e in new_source.elements}
        return Homomorphism(new_source, new_target, table)


def identity_hom(group: FiniteGroup) -> Homomorphism:
    return Homomorphism(group, group, {a: a for a in group}, check=False)


def inclusion_hom(sub_group: FiniteGroup, ambient: FiniteGroup) -> Homomorphism:
    if sub_group.space() != ambient.space() or not sub_group.element_set <= ambient.element_set:
        raise InputError("inclusion needs a sub-carrier of the ambient group")
    return Homomorphism(sub_group, ambient, {a: a for a in sub_group}, check=False)


def trivial_hom(source: FiniteGroup, target: FiniteGroup) -> Homomorphism:
    return Homomorphism(source, target, {a: target.identity for a in source}, check=False)


def conjugation_hom(group: FiniteGroup, x) -> Homomorphism:
    """The inner automorphism a -> x * a * x^-1."""
    if x not in group:
        raise InputError("conjugating element outside the carrier")
    return Homomorphism(group, group, {a: group.conjugate(x, a) for a in group})


def hom_from_generator_images(source: FiniteGroup, target: FiniteGroup, generators, images) -> Homomorphism:
    """Extend generator images multiplicatively, checking consistency."""
    generators = list(generators)
    images = list(images)
    if len(generators) != len(images):
        raise InputError("generator and image lists differ in length")
    for g in generators:
        if g not in source:
            raise InputError("hom generator outside the source carrier")
    for im in images:
        if im not in target:
            raise InputError("hom image outside the target carrier")
    table = {source.identity: target.identity}
    frontier = [source.identity]
    while frontier:
        fresh = []
        for a in frontier:
            for g, im in zip(generators, images):
                b = source.mul(a, g)
                val = target.mul(table[a], im)
                known = table.get(b)
                if known is None:
                    table[b] = val
                    fresh.append(b)
                elif known != val:
                    raise InputError("generator images are inconsistent with the group relations")
        frontier = fresh
    if len(table) != source.order:
        raise InputError("generators do not generate the source group")
    return Homomorphism(source, target, table)


def image(h: Homomorphism, sub: Subgroup) -> Subgroup:
    return h.image(sub)


def preimage(h: Homomorphism, sub: Subgroup) -> Subgroup:
    return h.preimage(sub)


# ---------------------------------------------------------------------------
# double cosets
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class DoubleCoset:
    representative: object
    members: frozenset


class DoubleCosetDecomposition:
    """Partition of a carrier into left\\ambient/right double cosets.

    Representatives are the key-minimal members; cosets are listed in
    representative order.
    """

    def __init__(self, ambient, left, right, cosets, rep_of):
        self.ambient = ambient
        self.left = left
        self.right = right
        self.cosets = cosets
        self.rep_of = rep_of

    def __len__(self):
        return len(self.cosets)

    def __iter__(self):
        return iter(self.cosets)

    def representatives(self) -> tuple:
        return tuple(c.representative for c in self.cosets)

    def coset_of(self, x) -> DoubleCoset:
        rep = self.rep_of[x]
        for c in self.cosets:
            if c.representative == rep:
                return c
        raise InvariantViolation("representative without a coset")


def _require_subgroup(ambient: FiniteGroup, sub: Subgroup, name: str):
    if sub.ambient.space() != ambient.space() or not sub.members <= ambient.element_set:
        raise InputError(f"{name} is not a subgroup of the ambient group")


def _expand_double_coset(ambient, lgens, rgens, x):
    mul = ambient.mul
    members = {x}
    frontier = [x]
    while frontier:
        fresh = []
        for g in frontier:
            for h in lgens:
                y = mul(h, g)
                if y not in members:
                    members.add(y)
                    fresh.append(y)
            for k in rgens:
                y = mul(g, k)
                if y not in members:
                    members.add(y)
                    fresh.append(y)
        frontier = fresh
    return members


def double_coset_of(ambient: FiniteGroup, left: Subgroup, right: Subgroup, x) -> frozenset:
    """The single double coset left * x * right."""
    _require_subgroup(ambient, left, "left")
    _require_subgroup(ambient, right, "right")
    if x not in ambient:
        raise InputError("element outside the ambient carrier")
    return frozenset(_expand_double_coset(ambient, left.generating_set, right.generating_set, x))


def double_cosets(ambient: FiniteGroup, left: Subgroup, right: Subgroup) -> DoubleCosetDecomposition:
    """Deterministic double-coset partition with key-minimal representatives."""
    _require_subgroup(ambient, left, "left")
    _require_subgroup(ambient, right, "right")
    lgens = left.generating_set
    rgens = right.generating_set
    rep_of = {}
    cosets = []
    for x in ambient.elements:
        if x in rep_of:
            continue
        members = _expand_double_coset(ambient, lgens, rgens, x)
        for y in members:
            rep_of[y] = x
        cosets.append(DoubleCoset(x, frozenset(members)))
    if len(rep_of) != ambient.order:
        raise InvariantViolation("double cosets failed to cover the carrier")
    return DoubleCosetDecomposition(ambient, left, right, tuple(cosets), rep_of)


@dataclass(frozen=True)
class CosetBijection:
    source: DoubleCosetDecomposition
    target: DoubleCosetDecomposition
    rep_map: dict


def conjugated_double_coset_map(d: DoubleCosetDecomposition, x, y) -> CosetBijection:
    """The coset-level bijection induced by g -> x*g*y^-1, fully certified.

    Well-definedness and the inverse g -> x^-1*g*y are both checked on every
    carrier element; a failure raises InvariantViolation.
    """
    amb = d.ambient
    if x not in amb or y not in amb:
        raise InputError("conjugating elements outside the ambient carrier")
    target = double_cosets(amb, conjugate(d.left, x), conjugate(d.right, y))
    yinv = amb.inv(y)
    xinv = amb.inv(x)
    rep_map = {}
    for coset in d.cosets:
        images = {target.rep_of[amb.mul(amb.mul(x, g), yinv)] for g in coset.members}
        if len(images) != 1:
            raise InvariantViolation("conjugated coset map is not well-defined")
        rep_map[coset.representative] = images.pop()
    for coset in target.cosets:
        back = {d.rep_of[amb.mul(amb.mul(xinv, g), y)] for g in coset.members}
        if len(back) != 1:
            raise InvariantViolation("inverse coset map is not well-defined")
        if rep_map.get(back.pop()) != coset.representative:
            raise InvariantViolation("conjugated coset maps do not invert each other")
    if sorted(rep_map.values()) != sorted(target.representatives()):
        raise InvariantViolation("conjugated coset map is not a bijection")
    return CosetBijection(d, target, rep_map)
