"""Equivalence relations attached to a zip datum.

Two relations on the carrier of G are computed exhaustively: the fine orbits
of the action e.g = tau(e) * g * sigma(e)^-1, and the coarse relation where
y ~ x whenever y = tau(e) * g * x * sigma(e)^-1 with g in the stationary
image group of the x-twisted datum.  The remaining functions are structural
cross-checks: coarsening, the one-step refinement bijection, the fiber/orbit
structure of the class map (a torsor check), and the groupoid equivalence
between refined twists by elements of one double coset.

Every enumeration factors through the distinct (tau(e), sigma(e)) pairs where
only those values matter; the reduction is exact because pair fibers are the
cosets of ker tau ∩ ker sigma.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

from .groups import InputError, InvariantViolation, Subgroup, conjugate, double_coset_of
from .zipdata import ZipDatum, refine, refine_to_stationary, twist


@dataclass(frozen=True)
class ZipClass:
    """One equivalence class: key-minimal witness, members, per-witness data.

    ``member_witness[y] = (e, g)`` records y = tau(e) * g * witness * sigma(e)^-1
    (fine orbits carry e only, with g fixed to the identity).
    """

    witness: object
    members: frozenset
    e_infinity: Subgroup | None
    g_infinity: Subgroup | None
    member_witness: dict = field(repr=False, hash=False, compare=False)

    @property
    def size(self) -> int:
        return len(self.members)


class ClassReport:
    """A partition of the carrier of G under one of the two relations."""

    def __init__(self, datum: ZipDatum, relation: str, classes: tuple):
        self.datum = datum
        self.relation = relation
        self.classes = classes

    @property
    def class_count(self) -> int:
        return len(self.classes)

    @cached_property
    def _class_index(self) -> dict:
        idx = {}
        for i, c in enumerate(self.classes):
            for m in c.members:
                idx[m] = i
        return idx

    def class_of(self, x) -> ZipClass:
        try:
            return self.classes[self._class_index[x]]
        except KeyError:
            raise InputError("element outside the carrier of G") from None

    def witness_of(self, x):
        return self.class_of(x).witness

    def __repr__(self):
        return f"<ClassReport {self.relation} classes={self.class_count}>"


def _expand(z: ZipDatum, seeds: dict) -> dict:
    """Close a seeded member->witness map under the pair-group generators.

    seeds maps y -> (e, g) with y = tau(e) * g * x * sigma(e)^-1; applying a
    generator pair (a, b) with witness w maps y to a*y*b^-1 and composes the
    e-part with w on the left.
    """
    G, E = z.G, z.E
    gens = z.action_generators
    members = dict(seeds)
    frontier = list(seeds)
    while frontier:
        fresh = []
        for y in frontier:
            e_y, g_y = members[y]
            for a, binv, w in gens:
                out = G.mul(G.mul(a, y), binv)
                if out not in members:
                    members[out] = (E.mul(w, e_y), g_y)
                    fresh.append(out)
        frontier = fresh
    return members


def fine_orbits(z: ZipDatum) -> ClassReport:
    """Orbits of e.g = tau(e) * g * sigma(e)^-1 on the carrier of G."""
    classified = {}
    classes = []
    for x in z.G.elements:
        if x in classified:
            continue
        members = _expand(z, {x: (z.E.identity, z.G.identity)})
        for y in members:
            classified[y] = x
        classes.append(
            ZipClass(
                witness=x,
                members=frozenset(members),
                e_infinity=None,
                g_infinity=None,
                member_witness=members,
            )
        )
    if len(classified) != z.G.order:
        raise InvariantViolation("fine orbits failed to cover the carrier")
    return ClassReport(z, "fine-orbit", tuple(classes))


def zip_classes(z: ZipDatum) -> ClassReport:
    """The coarse partition of G, one stationary-refinement run per witness.

    Witnesses are the key-minimal unclassified elements; the class of x is
    { tau(e) * g * x * sigma(e)^-1 : e in E, g in G_inf^x }.  The partition
    property (the relation's symmetry and transitivity) is asserted, not
    assumed.
    """
    G = z.G
    classified = {}
    classes = []
    for x in G.elements:
        if x in classified:
            continue
        trace = refine_to_stationary(twist(z, x))
        einf, ginf = trace.e_infinity, trace.g_infinity
        seeds = {}
        for g in ginf:
            y = G.mul(g, x)
            seeds.setdefault(y, (z.E.identity, g))
        members = _expand(z, seeds)
        overlap = frozenset(members) & frozenset(classified)
        if overlap:
            raise InvariantViolation(
                "coarse equivalence classes failed to form a partition"
            )
        for y in members:
            classified[y] = x
        classes.append(
            ZipClass(
                witness=x,
                members=frozenset(members),
                e_infinity=einf,
                g_infinity=ginf,
                member_witness=members,
            )
        )
    if len(classified) != G.order:
        raise InvariantViolation("coarse classes failed to cover the carrier")
    return ClassReport(z, "zip-coarse", tuple(classes))


def member_stationary_subgroups(report: ClassReport, y) -> tuple:
    """(E_inf^y, G_inf^y) transported from the class witness via y's recorded
    witness pair, using the conjugation identity of the coarse relation."""
    c = report.class_of(y)
    if c.e_infinity is None:
        raise InputError("fine-orbit reports carry no stationary subgroups")
    e, _ = c.member_witness[y]
    z = report.datum
    einf_y = conjugate(Subgroup(z.E, c.e_infinity.members), e)
    ginf_y = Subgroup(z.G, frozenset(z.tau(h) for h in einf_y.members))
    return einf_y, ginf_y


def coarsening_check(fine: ClassReport, coarse: ClassReport) -> bool:
    """True iff every fine orbit lies inside a single coarse class."""
    if fine.datum is not coarse.datum:
        raise InputError("reports belong to different zip data")
    for c in fine.classes:
        target = coarse.witness_of(c.witness)
        if any(coarse.witness_of(m) != target for m in c.members):
            return False
    return True


def refinement_bijection_check(z: ZipDatum, x, *, coarse: ClassReport | None = None) -> bool:
    """Check that y -> y*x matches classes of the refined x-twist with the
    classes of z inside the double coset tau(E) * x * sigma(E).

    Verifies the member-level identity (class of y) * x =
    (class of y*x) ∩ (refined carrier) * x, then bijectivity onto the classes
    meeting the double coset.
    """
    G = z.G
    if x not in G:
        raise InputError("element outside the carrier of G")
    if coarse is None:
        coarse = zip_classes(z)
    z1x = refine(twist(z, x))
    sub = zip_classes(z1x)
    carrier_x = frozenset(G.mul(g, x) for g in z1x.G.elements)
    coset = double_coset_of(G, z.tau.image(), z.sigma.image(), x)
    expected_targets = {c.witness for c in coarse.classes if c.members & coset}
    seen_targets = set()
    for c in sub.classes:
        image = frozenset(G.mul(y, x) for y in c.members)
        big = coarse.class_of(G.mul(c.witness, x)).members
        if image != big & carrier_x:
            return False
        target = coarse.witness_of(G.mul(c.witness, x))
        if target in seen_targets:
            return False
        seen_targets.add(target)
    return seen_targets == expected_targets


def torsor_check(z: ZipDatum, x, *, report: ClassReport | None = None) -> bool:
    """Check that E x G_inf^x -> class(x), (e, g) -> tau(e)*g*x*sigma(e)^-1 is
    onto the class and that every fiber is one free orbit of E_inf^x acting by
    eps.(e, g) = (e*eps^-1, tau(eps)*g*(x-twisted sigma)(eps)^-1).

    The whole computation runs on the quotient by K = ker tau ∩ ker sigma:
    K is contained in E_inf^x, acts freely within every fiber and every
    orbit, and is invisible to the map, so fibers and orbits on the full
    domain are exactly the K-saturations of their reduced counterparts.
    """
    G, E = z.G, z.E
    if x not in G:
        raise InputError("element outside the carrier of G")
    zx = twist(z, x)
    trace = refine_to_stationary(zx)
    einf = trace.e_infinity.members
    ginf_sorted = trace.g_infinity.elements

    kernel = z.pair_kernel.members
    if not kernel <= einf:
        return False
    transversal_rep = z.kernel_transversal
    reps = sorted(set(transversal_rep.values()))
    k_order = len(kernel)
    if len(einf) % k_order:
        return False
    reduced_fiber_size = len(einf) // k_order

    if report is not None:
        class_members = report.class_of(x).members
    else:
        seeds = {}
        for g in ginf_sorted:
            seeds.setdefault(G.mul(g, x), (E.identity, g))
        class_members = frozenset(_expand(z, seeds))

    gx = {g: G.mul(g, x) for g in ginf_sorted}
    fibers = {}
    for t in reps:
        a = z.tau(t)
        binv = G.inv(z.sigma(t))
        for g in ginf_sorted:
            val = G.mul(G.mul(a, gx[g]), binv)
            fibers.setdefault(val, []).append((t, g))

    if frozenset(fibers) != class_members:
        return False
    if any(len(f) != reduced_fiber_size for f in fibers.values()):
        return False

    # one acting element per K-coset of E_inf^x; K itself acts trivially here
    eps_reps = sorted({transversal_rep[eps] for eps in einf})
    eps_data = []
    for eps in eps_reps:
        eps_data.append((E.inv(eps), z.tau(eps), G.inv(zx.sigma(eps))))

    for fiber in fibers.values():
        t0, g0 = min(fiber)
        orbit = set()
        for eps_inv, u, winv in eps_data:
            t1 = transversal_rep[E.mul(t0, eps_inv)]
            g1 = G.mul(G.mul(u, g0), winv)
            orbit.add((t1, g1))
        if len(orbit) != reduced_fiber_size or orbit != set(fiber):
            return False
    return True


def groupoid_equivalence_check(z: ZipDatum, x, y, e, e_tilde) -> bool:
    """Check the equivalence between the refined x-twist and y-twist induced
    by witnesses y = tau(e) * x * sigma(e~).

    The map sends eps -> e~^-1 * eps * e~ on the E side and
    g -> tau(e~)^-1 * g * x * sigma(e~) * y^-1 on the carrier side; the check
    verifies both are bijections onto the y-side components, that the map is
    equivariant for the two actions (once per (tau, sigma)-pair class of eps,
    which is exact), that orbits map bijectively onto orbits, and that every
    stabilizer maps bijectively onto the stabilizer of the image.
    """
    G, E = z.G, z.E
    for el, group, what in ((x, G, "x"), (y, G, "y")):
        if el not in group:
            raise InputError(f"precondition failed: {what} is not in G")
    if e not in E or e_tilde not in E:
        raise InputError("precondition failed: witnesses are not in E")
    if y != G.mul(G.mul(z.tau(e), x), z.sigma(e_tilde)):
        raise InputError("precondition failed: y != tau(e) * x * sigma(e~)")

    zx1 = refine(twist(z, x))
    zy1 = refine(twist(z, y))

    et_inv = E.inv(e_tilde)
    psi_e = {eps: E.mul(E.mul(et_inv, eps), e_tilde) for eps in zx1.E}
    shift = G.mul(G.mul(x, z.sigma(e_tilde)), G.inv(y))
    t_et_inv = G.inv(z.tau(e_tilde))
    psi_g = {g: G.mul(G.mul(t_et_inv, g), shift) for g in zx1.G}

    if frozenset(psi_e.values()) != zy1.E.element_set:
        return False
    if frozenset(psi_g.values()) != zy1.G.element_set:
        return False

    def act_x(eps, g):
        return G.mul(G.mul(zx1.tau(eps), g), G.inv(zx1.sigma(eps)))

    def act_y(eps, g):
        return G.mul(G.mul(zy1.tau(eps), g), G.inv(zy1.sigma(eps)))

    # one eps per (tau, x-twisted sigma)-pair class; the map respects classes
    pair_reps = [w for _, _, w in zx1.action_pairs]
    for eps in pair_reps:
        peps = psi_e[eps]
        for g in zx1.G:
            if psi_g[act_x(eps, g)] != act_y(peps, psi_g[g]):
                return False

    ox = fine_orbits(zx1)
    oy = fine_orbits(zy1)
    image_witnesses = set()
    for c in ox.classes:
        targets = {oy.witness_of(psi_g[g]) for g in c.members}
        if len(targets) != 1:
            return False
        image_witnesses.add(targets.pop())
    if len(image_witnesses) != oy.class_count:
        return False

    # stabilizers: counted via pair classes, injectivity is conjugation
    k_x = len(zx1.pair_kernel)
    k_y = len(zy1.pair_kernel)
    for g in zx1.G:
        pg = psi_g[g]
        stab_g = [eps for eps in pair_reps if act_x(eps, g) == g]
        stab_pg_size = k_y * sum(
            1 for _, _, w in zy1.action_pairs if act_y(w, pg) == pg
        )
        if k_x * len(stab_g) != stab_pg_size:
            return False
        if any(act_y(psi_e[eps], pg) != pg for eps in stab_g):
            return False
    return True
