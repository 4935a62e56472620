from __future__ import annotations

import pytest

import oracles
from zipcalc import (
    Homomorphism,
    InputError,
    MatrixGroup,
    WittZipConfig,
    ZipDatum,
    build_witt_zip,
    coarsening_check,
    conjugate,
    double_cosets,
    fine_orbits,
    groupoid_equivalence_check,
    member_stationary_subgroups,
    refine_to_stationary,
    refinement_bijection_check,
    torsor_check,
    twist,
    zip_classes,
)


# -- fine orbits -----------------------------------------------------------------


def test_fine_orbits_trivial_e(zoo):
    report = fine_orbits(zoo["trivial-e"])
    assert report.class_count == 6
    assert all(c.size == 1 for c in report.classes)


def test_fine_orbits_fix_identity_when_tau_equals_sigma(zoo):
    report = fine_orbits(zoo["s3-reflection-pair"])
    identity_class = report.class_of(zoo["s3-reflection-pair"].G.identity)
    assert identity_class.members == frozenset([zoo["s3-reflection-pair"].G.identity])


def test_fine_orbits_borel_conjugation(zoo):
    z = zoo["gl2f2-borel"]
    report = fine_orbits(z)
    assert report.class_count == 4
    assert sorted((w, m) for w, m in oracles.naive_fine_orbits(z)) == sorted(
        (c.witness, c.members) for c in report.classes
    )


def test_fine_orbits_match_naive_on_zoo(zoo):
    for name, z in zoo.items():
        report = fine_orbits(z)
        assert sorted((c.witness, c.members) for c in report.classes) == oracles.naive_fine_orbits(z), name


# -- coarse classes -----------------------------------------------------------------


def test_zip_classes_tau_surjective_single_class(zoo):
    report = zip_classes(zoo["tau-surjective"])
    assert report.class_count == 1


def test_zip_classes_trivial_e_all_singletons(zoo):
    report = zip_classes(zoo["trivial-e"])
    assert report.class_count == 6
    assert all(c.size == 1 for c in report.classes)


def test_zip_classes_witt_two_classes(witt22):
    z, x = witt22
    report = zip_classes(z)
    assert report.class_count == 2
    dec = double_cosets(z.G, z.tau.image(), z.sigma.image())
    witnesses = {dec.rep_of[c.witness] for c in report.classes}
    assert witnesses == {dec.rep_of[z.G.identity], dec.rep_of[x]}


def test_zip_classes_match_naive_on_small_zoo(zoo):
    for name in ("trivial-e", "tau-surjective", "s3-reflection-pair", "s3-mixed", "gl2f2-borel"):
        z = zoo[name]
        report = zip_classes(z)
        assert sorted((c.witness, c.members) for c in report.classes) == oracles.naive_zip_classes(z), name


def test_zip_class_witnesses_are_key_minimal(acceptance_classes):
    for name, report in acceptance_classes.items():
        for c in report.classes:
            assert c.witness == min(c.members), name


def test_zip_classes_member_witnesses_reproduce_members(witt22):
    z, _ = witt22
    report = zip_classes(z)
    G = z.G
    for c in report.classes:
        for y, (e, g) in c.member_witness.items():
            assert g in c.g_infinity.members
            assert y == G.mul(G.mul(z.tau(e), G.mul(g, c.witness)), G.inv(z.sigma(e)))


def test_witness_conjugation_identity(witt22):
    # transported stationary subgroups match a fresh refinement run
    z, _ = witt22
    report = zip_classes(z)
    for c in report.classes:
        for y in sorted(c.members)[:4]:
            einf_y, ginf_y = member_stationary_subgroups(report, y)
            trace = refine_to_stationary(twist(z, y))
            assert einf_y.members == trace.e_infinity.members
            assert ginf_y.members == trace.g_infinity.members


def test_zip_classes_deterministic_under_input_shuffle():
    import random

    z1, _ = build_witt_zip(WittZipConfig(2, 2))
    carrier = list(z1.E.elements)
    random.Random(7).shuffle(carrier)
    E = MatrixGroup(2, 4, carrier)
    G = MatrixGroup.general_linear(2, 2)
    items = [(e, tuple(v % 2 for v in e)) for e in carrier]
    tau = Homomorphism(E, G, dict(items))
    sigma_items = [(e, ((e[0]) % 2, (2 * e[1]) % 2, (e[2] // 2) % 2, e[3] % 2)) for e in carrier]
    random.Random(11).shuffle(sigma_items)
    sigma = Homomorphism(E, G, dict(sigma_items))
    z2 = ZipDatum(E, G, tau, sigma)
    r1 = zip_classes(z1)
    r2 = zip_classes(z2)
    assert [(c.witness, c.members) for c in r1.classes] == [(c.witness, c.members) for c in r2.classes]


# -- coarsening ------------------------------------------------------------------


def test_coarsening_trivial_cases(zoo):
    for name in ("trivial-e", "tau-surjective"):
        z = zoo[name]
        assert coarsening_check(fine_orbits(z), zip_classes(z))


def test_coarsening_witt(witt22):
    z, _ = witt22
    assert coarsening_check(fine_orbits(z), zip_classes(z))


def test_coarsening_rejects_mismatched_reports(zoo):
    fine = fine_orbits(zoo["trivial-e"])
    coarse = zip_classes(zoo["tau-surjective"])
    with pytest.raises(InputError):
        coarsening_check(fine, coarse)


def test_strict_coarsening_exists_somewhere(zoo):
    # at least one corpus datum separates the two relations
    strict = [
        name
        for name, z in zoo.items()
        if fine_orbits(z).class_count > zip_classes(z).class_count
    ]
    assert strict


# -- refinement bijection --------------------------------------------------------


def test_refinement_bijection_identity_tau_surjective(zoo):
    z = zoo["tau-surjective"]
    assert refinement_bijection_check(z, z.G.identity)


def test_refinement_bijection_witt(witt22):
    z, x = witt22
    report = zip_classes(z)
    assert refinement_bijection_check(z, x, coarse=report)
    assert refinement_bijection_check(z, z.G.identity, coarse=report)


def test_refinement_bijection_all_zoo_roots(zoo):
    for name, z in zoo.items():
        report = zip_classes(z)
        dec = double_cosets(z.G, z.tau.image(), z.sigma.image())
        for r in dec.representatives():
            assert refinement_bijection_check(z, r, coarse=report), name


# -- torsor ------------------------------------------------------------------------


def test_torsor_trivial_e(zoo):
    z = zoo["trivial-e"]
    assert torsor_check(z, z.G.identity)
    assert torsor_check(z, (1, 2, 0))


def test_torsor_witt_identity_fiber_size(witt22):
    z, _ = witt22
    trace = refine_to_stationary(z)
    assert trace.e_infinity.order == 16
    assert torsor_check(z, z.G.identity)


def test_torsor_s3_data(zoo):
    for name in ("s3-reflection-pair", "s3-mixed"):
        z = zoo[name]
        for x in z.G.elements:
            assert torsor_check(z, x), name


def test_torsor_matches_naive_full_domain(zoo):
    for name in ("s3-reflection-pair", "s3-mixed", "gl2f2-borel", "trivial-e"):
        z = zoo[name]
        for x in z.G.elements[:3]:
            assert torsor_check(z, x) == oracles.naive_torsor_check(z, x), name


def test_torsor_with_report_members(witt22):
    z, x = witt22
    report = zip_classes(z)
    for c in report.classes:
        assert torsor_check(z, c.witness, report=report)


# -- groupoid equivalence --------------------------------------------------------


def test_groupoid_identity_functor(witt22):
    z, x = witt22
    e = z.E.identity
    assert groupoid_equivalence_check(z, x, x, e, e)


def test_groupoid_witt_random_witnesses(witt22):
    z, x = witt22
    G = z.G
    for e, et in [(z.E.elements[5], z.E.elements[9]), (z.E.elements[17], z.E.elements[2])]:
        y = G.mul(G.mul(z.tau(e), x), z.sigma(et))
        assert groupoid_equivalence_check(z, x, y, e, et)


def test_groupoid_trivial_e_discrete(zoo):
    z = zoo["trivial-e"]
    e = z.E.identity
    for x in z.G.elements[:3]:
        assert groupoid_equivalence_check(z, x, x, e, e)


def test_groupoid_rejects_bad_witnesses(witt22):
    z, x = witt22
    e = z.E.identity
    y = z.G.mul(x, x)
    if y != x:
        with pytest.raises(InputError, match="sigma"):
            groupoid_equivalence_check(z, x, y, e, e)


# -- partition sanity across the corpus -------------------------------------------


def test_reports_partition_carrier(acceptance_classes, acceptance_data):
    data = dict(acceptance_data)
    for name, report in acceptance_classes.items():
        z = data[name]
        union = set()
        total = 0
        for c in report.classes:
            union |= c.members
            total += c.size
        assert union == set(z.G.element_set), name
        assert total == z.G.order, name
