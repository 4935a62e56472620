from __future__ import annotations

import pytest

import oracles
from zipcalc import (
    InputError,
    WittZipConfig,
    build_small_zoo,
    build_witt_zip,
    validate_group_laws,
    zip_classes,
    zoo_entry,
)


def test_config_rejects_composite_p():
    with pytest.raises(InputError):
        WittZipConfig(4, 2)
    with pytest.raises(InputError):
        WittZipConfig(1, 2)


def test_config_rejects_small_level():
    with pytest.raises(InputError):
        WittZipConfig(2, 1)


def test_witt22_orders(witt22):
    z, x = witt22
    assert z.G.order == 6
    # invertible over Z/4 with even lower-left, counted by enumeration
    expected = [
        m
        for m in oracles.brute_force_gl2_carrier(4)
        if m[2] % 2 == 0
    ]
    assert z.E.order == len(expected) == 32
    assert z.E.element_set == frozenset(expected)
    assert x == (0, 1, 1, 0)
    assert x in z.G


def test_witt_sigma_fixes_identity(witt22, witt23):
    for z, _ in (witt22, witt23):
        assert z.sigma(z.E.identity) == z.G.identity


def test_witt_sigma_agrees_with_lifted_conjugation(witt23):
    # lift entries to Z, conjugate by diag(p, 1) exactly, reduce one level
    z, _ = witt23
    p, m = 2, 4
    for e in z.E.elements[::29]:
        a, b, c, d = e
        lifted = (a, p * b, c // p, d)
        assert z.sigma(e) == tuple(v % m for v in lifted)


def test_witt_groups_satisfy_laws(witt22):
    z, _ = witt22
    validate_group_laws(z.E)
    validate_group_laws(z.G)


def test_witt_twisted_stabilization_across_levels():
    from zipcalc import refine_to_stationary, twist

    for p, n in ((2, 2), (2, 3), (3, 2)):
        z, x = build_witt_zip(WittZipConfig(p, n))
        trace = refine_to_stationary(twist(z, x))
        shape_e = frozenset(e for e in z.E if e[2] % p == 0)
        shape_g = frozenset(g for g in z.G if g[2] % p == 0)
        assert trace.e_infinity.members == shape_e, (p, n)
        assert trace.g_infinity.members == shape_g, (p, n)


def test_zoo_names_and_determinism():
    a = build_small_zoo()
    b = build_small_zoo()
    assert list(a) == list(b)
    assert set(a) == {
        "trivial-e",
        "tau-surjective",
        "s3-reflection-pair",
        "s3-mixed",
        "s4-cycle-pair",
        "c2cube-projection",
        "gl2f2-borel",
    }
    for name in a:
        assert a[name].E.elements == b[name].E.elements
        assert a[name].tau.table == b[name].tau.table


def test_zoo_entry_lookup():
    assert zoo_entry("trivial-e").E.order == 1
    with pytest.raises(InputError, match="unknown zoo entry"):
        zoo_entry("nope")


def test_zoo_backends_cover_all_three(zoo):
    backends = {z.E.backend for z in zoo.values()} | {z.G.backend for z in zoo.values()}
    assert backends == {"permutation", "matrix", "cayley"}


def test_trivial_e_class_count(zoo):
    z = zoo["trivial-e"]
    assert zip_classes(z).class_count == z.G.order


def test_tau_surjective_one_class(zoo):
    assert zip_classes(zoo["tau-surjective"]).class_count == 1


def test_c2cube_projection_has_proper_image(zoo):
    z = zoo["c2cube-projection"]
    assert z.sigma.image().order == 4
    assert z.tau.image().order == 8
