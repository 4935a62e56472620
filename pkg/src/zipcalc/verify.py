"""The cross-check battery behind the CLI verify and zoo commands."""

from __future__ import annotations

import random
from dataclasses import dataclass

from .equivalence import (
    coarsening_check,
    fine_orbits,
    groupoid_equivalence_check,
    refinement_bijection_check,
    torsor_check,
    zip_classes,
)
from .forest import build_forest, limit_bijection_check
from .groups import double_cosets
from .zipdata import (
    ZipDatum,
    e_infinity_characterization_check,
    refine,
    refine_to_stationary,
    twist_refine_identity_check,
)


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str = ""


def run_verification(z: ZipDatum, *, seed: int = 0, samples: int = 2) -> list:
    """Run every structural cross-check on one datum.

    Sampled checks draw deterministically from the sorted carriers, so the
    battery gives identical results on identical inputs.
    """
    rng = random.Random(seed)
    results = []

    trace = refine_to_stationary(z)
    refined_trace = refine_to_stationary(refine(z))
    results.append(
        CheckResult(
            "refinement-invariance",
            trace.e_infinity.members == refined_trace.e_infinity.members
            and trace.g_infinity.members == refined_trace.g_infinity.members,
            f"|E_inf|={trace.e_infinity.order} |G_inf|={trace.g_infinity.order}",
        )
    )
    results.append(
        CheckResult(
            "e-infinity-characterization",
            e_infinity_characterization_check(z, trace),
        )
    )

    carrier = z.G.elements
    tau_image = z.tau.image().elements
    ok = True
    for _ in range(samples):
        x = carrier[rng.randrange(len(carrier))]
        y = tau_image[rng.randrange(len(tau_image))]
        ok = ok and twist_refine_identity_check(z, x, y)
    results.append(CheckResult("twist-refine-commutation", ok, f"samples={samples}"))

    ok = True
    for _ in range(samples):
        x = carrier[rng.randrange(len(carrier))]
        e = z.E.elements[rng.randrange(z.E.order)]
        et = z.E.elements[rng.randrange(z.E.order)]
        y = z.G.mul(z.G.mul(z.tau(e), x), z.sigma(et))
        ok = ok and twist_refine_identity_check(z, x, y, witnesses=(e, et))
    results.append(CheckResult("twisted-subgroup-conjugation", ok, f"samples={samples}"))

    coarse = zip_classes(z)
    fine = fine_orbits(z)
    results.append(
        CheckResult(
            "coarsening",
            coarsening_check(fine, coarse),
            f"fine={fine.class_count} coarse={coarse.class_count}",
        )
    )

    decomposition = double_cosets(z.G, z.tau.image(), z.sigma.image())
    roots = decomposition.representatives()
    results.append(
        CheckResult(
            "refinement-bijection",
            all(refinement_bijection_check(z, r, coarse=coarse) for r in roots),
            f"roots={len(roots)}",
        )
    )
    results.append(
        CheckResult(
            "torsor",
            all(torsor_check(z, r) for r in roots),
            f"roots={len(roots)}",
        )
    )

    ok = True
    for r in roots:
        e = z.E.elements[rng.randrange(z.E.order)]
        et = z.E.elements[rng.randrange(z.E.order)]
        y = z.G.mul(z.G.mul(z.tau(e), r), z.sigma(et))
        ok = ok and groupoid_equivalence_check(z, r, y, e, et)
    results.append(CheckResult("groupoid-equivalence", ok, f"roots={len(roots)}"))

    forest = build_forest(z)
    results.append(
        CheckResult(
            "forest-limit",
            limit_bijection_check(forest, coarse),
            f"leaves={len(forest.leaves)} classes={coarse.class_count}",
        )
    )
    return results
