"""Canonical JSON report documents.

Every report is a single JSON object with a schema_version field; member
lists are sorted by element key and serialization uses sorted keys, so a
given input produces byte-identical output on every run.
"""

from __future__ import annotations

import hashlib
import json

from .equivalence import ClassReport
from .forest import RepForest
from .zipdata import RefinementTrace, ZipDatum

SCHEMA_VERSION = 1


def dumps_canonical(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def members_digest(group, members) -> str:
    text = ",".join(group.format_element(m) for m in sorted(members))
    return hashlib.sha256(text.encode("utf-8")).hexdigest()[:16]


def _datum_descriptor(name: str, z: ZipDatum) -> dict:
    return {
        "name": name,
        "e_backend": z.E.backend,
        "e_order": z.E.order,
        "g_backend": z.G.backend,
        "g_order": z.G.order,
    }


def class_report_document(name: str, report: ClassReport) -> dict:
    z = report.datum
    fmt = z.G.format_element
    classes = []
    for c in report.classes:
        entry = {
            "witness": fmt(c.witness),
            "size": c.size,
            "members": [fmt(m) for m in sorted(c.members)],
        }
        if c.e_infinity is not None:
            entry["e_infinity_order"] = c.e_infinity.order
            entry["e_infinity_digest"] = members_digest(z.E, c.e_infinity.members)
            entry["g_infinity_order"] = c.g_infinity.order
            entry["g_infinity"] = [fmt(m) for m in c.g_infinity.elements]
        classes.append(entry)
    return {
        "schema_version": SCHEMA_VERSION,
        "kind": "class-report",
        "relation": report.relation,
        "datum": _datum_descriptor(name, z),
        "class_count": report.class_count,
        "classes": classes,
    }


def trace_document(name: str, z: ZipDatum, trace: RefinementTrace) -> dict:
    stages = []
    for i, (e_i, g_i) in enumerate(trace.stages):
        stages.append(
            {
                "index": i,
                "e_order": e_i.order,
                "e_digest": members_digest(z.E, e_i.members),
                "g_order": g_i.order,
                "g_digest": members_digest(z.G, g_i.members),
            }
        )
    return {
        "schema_version": SCHEMA_VERSION,
        "kind": "refinement-trace",
        "datum": _datum_descriptor(name, z),
        "stationary_index": trace.stationary_index,
        "stages": stages,
        "e_infinity": {
            "order": trace.e_infinity.order,
            "digest": members_digest(z.E, trace.e_infinity.members),
        },
        "g_infinity": {
            "order": trace.g_infinity.order,
            "digest": members_digest(z.G, trace.g_infinity.members),
        },
    }


def infinity_document(name: str, z: ZipDatum, trace: RefinementTrace) -> dict:
    e_fmt = z.E.format_element
    g_fmt = z.G.format_element
    return {
        "schema_version": SCHEMA_VERSION,
        "kind": "stationary-subgroups",
        "datum": _datum_descriptor(name, z),
        "stationary_index": trace.stationary_index,
        "e_infinity": {
            "order": trace.e_infinity.order,
            "digest": members_digest(z.E, trace.e_infinity.members),
            "members": [e_fmt(m) for m in trace.e_infinity.elements],
        },
        "g_infinity": {
            "order": trace.g_infinity.order,
            "digest": members_digest(z.G, trace.g_infinity.members),
            "members": [g_fmt(m) for m in trace.g_infinity.elements],
        },
    }


def forest_document(name: str, forest: RepForest) -> dict:
    z = forest.datum
    fmt = z.G.format_element

    def path_id(node):
        return "/".join(fmt(el) for el in node.path_elements())

    generations = []
    for gen in forest.generations:
        generations.append(
            [
                {
                    "element": fmt(node.element),
                    "path": path_id(node),
                    "parent": path_id(node.parent) if node.parent is not None else None,
                    "accumulated": fmt(node.accumulated),
                    "stable": node.stable,
                }
                for node in gen
            ]
        )
    return {
        "schema_version": SCHEMA_VERSION,
        "kind": "forest",
        "datum": _datum_descriptor(name, z),
        "stationary_generation": forest.stationary_generation,
        "root_count": len(forest.roots),
        "leaf_count": len(forest.leaves),
        "generations": generations,
        "identity_rep_flags": ["/".join(fmt(el) for el in path) for path in forest.identity_rep_flags],
    }


def verification_document(name: str, z: ZipDatum, results) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "kind": "verification",
        "datum": _datum_descriptor(name, z),
        "all_passed": all(r.passed for r in results),
        "checks": [
            {"name": r.name, "passed": r.passed, "detail": r.detail} for r in results
        ],
    }
