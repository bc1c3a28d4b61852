"""JSON input schemas and their conversion into engine objects."""

from __future__ import annotations

from typing import Any

import jsonschema

from .covers import CoverProblem
from .descriptors import CardinalTag, GroupDescriptor, TorsionSummand, UNBOUNDED
from .errors import InputError
from .groups import Coset, FiniteAbelianGroup, Subgroup
from .lattices import LatticeCoset
from .witnesses.fpoly import RationalFunction
from .witnesses.refuter import SubfieldSpec

INT_VECTOR = {"type": "array", "items": {"type": "integer"}}
CARDINAL = {"oneOf": [
    {"type": "integer", "minimum": 0},
    {"type": "string", "pattern": r"^(finite:\d+|countable|aleph0|symbolic:\S+)$"},
]}

GROUP = {
    "type": "object",
    "required": ["invariant_factors"],
    "properties": {"invariant_factors": {"type": "array", "items": {"type": "integer", "minimum": 2}}},
}
SUBGROUP = {
    "type": "object",
    "required": ["generators"],
    "properties": {"generators": {"type": "array", "items": INT_VECTOR}},
}
COSET = {
    "type": "object",
    "required": ["subgroup", "rep"],
    "properties": {"subgroup": SUBGROUP, "rep": INT_VECTOR},
}
COVER_PROBLEM = {
    "type": "object",
    "required": ["group", "parts"],
    "properties": {
        "group": GROUP,
        "mode": {"enum": ["subgroups", "cosets", "subsemigroups"]},
        "parts": {"type": "array", "items": {"oneOf": [SUBGROUP, COSET]}},
    },
}
GROUP_OR_PROBLEM = {"oneOf": [GROUP, COVER_PROBLEM, {
    "type": "object", "required": ["group"],
    "properties": {"group": GROUP, "mode": {"enum": ["subgroups", "cosets", "subsemigroups"]}},
    "not": {"required": ["parts"]},
}]}
LATTICE_COVER = {
    "type": "object",
    "required": ["ambient", "cosets"],
    "properties": {
        "ambient": {"type": "integer", "minimum": 1},
        "cosets": {"type": "array", "items": {
            "type": "object",
            "required": ["basis"],
            "properties": {"basis": {"type": "array", "items": INT_VECTOR}, "shift": INT_VECTOR},
        }},
    },
}
DESCRIPTOR = {
    "type": "object",
    "properties": {
        "rational_rank": CARDINAL,
        "prufer": {"type": "array", "items": {"type": "integer", "minimum": 2}},
        "bounded_torsion": {"type": "array", "items": {
            "type": "object",
            "required": ["q", "k"],
            "properties": {
                "q": {"type": "integer", "minimum": 2},
                "k": {"oneOf": [{"type": "integer", "minimum": 1}, {"const": UNBOUNDED}]},
                "mult": CARDINAL,
            },
        }},
    },
    "additionalProperties": False,
}
POLYNOMIAL = {"type": "object", "required": ["coeffs"], "properties": {"coeffs": INT_VECTOR}}
RATIONAL_FUNCTION = {
    "type": "object",
    "required": ["num"],
    "properties": {"p": {"type": "integer"}, "num": INT_VECTOR, "den": INT_VECTOR},
}
REFUTER_REQUEST = {
    "type": "object",
    "required": ["p", "k", "mode", "shifts"],
    "properties": {
        "p": {"type": "integer", "minimum": 2},
        "k": {"type": "integer", "minimum": 2},
        "mode": {"enum": ["additive", "multiplicative"]},
        "shifts": {"type": "array", "items": RATIONAL_FUNCTION},
        "degree_bound": {"type": "integer", "minimum": 1},
    },
}

REPORT = {
    "type": "object",
    "required": ["schema", "tool_version", "command", "label", "outcome", "result"],
    "properties": {
        "schema": {"const": "coverlab.report/1"},
        "tool_version": {"type": "string"},
        "command": {"type": "string"},
        "label": {"type": "string"},
        "outcome": {"enum": ["verified", "refuted", "inconclusive"]},
        "result": {"type": "object"},
        "seed": {"type": "integer"},
        "elapsed_ms": {"type": "integer"},
    },
    "additionalProperties": False,
}


def validate(doc: Any, schema: dict) -> None:
    try:
        jsonschema.validate(doc, schema)
    except jsonschema.ValidationError as exc:
        path = "/".join(str(p) for p in exc.absolute_path) or "<root>"
        raise InputError(f"schema violation at {path}: {exc.message}") from None


def parse_group(doc: dict) -> FiniteAbelianGroup:
    validate(doc, GROUP)
    return FiniteAbelianGroup(tuple(doc["invariant_factors"]))


def parse_subgroup(g: FiniteAbelianGroup, doc: dict) -> Subgroup:
    return Subgroup.generated(g, doc["generators"])


def parse_part(g: FiniteAbelianGroup, doc: dict) -> Subgroup | Coset:
    if "rep" in doc:
        return Coset(parse_subgroup(g, doc["subgroup"]), g.element(doc["rep"]))
    return parse_subgroup(g, doc)


def parse_cover_problem(doc: dict) -> CoverProblem:
    validate(doc, COVER_PROBLEM)
    g = parse_group(doc["group"])
    return CoverProblem(g, tuple(parse_part(g, p) for p in doc["parts"]), doc.get("mode", "subgroups"))


def parse_group_or_problem(doc: dict) -> tuple[FiniteAbelianGroup, str]:
    validate(doc, GROUP_OR_PROBLEM)
    if "group" in doc:
        return parse_group(doc["group"]), doc.get("mode", "subgroups")
    return parse_group(doc), "subgroups"


def parse_lattice_cover(doc: dict) -> tuple[int, list[LatticeCoset]]:
    validate(doc, LATTICE_COVER)
    n = doc["ambient"]
    out = []
    for c in doc["cosets"]:
        if any(len(v) != n for v in c["basis"]) or len(c.get("shift", [0] * n)) != n:
            raise InputError(f"coset {c} does not live in Z^{n}")
        out.append(LatticeCoset.of(c["basis"], c.get("shift"), ambient=n))
    return n, out


def parse_descriptor(doc: dict) -> GroupDescriptor:
    validate(doc, DESCRIPTOR)
    torsion = tuple(
        TorsionSummand(t["q"], t["k"], CardinalTag.parse(t.get("mult", "finite:1")))
        for t in doc.get("bounded_torsion", [])
    )
    return GroupDescriptor(
        CardinalTag.parse(doc.get("rational_rank", "finite:0")),
        tuple(doc.get("prufer", [])),
        torsion,
    )


def parse_rational_function(doc: dict, p: int) -> RationalFunction:
    validate(doc, RATIONAL_FUNCTION)
    if doc.get("p", p) != p:
        raise InputError(f"shift in characteristic {doc['p']} inside F_{p}(t)")
    return RationalFunction(p, tuple(doc["num"]), tuple(doc.get("den", [1])))


def parse_refuter_request(doc: dict) -> tuple[int, SubfieldSpec, list[RationalFunction], str, int]:
    validate(doc, REFUTER_REQUEST)
    p = doc["p"]
    h = SubfieldSpec(p, doc["k"])
    shifts = [parse_rational_function(s, p) for s in doc["shifts"]]
    return p, h, shifts, doc["mode"], doc.get("degree_bound", 6)
