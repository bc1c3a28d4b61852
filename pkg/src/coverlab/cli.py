"""``coverlab`` command line.

Exit codes: 0 property verified / predicate true, 1 refuted / false,
2 inconclusive within bounds, 3 input or internal error, 4 bound exceeded.
"""

from __future__ import annotations

import argparse
import json
import random
import re
import sys
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Sequence

from . import __version__
from .covers import (
    construct_subgroup_cover,
    minimal_subgroup_cover,
    minimal_subsemigroup_cover,
    verify_proper_union,
    CoverProblem,
)
from .descriptors import PREDICATES, is_artinian_additive
from .errors import BoundExceeded, CoverlabError, InputError
from .lattices import (
    FiniteIndexCertificate,
    Inconclusive,
    RefutationWitness,
    neumann_certificate,
    refute_lattice_cover_search,
    verify_lattice_cover_exact,
)
from .schema import (
    REPORT,
    parse_cover_problem,
    parse_descriptor,
    parse_group_or_problem,
    parse_lattice_cover,
    parse_refuter_request,
    validate,
)
from .witnesses.refuter import UncoveredWitness, refute_coset_cover, verify_certificate
from .witnesses.units import semigroup_membership, unit_exponents
from .witnesses.zx import PARTS, proper_union_witnesses, random_polynomial, zx_closure_check, zx_membership

SCHEMA_ID = "coverlab.report/1"
DEFAULT_SEED = 0
EXIT = {"verified": 0, "refuted": 1, "inconclusive": 2}
EXIT_INPUT, EXIT_BOUND = 3, 4


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def __init__(self, *args, **kwargs):
        super().__init__(*args, **kwargs)
        # let negative fractions such as -2/3 through as positionals
        self._negative_number_matcher = re.compile(r"^-\d+(/\d+)?$|^-\d*\.\d+$")

    def error(self, message: str):  # argparse would exit 2, which means "inconclusive" here
        raise UsageError(message)


@dataclass
class RunReport:
    command: str
    label: str
    outcome: str
    result: dict[str, Any]
    seed: int | None = None
    elapsed_ms: int | None = None
    tool_version: str = __version__

    @property
    def exit_code(self) -> int:
        return EXIT[self.outcome]

    def to_json(self) -> dict[str, Any]:
        doc = {
            "schema": SCHEMA_ID,
            "tool_version": self.tool_version,
            "command": self.command,
            "label": self.label,
            "outcome": self.outcome,
            "result": self.result,
        }
        if self.seed is not None:
            doc["seed"] = self.seed
        if self.elapsed_ms is not None:
            doc["elapsed_ms"] = self.elapsed_ms
        return doc


def _text_lines(result: Any, indent: str = "  ") -> list[str]:
    lines = []
    for key in sorted(result):
        val = result[key]
        if isinstance(val, dict) and val:
            lines.append(f"{indent}{key}:")
            lines += _text_lines(val, indent + "  ")
        else:
            lines.append(f"{indent}{key}: {json.dumps(val, sort_keys=True)}")
    return lines


def emit_report(report: RunReport, fmt: str = "json") -> bytes:
    doc = report.to_json()
    if fmt == "json":
        return (json.dumps(doc, sort_keys=True, indent=2, ensure_ascii=False) + "\n").encode()
    head = f"{report.label}: {report.outcome}"
    verdict = report.result.get("verdict")
    if isinstance(verdict, dict):
        head += f" ({verdict['value']}; clause {verdict['clause']}: {verdict['reason']})"
    lines = [head] + _text_lines(report.result)
    if report.seed is not None:
        lines.append(f"  seed: {report.seed}")
    return ("\n".join(lines) + "\n").encode()


def _load(path: str) -> Any:
    try:
        with open(path, encoding="utf-8") if path != "-" else sys.stdin as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise InputError(f"malformed JSON in {path}: {exc}") from None
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from None


def cmd_descriptor_check(args) -> RunReport:
    d = parse_descriptor(_load(args.file))
    if args.predicate == "artinian":
        v = is_artinian_additive(d, args.m_bound)
    else:
        v = PREDICATES[args.predicate](d)
    return RunReport("descriptor-check", v.label, "verified" if v.value else "refuted",
                     {"descriptor": str(d), "predicate": args.predicate, "verdict": v.to_json()})


def cmd_group_cover(args) -> RunReport:
    doc = _load(args.file)
    if args.action == "verify":
        problem = parse_cover_problem(doc)
        report = verify_proper_union(problem)
        return RunReport("group-cover verify", "Proper union (finite abelian group)",
                         "verified" if report.proper else "refuted",
                         {"group": problem.group.to_json(), "mode": problem.mode, **report.to_json()})

    g, mode = parse_group_or_problem(doc)
    if args.action == "minimal":
        if mode == "cosets":
            raise InputError("minimal search supports modes 'subgroups' and 'subsemigroups'")
        found = minimal_subsemigroup_cover(g) if mode == "subsemigroups" else minimal_subgroup_cover(g)
        k, parts = found if found else (None, [])
        label = ("Theorem 4 (finite cyclic unit group)" if mode == "subsemigroups"
                 else "Theorem 1 (finite specialisation)")
    else:
        parts = construct_subgroup_cover(g) or []
        k = len(parts) or None
        label = "Theorem 1 (repeated p-summand construction)"
    result: dict[str, Any] = {"group": g.to_json(), "mode": mode, "cover_exists": bool(parts),
                              "k": k, "parts": [h.to_json() for h in parts]}
    if parts:
        result["report"] = verify_proper_union(CoverProblem(g, tuple(parts))).to_json()
    return RunReport(f"group-cover {args.action}", label, "verified" if parts else "refuted", result)


def cmd_lattice_verify(args) -> RunReport:
    n, cosets = parse_lattice_cover(_load(args.file))
    label = "Theorem 4 (lattice cover)"
    if all(c.lattice.index is not None for c in cosets):
        report = verify_lattice_cover_exact(cosets, n)
        if report.covered:
            report.certificate = neumann_certificate(cosets, args.box, n)
        return RunReport("lattice-verify", label, "verified" if report.proper else "refuted",
                         {"method": "residues", **report.to_json()})

    label = "Lemma 1 (finite index)"
    cert = neumann_certificate(cosets, args.box, n)
    if isinstance(cert, FiniteIndexCertificate):
        w = refute_lattice_cover_search(cosets, args.box, n)
        cert = RefutationWitness(w) if w is not None else Inconclusive(
            f"mixed-index family covers the radius-{args.box} box")
    result = {"method": "box-search", "covered": False if isinstance(cert, RefutationWitness) else None,
              "proper": False, "witnesses": {},
              "uncovered_witness": list(cert.vector) if isinstance(cert, RefutationWitness) else None,
              "certificate": cert.to_json()}
    return RunReport("lattice-verify", label,
                     "refuted" if isinstance(cert, RefutationWitness) else "inconclusive", result)


def cmd_zx_verify(args) -> RunReport:
    rng = random.Random(args.seed)
    empty = []
    for _ in range(args.samples):
        f = random_polynomial(rng)
        if not zx_membership(f):
            empty.append(list(f.coeffs))
    closure = {part: zx_closure_check(part, args.samples, args.seed + i + 1).to_json()
               for i, part in enumerate(PARTS)}
    witnesses = {part: sorted(m) for part, m in proper_union_witnesses().items()}
    ok = (not empty and all(c["violations"] == 0 for c in closure.values())
          and all(m == [part] for part, m in witnesses.items()))
    result = {"samples": args.samples, "uncovered": empty[:5], "uncovered_count": len(empty),
              "closure": closure, "witnesses": witnesses}
    return RunReport("zx-verify", "Remark (Z[x] subring cover)", "verified" if ok else "refuted",
                     result, seed=args.seed)


def cmd_units_classify(args) -> RunReport:
    rows = []
    for text in args.values:
        try:
            q = Fraction(text)
        except (ValueError, ZeroDivisionError):
            raise InputError(f"not a rational number: {text!r}") from None
        v = unit_exponents(q)
        rows.append({"q": str(q), "exponents": [v.e1, v.e2], "parts": sorted(semigroup_membership(q))})
    ok = all(r["parts"] for r in rows)
    return RunReport("units-classify", "Theorem 4 (unit subsemigroups)",
                     "verified" if ok else "refuted", {"units": rows})


def cmd_field_refute(args) -> RunReport:
    p, h, shifts, mode, bound = parse_refuter_request(_load(args.file))
    cert = refute_coset_cover(p, h, shifts, mode, bound)
    label = "Theorem 3 (coset refutation)"
    if isinstance(cert, Inconclusive):
        return RunReport("field-refute", label, "inconclusive", {"certificate": cert.to_json()})
    if not verify_certificate(cert, h, shifts, mode):
        raise CoverlabError("certificate failed re-verification")
    result = {"p": p, "k": h.k, "mode": mode, "shifts": [s.to_json() for s in shifts],
              "certificate": cert.to_json(), "reverified": True}
    if isinstance(cert, UncoveredWitness):
        result["element"] = str(cert.element)
    return RunReport("field-refute", label, "verified", result)


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=["json", "text"], default="json")
    common.add_argument("--timing", action="store_true", help="add elapsed_ms (breaks byte-identical output)")

    ap = _Parser(prog="coverlab", description="Decide, construct and refute proper-union covers.")
    ap.add_argument("--version", action="version", version=f"coverlab {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("descriptor-check", parents=[common], help="evaluate a cover criterion on a descriptor")
    p.add_argument("--predicate", required=True, choices=sorted(PREDICATES))
    p.add_argument("--m-bound", type=int, default=None)
    p.add_argument("file")
    p.set_defaults(func=cmd_descriptor_check)

    p = sub.add_parser("group-cover", parents=[common], help="covers of a finite abelian group")
    p.add_argument("action", choices=["verify", "minimal", "construct"])
    p.add_argument("file")
    p.set_defaults(func=cmd_group_cover)

    p = sub.add_parser("lattice-verify", parents=[common], help="check a cover of Z^n by lattice cosets")
    p.add_argument("file")
    p.add_argument("--box", type=int, default=4, help="search radius for infinite-index families")
    p.set_defaults(func=cmd_lattice_verify)

    p = sub.add_parser("zx-verify", parents=[common], help="randomised checks of the Z[x] parity cover")
    p.add_argument("--samples", type=int, default=10_000)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.set_defaults(func=cmd_zx_verify)

    p = sub.add_parser("units-classify", parents=[common], help="place rationals in M1/M2/M3")
    p.add_argument("values", nargs="+", metavar="Q")
    p.set_defaults(func=cmd_units_classify)

    p = sub.add_parser("field-refute", parents=[common], help="refute a coset cover of F_p(t)")
    p.add_argument("file")
    p.set_defaults(func=cmd_field_refute)
    return ap


def run(argv: Sequence[str] | None = None, out=None, err=None) -> int:
    out = out if out is not None else sys.stdout.buffer
    err = err if err is not None else sys.stderr
    try:
        args = build_parser().parse_args(argv)
    except UsageError as exc:
        print(f"coverlab: usage error: {exc}", file=err)
        return EXIT_INPUT
    start = time.perf_counter()
    try:
        if getattr(args, "samples", 1) < 1:
            raise InputError("--samples must be >= 1")
        report = args.func(args)
    except BoundExceeded as exc:
        print(f"coverlab: bound exceeded: {exc}", file=err)
        return EXIT_BOUND
    except (CoverlabError, ValueError, ArithmeticError) as exc:
        print(f"coverlab: error: {exc}", file=err)
        return EXIT_INPUT
    if args.timing:
        report.elapsed_ms = int((time.perf_counter() - start) * 1000)
    validate(report.to_json(), REPORT)
    out.write(emit_report(report, args.format))
    out.flush()
    return report.exit_code


def main() -> None:
    sys.exit(run())
