"""JSON serialization and text rendering of theorem reports."""

from __future__ import annotations

import json

from .exactalg import BaseField, IntPolynomial
from .galoiscert import Certificate, GaloisVerdict, Status
from .pryminv import Conclusion, CurveProfile, TheoremReport

SCHEMA_VERSION = 1
GALOIS_ORDER = ("subset", "quotient_Sm", "kernel", "disjointness")

EXIT_PROVEN, EXIT_STRUCTURAL, EXIT_FAILED, EXIT_HEURISTIC = 0, 1, 2, 3


def exit_code(report: TheoremReport) -> int:
    """Depends on conclusion (b1) only."""
    status = report.conclusion("b1").status
    if status is Status.PROVEN:
        return EXIT_PROVEN
    if status is Status.FAILED:
        return EXIT_FAILED
    return EXIT_HEURISTIC


def report_to_dict(report: TheoremReport) -> dict:
    certs = report.galois.certificates + report.group_facts
    witnesses = []
    for c in certs:
        for w in c.witnesses:
            witnesses.append({"certificate": c.name, **w})
    return {
        "schema": SCHEMA_VERSION,
        "input": {
            "poly": str(report.poly),
            "coeffs": list(report.poly.coeffs),
            "degree": report.poly.degree,
            "field": report.field.value,
            "budget": report.budget,
        },
        "profile": report.profile.to_dict(),
        "galois": {
            "m": report.galois.m,
            "conclusion": report.galois.conclusion.value,
            "sampling": report.galois.sampling,
        },
        "commutant": report.commutant,
        "certificates": [c.to_dict() for c in certs],
        "conclusions": [c.to_dict() for c in report.conclusions],
        "witnesses": witnesses,
        "exit_code": exit_code(report),
    }


def report_from_dict(d: dict) -> TheoremReport:
    if d.get("schema") != SCHEMA_VERSION:
        raise ValueError(f"unsupported report schema {d.get('schema')!r}")
    inp = d["input"]
    field = BaseField(inp["field"])
    certs = [Certificate.from_dict(c) for c in d["certificates"]]
    by_name = {c.name: c for c in certs}
    galois = GaloisVerdict(field, d["galois"]["m"], *(by_name[n] for n in GALOIS_ORDER),
                           sampling=d["galois"]["sampling"])
    return TheoremReport(
        poly=IntPolynomial(tuple(inp["coeffs"])),
        field=field,
        budget=inp["budget"],
        profile=CurveProfile.from_dict(d["profile"]),
        galois=galois,
        commutant=d["commutant"],
        group_facts=[c for c in certs if c.name not in GALOIS_ORDER],
        conclusions=[Conclusion.from_dict(c) for c in d["conclusions"]],
    )


def dumps(obj) -> str:
    if isinstance(obj, TheoremReport):
        obj = report_to_dict(obj)
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def loads(text: str) -> TheoremReport:
    return report_from_dict(json.loads(text))


def write_json(obj, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps(obj))


def read_json(path: str) -> TheoremReport:
    with open(path, encoding="utf-8") as fh:
        return loads(fh.read())


_HEADINGS = {
    "A": "(i)(1)(A)",
    "B": "(i)(1)(B)",
    "C": "(i)(1)(C)",
    "eigen": "(i)(2)",
    "a": "(ii)(a)",
    "b1": "(ii)(b1)",
    "b2": "(ii)(b2)",
}


def render_profile(p: CurveProfile) -> str:
    rows = [
        ("n", p.n), ("k", p.k), ("m", p.m),
        ("genus of C", p.genus_C), ("genus of C/delta_2", p.genus_quotient), ("dim P", p.prym_dim),
        ("mult on Omega^1(C) (zeta^-1, zeta)", f"({p.jac_mult[0]}, {p.jac_mult[1]})"),
        ("mult on Omega^1(P) (zeta^-1, zeta)", f"({p.prym_mult[0]}, {p.prym_mult[1]})"),
        ("anti-invariant x^i dx/y", list(p.anti_invariant_basis[0])),
        ("anti-invariant x^j dx/y^2", list(p.anti_invariant_basis[1])),
        ("non-jacobian test", f"{p.nonjacobian_lhs} > {p.nonjacobian_rhs}"),
    ]
    width = max(len(k) for k, _ in rows)
    return "\n".join(f"{k.ljust(width)}  {v}" for k, v in rows)


def render_text(report: TheoremReport) -> str:
    lines = [f"f = {report.poly}", f"base field: {report.field.value}, prime budget {report.budget}", ""]
    lines.append(render_profile(report.profile))
    lines += ["", f"Galois certification (m = {report.galois.m}): {report.galois.conclusion.value}"]
    for c in report.galois.certificates + report.group_facts:
        tag = f" [{c.reason}]" if c.reason else ""
        lines.append(f"  {c.name:<17} {c.status.value:<9}{tag} {c.narrative}")
        for w in c.witnesses:
            if "prime" in w:
                lines.append(f"      witness p = {w['prime']}: {_witness_brief(w)}")
    ramified = report.galois.sampling.get("ramified", [])
    if ramified:
        lines.append(f"  skipped ramified primes: {ramified}")
    lines += ["", "Conclusions:"]
    for c in report.conclusions:
        lines.append(f"  {_HEADINGS.get(c.label, c.label):<10} {c.status.value:<9} {c.statement}")
        if c.detail:
            lines.append(f"  {'':<10} {'':<9} {c.detail}")
    return "\n".join(lines) + "\n"


def _witness_brief(w: dict) -> str:
    parts = []
    for key in ("type", "type_h", "type_g", "role"):
        if key in w:
            parts.append(f"{key} {w[key]}")
    return ", ".join(parts)
