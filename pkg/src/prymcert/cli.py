"""Command-line interface: verify, profile, group, search."""

from __future__ import annotations

import argparse
import re
import sys
from dataclasses import dataclass

from . import report as rep
from .errors import Overscale, PrymCertError
from .exactalg import BaseField, parse_poly
from .galoiscert import DEFAULT_BUDGET, Status
from .modf3 import stabilizer_orbit_count
from .permgrp import derived_subgroup, is_perfect, symmetric_group
from .pryminv import assemble_theorem_report, curve_profile
from .signedgrp import even_weight_dimension, sign_module_submodules, weyl_group_D

GROUP_M_CAP = 23
_IDENT = re.compile(r"[A-Za-z_][A-Za-z_0-9]*")


@dataclass
class RunConfig:
    command: str
    poly_text: str = ""
    field: BaseField = BaseField.Q_SQRT_MINUS_3
    prime_budget: int = DEFAULT_BUDGET
    json_path: str | None = None
    n: int | None = None
    m: int | None = None
    search_family: str = ""
    search_range: tuple[int, int] | None = None


def _err(msg: str) -> None:
    print(f"prymcert: {msg}", file=sys.stderr)


def run_verify(cfg: RunConfig) -> int:
    try:
        f = parse_poly(cfg.poly_text)
        report = assemble_theorem_report(f, cfg.field, cfg.prime_budget)
    except (PrymCertError, ValueError) as exc:
        _err(f"{type(exc).__name__}: {exc}")
        return rep.EXIT_STRUCTURAL
    sys.stdout.write(rep.render_text(report))
    if cfg.json_path:
        rep.write_json(report, cfg.json_path)
    return rep.exit_code(report)


def run_profile(cfg: RunConfig) -> int:
    try:
        profile = curve_profile(cfg.n)
    except PrymCertError as exc:
        _err(f"{type(exc).__name__}: {exc}")
        return rep.EXIT_STRUCTURAL
    print(rep.render_profile(profile))
    if cfg.json_path:
        rep.write_json(profile.to_dict(), cfg.json_path)
    return 0


def group_facts(m: int) -> dict:
    W = weyl_group_D(m)
    order = W.order()
    D = derived_subgroup(W)
    return {
        "m": m,
        "order": order,
        "derived_index": order // D.order(),
        "derived_perfect": is_perfect(D),
        "stabilizer_orbits": stabilizer_orbit_count(W),
        "sign_module_dims": sign_module_submodules(m, symmetric_group(m).generators),
        "sign_module_dim": even_weight_dimension(m),
        "in_scope": m % 6 == 5,
    }


def run_group(cfg: RunConfig) -> int:
    m = cfg.m
    if m is None or m < 3 or m > GROUP_M_CAP:
        _err(f"m must satisfy 3 <= m <= {GROUP_M_CAP}")
        return rep.EXIT_STRUCTURAL
    try:
        facts = group_facts(m)
    except Overscale as exc:
        _err(f"Overscale: {exc}")
        return rep.EXIT_STRUCTURAL
    if not facts["in_scope"]:
        print(f"note: m = {m} is not 5 mod 6, outside the scope of the theorem")
    print(f"|W(D_{m})| = {facts['order']}")
    print(f"derived subgroup index {facts['derived_index']}, "
          f"{'perfect' if facts['derived_perfect'] else 'not perfect'}")
    print(f"point stabilizer orbits on 2m points: {facts['stabilizer_orbits']}")
    print(f"S_{m}-submodule dimensions of E (dim {facts['sign_module_dim']}): {facts['sign_module_dims']}")
    if cfg.json_path:
        rep.write_json(facts, cfg.json_path)
    return 0


def family_hole(template: str) -> str:
    holes = sorted({t for t in _IDENT.findall(template) if t != "x"})
    if len(holes) != 1:
        raise ValueError(f"family template needs exactly one integer hole, found {holes or 'none'}")
    return holes[0]


def instantiate(template: str, hole: str, value: int) -> str:
    return re.sub(rf"\b{re.escape(hole)}\b", f"({value})", template)


def run_search(cfg: RunConfig) -> int:
    lo, hi = cfg.search_range or (1, 0)
    if hi < lo:
        _err("empty search range")
        return rep.EXIT_STRUCTURAL
    try:
        hole = family_hole(cfg.search_family)
    except ValueError as exc:
        _err(str(exc))
        return rep.EXIT_STRUCTURAL
    results = []
    for a in range(lo, hi + 1):
        text = instantiate(cfg.search_family, hole, a)
        try:
            f = parse_poly(text)
        except PrymCertError as exc:
            _err(f"{hole}={a}: {type(exc).__name__}: {exc}")
            return rep.EXIT_STRUCTURAL
        if f.degree % 12 != 11:
            _err(f"{hole}={a}: degree {f.degree} is not 11 mod 12")
            return rep.EXIT_STRUCTURAL
        entry = {"value": a, "poly": str(f)}
        try:
            report = assemble_theorem_report(f, cfg.field, cfg.prime_budget)
        except PrymCertError as exc:
            entry.update(status="STRUCTURAL", reason=f"{type(exc).__name__}: {exc}")
        else:
            b1 = report.conclusion("b1").status
            entry.update(status=b1.value, witnesses=rep.report_to_dict(report)["witnesses"])
        results.append(entry)
        print(f"{hole} = {a}: {entry['status']}  f = {entry['poly']}")
        if entry["status"] == Status.PROVEN.value:
            for w in entry["witnesses"]:
                print(f"    {w['certificate']} witness p = {w['prime']}")
    if cfg.json_path:
        rep.write_json({"family": cfg.search_family, "hole": hole, "range": [lo, hi], "results": results},
                       cfg.json_path)
    hits = [r for r in results if r["status"] == Status.PROVEN.value]
    print(f"{len(hits)} of {len(results)} certified")
    return 0 if hits else rep.EXIT_FAILED


def _range(text: str) -> tuple[int, int]:
    m = re.fullmatch(r"\s*(-?\d+)\s*\.\.\s*(-?\d+)\s*", text)
    if not m:
        raise argparse.ArgumentTypeError(f"expected a..b, got {text!r}")
    return int(m.group(1)), int(m.group(2))


def _budget(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("budget must be at least 1")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="prymcert",
                                     description="Certify Gal(f) = W(D_m) and the Prym variety conclusions "
                                                 "for y^3 = f(x).")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, poly=True):
        if poly:
            p.add_argument("--field", type=BaseField, default=BaseField.Q_SQRT_MINUS_3,
                           choices=list(BaseField), metavar="{q,q-sqrt-minus-3}")
            p.add_argument("--budget", type=_budget, default=DEFAULT_BUDGET, help="number of unramified primes")
        p.add_argument("--json", dest="json_path", metavar="PATH", help="write a JSON report")

    p = sub.add_parser("verify", help="run the full certification chain")
    p.add_argument("--poly", required=True, help='e.g. "x*(x^10-x^2-1)" or "[0,-1,0,-1,...]"')
    common(p)
    p = sub.add_parser("profile", help="curve and Prym invariants for degree n")
    p.add_argument("--n", type=int, required=True)
    common(p, poly=False)
    p = sub.add_parser("group", help="facts about W(D_m)")
    p.add_argument("--m", type=int, required=True)
    common(p, poly=False)
    p = sub.add_parser("search", help="verify a one-parameter family")
    p.add_argument("--family", required=True, help='template with one integer hole, e.g. "x*(x^10-x^2-a)"')
    p.add_argument("--range", dest="search_range", type=_range, required=True, metavar="A..B")
    common(p)
    return parser


def config_from_args(ns: argparse.Namespace) -> RunConfig:
    return RunConfig(
        command=ns.command,
        poly_text=getattr(ns, "poly", ""),
        field=getattr(ns, "field", BaseField.Q_SQRT_MINUS_3),
        prime_budget=getattr(ns, "budget", DEFAULT_BUDGET),
        json_path=ns.json_path,
        n=getattr(ns, "n", None),
        m=getattr(ns, "m", None),
        search_family=getattr(ns, "family", ""),
        search_range=getattr(ns, "search_range", None),
    )


RUNNERS = {"verify": run_verify, "profile": run_profile, "group": run_group, "search": run_search}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        return rep.EXIT_STRUCTURAL if exc.code else 0
    cfg = config_from_args(ns)
    return RUNNERS[cfg.command](cfg)


if __name__ == "__main__":
    sys.exit(main())
