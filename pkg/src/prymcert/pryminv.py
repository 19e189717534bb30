"""Numerical invariants of the trigonal curve y^3 = f(x) and its Prym variety.

For n = deg f = 12k + 11 (so m = 6k + 5 and n = 2m + 1) everything here is a
closed form in k, computed from explicit differential bases rather than
copied formulas so the identities can be tested:

* Omega^1(C) has basis x^i dx/y (0 <= i <= floor(n/3) - 1) and x^j dx/y^2
  (0 <= j <= floor(2n/3) - 1); delta_3 acts by zeta^-1 resp. zeta.
* The involution (x, y) -> (-x, -y) multiplies x^i dx/y by (-1)^i and
  x^j dx/y^2 by (-1)^(j+1); the anti-invariant part is the cotangent space of
  the Prym variety.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass, field
from math import gcd

from .errors import BadCongruence, Overscale, PreconditionViolated
from .exactalg import BaseField, IntPolynomial
from .galoiscert import (
    DEFAULT_BUDGET,
    Certificate,
    GaloisVerdict,
    Status,
    assemble_galois_verdict,
    split_f,
)
from .modf3 import (
    commutant_dimension,
    permutation_module_f3,
    split_odd_even,
    stabilizer_orbit_count,
)
from .permgrp import (
    DEFAULT_ENUMERATION_CAP,
    derived_subgroup,
    is_doubly_transitive,
    is_perfect,
    no_proper_normal_of_index_dividing,
    normal_subgroups,
    symmetric_group,
)
from .signedgrp import weyl_group_D


@dataclass
class CurveProfile:
    n: int
    k: int
    m: int
    genus_C: int
    genus_quotient: int
    prym_dim: int
    jac_mult: tuple[int, int]
    prym_mult: tuple[int, int]
    anti_invariant_basis: tuple[tuple[int, ...], tuple[int, ...]]
    nonjacobian_lhs: int
    nonjacobian_rhs: int

    def to_dict(self) -> dict:
        d = asdict(self)
        d["jac_mult"] = list(self.jac_mult)
        d["prym_mult"] = list(self.prym_mult)
        d["anti_invariant_basis"] = {"dx_over_y": list(self.anti_invariant_basis[0]),
                                     "dx_over_y2": list(self.anti_invariant_basis[1])}
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "CurveProfile":
        basis = d["anti_invariant_basis"]
        return cls(
            n=d["n"], k=d["k"], m=d["m"], genus_C=d["genus_C"], genus_quotient=d["genus_quotient"],
            prym_dim=d["prym_dim"], jac_mult=tuple(d["jac_mult"]), prym_mult=tuple(d["prym_mult"]),
            anti_invariant_basis=(tuple(basis["dx_over_y"]), tuple(basis["dx_over_y2"])),
            nonjacobian_lhs=d["nonjacobian_lhs"], nonjacobian_rhs=d["nonjacobian_rhs"],
        )


def curve_profile(n: int) -> CurveProfile:
    if n < 11 or n % 12 != 11:
        raise BadCongruence(f"n = {n} is not of the form 12k + 11")
    k = (n - 11) // 12
    m = 6 * k + 5
    genus = n - 1  # 3 does not divide n
    # differentials of the first kind
    dx_y = range(n // 3)  # eigenvalue zeta^-1
    dx_y2 = range(2 * n // 3)  # eigenvalue zeta
    anti_y = tuple(i for i in dx_y if i % 2 == 1)
    anti_y2 = tuple(j for j in dx_y2 if (j + 1) % 2 == 1)
    assert len(dx_y) + len(dx_y2) == genus
    # double cover C -> C/delta_2 branched at the two fixed points (over 0 and infinity)
    genus_quotient = (2 * genus - 2 - 2) // 4 + 1
    prym_dim = genus - genus_quotient
    a, b = len(anti_y), len(anti_y2)
    return CurveProfile(
        n=n, k=k, m=m, genus_C=genus, genus_quotient=genus_quotient, prym_dim=prym_dim,
        jac_mult=(len(dx_y), len(dx_y2)), prym_mult=(a, b),
        anti_invariant_basis=(anti_y, anti_y2),
        nonjacobian_lhs=3 * abs(a - b), nonjacobian_rhs=prym_dim + 2,
    )


def nonjacobian_check(profile: CurveProfile) -> bool:
    """3 |a - b| > dim + 2 for the eigenvalue multiplicities (a, b) on the Prym."""
    return profile.nonjacobian_lhs > profile.nonjacobian_rhs


def rank_consistency(profile: CurveProfile, odd_dim: int | None = None) -> bool:
    """lambda-torsion rank 2 dim P / [Q(zeta_3):Q] must equal m = dim V_f^-."""
    rank = 2 * profile.prym_dim // 2
    ok = (rank == profile.m and profile.prym_dim == sum(profile.prym_mult)
          and profile.prym_dim == profile.genus_C - profile.genus_quotient)
    if odd_dim is not None:
        ok = ok and rank == odd_dim
    return ok


@dataclass
class Conclusion:
    label: str
    statement: str
    status: Status
    detail: str = ""

    def to_dict(self) -> dict:
        return {"label": self.label, "statement": self.statement, "status": self.status.value, "detail": self.detail}

    @classmethod
    def from_dict(cls, d: dict) -> "Conclusion":
        return cls(d["label"], d["statement"], Status(d["status"]), d.get("detail", ""))


@dataclass
class TheoremReport:
    poly: IntPolynomial
    field: BaseField
    budget: int
    profile: CurveProfile
    galois: GaloisVerdict
    commutant: int
    group_facts: list[Certificate] = field(default_factory=list)
    conclusions: list[Conclusion] = field(default_factory=list)

    def conclusion(self, label: str) -> Conclusion:
        for c in self.conclusions:
            if c.label == label:
                return c
        raise KeyError(label)


def certify_group_hypotheses(m: int, cap: int = DEFAULT_ENUMERATION_CAP) -> Certificate:
    """S_m is doubly transitive and has no proper normal subgroup of index dividing m.

    The normal-subgroup condition is PROVEN only by full class enumeration;
    above the cap it is HEURISTIC, backed by A_m = [S_m, S_m] being perfect.
    """
    S = symmetric_group(m)
    dt = is_doubly_transitive(S)
    data: dict = {"m": m, "doubly_transitive": dt, "order": S.order()}
    if not dt:
        return Certificate("group_hypotheses", Status.FAILED, data=data,
                           narrative=f"S_{m} is not doubly transitive", criterion="direct computation")
    try:
        orders = [N.order() for N in normal_subgroups(S, cap=cap)]
    except Overscale as exc:
        A = derived_subgroup(S)
        data.update({"derived_index": S.order() // A.order(), "derived_perfect": is_perfect(A),
                     "enumeration": str(exc)})
        return Certificate("group_hypotheses", Status.HEURISTIC, data=data,
                           narrative=(f"S_{m} doubly transitive; class enumeration beyond cap, "
                                      f"[S_{m}, S_{m}] has index {data['derived_index']} and is "
                                      f"{'perfect' if data['derived_perfect'] else 'not perfect'}"),
                           criterion="derived series evidence", reason="Overscale")
    ok = no_proper_normal_of_index_dividing(S, m, cap=cap)
    data["normal_subgroup_orders"] = orders
    data["no_proper_normal_of_odd_index"] = all((S.order() // o) % 2 == 0 for o in orders if o < S.order())
    return Certificate("group_hypotheses", Status.PROVEN if ok else Status.FAILED, data=data,
                       narrative=(f"S_{m} doubly transitive; normal subgroup orders {orders}; "
                                  f"{'no' if ok else 'some'} proper normal subgroup has index dividing {m}"),
                       criterion="conjugacy class enumeration")


def certify_centralizer(m: int) -> tuple[Certificate, int]:
    """End of the odd part of F_3^{2m} under W(D_m), with the orbit-count cross-check."""
    W = weyl_group_D(m)
    M = permutation_module_f3(W)
    dec = split_odd_even(M, m)
    full = commutant_dimension(M)
    orbit_count = stabilizer_orbit_count(W)
    odd = commutant_dimension(dec.parts["odd"])
    const = commutant_dimension(dec.parts["constants"])
    even0 = commutant_dimension(dec.parts["even_zero"])
    data = {"dims": list(dec.dims), "commutant_full": full, "stabilizer_orbits": orbit_count,
            "commutant_odd": odd, "commutant_constants": const, "commutant_even_zero": even0}
    ok = full == orbit_count and full >= odd + const + even0 and odd == 1
    return Certificate(
        "centralizer", Status.PROVEN if ok else Status.FAILED, data=data,
        narrative=(f"dim End(F_3^{2 * m}) = {full} = stabilizer orbit count {orbit_count}; "
                   f"summands contribute {odd} + {const} + {even0}; End of the odd part is "
                   f"{'F_3' if odd == 1 else f'{odd}-dimensional'}"),
        criterion="orbit count of a point stabilizer equals the commutant dimension",
    ), odd


def _downgrade(status: Status) -> Status:
    return Status.FAILED if status is Status.FAILED else Status.HEURISTIC


def assemble_theorem_report(f: IntPolynomial, field: BaseField = BaseField.Q_SQRT_MINUS_3,
                            budget: int = DEFAULT_BUDGET) -> TheoremReport:
    h, g, m = split_f(f)
    n = f.degree
    try:
        profile = curve_profile(n)
    except BadCongruence as exc:
        raise PreconditionViolated([str(exc)]) from exc
    galois = assemble_galois_verdict(f, field, budget)
    centralizer, commutant = certify_centralizer(m)
    hyp = certify_group_hypotheses(m)

    k = profile.k
    a, b = profile.prym_mult
    out = [
        Conclusion("A", f"P(C) is a {m}-dimensional delta_3-invariant abelian subvariety and Z[zeta_3] embeds "
                        f"in End(P(C))", Status.PROVEN,
                   f"genus {profile.genus_C}, quotient genus {profile.genus_quotient}, "
                   f"dim P = {profile.prym_dim}"),
        Conclusion("B", "the restricted polarization is twice a delta_3-invariant principal polarization",
                   Status.CITED, "geometric statement about Prym varieties; not a finite computation"),
        Conclusion("C", "P(C) with its principal polarization is not a canonically polarized jacobian",
                   Status.PROVEN if nonjacobian_check(profile) else Status.FAILED,
                   f"3|{a} - {b}| = {profile.nonjacobian_lhs} > {profile.nonjacobian_rhs} = dim P + 2"),
        Conclusion("eigen", f"delta_3 acts on Omega^1(P) with zeta_3^-1 of multiplicity {a} = 2k+1 and zeta_3 of "
                            f"multiplicity {b} = 4k+4 (k = {k})", Status.PROVEN,
                   f"anti-invariant basis x^{list(profile.anti_invariant_basis[0])} dx/y, "
                   f"x^{list(profile.anti_invariant_basis[1])} dx/y^2; gcd = {gcd(a, b)}"),
        Conclusion("a", "P(C)_lambda is isomorphic to V_f^- as a Galois module", Status.CITED,
                   f"ranks agree: 2 dim P / 2 = {profile.prym_dim} = dim V_f^- = {m}"
                   if rank_consistency(profile, centralizer.data["dims"][0]) else "rank mismatch"),
    ]
    if field is not BaseField.Q_SQRT_MINUS_3:
        b1_status, b1_detail = Status.FAILED, "the base field must contain sqrt(-3)"
    elif galois.conclusion is Status.PROVEN and commutant == 1 and centralizer.status is Status.PROVEN:
        b1_status, b1_detail = Status.PROVEN, "Gal(f) = W(D_m) certified and End_Gal(V_f^-) = F_3"
    elif galois.conclusion is Status.PROVEN:
        b1_status, b1_detail = Status.FAILED, f"End_Gal(V_f^-) has dimension {commutant}"
    else:
        b1_status = _downgrade(galois.conclusion)
        b1_detail = f"Galois verdict is {galois.conclusion.value}"
    c_status = out[2].status
    if b1_status is Status.PROVEN and c_status is Status.PROVEN:
        b2_status, b2_detail = Status.PROVEN, "follows from (b1) and (C)"
    else:
        b2_status = b1_status if b1_status is not Status.PROVEN else _downgrade(c_status)
        b2_detail = "requires (b1) and (C)"
    out += [
        Conclusion("b1", "End(P(C)) = Z[zeta_3]; P(C) is absolutely simple", b1_status, b1_detail),
        Conclusion("b2", "P(C) is neither a jacobian nor a product of jacobians", b2_status, b2_detail),
    ]
    return TheoremReport(f, field, budget, profile, galois, commutant, [hyp, centralizer], out)
