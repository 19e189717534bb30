"""Certificates that Gal(f/K) = W(D_m) for odd f = x*h(x), K = Q or Q(sqrt(-3)).

The chain, with h(x) = g(x^2) and deg g = m:

subset
    Gal(h) lies in W(D_m) iff the product of the beta_i lies in K, i.e. iff
    (-1)^m h(0)/lc(h) is a square in K.
quotient_Sm
    The image of Gal(h) under kappa is Gal(g); Frobenius cycle types of g
    prove it is S_m (Dedekind; transitivity from degree patterns; primitivity;
    a transposition, or Jordan's p-cycle theorem plus an odd element).
kernel
    K_0 = Gal(h) & 2^(m-1).{1} is an S_m-submodule of the even-weight sign
    module E.  For odd m, E is irreducible (checked by spinning), so K_0 is 0
    or E.  If K_0 = 0 then Gal(h) is a complement and every element has the
    same order as its kappa image; one Frobenius whose every even-sign shape
    breaks that rule rules this out, so Gal(h) = W(D_m).
disjointness
    W(D_m) has a unique index-2 subgroup and its character is sign o kappa,
    so the splitting field of h has exactly one quadratic subfield,
    Q(sqrt(disc g)).  If that is not Q(sqrt(-3)), the splitting field is
    linearly disjoint from K and the group does not shrink over K.

Each certificate records the primes and cycle types it used;
``replay_certificate`` re-checks a PROVEN certificate from those alone.
"""

from __future__ import annotations

import enum
import itertools
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import PreconditionViolated
from .exactalg import (
    BaseField,
    IntPolynomial,
    discriminant,
    even_part,
    factor_integer,
    is_even_poly,
    is_odd_poly,
    is_prime,
    is_square_in,
    is_squarefree,
    squarefree_part,
)
from .modp import (
    CycleType,
    FrobeniusSample,
    FrobeniusSamples,
    ddf_cycle_type,
    prime_stream,
    sample_frobenius,
)
from .permgrp import PermGroup, Permutation, derived_subgroup, symmetric_group
from .signedgrp import (
    SignedPerm,
    order_vs_projection,
    realizations_of,
    sign_module_submodules,
    weyl_group_D,
)

DEFAULT_BUDGET = 200
CHEBOTAREV_ENUMERATION_CAP = 10**6


class Status(str, enum.Enum):
    PROVEN = "PROVEN"
    HEURISTIC = "HEURISTIC"
    FAILED = "FAILED"
    CITED = "CITED"


@dataclass
class Certificate:
    name: str
    status: Status
    witnesses: list[dict] = field(default_factory=list)
    data: dict = field(default_factory=dict)
    narrative: str = ""
    criterion: str = ""
    reason: str | None = None

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "status": self.status.value,
            "witnesses": self.witnesses,
            "data": self.data,
            "narrative": self.narrative,
            "criterion": self.criterion,
            "reason": self.reason,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "Certificate":
        return cls(
            name=d["name"],
            status=Status(d["status"]),
            witnesses=list(d.get("witnesses", [])),
            data=dict(d.get("data", {})),
            narrative=d.get("narrative", ""),
            criterion=d.get("criterion", ""),
            reason=d.get("reason"),
        )


@dataclass
class GaloisVerdict:
    field: BaseField
    m: int
    subset: Certificate
    quotient: Certificate
    kernel: Certificate
    disjointness: Certificate
    sampling: dict = field(default_factory=dict)

    @property
    def certificates(self) -> list[Certificate]:
        return [self.subset, self.quotient, self.kernel, self.disjointness]

    @property
    def conclusion(self) -> Status:
        statuses = [c.status for c in self.certificates]
        if all(s is Status.PROVEN for s in statuses):
            return Status.PROVEN
        if any(s is Status.FAILED for s in statuses):
            return Status.FAILED
        return Status.HEURISTIC


def _parts(ct: CycleType) -> list[int]:
    return list(ct.parts)


def _skipped(name: str, why: str) -> Certificate:
    return Certificate(name, Status.FAILED, narrative=f"not attempted: {why}", reason="PrerequisiteFailed")


# ---------------------------------------------------------------------------
# subset


def subset_radicand(h: IntPolynomial) -> Fraction:
    """(prod beta_i)^2 = (-1)^m h(0) / lc(h) for h(x) = lc * prod (x^2 - beta_i^2)."""
    m = h.degree // 2
    return Fraction((-1) ** m * h.coeff(0), h.lc)


def _check_h(h: IntPolynomial) -> list[str]:
    failures = []
    if h.degree < 2 or h.degree % 2:
        failures.append(f"deg h = {h.degree} is not a positive even number")
    if not is_even_poly(h):
        failures.append("h is not an even polynomial")
    if h.coeff(0) == 0:
        failures.append("h(0) = 0")
    if not h.is_zero() and not is_squarefree(h):
        failures.append("h has a multiple root")
    return failures


def certify_subset(h: IntPolynomial, field: BaseField) -> Certificate:
    failures = _check_h(h)
    if failures:
        raise PreconditionViolated(failures)
    q = subset_radicand(h)
    in_q = is_square_in(q, BaseField.Q)
    ok = is_square_in(q, field)
    route = "rational square" if in_q else ("-3 times a rational square" if ok else "not a square")
    data = {"radicand": str(q), "field": field.value, "route": route, "square_in_Q": in_q}
    if ok:
        narrative = f"(prod beta_i)^2 = {q} is a square in {field.value} ({route}), so Gal(h) lies in W(D_m)"
        return Certificate("subset", Status.PROVEN, data=data, narrative=narrative,
                           criterion="square class of the product of the roots beta_i")
    return Certificate("subset", Status.FAILED, data=data,
                       narrative=f"(prod beta_i)^2 = {q} is not a square in {field.value}; Gal(h) is not inside W(D_m)",
                       criterion="square class of the product of the roots beta_i", reason="NotASquare")


# ---------------------------------------------------------------------------
# quotient = S_m


def _subset_sums(parts: Sequence[int]) -> set[int]:
    sums = {0}
    for p in parts:
        sums |= {s + p for s in sums}
    return sums


def _powers_to_single_cycle(ct: CycleType, length: int) -> bool:
    """Some power of an element of this type is a single ``length``-cycle.

    True when exactly one part is divisible by ``length``, that part equals
    ``length``, and ``length`` is prime (raise to the lcm of the other parts).
    """
    divisible = [p for p in ct.parts if p % length == 0]
    return divisible == [length]


def _transposition_power(ct: CycleType) -> bool:
    """Some power is a transposition: one part equals 2, every other part is odd."""
    return ct.parts.count(2) == 1 and all(p % 2 for p in ct.parts if p != 2)


def _sm_evidence(m: int, typed: Sequence[tuple[int, CycleType]]) -> tuple[bool, list[dict], dict]:
    """Scan (prime, type of g) pairs in order; return (proven, witnesses, notes)."""
    witnesses: list[dict] = []
    notes: dict = {}
    possible = set(range(1, m))
    transitive = m == 1
    for q, ct in typed:
        if transitive:
            break
        sums = _subset_sums(ct.parts)
        if possible - sums:
            possible &= sums
            witnesses.append({"prime": q, "type": _parts(ct), "role": "irreducibility"})
            if not possible:
                transitive = True
    if not transitive:
        notes["missing"] = "irreducibility"
        return False, witnesses, notes

    primitive = is_prime(m)
    if primitive:
        notes["primitivity"] = "transitive of prime degree"
    else:
        for q, ct in typed:
            big = [p for p in ct.parts if 2 * p > m and is_prime(p)]
            if big and _powers_to_single_cycle(ct, big[0]):
                witnesses.append({"prime": q, "type": _parts(ct), "role": "primitivity"})
                notes["primitivity"] = f"power of a {big[0]}-cycle with {big[0]} > m/2"
                primitive = True
                break
            if sorted(ct.parts) == [1, m - 1]:
                witnesses.append({"prime": q, "type": _parts(ct), "role": "primitivity"})
                notes["primitivity"] = "(m-1)-cycle: doubly transitive"
                primitive = True
                break
    if not primitive:
        notes["missing"] = "primitivity"
        return False, witnesses, notes

    for q, ct in typed:
        if _transposition_power(ct):
            witnesses.append({"prime": q, "type": _parts(ct), "role": "transposition"})
            notes["full_group"] = "primitive group containing a transposition"
            return True, witnesses, notes

    jordan = None
    odd = None
    for q, ct in typed:
        if jordan is None:
            for p in sorted(set(ct.parts)):
                if is_prime(p) and p <= m - 3 and _powers_to_single_cycle(ct, p):
                    jordan = {"prime": q, "type": _parts(ct), "role": f"{p}-cycle"}
                    break
        if odd is None and ct.is_odd_signature():
            odd = {"prime": q, "type": _parts(ct), "role": "odd permutation"}
        if jordan and odd:
            break
    if jordan and odd:
        witnesses += [jordan, odd] if jordan["prime"] != odd["prime"] else [jordan]
        notes["full_group"] = "primitive group containing a p-cycle, p <= m-3, and an odd element"
        return True, witnesses, notes
    notes["missing"] = "transposition, or p-cycle with an odd element"
    return False, witnesses, notes


def _census(types: Iterable[CycleType]) -> list[dict]:
    counts = Counter(types)
    total = sum(counts.values())
    return [
        {"type": _parts(ct), "count": n, "frequency": round(n / total, 6)}
        for ct, n in sorted(counts.items(), key=lambda kv: (-kv[1], kv[0].parts))
    ]


def _as_samples(samples) -> list[FrobeniusSample]:
    if samples is None:
        return []
    if isinstance(samples, FrobeniusSamples):
        return list(samples.samples)
    return list(samples)


def certify_quotient_Sm(g: IntPolynomial, samples) -> Certificate:
    m = g.degree
    failures = []
    if m < 1:
        failures.append("g must have positive degree")
    elif not is_squarefree(g):
        failures.append("g has a multiple root")
    if failures:
        raise PreconditionViolated(failures)
    samples = _as_samples(samples)
    typed = [(s.prime, s.type_g) for s in samples]
    proven, witnesses, notes = _sm_evidence(m, typed)
    data = {"m": m, "samples": len(samples), **notes}
    if proven:
        return Certificate(
            "quotient_Sm", Status.PROVEN, witnesses=witnesses, data=data,
            narrative=f"kappa(Gal(h)) = Gal(g) = S_{m}: {notes['full_group']}",
            criterion="Dedekind cycle types; " + notes["full_group"],
        )
    data["census"] = _census(s.type_g for s in samples)
    return Certificate(
        "quotient_Sm", Status.HEURISTIC, witnesses=witnesses, data=data,
        narrative=f"no witness for {notes['missing']} among {len(samples)} samples",
        criterion="Dedekind cycle types", reason="InsufficientSamples",
    )


# ---------------------------------------------------------------------------
# kernel


def kernel_witness_table(type_h: CycleType, m: int) -> list[dict]:
    table = []
    for r in realizations_of(type_h, m, even_sign_only=True):
        elem, proj = order_vs_projection(r)
        table.append({"pieces": [[d, neg] for d, neg in r.pieces], "element_order": elem, "projection_order": proj})
    return table


def is_kernel_witness(type_h: CycleType, m: int) -> bool:
    table = kernel_witness_table(type_h, m)
    return bool(table) and all(row["element_order"] != row["projection_order"] for row in table)


def chebotarev_proportions(m: int) -> dict[CycleType, Fraction] | None:
    """Proportion of each 2m-point cycle type in W(D_m), by exhaustive enumeration.

    Each s in S_m is enumerated; the 2^(m-1) even sign vectors over s only
    matter through the sign product on each cycle of s, and a cycle of length
    d carries 2^(d-1) sign vectors per product, so each pattern is weighted
    accordingly.  None when |W(D_m)| exceeds the cap.
    """
    total = 2 ** (m - 1)
    for i in range(2, m + 1):
        total *= i
    if total > CHEBOTAREV_ENUMERATION_CAP:
        return None
    counts: Counter = Counter()
    for images in itertools.permutations(range(m)):
        cycles = [len(c) for c in Permutation(images).cycles()]
        base_weight = 1
        for d in cycles:
            base_weight *= 2 ** (d - 1)
        for signs in itertools.product((1, -1), repeat=len(cycles)):
            if signs.count(-1) % 2:
                continue
            parts = []
            for d, sg in zip(cycles, signs):
                parts += [d, d] if sg == 1 else [2 * d]
            counts[CycleType(tuple(parts))] += base_weight
    assert sum(counts.values()) == total
    return {ct: Fraction(n, total) for ct, n in counts.items()}


def _consistency(samples: Sequence[FrobeniusSample], m: int) -> list[int]:
    """Primes whose type_g is not the kappa-type of an even realization of type_h."""
    bad = []
    for s in samples:
        kt = {r.kappa_type() for r in realizations_of(s.type_h, m, even_sign_only=True)}
        if s.type_g not in kt:
            bad.append(s.prime)
    return bad


def certify_kernel(h: IntPolynomial, m: int, samples, quotient_cert: Certificate,
                   subset_cert: Certificate | None = None) -> Certificate:
    failures = []
    if m % 2 == 0:
        failures.append(f"m = {m} is even")
    if h.degree != 2 * m:
        failures.append(f"deg h = {h.degree} != 2m = {2 * m}")
    if quotient_cert.status is not Status.PROVEN:
        failures.append("quotient certificate is not PROVEN")
    if subset_cert is not None and subset_cert.status is not Status.PROVEN:
        failures.append("subset certificate is not PROVEN")
    if failures:
        raise PreconditionViolated(failures)
    samples = _as_samples(samples)
    dims = sign_module_submodules(m, symmetric_group(m).generators)
    data: dict = {"m": m, "sign_module_dims": dims, "samples": len(samples)}
    criterion = "irreducible sign module + complement order law"
    if dims != [0, m - 1]:
        return Certificate("kernel", Status.FAILED, data=data,
                           narrative=f"even-weight sign module is reducible under S_{m}: dims {dims}",
                           criterion=criterion, reason="ModuleReducible")
    bad = _consistency(samples, m)
    if bad:
        data["inconsistent_primes"] = bad
        return Certificate("kernel", Status.FAILED, data=data,
                           narrative="sampled types of h and g are incompatible with Gal(h) inside W(D_m)",
                           criterion=criterion, reason="InconsistentSample")
    for s in samples:
        if is_kernel_witness(s.type_h, m):
            table = kernel_witness_table(s.type_h, m)
            w = {"prime": s.prime, "type_h": _parts(s.type_h), "type_g": _parts(s.type_g),
                 "realizations": table}
            return Certificate(
                "kernel", Status.PROVEN, witnesses=[w], data=data,
                narrative=(f"Frobenius at {s.prime} has type {s.type_h}; every even-sign shape has element order "
                           f"!= kappa order, so Gal(h) is not a complement; E irreducible gives "
                           f"|Gal(h)| = 2^{m - 1} * {m}!"),
                criterion=criterion,
            )
    data["census"] = _census(s.type_h for s in samples)
    expected = chebotarev_proportions(m)
    if expected is not None:
        witness_density = sum((p for ct, p in expected.items() if is_kernel_witness(ct, m)), Fraction(0))
        data["expected_witness_density"] = str(witness_density)
        data["expected_proportions"] = [
            {"type": _parts(ct), "proportion": str(p)}
            for ct, p in sorted(expected.items(), key=lambda kv: (-kv[1], kv[0].parts))
        ]
    return Certificate("kernel", Status.HEURISTIC, data=data,
                       narrative=f"no sampled type of h forces a nontrivial sign kernel among {len(samples)} samples",
                       criterion=criterion, reason="InsufficientSamples")


# ---------------------------------------------------------------------------
# disjointness from Q(sqrt(-3))


def certify_disjoint_sqrt_minus3(h: IntPolynomial, g: IntPolynomial, wd_group: PermGroup,
                                 kernel_cert: Certificate | None = None) -> Certificate:
    if kernel_cert is not None and kernel_cert.status is not Status.PROVEN:
        raise PreconditionViolated("kernel certificate is not PROVEN")
    criterion = "unique quadratic subfield Q(sqrt(disc g))"
    order = wd_group.order()
    derived = derived_subgroup(wd_group)
    index = order // derived.order()
    data: dict = {"group_order": order, "derived_index": index}
    if index != 2:
        return Certificate("disjointness", Status.FAILED, data=data,
                           narrative=f"abelianization has order {index}; the quadratic subfield is not unique",
                           criterion=criterion, reason="NoUniqueQuadratic")
    sign_2m = [g_.sign() for g_ in wd_group.generators]
    sign_kappa = [SignedPerm.from_permutation(g_).s.sign() for g_ in wd_group.generators]
    data["signature_on_2m_points_trivial"] = all(s == 1 for s in sign_2m)
    data["signature_of_kappa_nontrivial"] = any(s == -1 for s in sign_kappa)
    if not (data["signature_on_2m_points_trivial"] and data["signature_of_kappa_nontrivial"]):
        return Certificate("disjointness", Status.FAILED, data=data,
                           narrative="the index-2 character is not sign o kappa",
                           criterion=criterion, reason="CharacterMismatch")
    disc = discriminant(g)
    radicand = squarefree_part(disc)
    data.update({"disc_g": disc, "disc_g_factored": str(factor_integer(disc)), "radicand": radicand})
    if radicand == 1:
        return Certificate("disjointness", Status.FAILED, data=data,
                           narrative="disc g is a square, contradicting Gal(g) = S_m",
                           criterion=criterion, reason="InconsistentDiscriminant")
    if radicand == -3:
        return Certificate("disjointness", Status.FAILED, data=data,
                           narrative="the unique quadratic subfield is Q(sqrt(-3)) itself",
                           criterion=criterion, reason="NotDisjoint")
    return Certificate(
        "disjointness", Status.PROVEN, data=data,
        narrative=(f"the only quadratic subfield of the splitting field is Q(sqrt({radicand})) != Q(sqrt(-3)), "
                   f"so the Galois group is unchanged over Q(sqrt(-3))"),
        criterion=criterion,
    )


# ---------------------------------------------------------------------------
# assembly


def split_f(f: IntPolynomial) -> tuple[IntPolynomial, IntPolynomial, int]:
    """Check the structure of f and return (h, g, m) with f = x*h, h(x) = g(x^2)."""
    failures = []
    if f.degree < 3 or f.degree % 2 == 0:
        failures.append(f"deg f = {f.degree} is not an odd number >= 3")
    if not is_odd_poly(f):
        failures.append("f is not an odd polynomial")
    if is_odd_poly(f) and f.coeff(1) == 0:
        failures.append("0 is a multiple root of f (h(0) = 0)")
    if not f.is_zero() and not is_squarefree(f):
        failures.append("f has a multiple root")
    if failures:
        raise PreconditionViolated(failures)
    h = IntPolynomial(f.coeffs[1:])
    return h, even_part(h), (f.degree - 1) // 2


def split_prime_stream(cap: int | None = None):
    """Primes p = 1 (mod 3): exactly the primes split in Q(sqrt(-3))."""
    kw = {} if cap is None else {"cap": cap}
    return (q for q in prime_stream(**kw) if q % 3 == 1)


def assemble_galois_verdict(f: IntPolynomial, field: BaseField = BaseField.Q_SQRT_MINUS_3,
                            budget: int = DEFAULT_BUDGET, primes=None) -> GaloisVerdict:
    h, g, m = split_f(f)
    subset = certify_subset(h, field)
    split_only = subset.status is Status.PROVEN and not subset.data["square_in_Q"]
    if primes is None and split_only:
        primes = split_prime_stream()
    samples = sample_frobenius(h, g, primes, budget)
    sampling = {"budget": budget, "used": len(samples.samples), "ramified": samples.ramified,
                "split_primes_only": split_only}
    quotient = certify_quotient_Sm(g, samples)
    if subset.status is not Status.PROVEN:
        kernel = _skipped("kernel", "subset certificate failed")
        disjoint = _skipped("disjointness", "subset certificate failed")
        return GaloisVerdict(field, m, subset, quotient, kernel, disjoint, sampling)
    if quotient.status is not Status.PROVEN:
        kernel = Certificate("kernel", Status.HEURISTIC, narrative="not attempted: quotient certificate not PROVEN",
                             reason="PrerequisiteHeuristic")
        disjoint = Certificate("disjointness", Status.HEURISTIC,
                               narrative="not attempted: kernel certificate not PROVEN",
                               reason="PrerequisiteHeuristic")
        return GaloisVerdict(field, m, subset, quotient, kernel, disjoint, sampling)
    try:
        kernel = certify_kernel(h, m, samples, quotient, subset)
    except PreconditionViolated as exc:
        kernel = Certificate("kernel", Status.FAILED, narrative=str(exc), reason="PreconditionViolated")
    if kernel.status is not Status.PROVEN:
        status = Status.FAILED if kernel.status is Status.FAILED else Status.HEURISTIC
        disjoint = Certificate("disjointness", status, narrative="not attempted: kernel certificate not PROVEN",
                               reason="PrerequisiteFailed" if status is Status.FAILED else "PrerequisiteHeuristic")
        return GaloisVerdict(field, m, subset, quotient, kernel, disjoint, sampling)
    if field is BaseField.Q:
        disjoint = Certificate("disjointness", Status.PROVEN, data={"field": field.value},
                               narrative="base field is Q: no descent needed", criterion="trivial")
    elif split_only:
        disjoint = Certificate("disjointness", Status.PROVEN, data={"field": field.value},
                               narrative="every witness is a Frobenius at a prime split in Q(sqrt(-3)), "
                                         "so the chain already certifies the group over Q(sqrt(-3))",
                               criterion="Frobenius elements of split primes")
    else:
        disjoint = certify_disjoint_sqrt_minus3(h, g, weyl_group_D(m), kernel)
    return GaloisVerdict(field, m, subset, quotient, kernel, disjoint, sampling)


# ---------------------------------------------------------------------------
# replay


def replay_certificate(cert: Certificate, f: IntPolynomial, field: BaseField) -> bool:
    """Re-verify a PROVEN certificate from its recorded witnesses; no sampling."""
    if cert.status is not Status.PROVEN:
        return False
    h, g, m = split_f(f)
    if cert.name == "subset":
        fresh = certify_subset(h, field)
        return fresh.status is Status.PROVEN and fresh.data == cert.data
    if cert.name == "quotient_Sm":
        primes = sorted({w["prime"] for w in cert.witnesses})
        recomputed = {q: ddf_cycle_type(g, q) for q in primes}
        if any(_parts(recomputed[w["prime"]]) != w["type"] for w in cert.witnesses):
            return False
        proven, _, _ = _sm_evidence(m, [(q, recomputed[q]) for q in primes])
        return proven
    if cert.name == "kernel":
        if sign_module_submodules(m, symmetric_group(m).generators) != [0, m - 1]:
            return False
        (w,) = cert.witnesses
        type_h = ddf_cycle_type(h, w["prime"])
        type_g = ddf_cycle_type(g, w["prime"])
        return (_parts(type_h) == w["type_h"] and _parts(type_g) == w["type_g"]
                and kernel_witness_table(type_h, m) == w["realizations"] and is_kernel_witness(type_h, m))
    if cert.name == "disjointness":
        if cert.data.get("field") is not None:
            return cert.criterion in ("trivial", "Frobenius elements of split primes")
        fresh = certify_disjoint_sqrt_minus3(h, g, weyl_group_D(m))
        return fresh.status is Status.PROVEN and fresh.data == cert.data
    raise ValueError(f"unknown certificate {cert.name!r}")


def replay_verdict(verdict: GaloisVerdict, f: IntPolynomial) -> bool:
    """Replay every certificate of a PROVEN verdict, including the split-prime side condition."""
    if verdict.conclusion is not Status.PROVEN:
        return False
    if not all(replay_certificate(c, f, verdict.field) for c in verdict.certificates):
        return False
    if verdict.disjointness.criterion == "Frobenius elements of split primes":
        primes = [w["prime"] for w in verdict.quotient.witnesses + verdict.kernel.witnesses]
        return all(q % 3 == 1 for q in primes)
    return True
