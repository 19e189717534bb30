"""Polynomials over F_p and distinct-degree factorization.

Only the degrees of the irreducible factors are ever computed.  For a prime
not dividing the leading coefficient or the discriminant, the multiset of
degrees is the cycle type of a Frobenius element acting on the roots.

Residue polynomials are plain lists of ints in [0, p), ascending, with no
trailing zeros (the zero polynomial is ``[]``).
"""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Iterator

from .errors import BudgetExhausted, NotPrime, Ramified
from .exactalg import IntPolynomial, is_prime

DEFAULT_PRIME_CAP = 100_000


@dataclass(frozen=True, order=True)
class CycleType:
    """Multiset of positive integers, stored sorted descending."""

    parts: tuple[int, ...]

    def __post_init__(self):
        if any(p <= 0 for p in self.parts):
            raise ValueError("cycle lengths must be positive")
        object.__setattr__(self, "parts", tuple(sorted(self.parts, reverse=True)))

    @property
    def degree(self) -> int:
        return sum(self.parts)

    def counts(self) -> Counter:
        return Counter(self.parts)

    def is_odd_signature(self) -> bool:
        return sum(p - 1 for p in self.parts) % 2 == 1

    def __str__(self):
        return "{" + ", ".join(map(str, self.parts)) + "}"


@dataclass(frozen=True)
class FrobeniusSample:
    prime: int
    type_h: CycleType
    type_g: CycleType


@dataclass
class FrobeniusSamples:
    samples: list[FrobeniusSample] = field(default_factory=list)
    ramified: list[int] = field(default_factory=list)

    def __iter__(self):
        return iter(self.samples)

    def __len__(self):
        return len(self.samples)


# ---------------------------------------------------------------------------
# F_p[x]

def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def poly_mod_p(p: IntPolynomial, prime: int) -> list[int]:
    if not is_prime(prime):
        raise NotPrime(f"{prime} is not prime")
    return _trim([c % prime for c in p.coeffs])


def _sub(a, b, q):
    n = max(len(a), len(b))
    return _trim([((a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)) % q for i in range(n)])


def _mul(a, b, q):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _trim([v % q for v in out])


def _divmod(a, b, q):
    if not b:
        raise ZeroDivisionError("division by zero polynomial mod p")
    a = list(a)
    inv = pow(b[-1], -1, q)
    db = len(b) - 1
    quot = [0] * max(len(a) - db, 0)
    while len(a) - 1 >= db and a:
        t = a[-1] * inv % q
        shift = len(a) - 1 - db
        quot[shift] = t
        for j, y in enumerate(b):
            a[shift + j] = (a[shift + j] - t * y) % q
        _trim(a)
    return _trim(quot), a


def _mod(a, b, q):
    return _divmod(a, b, q)[1]


def _monic(a, q):
    if not a:
        return a
    inv = pow(a[-1], -1, q)
    return [v * inv % q for v in a]


def gcd_mod_p(a, b, q):
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        a, b = b, _mod(a, b, q)
    return _monic(a, q)


def _deriv(a, q):
    return _trim([i * v % q for i, v in enumerate(a)][1:])


def _powmod(base, e, modulus, q):
    result = [1]
    base = _mod(base, modulus, q)
    while e:
        if e & 1:
            result = _mod(_mul(result, base, q), modulus, q)
        base = _mod(_mul(base, base, q), modulus, q)
        e >>= 1
    return result


def is_squarefree_mod_p(a, q) -> bool:
    if len(a) <= 2:
        return True
    return len(gcd_mod_p(a, _deriv(a, q), q)) == 1


def ddf_degrees(f, q) -> list[int]:
    """Degrees of the irreducible factors of a monic squarefree f in F_q[x]."""
    degrees = []
    rest = _monic(list(f), q)
    x = [0, 1]
    frob = x  # x^(q^d) mod rest
    d = 0
    while len(rest) - 1 >= 2 * (d + 1):
        d += 1
        frob = _powmod(frob, q, rest, q)
        g = gcd_mod_p(rest, _sub(frob, x, q), q)
        k = len(g) - 1
        if k > 0:
            degrees += [d] * (k // d)
            rest, _ = _divmod(rest, g, q)
            frob = _mod(frob, rest, q)
    if len(rest) - 1 > 0:
        degrees.append(len(rest) - 1)
    return degrees


def ddf_cycle_type(p: IntPolynomial, prime: int) -> CycleType:
    f = poly_mod_p(p, prime)
    if p.lc % prime == 0:
        raise Ramified(f"{prime} divides the leading coefficient")
    if not is_squarefree_mod_p(f, prime):
        raise Ramified(f"{p} is not squarefree modulo {prime}")
    return CycleType(tuple(ddf_degrees(f, prime)))


def prime_stream(start: int = 2, cap: int | None = DEFAULT_PRIME_CAP) -> Iterator[int]:
    """Primes >= start in ascending order, stopping below cap (None: unbounded)."""
    n = max(start, 2)
    while cap is None or n < cap:
        if is_prime(n):
            yield n
        n += 1


def sample_frobenius(
    h: IntPolynomial,
    g: IntPolynomial,
    primes: Iterable[int] | None = None,
    budget: int = 200,
) -> FrobeniusSamples:
    """Frobenius cycle types of h and g at the first ``budget`` unramified primes.

    Ramified primes are skipped and listed in ``ramified``.
    """
    out = FrobeniusSamples()
    if budget <= 0:
        return out
    stream = prime_stream() if primes is None else primes
    for q in stream:
        if h.lc % q == 0 or g.lc % q == 0:
            out.ramified.append(q)
            continue
        fh, fg = poly_mod_p(h, q), poly_mod_p(g, q)
        if not (is_squarefree_mod_p(fh, q) and is_squarefree_mod_p(fg, q)):
            out.ramified.append(q)
            continue
        out.samples.append(
            FrobeniusSample(q, CycleType(tuple(ddf_degrees(fh, q))), CycleType(tuple(ddf_degrees(fg, q))))
        )
        if len(out.samples) == budget:
            return out
    raise BudgetExhausted(
        f"prime stream ended after {len(out.samples)} of {budget} unramified primes "
        f"({len(out.ramified)} ramified)"
    )


def naive_factor_degrees(f, q) -> list[int]:
    """Degrees of irreducible factors by trial division over all monic polynomials.

    Exponential in the degree; kept as an independent check of ``ddf_degrees``.
    """
    f = _monic(_trim(list(f)), q)
    degrees = []
    d = 1
    while len(f) - 1 >= 1:
        if 2 * d > len(f) - 1:
            degrees.append(len(f) - 1)
            break
        found = False
        for tail in itertools.product(range(q), repeat=d):
            cand = list(tail) + [1]
            quot, rem = _divmod(f, cand, q)
            if not rem:
                degrees.append(d)
                f = quot
                found = True
                break
        if not found:
            d += 1
    return sorted(degrees, reverse=True)
