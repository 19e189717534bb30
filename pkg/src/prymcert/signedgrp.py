"""Signed permutations and the groups 2^m.G and 2^(m-1).G = W(D_m).

Point indexing (frozen): +beta_i is point ``i`` and -beta_i is point ``m + i``
for ``i`` in ``0..m-1``.  A signed permutation ``(s; eps)`` sends
``+beta_i -> eps_i * beta_{s(i)}`` and ``-beta_i -> -eps_i * beta_{s(i)}``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import lcm
from typing import Iterable, Sequence

from .modp import CycleType
from .permgrp import PermGroup, Permutation, symmetric_group


@dataclass(frozen=True)
class SignedPerm:
    s: Permutation
    eps: tuple[int, ...]

    def __post_init__(self):
        eps = tuple(int(e) for e in self.eps)
        if len(eps) != self.s.degree or any(e not in (1, -1) for e in eps):
            raise ValueError("eps must be m signs +-1")
        object.__setattr__(self, "eps", eps)

    @property
    def m(self) -> int:
        return self.s.degree

    @classmethod
    def identity(cls, m: int) -> "SignedPerm":
        return cls(Permutation.identity(m), (1,) * m)

    def __mul__(self, other: "SignedPerm") -> "SignedPerm":
        # self first: beta_i -> eps_i beta_{s(i)} -> eps_i delta_{s(i)} beta_{t(s(i))}
        eps = tuple(self.eps[i] * other.eps[self.s(i)] for i in range(self.m))
        return SignedPerm(self.s * other.s, eps)

    def inverse(self) -> "SignedPerm":
        si = self.s.inverse()
        return SignedPerm(si, tuple(self.eps[si(j)] for j in range(self.m)))

    def sign_product(self) -> int:
        out = 1
        for e in self.eps:
            out *= e
        return out

    def as_permutation(self) -> Permutation:
        m = self.m
        img = [0] * (2 * m)
        for i in range(m):
            j = self.s(i)
            if self.eps[i] == 1:
                img[i], img[m + i] = j, m + j
            else:
                img[i], img[m + i] = m + j, j
        return Permutation(tuple(img))

    @classmethod
    def from_permutation(cls, p: Permutation) -> "SignedPerm":
        """Inverse of ``as_permutation``; raises if p does not respect the pairing."""
        m = p.degree // 2
        s, eps = [], []
        for i in range(m):
            a, b = p(i), p(m + i)
            if (a + m) % (2 * m) != b:
                raise ValueError("permutation does not commute with negation")
            s.append(a % m)
            eps.append(1 if a < m else -1)
        return cls(Permutation(tuple(s)), tuple(eps))


def kappa(x: SignedPerm) -> Permutation:
    return x.s


def flip(m: int, positions: Iterable[int]) -> SignedPerm:
    pos = set(positions)
    return SignedPerm(Permutation.identity(m), tuple(-1 if i in pos else 1 for i in range(m)))


def build_wreath(G_gens: Sequence[Permutation], m: int, even_only: bool) -> PermGroup:
    """2^m.G (all sign vectors) or 2^(m-1).G (even sign vectors) on 2m points.

    Generators: lifts of the G generators with all signs +1, plus single flips
    or adjacent double flips.
    """
    if m < 2:
        raise ValueError("need m >= 2")
    gens = [SignedPerm(g, (1,) * m).as_permutation() for g in G_gens if not g.is_identity()]
    if even_only:
        gens += [flip(m, (i, i + 1)).as_permutation() for i in range(m - 1)]
    else:
        gens += [flip(m, (i,)).as_permutation() for i in range(m)]
    return PermGroup(2 * m, gens)


def weyl_group_D(m: int) -> PermGroup:
    return build_wreath(symmetric_group(m).generators, m, even_only=True)


def hyperoctahedral_group(m: int) -> PermGroup:
    return build_wreath(symmetric_group(m).generators, m, even_only=False)


def kappa_of_permutation(p: Permutation) -> Permutation:
    return SignedPerm.from_permutation(p).s


def action_cycle_type(x: SignedPerm) -> CycleType:
    parts = []
    for cyc in x.s.cycles():
        sgn = 1
        for i in cyc:
            sgn *= x.eps[i]
        d = len(cyc)
        parts += [d, d] if sgn == 1 else [2 * d]
    return CycleType(tuple(parts))


@dataclass(frozen=True)
class Realization:
    """A decomposition of a 2m-point cycle type into signed kappa-cycles.

    ``pieces`` are (kappa_length, negative) pairs: a positive piece of length d
    accounts for two d-cycles, a negative one for a single 2d-cycle.
    """

    pieces: tuple[tuple[int, bool], ...]

    @property
    def negative_count(self) -> int:
        return sum(1 for _, neg in self.pieces if neg)

    @property
    def even_sign(self) -> bool:
        return self.negative_count % 2 == 0

    def kappa_type(self) -> CycleType:
        return CycleType(tuple(d for d, _ in self.pieces))

    def action_type(self) -> CycleType:
        parts = []
        for d, neg in self.pieces:
            parts += [2 * d] if neg else [d, d]
        return CycleType(tuple(parts))

    def as_dict(self) -> dict:
        return {"pieces": [[d, neg] for d, neg in self.pieces], "negative_count": self.negative_count}


@lru_cache(maxsize=4096)
def _decompose(counts: tuple[tuple[int, int], ...]) -> tuple[tuple[tuple[int, bool], ...], ...]:
    """All piece multisets for a multiset of parts given as sorted (part, count)."""
    if not counts:
        return ((),)
    (a, c), rest = counts[-1], counts[:-1]
    out = []
    for pairs in range(c // 2 + 1):
        negs = c - 2 * pairs
        if negs and a % 2:
            continue
        head = ((a, False),) * pairs + ((a // 2, True),) * negs
        for tail in _decompose(rest):
            out.append(tuple(sorted(head + tail, key=lambda p: (-p[0], p[1]))))
    return tuple(out)


def realizations_of(type_: CycleType, m: int, even_sign_only: bool) -> list[Realization]:
    if type_.degree != 2 * m:
        raise ValueError(f"cycle type {type_} does not sum to 2m = {2 * m}")
    counts = tuple(sorted(type_.counts().items()))
    out = [Realization(p) for p in _decompose(counts)]
    if even_sign_only:
        out = [r for r in out if r.even_sign]
    return sorted(out, key=lambda r: r.pieces)


def order_vs_projection(r: Realization) -> tuple[int, int]:
    element = lcm(*[2 * d if neg else d for d, neg in r.pieces]) if r.pieces else 1
    projection = lcm(*[d for d, _ in r.pieces]) if r.pieces else 1
    return element, projection


# ---------------------------------------------------------------------------
# the even-weight sign module E over F_2


def _act_bits(v: int, images: Sequence[int]) -> int:
    out = 0
    for i, j in enumerate(images):
        if v >> i & 1:
            out |= 1 << j
    return out


def _reduce(v: int, basis: dict[int, int]) -> int:
    while v:
        top = v.bit_length() - 1
        if top not in basis:
            return v
        v ^= basis[top]
    return 0


def spin_submodule(v: int, gens: Sequence[Permutation]) -> list[int]:
    """Basis (as bitmasks) of the smallest G-invariant F_2-subspace containing v."""
    basis: dict[int, int] = {}
    queue = []
    r = _reduce(v, basis)
    if r:
        basis[r.bit_length() - 1] = r
        queue.append(v)
    while queue:
        w = queue.pop()
        for g in gens:
            u = _act_bits(w, g.images)
            r = _reduce(u, basis)
            if r:
                basis[r.bit_length() - 1] = r
                queue.append(u)
    return list(basis.values())


def sign_module_submodules(m: int, G_gens: Sequence[Permutation]) -> list[int]:
    """Dimensions of the submodules of E spun from each even-weight representative.

    The representative of weight w is the indicator of {0, ..., w-1}.  When G
    is transitive on w-subsets for every w (as S_m is), every nonzero vector
    is conjugate to a representative, so E is irreducible iff the result is
    [0, m-1].
    """
    if m > 64:
        raise ValueError("m must be at most 64")
    dims = {0}
    for w in range(2, m + 1, 2):
        v = (1 << w) - 1
        dims.add(len(spin_submodule(v, G_gens)))
    return sorted(dims)


def even_weight_dimension(m: int) -> int:
    return m - 1
