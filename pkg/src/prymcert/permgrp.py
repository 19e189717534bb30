"""Permutation groups via a deterministic Schreier-Sims base and strong generating set.

Conventions
-----------
A permutation on ``N`` points is stored as its tuple of images.  Products are
read left to right: ``p * q`` applies ``p`` first, then ``q``, so
``(p * q)(x) == q(p(x))``.

The base is chosen deterministically (ascending smallest moved point after an
optional prefix); no randomness is used anywhere, so orders, stabilizer
generators and class lists are reproducible run to run.
"""

from __future__ import annotations

import itertools
import threading
from dataclasses import dataclass
from math import gcd, prod
from typing import Iterable, Iterator, Sequence

from .errors import Overscale
from .modp import CycleType

DEFAULT_ENUMERATION_CAP = 100_000
DEFAULT_MAX_CLASSES = 25


# ---------------------------------------------------------------------------
# raw tuple helpers (hot paths)

def _mul(a: tuple, b: tuple) -> tuple:
    return tuple(b[x] for x in a)


def _inv(a: tuple) -> tuple:
    out = [0] * len(a)
    for i, x in enumerate(a):
        out[x] = i
    return tuple(out)


def _is_id(a: tuple) -> bool:
    return all(i == x for i, x in enumerate(a))


def _first_moved(a: tuple) -> int:
    for i, x in enumerate(a):
        if i != x:
            return i
    return -1


@dataclass(frozen=True)
class Permutation:
    images: tuple[int, ...]

    def __post_init__(self):
        imgs = tuple(int(x) for x in self.images)
        if sorted(imgs) != list(range(len(imgs))):
            raise ValueError(f"{imgs} is not a permutation of 0..{len(imgs) - 1}")
        object.__setattr__(self, "images", imgs)

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(tuple(range(n)))

    @classmethod
    def from_cycles(cls, n: int, cycles: Iterable[Sequence[int]]) -> "Permutation":
        img = list(range(n))
        for cyc in cycles:
            for a, b in zip(cyc, list(cyc[1:]) + [cyc[0]]):
                img[a] = b
        return cls(tuple(img))

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, x: int) -> int:
        return self.images[x]

    def __mul__(self, other: "Permutation") -> "Permutation":
        return Permutation(_mul(self.images, other.images))

    def __pow__(self, e: int) -> "Permutation":
        base = self if e >= 0 else self.inverse()
        e = abs(e)
        out = Permutation.identity(self.degree)
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def inverse(self) -> "Permutation":
        return Permutation(_inv(self.images))

    def is_identity(self) -> bool:
        return _is_id(self.images)

    def cycles(self) -> list[tuple[int, ...]]:
        """All cycles including fixed points, each starting at its smallest point."""
        seen = set()
        out = []
        for i in range(self.degree):
            if i in seen:
                continue
            cyc = [i]
            seen.add(i)
            j = self.images[i]
            while j != i:
                cyc.append(j)
                seen.add(j)
                j = self.images[j]
            out.append(tuple(cyc))
        return out

    def order(self) -> int:
        o = 1
        for c in self.cycles():
            o = o * len(c) // gcd(o, len(c))
        return o

    def sign(self) -> int:
        return -1 if sum(len(c) - 1 for c in self.cycles()) % 2 else 1

    def __str__(self):
        cyc = [c for c in self.cycles() if len(c) > 1]
        return "".join("(" + " ".join(map(str, c)) + ")" for c in cyc) or "()"


def cycle_type_of(p: Permutation) -> CycleType:
    return CycleType(tuple(len(c) for c in p.cycles()))


# ---------------------------------------------------------------------------
# stabilizer chain


class _Chain:
    """Base, strong generators, and per-level orbit transversals."""

    def __init__(self, degree: int, gens: list[tuple], base_prefix: Sequence[int] = ()):
        self.degree = degree
        self.base: list[int] = list(base_prefix)
        self.strong: list[tuple] = [g for g in dict.fromkeys(gens) if not _is_id(g)]
        for s in self.strong:
            if all(s[b] == b for b in self.base):
                self.base.append(_first_moved(s))
        self.level_gens: list[list[tuple]] = []
        self.trans: list[dict[int, tuple]] = []
        self._build()

    def _fixes_prefix(self, s: tuple, i: int) -> bool:
        return all(s[self.base[j]] == self.base[j] for j in range(i))

    def _recompute(self, i: int) -> None:
        while len(self.trans) <= i:
            self.trans.append({})
            self.level_gens.append([])
        gens = [s for s in self.strong if self._fixes_prefix(s, i)]
        b = self.base[i]
        t = {b: tuple(range(self.degree))}
        queue = [b]
        for pt in queue:
            u = t[pt]
            for s in gens:
                img = s[pt]
                if img not in t:
                    t[img] = _mul(u, s)
                    queue.append(img)
        self.level_gens[i] = gens
        self.trans[i] = t

    def sift(self, g: tuple, start: int = 0) -> tuple[tuple, int]:
        for lvl in range(start, len(self.base)):
            b = g[self.base[lvl]]
            t = self.trans[lvl]
            if b not in t:
                return g, lvl
            g = _mul(g, _inv(t[b]))
        return g, len(self.base)

    def _build(self) -> None:
        k = len(self.base)
        for i in range(k):
            self._recompute(i)
        self._close(k - 1)

    def extend(self, g: tuple) -> bool:
        """Add g to the group in place; False if g was already a member."""
        h, j = self.sift(g)
        if _is_id(h):
            return False
        self.strong.append(h)
        if j == len(self.base):
            self.base.append(_first_moved(h))
        for lvl in range(j + 1):
            self._recompute(lvl)
        self._close(j)
        return True

    def _close(self, i: int) -> None:
        while i >= 0:
            self._recompute(i)
            restarted = False
            t = self.trans[i]
            for pt, u in list(t.items()):
                for s in self.level_gens[i]:
                    sg = _mul(_mul(u, s), _inv(t[s[pt]]))
                    if _is_id(sg):
                        continue
                    h, j = self.sift(sg, i + 1)
                    if _is_id(h):
                        continue
                    self.strong.append(h)
                    if j == len(self.base):
                        self.base.append(_first_moved(h))
                    for lvl in range(i + 1, j + 1):
                        self._recompute(lvl)
                    i = j
                    restarted = True
                    break
                if restarted:
                    break
            if not restarted:
                i -= 1
        # drop trailing levels with trivial orbit
        while self.base and len(self.trans[len(self.base) - 1]) == 1:
            self.base.pop()
            self.trans.pop()
            self.level_gens.pop()

    def order(self) -> int:
        return prod(len(t) for t in self.trans)


class PermGroup:
    """A permutation group given by generators; the BSGS is built on first use."""

    def __init__(self, degree: int, generators: Iterable[Permutation] = ()):
        self.degree = degree
        gens = []
        for g in generators:
            if not isinstance(g, Permutation):
                g = Permutation(tuple(g))
            if g.degree != degree:
                raise ValueError(f"generator of degree {g.degree} in a group of degree {degree}")
            gens.append(g)
        self.generators: tuple[Permutation, ...] = tuple(gens)
        self._chain: _Chain | None = None
        self._lock = threading.Lock()

    def __repr__(self):
        return f"PermGroup(degree={self.degree}, generators={len(self.generators)})"

    @property
    def chain(self) -> _Chain:
        if self._chain is None:
            with self._lock:
                if self._chain is None:
                    self._chain = _Chain(self.degree, [g.images for g in self.generators])
        return self._chain

    @property
    def base(self) -> list[int]:
        return list(self.chain.base)

    @property
    def strong_generators(self) -> list[Permutation]:
        return [Permutation(s) for s in self.chain.strong]

    def order(self) -> int:
        return self.chain.order()

    def contains(self, p: Permutation) -> bool:
        if p.degree != self.degree:
            return False
        h, _ = self.chain.sift(p.images)
        return _is_id(h)

    __contains__ = contains

    def is_trivial(self) -> bool:
        return all(g.is_identity() for g in self.generators)

    def iter_elements(self) -> Iterator[tuple]:
        """Every element once, as raw image tuples (via transversal products)."""
        levels = [list(t.values()) for t in self.chain.trans]
        ident = tuple(range(self.degree))
        if not levels:
            yield ident
            return
        for combo in itertools.product(*reversed(levels)):
            g = ident
            for u in combo:
                g = _mul(g, u)
            yield g

    def elements(self, cap: int = DEFAULT_ENUMERATION_CAP) -> list[Permutation]:
        if self.order() > cap:
            raise Overscale(f"group of order {self.order()} exceeds enumeration cap {cap}")
        return [Permutation(g) for g in self.iter_elements()]

    def orbit(self, point: int) -> list[int]:
        seen = {point}
        queue = [point]
        for x in queue:
            for g in self.generators:
                y = g.images[x]
                if y not in seen:
                    seen.add(y)
                    queue.append(y)
        return sorted(seen)

    def orbits(self) -> list[list[int]]:
        out = []
        seen: set[int] = set()
        for x in range(self.degree):
            if x not in seen:
                o = self.orbit(x)
                seen.update(o)
                out.append(o)
        return out

    def is_transitive(self) -> bool:
        return self.degree == 0 or len(self.orbit(0)) == self.degree

    def stabilizer(self, point: int) -> "PermGroup":
        if not 0 <= point < self.degree:
            raise ValueError(f"point {point} outside 0..{self.degree - 1}")
        chain = _Chain(self.degree, [g.images for g in self.generators], base_prefix=[point])
        if chain.base and chain.base[0] == point:
            gens = [s for s in chain.strong if s[point] == point]
        else:
            gens = list(chain.strong)
        return PermGroup(self.degree, [Permutation(s) for s in gens])


def symmetric_group(n: int) -> PermGroup:
    if n < 2:
        return PermGroup(n, [])
    gens = [Permutation.from_cycles(n, [(0, 1)])]
    if n > 2:
        gens.append(Permutation.from_cycles(n, [tuple(range(n))]))
    return PermGroup(n, gens)


def alternating_group(n: int) -> PermGroup:
    gens = [Permutation.from_cycles(n, [(0, 1, i)]) for i in range(2, n)]
    return PermGroup(n, gens)


def cyclic_group(n: int) -> PermGroup:
    if n < 2:
        return PermGroup(n, [])
    return PermGroup(n, [Permutation.from_cycles(n, [tuple(range(n))])])


def trivial_group(n: int) -> PermGroup:
    return PermGroup(n, [])


# ---------------------------------------------------------------------------
# spec-level operations


def group_order(G: PermGroup) -> int:
    return G.order()


def orbits(G: PermGroup) -> list[list[int]]:
    return G.orbits()


def point_stabilizer(G: PermGroup, point: int) -> PermGroup:
    return G.stabilizer(point)


def is_doubly_transitive(G: PermGroup) -> bool:
    if G.degree < 2:
        raise ValueError("double transitivity needs at least 2 points")
    if not G.is_transitive():
        return False
    stab = G.stabilizer(0)
    return len(stab.orbit(1)) == G.degree - 1


def normal_closure(G: PermGroup, gens: Iterable[Permutation]) -> PermGroup:
    """Smallest normal subgroup of G containing ``gens``."""
    chain = _Chain(G.degree, [])
    current: list[Permutation] = []
    queue = []
    for g in gens:
        if chain.extend(g.images):
            current.append(g)
            queue.append(g)
    while queue:
        n = queue.pop()
        for g in G.generators:
            c = g.inverse() * n * g
            if chain.extend(c.images):
                current.append(c)
                queue.append(c)
    N = PermGroup(G.degree, current)
    N._chain = chain
    return N


def commutator(a: Permutation, b: Permutation) -> Permutation:
    return a.inverse() * b.inverse() * a * b


def derived_subgroup(G: PermGroup) -> PermGroup:
    comms = [commutator(a, b) for a, b in itertools.combinations(G.generators, 2)]
    return normal_closure(G, comms)


def is_perfect(G: PermGroup) -> bool:
    return derived_subgroup(G).order() == G.order()


def _class_lists(G: PermGroup, cap: int) -> list[list[tuple]]:
    if G.order() > cap:
        raise Overscale(f"|G| = {G.order()} exceeds the class enumeration cap {cap}")
    gens = [(g.images, _inv(g.images)) for g in G.generators]
    unseen = set(G.iter_elements())
    ident = tuple(range(G.degree))
    classes = []
    order = [ident] + sorted(unseen - {ident})
    for x in order:
        if x not in unseen:
            continue
        cls = [x]
        unseen.discard(x)
        for y in cls:
            for g, gi in gens:
                z = _mul(_mul(gi, y), g)
                if z in unseen:
                    unseen.discard(z)
                    cls.append(z)
        classes.append(cls)
    return classes


def conjugacy_classes(G: PermGroup, cap: int = DEFAULT_ENUMERATION_CAP) -> list[tuple[Permutation, int]]:
    """(representative, size) for each class; the identity class comes first."""
    return [(Permutation(c[0]), len(c)) for c in _class_lists(G, cap)]


def normal_subgroups(
    G: PermGroup,
    cap: int = DEFAULT_ENUMERATION_CAP,
    max_classes: int = DEFAULT_MAX_CLASSES,
) -> list[PermGroup]:
    """All normal subgroups, as unions of conjugacy classes closed under products.

    Each nontrivial class generates a normal closure (a union of classes,
    found by saturating under the class multiplication table); every normal
    subgroup is a join of those, so the lattice is enumerated by joins.
    """
    classes = _class_lists(G, cap)
    r = len(classes)
    if r > max_classes:
        raise Overscale(f"{r} conjugacy classes exceed the limit {max_classes}")
    where = {x: i for i, c in enumerate(classes) for x in c}
    table = [[0] * r for _ in range(r)]
    for i, ci in enumerate(classes):
        rep = ci[0]
        for j, cj in enumerate(classes):
            mask = 0
            for y in cj:
                mask |= 1 << where[_mul(rep, y)]
            table[i][j] = mask

    def close(mask: int) -> int:
        while True:
            new = mask
            idx = [i for i in range(r) if mask >> i & 1]
            for i in idx:
                for j in idx:
                    new |= table[i][j]
            if new == mask:
                return mask
            mask = new

    sizes = [len(c) for c in classes]
    order = G.order()
    atoms = {close(1 | 1 << i) for i in range(r)}
    found = {1}
    frontier = [1]
    while frontier:
        nxt = []
        for m in frontier:
            for a in atoms:
                j = close(m | a)
                if j not in found:
                    found.add(j)
                    nxt.append(j)
        frontier = nxt

    out = []
    for mask in sorted(found, key=lambda m: (sum(sizes[i] for i in range(r) if m >> i & 1), m)):
        members = [x for i in range(r) if mask >> i & 1 for x in classes[i]]
        assert order % len(members) == 0
        out.append(_group_from_elements(G.degree, members))
    return out


def _group_from_elements(degree: int, members: list[tuple]) -> PermGroup:
    gens: list[Permutation] = []
    H = PermGroup(degree, gens)
    for x in sorted(members):
        if _is_id(x):
            continue
        p = Permutation(x)
        if not H.contains(p):
            gens.append(p)
            H = PermGroup(degree, gens)
    assert H.order() == len(members)
    return H


def is_normal_in(N: PermGroup, G: PermGroup) -> bool:
    return all(N.contains(g.inverse() * n * g) for n in N.generators for g in G.generators)


def no_proper_normal_of_index_dividing(G: PermGroup, m: int, **kw) -> bool:
    order = G.order()
    for N in normal_subgroups(G, **kw):
        idx = order // N.order()
        if idx > 1 and m % idx == 0:
            return False
    return True
