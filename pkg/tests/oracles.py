"""Independent brute-force oracles shared by the test modules."""

from prymcert.permgrp import Permutation
from prymcert.signedgrp import SignedPerm, weyl_group_D


def closure(gens, n):
    """Independent oracle: breadth-first closure of the generators."""
    ident = tuple(range(n))
    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for a in frontier:
            for g in gens:
                b = tuple(g.images[a[i]] for i in range(n))
                if b not in seen:
                    seen.add(b)
                    nxt.append(b)
        frontier = nxt
    return seen


def _index_closure(start, gens, table):
    group = set(start)
    frontier = list(group)
    while frontier:
        nxt = []
        for a in frontier:
            for g in gens:
                b = table[a][g]
                if b not in group:
                    group.add(b)
                    nxt.append(b)
        frontier = nxt
    return frozenset(group)


def kernel_trivial_subgroups(m):
    """All subgroups C of W(D_m) meeting the sign kernel trivially, as element lists.

    Every subgroup is a join of cyclic subgroups, and every intermediate join
    of a kernel-trivial subgroup is kernel-trivial, so a breadth-first search
    over joins finds them all.
    """
    W = weyl_group_D(m)
    elements = [SignedPerm.from_permutation(Permutation(e)) for e in W.iter_elements()]
    index = {x: i for i, x in enumerate(elements)}
    table = [[index[a * b] for b in elements] for a in elements]
    ident = index[SignedPerm.identity(m)]
    in_kernel = [x.s.is_identity() and i != ident for i, x in enumerate(elements)]
    cyclic = [i for i in range(len(elements))
              if not any(in_kernel[j] for j in _index_closure([ident], [i], table))]
    found = {frozenset([ident])}
    frontier = [(frozenset([ident]), ())]
    while frontier:
        nxt = []
        for S, gens in frontier:
            for i in cyclic:
                if i in S:
                    continue
                J = _index_closure(S, gens + (i,), table)
                if J in found or any(in_kernel[j] for j in J):
                    continue
                found.add(J)
                nxt.append((J, gens + (i,)))
        frontier = nxt
    return [[elements[i] for i in S] for S in found]
