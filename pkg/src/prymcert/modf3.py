"""F_3 permutation modules and their endomorphism algebras.

Matrices act on column vectors of function values.  A permutation g sends the
basis vector e_x to e_{g(x)}; with the left-to-right product convention of
``permgrp`` this gives ``mat(g * h) == mat(h) @ mat(g)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import NotTransitive, Overscale, PairingMissing
from .permgrp import PermGroup, Permutation

P = 3


def rank_mod3(a: np.ndarray) -> int:
    """Rank over F_3 by Gaussian elimination."""
    a = np.array(a, dtype=np.int64) % P
    rows, cols = a.shape
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(a[r:, c])[0]
        if nz.size == 0:
            continue
        piv = r + nz[0]
        if piv != r:
            a[[r, piv]] = a[[piv, r]]
        if a[r, c] != 1:
            a[r] = (a[r] * 2) % P  # 2 = 2^-1 mod 3
        others = np.nonzero(a[:, c])[0]
        others = others[others != r]
        if others.size:
            a[others] = (a[others] - np.outer(a[others, c], a[r])) % P
        r += 1
    return r


def inverse_mod3(a: np.ndarray) -> np.ndarray:
    n = a.shape[0]
    aug = np.concatenate([np.array(a, dtype=np.int64) % P, np.eye(n, dtype=np.int64)], axis=1)
    for c in range(n):
        nz = np.nonzero(aug[c:, c])[0]
        if nz.size == 0:
            raise ValueError("matrix is singular over F_3")
        piv = c + nz[0]
        aug[[c, piv]] = aug[[piv, c]]
        if aug[c, c] != 1:
            aug[c] = (aug[c] * 2) % P
        others = np.nonzero(aug[:, c])[0]
        others = others[others != c]
        aug[others] = (aug[others] - np.outer(aug[others, c], aug[c])) % P
    return aug[:, n:]


def permutation_matrix(p: Permutation) -> np.ndarray:
    n = p.degree
    mat = np.zeros((n, n), dtype=np.int64)
    for x in range(n):
        mat[p(x), x] = 1
    return mat


@dataclass
class F3Module:
    dim: int
    gens: list[np.ndarray] = field(default_factory=list)

    def __post_init__(self):
        self.gens = [np.array(g, dtype=np.int64) % P for g in self.gens]
        for g in self.gens:
            if g.shape != (self.dim, self.dim):
                raise ValueError(f"generator of shape {g.shape} in a module of dimension {self.dim}")
            if rank_mod3(g) != self.dim:
                raise ValueError("generator matrix is not invertible over F_3")


def permutation_module_f3(G: PermGroup) -> F3Module:
    gens = [permutation_matrix(g) for g in G.generators] or [np.eye(G.degree, dtype=np.int64)]
    return F3Module(G.degree, gens)


@dataclass
class Decomposition:
    """F_3^{2m} = W^- (odd) + F_3*1 (constants) + W^{+,0} (even, sum zero)."""

    m: int
    odd: np.ndarray  # 2m x m inclusion
    constants: np.ndarray  # 2m x 1
    even_zero: np.ndarray  # 2m x (m-1)
    parts: dict[str, F3Module]

    @property
    def dims(self) -> tuple[int, int, int]:
        return self.odd.shape[1], self.constants.shape[1], self.even_zero.shape[1]


def odd_basis(m: int) -> np.ndarray:
    """Columns e_{+beta_i} - e_{-beta_i}, i = 0..m-1."""
    b = np.zeros((2 * m, m), dtype=np.int64)
    for i in range(m):
        b[i, i] = 1
        b[m + i, i] = P - 1
    return b


def even_zero_basis(m: int) -> np.ndarray:
    b = np.zeros((2 * m, m - 1), dtype=np.int64)
    for i in range(m - 1):
        b[i, i] = b[m + i, i] = 1
        b[i + 1, i] = b[m + i + 1, i] = P - 1
    return b


def negation_matrix(m: int) -> np.ndarray:
    perm = Permutation(tuple(list(range(m, 2 * m)) + list(range(m))))
    return permutation_matrix(perm)


def split_odd_even(M: F3Module, m: int) -> Decomposition:
    if M.dim != 2 * m:
        raise PairingMissing(f"module of dimension {M.dim} is not on 2m = {2 * m} signed points")
    neg = negation_matrix(m)
    for g in M.gens:
        if not np.array_equal((g @ neg) % P, (neg @ g) % P):
            raise PairingMissing("a generator does not commute with negation beta -> -beta")
    odd = odd_basis(m)
    const = np.ones((2 * m, 1), dtype=np.int64)
    even0 = even_zero_basis(m)
    full = np.concatenate([odd, const, even0], axis=1)
    if rank_mod3(full) != 2 * m:
        raise ValueError(f"the three pieces do not span F_3^{{2m}}: 3 divides m = {m}")
    full_inv = inverse_mod3(full)
    blocks = {"odd": (0, m), "constants": (m, m + 1), "even_zero": (m + 1, 2 * m)}
    parts: dict[str, list[np.ndarray]] = {k: [] for k in blocks}
    for g in M.gens:
        conj = (full_inv @ g @ full) % P
        for name, (lo, hi) in blocks.items():
            off = conj[lo:hi].copy()
            off[:, lo:hi] = 0
            if off.any():
                raise ValueError(f"summand {name!r} is not invariant")
            parts[name].append(conj[lo:hi, lo:hi])
    mods = {k: F3Module(hi - lo, parts[k]) for k, (lo, hi) in blocks.items()}
    return Decomposition(m, odd, const, even0, mods)


def commutant_dimension(M: F3Module, max_dim: int = 64) -> int:
    """dim over F_3 of {X : X A = A X for every generator A}."""
    n = M.dim
    if n > max_dim:
        raise Overscale(f"module dimension {n} exceeds {max_dim}")
    if not M.gens:
        return n * n
    eye = np.eye(n, dtype=np.int64)
    # row-major vec: vec(X A) = (I kron A^T) vec X, vec(A X) = (A kron I) vec X
    blocks = [(np.kron(eye, A.T) - np.kron(A, eye)) % P for A in M.gens]
    system = np.concatenate(blocks, axis=0)
    return n * n - rank_mod3(system)


def stabilizer_orbit_count(G: PermGroup) -> int:
    if not G.is_transitive():
        raise NotTransitive("group is not transitive on its points")
    return len(G.stabilizer(0).orbits())
