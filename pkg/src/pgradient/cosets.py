"""Coset tables of finite-index subgroups.

Cosets are right cosets ``H w``; coset 0 is ``H``.  Column ``2g`` holds the
action of generator ``g`` and column ``2g+1`` the action of its inverse.
"""

from __future__ import annotations

import hashlib
from collections import defaultdict
from dataclasses import dataclass
from functools import cached_property
from typing import Callable

import numpy as np

from .errors import EnumerationError, IntegrityError
from .words import Presentation, Word, invert, multiply

DEFAULT_MAX_COSETS = 1 << 20


@dataclass(frozen=True, eq=False)
class CosetTable:
    presentation: Presentation
    action: np.ndarray

    def __post_init__(self):
        a = np.ascontiguousarray(self.action, dtype=np.int32)
        a.flags.writeable = False
        object.__setattr__(self, "action", a)
        if a.ndim != 2 or a.shape[1] != 2 * self.presentation.ngens or a.shape[0] < 1:
            raise ValueError(f"table shape {a.shape} does not fit {self.presentation.ngens} generators")

    @property
    def n_cosets(self) -> int:
        return self.action.shape[0]

    @property
    def ngens(self) -> int:
        return self.presentation.ngens

    @cached_property
    def rows(self) -> list[list[int]]:
        return self.action.tolist()

    @cached_property
    def reps(self) -> tuple[Word, ...]:
        """Schreier (prefix-closed) transversal from a breadth-first scan of the table."""
        reps: list = [None] * self.n_cosets
        reps[0] = Word()
        order = [0]
        rows = self.rows
        for c in order:
            for col, d in enumerate(rows[c]):
                if reps[d] is None:
                    reps[d] = multiply(reps[c], Word.gen(col >> 1, -1 if col & 1 else 1))
                    order.append(d)
        if len(order) != self.n_cosets:
            raise IntegrityError("coset table is not transitive")
        return tuple(reps)

    def key(self) -> bytes:
        return self.action.astype("<i4").tobytes()

    def dump(self) -> str:
        return "".join("\t".join(map(str, row)) + "\n" for row in self.rows)


def key_hash(key: bytes) -> str:
    """Stable 64-bit digest of a standardized key, for human diffing."""
    return hashlib.blake2b(key, digest_size=8).hexdigest()


def whole_group(P: Presentation) -> CosetTable:
    return CosetTable(P, np.zeros((1, 2 * P.ngens), dtype=np.int32))


# ---------------------------------------------------------------- tracing

def _cycle_length(rows, c, col):
    n, d = 1, rows[c][col]
    while d != c:
        d = rows[d][col]
        n += 1
    return n


def _walk(rows, c, col, steps):
    if steps > len(rows):
        steps %= _cycle_length(rows, c, col)
    for _ in range(steps):
        c = rows[c][col]
    return c


def trace(t: CosetTable, w: Word, start: int = 0) -> int:
    """Image of coset ``start`` under right multiplication by ``w``."""
    rows = t.rows
    c = start
    for g, e in w.syllables:
        c = _walk(rows, c, 2 * g if e > 0 else 2 * g + 1, abs(e))
    return c


def _perm_power(perm: np.ndarray, e: int) -> np.ndarray:
    result = np.arange(perm.size, dtype=perm.dtype)
    base = perm
    while e:
        if e & 1:
            result = base[result]
        base = base[base]
        e >>= 1
    return result


def word_permutation(t: CosetTable, w: Word) -> np.ndarray:
    """Images of every coset under ``w`` at once (``out[c] = trace(t, w, c)``)."""
    out = np.arange(t.n_cosets, dtype=np.int32)
    for g, e in w.syllables:
        col = t.action[:, 2 * g if e > 0 else 2 * g + 1]
        out = _perm_power(col, abs(e))[out]
    return out


def check_table(t: CosetTable) -> None:
    """Raise IntegrityError unless ``t`` is complete, consistent and closed under the relators."""
    a = t.action
    n = t.n_cosets
    if a.min() < 0 or a.max() >= n:
        raise IntegrityError("table has undefined or out-of-range entries")
    ident = np.arange(n)
    for g in range(t.ngens):
        if not np.array_equal(a[a[:, 2 * g], 2 * g + 1], ident):
            raise IntegrityError(f"columns of generator {g} and its inverse are not mutually inverse")
    for r in t.presentation.relators:
        if not np.array_equal(word_permutation(t, r), ident):
            raise IntegrityError(f"relator {t.presentation.format(r)} does not fix every coset")
    reps = t.reps
    for i, w in enumerate(reps):
        if trace(t, w) != i:
            raise IntegrityError("transversal does not trace to its coset")


# ---------------------------------------------------------------- standardization

def standardize(t: CosetTable) -> tuple[CosetTable, bytes]:
    """Renumber cosets by first appearance (rows in order, columns g1, g1^-1, g2, ...)."""
    rows = t.rows
    n = len(rows)
    new = [-1] * n
    new[0] = 0
    order = [0]
    for c in order:
        for d in rows[c]:
            if new[d] < 0:
                new[d] = len(order)
                order.append(d)
    if len(order) != n:
        raise IntegrityError("coset table is not transitive")
    perm = np.asarray(new, dtype=np.int32)
    out = perm[t.action[order]]
    std = CosetTable(t.presentation, out)
    return std, std.key()


# ---------------------------------------------------------------- Todd-Coxeter

def _cyclic_conjugates(P: Presentation):
    by_first = defaultdict(set)
    for r in P.relators:
        if not r:
            continue
        for w in (r, invert(r)):
            cols = list(w.columns())
            for i in range(len(cols)):
                rot = tuple(cols[i:] + cols[:i])
                by_first[rot[0]].add(rot)
    return {k: sorted(v) for k, v in by_first.items()}


class _Enumerator:
    """Felsch-style enumeration: define cosets in order, only deduce from relator scans."""

    def __init__(self, P: Presentation, max_cosets: int):
        self.ncols = 2 * P.ngens
        self.table = [[-1] * self.ncols]
        self.parent = [0]
        self.live = 1
        self.max_cosets = max_cosets
        self.deductions = []
        self.conj = _cyclic_conjugates(P)

    @staticmethod
    def inv(col):
        return col ^ 1

    def find(self, c):
        parent = self.parent
        root = c
        while parent[root] != root:
            root = parent[root]
        while parent[c] != root:
            parent[c], c = root, parent[c]
        return root

    def define(self, c, col):
        if self.live >= self.max_cosets:
            raise EnumerationError(f"enumeration did not close within {self.max_cosets} cosets")
        d = len(self.table)
        self.table.append([-1] * self.ncols)
        self.parent.append(d)
        self.live += 1
        self.table[c][col] = d
        self.table[d][col ^ 1] = c
        self.deductions.append((c, col))

    def scan(self, c, cols, fill=False):
        table = self.table
        r = len(cols)
        while True:
            f, i = c, 0
            while i < r and table[f][cols[i]] >= 0:
                f = table[f][cols[i]]
                i += 1
            if i == r:
                if f != c:
                    self.coincidence(f, c)
                return
            b, j = c, r - 1
            while j >= i and table[b][cols[j] ^ 1] >= 0:
                b = table[b][cols[j] ^ 1]
                j -= 1
            if j < i:
                self.coincidence(f, b)
                return
            if j == i:
                table[f][cols[i]] = b
                table[b][cols[i] ^ 1] = f
                self.deductions.append((f, cols[i]))
                return
            if not fill:
                return
            self.define(f, cols[i])

    def merge(self, a, b, queue):
        a, b = self.find(a), self.find(b)
        if a != b:
            lo, hi = min(a, b), max(a, b)
            self.parent[hi] = lo
            self.live -= 1
            queue.append(hi)

    def coincidence(self, a, b):
        table = self.table
        queue = []
        self.merge(a, b, queue)
        i = 0
        while i < len(queue):
            g = queue[i]
            i += 1
            for col in range(self.ncols):
                d = table[g][col]
                if d < 0:
                    continue
                table[d][col ^ 1] = -1
                mu, nu = self.find(g), self.find(d)
                if table[mu][col] >= 0:
                    self.merge(nu, table[mu][col], queue)
                elif table[nu][col ^ 1] >= 0:
                    self.merge(mu, table[nu][col ^ 1], queue)
                else:
                    table[mu][col] = nu
                    table[nu][col ^ 1] = mu
                    self.deductions.append((mu, col))

    def process_deductions(self):
        table = self.table
        while self.deductions:
            c, col = self.deductions.pop()
            if self.find(c) != c:
                continue
            for w in self.conj.get(col, ()):
                if self.find(c) != c:
                    break
                self.scan(c, w)
            d = table[c][col]
            if d >= 0 and self.find(d) == d:
                for w in self.conj.get(col ^ 1, ()):
                    if self.find(d) != d:
                        break
                    self.scan(d, w)

    def run(self, subgroup_gens):
        for w in subgroup_gens:
            cols = list(w.columns())
            if cols:
                self.scan(0, cols, fill=True)
                self.process_deductions()
        c = 0
        while c < len(self.table):
            for col in range(self.ncols):
                if self.find(c) != c:
                    break
                if self.table[c][col] < 0:
                    self.define(c, col)
                    self.process_deductions()
            c += 1
        alive = [c for c in range(len(self.table)) if self.find(c) == c]
        index = {c: i for i, c in enumerate(alive)}
        return [[index[self.find(self.table[c][col])] for col in range(self.ncols)] for c in alive]


def todd_coxeter(P: Presentation, subgroup_gens=(), max_cosets: int = DEFAULT_MAX_COSETS) -> CosetTable:
    """Enumerate the cosets of the subgroup generated by ``subgroup_gens``; returns a standardized table."""
    if max_cosets < 1:
        raise ValueError("max_cosets must be positive")
    rows = _Enumerator(P, max_cosets).run(subgroup_gens)
    std, _ = standardize(CosetTable(P, np.asarray(rows, dtype=np.int32).reshape(len(rows), 2 * P.ngens)))
    check_table(std)
    return std


# ---------------------------------------------------------------- subgroup structure

def schreier_words(t: CosetTable):
    """Nontrivial Schreier generators ``reps[c] g reps[c g]^-1`` keyed by (coset, generator)."""
    reps = t.reps
    rows = t.rows
    out = {}
    for c in range(t.n_cosets):
        for g in range(t.ngens):
            w = multiply(multiply(reps[c], Word.gen(g)), invert(reps[rows[c][2 * g]]))
            if w:
                out[(c, g)] = w
    return out


def is_normal(t: CosetTable) -> bool:
    """H is normal iff ``g^-1 s g`` lies in H for every generator g and Schreier generator s."""
    for s in schreier_words(t).values():
        for g in range(t.ngens):
            x = Word.gen(g)
            if trace(t, multiply(multiply(invert(x), s), x)) != 0:
                return False
    return True


def element_order(t: CosetTable, x: Word) -> int:
    """Least m >= 1 with ``x^m`` in H."""
    perm = word_permutation(t, x)
    m, c = 1, int(perm[0])
    while c != 0:
        c = int(perm[c])
        m += 1
    return m


def orbit_transversal(t: CosetTable, x: Word) -> tuple[int, list[Word]]:
    """Order m of xH and representatives of the <x>-orbits on cosets.

    The orbit of ``H t`` is the set of H-cosets inside ``t <x> H``, so the
    representatives index the conjugates ``t x^m t^-1`` that generate the
    normal closure of ``x^m`` as a normal subgroup of H.
    """
    if not is_normal(t):
        raise ValueError("orbit transversal needs a normal subgroup")
    perm = word_permutation(t, x).tolist()
    m = element_order(t, x)
    seen = [False] * t.n_cosets
    T = []
    for c in range(t.n_cosets):
        if seen[c]:
            continue
        size, d = 0, c
        while not seen[d]:
            seen[d] = True
            d = perm[d]
            size += 1
        if size != m:
            raise IntegrityError(f"orbit of coset {c} has size {size}, expected {m}")
        T.append(t.reps[c])
    if len(T) * m != t.n_cosets:
        raise IntegrityError("orbit sizes do not tile the cosets")
    return m, T


def descend(t: CosetTable, p: int, lam_eval: Callable[[int, int], int]) -> CosetTable:
    """Table of the preimage in H of ker(lam), an index-p subgroup of H.

    ``lam_eval(c, g)`` is lam applied to the Schreier generator of edge
    (c, g), i.e. to ``reps[c] g reps[c g]^-1`` modulo [H,H]H^p.  Cosets of
    the new subgroup are pairs (c, v) numbered ``c*p + v``.
    """
    n, k = t.n_cosets, t.ngens
    vals = np.array([[lam_eval(c, g) % p for g in range(k)] for c in range(n)], dtype=np.int64).reshape(n, k)
    a = t.action.astype(np.int64)
    v = np.arange(p, dtype=np.int64)
    out = np.empty((n * p, 2 * k), dtype=np.int64)
    for g in range(k):
        fwd = a[:, 2 * g]
        bwd = a[:, 2 * g + 1]
        # (c, v) . g = (c g, v + lam(s(c, g)))
        out[:, 2 * g] = (fwd[:, None] * p + (v[None, :] + vals[:, g][:, None]) % p).reshape(-1)
        # (c, v) . g^-1 = (c', v - lam(s(c', g))) with c' = c g^-1
        out[:, 2 * g + 1] = (bwd[:, None] * p + (v[None, :] - vals[bwd, g][:, None]) % p).reshape(-1)
    child = CosetTable(t.presentation, out)
    ident = np.arange(n * p)
    for r in t.presentation.relators:
        if not np.array_equal(word_permutation(child, r), ident):
            raise IntegrityError(
                f"lam_eval is inconsistent: relator {t.presentation.format(r)} moves a coset")
    std, _ = standardize(child)
    return std
