"""Brute-force cross-checks that do not go through the lattice machinery.

Normal subgroups of index n are kernels of epimorphisms onto groups of order
n.  Enumerating all generator images in a regular representation of each
target group and standardizing the kernel's coset table counts them directly.
"""

from __future__ import annotations

import itertools
import math

import numpy as np

from .cosets import CosetTable, standardize, todd_coxeter, word_permutation
from .words import Presentation, parse_presentation

def p_groups(p: int, k: int) -> list[Presentation]:
    """One presentation per isomorphism type of group of order p^k (k <= 2, or p = 2 and k = 3)."""
    pp = parse_presentation
    if k == 0:
        return [pp("gens: a\nrel: a")]
    if k == 1:
        return [pp(f"gens: a\nrel: a^{p}")]
    if k == 2:
        return [pp(f"gens: a\nrel: a^{p * p}"), pp(f"gens: a b\nrel: a^{p}\nrel: b^{p}\nrel: [a,b]")]
    if k == 3 and p == 2:
        return [
            pp("gens: a\nrel: a^8"),
            pp("gens: a b\nrel: a^4\nrel: b^2\nrel: [a,b]"),
            pp("gens: a b c\nrel: a^2\nrel: b^2\nrel: c^2\nrel: [a,b]\nrel: [a,c]\nrel: [b,c]"),
            pp("gens: a b\nrel: a^4\nrel: b^2\nrel: (a b)^2"),
            pp("gens: a b\nrel: a^4\nrel: a^2 b^-2\nrel: b^-1 a b a"),
        ]
    raise ValueError(f"no table of groups of order {p}^{k}")


def regular_permutations(Q: Presentation) -> list[np.ndarray]:
    """Right-multiplication permutation of every element of Q on Q."""
    t = todd_coxeter(Q, max_cosets=4096)
    return [word_permutation(t, w) for w in t.reps]


def _perm_order(perm) -> int:
    n = len(perm)
    seen = [False] * n
    order = 1
    for c in range(n):
        size, d = 0, c
        while not seen[d]:
            seen[d] = True
            d = perm[d]
            size += 1
        if size:
            order = math.lcm(order, size)
    return order


def _word_image(perms_of_gens, w, n):
    out = np.arange(n)
    for g, e in w.syllables:
        perm = perms_of_gens[g]
        if e < 0:
            inv = np.empty_like(perm)
            inv[perm] = np.arange(n)
            perm = inv
        for _ in range(abs(e) % _perm_order(perm.tolist())):
            out = perm[out]
    return out


def epimorphism_kernel_keys(G: Presentation, Q: Presentation) -> set[bytes]:
    perms = regular_permutations(Q)
    n = len(perms)
    ident = np.arange(n)
    keys = set()
    for images in itertools.product(range(n), repeat=G.ngens):
        gp = [perms[i] for i in images]
        if any(not np.array_equal(_word_image(gp, r, n), ident) for r in G.relators):
            continue
        # surjective iff the images act transitively on Q
        seen = {0}
        stack = [0]
        while stack:
            c = stack.pop()
            for perm in gp:
                d = int(perm[c])
                if d not in seen:
                    seen.add(d)
                    stack.append(d)
        if len(seen) != n:
            continue
        cols = []
        for perm in gp:
            inv = np.empty_like(perm)
            inv[perm] = ident
            cols += [perm, inv]
        action = np.stack(cols, axis=1) if cols else np.zeros((n, 0), dtype=np.int32)
        _, key = standardize(CosetTable(G, action))
        keys.add(key)
    return keys


def normal_subgroup_count(G: Presentation, p: int, k: int) -> int:
    keys = set()
    for Q in p_groups(p, k):
        keys |= epimorphism_kernel_keys(G, Q)
    return len(keys)
