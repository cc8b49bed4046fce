"""Reidemeister-Schreier rewriting and the mod-p abelianization of a subgroup.

For a subgroup H given by a coset table with Schreier transversal ``reps``,
the edge (c, g) carries the Schreier generator ``reps[c] g reps[c g]^-1``.
Tree edges carry the identity; the remaining edges are numbered in
(coset, generator) order.  A word in H is rewritten by tracing it from coset
0 and reading off the edges it crosses.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .cosets import CosetTable, schreier_words
from .fp_linalg import FpMatrix, check_prime, rref
from .words import Presentation, Word, multiply, power, reduce

TRIVIAL = -1


@dataclass(frozen=True, eq=False)
class SchreierData:
    table: CosetTable
    sgen_index: np.ndarray  # (n_cosets, ngens) -> generator id or TRIVIAL
    words: tuple[Word, ...]  # the Schreier generators as words in G
    edges: tuple[tuple[int, int], ...]  # (coset, generator) of each id

    @property
    def n_sgens(self) -> int:
        return len(self.words)

    @cached_property
    def _index_rows(self):
        return self.sgen_index.tolist()

    def names(self) -> tuple[str, ...]:
        P = self.table.presentation
        return tuple(f"{P.generators[g]}_{c}" for c, g in self.edges)


def schreier_data(t: CosetTable) -> SchreierData:
    sw = schreier_words(t)
    idx = np.full((t.n_cosets, t.ngens), TRIVIAL, dtype=np.int64)
    words, edges = [], []
    for (c, g), w in sorted(sw.items()):
        idx[c, g] = len(words)
        words.append(w)
        edges.append((c, g))
    return SchreierData(t, idx, tuple(words), tuple(edges))


# ---------------------------------------------------------------- rewriting

def _walk_edges(sd: SchreierData, c: int, g: int, sign: int, count: int):
    rows = sd.table.rows
    idx = sd._index_rows
    col = 2 * g if sign > 0 else 2 * g + 1
    edges = []
    for _ in range(count):
        if sign > 0:
            s = idx[c][g]
            c = rows[c][col]
        else:
            c = rows[c][col]
            s = idx[c][g]
        if s != TRIVIAL:
            edges.append((s, sign))
    return edges, c


def _steps(sd: SchreierData, c: int, g: int, e: int):
    """Edges crossed by the syllable g^e read from coset c.

    Returns ``(lap, laps, tail, end)``: the syllable crosses ``lap`` ``laps``
    times and then ``tail``.  Syllables longer than the table go round the
    g-cycle through c, so only one lap is ever walked.
    """
    sign = 1 if e > 0 else -1
    steps = abs(e)
    if steps <= sd.table.n_cosets:
        edges, end = _walk_edges(sd, c, g, sign, steps)
        return edges, 1, [], end
    rows = sd.table.rows
    col = 2 * g
    length, d = 1, rows[c][col]
    while d != c:
        d = rows[d][col]
        length += 1
    lap, _ = _walk_edges(sd, c, g, sign, length)
    laps, rest = divmod(steps, length)
    tail, end = _walk_edges(sd, c, g, sign, rest)
    return lap, laps, tail, end


def rewrite_from(sd: SchreierData, w: Word, start: int = 0) -> tuple[Word, int]:
    """Rewrite ``w`` read from coset ``start``; returns the word in Schreier generators and the end coset."""
    out = Word()
    c = start
    for g, e in w.syllables:
        lap, laps, tail, c = _steps(sd, c, g, e)
        out = multiply(out, power(reduce(lap), laps))
        out = multiply(out, reduce(tail))
    return out, c


def rewrite(sd: SchreierData, w: Word) -> Word:
    """Reidemeister rewriting of an element of H into the Schreier generators."""
    out, end = rewrite_from(sd, w, 0)
    if end != 0:
        raise ValueError("word is not in the subgroup")
    return out


def exponent_vector(sd: SchreierData, w: Word, start: int = 0) -> tuple[list[int], int]:
    """Abelianized rewrite: exponent sum of each Schreier generator (unbounded ints)."""
    vec = [0] * sd.n_sgens
    c = start
    for g, e in w.syllables:
        lap, laps, tail, c = _steps(sd, c, g, e)
        for s, sign in lap:
            vec[s] += sign * laps
        for s, sign in tail:
            vec[s] += sign
    return vec, c


# ---------------------------------------------------------------- presentations

def _eliminate(ngens: int, relators: list[Word]):
    """Drop generators killed by a relator ``s`` or ``s^-1``; return (kept ids, relators)."""
    dead = set()
    rels = list(relators)
    while True:
        found = None
        for r in rels:
            if len(r.syllables) == 1 and abs(r.syllables[0][1]) == 1:
                found = r.syllables[0][0]
                break
        if found is None:
            break
        dead.add(found)
        rels = [reduce((g, e) for g, e in r.syllables if g != found) for r in rels]
    kept = [s for s in range(ngens) if s not in dead]
    renum = {s: i for i, s in enumerate(kept)}
    out, seen = [], set()
    for r in rels:
        if not r:
            continue
        r = Word(tuple((renum[g], e) for g, e in r.syllables))
        if r not in seen:
            seen.add(r)
            out.append(r)
    return kept, out


@dataclass(frozen=True)
class SubgroupPresentation:
    presentation: Presentation
    kept: tuple[int, ...]  # Schreier generator id of each generator of ``presentation``

    def translate(self, w: Word) -> Word:
        """Move a word in the Schreier generators onto this presentation (eliminated ones are trivial)."""
        renum = {s: i for i, s in enumerate(self.kept)}
        return reduce((renum[g], e) for g, e in w.syllables if g in renum)


def subgroup_presentation_full(sd: SchreierData) -> SubgroupPresentation:
    P = sd.table.presentation
    rels = []
    for r in P.relators:
        for c in range(sd.table.n_cosets):
            w, end = rewrite_from(sd, r, c)
            assert end == c
            rels.append(w)
    kept, out = _eliminate(sd.n_sgens, rels)
    names = sd.names()
    return SubgroupPresentation(Presentation(tuple(names[s] for s in kept), tuple(out)), tuple(kept))


def subgroup_presentation(sd: SchreierData) -> Presentation:
    """Presentation of H on its nontrivial Schreier generators.

    Relators are the rewrites of ``reps[c] r reps[c]^-1`` for every relator r
    and coset c; generators equal to the identity by a one-letter relator are
    removed.
    """
    return subgroup_presentation_full(sd).presentation


# ---------------------------------------------------------------- mod-p data

def relator_matrix(P: Presentation, p: int) -> FpMatrix:
    rows = [[x % p for x in r.exponent_sums(P.ngens)] for r in P.relators]
    return FpMatrix(p, np.array(rows, dtype=np.int64).reshape(len(rows), P.ngens))


def dp(P: Presentation, p: int) -> int:
    """Dimension of G/[G,G]G^p over F_p."""
    check_prime(p)
    M = relator_matrix(P, p)
    return P.ngens - (len(rref(M)[1]) if M.rows else 0)


@dataclass(frozen=True, eq=False)
class ModPAbelianization:
    p: int
    dim: int
    relator_matrix: FpMatrix
    basis: tuple[int, ...]  # Schreier generator ids forming a basis of V
    projection: np.ndarray  # (n_sgens, dim): coordinates of each Schreier generator in V
    action: tuple[FpMatrix, ...] | None  # per generator of G: v -> v @ A is h -> g^-1 h g

    def coordinates(self, vec) -> np.ndarray:
        return (np.asarray(vec, dtype=object) % self.p).astype(np.int64) @ self.projection % self.p


def mod_p_data(sd: SchreierData, p: int, with_action: bool = True) -> ModPAbelianization:
    check_prime(p)
    t = sd.table
    P = t.presentation
    n = sd.n_sgens
    rows = []
    for r in P.relators:
        for c in range(t.n_cosets):
            vec, end = exponent_vector(sd, r, c)
            assert end == c
            row = [x % p for x in vec]
            if any(row):
                rows.append(row)
    M = FpMatrix(p, np.array(rows, dtype=np.int64).reshape(len(rows), n))
    R, pivots = rref(M) if M.rows else (np.zeros((0, n), dtype=np.int64), [])
    pivset = set(pivots)
    basis = tuple(s for s in range(n) if s not in pivset)
    dim = len(basis)
    col_of = {s: i for i, s in enumerate(basis)}
    proj = np.zeros((n, dim), dtype=np.int64)
    for s in basis:
        proj[s, col_of[s]] = 1
    for r, c in enumerate(pivots):
        # s_c = -sum_{free f} R[r, f] s_f in V
        proj[c] = (-R[r, list(basis)]) % p if dim else proj[c]
    action = None
    if with_action:
        mats = []
        for g in range(P.ngens):
            # g^-1 w g read from coset 0 abelianizes to w read from coset 0.g^-1
            start = t.rows[0][2 * g + 1]
            A = np.zeros((dim, dim), dtype=np.int64)
            for i, s in enumerate(basis):
                vec, end = exponent_vector(sd, sd.words[s], start)
                assert end == start
                A[i] = (np.array([x % p for x in vec], dtype=np.int64).reshape(1, n) @ proj % p) if n else A[i]
            mats.append(FpMatrix(p, A))
        action = tuple(mats)
    return ModPAbelianization(p, dim, M, basis, proj, action)


def functional_edge_values(sd: SchreierData, mpd: ModPAbelianization, lam) -> np.ndarray:
    """lam evaluated on the Schreier generator of every edge, as an (n_cosets, ngens) array."""
    coeffs = np.asarray(lam.coefficients, dtype=np.int64)
    per_sgen = (mpd.projection @ coeffs) % mpd.p if sd.n_sgens else np.zeros(0, dtype=np.int64)
    idx = sd.sgen_index
    vals = np.zeros(idx.shape, dtype=np.int64)
    mask = idx != TRIVIAL
    vals[mask] = per_sgen[idx[mask]]
    return vals
