import pytest
from hypothesis import settings, strategies as st

from pgradient.words import Presentation, reduce

settings.register_profile("pg", deadline=None, max_examples=60)
settings.load_profile("pg")


def words(ngens=2, max_syllables=8, max_exp=4):
    syl = st.tuples(st.integers(0, ngens - 1), st.integers(-max_exp, max_exp).filter(bool))
    return st.lists(syl, max_size=max_syllables).map(reduce)


def action_table(P: Presentation, perms):
    """Standardized coset table of a point stabilizer, from a transitive permutation action."""
    import numpy as np
    from pgradient.cosets import CosetTable, standardize

    cols = []
    for perm in perms:
        perm = np.asarray(perm)
        inv = np.empty_like(perm)
        inv[perm] = np.arange(len(perm))
        cols += [perm, inv]
    return standardize(CosetTable(P, np.array(cols, dtype=np.int32).T))[0]


def kernel_table(P: Presentation, images, moduli):
    """Coset table of the kernel of G -> Z/n1 x ... x Z/nr; ``images[g]`` is a tuple (or an int if r = 1)."""
    import itertools

    if isinstance(moduli, int):
        moduli = (moduli,)
        images = [(im,) for im in images]
    points = list(itertools.product(*(range(n) for n in moduli)))
    index = {pt: i for i, pt in enumerate(points)}
    perms = []
    for im in images:
        perms.append([index[tuple((x + y) % n for x, y, n in zip(pt, im, moduli))] for pt in points])
    return action_table(P, perms)


@pytest.fixture
def f2():
    return Presentation(("a", "b"))
