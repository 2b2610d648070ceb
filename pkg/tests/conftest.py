"""Shared helpers for the test suite: seeded random digraph generators."""

import numpy as np

from rnrspread import Digraph


def random_digraph(rng, n, density=0.5):
    """Random unweighted digraph with independent arcs."""
    w = (rng.random((n, n)) < density).astype(float)
    np.fill_diagonal(w, 0.0)
    return Digraph(w)


def random_weighted_digraph(rng, n):
    w = rng.random((n, n))
    np.fill_diagonal(w, 0.0)
    return Digraph(w)


def random_permutation_digraph(rng, n):
    """Digraph of a random permutation with fixed points dropped; balanced."""
    perm = rng.permutation(n)
    w = np.zeros((n, n))
    for i, j in enumerate(perm):
        if i != j:
            w[i, j] = 1.0
    return Digraph(w)


def random_balanced_weighted(rng, n, parts=4):
    """Convex combination of permutation digraphs: balanced, fractional weights."""
    coeffs = rng.dirichlet(np.ones(parts))
    w = np.zeros((n, n))
    for c in coeffs:
        w += c * random_permutation_digraph(rng, n).w
    return Digraph(w)
