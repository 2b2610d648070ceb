"""Weighted digraph representation, combinators, and DGF file I/O.

A digraph of order n is stored as a dense n x n weight matrix with zero
diagonal and weights in [0, 1].  Unweighted digraphs are exactly those with
0/1 weights.  All operations are pure; ``Digraph`` values are immutable.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

# Slack for weights produced by convex arithmetic before clipping.
_WEIGHT_EPS = 1e-12

DEFAULT_BALANCE_TOL = 1e-9


class DgfError(ValueError):
    """Raised on malformed DGF text."""


@dataclass(frozen=True, eq=False)
class Digraph:
    """Simple weighted digraph: ``w[i, j]`` is the weight of the arc i -> j."""

    w: np.ndarray

    def __post_init__(self):
        w = np.array(self.w, dtype=float)
        if w.ndim != 2 or w.shape[0] != w.shape[1] or w.shape[0] < 1:
            raise ValueError("weight matrix must be square and non-empty")
        if not np.all(np.isfinite(w)):
            raise ValueError("arc weights must be finite")
        if np.any(np.diagonal(w) != 0.0):
            raise ValueError("loop arcs are not allowed")
        if w.min() < -_WEIGHT_EPS or w.max() > 1.0 + _WEIGHT_EPS:
            raise ValueError("arc weights must lie in [0, 1]")
        np.clip(w, 0.0, 1.0, out=w)
        w.setflags(write=False)
        object.__setattr__(self, "w", w)

    @property
    def n(self) -> int:
        return self.w.shape[0]

    def is_unweighted(self) -> bool:
        return bool(np.all((self.w == 0.0) | (self.w == 1.0)))

    def arc_count(self) -> int:
        """Number of arcs with nonzero weight."""
        return int(np.count_nonzero(self.w))

    def same_as(self, other: "Digraph", tol: float = 0.0) -> bool:
        return self.n == other.n and bool(np.all(np.abs(self.w - other.w) <= tol))

    def __repr__(self):
        return f"Digraph(n={self.n}, arcs={self.arc_count()})"


def digraph_from_arcs(n: int, arcs, weight: float = 1.0) -> Digraph:
    """Build a digraph from 0-indexed ``(i, j)`` pairs, all with one weight."""
    w = np.zeros((n, n))
    for i, j in arcs:
        w[i, j] = weight
    return Digraph(w)


def degrees(g: Digraph, v: int) -> tuple[float, float]:
    """Return ``(d_out, d_in)`` of vertex ``v``."""
    if not 0 <= v < g.n:
        raise IndexError(f"vertex index {v} out of range for order {g.n}")
    return float(g.w[v, :].sum()), float(g.w[:, v].sum())


def out_degrees(g: Digraph) -> np.ndarray:
    return g.w.sum(axis=1)


def in_degrees(g: Digraph) -> np.ndarray:
    return g.w.sum(axis=0)


def laplacian(g: Digraph) -> np.ndarray:
    """Laplacian matrix D - A, with D the diagonal of out-degrees."""
    L = -g.w.copy()
    np.fill_diagonal(L, g.w.sum(axis=1))
    return L


def complement(g: Digraph) -> Digraph:
    """Replace every off-diagonal weight by 1 - w; involution on digraphs."""
    w = 1.0 - g.w
    np.fill_diagonal(w, 0.0)
    return Digraph(w)


def is_balanced(g: Digraph, tol: float = DEFAULT_BALANCE_TOL) -> bool:
    """True iff out-degree equals in-degree at every vertex, within ``tol``."""
    if tol < 0:
        raise ValueError("tolerance must be nonnegative")
    return bool(np.all(np.abs(out_degrees(g) - in_degrees(g)) <= tol))


def directed_join(g1: Digraph, g2: Digraph) -> Digraph:
    """Disjoint union plus weight-1 arcs from every g1 vertex to every g2 vertex."""
    n1, n2 = g1.n, g2.n
    w = np.zeros((n1 + n2, n1 + n2))
    w[:n1, :n1] = g1.w
    w[n1:, n1:] = g2.w
    w[:n1, n1:] = 1.0
    return Digraph(w)


def disjoint_union(g1: Digraph, g2: Digraph) -> Digraph:
    n1, n2 = g1.n, g2.n
    w = np.zeros((n1 + n2, n1 + n2))
    w[:n1, :n1] = g1.w
    w[n1:, n1:] = g2.w
    return Digraph(w)


def convex_combination(parts) -> Digraph:
    """Entrywise convex combination of same-order digraphs.

    ``parts`` is a sequence of ``(coefficient, digraph)`` pairs with
    nonnegative coefficients summing to 1 within 1e-12.
    """
    parts = list(parts)
    if not parts:
        raise ValueError("convex combination needs at least one part")
    coeffs = np.array([c for c, _ in parts], dtype=float)
    if np.any(coeffs < 0):
        raise ValueError("coefficients must be nonnegative")
    if abs(coeffs.sum() - 1.0) > 1e-12:
        raise ValueError(f"coefficients sum to {coeffs.sum()!r}, expected 1")
    n = parts[0][1].n
    if any(g.n != n for _, g in parts):
        raise ValueError("all digraphs in a convex combination must share one order")
    w = np.zeros((n, n))
    for c, g in parts:
        w += c * g.w
    return Digraph(w)


def read_dgf(text: str) -> Digraph:
    """Parse DGF text: comments start '#', then "n <order>" and "e i j [w]" lines."""
    n = None
    arcs: dict[tuple[int, int], float] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        fields = line.split()
        if n is None:
            if fields[0] != "n" or len(fields) != 2:
                raise DgfError(f"line {lineno}: expected 'n <order>', got {line!r}")
            try:
                n = int(fields[1])
            except ValueError:
                raise DgfError(f"line {lineno}: order is not an integer") from None
            if n < 1:
                raise DgfError(f"line {lineno}: order must be positive")
            continue
        if fields[0] != "e" or len(fields) not in (3, 4):
            raise DgfError(f"line {lineno}: expected 'e <i> <j> [<weight>]', got {line!r}")
        try:
            i, j = int(fields[1]), int(fields[2])
        except ValueError:
            raise DgfError(f"line {lineno}: endpoints are not integers") from None
        if not (1 <= i <= n and 1 <= j <= n):
            raise DgfError(f"line {lineno}: endpoint out of range 1..{n}")
        if i == j:
            raise DgfError(f"line {lineno}: loop arc {i} -> {j}")
        if (i, j) in arcs:
            raise DgfError(f"line {lineno}: duplicate arc {i} -> {j}")
        if len(fields) == 4:
            try:
                weight = float(fields[3])
            except ValueError:
                raise DgfError(f"line {lineno}: weight is not a number") from None
        else:
            weight = 1.0
        if not 0.0 <= weight <= 1.0:
            raise DgfError(f"line {lineno}: weight {weight!r} outside [0, 1]")
        arcs[(i, j)] = weight
    if n is None:
        raise DgfError("missing 'n <order>' line")
    w = np.zeros((n, n))
    for (i, j), weight in arcs.items():
        w[i - 1, j - 1] = weight
    return Digraph(w)


def write_dgf(g: Digraph) -> str:
    """Emit DGF text with arcs in row-major order; weight 1 arcs are written bare."""
    lines = [f"n {g.n}"]
    for i in range(g.n):
        for j in range(g.n):
            weight = g.w[i, j]
            if weight == 0.0:
                continue
            if weight == 1.0:
                lines.append(f"e {i + 1} {j + 1}")
            else:
                lines.append(f"e {i + 1} {j + 1} {weight:.17g}")
    return "\n".join(lines) + "\n"
