"""Balanced-digraph quadratic forms, the pairwise-difference gap bound, and
convex decompositions of weighted digraphs into unweighted ones."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .graph import Digraph, complement, convex_combination, is_balanced, laplacian
from .rnr import alpha_beta

# Arc weights this close to 0 or 1 are snapped before decomposing; prevents
# infinite recursion on rounding residue.
_SNAP_EPS = 1e-12


def quadratic_form(g: Digraph, x) -> float:
    """x^T L x; for balanced digraphs this equals half the weighted sum of
    squared endpoint differences over the arcs."""
    x = np.asarray(x, dtype=float)
    if x.shape != (g.n,):
        raise ValueError(f"vector dimension {x.shape} does not match order {g.n}")
    return float(x @ laplacian(g) @ x)


def nabla(x) -> np.ndarray:
    """Vector of |x_i - x_j| over pairs i < j in lexicographic order."""
    x = np.asarray(x, dtype=float)
    if x.ndim != 1 or len(x) < 2:
        raise ValueError("nabla requires a vector of dimension >= 2")
    i, j = np.triu_indices(len(x), k=1)
    return np.abs(x[i] - x[j])


def nabla_gap(x, y, tol: float = 1e-10) -> float:
    """Squared distance between the pairwise-difference vectors of x and y.

    Inputs must be orthonormal with zero mean within ``tol``; invalid inputs
    are rejected rather than re-orthogonalized so failures stay attributable.
    """
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if x.shape != y.shape or x.ndim != 1:
        raise ValueError("x and y must be vectors of equal dimension")
    checks = (abs(x @ x - 1.0), abs(y @ y - 1.0), abs(x @ y),
              abs(x.mean()), abs(y.mean()))
    if max(checks) > tol:
        raise ValueError("x and y must be orthonormal with zero mean")
    d = nabla(x) - nabla(y)
    return float(d @ d)


def alpha_sum_check(g: Digraph) -> float:
    """alpha of a balanced digraph plus alpha of its complement; >= 1 holds."""
    if not is_balanced(g):
        raise ValueError("alpha_sum_check requires a balanced digraph")
    return alpha_beta(g)[0] + alpha_beta(complement(g))[0]


@dataclass(frozen=True)
class Decomposition:
    """Convex combination of unweighted digraphs reconstructing a source."""

    parts: tuple[tuple[float, Digraph], ...]

    def combine(self) -> Digraph:
        return convex_combination(self.parts)

    def reconstruction_error(self, g: Digraph) -> float:
        return float(np.max(np.abs(self.combine().w - g.w)))


def _part_key(w: np.ndarray) -> int:
    """Arc-bitstring of an integral weight matrix, row-major, first pair MSB."""
    key = 0
    n = w.shape[0]
    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            key = (key << 1) | (1 if w[i, j] > 0.5 else 0)
    return key


def _collect(accum: dict[int, tuple[float, np.ndarray]]) -> Decomposition:
    parts = []
    for key in sorted(accum):
        coeff, w = accum[key]
        if coeff > 0.0:
            parts.append((coeff, Digraph(w)))
    return Decomposition(tuple(parts))


def level_set_decomposition(g: Digraph) -> Decomposition:
    """Threshold decomposition: superlevel sets of the weight matrix.

    With distinct positive weights v_1 > ... > v_k the parts are the empty
    digraph with coefficient 1 - v_1 and the threshold digraphs {w >= v_j}
    with coefficients v_j - v_{j+1} (v_{k+1} = 0).  Exact reconstruction.
    """
    n = g.n
    values = np.unique(g.w[g.w > 0])[::-1]
    accum: dict[int, tuple[float, np.ndarray]] = {}
    if len(values) == 0:
        accum[0] = (1.0, np.zeros((n, n)))
        return _collect(accum)
    empty_coeff = 1.0 - values[0]
    if empty_coeff > 0.0:
        accum[0] = (empty_coeff, np.zeros((n, n)))
    for idx, v in enumerate(values):
        nxt = values[idx + 1] if idx + 1 < len(values) else 0.0
        coeff = float(v - nxt)
        part = (g.w >= v).astype(float)
        key = _part_key(part)
        old = accum.get(key, (0.0, part))
        accum[key] = (old[0] + coeff, part)
    return _collect(accum)


def _snap(w: np.ndarray, tol: float = _SNAP_EPS) -> np.ndarray:
    w = w.copy()
    w[np.abs(w) <= tol] = 0.0
    w[np.abs(w - 1.0) <= tol] = 1.0
    return w


def _find_cycle(frac: np.ndarray) -> list[tuple[tuple[int, int], int]]:
    """Cycle in the underlying undirected multigraph of the fractional arcs.

    Returns a traversal as (arc, sign) pairs: sign +1 when the arc is walked
    in its own direction, -1 against it.  Deterministic: depth-first from the
    lowest-indexed fractional vertex, neighbors in ascending order.
    """
    n = frac.shape[0]
    adj: list[list[tuple[int, tuple[int, int]]]] = [[] for _ in range(n)]
    for i in range(n):
        for j in range(n):
            if frac[i, j]:
                adj[i].append((j, (i, j)))
                adj[j].append((i, (i, j)))
    for v in range(n):
        adj[v].sort()
    start = next(v for v in range(n) if adj[v])

    # DFS on the multigraph; the first repeat vertex on the path closes a cycle.
    path: list[tuple[int, tuple[int, int] | None]] = [(start, None)]
    on_path = {start: 0}
    iters = [iter(adj[start])]
    while iters:
        try:
            nbr, arc = next(iters[-1])
        except StopIteration:
            v, _ = path.pop()
            del on_path[v]
            iters.pop()
            continue
        if arc == path[-1][1]:
            continue
        if nbr in on_path:
            cycle = path[on_path[nbr]:] + [(nbr, arc)]
            steps = []
            for (u, _), (v, enter) in zip(cycle, cycle[1:]):
                assert enter is not None
                steps.append((enter, 1 if enter == (u, v) else -1))
            return steps
        path.append((nbr, arc))
        on_path[nbr] = len(path) - 1
        iters.append(iter(adj[nbr]))
    raise AssertionError("no cycle in a nonempty fractional-support graph; balance violated")


def _round_to_vertex(w: np.ndarray, tol: float = _SNAP_EPS) -> np.ndarray:
    """Integral balanced digraph agreeing with ``w`` on its integral arcs.

    Every vertex touched by a fractional arc has at least two of them
    (balance forces the fractional in/out sums to differ by an integer), so
    the fractional-support graph always contains a cycle; pushing weight
    around it preserves every per-vertex balance equation and fixes at least
    one arc at 0 or 1 per push.
    """
    u = _snap(w, tol)
    while True:
        frac = (u > 0.0) & (u < 1.0)
        if not frac.any():
            return np.round(u)
        steps = _find_cycle(frac)
        eps = min((1.0 - u[a] if s > 0 else u[a]) for a, s in steps)
        for a, s in steps:
            u[a] += s * eps
        u = _snap(u, tol)


def balanced_decomposition(g: Digraph, tol: float = 1e-9) -> Decomposition:
    """Write a weighted balanced digraph as a convex combination of unweighted
    balanced digraphs.

    Caratheodory walk on the balanced polytope: round the current point to an
    integral balanced vertex sharing its integral arcs, then move along the
    ray from that vertex through the point until another arc hits 0 or 1.
    Each step fixes at least one fractional arc for good, so the part count
    is at most #fractional arcs + 1; reconstruction is exact to rounding.
    """
    if not is_balanced(g, tol):
        raise ValueError("balanced_decomposition requires a balanced digraph")
    accum: dict[int, tuple[float, np.ndarray]] = {}

    def emit(part: np.ndarray, coeff: float) -> None:
        key = _part_key(part)
        old = accum.get(key, (0.0, part))
        accum[key] = (old[0] + coeff, old[1])

    # The ray steps amplify rounding noise by a factor of mu each; widening
    # the snap window with the accumulated amplification keeps the cycle
    # argument valid, while the matching shrink of the remaining mass keeps
    # the reconstruction-error contribution near machine precision.
    amplification = 1.0
    snap_tol = _SNAP_EPS
    w = _snap(g.w.copy(), snap_tol)
    remaining = 1.0
    while True:
        if not ((w > 0.0) & (w < 1.0)).any():
            emit(np.round(w), remaining)
            break
        v = _round_to_vertex(w, snap_tol)
        d = w - v
        moving = np.abs(d) > 0.0
        # Largest mu with v + mu*d inside [0,1]^arcs; mu > 1 strictly since
        # every moving arc is strictly interior at w.
        mu = float(np.min(np.where(d[moving] > 0,
                                   (1.0 - v[moving]) / d[moving],
                                   v[moving] / -d[moving])))
        emit(v, remaining * (1.0 - 1.0 / mu))
        remaining *= 1.0 / mu
        amplification *= mu
        snap_tol = max(_SNAP_EPS, 1e-14 * amplification)
        w = _snap(v + mu * d, snap_tol)
    return _collect(accum)


def concavity_check(parts) -> tuple[float, float]:
    """Algebraic connectivity of a convex combination vs the combination of
    the parts' connectivities; the first dominates the second."""
    parts = list(parts)
    lhs = alpha_beta(convex_combination(parts))[0]
    rhs = sum(c * alpha_beta(g)[0] for c, g in parts)
    return float(lhs), float(rhs)
