"""Named digraph families, their closed-form predictions, and the
quadrilateral/ellipse geometry behind the pseudo-normal extremal family."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .graph import Digraph, digraph_from_arcs, directed_join, disjoint_union, out_degrees, in_degrees


def complete(n: int) -> Digraph:
    if n < 1:
        raise ValueError("order must be positive")
    w = np.ones((n, n))
    np.fill_diagonal(w, 0.0)
    return Digraph(w)


def empty(n: int) -> Digraph:
    if n < 1:
        raise ValueError("order must be positive")
    return Digraph(np.zeros((n, n)))


def dicycle(n: int) -> Digraph:
    if n < 2:
        raise ValueError("dicycle requires order >= 2")
    return digraph_from_arcs(n, [(i, (i + 1) % n) for i in range(n)])


def imploding_star(n: int, k: int) -> Digraph:
    """The directed join of the empty digraph on n-k vertices onto K_k."""
    if not 0 <= k <= n:
        raise ValueError(f"k must lie in 0..{n}")
    if k == n:
        return complete(n)
    if k == 0:
        return empty(n)
    return directed_join(empty(n - k), complete(k))


def pick_tournament(p: int) -> Digraph:
    """Regular tournament of odd order p with extremal spectral imaginary part.

    Adjacency A = P + P^2 + ... + P^{(p-1)/2} for the cyclic permutation
    (2, 3, ..., p, 1); unique up to isomorphism, so this representative
    stands in for the whole class.
    """
    if p < 3 or p % 2 == 0:
        raise ValueError("pick tournament requires odd order >= 3")
    w = np.zeros((p, p))
    for s in range(1, (p - 1) // 2 + 1):
        for i in range(p):
            w[i, (i + s) % p] = 1.0
    return Digraph(w)


def polygonal_extremal(n: int) -> Digraph:
    """K_2 joined onto the empty digraph of order n-2; spread equals n."""
    if n < 4:
        raise ValueError("polygonal extremal family requires order >= 4")
    return directed_join(complete(2), empty(n - 2))


def balanced_extremal(n: int) -> Digraph:
    """K_1 disjoint-union K_{n-1}; the sharp balanced-spread witness."""
    if n < 2:
        raise ValueError("balanced extremal family requires order >= 2")
    return disjoint_union(complete(1), complete(n - 1))


def pseudo_normal(p: int, t: int) -> Digraph:
    """(K_2 join T_p) join empty K_t for odd p >= 3 and 2 <= t <= p."""
    if p < 3 or p % 2 == 0:
        raise ValueError("p must be an odd integer >= 3")
    if not 2 <= t <= p:
        raise ValueError("t must be an integer between 2 and p")
    return directed_join(directed_join(complete(2), pick_tournament(p)), empty(t))


_FAMILY_BUILDERS = {
    "dicycle": (dicycle, 1),
    "complete": (complete, 1),
    "empty": (empty, 1),
    "imploding-star": (imploding_star, 2),
    "pick": (pick_tournament, 1),
    "polygonal-extremal": (polygonal_extremal, 1),
    "pseudo-normal": (pseudo_normal, 2),
    "balanced-extremal": (balanced_extremal, 1),
}

FAMILY_KINDS = tuple(_FAMILY_BUILDERS)


@dataclass(frozen=True)
class FamilySpec:
    kind: str
    params: tuple[int, ...]


def generate(kind, *params) -> Digraph:
    """Build a family member by kind name; accepts a FamilySpec as well."""
    if isinstance(kind, FamilySpec):
        params = kind.params
        kind = kind.kind
    if kind not in _FAMILY_BUILDERS:
        raise ValueError(f"unknown family kind {kind!r}; expected one of {FAMILY_KINDS}")
    builder, arity = _FAMILY_BUILDERS[kind]
    params = tuple(int(p) for p in params)
    if len(params) != arity:
        raise ValueError(f"family {kind!r} takes {arity} parameter(s), got {len(params)}")
    return builder(*params)


def cycle_spread_formula(n: int) -> float:
    """Closed-form Laplacian spread of the dicycle of order n."""
    if n < 2:
        raise ValueError("requires order >= 2")
    if n % 2 == 0:
        return 1.0 + np.cos(2.0 * np.pi / n)
    return float(np.cos(2.0 * np.pi / n) - np.cos(np.pi * (n - 1) / n))


def dicycle_rnr_vertices(n: int) -> np.ndarray:
    """Predicted polygon vertices 1 - e^{i 2 pi j / n}, j = 1..n-1."""
    if n < 2:
        raise ValueError("requires order >= 2")
    j = np.arange(1, n)
    return 1.0 - np.exp(2j * np.pi * j / n)


def pick_spectrum(p: int) -> np.ndarray:
    """Closed-form Laplacian spectrum of the order-p regular Pick tournament."""
    if p < 3 or p % 2 == 0:
        raise ValueError("requires odd order >= 3")
    j = np.arange(p)[:, None]
    s = np.arange(1, (p - 1) // 2 + 1)[None, :]
    return (p - 1) / 2.0 - np.exp(2j * np.pi * j * s / p).sum(axis=1)


@dataclass(frozen=True)
class RangeGeometry:
    """Quadrilateral and ellipse making up the pseudo-normal family's range.

    ``minor_axis`` and ``major_axis`` are full axis lengths; the half-axes
    a = major/2 and b = minor/2 satisfy a^2 - b^2 = (p/2)^2.
    """

    quad: np.ndarray          # 4 complex vertices, symmetric about the real axis
    ellipse_center: complex
    ellipse_foci: tuple[float, float]
    minor_axis: float
    major_axis: float


def pseudo_normal_geometry(p: int, t: int) -> RangeGeometry:
    if p < 3 or p % 2 == 0:
        raise ValueError("p must be an odd integer >= 3")
    if not 2 <= t <= p:
        raise ValueError("t must be an integer between 2 and p")
    n = 2 + p + t
    peak = 0.5 / np.tan(np.pi / (2 * p))
    quad = np.array([0.0,
                     p / 2.0 + t + 1j * peak,
                     float(n),
                     p / 2.0 + t - 1j * peak], dtype=complex)
    minor = np.sqrt(2.0 * p * t / n)
    major = np.sqrt(p * p + 2.0 * p * t / n)
    return RangeGeometry(quad=quad,
                         ellipse_center=complex(p / 2.0 + t, 0.0),
                         ellipse_foci=(float(t), float(p + t)),
                         minor_axis=float(minor),
                         major_axis=float(major))


def verify_containment(geom: RangeGeometry, samples: int = 1000,
                       margin: float = 1e-9) -> bool:
    """Check that sampled ellipse-boundary points sit strictly inside the quad.

    Numeric surrogate for a symbolic non-intersection certificate; the
    separation is strict, so margin-based point-in-polygon sampling suffices.
    """
    if samples < 100:
        raise ValueError("use at least 100 boundary samples")
    a = geom.major_axis / 2.0
    b = geom.minor_axis / 2.0
    phi = 2.0 * np.pi * np.arange(samples) / samples
    pts = geom.ellipse_center + a * np.cos(phi) + 1j * b * np.sin(phi)
    quad = geom.quad
    # Signed area fixes the orientation of the edge-distance test.
    area = 0.0
    for k in range(4):
        v1, v2 = quad[k], quad[(k + 1) % 4]
        area += v1.real * v2.imag - v2.real * v1.imag
    sign = 1.0 if area > 0 else -1.0
    for k in range(4):
        v1, v2 = quad[k], quad[(k + 1) % 4]
        edge = v2 - v1
        cross = (edge.real * (pts.imag - v1.imag) - edge.imag * (pts.real - v1.real))
        dist = sign * cross / abs(edge)
        if np.min(dist) < margin:
            return False
    return True


def is_regular(g: Digraph) -> bool:
    """All vertices share one common in- and out-degree."""
    dout, din = out_degrees(g), in_degrees(g)
    return bool(np.all(dout == dout[0]) and np.all(din == dout[0]))


def is_tournament(g: Digraph) -> bool:
    """Exactly one arc between every vertex pair, weight 1."""
    if not g.is_unweighted():
        return False
    both = g.w + g.w.T
    np.fill_diagonal(both, 1.0)
    return bool(np.all(both == 1.0))


def is_regular_tournament(g: Digraph) -> bool:
    return g.n % 2 == 1 and is_tournament(g) and is_regular(g)


def is_imploding_star(g: Digraph) -> bool:
    """True iff g is the directed join of an empty digraph onto a complete one."""
    if not g.is_unweighted():
        return False
    din = in_degrees(g)
    clique = din == g.n - 1
    k = int(np.count_nonzero(clique))
    expected = np.zeros((g.n, g.n))
    expected[:, clique] = 1.0
    np.fill_diagonal(expected, 0.0)
    if k == 0:
        return g.arc_count() == 0
    return bool(np.all(g.w == expected))
