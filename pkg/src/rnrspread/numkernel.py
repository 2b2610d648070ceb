"""Small dense matrix services: eigendecompositions, 2-D hulls, support functions.

Eigenproblems are delegated to LAPACK through numpy; the contracts here are
accuracy targets, not algorithm mandates.  Matrices at desk scale are tiny
(order <= 64), so everything is dense and exact-ish.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

MAX_ORDER = 64


def _as_matrix(m) -> np.ndarray:
    a = np.asarray(m)
    if a.ndim != 2:
        raise ValueError("expected a 2-D matrix")
    return a


def hermitian_part(m) -> np.ndarray:
    """Return (m + m*)/2; requires a square matrix."""
    a = _as_matrix(m)
    if a.shape[0] != a.shape[1]:
        raise ValueError("hermitian part requires a square matrix")
    h = (a + a.conj().T) / 2.0
    if np.isrealobj(a):
        return h.real
    return h


def eig_hermitian(m) -> tuple[np.ndarray, np.ndarray]:
    """Eigenvalues (ascending) and orthonormal eigenvectors of a Hermitian matrix."""
    a = _as_matrix(m)
    if a.shape[0] != a.shape[1]:
        raise ValueError("eig_hermitian requires a square matrix")
    scale = max(1.0, float(np.linalg.norm(a)))
    if np.linalg.norm(a - a.conj().T) > 1e-12 * scale:
        raise ValueError("matrix is not Hermitian within tolerance")
    values, vectors = np.linalg.eigh(a)
    return values, vectors


def eig_general(m) -> np.ndarray:
    """Full spectrum (with multiplicity) of a general square matrix.

    Convergence failures surface as ``numpy.linalg.LinAlgError``.
    """
    a = _as_matrix(m)
    if a.shape[0] != a.shape[1]:
        raise ValueError("eig_general requires a square matrix")
    if a.shape[0] > MAX_ORDER:
        raise ValueError(f"order {a.shape[0]} exceeds supported maximum {MAX_ORDER}")
    if not np.all(np.isfinite(a)):
        raise ValueError("matrix entries must be finite")
    return np.linalg.eigvals(a)


@dataclass(frozen=True)
class Polygon2D:
    """Convex polygon in the complex plane, vertices counterclockwise.

    Degenerate polygons (a segment or a single point) are legal values.
    """

    vertices: np.ndarray  # complex, strictly convex CCW order

    @property
    def size(self) -> int:
        return len(self.vertices)


def _dedupe(points: np.ndarray, tol: float = 1e-12) -> np.ndarray:
    order = np.lexsort((points.imag, points.real))
    pts = points[order]
    keep = [pts[0]]
    for p in pts[1:]:
        if abs(p - keep[-1]) > tol:
            keep.append(p)
    return np.array(keep, dtype=complex)


def convex_hull(points) -> Polygon2D:
    """Minimal counterclockwise hull of a point cloud (Andrew monotone chain).

    Collinear interior points are dropped; the result may degenerate to a
    segment or a single point.
    """
    pts = np.atleast_1d(np.asarray(points, dtype=complex)).ravel()
    if pts.size == 0:
        raise ValueError("convex hull of an empty point set")
    pts = _dedupe(pts)
    if len(pts) == 1:
        return Polygon2D(pts)

    def cross(o, a, b):
        return (a.real - o.real) * (b.imag - o.imag) - (a.imag - o.imag) * (b.real - o.real)

    lower: list[complex] = []
    for p in pts:
        while len(lower) > 1 and cross(lower[-2], lower[-1], p) <= 1e-12:
            lower.pop()
        lower.append(p)
    upper: list[complex] = []
    for p in pts[::-1]:
        while len(upper) > 1 and cross(upper[-2], upper[-1], p) <= 1e-12:
            upper.pop()
        upper.append(p)
    hull = lower[:-1] + upper[:-1]
    if not hull:  # fully collinear input: keep the two extreme points
        hull = [pts[0], pts[-1]]
    return Polygon2D(np.array(hull, dtype=complex))


def support(shape, theta: float) -> float:
    """Support function h(theta) = max over points p of Re(e^{-i theta} p)."""
    if isinstance(shape, Polygon2D):
        pts = shape.vertices
    else:
        pts = np.atleast_1d(np.asarray(shape, dtype=complex)).ravel()
    if pts.size == 0:
        raise ValueError("support of an empty shape")
    return float(np.max((np.exp(-1j * theta) * pts).real))


def spectra_match(s1, s2, tol: float) -> bool:
    """Greedy nearest-neighbor pairing of two eigenvalue multisets, then verify.

    Spectra at desk scale are well separated relative to ``tol``, so greedy
    pairing with a verification pass is adequate.
    """
    a = np.atleast_1d(np.asarray(s1, dtype=complex)).ravel()
    b = np.atleast_1d(np.asarray(s2, dtype=complex)).ravel()
    if a.size != b.size:
        raise ValueError(f"spectra have different cardinalities {a.size} != {b.size}")
    used = np.zeros(b.size, dtype=bool)
    for x in sorted(a, key=lambda z: (z.real, z.imag)):
        dist = np.abs(b - x)
        dist[used] = np.inf
        k = int(np.argmin(dist))
        if dist[k] > tol:
            return False
        used[k] = True
    return True
