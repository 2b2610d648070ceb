"""Restricted numerical range engine.

Builds restrictor matrices, restricted Laplacians, the alpha/beta/spread
statistics, boundary sweeps of the restricted numerical range, and the
polygonal-class verdict for a digraph.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .graph import Digraph, is_balanced, laplacian, out_degrees, in_degrees
from .numkernel import eig_general, eig_hermitian, hermitian_part

DEFAULT_SWEEP = 720
DEFAULT_POLY_TOL = 1e-6
DEFAULT_NORMAL_EPS = 1e-10


class Classification(enum.Enum):
    NORMAL = "Normal"
    RESTRICTED_NORMAL = "RestrictedNormal"
    PSEUDO_NORMAL = "PseudoNormal"
    NON_POLYGONAL = "NonPolygonal"


@dataclass(frozen=True)
class RnrSummary:
    alpha: float
    beta: float
    spread: float
    verdict: Classification


@dataclass(frozen=True)
class BoundaryCurve:
    """Sampled boundary of the restricted numerical range.

    ``supports[k]`` is the largest eigenvalue of H(e^{i theta_k} M) and
    ``points[k]`` the corresponding boundary point v* M v.
    """

    thetas: np.ndarray
    supports: np.ndarray
    points: np.ndarray


def restrictor(n: int) -> np.ndarray:
    """Deterministic n x (n-1) matrix whose columns span e-perp orthonormally.

    First n-1 columns of the Householder reflector for u = e/sqrt(n) + e_n;
    the sign of u avoids cancellation.
    """
    if n < 2:
        raise ValueError("restrictor requires order >= 2 (the range is empty for n = 1)")
    u = np.full(n, 1.0 / np.sqrt(n))
    u[-1] += 1.0
    h = np.eye(n) - 2.0 * np.outer(u, u) / (u @ u)
    return h[:, : n - 1]


def random_restrictor(n: int, rng: np.random.Generator) -> np.ndarray:
    """Random orthonormal completion of e-perp, for invariance testing."""
    if n < 2:
        raise ValueError("restrictor requires order >= 2")
    m = rng.standard_normal((n, n - 1))
    m -= np.outer(np.ones(n), m.sum(axis=0)) / n
    q, r = np.linalg.qr(m)
    if np.min(np.abs(np.diagonal(r))) < 1e-10:
        return random_restrictor(n, rng)
    return q


def restricted_laplacian(g: Digraph, q: np.ndarray | None = None) -> np.ndarray:
    """The (n-1) x (n-1) matrix q^T L q."""
    if q is None:
        q = restrictor(g.n)
    if q.shape != (g.n, g.n - 1):
        raise ValueError(f"restrictor shape {q.shape} does not match order {g.n}")
    return q.T @ laplacian(g) @ q


def alpha_beta(g: Digraph, q: np.ndarray | None = None) -> tuple[float, float]:
    """Minimum and maximum real part of the restricted numerical range."""
    m = restricted_laplacian(g, q)
    values, _ = eig_hermitian(hermitian_part(m))
    return float(values[0]), float(values[-1])


def spread(g: Digraph) -> float:
    """Laplacian spread beta - alpha."""
    a, b = alpha_beta(g)
    return b - a


def balanced_alpha(g: Digraph, tol: float = 1e-9) -> float:
    """Second-smallest eigenvalue of H(L); valid for balanced digraphs only."""
    if not is_balanced(g, tol):
        raise ValueError("balanced_alpha requires a balanced digraph")
    if g.n < 2:
        raise ValueError("balanced_alpha requires order >= 2")
    values, _ = eig_hermitian(hermitian_part(laplacian(g)))
    return float(values[1])


def _sweep_supports(m: np.ndarray, thetas: np.ndarray) -> np.ndarray:
    """Largest eigenvalue of H(e^{i theta} m) for every sampled angle."""
    rotated = np.exp(1j * thetas)[:, None, None] * m[None, :, :]
    stacked = (rotated + rotated.conj().transpose(0, 2, 1)) / 2.0
    return np.linalg.eigvalsh(stacked)[:, -1]


def boundary_sweep(g: Digraph, m: int = DEFAULT_SWEEP) -> BoundaryCurve:
    """Rotation-method sweep of the restricted numerical range boundary."""
    if g.n < 2:
        raise ValueError("boundary sweep requires order >= 2")
    if m < 8:
        raise ValueError("sweep needs at least 8 samples")
    mat = restricted_laplacian(g).astype(complex)
    thetas = 2.0 * np.pi * np.arange(m) / m
    supports = np.empty(m)
    points = np.empty(m, dtype=complex)
    for k, theta in enumerate(thetas):
        h = hermitian_part(np.exp(1j * theta) * mat)
        values, vectors = np.linalg.eigh(h)
        v = vectors[:, -1]
        supports[k] = values[-1]
        points[k] = v.conj() @ mat @ v
    return BoundaryCurve(thetas, supports, points)


def is_polygonal(g: Digraph, m: int = DEFAULT_SWEEP, tol: float = DEFAULT_POLY_TOL,
                 q: np.ndarray | None = None) -> bool:
    """True iff the swept range support never exceeds the eigenvalue-hull support.

    The reverse inequality holds automatically (the eigenvalues lie inside the
    range), so a one-sided check over the angle grid decides polygonality.
    """
    if g.n < 2:
        raise ValueError("polygonality test requires order >= 2")
    mat = restricted_laplacian(g, q)
    eigs = eig_general(mat)
    thetas = 2.0 * np.pi * np.arange(m) / m
    sweep = _sweep_supports(mat.astype(complex), thetas)
    hull = np.max((np.exp(1j * thetas)[:, None] * eigs[None, :]).real, axis=1)
    return bool(np.all(sweep - hull <= tol))


def _commutator_defect(m: np.ndarray) -> float:
    c = m @ m.conj().T - m.conj().T @ m
    return float(np.linalg.norm(c)) / max(1.0, float(np.linalg.norm(m)) ** 2)


def classify(g: Digraph, eps_normal: float = DEFAULT_NORMAL_EPS,
             poly_tol: float = DEFAULT_POLY_TOL, m: int = DEFAULT_SWEEP) -> Classification:
    """Polygonal-class verdict: Normal, RestrictedNormal, PseudoNormal, NonPolygonal."""
    if g.n < 2:
        raise ValueError("classification requires order >= 2")
    lap = laplacian(g)
    if _commutator_defect(lap) <= eps_normal:
        return Classification.NORMAL
    if _commutator_defect(restricted_laplacian(g)) <= eps_normal:
        return Classification.RESTRICTED_NORMAL
    if is_polygonal(g, m=m, tol=poly_tol):
        return Classification.PSEUDO_NORMAL
    return Classification.NON_POLYGONAL


def summarize(g: Digraph, eps_normal: float = DEFAULT_NORMAL_EPS,
              poly_tol: float = DEFAULT_POLY_TOL, m: int = DEFAULT_SWEEP) -> RnrSummary:
    a, b = alpha_beta(g)
    return RnrSummary(alpha=a, beta=b, spread=b - a,
                      verdict=classify(g, eps_normal=eps_normal, poly_tol=poly_tol, m=m))


def wu_bound(g: Digraph) -> float:
    """Degree-based spread bound: max (3d+ + d-)/2 - min (d+ - d-)/2."""
    if np.any(g.w < 0):
        raise ValueError("wu_bound requires nonnegative weights")
    dout, din = out_degrees(g), in_degrees(g)
    return float(0.5 * np.max(3.0 * dout + din) - 0.5 * np.min(dout - din))


def unweighted_wu_cap(n: int) -> float:
    """Global cap (5/2)(n-1) on the degree bound for unweighted digraphs."""
    return 2.5 * (n - 1)


def boundary_csv(curve: BoundaryCurve) -> str:
    """CSV export of a boundary sweep: header theta,support,re,im; LF endings."""
    lines = ["theta,support,re,im"]
    for theta, sup, point in zip(curve.thetas, curve.supports, curve.points):
        lines.append(f"{theta:.17g},{sup:.17g},{point.real:.17g},{point.imag:.17g}")
    return "\n".join(lines) + "\n"
