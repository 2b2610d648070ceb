"""Acceptance gate: one test per release criterion, each emitting a single
PASS/FAIL line (run pytest with -s or read captured stdout on failure)."""

import time

import numpy as np

from rnrspread import (Classification, alpha_beta, balanced_decomposition,
                       boundary_sweep, classify, complement, cycle_spread_formula,
                       dicycle, imploding_star, is_balanced, laplacian,
                       level_set_decomposition, nabla_gap, pick_tournament,
                       pseudo_normal_geometry, quadratic_form, spread,
                       verify_containment)
from rnrspread.families import (balanced_extremal, is_regular_tournament,
                                polygonal_extremal, pseudo_normal)
from rnrspread.numkernel import eig_general, spectra_match
from rnrspread.rnr import random_restrictor, restricted_laplacian, unweighted_wu_cap
from rnrspread.survey import arc_masks, batch_metrics, digraph_from_mask

from conftest import random_balanced_weighted, random_weighted_digraph


def _verdict(name, failures):
    ok = not failures
    print(f"[acceptance] {name}: {'PASS' if ok else 'FAIL'}")
    assert ok, failures[:5]


def test_dicycle_spread_closed_form():
    start = time.monotonic()
    failures = []
    for n in range(3, 13):
        got = spread(dicycle(n))
        want = cycle_spread_formula(n)
        if abs(got - want) > 1e-9:
            failures.append((n, got, want))
    elapsed = time.monotonic() - start
    if elapsed >= 1.0:
        failures.append(("runtime", elapsed))
    _verdict("dicycle spreads", failures)


def test_degenerate_point_ranges():
    failures = []
    for n in range(2, 9):
        for k in range(n + 1):
            pts = boundary_sweep(imploding_star(n, k), m=720).points
            dev = float(np.max(np.abs(pts - k)))
            if dev > 1e-7:
                failures.append(("imploding", n, k, dev))
    for p in (3, 5, 7, 9):
        a, b = alpha_beta(pick_tournament(p))
        if abs(a - p / 2.0) > 1e-9 or abs(b - p / 2.0) > 1e-9:
            failures.append(("pick-alpha-beta", p, a, b))
        eigs = eig_general(restricted_laplacian(pick_tournament(p)))
        peak = float(np.max(np.abs(eigs.imag)))
        want = 0.5 / np.tan(np.pi / (2.0 * p))
        if abs(peak - want) > 1e-8:
            failures.append(("pick-imag", p, peak, want))
    _verdict("degenerate ranges", failures)


def test_extremal_spread_constructions():
    failures = []
    for n in range(4, 13):
        g = polygonal_extremal(n)
        if abs(spread(g) - n) > 1e-9:
            failures.append(("spread", n, spread(g)))
        if classify(g) is not Classification.RESTRICTED_NORMAL:
            failures.append(("class", n, classify(g)))
    for n in range(2, 13):
        g = balanced_extremal(n)
        if abs(spread(g) - (n - 1)) > 1e-9:
            failures.append(("balanced", n, spread(g)))
    _verdict("extremal constructions", failures)


def test_pseudo_normal_suite():
    start = time.monotonic()
    failures = []
    for p, t in ((3, 2), (3, 3), (5, 2), (5, 5)):
        g = pseudo_normal(p, t)
        if abs(spread(g) - (2 + p + t)) > 1e-8:
            failures.append(("spread", p, t, spread(g)))
        if classify(g) is not Classification.PSEUDO_NORMAL:
            failures.append(("class", p, t, classify(g)))
        if not verify_containment(pseudo_normal_geometry(p, t), samples=1000):
            failures.append(("containment", p, t))
    elapsed = time.monotonic() - start
    if elapsed >= 10.0:
        failures.append(("runtime", elapsed))
    _verdict("pseudo-normal extremal suite", failures)


def test_order5_exhaustive_bounds():
    start = time.monotonic()
    failures = []
    n = 5
    masks = arc_masks(n, "all")
    metrics = batch_metrics(masks, n)
    max_spread = float(np.max(metrics["spread"]))
    if max_spread < 5.034:
        failures.append(("max-spread", max_spread))
    over_wu = np.flatnonzero(metrics["spread"] > metrics["wu"] + 1e-9)
    if len(over_wu):
        failures.append(("degree-bound", len(over_wu)))
    cap = unweighted_wu_cap(n)
    over_cap = np.flatnonzero(metrics["spread"] > cap + 1e-9)
    if len(over_cap):
        failures.append(("cap", len(over_cap)))
    elapsed = time.monotonic() - start
    if elapsed >= 600.0:
        failures.append(("runtime", elapsed))
    _verdict("order-5 exhaustive bounds", failures)


def test_balanced_survey_bounds():
    failures = []
    for n in range(2, 7):
        if n <= 5:
            masks = arc_masks(n, "all")
            metrics = batch_metrics(masks, n)
            keep = metrics["balanced"]
            spreads = metrics["spread"][keep]
            bal_masks = masks[keep]
        else:
            bal_masks = arc_masks(n, "balanced")
            metrics = batch_metrics(bal_masks, n)
            spreads = metrics["spread"]
        if np.any(spreads > n - 1 + 1e-9):
            failures.append(("upper-bound", n, float(np.max(spreads))))
        in_gap = np.flatnonzero((spreads > 1e-6) & (spreads < 1.0 - 1e-6))
        if len(in_gap):
            failures.append(("spread-gap", n, len(in_gap)))
        if n in (3, 5):
            # zero-spread balanced digraphs: the regular tournaments plus the
            # two trivial ones (empty and complete)
            zero = spreads <= 1e-6
            for mask, is_zero in zip(bal_masks, zero):
                g = digraph_from_mask(int(mask), n)
                trivial = g.arc_count() in (0, n * (n - 1))
                if bool(is_zero) != (is_regular_tournament(g) or trivial):
                    failures.append(("zero-spread-set", n, int(mask)))
    _verdict("balanced survey", failures)


def test_invariance_and_identity_properties():
    rng = np.random.default_rng(2024)
    failures = []
    for trial in range(200):
        n = int(rng.integers(2, 9))
        # Continuous weights keep the eigenvalues simple; repeated eigenvalues
        # of 0/1 Laplacians carry sqrt-of-eps solver error, far above 1e-8.
        g = random_weighted_digraph(rng, n)
        lap = laplacian(g)
        restricted = eig_general(restricted_laplacian(g))
        if not spectra_match(eig_general(lap), np.append(restricted, 0.0), tol=1e-8):
            failures.append(("spectra", trial))
        a0, b0 = alpha_beta(g)
        a1, b1 = alpha_beta(g, random_restrictor(n, rng))
        if abs(a0 - a1) > 1e-9 or abs(b0 - b1) > 1e-9:
            failures.append(("invariance", trial))
        if abs(a0 + alpha_beta(complement(g))[1] - n) > 1e-9:
            failures.append(("duality", trial))
    for trial in range(200):
        n = int(rng.integers(3, 8))
        g = random_balanced_weighted(rng, n)
        x = rng.standard_normal(n)
        direct = quadratic_form(g, x)
        pairwise = 0.5 * float(np.sum(g.w * (x[:, None] - x[None, :]) ** 2))
        if abs(direct - pairwise) > 1e-10:
            failures.append(("quadratic-form", trial))
    for trial in range(1000):
        n = int(rng.integers(3, 13))
        m = rng.standard_normal((n, 2))
        m -= m.mean(axis=0)  # zero-mean columns stay zero-mean under QR
        q, r = np.linalg.qr(m)
        if min(abs(r[0, 0]), abs(r[1, 1])) < 1e-8:
            continue
        gap = nabla_gap(q[:, 0], q[:, 1])
        if gap < 2.0 - 1e-9:
            failures.append(("gap", trial, gap))
    _verdict("algebraic property suites", failures)


def test_decomposition_suite():
    start = time.monotonic()
    rng = np.random.default_rng(77)
    failures = []
    for trial in range(500):
        n = int(rng.integers(3, 8))
        g = random_balanced_weighted(rng, n)
        d = balanced_decomposition(g)
        if d.reconstruction_error(g) > 1e-10:
            failures.append(("reconstruction", trial, d.reconstruction_error(g)))
        frac = int(np.count_nonzero((g.w > 0) & (g.w < 1)))
        if len(d.parts) > frac + 1:
            failures.append(("part-count", trial, len(d.parts), frac))
        for _, part in d.parts:
            if not part.is_unweighted() or not is_balanced(part, tol=0.0):
                failures.append(("part-shape", trial))
                break
        if level_set_decomposition(g).reconstruction_error(g) > 1e-14:
            failures.append(("level-set", trial))
        lhs = alpha_beta(g)[0]
        rhs = sum(c * alpha_beta(part)[0] for c, part in d.parts)
        if lhs < rhs - 1e-9:
            failures.append(("concavity", trial, lhs, rhs))
        if spread(g) > n - 1 + 1e-8:
            failures.append(("spread-bound", trial, spread(g)))
    elapsed = time.monotonic() - start
    if elapsed >= 60.0:
        failures.append(("runtime", elapsed))
    _verdict("decomposition suite", failures)
