import numpy as np
import pytest

from rnrspread import (Classification, alpha_beta, classify, cycle_spread_formula,
                       dicycle, dicycle_rnr_vertices, generate, imploding_star,
                       laplacian, pick_spectrum, pick_tournament,
                       pseudo_normal_geometry, spread, verify_containment)
from rnrspread.families import (FamilySpec, balanced_extremal, complete, empty,
                                is_imploding_star, is_regular,
                                is_regular_tournament, is_tournament,
                                polygonal_extremal, pseudo_normal)
from rnrspread.numkernel import eig_general, spectra_match


def test_generate_dispatch():
    g = generate("dicycle", 5)
    assert g.same_as(dicycle(5))
    assert generate(FamilySpec("imploding-star", (5, 2))).same_as(imploding_star(5, 2))
    with pytest.raises(ValueError):
        generate("no-such-family", 3)
    with pytest.raises(ValueError):
        generate("dicycle")
    with pytest.raises(ValueError):
        generate("dicycle", 1)


def test_family_parameter_validation():
    with pytest.raises(ValueError):
        imploding_star(4, 5)
    with pytest.raises(ValueError):
        pick_tournament(4)
    with pytest.raises(ValueError):
        pseudo_normal(3, 4)  # t > p
    with pytest.raises(ValueError):
        polygonal_extremal(3)


def test_cycle_spread_formula():
    for n in range(3, 10):
        assert spread(dicycle(n)) == pytest.approx(cycle_spread_formula(n), abs=1e-12)
    assert cycle_spread_formula(4) == pytest.approx(1.0)
    assert cycle_spread_formula(6) == pytest.approx(1.5)


def test_dicycle_vertices_match_spectrum():
    from rnrspread.rnr import restricted_laplacian
    for n in (3, 5, 8):
        predicted = dicycle_rnr_vertices(n)
        actual = eig_general(restricted_laplacian(dicycle(n)))
        assert spectra_match(predicted, actual, tol=1e-10)


def test_imploding_star_degenerate_range():
    for n in (4, 6):
        for k in range(n + 1):
            a, b = alpha_beta(imploding_star(n, k))
            assert a == pytest.approx(k, abs=1e-9)
            assert b == pytest.approx(k, abs=1e-9)


def test_pick_tournament_structure():
    for p in (3, 5, 7):
        t = pick_tournament(p)
        assert is_regular_tournament(t)
        assert spectra_match(pick_spectrum(p), eig_general(laplacian(t)), tol=1e-9)


def test_extremal_spreads():
    assert spread(polygonal_extremal(6)) == pytest.approx(6.0, abs=1e-9)
    assert classify(polygonal_extremal(6)) is Classification.RESTRICTED_NORMAL
    assert spread(balanced_extremal(6)) == pytest.approx(5.0, abs=1e-9)


def test_pseudo_normal_family():
    g = pseudo_normal(3, 2)
    assert g.n == 7
    assert spread(g) == pytest.approx(7.0, abs=1e-8)
    assert classify(g) is Classification.PSEUDO_NORMAL


def test_geometry_values():
    geom = pseudo_normal_geometry(3, 2)
    assert geom.ellipse_center == pytest.approx(3.5 + 0j)
    assert geom.ellipse_foci == (2.0, 5.0)
    assert geom.minor_axis == pytest.approx(np.sqrt(12.0 / 7.0))
    assert geom.major_axis == pytest.approx(np.sqrt(9.0 + 12.0 / 7.0))
    a, b = geom.major_axis / 2.0, geom.minor_axis / 2.0
    assert a * a - b * b == pytest.approx(2.25)  # focal distance (p/2)^2
    assert geom.quad[1].imag == pytest.approx(0.5 / np.tan(np.pi / 6))


def test_containment():
    assert verify_containment(pseudo_normal_geometry(3, 2))
    assert verify_containment(pseudo_normal_geometry(5, 5))
    with pytest.raises(ValueError):
        verify_containment(pseudo_normal_geometry(3, 2), samples=10)


def test_structure_predicates():
    assert is_regular(dicycle(4))
    assert not is_regular(imploding_star(4, 2))
    assert is_tournament(pick_tournament(5))
    assert not is_tournament(complete(3))
    assert not is_regular_tournament(dicycle(4))
    assert is_imploding_star(imploding_star(5, 2))
    assert is_imploding_star(empty(4))
    assert is_imploding_star(complete(4))
    assert not is_imploding_star(dicycle(4))
