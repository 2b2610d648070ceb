"""Restricted numerical ranges, algebraic connectivity, and Laplacian spread
of weighted directed graphs."""

from .graph import (Digraph, DgfError, complement, convex_combination, degrees,
                    digraph_from_arcs, directed_join, disjoint_union, is_balanced,
                    laplacian, read_dgf, write_dgf)
from .numkernel import (Polygon2D, convex_hull, eig_general, eig_hermitian,
                        hermitian_part, spectra_match, support)
from .rnr import (BoundaryCurve, Classification, RnrSummary, alpha_beta,
                  balanced_alpha, boundary_sweep, classify, is_polygonal,
                  restrictor, restricted_laplacian, spread, summarize, wu_bound)
from .families import (FamilySpec, RangeGeometry, cycle_spread_formula, dicycle,
                       dicycle_rnr_vertices, generate, imploding_star,
                       pick_spectrum, pick_tournament, pseudo_normal,
                       pseudo_normal_geometry, verify_containment)
from .balanced import (Decomposition, alpha_sum_check, balanced_decomposition,
                       concavity_check, level_set_decomposition, nabla,
                       nabla_gap, quadratic_form)
from .survey import (ConjectureReport, SurveyRecord, check_conjectures, curve_f,
                     emit_csv, enumerate_digraphs, scatter)

__version__ = "0.1.0"
