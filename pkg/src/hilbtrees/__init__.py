"""Exact F_p computations of Hilbert functions for curve sections of hypersurfaces."""

from .errors import HilbtreesError
from .exactfield import DEFAULT_PRIME, PrimeField, matrix_rank, row_reduce
from .geometry import (Hypersurface, Line, ProjPoint, line_section, quadric_normal_form,
                       random_hypersurface)
from .hilbert import (CohomologyPair, IntersectionProfile, bigraded_cohomology,
                      critical_degree, intersection_cohomology, point_evaluation_oracle,
                      profile, sections_of_OW)
from .polyspace import BinaryForm, Form, RationalCurveParam, monomial_basis
from .trees import (Forest, TreeConstraints, TreeCurve, TreeType, bamboo_type, random_tree,
                    spreading_type, type_of)

__version__ = "0.1.0"

__all__ = [
    "HilbtreesError",
    "DEFAULT_PRIME",
    "PrimeField",
    "matrix_rank",
    "row_reduce",
    "Hypersurface",
    "Line",
    "ProjPoint",
    "line_section",
    "quadric_normal_form",
    "random_hypersurface",
    "CohomologyPair",
    "IntersectionProfile",
    "bigraded_cohomology",
    "critical_degree",
    "intersection_cohomology",
    "point_evaluation_oracle",
    "profile",
    "sections_of_OW",
    "BinaryForm",
    "Form",
    "RationalCurveParam",
    "monomial_basis",
    "Forest",
    "TreeConstraints",
    "TreeCurve",
    "TreeType",
    "bamboo_type",
    "random_tree",
    "spreading_type",
    "type_of",
]
