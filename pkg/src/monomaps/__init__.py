"""Exact checks and constructions for betweenness-preserving (monotone) maps
of finite planar configurations."""

from .closure import CANONICAL_BASE, covering_radius, grow, rigidity_check
from .constructions import FIVE_POINT_IMAGE, collapse_to_edge, fan_collapse, five_point_map
from .csp import betweenness_csp, solve_betweenness
from .embeddings import (lex_identity, parallel_lines_map, project_to_plane, projection_embed,
                         three_lines_config, three_lines_lexsum)
from .errors import BetweennessError
from .geometry import Line, Point2, Segment, between, orient, pt, segment_intersect
from .maps import FiniteConfig, FiniteMap, Structure, check_injective, check_isomorphism, check_monotone
from .orders import DoubleArrow, LexPair, LexSum, Rat
from .projective import ProjectiveTransform, fit_homography, restrict_and_verify
from .trichotomy import classify_image, classify_points

__all__ = [
    "CANONICAL_BASE", "covering_radius", "grow", "rigidity_check",
    "FIVE_POINT_IMAGE", "collapse_to_edge", "fan_collapse", "five_point_map",
    "betweenness_csp", "solve_betweenness",
    "lex_identity", "parallel_lines_map", "project_to_plane", "projection_embed",
    "three_lines_config", "three_lines_lexsum",
    "BetweennessError",
    "Line", "Point2", "Segment", "between", "orient", "pt", "segment_intersect",
    "FiniteConfig", "FiniteMap", "Structure", "check_injective", "check_isomorphism", "check_monotone",
    "DoubleArrow", "LexPair", "LexSum", "Rat",
    "ProjectiveTransform", "fit_homography", "restrict_and_verify",
    "classify_image", "classify_points",
]
