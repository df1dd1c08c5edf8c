"""Executable graph rewrites with checked contracts, plus seeded instance generators."""

from .ops import (EIGEN_CHECK_TOL, PERRON_EPS, RHO_MARGIN, Op, PreconditionError, RewriteReport,
                  RewriteSite, apply_cut_shift, apply_lemma22, apply_lemma23, apply_prop21,
                  apply_prop22_triangle, apply_rewrite, complete_site, triangle_case)
from .generators import Instance, generate_instances, random_block_graph

__all__ = [
    "EIGEN_CHECK_TOL", "PERRON_EPS", "RHO_MARGIN", "Op", "PreconditionError", "RewriteReport",
    "RewriteSite", "apply_cut_shift", "apply_lemma22", "apply_lemma23", "apply_prop21",
    "apply_prop22_triangle", "apply_rewrite", "complete_site", "triangle_case",
    "Instance", "generate_instances", "random_block_graph",
]
