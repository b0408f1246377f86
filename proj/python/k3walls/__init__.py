"""Exact wall-crossing computations for moduli of sheaves on K3 surfaces of Picard rank one."""

from ._core import (
    chern_to_mukai,
    classify_wall,
    compute_l,
    euler_chi,
    find_holes_on_ray,
    is_valid_point,
    mukai_pairing,
    numerical_wall,
    orthogonal_basis,
    parse_config,
    reflect,
    render_figures,
    run_report,
    search_destabilizers,
    wall_image,
)

__all__ = [
    "chern_to_mukai",
    "classify_wall",
    "compute_l",
    "euler_chi",
    "find_holes_on_ray",
    "is_valid_point",
    "mukai_pairing",
    "numerical_wall",
    "orthogonal_basis",
    "parse_config",
    "reflect",
    "render_figures",
    "run_report",
    "search_destabilizers",
    "wall_image",
]
