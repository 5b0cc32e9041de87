"""Planar straight-line realization of weighted 2-trees."""

from ._fepr import (
    BudgetExceeded,
    CheckResult,
    Embedding,
    Formula,
    FormulaError,
    HardInstance,
    Instance,
    MalformedRepresentation,
    NotATwoTree,
    ParseError,
    TriangleInequalityViolated,
    brute_force,
    check_embedding,
    check_planar,
    embedding_from_drawing,
    epsilon,
    realize,
    realize_fixed_embedding,
    realize_outerpath,
    realize_outerpillar,
    realize_spq,
    realize_two_lengths,
    realize_uniform,
    reduce,
    reduction_angles,
    render_svg,
    set_epsilon,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
