"""Compatible Hamilton powers under incompatibility systems."""

from ._ihs import (
    IhsError,
    Instance,
    check_power,
    connect_ends,
    count_copies,
    count_mates,
    enumerate_absorbers,
    enumerate_mates,
    is_compatible,
    run_pipeline,
    solve_clique_factor,
    solve_hamilton_power,
)

__all__ = [
    "IhsError",
    "Instance",
    "check_power",
    "connect_ends",
    "count_copies",
    "count_mates",
    "enumerate_absorbers",
    "enumerate_mates",
    "is_compatible",
    "run_pipeline",
    "solve_clique_factor",
    "solve_hamilton_power",
]
