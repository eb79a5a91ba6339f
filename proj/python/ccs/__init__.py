"""Relaxation-based central scheme for coupled conservation laws."""

from ._ccs import (  # noqa: F401
    EigenStructure,
    RelaxState,
    RiemannSolution,
    characteristic_vars,
    contraction_bound_approach4,
    coupling_errors,
    eigenstructure,
    eoc,
    outtake,
    psystem_flux,
    relax_rate_a,
    run_psystem_experiment,
    solve_approach4,
    solve_kirchhoff,
    solve_linear_psystem,
)

__all__ = [
    "EigenStructure",
    "RelaxState",
    "RiemannSolution",
    "characteristic_vars",
    "contraction_bound_approach4",
    "coupling_errors",
    "eigenstructure",
    "eoc",
    "outtake",
    "psystem_flux",
    "relax_rate_a",
    "run_psystem_experiment",
    "solve_approach4",
    "solve_kirchhoff",
    "solve_linear_psystem",
]
