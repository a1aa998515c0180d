"""Periodic bang-bang schedules and costs for a two-state reactor model."""

from cstrcycle._core import (
    AlphaFamily,
    CaseResult,
    ControlBounds,
    DomainExitError,
    FlowResult,
    ModelParams,
    NewtonConfig,
    PeriodicSolution,
    PhysicalParams,
    Schedule,
    SolverError,
    Trajectory,
    __version__,
    alpha1_two_segment,
    case_labels,
    case_schedule,
    cost,
    cost_estimate,
    default_bounds,
    default_params,
    default_physical_params,
    dimensionless_from_physical,
    drift,
    feasible_alpha_family,
    fliess_state,
    flow,
    in_domain,
    integrate,
    iso_residual,
    iterated_integrals,
    jacobian_f0,
    make_schedule,
    periodicity_residual,
    run_case,
    run_table1,
    shoot_periodic,
    solve_alpha_and_x0,
    solve_alphas,
    solve_x0_expansion,
    strategy_order,
    strategy_schedule,
)

__all__ = [
    "AlphaFamily",
    "CaseResult",
    "ControlBounds",
    "DomainExitError",
    "FlowResult",
    "ModelParams",
    "NewtonConfig",
    "PeriodicSolution",
    "PhysicalParams",
    "Schedule",
    "SolverError",
    "Trajectory",
    "__version__",
    "alpha1_two_segment",
    "case_labels",
    "case_schedule",
    "cost",
    "cost_estimate",
    "default_bounds",
    "default_params",
    "default_physical_params",
    "dimensionless_from_physical",
    "drift",
    "feasible_alpha_family",
    "fliess_state",
    "flow",
    "in_domain",
    "integrate",
    "iso_residual",
    "iterated_integrals",
    "jacobian_f0",
    "make_schedule",
    "periodicity_residual",
    "run_case",
    "run_table1",
    "shoot_periodic",
    "solve_alpha_and_x0",
    "solve_alphas",
    "solve_x0_expansion",
    "strategy_order",
    "strategy_schedule",
]
