"""Power-beacon placement and charging planner for wirelessly powered networks."""

from ._wetplan import (
    AllocationResult,
    ActivationParams,
    Deployment,
    EhParams,
    GainMatrix,
    Position,
    RadioParams,
    Scenario,
    SimulationReport,
    SweepRow,
    __version__,
    allocate,
    default_scenario,
    deploy_beacons,
    gain_matrix,
    harvest_rate,
    harvest_rate_inverse,
    load_scenario,
    min_enclosing_circle,
    parse_scenario,
    path_gain,
    run_monte_carlo,
    run_sweep,
    sweep_csv,
    validate_scenario,
)

__all__ = [
    "AllocationResult",
    "ActivationParams",
    "Deployment",
    "EhParams",
    "GainMatrix",
    "Position",
    "RadioParams",
    "Scenario",
    "SimulationReport",
    "SweepRow",
    "__version__",
    "allocate",
    "default_scenario",
    "deploy_beacons",
    "gain_matrix",
    "harvest_rate",
    "harvest_rate_inverse",
    "load_scenario",
    "min_enclosing_circle",
    "parse_scenario",
    "path_gain",
    "run_monte_carlo",
    "run_sweep",
    "sweep_csv",
    "validate_scenario",
]
