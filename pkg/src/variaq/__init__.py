"""variaq: variation-aware qubit mapping and reliability estimation.

Compiles logical circuits onto calibrated device snapshots with
error-rate-aware allocation and routing, and quantifies system-level
reliability analytically and by seeded Monte Carlo simulation.
"""

from .allocator import (
    AllocPolicy,
    Mapping,
    SwapMinimizing,
    Trivial,
    Vqa,
    allocate,
    estimated_swap_cost,
    select_strongest_subgraph,
)
from .circuit import (
    CircuitStats,
    LogicalCircuit,
    Measurement,
    OneQubitGate,
    TwoQubitGate,
    circuit_stats,
    decompose_swap,
    interaction_counts,
    parse_qasm,
    parse_qasm_file,
    serialize_qasm,
)
from .compiler import (
    PhysicalCircuit,
    PhysicalInstruction,
    SwapOverhead,
    compile_circuit,
    physical_to_qasm,
    swap_overhead,
    verify_semantics,
)
from .device import (
    CalibrationSeries,
    CalibrationSnapshot,
    CouplingLink,
    MetricStats,
    QubitCalibration,
    average_snapshot,
    connectivity_strength,
    link_success,
    load_series,
    load_snapshot,
    load_snapshot_file,
    save_snapshot,
    scale_error_rates,
    series_statistics,
)
from .partition import (
    PartitionPlan,
    StptReport,
    enumerate_partitions,
    evaluate_partitioning,
)
from .reliability import (
    ErrorModel,
    TrialStats,
    analytic_mibf,
    analytic_pst,
    classify_metric,
    monte_carlo,
)
from .router import (
    Baseline,
    CostModel,
    Route,
    RoutePolicy,
    Vqm,
    brute_force_best_route,
    find_route_baseline,
    find_route_vqm,
    route_success_probability,
)

__version__ = "0.1.0"
