"""Semi-Lagrangian solver for the polyatomic ES-BGK model."""

from ._polykin import (
    ConservedQuantities,
    ConvergenceRow,
    DegenerateTable,
    CellError,
    EnvelopeReport,
    Field,
    Grid,
    GridConfig,
    GridMismatch,
    InvalidConfig,
    MacroCell,
    OutOfRange,
    ParseError,
    PolykinError,
    Scenario,
    SchemeParams,
    SimulateResult,
    StepReport,
    SweepRow,
    ValidationError,
    advect,
    conserved,
    convergence,
    entropy,
    equilibrium_distance,
    error_norm,
    moments,
    normalizer,
    read_snapshot,
    simulate,
    step,
    sup_norm,
    sweep,
    write_snapshot,
)

__version__ = "0.1.0"
