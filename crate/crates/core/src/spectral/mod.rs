//! Numerical and exact checks of the heat-semigroup definition of ℓ²-Betti numbers.

mod compress;
mod expm;
mod gap;
mod heat;
mod kernel;

pub use compress::{compress, compress_exact, compress_onto, CompressedOperator, CsrMatrix};
pub use expm::expm_action;
pub use gap::{spectral_gap_probe, MAX_DENSE_DIM};
pub use heat::{
    heat_limit_scan, heat_trace_exact, heat_trace_numeric, moment_traces, remainder_bound, taylor_heat,
    validate_schedules, ClassSummary, ConvergenceStatus, ExactHeatTrace, HeatReport, HeatRow, NumericHeat,
    DEFAULT_TOLERANCE,
};
pub use kernel::{
    inverse_on_complement, verify_kernel_structure, verify_kernel_structure_with, KernelReport, DEFAULT_RADIUS,
    RESIDUAL_THRESHOLD,
};
