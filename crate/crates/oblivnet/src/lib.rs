//! Data-oblivious sorting toolkit built around comparator networks.
//!
//! The centerpiece is zig-zag sort, a deterministic Shellsort-style
//! algorithm whose compare-exchange sequence depends only on the input
//! width, making it emittable as an O(n log n)-size sorting network. The
//! crate provides:
//!
//! - [`network`]: comparator networks with forward/reverse comparators and
//!   swap gates, execution, layering, 0-1 verification, and a line-based
//!   text format;
//! - [`halver`]: exact and seeded-expander halver fragments together with
//!   exhaustive measurement of their realized quality;
//! - [`zigzag`]: the sorting algorithm itself, both directly executable
//!   and emittable gate-for-gate as a network, plus closed-form gate-count
//!   predictions;
//! - [`analysis`]: instrumented runs that ledger per-subarray dirtiness
//!   and check the convergence bounds every iteration, plus the parameter
//!   calculators behind them;
//! - [`baselines`]: Batcher odd-even, bitonic, and Pratt-gap Shellsort
//!   networks for correctness cross-checks and gate-count comparisons;
//! - [`render`]: deterministic SVG diagrams.

pub mod analysis;
pub mod baselines;
pub mod frac;
pub mod halver;
pub mod network;
pub mod render;
pub mod zigzag;

pub use analysis::{
    beta_of, check_concentration, check_invariants, check_phase_bounds, constants_report,
    delta_fixpoint, epsilon_manos, run_all_checks, trace, AnalysisError, DirtinessTrace,
    InvariantReport,
};
pub use baselines::{batcher_network, bitonic_network, pratt_gaps, pratt_network, BaselineError};
pub use halver::{
    check_overflow, degree_constructive, degree_paterson, emit_halver, measure_attenuation,
    measure_epsilon, HalverError, HalverMeasurement, HalverSpec,
};
pub use network::{
    Gate, GateKind, Network, NetworkError, ParseError, VerificationReport, VerifyMode,
};
pub use render::render_svg;
pub use zigzag::{
    emit_attenuate, emit_reduce, emit_zigzag_network, emit_zigzag_network_annotated,
    predicted_counts, zigzag_sort, ZigZagConfig, ZigZagError, ZigZagRealization,
};
