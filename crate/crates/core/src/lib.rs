//! Design-space exploration for multiband impulse-radio ultra-wideband links.
//!
//! - [`capacity`]: Shannon and IR-UWB capacity, duty cycle, capacity-versus-bandwidth tables.
//! - [`optimizer`]: subband count and bandwidth that maximise aggregate capacity
//!   under hardware, regulatory and duty-cycle limits.
//! - [`ingest`]: power delay profile files reduced to a delay spread.
//!
//! All values are SI base units (Hz, s, W, bit/s).

pub mod capacity;
pub mod error;
pub mod ingest;
pub mod optimizer;

pub use capacity::{
    duty_cycle, fig1_rows, fig1_series, ir_uwb_capacity, pulse_from_bandwidth, shannon_capacity,
    AwgnLinkParams, ChannelProfile, Fig1Row, Fig1RowKind, GridSpacing, PulseConfig, SignalLevel,
    SnrGate,
};
pub use error::{ModelError, PdpError};
pub use ingest::{
    load_pdp, max_excess_delay, parse_pdp, rms_delay_spread, write_pdp, DelaySpreadStatistic,
    PdpFormat, PowerDelayProfile, Tap,
};
pub use optimizer::{
    brute_force_optimize, bs_min, bs_min_bound, evaluate_point, mb_capacity, optimize, sweep,
    BsMin, BsMinBranch, Constraint, DesignConstraints, DesignPoint, OptimizationResult, SweepTable,
    Violation,
};
