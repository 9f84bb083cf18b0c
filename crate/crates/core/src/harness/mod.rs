//! Seeded Monte-Carlo sweeps over SNR: per-trial channel draws, perturbation
//! search with the configured solver, transmission and decoding, then BER,
//! packet throughput and transmit-power statistics.
//!
//! Every random draw of a trial comes from a substream keyed by
//! `(master_seed, purpose, snr_index, trial)`, so two runs that differ only
//! in the solver see identical channels, data and noise.

mod config;
mod metrics;
mod output;
mod sweep;

pub use config::{
    ConfigError, FieldError, HardwareSection, PreprocessSection, SimConfig, SolverConfig,
};
pub use metrics::{ber, throughput, MetricsError, PointSummary, PplStats, TrialRecord};
pub use output::{emit_outputs, write_curve_csv, write_trials_csv, CURVE_HEADER, TRIALS_HEADER};
pub use sweep::{
    run_sweep, run_trial, summarize, trial_instance, HarnessError, Summary, SweepOutput,
    MAX_REDRAWS, PPL_MAX_VARS,
};
