use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::hardware::{solve_on_hardware_model, HardwareError};
use crate::mimo::{
    ebn0_db, generate_channel, receive_decode, transmit, Constellation, MimoError, SymbolVector,
    VppInstance,
};
use crate::preprocess::{self, preprocess};
use crate::qubo::build_qubo;
use crate::rng::{derive_seed, substream, tag};
use crate::solver::{self, SolverError, SolverKind, SolverResult};

use super::{ConfigError, PointSummary, SimConfig, TrialRecord};

/// Attempts per trial before an ill-conditioned streak is treated as fatal.
pub const MAX_REDRAWS: u32 = 1000;

/// PPL needs two exhaustive solves per trial, so it is tracked only up to this size.
pub const PPL_MAX_VARS: usize = 12;

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("{0}")]
    Config(#[from] ConfigError),
    #[error("channel draw failed: {0}")]
    Mimo(#[from] MimoError),
    #[error("solver failed: {0}")]
    Solver(#[from] SolverError),
    #[error("hardware model failed: {0}")]
    Hardware(#[from] HardwareError),
    #[error("fallback guarantee violated at snr index {snr_index}, trial {trial}")]
    FallbackViolated { snr_index: usize, trial: usize },
    #[error("output error: {0}")]
    Io(#[from] std::io::Error),
    #[error("output error: {0}")]
    Csv(#[from] csv::Error),
    #[error("output error: {0}")]
    Json(#[from] serde_json::Error),
}

impl HarnessError {
    /// Process exit code: 2 for configuration problems, 3 for runtime failures.
    pub fn exit_code(&self) -> i32 {
        match self {
            HarnessError::Config(_) => 2,
            _ => 3,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Summary {
    pub solver: String,
    pub master_seed: u64,
    pub total_trials: usize,
    pub points: Vec<PointSummary>,
    pub config: SimConfig,
}

#[derive(Debug, Clone)]
pub struct SweepOutput {
    pub records: Vec<TrialRecord>,
    pub summary: Summary,
}

fn draw_channel(
    cfg: &SimConfig,
    snr_index: usize,
    trial: usize,
) -> Result<(crate::mimo::ChannelInstance, u64, u32), HarnessError> {
    let mut last = None;
    for attempt in 0..MAX_REDRAWS {
        let path = [tag::CHANNEL, snr_index as u64, trial as u64, attempt as u64];
        let seed = derive_seed(cfg.master_seed, &path);
        match generate_channel(cfg.n_t, cfg.n_r, &mut substream(cfg.master_seed, &path)) {
            Ok(ch) => return Ok((ch, seed, attempt)),
            Err(e @ MimoError::IllConditioned { .. }) => last = Some(e),
            Err(e) => return Err(e.into()),
        }
    }
    Err(last.expect("at least one attempt").into())
}

/// Builds the instance a trial works on; identical across solvers for the
/// same `(master_seed, snr_index, trial)`.
pub fn trial_instance(
    cfg: &SimConfig,
    snr_index: usize,
    trial: usize,
) -> Result<(VppInstance, u64, u32), HarnessError> {
    let (channel, seed, redraws) = draw_channel(cfg, snr_index, trial)?;
    let cons = Constellation::new(cfg.modulation);
    let mut data_rng = substream(cfg.master_seed, &[tag::DATA, snr_index as u64, trial as u64]);
    let u = SymbolVector::random(&cons, cfg.n_r, &mut data_rng);
    Ok((VppInstance::new(channel, cons, u)?, seed, redraws))
}

fn solve(
    cfg: &SimConfig,
    inst: &VppInstance,
    solver_seed: u64,
) -> Result<(SolverResult, Option<f64>), HarnessError> {
    let depth = cfg.bit_depth();
    let s = &cfg.solver;
    Ok(match s.kind {
        SolverKind::Zf => (SolverResult::zero_forcing(inst), None),
        SolverKind::Sphere => (solver::solve_sphere_encoder(inst, depth), None),
        SolverKind::Fse => (solver::solve_fse(inst, depth, s.breadth)?, None),
        SolverKind::Brute | SolverKind::Sa => {
            let qubo = build_qubo(inst, depth);
            let (programmed, ppl) = match cfg.preprocess_config() {
                Some(pc) => {
                    let (pre, _) = preprocess(&qubo, &pc);
                    let ppl = (qubo.n_vars() <= PPL_MAX_VARS)
                        .then(|| preprocess::ppl(&qubo, &pre).ok())
                        .flatten();
                    (pre, ppl)
                }
                None => (qubo, None),
            };
            let res = match s.kind {
                SolverKind::Brute => solver::solve_brute_force(inst, &programmed)?,
                _ if cfg.hw_model.enabled => solve_on_hardware_model(
                    inst,
                    &programmed,
                    &cfg.hw_model.to_config(),
                    &s.anneal_params(solver_seed),
                )?,
                _ => solver::solve_sa(inst, &programmed, &s.anneal_params(solver_seed))?,
            };
            (res, ppl)
        }
    })
}

/// One complete trial: channel, data, perturbation search, transmission, decoding.
pub fn run_trial(cfg: &SimConfig, snr_index: usize, trial: usize) -> Result<TrialRecord, HarnessError> {
    let snr_db = cfg.snr_points[snr_index];
    let (inst, channel_seed, redraws) = trial_instance(cfg, snr_index, trial)?;
    let solver_seed = derive_seed(cfg.master_seed, &[tag::SOLVER, snr_index as u64, trial as u64]);

    let start = Instant::now();
    let (result, ppl) = solve(cfg, &inst, solver_seed)?;
    let elapsed = start.elapsed();

    let zf_p_t = inst.zf_objective();
    let mut noise = substream(cfg.master_seed, &[tag::NOISE, snr_index as u64, trial as u64]);
    let tx = transmit(
        &inst.channel,
        &inst.constellation,
        &inst.symbols,
        &result.best_v,
        snr_db,
        &mut noise,
    )?;
    if tx.p_t > zf_p_t {
        return Err(HarnessError::FallbackViolated { snr_index, trial });
    }
    let decoded = receive_decode(&tx.received, tx.p_t, &inst.constellation);
    let error_positions: Vec<u32> = decoded
        .bits
        .iter()
        .zip(&inst.symbols.bits)
        .enumerate()
        .filter(|(_, (a, b))| a != b)
        .map(|(i, _)| i as u32)
        .collect();
    Ok(TrialRecord {
        snr_index,
        snr_db,
        trial,
        channel_seed,
        redraws,
        chosen_v: result.best_v,
        p_t: tx.p_t,
        zf_p_t,
        bit_errors: error_positions.len(),
        bits: inst.symbols.bits.len(),
        error_positions,
        fallback_used: result.fallback_used,
        wall_time_us: if cfg.record_timing {
            elapsed.as_micros() as u64
        } else {
            0
        },
        broken_chain_fraction: result.broken_chain_fraction,
        ppl,
    })
}

/// Runs every `(snr, trial)` pair. Trials run in parallel; records come back
/// sorted by `(snr_index, trial)` so the output is schedule-independent.
pub fn run_sweep(cfg: &SimConfig) -> Result<SweepOutput, HarnessError> {
    cfg.validate()?;
    let jobs: Vec<(usize, usize)> = (0..cfg.snr_points.len())
        .flat_map(|s| (0..cfg.trials_per_point).map(move |t| (s, t)))
        .collect();
    let records = jobs
        .par_iter()
        .map(|&(s, t)| run_trial(cfg, s, t))
        .collect::<Result<Vec<_>, _>>()?;
    let summary = summarize(cfg, &records);
    Ok(SweepOutput { records, summary })
}

pub fn summarize(cfg: &SimConfig, records: &[TrialRecord]) -> Summary {
    let cons = Constellation::new(cfg.modulation);
    let points = cfg
        .snr_points
        .iter()
        .enumerate()
        .map(|(i, &snr)| {
            let recs: Vec<&TrialRecord> = records.iter().filter(|r| r.snr_index == i).collect();
            PointSummary::from_records(snr, ebn0_db(snr, &cons), &recs, cfg.packet_bits)
        })
        .collect();
    Summary {
        solver: cfg.solver.kind.to_string(),
        master_seed: cfg.master_seed,
        total_trials: records.len(),
        points,
        config: cfg.clone(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scalar_bpsk_high_snr_is_error_free() {
        let cfg = SimConfig {
            n_t: 1,
            n_r: 1,
            modulation: crate::mimo::Modulation::Bpsk,
            snr_points: vec![40.0],
            trials_per_point: 1000,
            solver: super::super::SolverConfig {
                kind: SolverKind::Brute,
                ..Default::default()
            },
            ..SimConfig::default()
        };
        let out = run_sweep(&cfg).unwrap();
        assert_eq!(out.records.len(), 1000);
        assert_eq!(out.summary.points[0].ber, Some(0.0));
        assert!(out.records.iter().all(|r| r.p_t <= r.zf_p_t));
    }

    #[test]
    fn invalid_config_maps_to_exit_code_2() {
        let cfg = SimConfig {
            trials_per_point: 0,
            ..SimConfig::default()
        };
        let e = run_sweep(&cfg).unwrap_err();
        assert_eq!(e.exit_code(), 2);
    }
}
