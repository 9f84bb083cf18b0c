use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::mimo::VppInstance;
use crate::qubo::{spins_to_bits, IsingProblem, QuboProblem};
use crate::rng::{substream, tag};
use crate::solver::anneal::SpinSystem;
use crate::solver::{select_with_fallback, AnnealParams, Read, SolverError, SolverResult};

use super::{apply_ice, chimera, clique_embed, embed_problem, unembed, DeviceRanges, EmbeddedProblem, HardwareError, IceModel};

/// Hardware-model settings: Chimera grid, chain strength relative to the
/// largest logical coupler `J_m`, control-error noise and device ranges.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HardwareConfig {
    pub grid: usize,
    pub jf_mult: f64,
    pub ice: IceModel,
    pub ranges: DeviceRanges,
}

impl Default for HardwareConfig {
    fn default() -> Self {
        Self {
            grid: 16,
            jf_mult: 1.2,
            ice: IceModel::default(),
            ranges: DeviceRanges::default(),
        }
    }
}

/// `|J_F| = jf_mult * J_m`; falls back to `jf_mult` for coupling-free problems.
pub fn chain_strength(logical: &IsingProblem, jf_mult: f64) -> f64 {
    let jm = logical.max_abs_coupling();
    if jm > 0.0 {
        jf_mult * jm
    } else {
        jf_mult
    }
}

/// Clique-embeds a logical problem with the configured chain strength.
pub fn prepare(logical: &IsingProblem, cfg: &HardwareConfig) -> Result<EmbeddedProblem, HardwareError> {
    let g = chimera(cfg.grid);
    let e = clique_embed(logical.n_vars(), &g)?.with_chain_strength(chain_strength(logical, cfg.jf_mult));
    embed_problem(logical, &e, &g, &cfg.ranges)
}

/// Reads on the embedded problem: ICE draw, annealing over physical qubits,
/// majority-vote unembedding, decode, then selection on the original objective.
///
/// `qubo` is the problem as programmed (possibly pre-processed) and must carry
/// its variable map.
pub fn solve_on_hardware_model(
    inst: &VppInstance,
    qubo: &QuboProblem,
    cfg: &HardwareConfig,
    params: &AnnealParams,
) -> Result<SolverResult, HardwareError> {
    let start = Instant::now();
    let map = qubo.var_map().ok_or(SolverError::MissingVarMap)?;
    let logical = qubo.to_ising();
    let emb = prepare(&logical, cfg)?;
    let (reads, broken) = sample_embedded(&emb, &logical, cfg.ice, params);
    let reads = reads
        .into_iter()
        .map(|s| {
            let bits = spins_to_bits(&s);
            let energy = qubo.objective(&bits);
            Read { bits, energy }
        })
        .collect();
    let mut res = select_with_fallback(reads, map, inst)?;
    res.broken_chain_fraction = Some(broken);
    res.wall_time = start.elapsed();
    Ok(res)
}

/// Raw physical reads on an embedded problem. Each read draws fresh control
/// errors from its own substream before annealing.
pub fn sample_physical(emb: &EmbeddedProblem, ice: IceModel, params: &AnnealParams) -> Vec<Vec<i8>> {
    let betas = params.betas();
    let clean = SpinSystem::new(&emb.physical);
    (0..params.num_reads)
        .map(|r| {
            let mut rng = params.read_stream(r);
            if ice.is_noiseless() {
                clean.anneal(&betas, &mut rng)
            } else {
                let mut ice_rng = substream(params.seed, &[tag::ICE, r as u64]);
                let noisy = apply_ice(&emb.physical, &ice, &mut ice_rng);
                SpinSystem::new(&noisy).anneal(&betas, &mut rng)
            }
        })
        .collect()
}

/// Runs `params.num_reads` reads on an embedded problem and returns the
/// unembedded logical spins of each read with the mean broken-chain fraction.
pub fn sample_embedded(
    emb: &EmbeddedProblem,
    logical: &IsingProblem,
    ice: IceModel,
    params: &AnnealParams,
) -> (Vec<Vec<i8>>, f64) {
    let mut broken_total = 0.0;
    let reads: Vec<Vec<i8>> = sample_physical(emb, ice, params)
        .iter()
        .map(|physical| {
            let (spins, broken) = unembed(physical, emb, logical);
            broken_total += broken;
            spins
        })
        .collect();
    let mean = if reads.is_empty() {
        0.0
    } else {
        broken_total / reads.len() as f64
    };
    (reads, mean)
}
