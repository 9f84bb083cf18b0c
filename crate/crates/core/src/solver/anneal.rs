//! Classical simulated annealing used as a stand-in for annealer reads.
//!
//! Each read starts from uniformly random spins and performs `sweeps` full
//! passes of single-spin-flip Metropolis updates in index order, with the
//! inverse temperature rising geometrically from `beta_start` to `beta_end`.
//! Reads draw from independent `(seed, read)` substreams.

use std::time::Instant;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::mimo::VppInstance;
use crate::qubo::{spins_to_bits, IsingProblem, QuboProblem};
use crate::rng::{substream, tag, Stream};

use super::{select_with_fallback, Read, SolverError, SolverResult};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AnnealParams {
    pub num_reads: usize,
    pub sweeps: usize,
    pub beta_start: f64,
    pub beta_end: f64,
    pub seed: u64,
}

impl Default for AnnealParams {
    fn default() -> Self {
        Self {
            num_reads: 100,
            sweeps: 100,
            beta_start: 0.1,
            beta_end: 10.0,
            seed: 0,
        }
    }
}

impl AnnealParams {
    pub fn new(num_reads: usize, sweeps: usize, seed: u64) -> Self {
        Self {
            num_reads,
            sweeps,
            seed,
            ..Self::default()
        }
    }

    /// Inverse temperature for each sweep; a single sweep runs at `beta_end`.
    pub fn betas(&self) -> Vec<f64> {
        match self.sweeps {
            0 => Vec::new(),
            1 => vec![self.beta_end],
            s => {
                let ratio = (self.beta_end / self.beta_start).powf(1.0 / (s - 1) as f64);
                (0..s).map(|k| self.beta_start * ratio.powi(k as i32)).collect()
            }
        }
    }

    /// The substream for read `index`.
    pub fn read_stream(&self, index: usize) -> Stream {
        substream(self.seed, &[tag::READ, index as u64])
    }
}

/// Sparse Ising model laid out for fast single-spin updates.
pub struct SpinSystem {
    h: Vec<f64>,
    offsets: Vec<usize>,
    neighbours: Vec<(usize, f64)>,
}

impl SpinSystem {
    pub fn new(p: &IsingProblem) -> Self {
        let adj = p.adjacency();
        let mut offsets = Vec::with_capacity(adj.len() + 1);
        let mut neighbours = Vec::new();
        offsets.push(0);
        for row in adj {
            neighbours.extend(row);
            offsets.push(neighbours.len());
        }
        Self {
            h: p.h.clone(),
            offsets,
            neighbours,
        }
    }

    pub fn len(&self) -> usize {
        self.h.len()
    }

    pub fn is_empty(&self) -> bool {
        self.h.is_empty()
    }

    /// One annealing read from random initial spins.
    pub fn anneal<R: Rng + ?Sized>(&self, betas: &[f64], rng: &mut R) -> Vec<i8> {
        let n = self.h.len();
        let mut spins: Vec<i8> = (0..n).map(|_| if rng.random::<bool>() { 1 } else { -1 }).collect();
        // local field h_i + sum_j J_ij s_j
        let mut field = self.h.clone();
        for i in 0..n {
            for &(j, v) in &self.neighbours[self.offsets[i]..self.offsets[i + 1]] {
                field[i] += v * spins[j] as f64;
            }
        }
        for &beta in betas {
            for i in 0..n {
                let s = spins[i] as f64;
                let delta = -2.0 * s * field[i];
                let accept = delta <= 0.0 || rng.random::<f64>() < (-beta * delta).exp();
                if accept {
                    spins[i] = -spins[i];
                    let change = -2.0 * s;
                    for &(j, v) in &self.neighbours[self.offsets[i]..self.offsets[i + 1]] {
                        field[j] += v * change;
                    }
                }
            }
        }
        spins
    }
}

/// Runs `num_reads` reads on an Ising problem; returns the final spins of each.
pub fn anneal_ising(p: &IsingProblem, params: &AnnealParams) -> Vec<Vec<i8>> {
    let system = SpinSystem::new(p);
    let betas = params.betas();
    (0..params.num_reads)
        .map(|r| system.anneal(&betas, &mut params.read_stream(r)))
        .collect()
}

/// Annealing reads on a QUBO, reported with their QUBO objective.
pub fn anneal_qubo(p: &QuboProblem, params: &AnnealParams) -> Vec<Read> {
    anneal_ising(&p.to_ising(), params)
        .into_iter()
        .map(|s| {
            let bits = spins_to_bits(&s);
            let energy = p.objective(&bits);
            Read { bits, energy }
        })
        .collect()
}

/// Annealing on the (possibly pre-processed) QUBO, then decode/fallback selection
/// on the original objective.
pub fn solve_sa(
    inst: &VppInstance,
    p: &QuboProblem,
    params: &AnnealParams,
) -> Result<SolverResult, SolverError> {
    if params.num_reads == 0 {
        return Err(SolverError::NoReads);
    }
    let start = Instant::now();
    let map = p.var_map().ok_or(SolverError::MissingVarMap)?;
    let reads = anneal_qubo(p, params);
    let mut res = select_with_fallback(reads, map, inst)?;
    res.wall_time = start.elapsed();
    Ok(res)
}
