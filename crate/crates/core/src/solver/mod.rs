//! Perturbation solvers behind a common result type.
//!
//! QUBO-based solvers ([`brute`], [`anneal`]) produce candidate bit strings
//! ("reads"); [`select_with_fallback`] decodes them, scores them on the
//! original transmit power and falls back to zero forcing when none beats it.
//! The lattice solvers ([`sphere`], [`fse`]) search the perturbation directly.

pub mod anneal;
pub mod brute;
pub mod fse;
mod select;
pub mod sphere;

use std::fmt;
use std::str::FromStr;
use std::time::Duration;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::mimo::{PerturbationVector, VppInstance};

pub use anneal::{solve_sa, AnnealParams};
pub use brute::solve_brute_force;
pub use fse::solve_fse;
pub use select::select_with_fallback;
pub use sphere::solve_sphere_encoder;

#[derive(Debug, Error)]
pub enum SolverError {
    #[error("exhaustive search limited to {max} variables, problem has {n}")]
    TooLarge { n: usize, max: usize },
    #[error("problem carries no perturbation variable map")]
    MissingVarMap,
    #[error("at least one read is required")]
    NoReads,
    #[error("FSE breadth must be at least 1")]
    ZeroBreadth,
    #[error("unknown solver {0:?} (expected brute, sa, sphere, fse or zf)")]
    UnknownSolver(String),
    #[error(transparent)]
    Qubo(#[from] crate::qubo::QuboError),
}

/// One candidate returned by a QUBO solver.
#[derive(Debug, Clone, PartialEq)]
pub struct Read {
    pub bits: Vec<u8>,
    /// Objective (energy plus offset) on the problem the solver was given.
    pub energy: f64,
}

#[derive(Debug, Clone)]
pub struct SolverResult {
    pub best_v: PerturbationVector,
    /// Transmit power `‖P (u + tau v)‖²` of `best_v`.
    pub best_objective: f64,
    pub all_reads: Vec<Read>,
    pub wall_time: Duration,
    pub reads_used: usize,
    pub fallback_used: bool,
    /// Tree nodes expanded by the lattice solvers.
    pub nodes_visited: u64,
    /// Mean broken-chain fraction over reads when run on the hardware model.
    pub broken_chain_fraction: Option<f64>,
}

impl SolverResult {
    /// Plain zero forcing.
    pub fn zero_forcing(inst: &VppInstance) -> Self {
        Self {
            best_v: PerturbationVector::zeros(inst.n_r()),
            best_objective: inst.zf_objective(),
            all_reads: Vec::new(),
            wall_time: Duration::ZERO,
            reads_used: 0,
            fallback_used: false,
            nodes_visited: 0,
            broken_chain_fraction: None,
        }
    }

    /// Equality on everything except timing.
    pub fn same_outcome(&self, other: &Self) -> bool {
        self.best_v == other.best_v
            && self.best_objective.to_bits() == other.best_objective.to_bits()
            && self.all_reads == other.all_reads
            && self.reads_used == other.reads_used
            && self.fallback_used == other.fallback_used
            && self.nodes_visited == other.nodes_visited
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SolverKind {
    Brute,
    Sa,
    Sphere,
    Fse,
    Zf,
}

impl SolverKind {
    pub fn name(self) -> &'static str {
        match self {
            SolverKind::Brute => "brute",
            SolverKind::Sa => "sa",
            SolverKind::Sphere => "sphere",
            SolverKind::Fse => "fse",
            SolverKind::Zf => "zf",
        }
    }

    /// Whether the solver works on the QUBO form.
    pub fn uses_qubo(self) -> bool {
        matches!(self, SolverKind::Brute | SolverKind::Sa)
    }
}

impl fmt::Display for SolverKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SolverKind {
    type Err = SolverError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "brute" => Ok(SolverKind::Brute),
            "sa" => Ok(SolverKind::Sa),
            "sphere" => Ok(SolverKind::Sphere),
            "fse" => Ok(SolverKind::Fse),
            "zf" => Ok(SolverKind::Zf),
            _ => Err(SolverError::UnknownSolver(s.to_string())),
        }
    }
}

/// Box `[-2^t, 2^t - 1]` candidates ordered by distance to `center`,
/// ties toward the smaller integer.
pub(crate) fn box_candidates(center: f64, lo: i64, hi: i64, out: &mut Vec<i64>) {
    out.clear();
    out.extend(lo..=hi);
    out.sort_by(|a, b| {
        let da = (*a as f64 - center).abs();
        let db = (*b as f64 - center).abs();
        da.total_cmp(&db).then(a.cmp(b))
    });
}
