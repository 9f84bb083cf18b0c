//! Sphere encoder: depth-first Fincke–Pohst search with Schnorr–Euchner
//! ordering on the triangularised real lattice.
//!
//! With `B = QR`, the transmit power is `‖y + tau R z‖²` where `y = R x_u`.
//! Levels run from the last component to the first; each level adds
//! `(s_i + tau R_ii z_i)²` to the partial metric, so a branch is dropped as
//! soon as its partial metric reaches the best complete metric found so far.

use std::time::Instant;

use nalgebra::{DMatrix, DVector};

use crate::mimo::{RealLattice, VppInstance};
use crate::qubo::BitDepth;

use super::{box_candidates, SolverResult};

/// Upper-triangular form of the perturbation search.
pub(crate) struct TreeForm {
    pub r: DMatrix<f64>,
    pub y: DVector<f64>,
    pub tau: f64,
    pub lo: i64,
    pub hi: i64,
}

impl TreeForm {
    pub fn new(inst: &VppInstance, depth: BitDepth) -> Self {
        let lattice = RealLattice::new(inst);
        let r = lattice.basis.clone().qr().r();
        let y = &r * &lattice.data;
        Self {
            r,
            y,
            tau: lattice.tau,
            lo: depth.min_value(),
            hi: depth.max_value(),
        }
    }

    pub fn dim(&self) -> usize {
        self.y.len()
    }

    /// `s_i = y_i + tau sum_{j>i} R_ij z_j`.
    pub fn residual(&self, level: usize, z: &[i64]) -> f64 {
        let n = self.dim();
        let tail: f64 = (level + 1..n).map(|j| self.r[(level, j)] * z[j] as f64).sum();
        self.y[level] + self.tau * tail
    }

    /// Real-valued minimiser of the level term.
    pub fn center(&self, level: usize, s: f64) -> f64 {
        -s / (self.tau * self.r[(level, level)])
    }

    pub fn increment(&self, level: usize, s: f64, zi: i64) -> f64 {
        let e = s + self.tau * self.r[(level, level)] * zi as f64;
        e * e
    }
}

struct Search<'a> {
    form: &'a TreeForm,
    z: Vec<i64>,
    best: Option<Vec<i64>>,
    radius: f64,
    nodes: u64,
    scratch: Vec<Vec<i64>>,
}

impl Search<'_> {
    fn descend(&mut self, level: usize, partial: f64) {
        let s = self.form.residual(level, &self.z);
        let c = self.form.center(level, s);
        let mut cands = std::mem::take(&mut self.scratch[level]);
        box_candidates(c, self.form.lo, self.form.hi, &mut cands);
        for &zi in &cands {
            let metric = partial + self.form.increment(level, s, zi);
            if metric >= self.radius {
                break;
            }
            self.nodes += 1;
            self.z[level] = zi;
            if level == 0 {
                self.radius = metric;
                self.best = Some(self.z.clone());
            } else {
                self.descend(level - 1, metric);
            }
        }
        self.z[level] = 0;
        self.scratch[level] = cands;
    }
}

/// Exact optimum over the box `[-2^t, 2^t - 1]^{2 n_r}`.
pub fn solve_sphere_encoder(inst: &VppInstance, depth: BitDepth) -> SolverResult {
    let start = Instant::now();
    let form = TreeForm::new(inst, depth);
    let n = form.dim();
    let mut search = Search {
        form: &form,
        z: vec![0; n],
        best: None,
        radius: f64::INFINITY,
        nodes: 0,
        scratch: vec![Vec::new(); n],
    };
    search.descend(n - 1, 0.0);
    let z = search.best.expect("box is nonempty so a leaf is always reached");
    let mut res = SolverResult::zero_forcing(inst);
    let v = RealLattice::unstack(&z);
    let obj = inst.objective(&v);
    if obj < res.best_objective {
        res.best_v = v;
        res.best_objective = obj;
    }
    res.nodes_visited = search.nodes;
    res.wall_time = start.elapsed();
    res
}
