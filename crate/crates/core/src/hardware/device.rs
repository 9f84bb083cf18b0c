use serde::{Deserialize, Serialize};

use crate::qubo::IsingProblem;

use super::embedding::first_coupler;
use super::{Embedding, HardwareError, HardwareGraph};

/// Programmable coefficient ranges of the device.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DeviceRanges {
    pub h_min: f64,
    pub h_max: f64,
    pub j_min: f64,
    pub j_max: f64,
    /// Quantize programmed coefficients to this many bits; off when `None`.
    pub precision_bits: Option<u32>,
}

impl Default for DeviceRanges {
    fn default() -> Self {
        Self {
            h_min: -2.0,
            h_max: 2.0,
            j_min: -2.0,
            j_max: 1.0,
            precision_bits: None,
        }
    }
}

impl DeviceRanges {
    /// Largest factor that keeps every coefficient of `p` within range.
    pub fn fit_factor(&self, p: &IsingProblem) -> f64 {
        let mut factor = f64::INFINITY;
        for &h in &p.h {
            if h > 0.0 {
                factor = factor.min(self.h_max / h);
            } else if h < 0.0 {
                factor = factor.min(self.h_min / h);
            }
        }
        for &j in p.j.values() {
            if j > 0.0 {
                factor = factor.min(self.j_max / j);
            } else if j < 0.0 {
                factor = factor.min(self.j_min / j);
            }
        }
        if factor.is_finite() {
            factor
        } else {
            1.0
        }
    }

    fn quantize(&self, v: f64, lo: f64, hi: f64) -> f64 {
        match self.precision_bits {
            None => v,
            Some(bits) => {
                let step = (hi - lo) / ((1u64 << bits) - 1) as f64;
                ((v / step).round() * step).clamp(lo, hi)
            }
        }
    }
}

/// A logical problem laid out on physical qubits.
///
/// Only the qubits used by the embedding are kept: index `i` of `physical`
/// is hardware qubit `qubits[i]`, and `chains` lists compact indices.
#[derive(Debug, Clone)]
pub struct EmbeddedProblem {
    pub physical: IsingProblem,
    pub qubits: Vec<usize>,
    pub chains: Vec<Vec<usize>>,
    /// Factor applied to fit the device ranges (1 when not normalized).
    pub scale: f64,
}

impl EmbeddedProblem {
    pub fn n_physical(&self) -> usize {
        self.qubits.len()
    }

    /// Physical spins with every chain set to its logical value.
    pub fn spread(&self, logical: &[i8]) -> Vec<i8> {
        let mut out = vec![1; self.qubits.len()];
        for (chain, &s) in self.chains.iter().zip(logical) {
            for &q in chain {
                out[q] = s;
            }
        }
        out
    }
}

/// Embeds without range normalization: biases split evenly over each chain,
/// each logical coupling on the lexicographically first coupler between the
/// two chains, `-|J_F|` on every coupler inside a chain.
pub fn embed_unscaled(
    p: &IsingProblem,
    e: &Embedding,
    g: &HardwareGraph,
) -> Result<EmbeddedProblem, HardwareError> {
    if e.chains.len() < p.n_vars() {
        return Err(HardwareError::UncoveredVariable(e.chains.len()));
    }
    let chains_hw = &e.chains[..p.n_vars()];
    let qubits: Vec<usize> = chains_hw.iter().flatten().copied().collect();
    let mut index = vec![usize::MAX; g.num_qubits()];
    for (i, &q) in qubits.iter().enumerate() {
        if q >= g.num_qubits() {
            return Err(HardwareError::InvalidEmbedding(format!("qubit {q} outside the graph")));
        }
        index[q] = i;
    }
    let mut phys = IsingProblem::new(qubits.len());
    phys.offset = p.offset;
    let mut chains = Vec::with_capacity(chains_hw.len());
    for (var, chain) in chains_hw.iter().enumerate() {
        let share = p.h[var] / chain.len() as f64;
        for &q in chain {
            phys.h[index[q]] += share;
        }
        for (a, &qa) in chain.iter().enumerate() {
            for &qb in &chain[a + 1..] {
                if g.has_coupler(qa, qb) {
                    phys.add_coupling(index[qa], index[qb], -e.chain_strength);
                }
            }
        }
        chains.push(chain.iter().map(|&q| index[q]).collect());
    }
    for (&(a, b), &j) in &p.j {
        if j == 0.0 {
            continue;
        }
        let (qa, qb) =
            first_coupler(&chains_hw[a], &chains_hw[b], g).ok_or(HardwareError::MissingCoupler { a, b })?;
        phys.add_coupling(index[qa], index[qb], j);
    }
    Ok(EmbeddedProblem {
        physical: phys,
        qubits,
        chains,
        scale: 1.0,
    })
}

/// [`embed_unscaled`] followed by a single rescale into the device ranges
/// (and quantization when enabled).
pub fn embed_problem(
    p: &IsingProblem,
    e: &Embedding,
    g: &HardwareGraph,
    ranges: &DeviceRanges,
) -> Result<EmbeddedProblem, HardwareError> {
    let mut emb = embed_unscaled(p, e, g)?;
    let factor = ranges.fit_factor(&emb.physical);
    let phys = &mut emb.physical;
    for h in &mut phys.h {
        *h = ranges.quantize(*h * factor, ranges.h_min, ranges.h_max);
    }
    for j in phys.j.values_mut() {
        *j = ranges.quantize(*j * factor, ranges.j_min, ranges.j_max);
    }
    phys.offset *= factor;
    emb.scale = factor;
    Ok(emb)
}

/// Majority vote per chain. Tied chains are then settled one by one in index
/// order, each taking the value with lower logical energy given the rest.
/// Returns logical spins and the fraction of chains that were broken.
pub fn unembed(physical: &[i8], emb: &EmbeddedProblem, logical: &IsingProblem) -> (Vec<i8>, f64) {
    let mut spins = Vec::with_capacity(emb.chains.len());
    let mut ties = Vec::new();
    let mut broken = 0usize;
    for (var, chain) in emb.chains.iter().enumerate() {
        let sum: i32 = chain.iter().map(|&q| physical[q] as i32).sum();
        if sum.unsigned_abs() as usize != chain.len() {
            broken += 1;
        }
        spins.push(match sum.signum() {
            1 => 1,
            -1 => -1,
            _ => {
                ties.push(var);
                1
            }
        });
    }
    if !ties.is_empty() {
        let adj = logical.adjacency();
        for var in ties {
            let field: f64 = logical.h[var] + adj[var].iter().map(|&(j, v)| v * spins[j] as f64).sum::<f64>();
            // energy contribution is s * field
            spins[var] = if field > 0.0 { -1 } else { 1 };
        }
    }
    let frac = if emb.chains.is_empty() {
        0.0
    } else {
        broken as f64 / emb.chains.len() as f64
    };
    (spins, frac)
}
