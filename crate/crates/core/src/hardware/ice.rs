use rand::Rng;
use rand_distr::{Distribution, Normal};
use serde::{Deserialize, Serialize};

use crate::qubo::IsingProblem;

/// Intrinsic control errors: independent Gaussian offsets on every programmed
/// bias and coupler.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IceModel {
    pub sigma_h: f64,
    pub sigma_j: f64,
}

impl Default for IceModel {
    fn default() -> Self {
        Self {
            sigma_h: 0.01,
            sigma_j: 0.01,
        }
    }
}

impl IceModel {
    pub fn none() -> Self {
        Self {
            sigma_h: 0.0,
            sigma_j: 0.0,
        }
    }

    pub fn is_noiseless(&self) -> bool {
        self.sigma_h == 0.0 && self.sigma_j == 0.0
    }
}

/// Perturbs every nonzero coefficient of `p` with a fresh draw.
pub fn apply_ice<R: Rng + ?Sized>(p: &IsingProblem, ice: &IceModel, rng: &mut R) -> IsingProblem {
    let mut out = p.clone();
    if ice.is_noiseless() {
        return out;
    }
    let dh = Normal::new(0.0, ice.sigma_h).expect("sigma_h must be finite and non-negative");
    let dj = Normal::new(0.0, ice.sigma_j).expect("sigma_j must be finite and non-negative");
    for h in out.h.iter_mut().filter(|h| **h != 0.0) {
        *h += dh.sample(rng);
    }
    for j in out.j.values_mut().filter(|j| **j != 0.0) {
        *j += dj.sample(rng);
    }
    out
}
