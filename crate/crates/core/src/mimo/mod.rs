//! Downlink MU-MIMO link model: Rayleigh channels, zero-forcing precoding,
//! the vector-perturbation transmit power objective and modulo-tau reception.

mod channel;
mod constellation;
mod lattice;
mod link;
mod matrix;

use thiserror::Error;

pub use channel::{generate_channel, ChannelInstance, MAX_CONDITION};
pub use constellation::{Constellation, Modulation};
pub use lattice::RealLattice;
pub use link::{
    ebn0_db, modulo_tau, noise_variance, perturbed, receive_decode, transmit,
    transmit_with_variance, vpp_objective, PerturbationVector, SymbolVector, Transmission,
};
pub use matrix::ComplexMatrix;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum MimoError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("invalid antenna configuration n_t={n_t}, n_r={n_r} (need 1 <= n_r <= n_t)")]
    InvalidDimensions { n_t: usize, n_r: usize },
    #[error("ill-conditioned channel (condition number {condition:.3e})")]
    IllConditioned { condition: f64 },
    #[error("non-finite value")]
    NonFinite,
    #[error("degenerate transmit vector (zero power)")]
    DegenerateTransmit,
    #[error("unknown modulation {0:?}")]
    UnknownModulation(String),
}

/// A channel together with the user data it carries; the input every
/// perturbation solver works on.
#[derive(Debug, Clone)]
pub struct VppInstance {
    pub channel: ChannelInstance,
    pub constellation: Constellation,
    pub symbols: SymbolVector,
}

impl VppInstance {
    pub fn new(
        channel: ChannelInstance,
        constellation: Constellation,
        symbols: SymbolVector,
    ) -> Result<Self, MimoError> {
        if symbols.len() != channel.n_r() {
            return Err(MimoError::DimensionMismatch {
                expected: channel.n_r(),
                found: symbols.len(),
            });
        }
        Ok(Self {
            channel,
            constellation,
            symbols,
        })
    }

    /// Random channel and data; ill-conditioned channel draws are returned as errors.
    pub fn random<R: rand::Rng + ?Sized>(
        n_t: usize,
        n_r: usize,
        modulation: Modulation,
        rng: &mut R,
    ) -> Result<Self, MimoError> {
        let channel = generate_channel(n_t, n_r, rng)?;
        let constellation = Constellation::new(modulation);
        let symbols = SymbolVector::random(&constellation, n_r, rng);
        Self::new(channel, constellation, symbols)
    }

    pub fn n_r(&self) -> usize {
        self.channel.n_r()
    }

    pub fn objective(&self, v: &PerturbationVector) -> f64 {
        vpp_objective(&self.channel, &self.constellation, &self.symbols, v)
            .expect("instance dimensions validated at construction")
    }

    /// Transmit power of plain zero forcing (`v = 0`).
    pub fn zf_objective(&self) -> f64 {
        self.objective(&PerturbationVector::zeros(self.n_r()))
    }
}
