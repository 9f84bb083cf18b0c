//! Vector perturbation precoding for multi-user MIMO downlink, solved through
//! a QUBO reduction.
//!
//! The crate covers the whole chain:
//!
//! - [`mimo`]: Rayleigh channels, zero-forcing precoder, the transmit-power
//!   objective `‖P (u + tau v)‖²`, transmission and modulo-tau reception.
//! - [`qubo`]: signed bit expansion of `v`, QUBO construction, QUBO/Ising
//!   transforms and a text interchange format.
//! - [`preprocess`]: coefficient scaling and small-coefficient elimination
//!   ahead of an annealer, plus the loss it causes.
//! - [`solver`]: exhaustive search, a simulated-annealing stand-in for a
//!   quantum annealer, the sphere encoder and a fixed-complexity variant,
//!   with multi-read selection and zero-forcing fallback.
//! - [`hardware`]: Chimera topology, clique embedding with chains, device
//!   coefficient ranges, control-error noise and chain-break resolution.
//! - [`harness`]: seeded BER/throughput sweeps and their output files.

pub mod hardware;
pub mod harness;
pub mod mimo;
pub mod preprocess;
pub mod qubo;
pub mod rng;
pub mod solver;
