//! Annealer hardware constraints: Chimera connectivity, clique minor
//! embedding with ferromagnetic chains, programmable coefficient ranges,
//! intrinsic control errors and chain-break resolution.

mod chimera;
mod device;
mod embedding;
mod ice;
mod sample;

use thiserror::Error;

pub use chimera::{chimera, HardwareGraph, QubitCoord};
pub use device::{embed_problem, embed_unscaled, unembed, DeviceRanges, EmbeddedProblem};
pub use embedding::{
    clique_block, clique_embed, clique_embed_at, clique_qubits, parallel_capacity, place_tiles,
    Embedding, Placement,
};
pub use ice::{apply_ice, IceModel};
pub use sample::{
    chain_strength, prepare, sample_embedded, sample_physical, solve_on_hardware_model, HardwareConfig,
};

#[derive(Debug, Error)]
pub enum HardwareError {
    #[error("{n} variables exceed the clique capacity {capacity}; need a grid of at least {required_grid}")]
    CapacityExceeded {
        n: usize,
        capacity: usize,
        required_grid: usize,
    },
    #[error("no physical coupler between the chains of variables {a} and {b}")]
    MissingCoupler { a: usize, b: usize },
    #[error("embedding does not cover variable {0}")]
    UncoveredVariable(usize),
    #[error("invalid embedding: {0}")]
    InvalidEmbedding(String),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error(transparent)]
    Solver(#[from] crate::solver::SolverError),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}
