//! QUBO reduction of the perturbation search and the QUBO/Ising transforms.

mod build;
mod expansion;
pub mod format;
mod problem;

use thiserror::Error;

pub use build::build_qubo;
pub use expansion::{
    bits_to_integer, decode_bits, integer_to_bits, logical_qubit_count, BitDepth, Part, VarMap,
    VarTag,
};
pub use format::{qubo_to_string, read_qubo, write_qubo};
pub use problem::{
    bits_to_spins, ising_to_qubo, qubo_to_ising, spins_to_bits, IsingProblem, QuboProblem,
};

#[derive(Debug, Error)]
pub enum QuboError {
    #[error("bit depth must be in 1..=30, got {0}")]
    InvalidBitDepth(u32),
    #[error("length mismatch: expected {expected}, found {found}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("perturbation component {0} outside the representable range")]
    OutOfRange(i64),
    #[error("coefficient index ({i}, {j}) out of bounds for {n} variables")]
    IndexOutOfBounds { i: usize, j: usize, n: usize },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}
