use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::MimoError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Modulation {
    #[serde(rename = "BPSK")]
    Bpsk,
    #[serde(rename = "QPSK")]
    Qpsk,
    #[serde(rename = "16QAM")]
    Qam16,
    #[serde(rename = "64QAM")]
    Qam64,
}

impl Modulation {
    pub const ALL: [Modulation; 4] = [
        Modulation::Bpsk,
        Modulation::Qpsk,
        Modulation::Qam16,
        Modulation::Qam64,
    ];

    pub fn bits_per_symbol(self) -> usize {
        match self {
            Modulation::Bpsk => 1,
            Modulation::Qpsk => 2,
            Modulation::Qam16 => 4,
            Modulation::Qam64 => 6,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Modulation::Bpsk => "BPSK",
            Modulation::Qpsk => "QPSK",
            Modulation::Qam16 => "16QAM",
            Modulation::Qam64 => "64QAM",
        }
    }
}

impl fmt::Display for Modulation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Modulation {
    type Err = MimoError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_uppercase().replace(['-', '_'], "").as_str() {
            "BPSK" => Ok(Modulation::Bpsk),
            "QPSK" | "4QAM" => Ok(Modulation::Qpsk),
            "16QAM" | "QAM16" => Ok(Modulation::Qam16),
            "64QAM" | "QAM64" => Ok(Modulation::Qam64),
            _ => Err(MimoError::UnknownModulation(s.to_string())),
        }
    }
}

/// Unnormalized Gray-mapped constellation with odd-integer coordinates.
///
/// `c_max` is the largest per-axis amplitude, so that the per-axis modulo cell
/// `[-tau/2, tau/2)` leaves a half spacing of margin around the outermost
/// points: `tau = 2 (c_max + delta / 2)`.
#[derive(Debug, Clone, PartialEq)]
pub struct Constellation {
    modulation: Modulation,
    points: Vec<Complex64>,
    c_max: f64,
    delta: f64,
    tau: f64,
}

/// Levels per real axis and bits carried by that axis.
fn axis_layout(m: Modulation) -> (usize, usize) {
    match m {
        Modulation::Bpsk => (2, 1),
        Modulation::Qpsk => (2, 1),
        Modulation::Qam16 => (4, 2),
        Modulation::Qam64 => (8, 3),
    }
}

fn gray(i: usize) -> usize {
    i ^ (i >> 1)
}

fn gray_inverse(mut g: usize) -> usize {
    let mut i = g;
    while g > 1 {
        g >>= 1;
        i ^= g;
    }
    i
}

fn level_coordinate(index: usize, levels: usize) -> f64 {
    (2 * index) as f64 - (levels - 1) as f64
}

/// Nearest level on one axis; exact midpoints go to the lower level.
fn slice_axis(x: f64, levels: usize) -> usize {
    let pos = (x + (levels - 1) as f64) / 2.0;
    let idx = (pos - 0.5).ceil();
    idx.clamp(0.0, (levels - 1) as f64) as usize
}

impl Constellation {
    pub fn new(modulation: Modulation) -> Self {
        let (levels, axis_bits) = axis_layout(modulation);
        let points = match modulation {
            Modulation::Bpsk => vec![Complex64::new(-1.0, 0.0), Complex64::new(1.0, 0.0)],
            _ => (0..1usize << modulation.bits_per_symbol())
                .map(|s| {
                    let gi = gray_inverse(s >> axis_bits);
                    let gq = gray_inverse(s & ((1 << axis_bits) - 1));
                    Complex64::new(level_coordinate(gi, levels), level_coordinate(gq, levels))
                })
                .collect(),
        };
        let c_max = (levels - 1) as f64;
        let delta = 2.0;
        Self {
            modulation,
            points,
            c_max,
            delta,
            tau: 2.0 * (c_max + delta / 2.0),
        }
    }

    pub fn modulation(&self) -> Modulation {
        self.modulation
    }

    /// Points indexed by symbol value (bits read MSB first).
    pub fn points(&self) -> &[Complex64] {
        &self.points
    }

    pub fn c_max(&self) -> f64 {
        self.c_max
    }

    pub fn delta(&self) -> f64 {
        self.delta
    }

    pub fn tau(&self) -> f64 {
        self.tau
    }

    pub fn bits_per_symbol(&self) -> usize {
        self.modulation.bits_per_symbol()
    }

    pub fn is_complex(&self) -> bool {
        self.modulation != Modulation::Bpsk
    }

    /// Maps `bits_per_symbol` bits (MSB first) to a symbol index.
    pub fn symbol_index(&self, bits: &[u8]) -> usize {
        bits.iter().fold(0, |acc, &b| (acc << 1) | (b & 1) as usize)
    }

    pub fn map(&self, bits: &[u8]) -> Complex64 {
        self.points[self.symbol_index(bits)]
    }

    pub fn bits_of(&self, index: usize) -> Vec<u8> {
        let bps = self.bits_per_symbol();
        (0..bps).rev().map(|k| ((index >> k) & 1) as u8).collect()
    }

    /// Nearest-neighbour decision. Ties resolve toward the lexicographically
    /// smallest `(re, im)`.
    pub fn slice(&self, z: Complex64) -> usize {
        let (levels, axis_bits) = axis_layout(self.modulation);
        match self.modulation {
            Modulation::Bpsk => slice_axis(z.re, levels),
            _ => {
                let i = gray(slice_axis(z.re, levels));
                let q = gray(slice_axis(z.im, levels));
                (i << axis_bits) | q
            }
        }
    }
}
