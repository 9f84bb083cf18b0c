use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::mimo::PerturbationVector;

use super::QuboError;

/// Number of magnitude bits `t` in the signed expansion of each perturbation
/// component; each component uses `t + 1` binary variables and covers
/// `[-2^t, 2^t - 1]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct BitDepth(u32);

impl BitDepth {
    pub const MAX: u32 = 30;

    pub fn new(t: u32) -> Result<Self, QuboError> {
        if t == 0 || t > Self::MAX {
            return Err(QuboError::InvalidBitDepth(t));
        }
        Ok(Self(t))
    }

    pub fn get(self) -> u32 {
        self.0
    }

    pub fn bits_per_component(self) -> usize {
        self.0 as usize + 1
    }

    pub fn min_value(self) -> i64 {
        -(1i64 << self.0)
    }

    pub fn max_value(self) -> i64 {
        (1i64 << self.0) - 1
    }

    /// Weight of bit `m` (1-based): `2^{m-1}` for `m <= t`, `-2^t` for the sign bit.
    pub fn weight(self, m: u32) -> i64 {
        if m <= self.0 {
            1i64 << (m - 1)
        } else {
            -(1i64 << self.0)
        }
    }
}

impl Default for BitDepth {
    fn default() -> Self {
        Self(1)
    }
}

/// `sum_{m=1..t} 2^{m-1} q_m - 2^t q_{t+1}` for the `t + 1` bits in `bits`.
pub fn bits_to_integer(bits: &[u8]) -> i64 {
    let t = bits.len().saturating_sub(1);
    bits.iter().enumerate().fold(0, |acc, (i, &b)| {
        let w = if i < t { 1i64 << i } else { -(1i64 << t) };
        acc + w * (b & 1) as i64
    })
}

/// Inverse of [`bits_to_integer`]; `None` when `value` is outside the range.
pub fn integer_to_bits(value: i64, t: BitDepth) -> Option<Vec<u8>> {
    if value < t.min_value() || value > t.max_value() {
        return None;
    }
    let sign = u8::from(value < 0);
    let rest = value + (sign as i64) * (1i64 << t.get());
    let mut bits: Vec<u8> = (0..t.get()).map(|m| ((rest >> m) & 1) as u8).collect();
    bits.push(sign);
    Some(bits)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Part {
    Re,
    Im,
}

/// Which perturbation bit a QUBO variable stands for.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct VarTag {
    pub user: usize,
    pub part: Part,
    /// 1-based position in the expansion, `t + 1` is the sign bit.
    pub bit: u32,
}

/// Variable layout: for each user, `t + 1` bits of the real part followed by
/// `t + 1` bits of the imaginary part.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VarMap {
    n_r: usize,
    depth: BitDepth,
}

impl VarMap {
    pub fn new(n_r: usize, depth: BitDepth) -> Self {
        Self { n_r, depth }
    }

    pub fn n_r(&self) -> usize {
        self.n_r
    }

    pub fn depth(&self) -> BitDepth {
        self.depth
    }

    pub fn n_vars(&self) -> usize {
        logical_qubit_count(self.n_r, self.depth)
    }

    pub fn index(&self, tag: VarTag) -> usize {
        let per = self.depth.bits_per_component();
        let part = match tag.part {
            Part::Re => 0,
            Part::Im => 1,
        };
        (tag.user * 2 + part) * per + (tag.bit as usize - 1)
    }

    pub fn tag(&self, index: usize) -> VarTag {
        let per = self.depth.bits_per_component();
        let group = index / per;
        VarTag {
            user: group / 2,
            part: if group % 2 == 0 { Part::Re } else { Part::Im },
            bit: (index % per) as u32 + 1,
        }
    }

    pub fn tags(&self) -> impl Iterator<Item = VarTag> + '_ {
        (0..self.n_vars()).map(|i| self.tag(i))
    }

    /// Position of a variable's component in the stacked `[Re v; Im v]` vector.
    pub fn stacked_component(&self, index: usize) -> usize {
        let tag = self.tag(index);
        match tag.part {
            Part::Re => tag.user,
            Part::Im => self.n_r + tag.user,
        }
    }

    pub fn weight(&self, index: usize) -> i64 {
        self.depth.weight(self.tag(index).bit)
    }

    pub fn decode(&self, bits: &[u8]) -> Result<PerturbationVector, QuboError> {
        if bits.len() != self.n_vars() {
            return Err(QuboError::LengthMismatch {
                expected: self.n_vars(),
                found: bits.len(),
            });
        }
        let per = self.depth.bits_per_component();
        let comps: Vec<i64> = bits.chunks(per).map(bits_to_integer).collect();
        Ok(PerturbationVector(
            comps.chunks(2).map(|c| Complex::new(c[0], c[1])).collect(),
        ))
    }

    pub fn encode(&self, v: &PerturbationVector) -> Result<Vec<u8>, QuboError> {
        if v.len() != self.n_r {
            return Err(QuboError::LengthMismatch {
                expected: self.n_r,
                found: v.len(),
            });
        }
        let mut bits = Vec::with_capacity(self.n_vars());
        for z in &v.0 {
            for c in [z.re, z.im] {
                bits.extend(integer_to_bits(c, self.depth).ok_or(QuboError::OutOfRange(c))?);
            }
        }
        Ok(bits)
    }
}

/// Decodes a QUBO solution into the perturbation vector it represents.
pub fn decode_bits(bits: &[u8], var_map: &VarMap) -> Result<PerturbationVector, QuboError> {
    var_map.decode(bits)
}

/// Number of binary variables for `n_r` users at bit depth `t`: `2 n_r (t + 1)`.
pub fn logical_qubit_count(n_r: usize, t: BitDepth) -> usize {
    2 * n_r * t.bits_per_component()
}
