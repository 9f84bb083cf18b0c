use std::collections::BTreeMap;

use super::{QuboError, VarMap};

/// Upper-triangular QUBO `E(q) = sum_{i<=j} Q_ij q_i q_j`, plus a constant offset.
#[derive(Debug, Clone, PartialEq)]
pub struct QuboProblem {
    n: usize,
    q: Vec<f64>,
    offset: f64,
    var_map: Option<VarMap>,
}

impl QuboProblem {
    pub fn new(n: usize) -> Self {
        Self {
            n,
            q: vec![0.0; n * n],
            offset: 0.0,
            var_map: None,
        }
    }

    /// Builds from `(i, j, value)` triples; lower-triangle entries fold onto the upper triangle.
    pub fn from_terms(
        n: usize,
        terms: impl IntoIterator<Item = (usize, usize, f64)>,
        offset: f64,
    ) -> Result<Self, QuboError> {
        let mut p = Self::new(n);
        for (i, j, v) in terms {
            if i >= n || j >= n {
                return Err(QuboError::IndexOutOfBounds { i, j, n });
            }
            p.add(i, j, v);
        }
        p.offset = offset;
        Ok(p)
    }

    pub fn with_var_map(mut self, var_map: VarMap) -> Self {
        self.var_map = Some(var_map);
        self
    }

    pub fn n_vars(&self) -> usize {
        self.n
    }

    pub fn offset(&self) -> f64 {
        self.offset
    }

    pub fn set_offset(&mut self, offset: f64) {
        self.offset = offset;
    }

    pub fn var_map(&self) -> Option<&VarMap> {
        self.var_map.as_ref()
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        let (a, b) = if i <= j { (i, j) } else { (j, i) };
        self.q[a * self.n + b]
    }

    pub fn set(&mut self, i: usize, j: usize, value: f64) {
        let (a, b) = if i <= j { (i, j) } else { (j, i) };
        self.q[a * self.n + b] = value;
    }

    pub fn add(&mut self, i: usize, j: usize, value: f64) {
        let (a, b) = if i <= j { (i, j) } else { (j, i) };
        self.q[a * self.n + b] += value;
    }

    /// Nonzero coefficients in ascending `(i, j)` order, `i <= j`.
    pub fn terms(&self) -> impl Iterator<Item = (usize, usize, f64)> + '_ {
        (0..self.n).flat_map(move |i| {
            (i..self.n).filter_map(move |j| {
                let v = self.q[i * self.n + j];
                (v != 0.0).then_some((i, j, v))
            })
        })
    }

    pub fn n_terms(&self) -> usize {
        self.terms().count()
    }

    pub fn max_abs(&self) -> f64 {
        self.q.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    pub fn map_coefficients(&mut self, mut f: impl FnMut(usize, usize, f64) -> f64) {
        for i in 0..self.n {
            for j in i..self.n {
                let k = i * self.n + j;
                self.q[k] = f(i, j, self.q[k]);
            }
        }
    }

    /// `q^T Q q` without the offset.
    pub fn energy(&self, bits: &[u8]) -> f64 {
        debug_assert_eq!(bits.len(), self.n);
        let mut e = 0.0;
        for i in 0..self.n {
            if bits[i] == 0 {
                continue;
            }
            let row = &self.q[i * self.n..(i + 1) * self.n];
            e += row[i];
            for j in i + 1..self.n {
                if bits[j] != 0 {
                    e += row[j];
                }
            }
        }
        e
    }

    /// `q^T Q q + offset`.
    pub fn objective(&self, bits: &[u8]) -> f64 {
        self.energy(bits) + self.offset
    }

    /// Symmetric coupling matrix `W` (zero diagonal) and diagonal `f`, row-major.
    pub(crate) fn split(&self) -> (Vec<f64>, Vec<f64>) {
        let n = self.n;
        let mut w = vec![0.0; n * n];
        let mut f = vec![0.0; n];
        for (i, j, v) in self.terms() {
            if i == j {
                f[i] = v;
            } else {
                w[i * n + j] = v;
                w[j * n + i] = v;
            }
        }
        (w, f)
    }

    /// Closed-form change of variables `s = 2q - 1`.
    pub fn to_ising(&self) -> IsingProblem {
        let mut h = vec![0.0; self.n];
        let mut j = BTreeMap::new();
        let mut offset = self.offset;
        for (a, b, v) in self.terms() {
            if a == b {
                h[a] += v / 2.0;
                offset += v / 2.0;
            } else {
                j.insert((a, b), v / 4.0);
                h[a] += v / 4.0;
                h[b] += v / 4.0;
                offset += v / 4.0;
            }
        }
        IsingProblem {
            h,
            j,
            offset,
            var_map: self.var_map.clone(),
        }
    }
}

/// Ising model `E(s) = sum_i h_i s_i + sum_{i<j} J_ij s_i s_j`, plus an offset.
#[derive(Debug, Clone, PartialEq)]
pub struct IsingProblem {
    pub h: Vec<f64>,
    /// Couplings keyed by `(i, j)` with `i < j`.
    pub j: BTreeMap<(usize, usize), f64>,
    pub offset: f64,
    pub var_map: Option<VarMap>,
}

impl IsingProblem {
    pub fn new(n: usize) -> Self {
        Self {
            h: vec![0.0; n],
            j: BTreeMap::new(),
            offset: 0.0,
            var_map: None,
        }
    }

    pub fn n_vars(&self) -> usize {
        self.h.len()
    }

    /// Adds to the coupling between `a` and `b` (order-insensitive).
    pub fn add_coupling(&mut self, a: usize, b: usize, value: f64) {
        assert_ne!(a, b, "self-coupling");
        let key = if a < b { (a, b) } else { (b, a) };
        *self.j.entry(key).or_insert(0.0) += value;
    }

    pub fn coupling(&self, a: usize, b: usize) -> f64 {
        let key = if a < b { (a, b) } else { (b, a) };
        self.j.get(&key).copied().unwrap_or(0.0)
    }

    /// Energy without the offset.
    pub fn energy(&self, spins: &[i8]) -> f64 {
        debug_assert_eq!(spins.len(), self.h.len());
        let lin: f64 = self.h.iter().zip(spins).map(|(h, &s)| h * s as f64).sum();
        let quad: f64 = self
            .j
            .iter()
            .map(|(&(a, b), v)| v * (spins[a] * spins[b]) as f64)
            .sum();
        lin + quad
    }

    pub fn objective(&self, spins: &[i8]) -> f64 {
        self.energy(spins) + self.offset
    }

    /// Largest coupler magnitude.
    pub fn max_abs_coupling(&self) -> f64 {
        self.j.values().fold(0.0, |m, v| m.max(v.abs()))
    }

    /// Neighbour lists `(other, J)` for every spin.
    pub fn adjacency(&self) -> Vec<Vec<(usize, f64)>> {
        let mut adj = vec![Vec::new(); self.h.len()];
        for (&(a, b), &v) in &self.j {
            if v != 0.0 {
                adj[a].push((b, v));
                adj[b].push((a, v));
            }
        }
        adj
    }

    /// Closed-form change of variables `q = (s + 1) / 2`.
    pub fn to_qubo(&self) -> QuboProblem {
        let n = self.h.len();
        let mut q = QuboProblem::new(n);
        let mut offset = self.offset;
        for (i, &h) in self.h.iter().enumerate() {
            q.add(i, i, 2.0 * h);
            offset -= h;
        }
        for (&(a, b), &v) in &self.j {
            q.add(a, b, 4.0 * v);
            q.add(a, a, -2.0 * v);
            q.add(b, b, -2.0 * v);
            offset += v;
        }
        q.offset = offset;
        q.var_map = self.var_map.clone();
        q
    }
}

pub fn qubo_to_ising(p: &QuboProblem) -> IsingProblem {
    p.to_ising()
}

pub fn ising_to_qubo(p: &IsingProblem) -> QuboProblem {
    p.to_qubo()
}

pub fn spins_to_bits(spins: &[i8]) -> Vec<u8> {
    spins.iter().map(|&s| u8::from(s > 0)).collect()
}

pub fn bits_to_spins(bits: &[u8]) -> Vec<i8> {
    bits.iter().map(|&b| if b != 0 { 1 } else { -1 }).collect()
}
