use std::collections::{HashSet, VecDeque};
use std::io::{BufRead, Write};

use super::{HardwareError, HardwareGraph, QubitCoord};

/// Minor embedding: one chain of physical qubits per logical variable.
#[derive(Debug, Clone, PartialEq)]
pub struct Embedding {
    pub chains: Vec<Vec<usize>>,
    /// Magnitude of the ferromagnetic intra-chain coupling `|J_F|`.
    pub chain_strength: f64,
}

impl Embedding {
    pub fn new(chains: Vec<Vec<usize>>) -> Self {
        Self {
            chains,
            chain_strength: 1.0,
        }
    }

    pub fn with_chain_strength(mut self, strength: f64) -> Self {
        self.chain_strength = strength.abs();
        self
    }

    pub fn n_logical(&self) -> usize {
        self.chains.len()
    }

    pub fn physical_qubits(&self) -> usize {
        self.chains.iter().map(Vec::len).sum()
    }

    pub fn max_chain_length(&self) -> usize {
        self.chains.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// Checks disjointness and connectivity of chains, and that every listed
    /// logical edge has at least one physical coupler between its chains.
    pub fn validate(
        &self,
        g: &HardwareGraph,
        logical_edges: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<(), HardwareError> {
        let mut used = HashSet::new();
        for (var, chain) in self.chains.iter().enumerate() {
            if chain.is_empty() {
                return Err(HardwareError::InvalidEmbedding(format!("chain {var} is empty")));
            }
            for &q in chain {
                if q >= g.num_qubits() {
                    return Err(HardwareError::InvalidEmbedding(format!(
                        "chain {var} uses qubit {q} outside the graph"
                    )));
                }
                if !used.insert(q) {
                    return Err(HardwareError::InvalidEmbedding(format!(
                        "qubit {q} appears in more than one chain"
                    )));
                }
            }
            if !is_connected(chain, g) {
                return Err(HardwareError::InvalidEmbedding(format!("chain {var} is disconnected")));
            }
        }
        for (a, b) in logical_edges {
            if a >= self.chains.len() || b >= self.chains.len() {
                return Err(HardwareError::UncoveredVariable(a.max(b)));
            }
            if first_coupler(&self.chains[a], &self.chains[b], g).is_none() {
                return Err(HardwareError::MissingCoupler { a, b });
            }
        }
        Ok(())
    }

    /// `var_id: q1 q2 ...`, one line per logical variable.
    pub fn write<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        for (var, chain) in self.chains.iter().enumerate() {
            write!(out, "{var}:")?;
            for q in chain {
                write!(out, " {q}")?;
            }
            writeln!(out)?;
        }
        Ok(())
    }

    pub fn read<R: BufRead>(input: R) -> Result<Self, HardwareError> {
        let mut entries = Vec::new();
        for (ln, line) in input.lines().enumerate() {
            let line = line?;
            if line.trim().is_empty() {
                continue;
            }
            let bad = |msg: &str| HardwareError::Parse {
                line: ln + 1,
                message: msg.to_string(),
            };
            let (id, rest) = line.split_once(':').ok_or_else(|| bad("expected `var_id: q1 q2 ...`"))?;
            let id: usize = id.trim().parse().map_err(|_| bad("bad variable id"))?;
            let chain = rest
                .split_whitespace()
                .map(|s| s.parse::<usize>().map_err(|_| bad("bad qubit id")))
                .collect::<Result<Vec<_>, _>>()?;
            entries.push((id, chain));
        }
        entries.sort_by_key(|(id, _)| *id);
        if entries.iter().enumerate().any(|(i, (id, _))| i != *id) {
            return Err(HardwareError::Parse {
                line: 0,
                message: "variable ids must be 0..n without gaps".into(),
            });
        }
        Ok(Self::new(entries.into_iter().map(|(_, c)| c).collect()))
    }
}

fn is_connected(chain: &[usize], g: &HardwareGraph) -> bool {
    let members: HashSet<usize> = chain.iter().copied().collect();
    let mut seen = HashSet::from([chain[0]]);
    let mut queue = VecDeque::from([chain[0]]);
    while let Some(q) = queue.pop_front() {
        for &nb in g.neighbours(q) {
            if members.contains(&nb) && seen.insert(nb) {
                queue.push_back(nb);
            }
        }
    }
    seen.len() == members.len()
}

/// Lexicographically first physical coupler `(min, max)` joining two chains.
pub(crate) fn first_coupler(a: &[usize], b: &[usize], g: &HardwareGraph) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for &p in a {
        for &q in b {
            if g.has_coupler(p, q) {
                let key = (p.min(q), p.max(q));
                if best.is_none_or(|b| key < b) {
                    best = Some(key);
                }
            }
        }
    }
    best
}

/// Side length (in cells) of the block used by the clique embedding of `n` variables.
pub fn clique_block(n_logical: usize) -> usize {
    n_logical.div_ceil(4).max(1)
}

/// Physical qubits used by the clique embedding of `n` variables.
pub fn clique_qubits(n_logical: usize) -> usize {
    match n_logical {
        0 => 0,
        1 => 1,
        n => n * (clique_block(n) + 1),
    }
}

/// Orientation of a clique tile inside its block.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Placement {
    pub row: usize,
    pub col: usize,
    pub flip_rows: bool,
    pub flip_cols: bool,
}

impl Placement {
    pub const ORIGIN: Placement = Placement {
        row: 0,
        col: 0,
        flip_rows: false,
        flip_cols: false,
    };
}

/// Native clique embedding of `n` variables in a `c x c` cell block, `c = ceil(n/4)`.
///
/// Variable `4b + k` owns the side-0 qubits `k` of column `b`, rows `0..=b`,
/// and the side-1 qubits `k` of row `b`, columns `b..c`; the two segments meet
/// inside cell `(b, b)`. Every chain has `c + 1` qubits and any two chains meet
/// in cell `(min(b, b'), max(b, b'))`. A single variable gets a single qubit.
pub fn clique_embed(n_logical: usize, g: &HardwareGraph) -> Result<Embedding, HardwareError> {
    clique_embed_at(n_logical, g, Placement::ORIGIN)
}

pub fn clique_embed_at(
    n_logical: usize,
    g: &HardwareGraph,
    at: Placement,
) -> Result<Embedding, HardwareError> {
    let c = clique_block(n_logical);
    let capacity = 4 * g.grid();
    if n_logical > capacity {
        return Err(HardwareError::CapacityExceeded {
            n: n_logical,
            capacity,
            required_grid: c,
        });
    }
    if at.row + c > g.grid() || at.col + c > g.grid() {
        return Err(HardwareError::InvalidEmbedding(format!(
            "block of {c} cells at ({}, {}) leaves the {}x{} grid",
            at.row,
            at.col,
            g.grid(),
            g.grid()
        )));
    }
    let qubit = |row: usize, col: usize, side: usize, k: usize| {
        let row = if at.flip_rows { c - 1 - row } else { row };
        let col = if at.flip_cols { c - 1 - col } else { col };
        g.qubit(QubitCoord {
            row: at.row + row,
            col: at.col + col,
            side,
            k,
        })
    };
    if n_logical == 1 {
        return Ok(Embedding::new(vec![vec![qubit(0, 0, 0, 0)]]));
    }
    let chains = (0..n_logical)
        .map(|var| {
            let (b, k) = (var / 4, var % 4);
            (0..=b)
                .map(|row| qubit(row, b, 0, k))
                .chain((b..c).map(|col| qubit(b, col, 1, k)))
                .collect()
        })
        .collect();
    Ok(Embedding::new(chains))
}

/// How many independent copies of an `n`-variable problem the chip can host,
/// from the qubit budget: `floor(8 m² / qubits_per_tile)`, or 0 when a single
/// clique embedding does not fit.
pub fn parallel_capacity(n_logical: usize, g: &HardwareGraph) -> usize {
    if n_logical == 0 || n_logical > 4 * g.grid() {
        return 0;
    }
    g.num_qubits() / clique_qubits(n_logical)
}

/// Disjoint placements of the clique tile found by first-fit scanning over
/// block positions and the four orientations. Each returned embedding is valid
/// on its own and no two share a qubit.
pub fn place_tiles(n_logical: usize, g: &HardwareGraph) -> Vec<Embedding> {
    if n_logical == 0 || n_logical > 4 * g.grid() {
        return Vec::new();
    }
    let c = clique_block(n_logical);
    let mut used = vec![false; g.num_qubits()];
    let mut tiles = Vec::new();
    for row in 0..=g.grid() - c {
        for col in 0..=g.grid() - c {
            for (flip_rows, flip_cols) in [(false, false), (true, true), (false, true), (true, false)] {
                let at = Placement {
                    row,
                    col,
                    flip_rows,
                    flip_cols,
                };
                let emb = clique_embed_at(n_logical, g, at).expect("block checked to fit");
                if emb.chains.iter().flatten().all(|&q| !used[q]) {
                    for &q in emb.chains.iter().flatten() {
                        used[q] = true;
                    }
                    tiles.push(emb);
                }
            }
        }
    }
    tiles
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hardware::chimera;

    fn clique_edges(n: usize) -> impl Iterator<Item = (usize, usize)> {
        (0..n).flat_map(move |a| (a + 1..n).map(move |b| (a, b)))
    }

    #[test]
    fn k4_in_unit_cell() {
        let g = chimera(1);
        let e = clique_embed(4, &g).unwrap();
        assert_eq!(e.chains.len(), 4);
        assert!(e.chains.iter().all(|c| c.len() == 2));
        assert_eq!(e.physical_qubits(), 8);
        e.validate(&g, clique_edges(4)).unwrap();
    }

    #[test]
    fn single_variable() {
        let e = clique_embed(1, &chimera(1)).unwrap();
        assert_eq!(e.chains, vec![vec![0]]);
    }

    #[test]
    fn twenty_eight_variables() {
        let g = chimera(16);
        let e = clique_embed(28, &g).unwrap();
        assert_eq!(e.max_chain_length(), 8);
        assert_eq!(e.physical_qubits(), 224);
        assert_eq!(clique_qubits(28), 224);
        e.validate(&g, clique_edges(28)).unwrap();
    }

    #[test]
    fn capacity_errors() {
        let g = chimera(2);
        match clique_embed(9, &g) {
            Err(HardwareError::CapacityExceeded { required_grid, .. }) => assert_eq!(required_grid, 3),
            other => panic!("unexpected {other:?}"),
        }
        assert_eq!(parallel_capacity(9, &g), 0);
        assert_eq!(parallel_capacity(4, &chimera(1)), 1);
        assert_eq!(parallel_capacity(28, &chimera(16)), 9);
    }

    #[test]
    fn validator_catches_defects() {
        let g = chimera(1);
        let overlap = Embedding::new(vec![vec![0, 4], vec![4, 1]]);
        assert!(overlap.validate(&g, []).is_err());
        let split = Embedding::new(vec![vec![0, 1]]);
        assert!(split.validate(&g, []).is_err());
        let apart = Embedding::new(vec![vec![0], vec![1]]);
        assert!(matches!(
            apart.validate(&g, [(0, 1)]),
            Err(HardwareError::MissingCoupler { .. })
        ));
    }

    #[test]
    fn tiles_are_disjoint_and_valid() {
        let g = chimera(16);
        let tiles = place_tiles(28, &g);
        let mut seen = HashSet::new();
        for t in &tiles {
            t.validate(&g, clique_edges(28)).unwrap();
            for &q in t.chains.iter().flatten() {
                assert!(seen.insert(q));
            }
        }
        assert!(tiles.len() <= parallel_capacity(28, &g));
        assert!(tiles.len() >= 4);
    }

    #[test]
    fn file_round_trip() {
        let e = clique_embed(6, &chimera(2)).unwrap();
        let mut buf = Vec::new();
        e.write(&mut buf).unwrap();
        let text = String::from_utf8(buf.clone()).unwrap();
        assert!(text.starts_with("0: "));
        assert_eq!(Embedding::read(&buf[..]).unwrap().chains, e.chains);
        assert!(Embedding::read("0 1 2\n".as_bytes()).is_err());
        assert!(Embedding::read("1: 3\n".as_bytes()).is_err());
    }
}
