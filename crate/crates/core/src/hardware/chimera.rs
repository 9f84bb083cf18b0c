use std::collections::HashSet;

/// Chimera `C_m`: an `m x m` grid of `K_{4,4}` unit cells.
///
/// Qubit `(row, col, side, k)` has id `((row * m + col) * 2 + side) * 4 + k`.
/// Side 0 qubits couple vertically to the same `k` in the cells above and
/// below; side 1 qubits couple horizontally.
#[derive(Debug, Clone)]
pub struct HardwareGraph {
    m: usize,
    couplers: Vec<(usize, usize)>,
    edge_set: HashSet<(usize, usize)>,
    adjacency: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct QubitCoord {
    pub row: usize,
    pub col: usize,
    pub side: usize,
    pub k: usize,
}

impl HardwareGraph {
    pub fn grid(&self) -> usize {
        self.m
    }

    pub fn num_qubits(&self) -> usize {
        8 * self.m * self.m
    }

    pub fn num_cells(&self) -> usize {
        self.m * self.m
    }

    /// Couplers as `(a, b)` with `a < b`, ascending.
    pub fn couplers(&self) -> &[(usize, usize)] {
        &self.couplers
    }

    pub fn neighbours(&self, q: usize) -> &[usize] {
        &self.adjacency[q]
    }

    pub fn has_coupler(&self, a: usize, b: usize) -> bool {
        let key = if a < b { (a, b) } else { (b, a) };
        self.edge_set.contains(&key)
    }

    pub fn qubit(&self, c: QubitCoord) -> usize {
        ((c.row * self.m + c.col) * 2 + c.side) * 4 + c.k
    }

    pub fn coord(&self, q: usize) -> QubitCoord {
        let k = q % 4;
        let side = (q / 4) % 2;
        let cell = q / 8;
        QubitCoord {
            row: cell / self.m,
            col: cell % self.m,
            side,
            k,
        }
    }
}

/// Builds the canonical Chimera graph with `m x m` cells.
pub fn chimera(m: usize) -> HardwareGraph {
    assert!(m >= 1, "chimera grid must be at least 1x1");
    let id = |row: usize, col: usize, side: usize, k: usize| ((row * m + col) * 2 + side) * 4 + k;
    let mut couplers = Vec::new();
    for row in 0..m {
        for col in 0..m {
            for a in 0..4 {
                for b in 0..4 {
                    couplers.push((id(row, col, 0, a), id(row, col, 1, b)));
                }
                if row + 1 < m {
                    couplers.push((id(row, col, 0, a), id(row + 1, col, 0, a)));
                }
                if col + 1 < m {
                    couplers.push((id(row, col, 1, a), id(row, col + 1, 1, a)));
                }
            }
        }
    }
    couplers.sort_unstable();
    let mut adjacency = vec![Vec::new(); 8 * m * m];
    for &(a, b) in &couplers {
        adjacency[a].push(b);
        adjacency[b].push(a);
    }
    for row in &mut adjacency {
        row.sort_unstable();
    }
    let edge_set = couplers.iter().copied().collect();
    HardwareGraph {
        m,
        couplers,
        edge_set,
        adjacency,
    }
}
