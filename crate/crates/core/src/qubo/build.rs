use crate::mimo::{RealLattice, VppInstance};

use super::{BitDepth, QuboProblem, VarMap};

/// Reduces the transmit-power minimisation to a QUBO over the bit expansion of `v`.
///
/// With `z = W q` (the signed binary weights of every variable) the objective
/// `‖B (x_u + tau z)‖²` expands to `x_u^T G x_u + 2 tau (G x_u)^T W q +
/// tau^2 q^T W^T G W q`. Because `q_i^2 = q_i`, the diagonal of the quadratic
/// part merges into the linear term; off-diagonal pairs are folded onto the
/// upper triangle. The `v`-independent part `x_u^T G x_u` is kept as the offset.
pub fn build_qubo(inst: &VppInstance, depth: BitDepth) -> QuboProblem {
    let lattice = RealLattice::new(inst);
    let map = VarMap::new(inst.n_r(), depth);
    let n = map.n_vars();
    let tau = lattice.tau;
    let gx = &lattice.gram * &lattice.data;

    let comp: Vec<usize> = (0..n).map(|i| map.stacked_component(i)).collect();
    let w: Vec<f64> = (0..n).map(|i| map.weight(i) as f64).collect();

    let mut q = QuboProblem::new(n);
    for a in 0..n {
        let ca = comp[a];
        let diag = tau * tau * w[a] * w[a] * lattice.gram[(ca, ca)] + 2.0 * tau * w[a] * gx[ca];
        q.set(a, a, diag);
        for b in a + 1..n {
            let cb = comp[b];
            q.set(a, b, 2.0 * tau * tau * w[a] * w[b] * lattice.gram[(ca, cb)]);
        }
    }
    q.set_offset(lattice.data.dot(&gx));
    q.with_var_map(map)
}
