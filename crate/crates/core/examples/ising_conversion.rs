//! Converts a frustrated three-spin triangle between Ising and QUBO form and
//! prints the energy table of both.

use vpp_anneal::qubo::{bits_to_spins, ising_to_qubo, IsingProblem};

fn main() {
    let mut ising = IsingProblem::new(3);
    for (a, b) in [(0, 1), (0, 2), (1, 2)] {
        ising.add_coupling(a, b, 1.0);
    }
    let qubo = ising_to_qubo(&ising);
    println!("QUBO terms:");
    for (i, j, v) in qubo.terms() {
        println!("  Q[{i},{j}] = {v}");
    }
    println!("  offset = {}", qubo.offset());
    println!("bits  spins        ising  qubo");
    for s in 0..8u8 {
        let bits: Vec<u8> = (0..3).map(|k| s >> k & 1).collect();
        let spins = bits_to_spins(&bits);
        println!("{bits:?} {spins:?} {:>6} {:>5}", ising.objective(&spins), qubo.objective(&bits));
    }
    let back = qubo.to_ising();
    println!("round trip h = {:?}, J = {:?}", back.h, back.j);
}
