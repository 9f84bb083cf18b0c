//! Clique embeddings on Chimera graphs: chain layout, validation and how many
//! copies fit on a 16x16 chip.

use vpp_anneal::hardware::{chimera, clique_embed, clique_qubits, parallel_capacity, place_tiles};

fn main() {
    let cell = chimera(1);
    println!("C1: {} qubits, {} couplers", cell.num_qubits(), cell.couplers().len());
    let k4 = clique_embed(4, &cell).unwrap();
    k4.write(std::io::stdout()).unwrap();

    let chip = chimera(16);
    println!("C16: {} qubits, {} couplers", chip.num_qubits(), chip.couplers().len());
    println!(" n  tile  chain  capacity  packed");
    for n in [4, 8, 12, 16, 20, 24, 28, 32] {
        let e = clique_embed(n, &chip).unwrap();
        let edges = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b)));
        e.validate(&chip, edges).expect("clique embedding is valid");
        println!(
            "{n:>2} {:>5} {:>6} {:>9} {:>7}",
            clique_qubits(n),
            e.max_chain_length(),
            parallel_capacity(n, &chip),
            place_tiles(n, &chip).len()
        );
    }
}
