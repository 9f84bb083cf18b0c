//! Builds the QUBO of a random 2-user 16-QAM instance and checks it against
//! the transmit power it encodes.

use vpp_anneal::mimo::{Modulation, VppInstance};
use vpp_anneal::qubo::{build_qubo, qubo_to_string, BitDepth};
use vpp_anneal::rng::substream;
use vpp_anneal::solver::brute;

fn main() {
    let mut rng = substream(7, &[]);
    let inst = VppInstance::random(2, 2, Modulation::Qam16, &mut rng).expect("well-conditioned draw");
    let depth = BitDepth::new(1).unwrap();
    let q = build_qubo(&inst, depth);
    println!("{} binary variables, {} nonzero coefficients", q.n_vars(), q.n_terms());
    print!("{}", qubo_to_string(&q));

    let best = brute::minimize(&q).unwrap();
    let v = q.var_map().unwrap().decode(&best.bits).unwrap();
    println!("optimal bits {:?} -> v = {:?}", best.bits, v.0);
    println!("QUBO energy + offset  {:.6}", best.energy);
    println!("transmit power direct {:.6}", inst.objective(&v));
    println!("zero-forcing power    {:.6}", inst.zf_objective());
}
