//! Anneals an embedded 3-user problem under control-error noise and shows how
//! chain strength affects chain integrity and solution quality.

use vpp_anneal::hardware::{solve_on_hardware_model, HardwareConfig, IceModel};
use vpp_anneal::mimo::{Modulation, VppInstance};
use vpp_anneal::qubo::{build_qubo, BitDepth};
use vpp_anneal::rng::substream;
use vpp_anneal::solver::{solve_sphere_encoder, AnnealParams};

fn main() {
    let depth = BitDepth::new(1).unwrap();
    // first seeded instance where perturbation saves at least 10% power
    let inst = (0..)
        .filter_map(|seed| VppInstance::random(3, 3, Modulation::Qam16, &mut substream(seed, &[])).ok())
        .find(|i| solve_sphere_encoder(i, depth).best_objective < 0.9 * i.zf_objective())
        .unwrap();
    let q = build_qubo(&inst, depth);
    println!("optimum {:.4}, zero forcing {:.4}", solve_sphere_encoder(&inst, depth).best_objective, inst.zf_objective());
    println!("jf_mult  broken  power");
    for jf_mult in [0.1, 0.2, 0.4, 0.8, 1.2, 2.0] {
        let cfg = HardwareConfig { grid: 4, jf_mult, ice: IceModel::default(), ..HardwareConfig::default() };
        let r = solve_on_hardware_model(&inst, &q, &cfg, &AnnealParams::new(100, 200, 3)).unwrap();
        println!("{jf_mult:>7} {:>7.3} {:>7.4}", r.broken_chain_fraction.unwrap_or(0.0), r.best_objective);
    }
}
