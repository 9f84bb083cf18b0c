//! Runs every solver on the same 4-user 16-QAM instance.

use std::time::Instant;

use vpp_anneal::mimo::{Modulation, VppInstance};
use vpp_anneal::preprocess::{preprocess, PreprocessConfig};
use vpp_anneal::qubo::{build_qubo, BitDepth};
use vpp_anneal::rng::substream;
use vpp_anneal::solver::{
    fse::DEFAULT_BREADTH, solve_brute_force, solve_fse, solve_sa, solve_sphere_encoder, AnnealParams, SolverResult,
};

fn show(name: &str, r: &SolverResult, secs: f64) {
    println!(
        "{name:<9} power {:>9.4}  fallback {:<5}  v {:?}  ({:.1} ms)",
        r.best_objective,
        r.fallback_used,
        r.best_v.0.iter().map(|c| (c.re, c.im)).collect::<Vec<_>>(),
        secs * 1e3
    );
}

fn main() {
    let inst = VppInstance::random(4, 4, Modulation::Qam16, &mut substream(5, &[])).expect("draw");
    let depth = BitDepth::new(1).unwrap();
    let q = build_qubo(&inst, depth);
    println!("zero forcing power {:.4}", inst.zf_objective());

    let t = Instant::now();
    let r = solve_brute_force(&inst, &q).unwrap();
    show("brute", &r, t.elapsed().as_secs_f64());

    let t = Instant::now();
    let r = solve_sphere_encoder(&inst, depth);
    show("sphere", &r, t.elapsed().as_secs_f64());
    println!("         sphere visited {} nodes of {}", r.nodes_visited, 4u64.pow(8));

    let t = Instant::now();
    let r = solve_fse(&inst, depth, DEFAULT_BREADTH).unwrap();
    show("fse", &r, t.elapsed().as_secs_f64());

    // Raw coefficients are in the hundreds, so the fixed inverse-temperature
    // range freezes the anneal almost at once. Scaling first restores it.
    let (scaled, report) = preprocess(&q, &PreprocessConfig::default());
    println!("         pre-processing scale {:.4}, {} coefficients zeroed", report.scale_factor, report.zeroed_count);
    for sweeps in [10, 100, 1000] {
        let t = Instant::now();
        let raw = solve_sa(&inst, &q, &AnnealParams::new(100, sweeps, 1)).unwrap();
        show(&format!("sa/{sweeps}"), &raw, t.elapsed().as_secs_f64());
        let t = Instant::now();
        let pre = solve_sa(&inst, &scaled, &AnnealParams::new(100, sweeps, 1)).unwrap();
        show(&format!("sa*/{sweeps}"), &pre, t.elapsed().as_secs_f64());
    }
}
