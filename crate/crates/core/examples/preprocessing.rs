//! Scales and thresholds a QUBO for a limited-precision device and reports the
//! resulting loss of optimality for a range of elimination thresholds.

use vpp_anneal::mimo::{Modulation, VppInstance};
use vpp_anneal::preprocess::{ppl, preprocess, PreprocessConfig};
use vpp_anneal::qubo::{build_qubo, BitDepth};
use vpp_anneal::rng::substream;

fn main() {
    let inst = VppInstance::random(3, 3, Modulation::Qam64, &mut substream(11, &[])).expect("draw");
    let q = build_qubo(&inst, BitDepth::new(1).unwrap());
    println!("{} variables, largest |Q_ij| = {:.3}", q.n_vars(), q.max_abs());
    for t_low in [f64::NEG_INFINITY, -2.0, -1.0, 0.0, 0.5] {
        let cfg = PreprocessConfig { t_high: 6.0, t_low };
        let (pre, report) = preprocess(&q, &cfg);
        let loss = ppl(&q, &pre).unwrap();
        println!(
            "t_low {:>5}: scale {:.4}, zeroed {:>2}, loss {:.4}",
            t_low, report.scale_factor, report.zeroed_count, loss
        );
    }
}
