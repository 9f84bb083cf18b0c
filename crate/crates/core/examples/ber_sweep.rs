//! A small BER sweep comparing solvers on paired channels. Pass an output
//! directory as the first argument to also write the result files.

use vpp_anneal::harness::{emit_outputs, run_sweep, SimConfig, SolverConfig};
use vpp_anneal::mimo::Modulation;
use vpp_anneal::solver::SolverKind;

fn main() {
    let out_dir = std::env::args().nth(1);
    for kind in [SolverKind::Zf, SolverKind::Fse, SolverKind::Sa, SolverKind::Sphere] {
        let cfg = SimConfig {
            n_t: 4,
            n_r: 4,
            modulation: Modulation::Qam16,
            snr_points: vec![10.0, 15.0, 20.0, 25.0],
            trials_per_point: 500,
            solver: SolverConfig { kind, num_reads: 200, sweeps: 50, ..SolverConfig::default() },
            ..SimConfig::default()
        };
        let out = run_sweep(&cfg).expect("valid configuration");
        let row: Vec<String> = out
            .summary
            .points
            .iter()
            .map(|p| format!("{:>4} dB {:.2e}", p.snr_db, p.ber.unwrap_or(0.0)))
            .collect();
        println!("{kind:<7} {}", row.join("  "));
        if let Some(dir) = &out_dir {
            emit_outputs(&out.records, &out.summary, &std::path::Path::new(dir).join(kind.to_string())).unwrap();
        }
    }
}
