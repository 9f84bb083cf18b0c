use std::time::Duration;

use crate::mimo::{PerturbationVector, VppInstance};
use crate::qubo::VarMap;

use super::{Read, SolverError, SolverResult};

/// Decodes every read, scores it on the original transmit power and keeps the
/// best (earliest read on ties). Falls back to `v = 0` when nothing is strictly
/// better than zero forcing.
pub fn select_with_fallback(
    reads: Vec<Read>,
    var_map: &VarMap,
    inst: &VppInstance,
) -> Result<SolverResult, SolverError> {
    if reads.is_empty() {
        return Err(SolverError::NoReads);
    }
    let mut best: Option<(PerturbationVector, f64)> = None;
    for read in &reads {
        let v = var_map.decode(&read.bits)?;
        let obj = inst.objective(&v);
        if best.as_ref().is_none_or(|(_, b)| obj < *b) {
            best = Some((v, obj));
        }
    }
    let (v, obj) = best.expect("reads nonempty");
    let zf = inst.zf_objective();
    let reads_used = reads.len();
    let (best_v, best_objective, fallback_used) = if obj >= zf {
        (PerturbationVector::zeros(inst.n_r()), zf, true)
    } else {
        (v, obj, false)
    };
    Ok(SolverResult {
        best_v,
        best_objective,
        all_reads: reads,
        wall_time: Duration::ZERO,
        reads_used,
        fallback_used,
        nodes_visited: 0,
        broken_chain_fraction: None,
    })
}
