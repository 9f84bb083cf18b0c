//! Fixed-complexity sphere encoder: breadth-first search over the same tree
//! as the sphere encoder, keeping only the `breadth` best partial paths at
//! every level.

use std::time::Instant;

use crate::mimo::{RealLattice, VppInstance};
use crate::qubo::BitDepth;

use super::sphere::TreeForm;
use super::{box_candidates, SolverError, SolverResult};

pub const DEFAULT_BREADTH: usize = 4;

struct Path {
    metric: f64,
    z: Vec<i64>,
}

pub fn solve_fse(
    inst: &VppInstance,
    depth: BitDepth,
    breadth: usize,
) -> Result<SolverResult, SolverError> {
    if breadth == 0 {
        return Err(SolverError::ZeroBreadth);
    }
    let start = Instant::now();
    let form = TreeForm::new(inst, depth);
    let n = form.dim();
    let mut survivors = vec![Path {
        metric: 0.0,
        z: vec![0; n],
    }];
    let mut nodes = 0u64;
    let mut cands = Vec::new();
    for level in (0..n).rev() {
        let mut children = Vec::with_capacity(survivors.len() * (form.hi - form.lo + 1) as usize);
        for path in &survivors {
            let s = form.residual(level, &path.z);
            box_candidates(form.center(level, s), form.lo, form.hi, &mut cands);
            for &zi in &cands {
                let mut z = path.z.clone();
                z[level] = zi;
                children.push(Path {
                    metric: path.metric + form.increment(level, s, zi),
                    z,
                });
            }
        }
        nodes += children.len() as u64;
        // stable: equal metrics keep generation order
        children.sort_by(|a, b| a.metric.total_cmp(&b.metric));
        children.truncate(breadth);
        survivors = children;
    }
    let mut res = SolverResult::zero_forcing(inst);
    let v = RealLattice::unstack(&survivors[0].z);
    let obj = inst.objective(&v);
    if obj < res.best_objective {
        res.best_v = v;
        res.best_objective = obj;
    } else {
        res.fallback_used = true;
    }
    res.nodes_visited = nodes;
    res.wall_time = start.elapsed();
    Ok(res)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mimo::Modulation;
    use crate::rng::substream;
    use crate::solver::solve_sphere_encoder;

    #[test]
    fn full_breadth_is_exact() {
        let d = BitDepth::new(1).unwrap();
        for seed in 0..20 {
            let inst = VppInstance::random(2, 2, Modulation::Qam16, &mut substream(seed, &[])).unwrap();
            let full = solve_fse(&inst, d, 4usize.pow(4)).unwrap();
            let sphere = solve_sphere_encoder(&inst, d);
            assert_eq!(full.best_objective, sphere.best_objective);
        }
    }

    #[test]
    fn narrow_search_is_dominated() {
        let d = BitDepth::new(1).unwrap();
        for seed in 0..20 {
            let inst = VppInstance::random(4, 4, Modulation::Qam64, &mut substream(seed, &[1])).unwrap();
            let greedy = solve_fse(&inst, d, 1).unwrap();
            let sphere = solve_sphere_encoder(&inst, d);
            assert!(greedy.best_objective >= sphere.best_objective);
            assert!(greedy.best_objective <= inst.zf_objective());
        }
        let inst = VppInstance::random(2, 2, Modulation::Qpsk, &mut substream(0, &[])).unwrap();
        assert!(solve_fse(&inst, d, 0).is_err());
    }
}
