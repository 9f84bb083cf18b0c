//! Exhaustive search over all `2^n` assignments in Gray-code order.

use std::time::Instant;

use crate::mimo::VppInstance;
use crate::qubo::QuboProblem;

use super::{select_with_fallback, Read, SolverError, SolverResult};

pub const MAX_VARS: usize = 24;

/// Visits every assignment once, calling `visit(bits, incremental_energy)`.
fn gray_walk(p: &QuboProblem, mut visit: impl FnMut(&[u8], f64)) {
    let n = p.n_vars();
    let (w, f) = p.split();
    let mut bits = vec![0u8; n];
    // field[i] = sum_j W_ij q_j
    let mut field = vec![0.0; n];
    let mut e = p.offset();
    visit(&bits, e);
    for k in 1u64..(1u64 << n) {
        let i = k.trailing_zeros() as usize;
        let row = &w[i * n..(i + 1) * n];
        if bits[i] == 0 {
            e += f[i] + field[i];
            bits[i] = 1;
            for (fj, wij) in field.iter_mut().zip(row) {
                *fj += wij;
            }
        } else {
            e -= f[i] + field[i];
            bits[i] = 0;
            for (fj, wij) in field.iter_mut().zip(row) {
                *fj -= wij;
            }
        }
        visit(&bits, e);
    }
}

fn tolerance(p: &QuboProblem) -> f64 {
    let scale: f64 = p.terms().map(|(_, _, v)| v.abs()).sum::<f64>() + p.offset().abs();
    1e-9 * scale.max(1e-300)
}

fn check_size(p: &QuboProblem) -> Result<(), SolverError> {
    if p.n_vars() > MAX_VARS {
        return Err(SolverError::TooLarge {
            n: p.n_vars(),
            max: MAX_VARS,
        });
    }
    Ok(())
}

/// Exact minimum of `energy + offset`. Ties go to the lexicographically
/// smallest bit string.
pub fn minimize(p: &QuboProblem) -> Result<Read, SolverError> {
    check_size(p)?;
    let tol = tolerance(p);
    let mut best_bits = vec![0u8; p.n_vars()];
    let mut best_exact = p.objective(&best_bits);
    let mut best_inc = best_exact;
    gray_walk(p, |bits, e| {
        if e > best_inc + tol {
            return;
        }
        let exact = p.objective(bits);
        if exact < best_exact || (exact == best_exact && bits < best_bits.as_slice()) {
            best_exact = exact;
            best_bits.copy_from_slice(bits);
        }
        best_inc = best_inc.min(e);
    });
    Ok(Read {
        bits: best_bits,
        energy: best_exact,
    })
}

/// Minimum objective and every assignment within round-off of it,
/// in lexicographic order.
pub fn minimizers(p: &QuboProblem) -> Result<(f64, Vec<Vec<u8>>), SolverError> {
    let best = minimize(p)?;
    let tol = tolerance(p);
    let mut found = Vec::new();
    gray_walk(p, |bits, e| {
        if e <= best.energy + 2.0 * tol && p.objective(bits) <= best.energy + tol {
            found.push(bits.to_vec());
        }
    });
    found.sort();
    Ok((best.energy, found))
}

/// Exact QUBO optimum followed by the usual decode/fallback selection.
pub fn solve_brute_force(inst: &VppInstance, p: &QuboProblem) -> Result<SolverResult, SolverError> {
    let start = Instant::now();
    let read = minimize(p)?;
    let map = p.var_map().ok_or(SolverError::MissingVarMap)?;
    let mut res = select_with_fallback(vec![read], map, inst)?;
    res.wall_time = start.elapsed();
    Ok(res)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qubo::{bits_to_spins, IsingProblem};

    #[test]
    fn zero_problem_picks_all_zero() {
        let p = QuboProblem::new(5);
        let r = minimize(&p).unwrap();
        assert_eq!(r.bits, vec![0; 5]);
        assert_eq!(r.energy, 0.0);
        let (_, all) = minimizers(&p).unwrap();
        assert_eq!(all.len(), 32);
    }

    #[test]
    fn frustrated_triangle() {
        let mut s = IsingProblem::new(3);
        s.add_coupling(0, 1, 1.0);
        s.add_coupling(0, 2, 1.0);
        s.add_coupling(1, 2, 1.0);
        let q = s.to_qubo();
        let r = minimize(&q).unwrap();
        assert!((r.energy + 1.0).abs() < 1e-12);
        assert!((s.objective(&bits_to_spins(&r.bits)) + 1.0).abs() < 1e-12);
        // six of eight states are ground states
        assert_eq!(minimizers(&q).unwrap().1.len(), 6);
    }

    #[test]
    fn incremental_matches_direct() {
        let p = QuboProblem::from_terms(
            4,
            [(0, 0, 1.5), (0, 3, -2.0), (1, 2, 0.75), (2, 2, -1.0), (3, 3, 0.5), (1, 3, 3.0)],
            2.0,
        )
        .unwrap();
        gray_walk(&p, |bits, e| assert!((e - p.objective(bits)).abs() < 1e-12));
    }

    #[test]
    fn size_limit() {
        assert!(matches!(
            minimize(&QuboProblem::new(25)),
            Err(SolverError::TooLarge { .. })
        ));
    }
}
