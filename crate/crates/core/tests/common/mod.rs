#![allow(dead_code)]

use num_complex::Complex64;
use rand::Rng;
use vpp_anneal::mimo::{ComplexMatrix, Modulation, VppInstance};
use vpp_anneal::rng::substream;

/// Seeded random instance; ill-conditioned draws are skipped.
pub fn instance(seed: u64, n_t: usize, n_r: usize, m: Modulation) -> VppInstance {
    for attempt in 0.. {
        let mut rng = substream(seed, &[0x7e57, attempt]);
        if let Ok(inst) = VppInstance::random(n_t, n_r, m, &mut rng) {
            return inst;
        }
    }
    unreachable!()
}

/// Inverse of a square complex matrix by Gauss-Jordan elimination with partial pivoting.
pub fn gauss_jordan_inverse(a: &ComplexMatrix) -> ComplexMatrix {
    let n = a.rows();
    assert_eq!(n, a.cols());
    let mut m: Vec<Vec<Complex64>> = (0..n)
        .map(|i| {
            let mut row: Vec<Complex64> = (0..n).map(|j| a[(i, j)]).collect();
            row.extend((0..n).map(|j| if i == j { Complex64::new(1.0, 0.0) } else { Complex64::new(0.0, 0.0) }));
            row
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n)
            .max_by(|&x, &y| m[x][col].norm().total_cmp(&m[y][col].norm()))
            .unwrap();
        m.swap(col, pivot);
        let p = m[col][col];
        assert!(p.norm() > 1e-300, "singular");
        for v in m[col].iter_mut() {
            *v /= p;
        }
        for r in 0..n {
            if r != col {
                let f = m[r][col];
                if f != Complex64::new(0.0, 0.0) {
                    for c in 0..2 * n {
                        let sub = f * m[col][c];
                        m[r][c] -= sub;
                    }
                }
            }
        }
    }
    ComplexMatrix::from_fn(n, n, |i, j| m[i][n + j])
}

/// Right pseudo-inverse `H^H (H H^H)^{-1}` computed without the library.
pub fn reference_precoder(h: &ComplexMatrix) -> ComplexMatrix {
    let hh = h.conj_transpose();
    let gram = h.matmul(&hh).unwrap();
    hh.matmul(&gauss_jordan_inverse(&gram)).unwrap()
}

/// Direct transmit power of `d = u + tau v` through precoder `p`.
pub fn direct_power(p: &ComplexMatrix, u: &[Complex64], v: &[(i64, i64)], tau: f64) -> f64 {
    let d: Vec<Complex64> = u
        .iter()
        .zip(v)
        .map(|(s, &(re, im))| s + Complex64::new(tau * re as f64, tau * im as f64))
        .collect();
    (0..p.rows())
        .map(|i| (0..p.cols()).map(|j| p[(i, j)] * d[j]).sum::<Complex64>().norm_sqr())
        .sum()
}

/// Every vector of `n` Gaussian integers with both parts in `[lo, hi]`.
pub fn all_perturbations(n: usize, lo: i64, hi: i64) -> Vec<Vec<(i64, i64)>> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        let mut next = Vec::new();
        for prefix in &out {
            for re in lo..=hi {
                for im in lo..=hi {
                    let mut v = prefix.clone();
                    v.push((re, im));
                    next.push(v);
                }
            }
        }
        out = next;
    }
    out
}

pub fn random_bits<R: Rng>(n: usize, rng: &mut R) -> Vec<u8> {
    (0..n).map(|_| rng.random_range(0..2u8)).collect()
}
