mod common;

use common::{all_perturbations, direct_power, instance, reference_precoder};
use num_complex::{Complex, Complex64};
use rand::Rng;
use vpp_anneal::mimo::{
    generate_channel, receive_decode, transmit, transmit_with_variance, ChannelInstance, ComplexMatrix,
    Constellation, Modulation, PerturbationVector, SymbolVector,
};
use vpp_anneal::qubo::{build_qubo, BitDepth};
use vpp_anneal::rng::substream;
use vpp_anneal::solver::{brute, solve_sphere_encoder};

#[test]
fn precoder_matches_elimination_reference() {
    for (seed, n_t, n_r) in [(1u64, 2, 2), (2, 2, 2), (3, 4, 4), (4, 6, 3), (5, 7, 7)] {
        let ch = generate_channel(n_t, n_r, &mut substream(seed, &[9])).unwrap();
        let reference = reference_precoder(ch.h());
        assert!(ch.precoder().distance(&reference) < 1e-9, "seed {seed}");
        let hp = ch.h().matmul(ch.precoder()).unwrap();
        assert!(hp.distance(&ComplexMatrix::identity(n_r)) < 1e-9);
        assert!(ch.inversion_residual() < 1e-9);
    }
}

#[test]
fn two_user_minimum_matches_enumeration() {
    let depth = BitDepth::new(1).unwrap();
    let candidates = all_perturbations(2, -2, 1);
    assert_eq!(candidates.len(), 256);
    for seed in 0..20 {
        let inst = instance(seed, 2, 2, Modulation::Qam16);
        let p = reference_precoder(inst.channel.h());
        let tau = inst.constellation.tau();
        let (best_v, best) = candidates
            .iter()
            .map(|v| (v, direct_power(&p, &inst.symbols.entries, v, tau)))
            .min_by(|a, b| a.1.total_cmp(&b.1))
            .unwrap();

        let qubo = build_qubo(&inst, depth);
        assert_eq!(qubo.n_vars(), 8);
        let read = brute::minimize(&qubo).unwrap();
        let v = qubo.var_map().unwrap().decode(&read.bits).unwrap();
        let expected = PerturbationVector(best_v.iter().map(|&(re, im)| Complex::new(re, im)).collect());
        assert_eq!(v, expected, "seed {seed}");
        assert!((inst.objective(&v) - best).abs() <= 1e-9 * best);

        let sphere = solve_sphere_encoder(&inst, depth);
        assert!((sphere.best_objective - best.min(inst.zf_objective())).abs() <= 1e-9 * best);
    }
}

#[test]
fn transmission_is_bitwise_reproducible() {
    let run = || {
        let inst = instance(77, 4, 4, Modulation::Qam16);
        let v = PerturbationVector(vec![Complex::new(1, -1), Complex::new(0, 0), Complex::new(-2, 1), Complex::new(0, 1)]);
        transmit(&inst.channel, &inst.constellation, &inst.symbols, &v, 15.0, &mut substream(77, &[3]))
            .unwrap()
            .received
    };
    let a = run();
    let b = run();
    assert_eq!(
        a.iter().map(|z| (z.re.to_bits(), z.im.to_bits())).collect::<Vec<_>>(),
        b.iter().map(|z| (z.re.to_bits(), z.im.to_bits())).collect::<Vec<_>>()
    );
}

#[test]
fn noiseless_round_trip_over_random_cases() {
    let mut rng = substream(2024, &[1]);
    let mut failures = 0;
    for case in 0..2000u64 {
        let m = Modulation::ALL[(case % 4) as usize];
        let cons = Constellation::new(m);
        let n_r = rng.random_range(1..=4usize);
        let n_t = n_r + rng.random_range(0..=2usize);
        let Ok(ch) = generate_channel(n_t, n_r, &mut rng) else { continue };
        let u = SymbolVector::random(&cons, n_r, &mut rng);
        let t = rng.random_range(1..=3u32);
        let lo = -(1i64 << t);
        let hi = (1i64 << t) - 1;
        let v = PerturbationVector(
            (0..n_r)
                .map(|_| Complex::new(rng.random_range(lo..=hi), rng.random_range(lo..=hi)))
                .collect(),
        );
        let tx = transmit_with_variance(&ch, &cons, &u, &v, 0.0, &mut rng).unwrap();
        if receive_decode(&tx.received, tx.p_t, &cons).bits != u.bits {
            failures += 1;
        }
    }
    assert_eq!(failures, 0);
}

#[test]
fn identity_channel_needs_rescaling_only() {
    let ch = ChannelInstance::from_channel(ComplexMatrix::identity(2)).unwrap();
    let cons = Constellation::new(Modulation::Qpsk);
    let u = SymbolVector::from_bits(&cons, &[0, 1, 1, 1]).unwrap();
    let tx = transmit_with_variance(&ch, &cons, &u, &PerturbationVector::zeros(2), 0.0, &mut substream(0, &[])).unwrap();
    let g = tx.p_t.sqrt();
    for (y, s) in tx.received.iter().zip(&u.entries) {
        assert!((y * g - s).norm() < 1e-12);
    }
    let expected: f64 = u.entries.iter().map(Complex64::norm_sqr).sum();
    assert!((tx.p_t - expected).abs() < 1e-12);
}
