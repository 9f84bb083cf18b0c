mod common;

use common::instance;
use rand::Rng;
use vpp_anneal::hardware::{
    apply_ice, chimera, clique_embed, clique_qubits, embed_unscaled, parallel_capacity, prepare, sample_embedded,
    solve_on_hardware_model, unembed, HardwareConfig, IceModel,
};
use vpp_anneal::mimo::Modulation;
use vpp_anneal::qubo::{build_qubo, BitDepth, IsingProblem};
use vpp_anneal::rng::substream;
use vpp_anneal::solver::{solve_sa, AnnealParams};

fn spins_of(state: u32, n: usize) -> Vec<i8> {
    (0..n).map(|k| if state >> k & 1 == 1 { 1 } else { -1 }).collect()
}

fn random_ising(n: usize, seed: u64) -> IsingProblem {
    let mut rng = substream(seed, &[]);
    let mut p = IsingProblem::new(n);
    for i in 0..n {
        p.h[i] = rng.random_range(-1.0..1.0);
        for j in i + 1..n {
            p.add_coupling(i, j, rng.random_range(-1.0..1.0));
        }
    }
    p
}

fn ground(p: &IsingProblem) -> (f64, Vec<i8>) {
    let n = p.n_vars();
    (0..1u32 << n)
        .map(|s| {
            let spins = spins_of(s, n);
            (p.energy(&spins), spins)
        })
        .min_by(|a, b| a.0.total_cmp(&b.0))
        .unwrap()
}

#[test]
fn ice_offsets_have_half_normal_magnitude() {
    let mut p = IsingProblem::new(1);
    p.h[0] = 0.5;
    let ice = IceModel { sigma_h: 0.01, sigma_j: 0.01 };
    let mut rng = substream(42, &[]);
    let n = 10_000;
    let mean: f64 = (0..n).map(|_| (apply_ice(&p, &ice, &mut rng).h[0] - 0.5).abs()).sum::<f64>() / n as f64;
    let expected = 0.01 * (2.0 / std::f64::consts::PI).sqrt();
    let se = 0.01 * (1.0 - 2.0 / std::f64::consts::PI).sqrt() / (n as f64).sqrt();
    assert!((mean - expected).abs() < 3.0 * se, "{mean} vs {expected}");
}

#[test]
fn ice_can_flip_a_near_degenerate_ground_state() {
    let mut p = IsingProblem::new(2);
    p.h = vec![0.001, 0.0];
    p.add_coupling(0, 1, -1.0);
    let clean = ground(&p).1;
    assert_eq!(clean, vec![-1, -1]);
    let ice = IceModel { sigma_h: 0.01, sigma_j: 0.01 };
    let mut rng = substream(7, &[]);
    let flips = (0..1000).filter(|_| ground(&apply_ice(&p, &ice, &mut rng)).1 != clean).count();
    assert!(flips > 0);
}

#[test]
fn chain_consistent_states_shift_energy_by_a_constant() {
    let g = chimera(2);
    for n in 2..=4usize {
        let logical = random_ising(n, n as u64);
        let emb = clique_embed(n, &g).unwrap().with_chain_strength(3.0);
        let phys = embed_unscaled(&logical, &emb, &g).unwrap();
        assert!(phys.n_physical() <= 12);
        let mut shift = None;
        for s in 0..1u32 << n {
            let spins = spins_of(s, n);
            let diff = phys.physical.energy(&phys.spread(&spins)) - logical.energy(&spins);
            let base = *shift.get_or_insert(diff);
            assert!((diff - base).abs() < 1e-12, "n={n}");
        }
        // the constant is the satisfied chain couplers
        let intra: f64 = phys
            .chains
            .iter()
            .flat_map(|c| c.iter().flat_map(move |&a| c.iter().map(move |&b| (a, b))))
            .filter(|(a, b)| a < b)
            .map(|(a, b)| phys.physical.coupling(a, b))
            .sum();
        assert!((shift.unwrap() - intra).abs() < 1e-12);
    }
}

#[test]
fn strong_chains_reproduce_the_logical_ground_state() {
    let g = chimera(2);
    for n in 2..=4usize {
        let logical = random_ising(n, 100 + n as u64);
        let emb = clique_embed(n, &g).unwrap().with_chain_strength(50.0);
        let phys = embed_unscaled(&logical, &emb, &g).unwrap();
        let (_, best_phys) = ground(&phys.physical);
        let (decoded, broken) = unembed(&best_phys, &phys, &logical);
        assert_eq!(broken, 0.0);
        assert_eq!(decoded, ground(&logical).1, "n={n}");
    }
}

#[test]
fn embedding_valid_for_many_sizes() {
    let g = chimera(16);
    for n in 4..=32usize {
        let emb = clique_embed(n, &g).unwrap();
        let edges = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b)));
        emb.validate(&g, edges).unwrap();
        assert_eq!(emb.physical_qubits(), clique_qubits(n));
        assert!(parallel_capacity(n, &g) * clique_qubits(n) <= g.num_qubits());
    }
    assert_eq!(clique_qubits(28), 224);
    assert_eq!(parallel_capacity(28, &g), 9);
}

fn broken_fraction(inst_seed: u64, jf_mult: f64) -> f64 {
    let inst = instance(inst_seed, 2, 2, Modulation::Qam16);
    let logical = build_qubo(&inst, BitDepth::new(1).unwrap()).to_ising();
    let cfg = HardwareConfig { grid: 4, jf_mult, ice: IceModel::none(), ..HardwareConfig::default() };
    let emb = prepare(&logical, &cfg).unwrap();
    sample_embedded(&emb, &logical, cfg.ice, &AnnealParams::new(50, 100, inst_seed)).1
}

#[test]
fn weak_chains_break_more_often() {
    let (mut weak, mut strong) = (0.0, 0.0);
    for seed in 0..10 {
        weak += broken_fraction(seed, 0.1);
        strong += broken_fraction(seed, 1.2);
    }
    assert!(weak > strong, "{weak} vs {strong}");
}

#[test]
fn noiseless_hardware_model_agrees_with_logical_annealing() {
    let depth = BitDepth::new(1).unwrap();
    let cfg = HardwareConfig { grid: 2, ice: IceModel::none(), ..HardwareConfig::default() };
    let mut agree = 0;
    for seed in 0..100 {
        let inst = instance(9000 + seed, 2, 2, Modulation::Qam16);
        let q = build_qubo(&inst, depth);
        let params = AnnealParams::new(100, 1000, seed);
        let hw = solve_on_hardware_model(&inst, &q, &cfg, &params).unwrap();
        let sa = solve_sa(&inst, &q, &params).unwrap();
        if hw.best_objective == sa.best_objective {
            agree += 1;
        }
    }
    assert!(agree >= 95, "{agree}/100");
}
