use num_complex::{Complex, Complex64};
use rand::Rng;
use rand_distr::StandardNormal;

use super::{ChannelInstance, Constellation, MimoError};

/// User data: one constellation symbol per user plus the bits it carries.
#[derive(Debug, Clone, PartialEq)]
pub struct SymbolVector {
    pub entries: Vec<Complex64>,
    pub bits: Vec<u8>,
}

impl SymbolVector {
    pub fn from_bits(cons: &Constellation, bits: &[u8]) -> Result<Self, MimoError> {
        let bps = cons.bits_per_symbol();
        if bits.len() % bps != 0 {
            return Err(MimoError::DimensionMismatch {
                expected: bits.len().div_ceil(bps) * bps,
                found: bits.len(),
            });
        }
        Ok(Self {
            entries: bits.chunks(bps).map(|b| cons.map(b)).collect(),
            bits: bits.to_vec(),
        })
    }

    /// Uniform symbols for `n_r` users.
    pub fn random<R: Rng + ?Sized>(cons: &Constellation, n_r: usize, rng: &mut R) -> Self {
        let bits: Vec<u8> = (0..n_r * cons.bits_per_symbol())
            .map(|_| rng.random_range(0..2u8))
            .collect();
        Self::from_bits(cons, &bits).expect("length is a multiple of bits per symbol")
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

/// Gaussian-integer perturbation `v`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PerturbationVector(pub Vec<Complex<i64>>);

impl PerturbationVector {
    pub fn zeros(n: usize) -> Self {
        Self(vec![Complex::new(0, 0); n])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|z| z.re == 0 && z.im == 0)
    }

    /// True when every real/imaginary part lies in `[-2^t, 2^t - 1]`.
    pub fn within_bit_depth(&self, t: u32) -> bool {
        let lo = -(1i64 << t);
        let hi = (1i64 << t) - 1;
        self.0
            .iter()
            .all(|z| (lo..=hi).contains(&z.re) && (lo..=hi).contains(&z.im))
    }
}

/// `d = u + tau v`.
pub fn perturbed(
    cons: &Constellation,
    u: &SymbolVector,
    v: &PerturbationVector,
) -> Result<Vec<Complex64>, MimoError> {
    if u.len() != v.len() {
        return Err(MimoError::DimensionMismatch {
            expected: u.len(),
            found: v.len(),
        });
    }
    let tau = cons.tau();
    Ok(u.entries
        .iter()
        .zip(&v.0)
        .map(|(s, p)| s + Complex64::new(tau * p.re as f64, tau * p.im as f64))
        .collect())
}

/// Transmit power scaling `‖P (u + tau v)‖²`.
pub fn vpp_objective(
    ch: &ChannelInstance,
    cons: &Constellation,
    u: &SymbolVector,
    v: &PerturbationVector,
) -> Result<f64, MimoError> {
    if u.len() != ch.n_r() {
        return Err(MimoError::DimensionMismatch {
            expected: ch.n_r(),
            found: u.len(),
        });
    }
    let d = perturbed(cons, u, v)?;
    let x = ch.precoder().mul_vec(&d)?;
    Ok(x.iter().map(|z| z.norm_sqr()).sum())
}

/// Per-antenna complex noise variance for a given SNR in dB (unit total transmit power).
pub fn noise_variance(snr_db: f64) -> f64 {
    10f64.powf(-snr_db / 10.0)
}

/// `E_b/N_0` in dB corresponding to an SNR in dB.
pub fn ebn0_db(snr_db: f64, cons: &Constellation) -> f64 {
    snr_db - 10.0 * (cons.bits_per_symbol() as f64).log10()
}

#[derive(Debug, Clone, PartialEq)]
pub struct Transmission {
    pub received: Vec<Complex64>,
    pub p_t: f64,
}

/// `y = H P d / sqrt(P_t) + n` with the noise variance derived from `snr_db`.
pub fn transmit<R: Rng + ?Sized>(
    ch: &ChannelInstance,
    cons: &Constellation,
    u: &SymbolVector,
    v: &PerturbationVector,
    snr_db: f64,
    rng: &mut R,
) -> Result<Transmission, MimoError> {
    if !snr_db.is_finite() {
        return Err(MimoError::NonFinite);
    }
    transmit_with_variance(ch, cons, u, v, noise_variance(snr_db), rng)
}

/// As [`transmit`] with an explicit noise variance (0 for a noiseless link).
pub fn transmit_with_variance<R: Rng + ?Sized>(
    ch: &ChannelInstance,
    cons: &Constellation,
    u: &SymbolVector,
    v: &PerturbationVector,
    sigma2: f64,
    rng: &mut R,
) -> Result<Transmission, MimoError> {
    let d = perturbed(cons, u, v)?;
    let x = ch.precoder().mul_vec(&d)?;
    let p_t: f64 = x.iter().map(|z| z.norm_sqr()).sum();
    if !(p_t > 0.0) {
        return Err(MimoError::DegenerateTransmit);
    }
    let scale = p_t.sqrt().recip();
    let x: Vec<Complex64> = x.into_iter().map(|z| z * scale).collect();
    let noise_sd = (sigma2 / 2.0).sqrt();
    let received = ch
        .h()
        .mul_vec(&x)?
        .into_iter()
        .map(|z| {
            let nr: f64 = rng.sample(StandardNormal);
            let ni: f64 = rng.sample(StandardNormal);
            z + Complex64::new(nr * noise_sd, ni * noise_sd)
        })
        .collect();
    Ok(Transmission { received, p_t })
}

/// Centered modulo into `[-tau/2, tau/2)`.
pub fn modulo_tau(x: f64, tau: f64) -> f64 {
    let r = x - tau * ((x + tau / 2.0) / tau).floor();
    // floating error can land exactly on +tau/2
    if r >= tau / 2.0 {
        r - tau
    } else {
        r
    }
}

/// Rescales by `sqrt(p_t)`, folds with the modulo, slices and demaps.
pub fn receive_decode(y: &[Complex64], p_t: f64, cons: &Constellation) -> SymbolVector {
    let tau = cons.tau();
    let g = p_t.sqrt();
    let mut entries = Vec::with_capacity(y.len());
    let mut bits = Vec::with_capacity(y.len() * cons.bits_per_symbol());
    for z in y {
        let folded = Complex64::new(modulo_tau(z.re * g, tau), modulo_tau(z.im * g, tau));
        let idx = cons.slice(folded);
        entries.push(cons.points()[idx]);
        bits.extend(cons.bits_of(idx));
    }
    SymbolVector { entries, bits }
}
