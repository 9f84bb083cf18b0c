use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

use super::{ComplexMatrix, MimoError};

/// Channels whose Gram matrix `H H^H` exceeds this condition number are rejected.
pub const MAX_CONDITION: f64 = 1e12;

/// A downlink channel `H` (users × antennas) with its zero-forcing precoder
/// `P = H^H (H H^H)^{-1}`.
#[derive(Debug, Clone, PartialEq)]
pub struct ChannelInstance {
    h: ComplexMatrix,
    p: ComplexMatrix,
}

impl ChannelInstance {
    pub fn from_channel(h: ComplexMatrix) -> Result<Self, MimoError> {
        let (n_r, n_t) = (h.rows(), h.cols());
        if n_r == 0 || n_r > n_t {
            return Err(MimoError::InvalidDimensions { n_t, n_r });
        }
        let hn = h.to_nalgebra();
        let gram: DMatrix<Complex64> = &hn * hn.adjoint();
        let eig = gram.clone().symmetric_eigen().eigenvalues;
        let lo = eig.iter().cloned().fold(f64::INFINITY, f64::min);
        let hi = eig.iter().cloned().fold(0.0, f64::max);
        let condition = if lo > 0.0 { hi / lo } else { f64::INFINITY };
        if !(condition <= MAX_CONDITION) {
            return Err(MimoError::IllConditioned { condition });
        }
        let inv = gram
            .try_inverse()
            .ok_or(MimoError::IllConditioned { condition })?;
        let p = ComplexMatrix::from_nalgebra(&(hn.adjoint() * inv));
        Ok(Self { h, p })
    }

    pub fn h(&self) -> &ComplexMatrix {
        &self.h
    }

    pub fn precoder(&self) -> &ComplexMatrix {
        &self.p
    }

    pub fn n_t(&self) -> usize {
        self.h.cols()
    }

    pub fn n_r(&self) -> usize {
        self.h.rows()
    }

    /// `‖H P − I‖_F / ‖I‖_F`.
    pub fn inversion_residual(&self) -> f64 {
        let hp = self.h.matmul(&self.p).expect("shapes fixed at construction");
        let id = ComplexMatrix::identity(self.n_r());
        hp.distance(&id) / id.frobenius_norm()
    }
}

/// Draws an i.i.d. CN(0, 1) Rayleigh channel and derives its ZF precoder.
///
/// Ill-conditioned draws are reported, not redrawn; the caller decides.
pub fn generate_channel<R: Rng + ?Sized>(
    n_t: usize,
    n_r: usize,
    rng: &mut R,
) -> Result<ChannelInstance, MimoError> {
    if n_r == 0 || n_r > n_t {
        return Err(MimoError::InvalidDimensions { n_t, n_r });
    }
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let h = ComplexMatrix::from_fn(n_r, n_t, |_, _| {
        let re: f64 = rng.sample(StandardNormal);
        let im: f64 = rng.sample(StandardNormal);
        Complex64::new(re * s, im * s)
    });
    ChannelInstance::from_channel(h)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::substream;

    #[test]
    fn scalar_and_identity_channels() {
        let one = ComplexMatrix::identity(1);
        let ch = ChannelInstance::from_channel(one.clone()).unwrap();
        assert!(ch.precoder().distance(&one) < 1e-15);
        let id = ComplexMatrix::identity(2);
        let ch = ChannelInstance::from_channel(id.clone()).unwrap();
        assert!(ch.precoder().distance(&id) < 1e-15);
    }

    #[test]
    fn rejects_singular_and_bad_shapes() {
        let c = |re| Complex64::new(re, 0.0);
        let h = ComplexMatrix::new(2, 2, vec![c(1.0), c(2.0), c(2.0), c(4.0)]).unwrap();
        assert!(matches!(
            ChannelInstance::from_channel(h),
            Err(MimoError::IllConditioned { .. })
        ));
        let mut rng = substream(1, &[]);
        assert!(generate_channel(2, 3, &mut rng).is_err());
        assert!(generate_channel(2, 0, &mut rng).is_err());
    }

    #[test]
    fn generated_channels_invert() {
        for seed in 0..50 {
            let mut rng = substream(seed, &[]);
            let ch = generate_channel(6, 4, &mut rng).unwrap();
            assert_eq!((ch.n_t(), ch.n_r()), (6, 4));
            assert!(ch.inversion_residual() < 1e-9);
        }
    }

    #[test]
    fn deterministic_given_seed() {
        let a = generate_channel(3, 3, &mut substream(9, &[1])).unwrap();
        let b = generate_channel(3, 3, &mut substream(9, &[1])).unwrap();
        assert_eq!(a, b);
    }
}
