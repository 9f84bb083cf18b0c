//! Coefficient conditioning of a QUBO before it is handed to an annealer:
//! scale the largest coefficient down to `t_high`, then zero everything whose
//! magnitude falls below `10^t_low`.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::qubo::QuboProblem;
use crate::solver::brute;

#[derive(Debug, Error)]
pub enum PreprocessError {
    #[error("invalid pre-processing bounds: t_high={t_high}, t_low={t_low}")]
    InvalidConfig { t_high: f64, t_low: f64 },
    #[error("problems differ in size ({0} vs {1})")]
    SizeMismatch(usize, usize),
    #[error("degenerate reference energy (optimum is zero)")]
    DegenerateReference,
    #[error(transparent)]
    Solver(#[from] crate::solver::SolverError),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PreprocessConfig {
    /// Upper bound on the largest coefficient magnitude after scaling.
    pub t_high: f64,
    /// Elimination threshold exponent; `-inf` disables elimination.
    pub t_low: f64,
}

impl Default for PreprocessConfig {
    fn default() -> Self {
        Self {
            t_high: 6.0,
            t_low: -2.0,
        }
    }
}

impl PreprocessConfig {
    pub fn new(t_high: f64, t_low: f64) -> Result<Self, PreprocessError> {
        let cfg = Self { t_high, t_low };
        cfg.validate()?;
        Ok(cfg)
    }

    /// Scaling only, no elimination.
    pub fn scaling_only(t_high: f64) -> Self {
        Self {
            t_high,
            t_low: f64::NEG_INFINITY,
        }
    }

    pub fn threshold(&self) -> f64 {
        10f64.powf(self.t_low)
    }

    pub fn validate(&self) -> Result<(), PreprocessError> {
        if !(self.t_high > 0.0 && self.t_high.is_finite()) || self.t_low.is_nan() || !(self.threshold() < self.t_high) {
            return Err(PreprocessError::InvalidConfig {
                t_high: self.t_high,
                t_low: self.t_low,
            });
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PreprocessReport {
    pub scale_factor: f64,
    pub zeroed_count: usize,
    /// Coefficients removed by elimination, ascending `(i, j)`.
    #[serde(skip)]
    pub zeroed: Vec<(usize, usize)>,
    pub q_max_before: f64,
    pub q_max_after: f64,
    /// Every coefficient was eliminated.
    pub all_zero: bool,
    pub ppl: Option<f64>,
}

/// `1` when `q_max <= t_high`, otherwise `t_high / q_max`.
pub fn scale_factor(q_max: f64, t_high: f64) -> f64 {
    if q_max <= t_high {
        1.0
    } else {
        t_high / q_max
    }
}

pub fn preprocess(p: &QuboProblem, cfg: &PreprocessConfig) -> (QuboProblem, PreprocessReport) {
    let q_max_before = p.max_abs();
    let factor = scale_factor(q_max_before, cfg.t_high);
    let threshold = cfg.threshold();
    let mut out = p.clone();
    let mut zeroed = Vec::new();
    out.map_coefficients(|i, j, v| {
        let s = v * factor;
        if s != 0.0 && s.abs() < threshold {
            zeroed.push((i, j));
            0.0
        } else {
            // the product can round a hair above the bound
            s.clamp(-cfg.t_high, cfg.t_high)
        }
    });
    out.set_offset(p.offset() * factor);
    let q_max_after = out.max_abs();
    let report = PreprocessReport {
        scale_factor: factor,
        zeroed_count: zeroed.len(),
        zeroed,
        q_max_before,
        q_max_after,
        all_zero: out.n_terms() == 0 && p.n_terms() > 0,
        ppl: None,
    };
    (out, report)
}

/// Relative loss of optimum caused by pre-processing, evaluated on the
/// original problem (offset included).
///
/// Among equally good minimizers of `pre`, the one that is best on `original`
/// is used, so the loss is zero whenever the two minimizer sets intersect.
pub fn ppl(original: &QuboProblem, pre: &QuboProblem) -> Result<f64, PreprocessError> {
    if original.n_vars() != pre.n_vars() {
        return Err(PreprocessError::SizeMismatch(original.n_vars(), pre.n_vars()));
    }
    let reference = brute::minimize(original)?.energy;
    if reference == 0.0 {
        return Err(PreprocessError::DegenerateReference);
    }
    let (_, candidates) = brute::minimizers(pre)?;
    let achieved = candidates
        .iter()
        .map(|q| original.objective(q))
        .fold(f64::INFINITY, f64::min);
    Ok(((achieved - reference).abs() / reference.abs()).max(0.0))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scale_factor_cases() {
        assert_eq!(scale_factor(3.0, 6.0), 1.0);
        assert_eq!(scale_factor(12.0, 6.0), 0.5);
        assert_eq!(scale_factor(6.0, 6.0), 1.0);
    }

    #[test]
    fn in_range_problem_is_untouched() {
        let q = QuboProblem::from_terms(3, [(0, 0, 6.0), (0, 1, -0.1), (2, 2, 1.0)], 1.0).unwrap();
        let (pre, rep) = preprocess(&q, &PreprocessConfig::default());
        assert_eq!(pre, q);
        assert_eq!(rep.zeroed_count, 0);
        assert_eq!(rep.scale_factor, 1.0);
    }

    #[test]
    fn scale_then_eliminate() {
        let q = QuboProblem::from_terms(2, [(0, 0, 100.0), (1, 1, 1e-3)], 0.0).unwrap();
        let (pre, rep) = preprocess(&q, &PreprocessConfig::default());
        assert!((rep.scale_factor - 0.06).abs() < 1e-15);
        assert!((pre.get(0, 0) - 6.0).abs() < 1e-12);
        assert_eq!(pre.get(1, 1), 0.0);
        assert_eq!(rep.zeroed, vec![(1, 1)]);
        assert_eq!(rep.q_max_before, 100.0);
    }

    #[test]
    fn negative_coefficients_survive_by_magnitude() {
        let q = QuboProblem::from_terms(2, [(0, 0, -3.0), (0, 1, -0.001)], 0.0).unwrap();
        let (pre, rep) = preprocess(&q, &PreprocessConfig::default());
        assert_eq!(pre.get(0, 0), -3.0);
        assert_eq!(rep.zeroed, vec![(0, 1)]);
    }

    #[test]
    fn everything_eliminated_is_flagged() {
        let q = QuboProblem::from_terms(2, [(0, 0, 1e-4)], 0.0).unwrap();
        let (_, rep) = preprocess(&q, &PreprocessConfig::default());
        assert!(rep.all_zero);
    }

    #[test]
    fn config_validation() {
        assert!(PreprocessConfig::new(6.0, -2.0).is_ok());
        assert!(PreprocessConfig::new(0.0, -2.0).is_err());
        assert!(PreprocessConfig::new(6.0, 1.0).is_err());
        assert!(PreprocessConfig::scaling_only(6.0).validate().is_ok());
    }

    #[test]
    fn ppl_zero_cases_and_degenerate() {
        let q = QuboProblem::from_terms(3, [(0, 0, -20.0), (0, 1, 9.0), (1, 1, -5.0), (2, 2, 3.0)], 1.0)
            .unwrap();
        assert_eq!(ppl(&q, &q).unwrap(), 0.0);
        let (scaled, _) = preprocess(&q, &PreprocessConfig::scaling_only(2.0));
        assert_eq!(ppl(&q, &scaled).unwrap(), 0.0);
        let zero = QuboProblem::new(2);
        assert!(matches!(ppl(&zero, &zero), Err(PreprocessError::DegenerateReference)));
    }
}
