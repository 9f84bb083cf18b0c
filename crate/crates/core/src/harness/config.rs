use std::fmt;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::hardware::{DeviceRanges, HardwareConfig, IceModel};
use crate::mimo::Modulation;
use crate::preprocess::PreprocessConfig;
use crate::qubo::BitDepth;
use crate::solver::{AnnealParams, SolverKind};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SolverConfig {
    pub kind: SolverKind,
    pub num_reads: usize,
    pub sweeps: usize,
    pub beta_start: f64,
    pub beta_end: f64,
    pub breadth: usize,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self {
            kind: SolverKind::Sphere,
            num_reads: 100,
            sweeps: 100,
            beta_start: 0.1,
            beta_end: 10.0,
            breadth: crate::solver::fse::DEFAULT_BREADTH,
        }
    }
}

impl SolverConfig {
    pub fn anneal_params(&self, seed: u64) -> AnnealParams {
        AnnealParams {
            num_reads: self.num_reads,
            sweeps: self.sweeps,
            beta_start: self.beta_start,
            beta_end: self.beta_end,
            seed,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct PreprocessSection {
    pub enabled: bool,
    pub t_high: f64,
    pub t_low: f64,
}

impl Default for PreprocessSection {
    fn default() -> Self {
        let d = PreprocessConfig::default();
        Self {
            enabled: true,
            t_high: d.t_high,
            t_low: d.t_low,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct HardwareSection {
    pub enabled: bool,
    pub grid: usize,
    pub jf_mult: f64,
    pub ice_sigma_h: f64,
    pub ice_sigma_j: f64,
    pub precision_bits: Option<u32>,
}

impl Default for HardwareSection {
    fn default() -> Self {
        let d = HardwareConfig::default();
        Self {
            enabled: false,
            grid: d.grid,
            jf_mult: d.jf_mult,
            ice_sigma_h: d.ice.sigma_h,
            ice_sigma_j: d.ice.sigma_j,
            precision_bits: None,
        }
    }
}

impl HardwareSection {
    pub fn to_config(&self) -> HardwareConfig {
        HardwareConfig {
            grid: self.grid,
            jf_mult: self.jf_mult,
            ice: IceModel {
                sigma_h: self.ice_sigma_h,
                sigma_j: self.ice_sigma_j,
            },
            ranges: DeviceRanges {
                precision_bits: self.precision_bits,
                ..DeviceRanges::default()
            },
        }
    }
}

/// Everything that determines a simulation run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SimConfig {
    pub n_t: usize,
    pub n_r: usize,
    pub modulation: Modulation,
    pub t_bits: u32,
    pub snr_points: Vec<f64>,
    pub trials_per_point: usize,
    pub solver: SolverConfig,
    pub preprocess: PreprocessSection,
    pub hw_model: HardwareSection,
    pub master_seed: u64,
    pub packet_bits: usize,
    /// Record solver wall time in `trials.csv`; off keeps outputs reproducible.
    pub record_timing: bool,
}

impl Default for SimConfig {
    fn default() -> Self {
        Self {
            n_t: 4,
            n_r: 4,
            modulation: Modulation::Qam16,
            t_bits: 1,
            snr_points: vec![20.0],
            trials_per_point: 1000,
            solver: SolverConfig::default(),
            preprocess: PreprocessSection::default(),
            hw_model: HardwareSection::default(),
            master_seed: 1,
            packet_bits: 12_000,
            record_timing: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FieldError {
    pub path: &'static str,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConfigError {
    pub errors: Vec<FieldError>,
}

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "invalid configuration:")?;
        for e in &self.errors {
            writeln!(f, "  {}: {}", e.path, e.message)?;
        }
        Ok(())
    }
}

impl std::error::Error for ConfigError {}

impl SimConfig {
    pub fn from_toml_str(text: &str) -> Result<Self, ConfigError> {
        toml::from_str(text).map_err(|e| ConfigError {
            errors: vec![FieldError {
                path: "<file>",
                message: e.to_string(),
            }],
        })
    }

    pub fn from_file(path: &Path) -> Result<Self, ConfigError> {
        let text = std::fs::read_to_string(path).map_err(|e| ConfigError {
            errors: vec![FieldError {
                path: "<file>",
                message: format!("{}: {e}", path.display()),
            }],
        })?;
        Self::from_toml_str(&text)
    }

    pub fn bit_depth(&self) -> BitDepth {
        BitDepth::new(self.t_bits).unwrap_or_default()
    }

    pub fn preprocess_config(&self) -> Option<PreprocessConfig> {
        self.preprocess.enabled.then_some(PreprocessConfig {
            t_high: self.preprocess.t_high,
            t_low: self.preprocess.t_low,
        })
    }

    pub fn n_vars(&self) -> usize {
        crate::qubo::logical_qubit_count(self.n_r, self.bit_depth())
    }

    /// Every problem with its field path.
    pub fn validate(&self) -> Result<(), ConfigError> {
        let mut errors = Vec::new();
        let mut err = |path, message: String| errors.push(FieldError { path, message });
        if self.n_r == 0 {
            err("n_r", "must be at least 1".into());
        }
        if self.n_r > self.n_t {
            err("n_r", format!("{} users exceed {} antennas", self.n_r, self.n_t));
        }
        if BitDepth::new(self.t_bits).is_err() {
            err("t_bits", format!("must be in 1..={}", BitDepth::MAX));
        }
        if self.snr_points.is_empty() {
            err("snr_points", "at least one SNR point is required".into());
        }
        if self.snr_points.iter().any(|s| !s.is_finite()) {
            err("snr_points", "SNR values must be finite".into());
        }
        if self.trials_per_point == 0 {
            err("trials_per_point", "must be at least 1".into());
        }
        if self.packet_bits == 0 {
            err("packet_bits", "must be at least 1".into());
        }
        let s = &self.solver;
        if s.kind == SolverKind::Sa && s.num_reads == 0 {
            err("solver.num_reads", "must be at least 1".into());
        }
        if s.kind == SolverKind::Sa && !(s.beta_start > 0.0 && s.beta_end >= s.beta_start) {
            err("solver.beta_start", "need 0 < beta_start <= beta_end".into());
        }
        if s.kind == SolverKind::Fse && s.breadth == 0 {
            err("solver.breadth", "must be at least 1".into());
        }
        if s.kind == SolverKind::Brute && self.n_vars() > crate::solver::brute::MAX_VARS {
            err(
                "solver.kind",
                format!(
                    "brute force handles at most {} variables, this setup has {}",
                    crate::solver::brute::MAX_VARS,
                    self.n_vars()
                ),
            );
        }
        if let Some(p) = self.preprocess_config() {
            if p.validate().is_err() {
                err("preprocess", "need t_high > 0 and 10^t_low < t_high".into());
            }
        }
        let hw = &self.hw_model;
        if hw.enabled {
            if s.kind != SolverKind::Sa {
                err("hw_model.enabled", "the hardware model runs with the sa solver only".into());
            }
            if hw.grid == 0 {
                err("hw_model.grid", "must be at least 1".into());
            } else if self.n_vars() > 4 * hw.grid {
                err(
                    "hw_model.grid",
                    format!(
                        "{} logical variables need a grid of at least {}",
                        self.n_vars(),
                        self.n_vars().div_ceil(4)
                    ),
                );
            }
            if !(hw.jf_mult > 0.0) {
                err("hw_model.jf_mult", "must be positive".into());
            }
            if !(hw.ice_sigma_h >= 0.0 && hw.ice_sigma_j >= 0.0) {
                err("hw_model.ice_sigma", "must be non-negative".into());
            }
        }
        if errors.is_empty() {
            Ok(())
        } else {
            Err(ConfigError { errors })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_are_valid() {
        SimConfig::default().validate().unwrap();
    }

    #[test]
    fn reports_every_bad_field() {
        let cfg = SimConfig {
            n_t: 2,
            n_r: 3,
            snr_points: vec![],
            trials_per_point: 0,
            ..SimConfig::default()
        };
        let e = cfg.validate().unwrap_err();
        let paths: Vec<_> = e.errors.iter().map(|e| e.path).collect();
        assert_eq!(paths, vec!["n_r", "snr_points", "trials_per_point"]);
    }

    #[test]
    fn hardware_needs_sa_and_capacity() {
        let mut cfg = SimConfig::default();
        cfg.hw_model.enabled = true;
        cfg.hw_model.grid = 2;
        let e = cfg.validate().unwrap_err();
        let paths: Vec<_> = e.errors.iter().map(|e| e.path).collect();
        assert_eq!(paths, vec!["hw_model.enabled", "hw_model.grid"]);
    }

    #[test]
    fn parses_toml() {
        let cfg = SimConfig::from_toml_str(
            r#"
            n_t = 6
            n_r = 6
            modulation = "64QAM"
            snr_points = [24.0, 28.0]
            [solver]
            kind = "fse"
            breadth = 8
            [preprocess]
            t_low = -inf
            "#,
        )
        .unwrap();
        assert_eq!(cfg.modulation, Modulation::Qam64);
        assert_eq!(cfg.solver.kind, SolverKind::Fse);
        assert_eq!(cfg.solver.breadth, 8);
        assert_eq!(cfg.preprocess.t_low, f64::NEG_INFINITY);
        assert!(SimConfig::from_toml_str("bogus = 1").is_err());
    }
}
