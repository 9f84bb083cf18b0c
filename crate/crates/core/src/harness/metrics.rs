use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::mimo::PerturbationVector;

/// Outcome of one precoded transmission.
#[derive(Debug, Clone, PartialEq)]
pub struct TrialRecord {
    pub snr_index: usize,
    pub snr_db: f64,
    pub trial: usize,
    /// Seed of the channel draw that was finally accepted.
    pub channel_seed: u64,
    /// Ill-conditioned channel draws discarded before it.
    pub redraws: u32,
    pub chosen_v: PerturbationVector,
    pub p_t: f64,
    pub zf_p_t: f64,
    pub bit_errors: usize,
    pub bits: usize,
    /// Positions of wrong bits within this trial's bit string.
    pub error_positions: Vec<u32>,
    pub fallback_used: bool,
    pub wall_time_us: u64,
    pub broken_chain_fraction: Option<f64>,
    pub ppl: Option<f64>,
}

#[derive(Debug, Error, PartialEq)]
pub enum MetricsError {
    #[error("no trials")]
    Empty,
    #[error("fewer bits than one packet")]
    NoCompletePacket,
}

/// Erroneous bits over transmitted bits.
pub fn ber<'a>(records: impl IntoIterator<Item = &'a TrialRecord>) -> Result<f64, MetricsError> {
    let (errors, bits) = records
        .into_iter()
        .fold((0usize, 0usize), |(e, b), r| (e + r.bit_errors, b + r.bits));
    if bits == 0 {
        return Err(MetricsError::Empty);
    }
    Ok(errors as f64 / bits as f64)
}

/// Fraction of error-free packets when the trials' bits are concatenated in
/// order and cut into `packet_bits`-sized packets; a partial last packet is dropped.
pub fn throughput<'a>(
    records: impl IntoIterator<Item = &'a TrialRecord>,
    packet_bits: usize,
) -> Result<f64, MetricsError> {
    assert!(packet_bits > 0, "packet size must be positive");
    let mut offset = 0usize;
    let mut bad_packets = std::collections::BTreeSet::new();
    for r in records {
        for &pos in &r.error_positions {
            bad_packets.insert((offset + pos as usize) / packet_bits);
        }
        offset += r.bits;
    }
    let packets = offset / packet_bits;
    if packets == 0 {
        return Err(MetricsError::NoCompletePacket);
    }
    let bad = bad_packets.range(..packets).count();
    Ok((packets - bad) as f64 / packets as f64)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PplStats {
    pub count: usize,
    pub mean: f64,
    pub max: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PointSummary {
    pub snr_db: f64,
    pub ebn0_db: f64,
    pub trials: usize,
    pub bits: usize,
    pub bit_errors: usize,
    pub ber: Option<f64>,
    pub throughput: Option<f64>,
    pub mean_p_t: Option<f64>,
    pub mean_zf_p_t: Option<f64>,
    pub fallback_count: usize,
    pub channel_redraws: u64,
    pub ppl: Option<PplStats>,
    pub mean_broken_chain_fraction: Option<f64>,
}

fn mean(values: impl Iterator<Item = f64>) -> Option<f64> {
    let (sum, n) = values.fold((0.0, 0usize), |(s, n), v| (s + v, n + 1));
    (n > 0).then(|| sum / n as f64)
}

impl PointSummary {
    pub fn from_records(snr_db: f64, ebn0_db: f64, records: &[&TrialRecord], packet_bits: usize) -> Self {
        let ppls: Vec<f64> = records.iter().filter_map(|r| r.ppl).collect();
        Self {
            snr_db,
            ebn0_db,
            trials: records.len(),
            bits: records.iter().map(|r| r.bits).sum(),
            bit_errors: records.iter().map(|r| r.bit_errors).sum(),
            ber: ber(records.iter().copied()).ok(),
            throughput: throughput(records.iter().copied(), packet_bits).ok(),
            mean_p_t: mean(records.iter().map(|r| r.p_t)),
            mean_zf_p_t: mean(records.iter().map(|r| r.zf_p_t)),
            fallback_count: records.iter().filter(|r| r.fallback_used).count(),
            channel_redraws: records.iter().map(|r| r.redraws as u64).sum(),
            ppl: (!ppls.is_empty()).then(|| PplStats {
                count: ppls.len(),
                mean: ppls.iter().sum::<f64>() / ppls.len() as f64,
                max: ppls.iter().cloned().fold(0.0, f64::max),
            }),
            mean_broken_chain_fraction: mean(records.iter().filter_map(|r| r.broken_chain_fraction)),
        }
    }
}
