use std::fs;
use std::path::Path;

use super::{HarnessError, Summary, TrialRecord};

pub const TRIALS_HEADER: [&str; 9] = [
    "snr_db",
    "trial",
    "p_t",
    "zf_p_t",
    "bit_errors",
    "bits",
    "fallback",
    "wall_time_us",
    "broken_chain_frac",
];

pub const CURVE_HEADER: [&str; 5] = ["snr_db", "solver", "ber", "throughput", "mean_p_t"];

fn opt(v: Option<f64>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

pub fn write_trials_csv<W: std::io::Write>(records: &[TrialRecord], out: W) -> Result<(), HarnessError> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(TRIALS_HEADER)?;
    for r in records {
        w.write_record([
            r.snr_db.to_string(),
            r.trial.to_string(),
            r.p_t.to_string(),
            r.zf_p_t.to_string(),
            r.bit_errors.to_string(),
            r.bits.to_string(),
            u8::from(r.fallback_used).to_string(),
            r.wall_time_us.to_string(),
            opt(r.broken_chain_fraction),
        ])?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_curve_csv<W: std::io::Write>(summary: &Summary, out: W) -> Result<(), HarnessError> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(CURVE_HEADER)?;
    for p in &summary.points {
        w.write_record([
            p.snr_db.to_string(),
            summary.solver.clone(),
            opt(p.ber),
            opt(p.throughput),
            opt(p.mean_p_t),
        ])?;
    }
    w.flush()?;
    Ok(())
}

/// Writes `trials.csv`, `summary.json` and `curve.csv` into `out_dir`.
pub fn emit_outputs(records: &[TrialRecord], summary: &Summary, out_dir: &Path) -> Result<(), HarnessError> {
    fs::create_dir_all(out_dir)?;
    write_trials_csv(records, fs::File::create(out_dir.join("trials.csv"))?)?;
    let mut json = serde_json::to_string_pretty(summary)?;
    json.push('\n');
    fs::write(out_dir.join("summary.json"), json)?;
    write_curve_csv(summary, fs::File::create(out_dir.join("curve.csv"))?)?;
    Ok(())
}
