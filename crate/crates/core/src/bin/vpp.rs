use std::fs;
use std::io::{self, BufReader, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use vpp_anneal::hardware::{chimera, clique_embed, clique_qubits, parallel_capacity, place_tiles};
use vpp_anneal::harness::{emit_outputs, run_sweep, trial_instance, HarnessError, SimConfig};
use vpp_anneal::preprocess::preprocess;
use vpp_anneal::qubo::{build_qubo, read_qubo, write_qubo};
use vpp_anneal::solver::{anneal::anneal_qubo, brute, SolverKind};

#[derive(Parser)]
#[command(name = "vpp", version, about = "Vector perturbation precoding via QUBO")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a seeded BER/throughput sweep and write trials.csv, summary.json, curve.csv.
    Simulate(SimArgs),
    /// QUBO file utilities.
    Qubo {
        #[command(subcommand)]
        command: QuboCommand,
    },
    /// Solve a QUBO file, or one generated trial instance.
    Solve {
        #[command(flatten)]
        sim: SimArgs,
        /// QUBO file to minimise instead of a generated instance.
        #[arg(long)]
        qubo: Option<PathBuf>,
        #[arg(long, default_value_t = 0)]
        trial: usize,
    },
    /// Write the clique embedding for a problem size.
    Embed {
        /// Number of logical variables; taken from --qubo when absent.
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        qubo: Option<PathBuf>,
        #[arg(long, default_value_t = 16)]
        chimera_grid: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// How many clique tiles of a given size fit on a Chimera grid.
    Capacity {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 16)]
        chimera_grid: usize,
    },
}

#[derive(Subcommand)]
enum QuboCommand {
    /// Build the QUBO of one generated trial instance.
    Dump {
        #[command(flatten)]
        sim: SimArgs,
        #[arg(long, default_value_t = 0)]
        trial: usize,
        /// Apply the configured coefficient preprocessing first.
        #[arg(long)]
        preprocessed: bool,
    },
}

#[derive(Args, Clone)]
struct SimArgs {
    /// TOML configuration file; flags below override its values.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    nt: Option<usize>,
    #[arg(long)]
    nr: Option<usize>,
    #[arg(long = "mod")]
    modulation: Option<String>,
    /// Comma-separated SNR points in dB.
    #[arg(long, value_delimiter = ',')]
    snr: Option<Vec<f64>>,
    #[arg(long)]
    trials: Option<usize>,
    #[arg(long)]
    solver: Option<String>,
    #[arg(long)]
    t_bits: Option<u32>,
    #[arg(long, allow_negative_numbers = true)]
    t_high: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    t_low: Option<f64>,
    #[arg(long)]
    no_preprocess: bool,
    /// Run annealing on the embedded hardware model.
    #[arg(long)]
    hw_model: bool,
    #[arg(long)]
    jf_mult: Option<f64>,
    #[arg(long)]
    ice_sigma: Option<f64>,
    #[arg(long)]
    sweeps: Option<usize>,
    #[arg(long)]
    reads: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    /// Output directory for `simulate`, output file otherwise.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Record solver wall time (makes outputs run-dependent).
    #[arg(long)]
    timing: bool,
}

enum Failure {
    Config(String),
    Runtime(String),
}

impl From<HarnessError> for Failure {
    fn from(e: HarnessError) -> Self {
        match e.exit_code() {
            2 => Failure::Config(e.to_string()),
            _ => Failure::Runtime(e.to_string()),
        }
    }
}

fn runtime<E: std::fmt::Display>(e: E) -> Failure {
    Failure::Runtime(e.to_string())
}

fn config_err<E: std::fmt::Display>(e: E) -> Failure {
    Failure::Config(e.to_string())
}

impl SimArgs {
    fn resolve(&self) -> Result<SimConfig, Failure> {
        let mut cfg = match &self.config {
            Some(p) => SimConfig::from_file(p).map_err(config_err)?,
            None => SimConfig::default(),
        };
        if let Some(v) = self.nt {
            cfg.n_t = v;
        }
        if let Some(v) = self.nr {
            cfg.n_r = v;
        }
        if let Some(m) = &self.modulation {
            cfg.modulation = m.parse().map_err(config_err)?;
        }
        if let Some(v) = &self.snr {
            cfg.snr_points = v.clone();
        }
        if let Some(v) = self.trials {
            cfg.trials_per_point = v;
        }
        if let Some(s) = &self.solver {
            cfg.solver.kind = s.parse().map_err(config_err)?;
        }
        if let Some(v) = self.t_bits {
            cfg.t_bits = v;
        }
        if let Some(v) = self.t_high {
            cfg.preprocess.t_high = v;
        }
        if let Some(v) = self.t_low {
            cfg.preprocess.t_low = v;
        }
        if self.no_preprocess {
            cfg.preprocess.enabled = false;
        }
        if self.hw_model {
            cfg.hw_model.enabled = true;
        }
        if let Some(v) = self.jf_mult {
            cfg.hw_model.jf_mult = v;
        }
        if let Some(v) = self.ice_sigma {
            cfg.hw_model.ice_sigma_h = v;
            cfg.hw_model.ice_sigma_j = v;
        }
        if let Some(v) = self.sweeps {
            cfg.solver.sweeps = v;
        }
        if let Some(v) = self.reads {
            cfg.solver.num_reads = v;
        }
        if let Some(v) = self.seed {
            cfg.master_seed = v;
        }
        if self.timing {
            cfg.record_timing = true;
        }
        cfg.validate().map_err(config_err)?;
        Ok(cfg)
    }
}

fn output(path: Option<&Path>) -> Result<Box<dyn Write>, Failure> {
    Ok(match path {
        Some(p) => Box::new(io::BufWriter::new(fs::File::create(p).map_err(runtime)?)),
        None => Box::new(io::stdout().lock()),
    })
}

fn load_qubo(path: &Path) -> Result<vpp_anneal::qubo::QuboProblem, Failure> {
    let file = fs::File::open(path).map_err(runtime)?;
    read_qubo(BufReader::new(file)).map_err(runtime)
}

fn bit_string(bits: &[u8]) -> String {
    bits.iter().map(|b| char::from(b'0' + b)).collect()
}

fn simulate(args: &SimArgs) -> Result<(), Failure> {
    let cfg = args.resolve()?;
    let out = run_sweep(&cfg)?;
    let dir = args.out.clone().unwrap_or_else(|| PathBuf::from("out"));
    emit_outputs(&out.records, &out.summary, &dir)?;
    for p in &out.summary.points {
        println!(
            "snr {:>6.2} dB  ber {}  throughput {}",
            p.snr_db,
            p.ber.map_or("-".into(), |b| format!("{b:.3e}")),
            p.throughput.map_or("-".into(), |t| format!("{t:.4}")),
        );
    }
    Ok(())
}

fn dump(sim: &SimArgs, trial: usize, preprocessed: bool) -> Result<(), Failure> {
    let cfg = sim.resolve()?;
    let (inst, _, _) = trial_instance(&cfg, 0, trial)?;
    let mut q = build_qubo(&inst, cfg.bit_depth());
    if preprocessed {
        if let Some(pc) = cfg.preprocess_config() {
            q = preprocess(&q, &pc).0;
        }
    }
    let mut w = output(sim.out.as_deref())?;
    write_qubo(&q, &mut w).map_err(runtime)?;
    w.flush().map_err(runtime)
}

fn solve(sim: &SimArgs, qubo: Option<&Path>, trial: usize) -> Result<(), Failure> {
    let cfg = sim.resolve()?;
    let mut w = output(sim.out.as_deref())?;
    match qubo {
        Some(path) => {
            let q = load_qubo(path)?;
            let best = match cfg.solver.kind {
                SolverKind::Brute => brute::minimize(&q).map_err(runtime)?,
                SolverKind::Sa => anneal_qubo(&q, &cfg.solver.anneal_params(cfg.master_seed))
                    .into_iter()
                    .min_by(|a, b| a.energy.total_cmp(&b.energy))
                    .ok_or_else(|| Failure::Runtime("no reads".into()))?,
                other => {
                    return Err(Failure::Config(format!(
                        "solver {other} works on channel instances, not QUBO files"
                    )))
                }
            };
            writeln!(w, "bits {}", bit_string(&best.bits)).map_err(runtime)?;
            writeln!(w, "objective {:.12e}", q.objective(&best.bits)).map_err(runtime)?;
        }
        None => {
            let mut one = cfg.clone();
            one.snr_points.truncate(1);
            one.trials_per_point = trial + 1;
            let rec = vpp_anneal::harness::run_trial(&one, 0, trial)?;
            let v: Vec<String> = rec.chosen_v.0.iter().map(|c| format!("{}{:+}i", c.re, c.im)).collect();
            writeln!(w, "v [{}]", v.join(", ")).map_err(runtime)?;
            writeln!(w, "p_t {:.12e}", rec.p_t).map_err(runtime)?;
            writeln!(w, "zf_p_t {:.12e}", rec.zf_p_t).map_err(runtime)?;
            writeln!(w, "fallback {}", rec.fallback_used).map_err(runtime)?;
        }
    }
    w.flush().map_err(runtime)
}

fn embed(n: Option<usize>, qubo: Option<&Path>, grid: usize, out: Option<&Path>) -> Result<(), Failure> {
    let n = match (n, qubo) {
        (Some(n), _) => n,
        (None, Some(p)) => load_qubo(p)?.n_vars(),
        (None, None) => return Err(Failure::Config("embed needs --n or --qubo".into())),
    };
    let g = chimera(grid);
    let emb = clique_embed(n, &g).map_err(runtime)?;
    let mut w = output(out)?;
    emb.write(&mut w).map_err(runtime)?;
    w.flush().map_err(runtime)?;
    eprintln!(
        "{} logical variables on C{}: {} physical qubits, max chain {}",
        n,
        grid,
        emb.physical_qubits(),
        emb.max_chain_length()
    );
    Ok(())
}

fn capacity(n: usize, grid: usize) -> Result<(), Failure> {
    let g = chimera(grid);
    println!("tile_qubits {}", clique_qubits(n));
    println!("capacity {}", parallel_capacity(n, &g));
    println!("packed_tiles {}", place_tiles(n, &g).len());
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Simulate(a) => simulate(a),
        Command::Qubo {
            command: QuboCommand::Dump { sim, trial, preprocessed },
        } => dump(sim, *trial, *preprocessed),
        Command::Solve { sim, qubo, trial } => solve(sim, qubo.as_deref(), *trial),
        Command::Embed { n, qubo, chimera_grid, out } => embed(*n, qubo.as_deref(), *chimera_grid, out.as_deref()),
        Command::Capacity { n, chimera_grid } => capacity(*n, *chimera_grid),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Config(m)) => {
            eprintln!("configuration error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Runtime(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(3)
        }
    }
}
