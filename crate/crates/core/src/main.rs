use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand};

use uav_aadr::cli::config::PRESET_NAMES;
use uav_aadr::cli::sweep::{default_blocklengths, default_epsilons};
use uav_aadr::cli::{
    packet_size, report_dmax, sweep_blocklength, sweep_epsilon, verify_lemmas, RunConfig,
    OUT_DIR_ENV,
};
use uav_aadr::fbl_rate::FblConfig;
use uav_aadr::quadrature::aadr_gcq;

#[derive(Parser)]
#[command(
    name = "uav-aadr",
    version,
    about = "Average achievable data rate of short-packet UAV control links"
)]
struct Cli {
    #[command(flatten)]
    common: Common,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Built-in preset: dense_urban or suburban
    #[arg(long, global = true, conflicts_with = "config")]
    scenario: Option<String>,

    /// TOML configuration file
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    /// Monte Carlo seed
    #[arg(long, global = true)]
    seed: Option<u64>,

    /// Monte Carlo sample count
    #[arg(long, global = true)]
    samples: Option<usize>,

    /// Elevation quadrature order
    #[arg(long, global = true)]
    n1: Option<usize>,

    /// Distance quadrature order
    #[arg(long, global = true)]
    n2: Option<usize>,

    /// Output file (CSV for sweeps, JSON for verify)
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Sweep the blocklength at the configured epsilon
    SweepM {
        /// Comma-separated blocklengths (default 100,200,...,1000)
        #[arg(long, value_delimiter = ',')]
        m_values: Vec<u64>,
    },
    /// Sweep the decoding error probability at the configured blocklength
    SweepEps {
        /// Comma-separated error probabilities (default 1e-12,...,1e-3)
        #[arg(long, value_delimiter = ',')]
        eps_values: Vec<f64>,
    },
    /// Report the largest radius for which the lower bound is valid
    Dmax,
    /// Packet size L = B * T_max * R for a latency budget
    PacketSize {
        /// Bandwidth in Hz (defaults to the configured link bandwidth)
        #[arg(long)]
        bandwidth: Option<f64>,
        /// Latency budget in seconds
        #[arg(long)]
        t_max: f64,
        /// Rate in bits per channel use; computed by quadrature when omitted
        #[arg(long)]
        aadr: Option<f64>,
    },
    /// Run the numerical lemma checks and print a JSON report
    Verify,
}

impl Common {
    fn load(&self, fallback: &str) -> Result<RunConfig> {
        let mut cfg = match (&self.config, &self.scenario) {
            (Some(path), _) => {
                RunConfig::load(path).with_context(|| format!("loading {}", path.display()))?
            }
            (None, Some(name)) => RunConfig::preset(name)?,
            (None, None) => RunConfig::preset(fallback)?,
        };
        self.apply(&mut cfg);
        cfg.validate()?;
        Ok(cfg)
    }

    fn apply(&self, cfg: &mut RunConfig) {
        let est = &mut cfg.estimators;
        if let Some(seed) = self.seed {
            est.seed = seed;
        }
        if let Some(n) = self.samples {
            est.n_samples = n;
        }
        if let Some(n) = self.n1 {
            est.n_theta = n;
        }
        if let Some(n) = self.n2 {
            est.n_dist = n;
        }
        if self.out.is_some() {
            cfg.output = self.out.clone();
        }
    }
}

fn output_path(path: Option<&Path>) -> Option<PathBuf> {
    let path = path?;
    match std::env::var_os(OUT_DIR_ENV) {
        Some(dir) => Some(Path::new(&dir).join(path.file_name()?)),
        None => Some(path.to_path_buf()),
    }
}

fn write_output(path: Option<&Path>, contents: &str) -> Result<bool> {
    match output_path(path) {
        Some(p) => {
            if let Some(parent) = p.parent().filter(|d| !d.as_os_str().is_empty()) {
                fs::create_dir_all(parent)?;
            }
            fs::write(&p, contents).with_context(|| format!("writing {}", p.display()))?;
            Ok(true)
        }
        None => {
            print!("{contents}");
            Ok(false)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    let common = &cli.common;
    match cli.command {
        Command::SweepM { m_values } => {
            let cfg = common.load("dense_urban")?;
            let m = if m_values.is_empty() {
                default_blocklengths()
            } else {
                m_values
            };
            let table = sweep_blocklength(&cfg, &m)?;
            if write_output(cfg.output.as_deref(), &table.to_csv())? {
                print!("{}", table.summary());
            } else {
                eprint!("{}", table.summary());
            }
        }
        Command::SweepEps { eps_values } => {
            let cfg = common.load("dense_urban")?;
            let eps = if eps_values.is_empty() {
                default_epsilons()
            } else {
                eps_values
            };
            let table = sweep_epsilon(&cfg, &eps)?;
            if write_output(cfg.output.as_deref(), &table.to_csv())? {
                print!("{}", table.summary());
            } else {
                eprint!("{}", table.summary());
            }
        }
        Command::Dmax => {
            let configs = if common.config.is_none() && common.scenario.is_none() {
                PRESET_NAMES
                    .iter()
                    .map(|name| common.load(name))
                    .collect::<Result<Vec<_>>>()?
            } else {
                vec![common.load("dense_urban")?]
            };
            let mut ok = true;
            for cfg in &configs {
                let report = report_dmax(cfg)?;
                println!("{}", report.summary());
                ok &= report.satisfied;
            }
            if !ok {
                return Ok(ExitCode::from(2));
            }
        }
        Command::PacketSize {
            bandwidth,
            t_max,
            aadr,
        } => {
            let cfg = common.load("dense_urban")?;
            let b = bandwidth.unwrap_or(cfg.link.bandwidth_hz);
            let rate = match aadr {
                Some(r) => r,
                None => {
                    let m = (b * t_max).round().max(1.0) as u64;
                    let fbl = FblConfig::new(m, cfg.fbl.epsilon)?;
                    let est = &cfg.estimators;
                    aadr_gcq(
                        &cfg.airspace,
                        &cfg.constants()?,
                        &fbl,
                        est.n_theta,
                        est.n_dist,
                    )?
                }
            };
            let p = packet_size(b, t_max, rate)?;
            println!(
                "M = {} channel uses, R = {:.6} bit/use, L = {:.1} bits",
                p.channel_uses, rate, p.bits
            );
        }
        Command::Verify => {
            let report = verify_lemmas()?;
            let json = serde_json::to_string_pretty(&report)? + "\n";
            write_output(common.out.as_deref(), &json)?;
            for c in &report.checks {
                eprintln!(
                    "{:<24} q={:<6} {}",
                    c.property,
                    c.q.map(|q| q.to_string()).unwrap_or_else(|| "-".into()),
                    if c.passed { "pass" } else { "FAIL" }
                );
            }
            if !report.passed {
                return Ok(ExitCode::from(2));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
