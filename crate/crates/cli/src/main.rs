use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};

use teqsci::model::{ppp_polyene, PppParameters};
use teqsci::pipeline::{self, artifacts, ActiveSpaceConfig, BaselineKind, GateBudget, RunConfig, Stage};

#[derive(Parser)]
#[command(name = "teqsci", version, about = "Time-evolved QSCI with ONIOM energy reports")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the workflow and write artifacts to --out.
    Run {
        #[command(flatten)]
        config: ConfigArgs,
        #[arg(long, default_value = "run")]
        out: PathBuf,
        /// Resume from this stage using artifacts already in --out.
        #[arg(long, value_name = "STAGE")]
        from: Option<Stage>,
    },
    /// Check a configuration and list every problem found.
    Validate {
        #[command(flatten)]
        config: ConfigArgs,
    },
    /// Regenerate reports from an existing run directory.
    Report {
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        oniom: Option<PathBuf>,
        #[arg(long, value_name = "BOOL")]
        oracle: Option<bool>,
    },
    /// Write the FCIDUMP of a Pariser–Parr–Pople polyene chain.
    PppModel {
        #[arg(long, default_value_t = 8)]
        sites: usize,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Args)]
struct ConfigArgs {
    /// TOML run configuration; flags below override its entries.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    fcidump: Option<PathBuf>,
    /// Full active space as `electrons,orbitals` (centered window).
    #[arg(long, value_name = "NE,NO")]
    full: Option<String>,
    /// Initial active space as `electrons,orbitals` (centered window).
    #[arg(long, value_name = "NE,NO")]
    initial: Option<String>,
    #[arg(long, value_delimiter = ',')]
    dt_grid: Option<Vec<f64>>,
    #[arg(long)]
    shots_per_pair: Option<u64>,
    #[arg(long)]
    trotter_steps: Option<usize>,
    /// Two-qubit gates per Trotter step, or `unlimited`.
    #[arg(long)]
    gate_budget: Option<GateBudget>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    roots: Option<usize>,
    /// Spin labels of the seeding states, e.g. `S0,S1,T0`.
    #[arg(long, value_delimiter = ',')]
    states: Option<Vec<String>>,
    /// `initial-sector` or `hartree-fock`.
    #[arg(long)]
    baseline: Option<String>,
    #[arg(long, value_name = "BOOL")]
    oracle: Option<bool>,
    #[arg(long)]
    dump_hamiltonian: bool,
    /// ONIOM sidecar JSON with low-level layer energies.
    #[arg(long)]
    oniom: Option<PathBuf>,
}

fn parse_space(s: &str) -> Result<ActiveSpaceConfig> {
    let (e, o) = s.split_once(',').with_context(|| format!("expected NE,NO, got {s:?}"))?;
    Ok(ActiveSpaceConfig::centered(e.trim().parse()?, o.trim().parse()?))
}

impl ConfigArgs {
    fn build(&self) -> Result<RunConfig> {
        let mut cfg = match &self.config {
            Some(path) => RunConfig::load(path).with_context(|| format!("reading {}", path.display()))?,
            None => {
                let (Some(f), Some(full), Some(initial)) = (&self.fcidump, &self.full, &self.initial) else {
                    bail!("give --config, or all of --fcidump, --full and --initial");
                };
                RunConfig::new(f, parse_space(full)?, parse_space(initial)?)
            }
        };
        if let Some(f) = &self.fcidump {
            cfg.fcidump = f.clone();
        }
        if let Some(s) = &self.full {
            cfg.full_active_space = parse_space(s)?;
        }
        if let Some(s) = &self.initial {
            cfg.initial_active_space = parse_space(s)?;
        }
        if let Some(v) = &self.dt_grid {
            cfg.dt_grid = v.clone();
        }
        if let Some(v) = self.shots_per_pair {
            cfg.shots_per_pair = v;
        }
        if let Some(v) = self.trotter_steps {
            cfg.trotter_steps = v;
        }
        if let Some(v) = self.gate_budget {
            cfg.gate_budget = v;
        }
        if let Some(v) = self.seed {
            cfg.seed = v;
        }
        if let Some(v) = self.roots {
            cfg.roots = v;
        }
        if let Some(v) = &self.states {
            cfg.states = v.clone();
        }
        if let Some(b) = &self.baseline {
            cfg.baseline = match b.as_str() {
                "initial-sector" => BaselineKind::InitialSector,
                "hartree-fock" => BaselineKind::HartreeFock,
                other => bail!("unknown baseline {other:?}"),
            };
        }
        if let Some(v) = self.oracle {
            cfg.oracle = v;
        }
        cfg.dump_hamiltonian |= self.dump_hamiltonian;
        if let Some(p) = &self.oniom {
            cfg.oniom_sidecar = Some(p.clone());
        }
        Ok(cfg)
    }
}

fn print_summary(out: &Path, outcome: &pipeline::RunOutcome) {
    println!(
        "{} configurations ({} baseline), results in {}",
        outcome.configurations.len(),
        outcome.baseline.len(),
        out.display()
    );
    print!("{}", outcome.metrics.to_csv());
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}

fn execute(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Run { config, out, from } => {
            let cfg = config.build()?;
            let outcome = pipeline::run_from(&cfg, &out, from.unwrap_or(Stage::Hamiltonian))?;
            print_summary(&out, &outcome);
        }
        Command::Validate { config } => {
            let cfg = config.build()?;
            let problems = pipeline::validate(&cfg);
            if problems.is_empty() {
                println!("ok");
            } else {
                for p in &problems {
                    println!("{p}");
                }
                return Ok(ExitCode::from(2));
            }
        }
        Command::Report { out, oniom, oracle } => {
            let path = out.join(artifacts::CONFIG);
            let mut cfg = RunConfig::load(&path).with_context(|| format!("reading {}", path.display()))?;
            if oniom.is_some() {
                cfg.oniom_sidecar = oniom;
            }
            if let Some(v) = oracle {
                cfg.oracle = v;
            }
            let outcome = pipeline::run_from(&cfg, &out, Stage::Report)?;
            print_summary(&out, &outcome);
        }
        Command::PppModel { sites, out } => {
            if sites < 2 || sites % 2 != 0 {
                bail!("--sites must be an even number of at least 2");
            }
            let table = ppp_polyene(sites, PppParameters::default());
            std::fs::write(&out, teqsci::write_fcidump(&table)).with_context(|| format!("writing {}", out.display()))?;
        }
    }
    Ok(ExitCode::SUCCESS)
}
