use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use prp3::kinematics::{solve_legs, PlatformState};
use prp3::sim::config::parse_scenario;
use prp3::sim::{bench, run_checks, run_sim, SimConfig};
use prp3::{Error, Result};

#[derive(Parser)]
#[command(name = "prp3", version, about = "3-PRP planar robot kinematics and inverse dynamics")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args)]
struct Common {
    /// JSON configuration file
    #[arg(long)]
    config: Option<PathBuf>,
    /// `vertical` or `rotation`
    #[arg(long)]
    scenario: Option<String>,
    /// Sample step, s
    #[arg(long, allow_hyphen_values = true)]
    dt: Option<f64>,
    /// CSV output path
    #[arg(long)]
    out: Option<PathBuf>,
    /// Write SVG plots under this directory
    #[arg(long)]
    plots_dir: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run a trajectory and write the time series
    Sim(Common),
    /// Inverse geometry, rates and accelerations at one platform pose
    Ik {
        #[arg(long, allow_hyphen_values = true)]
        x: f64,
        #[arg(long, allow_hyphen_values = true)]
        y: f64,
        #[arg(long, allow_hyphen_values = true, default_value_t = 0.0)]
        phi: f64,
        #[command(flatten)]
        common: Common,
    },
    /// Run the property and oracle checks
    Check(Common),
    /// Time the recursive solve against the Newton–Euler solve
    Bench {
        #[command(flatten)]
        common: Common,
        /// Evaluations per path
        #[arg(long)]
        n: Option<usize>,
    },
}

fn load(c: &Common) -> Result<SimConfig> {
    let mut cfg = match &c.config {
        Some(p) => SimConfig::from_file(p)?,
        None => SimConfig::default(),
    };
    if let Some(s) = &c.scenario {
        let dt = cfg.scenario.sample_dt;
        cfg.scenario = parse_scenario(s)?.with_dt(dt);
    }
    if let Some(dt) = c.dt {
        cfg.scenario.sample_dt = dt;
    }
    if c.out.is_some() {
        cfg.out = c.out.clone();
    }
    if c.plots_dir.is_some() {
        cfg.plots = true;
        cfg.plots_dir = c.plots_dir.clone();
    }
    cfg.validate()?;
    Ok(cfg)
}

fn run(cli: Cli) -> Result<()> {
    match cli.cmd {
        Cmd::Sim(c) => {
            let cfg = load(&c)?;
            let series = run_sim(&cfg)?;
            if cfg.out.is_none() {
                print!("{}", prp3::sim::csv::to_csv_string(&series)?);
            }
            eprintln!("{}: {} samples, max NE residual {:.2e} N", series.scenario, series.samples.len(), series.max_ne_residual());
        }
        Cmd::Ik { x, y, phi, common } => {
            let cfg = load(&common)?;
            let legs = solve_legs(&cfg.params, &PlatformState::at_rest(x, y, phi))?;
            println!("{}", serde_json::to_string_pretty(&legs).map_err(|e| Error::Config(e.to_string()))?);
        }
        Cmd::Check(c) => {
            let cfg = load(&c)?;
            let report = run_checks(&cfg.params, cfg.scenario.sample_dt)?;
            print!("{report}");
            if !report.all_passed() {
                return Err(Error::OracleResidual("one or more checks failed".into()));
            }
        }
        Cmd::Bench { common, n } => {
            let mut cfg = load(&common)?;
            if let Some(n) = n {
                cfg.bench_n = n;
            }
            let report = bench(&cfg)?;
            print!("{report}");
            if let Some(out) = &cfg.out {
                let json = serde_json::to_string_pretty(&report).map_err(|e| Error::Config(e.to_string()))?;
                std::fs::write(out, json).map_err(|e| Error::io(out, e))?;
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            // usage errors are configuration errors; clap's own code 2 means "singular" here
            return if e.use_stderr() { ExitCode::from(4) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
