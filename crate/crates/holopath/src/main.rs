use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Result;
use clap::{Parser, Subcommand, ValueEnum};
use holopath::config::{parse_angle, ConfigError, NamedGate, RunConfig};
use holopath::figures::{self, FigureId, FigureOptions, UnknownFigure};
use holopath::io::{self, fmt_f64, Table};
use holopath::verify::Verifier;
use holopath::ThreadPool;
use holopath_core::pathsynth::{synthesize, EnvelopeKind, PathSpec};
use serde_json::json;

#[derive(Parser)]
#[command(name = "holopath", version, about = "Path-optimized nonadiabatic holonomic gates: pulses, simulations, figure data")]
struct Cli {
    /// Worker threads for sweeps (default: all cores).
    #[arg(long, global = true)]
    workers: Option<usize>,
    /// TOML run configuration; built-in defaults otherwise.
    #[arg(short = 'f', long = "config-file", global = true)]
    config_file: Option<PathBuf>,
    /// Output root (overrides `output` in the config).
    #[arg(short, long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Envelope {
    Sin2,
    Flat,
}

#[derive(Clone, Copy, ValueEnum)]
enum AuxConfig {
    Cavity,
    #[value(name = "3t", alias = "3T")]
    ThreeTransmon,
}

#[derive(Subcommand)]
enum Command {
    /// Synthesize a three-segment pulse schedule.
    Synth {
        /// Named gate, e.g. `rx:0.5pi`, `ry:pi/4`, `rz:0`, `cp:0.25pi`.
        #[arg(long)]
        gate: String,
        /// Path polar angle, e.g. `0.25pi`.
        #[arg(long)]
        chi: String,
        #[arg(long, default_value = "0")]
        xi1: String,
        /// Peak Rabi frequency in rad/µs.
        #[arg(long, default_value_t = 1.0)]
        omega_max: f64,
        #[arg(long, value_enum, default_value_t = Envelope::Sin2)]
        envelope: Envelope,
        /// Points in the sampled pulse table.
        #[arg(long, default_value_t = 401)]
        samples: usize,
    },
    /// Compute the data behind one figure panel.
    Figure {
        /// 2a–2h, 3, 4a or 4b.
        which: String,
        /// Auxiliary element for panel 3; `3t` adds the transmon overlay.
        #[arg(long = "config", value_enum)]
        aux: Option<AuxConfig>,
        /// Record wall-clock runtime in meta.json.
        #[arg(long)]
        timing: bool,
    },
    /// Run the acceptance criteria.
    Verify {
        /// Criterion ids or numbers, comma separated.
        #[arg(long, value_delimiter = ',')]
        only: Option<Vec<String>>,
        /// Write the JSON report here as well as to stdout.
        #[arg(long)]
        report: Option<PathBuf>,
        #[arg(long, hide = true)]
        tamper_eta: bool,
    },
    /// Print the default configuration as TOML.
    Config,
}

fn load_config(cli: &Cli) -> Result<RunConfig, ConfigError> {
    let mut cfg = match &cli.config_file {
        Some(p) => RunConfig::load(p)?,
        None => RunConfig::default(),
    };
    if let Some(o) = &cli.out {
        cfg.output = o.clone();
    }
    Ok(cfg)
}

fn synth(cfg: &RunConfig, gate: &str, chi: &str, xi1: &str, omega_max: f64, env: Envelope, samples: usize) -> Result<()> {
    let gate = NamedGate::parse(gate).map_err(|m| ConfigError::new("--gate", m))?.spec();
    let chi = parse_angle(chi).map_err(|m| ConfigError::new("--chi", m))?;
    let xi1 = parse_angle(xi1).map_err(|m| ConfigError::new("--xi1", m))?;
    if !(omega_max > 0.0 && omega_max.is_finite()) {
        return Err(ConfigError::new("--omega-max", "must be positive").into());
    }
    if samples < 2 {
        return Err(ConfigError::new("--samples", "need at least 2").into());
    }
    let path = PathSpec::new(chi).with_xi1(xi1);
    path.validate().map_err(|e| ConfigError::new("--chi", e.to_string()))?;
    let kind = match env {
        Envelope::Sin2 => EnvelopeKind::Sin2,
        Envelope::Flat => EnvelopeKind::Flat,
    };
    let s = synthesize(&gate, &path, omega_max, kind)?;
    let dir = cfg.output.join("synth");
    let summary = json!({
        "schedule": s,
        "pulse_area": s.pulse_area(),
        "pulse_area_over_pi": s.pulse_area() / std::f64::consts::PI,
        "segment_areas": s.segment_areas(),
    });
    io::write_json(&dir.join("schedule.json"), &summary)?;
    let mut t = Table::new(["t [us]", "omega [rad/us]", "phase0 [rad]", "phase1 [rad]"].iter().map(|s| s.to_string()).collect());
    for p in s.sample(samples - 1) {
        t.push(vec![fmt_f64(p.t), fmt_f64(p.omega), fmt_f64(p.phase0), fmt_f64(p.phase1)]);
    }
    io::write_text(&dir.join("pulse.csv"), &t.to_csv()?)?;
    println!(
        "tau = {:.6} us, tau1 = {:.6}, tau2 = {:.6}, S = {:.6} rad (S/pi = {:.6}) -> {}",
        s.tau,
        s.tau1,
        s.tau2,
        s.pulse_area(),
        s.pulse_area() / std::f64::consts::PI,
        dir.display()
    );
    Ok(())
}

fn run(cli: Cli) -> Result<ExitCode> {
    let cfg = load_config(&cli)?;
    let pool = cli.workers.map_or_else(ThreadPool::available, ThreadPool::new);
    match cli.command {
        Command::Synth { ref gate, ref chi, ref xi1, omega_max, envelope, samples } => {
            synth(&cfg, gate, chi, xi1, omega_max, envelope, samples)?;
        }
        Command::Figure { ref which, aux, timing } => {
            let id: FigureId = which.parse()?;
            let opts = FigureOptions { overlay_3t: matches!(aux, Some(AuxConfig::ThreeTransmon)), timing };
            let dir = figures::run(id, &cfg, &pool, &opts)?;
            println!("figure {id} -> {}", dir.display());
        }
        Command::Verify { ref only, ref report, tamper_eta } => {
            let mut v = Verifier::new(cfg, &pool);
            if tamper_eta {
                v.faults.eta = Some(|chi: f64| -(1.0 + 1.1 / chi.cos()));
            }
            let rep = v.run(only.as_deref())?;
            for c in &rep.criteria {
                eprintln!("{}", c.line());
            }
            let text = serde_json::to_string_pretty(&rep)?;
            println!("{text}");
            if let Some(p) = report {
                io::write_text(p, &(text + "\n"))?;
            }
            if !rep.passed {
                return Ok(ExitCode::from(1));
            }
        }
        Command::Config => print!("{}", cfg.to_toml()),
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            if e.is::<ConfigError>() || e.is::<UnknownFigure>() {
                ExitCode::from(2)
            } else {
                ExitCode::from(1)
            }
        }
    }
}
