//! `soliton-lab`: one experiment per invocation, driven by a JSON config.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

mod config;
mod error;
mod experiments;
mod output;

use clap::{Args, Parser, Subcommand};
use config::RunConfig;
use error::{CliError, CliResult};
use experiments::{Context, Plan};
use serde_json::{json, Value};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "soliton-lab", version, about = "Envelope-soliton electron model experiments")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Default)]
struct Common {
    /// JSON config file; flags and --set are applied on top.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Dotted override, relative to params unless top-level (e.g. solver.dt=1e-3).
    #[arg(long = "set", value_name = "PATH=VALUE")]
    set: Vec<String>,
    /// Run directory (default: $SOLITONLAB_OUT/<experiment>-<time>-<seed>, else runs/...).
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Subcommand)]
enum Command {
    /// Waveguide kinematics table at one velocity.
    Kinematics {
        /// Velocity: `0.6c` or metres per second.
        #[arg(long)]
        v: Option<String>,
        #[arg(long)]
        particle: Option<String>,
        #[command(flatten)]
        common: Common,
    },
    /// Dispersion tables and Klein-Gordon frequency checks.
    Dispersion {
        #[command(flatten)]
        common: Common,
    },
    /// Evolve one packet with one solver.
    Evolve {
        /// linear | nls | kg
        #[arg(long)]
        scheme: Option<String>,
        /// e.g. `breather,a=1,v=0`, `gaussian,sigma=1,k0=1,z0=-2`, `plane,k=0.5`
        #[arg(long)]
        packet: Option<String>,
        #[arg(long)]
        t_final: Option<f64>,
        #[arg(long)]
        dt: Option<f64>,
        #[command(flatten)]
        common: Common,
    },
    /// Quantum-potential-cancelled evolution vs the classical trajectory.
    Madelung {
        #[command(flatten)]
        common: Common,
    },
    /// The same sech packet under three evolutions.
    SolitonVsDispersion {
        #[command(flatten)]
        common: Common,
    },
    /// Hidden-phase barrier Monte Carlo.
    Barrier {
        /// Worker threads for the trials (does not change the result).
        #[arg(long)]
        parallel_trials: Option<usize>,
        #[command(flatten)]
        common: Common,
    },
    /// Bohr orbits and the phase-accordance condition.
    Bohr {
        #[command(flatten)]
        common: Common,
    },
    /// Photon zigzag relations.
    Photon {
        #[command(flatten)]
        common: Common,
    },
    /// Check a config without running it.
    Validate {
        config: PathBuf,
        #[arg(long = "set", value_name = "PATH=VALUE")]
        set: Vec<String>,
    },
    /// Run whatever experiment a config names.
    Run {
        #[arg(long)]
        parallel_trials: Option<usize>,
        #[command(flatten)]
        common: Common,
    },
}

fn parse_velocity(raw: &str) -> CliResult<f64> {
    let s = raw.trim();
    let (num, in_c) = match s.strip_suffix('c') {
        Some(n) => (n, true),
        None => (s.strip_suffix("m/s").unwrap_or(s), false),
    };
    let x: f64 = num
        .trim()
        .parse()
        .map_err(|_| CliError::config(format!("--v `{raw}`: expected e.g. 0.6c or 1.8e8")))?;
    Ok(if in_c { x } else { x / soliton_core::constants::electron_constants().c })
}

fn parse_scheme(raw: &str) -> CliResult<&'static str> {
    Ok(match raw.to_ascii_lowercase().replace('-', "_").as_str() {
        "nls" => "nls",
        "linear" | "schrodinger" | "linear_schrodinger" => "linear_schrodinger",
        "kg" | "klein_gordon" => "klein_gordon",
        _ => return Err(CliError::config(format!("unknown scheme `{raw}` (linear, nls, kg)"))),
    })
}

/// `kind,key=value,...` with short aliases.
fn parse_packet(raw: &str) -> CliResult<Value> {
    let mut parts = raw.split(',').map(str::trim);
    let kind = parts.next().unwrap_or_default();
    let (kind, mut obj) = match kind {
        "breather" | "sech" | "sech_breather" => (
            "sech_breather",
            json!({ "amplitude": 1.0, "velocity": 0.0, "center": 0.0 }),
        ),
        "gaussian" => ("gaussian", json!({ "amplitude": 1.0, "sigma": 1.0, "k0": 0.0, "center": 0.0 })),
        "plane" | "plane_wave" => ("plane_wave", json!({ "amplitude": 1.0, "k0": 0.0 })),
        _ => {
            return Err(CliError::config(format!(
                "--packet `{raw}`: kind must be breather, gaussian or plane"
            )))
        }
    };
    for kv in parts {
        let (k, v) = kv
            .split_once('=')
            .ok_or_else(|| CliError::config(format!("--packet `{raw}`: `{kv}` is not key=value")))?;
        let key = match k.trim() {
            "a" => "amplitude",
            "v" => "velocity",
            "z0" => "center",
            "k" => "k0",
            other => other,
        };
        let map = obj.as_object_mut().expect("packet template is an object");
        if !map.contains_key(key) {
            return Err(CliError::config(format!("--packet `{raw}`: `{key}` does not apply to {kind}")));
        }
        let x: f64 = v
            .trim()
            .parse()
            .map_err(|_| CliError::config(format!("--packet `{raw}`: `{v}` is not a number")))?;
        map.insert(key.to_string(), json!(x));
    }
    obj.as_object_mut().expect("object").insert("kind".into(), json!(kind));
    Ok(obj)
}

/// Config document: file (or a blank one), then flag shortcuts, then
/// `--set`, then `--seed`.
fn assemble(experiment: Option<&str>, common: &Common, shortcuts: Vec<(String, Value)>) -> CliResult<RunConfig> {
    let mut doc = match (&common.config, experiment) {
        (Some(path), _) => config::read_document(path)?,
        (None, Some(e)) => config::base_document(e),
        (None, None) => return Err(CliError::config("run needs --config")),
    };
    if let (Some(e), Some(found)) = (experiment, doc.get("experiment").and_then(Value::as_str)) {
        if e != found {
            return Err(CliError::config(format!(
                "config is for experiment `{found}` but the `{e}` subcommand was used"
            )));
        }
    }
    for (path, value) in shortcuts {
        config::apply_override(&mut doc, &path, value)?;
    }
    for raw in &common.set {
        let (path, value) = config::parse_override(raw)?;
        config::apply_override(&mut doc, &path, value)?;
    }
    if let Some(seed) = common.seed {
        config::apply_override(&mut doc, "seed", json!(seed))?;
    }
    config::into_config(doc)
}

/// The config with every default made explicit, and the plan it describes.
fn resolve(cfg: RunConfig) -> CliResult<(RunConfig, Plan)> {
    let plan = Plan::from_config(&cfg)?;
    let effective = RunConfig {
        params: plan.effective_params(),
        ..cfg
    };
    let problems = plan.diagnostics(effective.seed);
    if !problems.is_empty() {
        return Err(CliError::Config(problems));
    }
    Ok((effective, plan))
}

fn run(experiment: Option<&str>, common: &Common, shortcuts: Vec<(String, Value)>, threads: Option<usize>) -> CliResult<()> {
    let (cfg, plan) = resolve(assemble(experiment, common, shortcuts)?)?;
    let started = chrono::Utc::now();
    let dir = common
        .out
        .clone()
        .unwrap_or_else(|| output::default_run_dir(&cfg.experiment, cfg.seed, started));
    let ctx = Context {
        seed: cfg.seed,
        parallel_trials: threads,
    };
    let artifacts = plan.execute(ctx)?;
    let finished = chrono::Utc::now();
    let manifest = output::write_run(&dir, &cfg, &artifacts, started, finished)?;
    print!("{}", artifacts.summary);
    println!("config digest {}", manifest.config_digest);
    println!("wrote {}", dir.display());
    Ok(())
}

fn validate(path: &Path, set: &[String]) -> CliResult<()> {
    let common = Common {
        config: Some(path.to_path_buf()),
        set: set.to_vec(),
        ..Common::default()
    };
    let (cfg, _) = resolve(assemble(None, &common, Vec::new())?)?;
    println!("{}: ok ({}, digest {})", path.display(), cfg.experiment, cfg.digest());
    Ok(())
}

fn dispatch(cli: Cli) -> CliResult<()> {
    match cli.command {
        Command::Kinematics { v, particle, common } => {
            let mut s = Vec::new();
            if let Some(v) = v {
                s.push(("v_over_c".to_string(), json!(parse_velocity(&v)?)));
            }
            if let Some(p) = particle {
                s.push(("particle".to_string(), json!(p)));
            }
            run(Some("kinematics"), &common, s, None)
        }
        Command::Dispersion { common } => run(Some("dispersion"), &common, Vec::new(), None),
        Command::Evolve {
            scheme,
            packet,
            t_final,
            dt,
            common,
        } => {
            let mut s = Vec::new();
            if let Some(x) = scheme {
                s.push(("scheme".to_string(), json!(parse_scheme(&x)?)));
            }
            if let Some(x) = packet {
                s.push(("packet".to_string(), parse_packet(&x)?));
            }
            if let Some(x) = t_final {
                s.push(("solver.t_final".to_string(), json!(x)));
            }
            if let Some(x) = dt {
                s.push(("solver.dt".to_string(), json!(x)));
            }
            run(Some("evolve"), &common, s, None)
        }
        Command::Madelung { common } => run(Some("madelung"), &common, Vec::new(), None),
        Command::SolitonVsDispersion { common } => run(Some("soliton-vs-dispersion"), &common, Vec::new(), None),
        Command::Barrier { parallel_trials, common } => run(Some("barrier"), &common, Vec::new(), parallel_trials),
        Command::Bohr { common } => run(Some("bohr"), &common, Vec::new(), None),
        Command::Photon { common } => run(Some("photon"), &common, Vec::new(), None),
        Command::Validate { config, set } => validate(&config, &set),
        Command::Run { parallel_trials, common } => run(None, &common, Vec::new(), parallel_trials),
    }
}

fn main() -> ExitCode {
    match dispatch(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("{e}");
            e.exit_code()
        }
    }
}
