use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use lacunary::census::{self, ExperimentConfig, ExperimentKind, Mode};
use lacunary::cyclotomic::remove_cyclotomic_part;
use lacunary::diophant::{find_modulus, find_modulus_unchecked, parameter_schedule, verify_bounds, BoxParameters};
use lacunary::factor::{factor_over_integers, nonreciprocal_part};
use lacunary::homometry::{census_phi_image, uniqueness_report, PhiCensusOptions};
use lacunary::polytope::{build_gh, newton_polytope, sylvester_resultant_z, DEFAULT_RESULTANT_CAP};
use lacunary::{DensePoly, Exec, SupportSet};
use serde_json::json;

#[derive(Parser)]
#[command(name = "lacunary", version, about = "Sparse 0,1-polynomial toolkit")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Factor a polynomial over the integers.
    Factor { poly: String },
    /// Divide out the cyclotomic factors.
    Noncyc { poly: String },
    /// Remove the reciprocal irreducible factors.
    Nonrecip { poly: String },
    /// Difference multisets.
    Homometry {
        #[command(subcommand)]
        cmd: HomCmd,
    },
    /// Box certificate for an exponent set.
    Box(BoxArgs),
    /// Bivariate pair G, H, their Newton polygons and resultant.
    Polytope {
        #[command(flatten)]
        args: BoxArgs,
        #[arg(long, default_value_t = DEFAULT_RESULTANT_CAP)]
        cap: usize,
    },
    /// Run an experiment.
    Census(CensusArgs),
}

#[derive(Subcommand)]
enum HomCmd {
    /// All sets with the same difference multiset.
    Solve { set: String },
    /// Count distinct difference multisets for A ⊆ {0..n}, 0 ∈ A.
    Census {
        #[arg(long)]
        n: u32,
        #[arg(long, default_value_t = 1)]
        workers: usize,
        #[arg(long)]
        checkpoint: Option<PathBuf>,
    },
}

#[derive(Args)]
struct BoxArgs {
    /// Exponents, e.g. "0,10,19,31".
    set: String,
    /// Use the schedule for this N.
    #[arg(long = "N")]
    big_n: Option<u64>,
    /// Fixed ε as a fraction, e.g. "1/2".
    #[arg(long)]
    eps: Option<String>,
    /// Skip the n_k ≥ V requirement.
    #[arg(long)]
    unchecked: bool,
}

#[derive(Args)]
struct CensusArgs {
    /// theorem2, trinomial, nonreciprocal, conjecture1, dimitrov, box-suite, polytope-suite
    kind: Option<String>,
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    k: Option<usize>,
    #[arg(long = "N")]
    big_n: Option<u64>,
    #[arg(long)]
    n: Option<String>,
    #[arg(long)]
    mode: Option<String>,
    #[arg(long)]
    samples: Option<u64>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    workers: Option<usize>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    checkpoint: Option<PathBuf>,
    #[arg(long)]
    schedule: bool,
}

fn print(v: &impl serde::Serialize) -> Result<()> {
    emit(&serde_json::to_string_pretty(v)?)
}

/// Writes a line to stdout; a closed pipe is not an error.
fn emit(line: &str) -> Result<()> {
    match writeln!(io::stdout().lock(), "{line}") {
        Err(e) if e.kind() != io::ErrorKind::BrokenPipe => Err(e.into()),
        _ => Ok(()),
    }
}

fn poly(s: &str) -> Result<DensePoly> {
    s.parse().with_context(|| format!("cannot parse {s:?}"))
}

fn set(s: &str) -> Result<SupportSet> {
    s.parse().with_context(|| format!("cannot parse {s:?} as an exponent set"))
}

fn box_params(a: &BoxArgs, n: &SupportSet) -> Result<BoxParameters> {
    Ok(match (&a.eps, a.big_n) {
        (Some(e), _) => {
            let (p, q) = e.split_once('/').unwrap_or((e, "1"));
            let eps = lacunary::diophant::rational(p.trim().parse()?, q.trim().parse()?);
            BoxParameters::new(n.k(), eps)?
        }
        (None, Some(big_n)) => parameter_schedule(n.k(), big_n)?,
        (None, None) => bail!("give --eps or --N"),
    })
}

fn certificate(a: &BoxArgs, n: &SupportSet) -> Result<lacunary::diophant::BoxCertificate> {
    let params = box_params(a, n)?;
    Ok(if a.unchecked {
        find_modulus_unchecked(n, &params)?
    } else {
        find_modulus(n, &params)?
    })
}

fn census_config(a: &CensusArgs) -> Result<ExperimentConfig> {
    let mut cfg = match (&a.config, &a.kind) {
        (Some(path), _) => ExperimentConfig::load(path)?,
        (None, Some(kind)) => ExperimentConfig::new(kind.parse()?),
        (None, None) => bail!("give an experiment kind or --config"),
    };
    if let (Some(_), Some(kind)) = (&a.config, &a.kind) {
        cfg.kind = kind.parse()?;
    }
    if let Some(k) = a.k {
        cfg.k = k;
    }
    if let Some(n) = a.big_n {
        cfg.big_n = n;
    }
    if a.n.is_some() {
        cfg.n = a.n.clone();
    }
    if let Some(m) = &a.mode {
        cfg.mode = m.parse()?;
    }
    if a.samples.is_some() {
        cfg.samples = a.samples;
        if a.mode.is_none() {
            cfg.mode = Mode::Sample;
        }
    }
    if a.seed.is_some() {
        cfg.seed = a.seed;
    }
    if let Some(w) = a.workers {
        cfg.workers = w;
    }
    if a.out.is_some() {
        cfg.out = a.out.clone();
    }
    if a.checkpoint.is_some() {
        cfg.checkpoint = a.checkpoint.clone();
    }
    cfg.schedule |= a.schedule;
    if cfg.kind == ExperimentKind::Trinomial {
        cfg.k = 2;
    }
    Ok(cfg)
}

fn run(cli: Cli) -> Result<bool> {
    match cli.cmd {
        Cmd::Factor { poly: p } => print(&factor_over_integers(&poly(&p)?)?)?,
        Cmd::Noncyc { poly: p } => print(&remove_cyclotomic_part(&poly(&p)?)?)?,
        Cmd::Nonrecip { poly: p } => {
            let f = poly(&p)?;
            print(&json!({ "input": f, "nonreciprocal_part": nonreciprocal_part(&f)? }))?
        }
        Cmd::Homometry { cmd } => match cmd {
            HomCmd::Solve { set: s } => print(&uniqueness_report(&set(&s)?))?,
            HomCmd::Census { n, workers, checkpoint } => {
                let opts = PhiCensusOptions {
                    exec: Exec::new(workers),
                    checkpoint,
                    ..Default::default()
                };
                let c = census_phi_image(n, &opts)?;
                print(&json!({
                    "n": c.n,
                    "distinct": c.distinct,
                    "symmetric": c.symmetric,
                    "ratio": c.ratio(),
                    "pairing_bound": c.pairing_bound(),
                    "exceptional_classes": c.exceptional_classes,
                }))?
            }
        },
        Cmd::Box(a) => {
            let n = set(&a.set)?;
            let cert = certificate(&a, &n)?;
            let bounds = a.big_n.map(|big_n| verify_bounds(&cert, n.k(), big_n));
            print(&json!({ "certificate": cert, "bounds": bounds }))?
        }
        Cmd::Polytope { args, cap } => {
            let n = set(&args.set)?;
            let cert = certificate(&args, &n)?;
            let pair = build_gh(&n, &cert)?;
            let resultant = match sylvester_resultant_z(&pair.g, &pair.h, cap) {
                Ok(r) => json!(r),
                Err(e) => json!(e.to_string()),
            };
            print(&json!({
                "d": pair.d,
                "a": pair.a,
                "G": pair.g.to_string(),
                "H": pair.h.to_string(),
                "newton_G": newton_polytope(&pair.g)?,
                "newton_H": newton_polytope(&pair.h)?,
                "reflection_offset": pair.offset,
                "resultant_z": resultant,
            }))?
        }
        Cmd::Census(a) => {
            let cfg = census_config(&a)?;
            let reports = census::run(&cfg)?;
            for r in &reports {
                emit(&r.to_json_line())?;
            }
            if let Some(out) = &cfg.out {
                census::write_reports(out, &reports)?;
            }
            let failures: u64 = reports
                .iter()
                .map(|r| r.values.get("failures").and_then(|v| v.as_u64()).unwrap_or(0) + r.count("fail"))
                .sum();
            return Ok(failures == 0);
        }
    }
    Ok(true)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
