//! Batch front door: one command per invocation, one JSON report out.

pub mod config;

use std::path::PathBuf;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

pub use config::{parse_overrides, read_toml, SessionConfig, COMMANDS};

use crate::adelic::{
    closure_member, discreteness_certificate, omega1_linear_places, product_formula_snap, quotient_iso_check, ClosureVerdict,
};
use crate::drinfeld::{division_points, k_rational_torsion, torsion_annihilator, DivisionOptions};
use crate::error::{Error, Result};
use crate::experiments::{
    generic_char_experiment, uniform_dml_reduce, uniformity_probe, zero_dim_intersection, ExperimentBounds, MPoly, SearchBox,
    VarietySpec,
};
use crate::local::{eval_local, hensel_solve, LocalElem};
use crate::module::{divisible_hull, is_full, point_text, HullBounds, PhiModule};
use crate::places::{check_product_formula, Place};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Parser, Debug)]
#[command(name = "adelic", version, about = "Exact Drinfeld-module and adelic-closure computations")]
pub struct Cli {
    #[command(subcommand)]
    pub cmd: Cmd,
}

#[derive(Subcommand, Debug)]
pub enum Cmd {
    /// Run one command; arguments are `key=value` pairs.
    Run {
        /// Command name followed by key=value arguments.
        args: Vec<String>,
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        threads: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
    },
}

/// A finished command: the report and the process exit status.
#[derive(Clone, Debug, PartialEq)]
pub struct Outcome {
    pub report: Value,
    pub exit: i32,
}

impl Outcome {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.report).expect("report serializes");
        s.push('\n');
        s
    }
}

/// Merges the config file, positional arguments and flags.
pub fn build_config(args: &[String], config_text: Option<&str>, seed: Option<u64>) -> Result<SessionConfig> {
    let mut values = match config_text {
        Some(t) => read_toml(t)?,
        None => Default::default(),
    };
    let (cmd, rest) = match args.first() {
        Some(a) if !a.contains('=') => (Some(a.clone()), &args[1..]),
        _ => (None, args),
    };
    values.extend(parse_overrides(rest)?);
    if let Some(s) = seed {
        values.insert("seed".into(), s.to_string());
    }
    let command = cmd.or_else(|| values.get("command").cloned()).ok_or_else(|| Error::Config("no command given".into()))?;
    SessionConfig::new(&command, values)
}

fn bounds(cfg: &SessionConfig) -> Result<ExperimentBounds> {
    Ok(ExperimentBounds {
        deg_bound: cfg.usize("deg_bound")?,
        enum_deg: cfg.usize("enum_deg")?,
        places: cfg.usize("places")?,
        cutoff: cfg.i64("cutoff")?,
        prime_bound: cfg.usize("prime_bound")?,
        search_box: SearchBox { theta_deg: cfg.usize("box_theta")?, t_deg: cfg.usize("box_t")? },
    })
}

fn hull_bounds(cfg: &SessionConfig) -> Result<HullBounds> {
    Ok(HullBounds {
        prime_bound: cfg.usize("prime_bound")?,
        deg_bound: cfg.usize("deg_bound")?,
        max_rounds: cfg.usize("max_rounds")?,
        division: division_opts(cfg)?,
    })
}

fn division_opts(cfg: &SessionConfig) -> Result<DivisionOptions> {
    Ok(DivisionOptions { cap: cfg.usize("division_cap")?, ..Default::default() })
}

fn module(cfg: &SessionConfig) -> Result<PhiModule> {
    let gamma = PhiModule::new(cfg.drinfeld()?, cfg.usize("g")?, cfg.gens()?);
    if cfg.bool("hull")? {
        return Ok(divisible_hull(&gamma, &hull_bounds(cfg)?).hull);
    }
    Ok(gamma)
}

fn places_for(cfg: &SessionConfig, gamma: &PhiModule) -> Result<Vec<Place>> {
    let t = cfg.tracked()?;
    if t.is_empty() {
        omega1_linear_places(gamma, cfg.usize("places")?)
    } else {
        Ok(t)
    }
}

fn variety(cfg: &SessionConfig) -> Result<VarietySpec> {
    let g = cfg.usize("g")?;
    match cfg.get("poly") {
        Some(s) => VarietySpec::hypersurface(MPoly::parse(s, cfg.p()?, g)?, g),
        None => VarietySpec::zero_dim(cfg.points("points")?, g),
    }
}

fn to_value<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("report serializes")
}

/// Runs the command and returns its result body and exit status.
fn dispatch(cfg: &SessionConfig) -> Result<(Value, i32)> {
    let phi = cfg.drinfeld()?;
    let p = cfg.p()?;
    Ok(match cfg.command.as_str() {
        "product-formula" => (to_value(&check_product_formula(&cfg.elem("x")?)?), 0),
        "compose" => {
            let mut f = phi.phi_action(&cfg.rpoly("a")?);
            if cfg.get("b").is_some() {
                f = f.compose(&phi.phi_action(&cfg.rpoly("b")?));
            }
            let coeffs: Vec<String> = f.coeffs().iter().map(|c| c.to_text()).collect();
            (json!({ "phi_a": f.to_poly_text(), "coefficients": coeffs }), 0)
        }
        "torsion" => match cfg.get("x") {
            Some(_) => (to_value(&torsion_annihilator(&phi, &cfg.elem("x")?, cfg.usize("deg_bound")?)), 0),
            None => {
                let a = if cfg.get("a").is_some() { cfg.rpoly("a")? } else { crate::base::RPoly::t(p) };
                let (pts, complete) = k_rational_torsion(&phi, &a, &division_opts(cfg)?);
                let pts: Vec<String> = pts.iter().map(|x| x.to_text()).collect();
                (json!({ "a": a, "points": pts, "complete": complete }), 0)
            }
        },
        "divide" => (to_value(&division_points(&phi, &cfg.rpoly("a")?, &cfg.elem("y")?, &division_opts(cfg)?)), 0),
        "module-present" => {
            let gamma = module(cfg)?;
            let tors: Vec<String> = gamma.torsion_submodule().iter().map(|x| point_text(x)).collect();
            (json!({ "generators": gamma.gens_text(), "presentation": gamma.presentation(), "torsion": tors }), 0)
        }
        "module-member" => {
            let gamma = module(cfg)?;
            (to_value(&gamma.member(&cfg.point("y")?, cfg.usize("deg_bound")?)), 0)
        }
        "module-quotient" => {
            let gamma = module(cfg)?;
            let q = gamma.quotient(&cfg.rpoly("a")?);
            let reps: Vec<String> = q.representatives.iter().map(|x| point_text(x)).collect();
            let distinct = gamma.reps_pairwise_distinct(&q);
            (json!({ "order": q.order(p).to_string(), "structure": q, "representatives": reps, "pairwise_distinct": distinct }), 0)
        }
        "hull" => {
            let gamma = PhiModule::new(phi, cfg.usize("g")?, cfg.gens()?);
            let hb = hull_bounds(cfg)?;
            let rep = divisible_hull(&gamma, &hb);
            let verdict = is_full(&gamma, &hb);
            (json!({ "input_fullness": verdict, "hull": rep }), 0)
        }
        "hensel" => {
            let v = cfg.place("place")?;
            let n = cfg.i64("precision")?;
            let a = cfg.rpoly("a")?;
            let y = LocalElem::embed(&cfg.elem("y")?, &v, n);
            let x = hensel_solve(&phi, &a, &y, n)?;
            let coeffs: Vec<LocalElem> = phi.phi_action(&a).coeffs().iter().map(|c| LocalElem::embed(c, &v, n)).collect();
            let resid = eval_local(&coeffs, &x).sub(&y);
            (
                json!({ "place": v, "solution": x.to_text(), "grid": x.grid(), "residual_valuation_at_least": resid.valuation_or_precision().to_string() }),
                0,
            )
        }
        "discreteness" => {
            let gamma = module(cfg)?;
            let places = match cfg.get("place") {
                Some(_) => vec![cfg.place("place")?],
                None => places_for(cfg, &gamma)?,
            };
            let d = cfg.usize("deg_bound")?;
            let certs = crate::par_map(&places, |v| discreteness_certificate(&gamma, v, d)).into_iter().collect::<Result<Vec<_>>>()?;
            let exit = if certs.iter().all(|c| c.complete) { 0 } else { 2 };
            (to_value(&certs), exit)
        }
        "closure-member" => {
            let gamma = module(cfg)?;
            let places = places_for(cfg, &gamma)?;
            let v = closure_member(&gamma, &cfg.point("y")?, &places, cfg.i64("cutoff")?, cfg.usize("deg_bound")?)?;
            let exit = if matches!(v, ClosureVerdict::Inconclusive { .. }) { 2 } else { 0 };
            (to_value(&v), exit)
        }
        "quotient-iso" => {
            let gamma = module(cfg)?;
            let places = places_for(cfg, &gamma)?;
            let r = quotient_iso_check(&gamma, &cfg.rpoly("a")?, &places, cfg.i64("precision")?, cfg.usize("samples")?, cfg.u64("seed")?)?;
            let exit = if r.injective && r.surjective_on_samples { 0 } else { 2 };
            (to_value(&r), exit)
        }
        "snap" => {
            let seq = cfg.get("seq").unwrap_or("").split(';').map(|s| crate::field::parse_k(s.trim(), p)).collect::<Result<Vec<_>>>()?;
            let c0 = if cfg.get("c0").is_some() { cfg.i64("c0")? } else { 0 };
            (to_value(&product_formula_snap(&seq, &cfg.elem("y0")?, &cfg.tracked()?, c0)?), 0)
        }
        "zero-dim" => {
            let gamma = module(cfg)?;
            let r = zero_dim_intersection(&gamma, &variety(cfg)?, &cfg.tracked()?, &bounds(cfg)?)?;
            let exit = r.verdict.exit_code();
            (to_value(&r), exit)
        }
        "generic" => {
            let gamma = module(cfg)?;
            let r = generic_char_experiment(&gamma, &variety(cfg)?, &bounds(cfg)?)?;
            let exit = r.verdict.exit_code();
            (to_value(&r), exit)
        }
        "uniformity" => {
            let x = variety(cfg)?;
            let tr = cfg.points("translates")?;
            let m = if cfg.get("m").is_some() { cfg.usize("m")? } else { 3 };
            let b = bounds(cfg)?;
            let t = uniformity_probe(phi.phi_t(), &x, &tr, m, &b.search_box)?;
            let exit = if t.certified && t.monotone { 0 } else { 2 };
            (to_value(&t), exit)
        }
        "reduce-dml" => {
            let gamma = module(cfg)?;
            let m = if cfg.get("m").is_some() { cfg.usize("m")? } else { 1 };
            let r = uniform_dml_reduce(&gamma, &variety(cfg)?, m, &bounds(cfg)?)?;
            let exit = r.report.verdict.exit_code();
            (to_value(&r), exit)
        }
        other => return Err(Error::UnknownCommand(other.into())),
    })
}

/// Runs a validated config inside a pool of `threads` workers.
pub fn run(cfg: &SessionConfig, threads: usize) -> Result<Outcome> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads.max(1))
        .build()
        .map_err(|e| Error::Config(format!("thread pool: {e}")))?;
    let (result, exit) = pool.install(|| dispatch(cfg))?;
    let report = json!({
        "schema_version": SCHEMA_VERSION,
        "command": cfg.command,
        "config_hash": cfg.hash(),
        "config": cfg.values(),
        "status": match exit { 0 => "ok", 2 => "bound-inconclusive", 3 => "counterexample-candidate", _ => "error" },
        "result": result,
    });
    Ok(Outcome { report, exit })
}

/// Entry point for the binary; returns the exit status.
pub fn main_with(cli: Cli) -> i32 {
    let Cmd::Run { args, config, out, threads, seed } = cli.cmd;
    let text = match config.as_ref().map(std::fs::read_to_string).transpose() {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: cannot read config: {e}");
            return 1;
        }
    };
    let outcome = build_config(&args, text.as_deref(), seed).and_then(|cfg| run(&cfg, threads.unwrap_or(1)));
    match outcome {
        Ok(o) => {
            let body = o.to_json();
            match out {
                Some(path) => {
                    if let Err(e) = std::fs::write(&path, body) {
                        eprintln!("error: cannot write {}: {e}", path.display());
                        return 1;
                    }
                }
                None => print!("{body}"),
            }
            o.exit
        }
        Err(e) => {
            eprintln!("error: {e}");
            1
        }
    }
}
