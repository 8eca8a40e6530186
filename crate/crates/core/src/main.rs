//! Workbench CLI: evaluate expressions, run valuation and order queries,
//! execute axiom checkers and scenario runners.
//!
//! Machine-readable JSON goes to stdout; human-readable summaries and
//! timings go to stderr. The process exits 0 iff every assertion passed.

use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use hahnfield::error::Result;
use hahnfield::eval::{eval_text, parse_poly_text, Value};
use hahnfield::exponent::{ConvexLevel, Exponent};
use hahnfield::order;
use hahnfield::parse::parse_exponent;
use hahnfield::rational::Rat;
use hahnfield::report::{ComplementReport, ScenarioReport};
use hahnfield::sample::SampleGen;
use hahnfield::scenario;
use hahnfield::series::Series;
use hahnfield::valuation;

#[derive(Parser)]
#[command(
    name = "hahnfield",
    about = "Exact arithmetic in truncated generalized power series fields"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate an expression
    Eval {
        #[arg(allow_hyphen_values = true)]
        expr: String,
        #[arg(long)]
        depth: Option<usize>,
        /// Precision horizon for exact divisions and roots (t^..., or an integer)
        #[arg(long)]
        prec: Option<String>,
    },
    /// Valuation of an expression
    Val {
        #[arg(allow_hyphen_values = true)]
        expr: String,
        #[arg(long)]
        depth: Option<usize>,
        #[arg(long)]
        prec: Option<String>,
    },
    /// Coarse value at a convex-subgroup level
    Coarsen {
        #[arg(allow_hyphen_values = true)]
        expr: String,
        #[arg(long)]
        level: usize,
        #[arg(long)]
        depth: Option<usize>,
        #[arg(long)]
        prec: Option<String>,
    },
    /// Residue at a convex-subgroup level
    Res {
        #[arg(allow_hyphen_values = true)]
        expr: String,
        #[arg(long)]
        level: usize,
        #[arg(long)]
        depth: Option<usize>,
        #[arg(long)]
        prec: Option<String>,
    },
    /// Floor into the canonical integer part
    Floor {
        #[arg(allow_hyphen_values = true)]
        expr: String,
        #[arg(long)]
        depth: Option<usize>,
        #[arg(long)]
        prec: Option<String>,
    },
    /// Compare two expressions under the compatible ordering
    Cmp {
        #[arg(allow_hyphen_values = true)]
        left: String,
        #[arg(allow_hyphen_values = true)]
        right: String,
        #[arg(long)]
        depth: Option<usize>,
        #[arg(long)]
        prec: Option<String>,
    },
    /// Run an axiom checker over seeded samples
    Check {
        kind: CheckKind,
        #[arg(long, default_value_t = 200)]
        samples: usize,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, default_value_t = 1)]
        depth: usize,
    },
    /// Run a scenario and report assertions as JSON
    Scenario {
        kind: ScenarioKind,
        #[arg(long)]
        depth: Option<usize>,
        #[arg(long, default_value_t = 6)]
        n_max: usize,
        #[arg(long)]
        samples: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Lift a simple residue root of an integral polynomial
    Hensel {
        #[arg(long, allow_hyphen_values = true)]
        poly: String,
        #[arg(long, allow_hyphen_values = true)]
        residue_root: String,
        #[arg(long)]
        target: String,
        #[arg(long)]
        depth: Option<usize>,
    },
    /// q-th root of a 1-unit
    Root {
        #[arg(long)]
        q: u32,
        #[arg(long, allow_hyphen_values = true)]
        of: String,
        #[arg(long)]
        target: Option<String>,
        #[arg(long)]
        depth: Option<usize>,
    },
    /// Probe the density construction at a coarse level
    Embdsrf {
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        #[arg(long, allow_hyphen_values = true)]
        gamma: String,
        #[arg(long)]
        level: usize,
        #[arg(long)]
        depth: Option<usize>,
        #[arg(long)]
        prec: Option<String>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum CheckKind {
    IntegerPart,
    WeakComplement,
    AdditiveComplement,
}

#[derive(Clone, Copy, ValueEnum)]
enum ScenarioKind {
    PsfIntegerPart,
    ChainCounterexample,
    QuotientField,
    Embdsrf,
}

fn seed_or_env(seed: Option<u64>) -> u64 {
    seed.or_else(|| {
        std::env::var("HAHNFIELD_SEED")
            .ok()
            .and_then(|s| s.parse().ok())
    })
    .unwrap_or(0)
}

fn parse_prec(prec: &Option<String>) -> Result<Option<Exponent>> {
    prec.as_deref().map(parse_exponent).transpose()
}

fn eval_series(expr: &str, depth: Option<usize>, prec: &Option<String>) -> Result<Series> {
    let p = parse_prec(prec)?;
    eval_text(expr, depth, p)?.into_series("argument")
}

fn run(cli: Cli) -> Result<bool> {
    match cli.command {
        Command::Eval { expr, depth, prec } => {
            let v = eval_text(&expr, depth, parse_prec(&prec)?)?;
            println!("{v}");
            Ok(true)
        }
        Command::Val { expr, depth, prec } => {
            let s = eval_series(&expr, depth, &prec)?;
            let v = valuation::val(&s)?;
            println!(
                "{}",
                json!({"input": expr, "level": null, "value": v.to_string(), "residue": null})
            );
            Ok(true)
        }
        Command::Coarsen {
            expr,
            level,
            depth,
            prec,
        } => {
            let s = eval_series(&expr, depth, &prec)?;
            let cv = valuation::coarsen(&s, ConvexLevel(level))?;
            println!(
                "{}",
                json!({"input": expr, "level": level, "value": cv.value.to_string(), "residue": null})
            );
            Ok(true)
        }
        Command::Res {
            expr,
            level,
            depth,
            prec,
        } => {
            let s = eval_series(&expr, depth, &prec)?;
            let r = valuation::residue(&s, ConvexLevel(level))?;
            let cv = valuation::coarsen(&s, ConvexLevel(level))?;
            println!(
                "{}",
                json!({
                    "input": expr,
                    "level": level,
                    "value": cv.value.to_string(),
                    "residue": r.to_string()
                })
            );
            Ok(true)
        }
        Command::Floor { expr, depth, prec } => {
            let s = eval_series(&expr, depth, &prec)?;
            let f = order::floor(&s)?;
            println!("{}", f.to_series());
            Ok(true)
        }
        Command::Cmp {
            left,
            right,
            depth,
            prec,
        } => {
            let a = eval_series(&left, depth, &prec)?;
            let b = eval_series(&right, depth, &prec)?;
            let ord = order::compare(&a, &b)?;
            println!(
                "{}",
                match ord {
                    std::cmp::Ordering::Less => "less",
                    std::cmp::Ordering::Equal => "equal",
                    std::cmp::Ordering::Greater => "greater",
                }
            );
            Ok(true)
        }
        Command::Check {
            kind,
            samples,
            seed,
            depth,
        } => {
            let seed = seed_or_env(seed);
            let report = run_check(kind, samples, seed, depth);
            println!("{}", serde_json::to_string(&report).expect("serializable"));
            eprintln!(
                "check {}: {} ({} samples, {} failures)",
                report.axiom,
                if report.passed() { "PASS" } else { "FAIL" },
                report.sample_count,
                report.failures.len()
            );
            Ok(report.passed())
        }
        Command::Scenario {
            kind,
            depth,
            n_max,
            samples,
            seed,
        } => {
            let seed = seed_or_env(seed);
            let started = Instant::now();
            let report = run_scenario(kind, depth, n_max, samples, seed)?;
            println!("{}", report.to_json());
            eprint!("{}", report.summary());
            eprintln!("duration: {:?}", started.elapsed());
            Ok(report.passed)
        }
        Command::Hensel {
            poly,
            residue_root,
            target,
            depth,
        } => {
            let target = parse_exponent(&target)?;
            let f = parse_poly_text(&poly, depth.or(Some(target.depth())), None)?;
            let zeta: Rat = match eval_text(&residue_root, Some(f.depth()), None)? {
                Value::Series(s) => valuation::residue_constant(&s)?,
                Value::Val(_) => {
                    return Err(hahnfield::Error::Type("residue root must be rational".into()))
                }
            };
            let lift = hahnfield::hensel::hensel_lift(&f, &zeta, &target)?;
            println!(
                "{}",
                json!({
                    "root": lift.root.to_string(),
                    "iterations": lift.iterations,
                    "achieved": lift.achieved.to_string()
                })
            );
            Ok(true)
        }
        Command::Root {
            q,
            of,
            target,
            depth,
        } => {
            let u = eval_series(&of, depth, &None)?;
            let target = match target {
                Some(t) => parse_exponent(&t)?,
                None => hahnfield::eval::default_prec(u.depth()),
            };
            let r = hahnfield::hensel::unit_root(&u, q, &target)?;
            println!("{}", json!({"root": r.to_string()}));
            Ok(true)
        }
        Command::Embdsrf {
            a,
            gamma,
            level,
            depth,
            prec,
        } => {
            let s = eval_series(&a, depth, &prec)?;
            let gamma = parse_exponent(&gamma)?;
            let b = order::embdsrf_density(&s, &gamma, ConvexLevel(level))?;
            let gap = valuation::density_gap(&s, &b)
                .map(|v| v.to_string())
                .unwrap_or_else(|_| format!(">={gamma}"));
            println!(
                "{}",
                json!({"a": a, "gamma": gamma.to_string(), "b": b.to_string(), "gap": gap})
            );
            Ok(true)
        }
    }
}

fn run_check(kind: CheckKind, samples: usize, seed: u64, depth: usize) -> ComplementReport {
    let mut gen = SampleGen::new(seed);
    match kind {
        CheckKind::IntegerPart => {
            let field = floorable_samples(&mut gen, samples, depth);
            order::check_integer_part(&field)
        }
        CheckKind::WeakComplement => {
            let ring: Vec<Series> = (0..samples).map(|_| gen.integer_part_element(depth)).collect();
            let field = floorable_samples(&mut gen, samples, depth);
            order::check_weak_complement(&ring, &field)
        }
        CheckKind::AdditiveComplement => {
            let ring: Vec<Series> = (0..samples).map(|_| gen.neg_ring_element(depth)).collect();
            let field = neg_part_samples(&mut gen, samples, depth);
            order::check_additive_complement(&ring, &field)
        }
    }
}

fn floorable_samples(gen: &mut SampleGen, samples: usize, depth: usize) -> Vec<Series> {
    let mut out = Vec::with_capacity(samples);
    let mut attempts = 0;
    while out.len() < samples && attempts < samples * 20 {
        attempts += 1;
        let s = gen.series(depth, 10);
        if order::floor(&s).is_ok() {
            out.push(s);
        }
    }
    out
}

fn neg_part_samples(gen: &mut SampleGen, samples: usize, depth: usize) -> Vec<Series> {
    let mut out = Vec::with_capacity(samples);
    let mut attempts = 0;
    while out.len() < samples && attempts < samples * 20 {
        attempts += 1;
        let s = gen.series(depth, 10);
        if order::neg_part(&s).is_ok() {
            out.push(s);
        }
    }
    out
}

fn run_scenario(
    kind: ScenarioKind,
    depth: Option<usize>,
    n_max: usize,
    samples: Option<usize>,
    seed: u64,
) -> Result<ScenarioReport> {
    // clamp to the scenario preconditions: n_max >= 1, depth >= 2
    let depth2 = depth.unwrap_or(2).max(2);
    match kind {
        ScenarioKind::PsfIntegerPart => Ok(scenario::psf_integer_part(
            n_max.max(1),
            samples.unwrap_or(200),
            seed,
        )),
        ScenarioKind::ChainCounterexample => {
            scenario::chain_counterexample(depth.unwrap_or(3).max(2), samples.unwrap_or(50), seed)
        }
        ScenarioKind::QuotientField => {
            scenario::quotient_field(depth2, samples.unwrap_or(100), seed)
        }
        ScenarioKind::Embdsrf => scenario::embdsrf(depth2, samples.unwrap_or(100), seed),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
