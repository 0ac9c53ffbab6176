//! Command-line front end.
//!
//! Subcommands: `solve`, `local`, `verify`, `generate`, `sample`. Exit
//! codes: 0 success (and, for solve/verify, a valid certificate), 1 a
//! certificate check failed, 2 input/parse errors, 3 solver errors, 4 bad
//! generator sequences.

use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use nalgebra::DVector;

use crate::builder::{self, CannedExample};
use crate::certify::{self, Certificate};
use crate::convex::TrslInstance;
use crate::error::HcxError;
use crate::format::{self, CandidateFile};
use crate::global::{self, CheckOutcome};
use crate::local::{self, Precheck};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_SOLVER: i32 = 3;
pub const EXIT_BAD_SEQUENCE: i32 = 4;

/// Seed for randomized sequence drawing, overridable via `HCX_SEED`.
fn env_seed() -> u64 {
    std::env::var("HCX_SEED").ok().and_then(|s| s.parse().ok()).unwrap_or(0x5eed)
}

#[derive(Parser)]
#[command(
    name = "hcx",
    version,
    about = "Certified solvers for trust-region subproblems coupled with convex terms"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand)]
pub enum Command {
    /// Solve an instance to certified global optimality
    Solve {
        /// Instance file (JSON)
        instance: PathBuf,
    },
    /// Enumerate and certify all local non-global candidates
    Local {
        /// Instance file (JSON)
        instance: PathBuf,
        /// Number of scan grid points
        #[arg(long, default_value_t = local::DEFAULT_GRID)]
        grid: usize,
    },
    /// Check a candidate file against the global/local certificates
    Verify {
        /// Instance file (JSON)
        instance: PathBuf,
        /// Candidate file (JSON with x, y, mus)
        #[arg(long)]
        candidate: PathBuf,
        #[arg(long, value_enum, default_value_t = VerifyMode::Auto)]
        mode: VerifyMode,
    },
    /// Build an instance with a prescribed number of local non-global minimizers
    Generate {
        /// Target count of strict local non-global minimizers
        #[arg(long)]
        d: Option<usize>,
        /// Intersection multipliers (2d comma-separated values); drawn
        /// randomly when omitted
        #[arg(long, value_delimiter = ',')]
        mus: Option<Vec<f64>>,
        /// Blend centers (d-1 values); must name the line intersections
        #[arg(long = "o-overrides", value_delimiter = ',')]
        o_overrides: Option<Vec<f64>>,
        /// Blend halfwidth override
        #[arg(long)]
        blend_halfwidth: Option<f64>,
        /// Base instance supplying H and c (defaults to the canned 2x2 base)
        #[arg(long)]
        base: Option<PathBuf>,
        /// Write one of the canned instances instead: example1 | example2d3
        #[arg(long)]
        canned: Option<String>,
        /// Output instance file
        #[arg(long)]
        out: PathBuf,
    },
    /// Sample the secular and slack curves into a CSV
    Sample {
        /// Instance file (JSON)
        instance: PathBuf,
        #[arg(long)]
        from: f64,
        #[arg(long)]
        to: f64,
        #[arg(long)]
        points: usize,
        /// Output CSV path
        #[arg(long)]
        out: PathBuf,
        /// Add ln(phi) and ln(psi) columns
        #[arg(long)]
        log: bool,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum VerifyMode {
    Auto,
    Global,
    Local,
}

/// Run a parsed command line, returning the process exit code.
pub fn run(cli: Cli) -> i32 {
    let outcome = match cli.command {
        Command::Solve { instance } => cmd_solve(&instance),
        Command::Local { instance, grid } => cmd_local(&instance, grid),
        Command::Verify { instance, candidate, mode } => cmd_verify(&instance, &candidate, mode),
        Command::Generate { d, mus, o_overrides, blend_halfwidth, base, canned, out } => {
            cmd_generate(GenerateArgs {
                d,
                mus,
                o_overrides,
                blend_halfwidth,
                base,
                canned,
                out,
            })
        }
        Command::Sample { instance, from, to, points, out, log } => {
            cmd_sample(&instance, from, to, points, &out, log)
        }
    };
    match outcome {
        Ok(code) => code,
        Err((code, err)) => {
            eprintln!("error: {err}");
            code
        }
    }
}

type CmdResult = std::result::Result<i32, (i32, HcxError)>;

fn load_instance(path: &Path) -> std::result::Result<TrslInstance, (i32, HcxError)> {
    format::load(path).map_err(|e| (EXIT_PARSE, e))
}

fn solver_err(e: HcxError) -> (i32, HcxError) {
    (EXIT_SOLVER, e)
}

fn generator_err(e: HcxError) -> (i32, HcxError) {
    match e {
        HcxError::BadSequence(_)
        | HcxError::PhiNotIncreasing { .. }
        | HcxError::NonMonotonePsi { .. }
        | HcxError::DegenerateG1 { .. } => (EXIT_BAD_SEQUENCE, e),
        other => (EXIT_SOLVER, other),
    }
}

fn fmt_vec(v: &DVector<f64>) -> String {
    let items: Vec<String> = v.iter().map(|x| format!("{x:.6}")).collect();
    format!("[{}]", items.join(", "))
}

fn print_check(check: &CheckOutcome) {
    match check {
        CheckOutcome::Valid { unchecked } => {
            println!("certificate: Valid (global minimizer)");
            for u in unchecked {
                println!("  unchecked hypothesis: {u}");
            }
        }
        CheckOutcome::Violated(vs) => {
            println!("certificate: Violated");
            for v in vs {
                println!("  {}: {}", v.condition, v.detail);
            }
        }
    }
}

fn cmd_solve(path: &Path) -> CmdResult {
    let inst = load_instance(path)?;
    let sol = global::solve_global(&inst).map_err(solver_err)?;
    let check = global::check_global_trsl(&inst, &sol.x, sol.y, sol.mu).map_err(solver_err)?;
    println!("instance: {} (n = {})", path.display(), inst.n());
    println!("mu* = {:.12}", sol.mu);
    println!("x = {}", fmt_vec(&sol.x));
    println!("y = {:.12}", sol.y);
    println!("objective = {:.12}", sol.objective);
    println!("hard case: {}", if sol.hard_case { "yes" } else { "no" });
    print_check(&check);
    Ok(if check.is_valid() { EXIT_OK } else { EXIT_CHECK_FAILED })
}

fn cmd_local(path: &Path, grid: usize) -> CmdResult {
    let inst = load_instance(path)?;
    match local::precheck(&inst) {
        Precheck::NoLocalNonGlobal(reason) => {
            println!("no local non-global minimizer (precheck: {reason})");
            return Ok(EXIT_OK);
        }
        Precheck::Proceed { lo, hi } => {
            println!("candidate interval: ({lo:.6}, {hi:.6})");
        }
    }
    let roots = local::enumerate_roots(&inst, grid).map_err(solver_err)?;
    if roots.is_empty() {
        println!("no roots of phi(mu) = psi(mu) in the interval");
        return Ok(EXIT_OK);
    }
    println!(
        "{:>14}  {:>10}  {:>13}  {:<19}  {:<32}  {:>11}",
        "mu", "residual", "gap_d1", "classification", "point (x | y)", "B min-eig"
    );
    for r in &roots {
        let cand = local::materialize(&inst, r).map_err(solver_err)?;
        let cert = certify::certify_local(&inst, &cand).map_err(solver_err)?;
        let min_eig = cert
            .reduced()
            .map(|rh| format!("{:.4e}", rh.min_eig))
            .unwrap_or_else(|| "-".into());
        println!(
            "{:>14.9}  {:>10.2e}  {:>13.6}  {:<19}  {:<32}  {:>11}",
            r.mu,
            r.residual,
            r.gap_d1,
            r.classification.to_string(),
            format!("{} | {:.6}", fmt_vec(&cand.x), cand.y[0]),
            min_eig
        );
    }
    let strict = roots
        .iter()
        .filter(|r| r.classification == local::Classification::StrictLocal)
        .count();
    println!("{} root(s), {} strict local non-global", roots.len(), strict);
    Ok(EXIT_OK)
}

fn cmd_verify(path: &Path, cand_path: &Path, mode: VerifyMode) -> CmdResult {
    let inst = load_instance(path)?;
    let cand: CandidateFile = format::load_candidate(cand_path).map_err(|e| (EXIT_PARSE, e))?;
    if cand.x.len() != inst.n() || cand.y.len() != 1 {
        return Err((
            EXIT_PARSE,
            HcxError::DimensionMismatch(format!(
                "candidate sizes (x: {}, y: {}) do not fit the instance (n = {}, m = 1)",
                cand.x.len(),
                cand.y.len(),
                inst.n()
            )),
        ));
    }
    let x = DVector::from_vec(cand.x.clone());
    let y = cand.y[0];
    let mu = cand.mus[0];
    let pole = -inst.spectrum().lambda1();
    let use_global = match mode {
        VerifyMode::Global => true,
        VerifyMode::Local => false,
        VerifyMode::Auto => mu >= pole - 1e-9 * pole.abs().max(1.0),
    };
    if use_global {
        let check = global::check_global_trsl(&inst, &x, y, mu).map_err(solver_err)?;
        println!("mode: global (mu = {mu:.9})");
        print_check(&check);
        return Ok(if check.is_valid() { EXIT_OK } else { EXIT_CHECK_FAILED });
    }
    let point = local::CandidatePoint {
        stationarity_x: (inst.h() * &x + &x * mu + inst.c()).norm(),
        stationarity_y: 0.0,
        constraint_residual: inst.constraint(&x, y),
        x,
        y: DVector::from_element(1, y),
        mu,
        tag: local::Classification::Indeterminate,
    };
    let cert = certify::certify_local(&inst, &point).map_err(solver_err)?;
    println!("mode: local (mu = {mu:.9})");
    println!("certificate: {}", cert.label());
    match &cert {
        Certificate::StrictLocalNonGlobal { reduced, .. } => {
            println!("  reduced Hessian min eigenvalue: {:.6e}", reduced.min_eig);
            println!("  det(B): {:.6e}", reduced.det_direct);
        }
        Certificate::NotLocalMin { reason, .. } => println!("  reason: {reason}"),
        Certificate::GlobalMin { check, .. } => print_check(check),
        Certificate::Indeterminate { .. } => {
            println!("  reduced Hessian is singular to tolerance; no verdict")
        }
    }
    Ok(match cert {
        Certificate::GlobalMin { .. } | Certificate::StrictLocalNonGlobal { .. } => EXIT_OK,
        _ => EXIT_CHECK_FAILED,
    })
}

struct GenerateArgs {
    d: Option<usize>,
    mus: Option<Vec<f64>>,
    o_overrides: Option<Vec<f64>>,
    blend_halfwidth: Option<f64>,
    base: Option<PathBuf>,
    canned: Option<String>,
    out: PathBuf,
}

fn cmd_generate(args: GenerateArgs) -> CmdResult {
    if let Some(name) = &args.canned {
        let which: CannedExample = name
            .parse()
            .map_err(|e: String| (EXIT_PARSE, HcxError::InvalidInstance(e)))?;
        let inst = builder::canned_example(which);
        format::save(&inst, &args.out).map_err(solver_err)?;
        println!("wrote canned instance '{name}' to {}", args.out.display());
        return Ok(EXIT_OK);
    }

    let (h, c, a, b) = match &args.base {
        Some(path) => {
            let inst = load_instance(path)?;
            (inst.h().clone(), inst.c().clone(), inst.a(), inst.b())
        }
        None => builder::canned_base(),
    };
    if a != 1.0 || b != 0.0 {
        return Err((
            EXIT_BAD_SEQUENCE,
            HcxError::Unsupported("generation needs the a = 1, b = 0 normalization".into()),
        ));
    }
    let spectrum = crate::spectral::decompose(&h, &c).map_err(solver_err)?;

    let mus = match args.mus {
        Some(m) => {
            if let Some(d) = args.d {
                if m.len() != 2 * d {
                    return Err((
                        EXIT_BAD_SEQUENCE,
                        HcxError::BadSequence(format!(
                            "--d {d} needs {} multipliers, got {}",
                            2 * d,
                            m.len()
                        )),
                    ));
                }
            }
            m
        }
        None => {
            let d = args.d.ok_or((
                EXIT_PARSE,
                HcxError::InvalidInstance("need --d or an explicit --mus list".into()),
            ))?;
            builder::draw_admissible_sequence(&spectrum, d, env_seed())
                .map_err(generator_err)?
        }
    };

    let psi = builder::build_psi(&spectrum, &mus, args.o_overrides.as_deref(), args.blend_halfwidth)
        .map_err(generator_err)?;
    let f0 = builder::psi_to_f0(&psi, a, b).map_err(generator_err)?;
    let inst = TrslInstance::new(h, c, a, b, f0).map_err(solver_err)?;
    format::save(&inst, &args.out).map_err(solver_err)?;
    println!(
        "wrote instance with {} prescribed strict local non-global minimizer(s) to {}",
        mus.len() / 2,
        args.out.display()
    );
    Ok(EXIT_OK)
}

fn cmd_sample(path: &Path, from: f64, to: f64, points: usize, out: &Path, log: bool) -> CmdResult {
    let inst = load_instance(path)?;
    if points < 2 || !(to > from) {
        return Err((
            EXIT_PARSE,
            HcxError::InvalidInstance("need --points >= 2 and --to > --from".into()),
        ));
    }
    let s = inst.spectrum();
    let mut csv = String::new();
    csv.push_str("mu,phi,psi,phi_d1,psi_d1,gap");
    if log {
        csv.push_str(",ln_phi,ln_psi");
    }
    csv.push('\n');
    let step = (to - from) / (points - 1) as f64;
    for k in 0..points {
        let mu = from + step * k as f64;
        let phi = s.phi(mu).map_err(solver_err)?;
        let phi_d1 = s.phi_d1(mu).map_err(solver_err)?;
        let psi = inst.psi(mu).map_err(solver_err)?;
        let psi_d1 = inst.psi_d1(mu).map_err(solver_err)?;
        csv.push_str(&format!(
            "{mu:.16e},{phi:.16e},{psi:.16e},{phi_d1:.16e},{psi_d1:.16e},{:.16e}",
            phi - psi
        ));
        if log {
            let lp = if phi > 0.0 { phi.ln() } else { f64::NAN };
            let ls = if psi > 0.0 { psi.ln() } else { f64::NAN };
            csv.push_str(&format!(",{lp:.16e},{ls:.16e}"));
        }
        csv.push('\n');
    }
    std::fs::write(out, csv).map_err(|e| solver_err(e.into()))?;
    println!("wrote {points} samples on [{from}, {to}] to {}", out.display());
    Ok(EXIT_OK)
}
