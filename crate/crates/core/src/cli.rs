//! Command-line front end.
//!
//! Exit codes: 0 all checks pass, 1 a check failed, 2 usage error,
//! 3 a size cap was hit.

use std::io::Write;
use std::path::PathBuf;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::Error;
use crate::homology::{default_max_degree, homology_dims_partial, BettiReport, ComplexKind, HomologyConfig, Mode};
use crate::invariants::{invariants_of, AffineContext, InvariantConfig, ModuleDescriptor};
use crate::liealg::{build_abelian, build_affine, LieAlgebra, Signature, ValidationReport};
use crate::scalar::bigint_json;
use crate::verify::{run_suite, Suite, VerifyConfig, SCHEMA_VERSION};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_CAP: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "affine-leibniz", version, about = "Leibniz homology and invariants of affine orthogonal Lie algebras")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalOpts,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct GlobalOpts {
    /// Seed for prime selection and random spot checks.
    #[arg(long, global = true, env = "AFFINE_LEIBNIZ_SEED", default_value_t = 42)]
    pub seed: u64,

    /// Number of primes for modular ranks.
    #[arg(long, global = true, env = "AFFINE_LEIBNIZ_PRIMES", default_value_t = 2)]
    pub primes: usize,

    /// Largest boundary (in columns) whose rank is computed over the rationals.
    #[arg(long, global = true, env = "AFFINE_LEIBNIZ_CAP_EXACT", default_value_t = 10_000)]
    pub cap_exact: usize,

    /// Largest boundary (in columns) whose rank is computed modulo primes.
    #[arg(long, global = true, env = "AFFINE_LEIBNIZ_CAP_MODULAR", default_value_t = 3_000_000)]
    pub cap_modular: usize,

    /// Write the JSON report here (`-` for stdout instead of the text summary).
    #[arg(long, global = true, env = "AFFINE_LEIBNIZ_JSON")]
    pub json: Option<PathBuf>,
}

#[derive(Args, Debug, Clone, Copy)]
pub struct SigArgs {
    /// Number of positive directions.
    #[arg(long)]
    pub p: usize,
    /// Number of negative directions.
    #[arg(long)]
    pub q: usize,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Build so(p,q) and its affine extension, validate them and list the basis.
    Algebra {
        #[command(flatten)]
        sig: SigArgs,
    },
    /// Invariant subspace of a module.
    ///
    /// Module grammar: `wedge:I:k` (Λ^k I under so), `I*wedge:k`
    /// (I ⊗ Λ^k I under so), `so*wedge:k` (so ⊗ Λ^k I under so),
    /// `tensor:h:k` (h^⊗k under h), `so` (adjoint of so).
    Invariants {
        #[command(flatten)]
        sig: SigArgs,
        #[arg(long)]
        module: ModuleDescriptor,
    },
    /// Betti numbers of the Loday (or Chevalley–Eilenberg) complex.
    Homology {
        #[arg(long, requires = "q", conflicts_with = "abelian")]
        p: Option<usize>,
        #[arg(long, requires = "p")]
        q: Option<usize>,
        /// Use the abelian algebra of this dimension instead.
        #[arg(long)]
        abelian: Option<usize>,
        #[arg(long)]
        max_degree: Option<usize>,
        #[arg(long, value_enum, default_value_t = ModeArg::Modular)]
        mode: ModeArg,
        #[arg(long, value_enum, default_value_t = ComplexArg::Loday)]
        complex: ComplexArg,
    },
    /// Run a verification suite.
    Verify {
        #[command(flatten)]
        sig: SigArgs,
        #[arg(long, default_value = "all")]
        suite: Suite,
        #[arg(long)]
        max_degree: Option<usize>,
    },
}

#[derive(ValueEnum, Debug, Clone, Copy)]
pub enum ModeArg {
    Exact,
    Modular,
}

#[derive(ValueEnum, Debug, Clone, Copy)]
pub enum ComplexArg {
    Loday,
    Ce,
}

#[derive(Serialize)]
struct Envelope<'a> {
    schema_version: u32,
    command: &'a str,
    signature: Option<Signature>,
    environment: Value,
    results: Vec<Value>,
}

struct Outcome {
    command: &'static str,
    signature: Option<Signature>,
    results: Vec<Value>,
    text: String,
    code: i32,
}

fn environment(g: &GlobalOpts) -> Value {
    json!({ "seed": g.seed, "primes": g.primes, "cap_exact": g.cap_exact, "cap_modular": g.cap_modular })
}

fn signature(s: SigArgs) -> Result<Signature, Error> {
    Signature::new(s.p, s.q)
}

fn validation_json(v: &ValidationReport) -> Value {
    json!({
        "passed": v.passed(),
        "antisymmetry_failures": v.antisymmetry_failures.len(),
        "jacobi_failures": v.jacobi_failures.len(),
        "grading_failures": v.grading_failures.len(),
        "oracle_agreement": v.oracle_agreement,
    })
}

fn structure_table(alg: &LieAlgebra) -> Value {
    let mut rows = Vec::new();
    for a in 0..alg.dim() {
        for b in 0..alg.dim() {
            for (c, v) in alg.bracket(a, b) {
                rows.push(json!({
                    "a": alg.label(a).to_string(),
                    "b": alg.label(b).to_string(),
                    "c": alg.label(*c).to_string(),
                    "numerator": bigint_json(v.numer()),
                    "denominator": bigint_json(v.denom()),
                }));
            }
        }
    }
    Value::Array(rows)
}

fn cmd_algebra(sig: Signature) -> Outcome {
    let ctx = AffineContext::new(sig);
    let mut text = String::new();
    let mut results = Vec::new();
    let mut ok = true;
    for alg in [&ctx.so, &ctx.affine] {
        let v = alg.validate();
        ok &= v.passed();
        let labels: Vec<String> = alg.labels().iter().map(ToString::to_string).collect();
        text += &format!(
            "{}: dim {}, validation {}\n  basis: {}\n",
            alg.name(),
            alg.dim(),
            if v.passed() { "pass" } else { "FAIL" },
            labels.join(" ")
        );
        results.push(json!({
            "algebra": alg.name(),
            "dim": alg.dim(),
            "basis": labels,
            "validation": validation_json(&v),
            "structure_constants": structure_table(alg),
        }));
    }
    Outcome {
        command: "algebra",
        signature: Some(sig),
        results,
        text,
        code: if ok { EXIT_OK } else { EXIT_CHECK_FAILED },
    }
}

fn cmd_invariants(sig: Signature, module: ModuleDescriptor, g: &GlobalOpts) -> Result<Outcome, Error> {
    let ctx = AffineContext::new(sig);
    let config = InvariantConfig { seed: g.seed, ..InvariantConfig::default() };
    let basis = invariants_of(&ctx, module, &config)?;
    let expected = module.expected_dim(sig.n());
    let mut text = format!("{module} over {}: invariant dim {}", basis.space, basis.dim);
    match expected {
        Some(e) => text += &format!(" (expected {e})\n"),
        None => text += " (no expected value)\n",
    }
    let matches = expected.is_none_or(|e| e == basis.dim);
    let result = json!({
        "module": module.to_string(),
        "space": basis.space.to_string(),
        "space_dim": basis.space.dim(),
        "dim": basis.dim,
        "expected": expected,
        "method": basis.method,
        "basis": basis.basis.iter().map(|c| c.to_json()).collect::<Vec<_>>(),
    });
    Ok(Outcome {
        command: "invariants",
        signature: Some(sig),
        results: vec![result],
        text,
        code: if matches { EXIT_OK } else { EXIT_CHECK_FAILED },
    })
}

fn betti_text(r: &BettiReport) -> String {
    let mut s = format!("{} ({:?} complex)\n degree       dim   rank_in  rank_out  betti  predicted  cert\n", r.algebra, r.complex);
    for e in &r.entries {
        let pred = r.predicted.as_ref().and_then(|p| p.get(e.degree)).map_or("-".to_string(), ToString::to_string);
        s += &format!(
            " {:>6} {:>9} {:>9} {:>9} {:>6} {:>10}  {:?}\n",
            e.degree, e.space_dim, e.rank_in, e.rank_out, e.betti, pred, e.certification
        );
    }
    s
}

fn cmd_homology(
    alg: LieAlgebra,
    sig: Option<Signature>,
    max_degree: Option<usize>,
    mode: ModeArg,
    complex: ComplexArg,
    g: &GlobalOpts,
) -> Result<Outcome, Error> {
    let n = sig.map_or(alg.dim(), |s| s.n());
    let config = HomologyConfig {
        max_degree: max_degree.unwrap_or_else(|| default_max_degree(n)),
        mode: match mode {
            ModeArg::Exact => Mode::Exact,
            ModeArg::Modular => Mode::Modular,
        },
        cap_exact: g.cap_exact,
        cap_modular: g.cap_modular,
        seed: g.seed,
        primes: g.primes,
        dd_samples: 100,
    };
    let kind = match complex {
        ComplexArg::Loday => ComplexKind::Loday,
        ComplexArg::Ce => ComplexKind::ChevalleyEilenberg,
    };
    let (report, cap) = homology_dims_partial(&Arc::new(alg), kind, &config)?;
    let mut text = betti_text(&report);
    let code = if let Some(e) = &cap {
        text += &format!("stopped: {e}\n");
        EXIT_CAP
    } else if report.predicted.is_some() && !report.all_match() || !report.disagreements().is_empty() {
        EXIT_CHECK_FAILED
    } else {
        EXIT_OK
    };
    let mut value = serde_json::to_value(&report).expect("report serializes");
    value["stopped"] = cap.map_or(Value::Null, |e| Value::String(e.to_string()));
    Ok(Outcome { command: "homology", signature: sig, results: vec![value], text, code })
}

fn cmd_verify(sig: Signature, suite: Suite, max_degree: Option<usize>, g: &GlobalOpts) -> Result<Outcome, Error> {
    let config = VerifyConfig {
        seed: g.seed,
        primes: g.primes,
        cap_exact: g.cap_exact,
        cap_modular: g.cap_modular,
        max_degree,
    };
    let report = run_suite(sig, suite, &config)?;
    let mut text = String::new();
    for c in &report.checks {
        text += &format!("{:<8} {:<32} {}\n", format!("{:?}", c.status).to_lowercase(), c.id, c.claim);
    }
    if let Some(s) = report.resolved_gamma_sign {
        text += &format!("resolved gamma sign: {s:+}\n");
    }
    let code = if report.passed() { EXIT_OK } else { EXIT_CHECK_FAILED };
    Ok(Outcome {
        command: "verify",
        signature: Some(sig),
        results: vec![serde_json::to_value(&report).expect("report serializes")],
        text,
        code,
    })
}

fn dispatch(cli: &Cli) -> Result<Outcome, Error> {
    let g = &cli.global;
    match &cli.command {
        Command::Algebra { sig } => Ok(cmd_algebra(signature(*sig)?)),
        Command::Invariants { sig, module } => cmd_invariants(signature(*sig)?, *module, g),
        Command::Homology { p, q, abelian, max_degree, mode, complex } => {
            let (alg, sig) = match (p, q, abelian) {
                (Some(p), Some(q), None) => {
                    let sig = Signature::new(*p, *q)?;
                    (build_affine(sig), Some(sig))
                }
                (None, None, Some(n)) => (build_abelian(*n)?, None),
                _ => return Err(Error::Parse("give either --p and --q, or --abelian".into())),
            };
            cmd_homology(alg, sig, *max_degree, *mode, *complex, g)
        }
        Command::Verify { sig, suite, max_degree } => cmd_verify(signature(*sig)?, *suite, *max_degree, g),
    }
}

fn emit(out: &Outcome, g: &GlobalOpts) -> std::io::Result<()> {
    let envelope = Envelope {
        schema_version: SCHEMA_VERSION,
        command: out.command,
        signature: out.signature,
        environment: environment(g),
        results: out.results.clone(),
    };
    let body = serde_json::to_string_pretty(&envelope).expect("envelope serializes") + "\n";
    match g.json.as_deref() {
        Some(p) if p.as_os_str() == "-" => std::io::stdout().write_all(body.as_bytes()),
        Some(p) => {
            std::fs::write(p, body)?;
            print!("{}", out.text);
            Ok(())
        }
        None => {
            print!("{}", out.text);
            Ok(())
        }
    }
}

/// Parses arguments, runs the command and returns the process exit code.
pub fn run_from<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    match dispatch(&cli) {
        Ok(out) => match emit(&out, &cli.global) {
            Ok(()) => out.code,
            Err(e) => {
                eprintln!("error: {e}");
                EXIT_USAGE
            }
        },
        Err(e @ Error::CapExceeded { .. }) => {
            eprintln!("error: {e}");
            EXIT_CAP
        }
        Err(Error::DifferentialCheck(k)) => {
            eprintln!("error: boundary of boundary is nonzero in degree {k}");
            EXIT_CHECK_FAILED
        }
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_USAGE
        }
    }
}
