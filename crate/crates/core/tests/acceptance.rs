//! End-to-end acceptance checks. Prints one PASS/FAIL line per criterion
//! and exits nonzero if any fails. Set `AFFINE_LEIBNIZ_STRETCH=1` to also
//! run the degree 5 and 6 homology at n = 4.

mod common;

use std::process::Command;
use std::sync::Arc;
use std::time::{Duration, Instant};

use affine_leibniz::complexes::{is_boundary, is_cycle, CeComplex, ChainComplex, LodayComplex};
use affine_leibniz::homology::{
    cohomology_dims, dd_spot_check, homology_dims, BettiReport, Certification, ComplexKind,
    HomologyConfig, Mode,
};
use affine_leibniz::invariants::*;
use affine_leibniz::liealg::{build_abelian, build_affine, build_so, LieAlgebra, Representation, Signature};
use affine_leibniz::linalg::ExactSolver;
use affine_leibniz::repspace::{act, Chain};
use affine_leibniz::scalar::qi;
use affine_leibniz::verify::{run_suite, Suite, VerifyConfig};
use common::{decompose, PolyField};

type Outcome = Result<String, String>;

fn sig(p: usize, q: usize) -> Signature {
    Signature::new(p, q).unwrap()
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn oracle_agrees(alg: &LieAlgebra, n: usize) -> bool {
    let fields: Vec<PolyField> = alg.labels().iter().map(|l| PolyField::of_label(n, l)).collect();
    (0..alg.dim()).all(|a| {
        (0..alg.dim()).all(|b| {
            decompose(alg, n, &fields[a].commutator(&fields[b])).is_some_and(|coords| {
                let want: Vec<_> = coords.iter().enumerate().filter(|(_, c)| **c != 0).map(|(i, c)| (i, qi(*c))).collect();
                alg.bracket(a, b) == want.as_slice()
            })
        })
    })
}

fn structure_soundness() -> Outcome {
    let mut count = 0;
    for n in 2..=6 {
        for p in 1..=n {
            let s = sig(p, n - p);
            for alg in [build_so(s), build_affine(s)] {
                let v = alg.validate();
                ensure(v.antisymmetry_failures.is_empty() && v.jacobi_failures.is_empty(), || {
                    format!("{} fails antisymmetry or Jacobi", alg.name())
                })?;
                ensure(oracle_agrees(&alg, n), || format!("{} disagrees with vector fields", alg.name()))?;
                count += 1;
            }
        }
    }
    Ok(format!("{count} algebras, n = 2..6"))
}

const LOW_SIGS: [(usize, usize); 5] = [(1, 3), (2, 2), (3, 1), (1, 4), (2, 3)];

fn table(make: fn(usize) -> ModuleDescriptor, expected: impl Fn(usize, usize) -> usize) -> Outcome {
    let config = InvariantConfig::default();
    let mut rows = Vec::new();
    for (p, q) in LOW_SIGS {
        let ctx = AffineContext::new(sig(p, q));
        let n = ctx.n();
        let got: Vec<usize> = (0..=n).map(|k| invariants_of(&ctx, make(k), &config).map(|b| b.dim)).collect::<Result<_, _>>().map_err(|e| e.to_string())?;
        let want: Vec<usize> = (0..=n).map(|k| expected(n, k)).collect();
        ensure(got == want, || format!("({p},{q}): got {got:?}, want {want:?}"))?;
        rows.push(format!("({p},{q}) {got:?}"));
    }
    Ok(rows.join(" "))
}

fn volume_table() -> Outcome {
    table(ModuleDescriptor::WedgeI, |n, k| usize::from(k == 0 || k == n))
}

fn i_wedge_table() -> Outcome {
    table(ModuleDescriptor::IWedge, |n, k| usize::from(k == 1 || k == n - 1))
}

fn so_wedge_tables() -> Outcome {
    let config = InvariantConfig::default();
    for (p, q) in [(1, 4), (2, 3), (3, 2), (4, 1)] {
        let ctx = AffineContext::new(sig(p, q));
        let mut dims = Vec::new();
        for k in 0..=5 {
            let b = invariants_of(&ctx, ModuleDescriptor::SoWedge(k), &config).map_err(|e| e.to_string())?;
            dims.push(b.dim);
            let reference = match k {
                2 => Some(make_rho(&ctx)),
                3 => Some(make_gamma(&ctx)),
                _ => None,
            };
            if let Some(r) = reference {
                ensure(b.dim == 1 && proportionality(&b.basis[0], &r).is_some(), || {
                    format!("({p},{q}) k={k}: generator not proportional to the named invariant")
                })?;
            }
        }
        ensure(dims == [0, 0, 1, 1, 0, 0], || format!("({p},{q}): {dims:?}"))?;
    }
    let mut reported = Vec::new();
    for (p, q) in [(1, 3), (2, 2), (3, 1)] {
        let ctx = AffineContext::new(sig(p, q));
        let b = invariants_of(&ctx, ModuleDescriptor::SoWedge(2), &config).map_err(|e| e.to_string())?;
        reported.push(format!("({p},{q})={}", b.dim));
    }
    Ok(format!("n = 5 tables [0,0,1,1,0,0], generators ∝ rho, gamma; n = 4 so*wedge^2 dims (reported): {}", reported.join(" ")))
}

fn annihilated(chain: &Chain, gens: &[usize]) -> Result<bool, String> {
    for &x in gens {
        if !act(x, chain).map_err(|e| e.to_string())?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

fn named_invariants() -> Outcome {
    for (p, q) in [(2, 2), (3, 1), (2, 3)] {
        let ctx = AffineContext::new(sig(p, q));
        let so: Vec<usize> = (0..ctx.so.dim()).collect();
        let all: Vec<usize> = (0..ctx.affine.dim()).collect();
        for (name, c) in [("delta", make_delta(&ctx)), ("beta", make_beta(&ctx)), ("rho", make_rho(&ctx)), ("gamma", make_gamma(&ctx))] {
            ensure(annihilated(&c, &so)?, || format!("({p},{q}) {name} not so-invariant"))?;
        }
        let sign = resolve_gamma_sign(&ctx).map_err(|e| e.to_string())?.resolved().ok_or("gamma sign unresolved")?;
        let gt = make_gamma_tilde(&ctx, sign, Normalization::Exact);
        for (name, c) in [("alpha_tilde", make_alpha_tilde(&ctx)), ("gamma_tilde", gt)] {
            ensure(annihilated(&c, &all)?, || format!("({p},{q}) {name} not h-invariant"))?;
        }
    }
    Ok("delta, beta, rho, gamma under so; alpha~, gamma~ under h; at (2,2) (3,1) (2,3)".into())
}

fn gamma_sign() -> Outcome {
    let mut signs = Vec::new();
    for (p, q) in [(2, 2), (3, 1)] {
        let ctx = AffineContext::new(sig(p, q));
        let r = resolve_gamma_sign(&ctx).map_err(|e| e.to_string())?;
        let s = r.resolved().ok_or_else(|| format!("({p},{q}) not unique: {r:?}"))?;
        let report = run_suite(sig(p, q), Suite::Paper, &VerifyConfig { max_degree: Some(2), ..Default::default() })
            .map_err(|e| e.to_string())?;
        ensure(report.resolved_gamma_sign == Some(s), || "report does not record the sign".into())?;
        signs.push(s);
    }
    ensure(signs[0] == signs[1], || format!("signs differ: {signs:?}"))?;
    Ok(format!("unique invariant sign {:+} at (2,2) and (3,1)", signs[0]))
}

fn cycles_and_homologous() -> Outcome {
    for (p, q) in [(2, 2), (3, 1)] {
        let ctx = AffineContext::new(sig(p, q));
        let loday = ChainComplex::Loday(LodayComplex::with_adjoint(ctx.affine.clone(), ctx.h_adjoint.clone()));
        let bar = make_gamma_bar(&ctx, Normalization::Exact);
        let sign = resolve_gamma_sign(&ctx).map_err(|e| e.to_string())?.resolved().ok_or("unresolved")?;
        let tilde = make_gamma_tilde(&ctx, sign, Normalization::Exact);
        ensure(is_cycle(&loday, &bar).map_err(|e| e.to_string())?, || format!("({p},{q}) d(gamma_bar) != 0"))?;
        ensure(is_cycle(&loday, &tilde).map_err(|e| e.to_string())?, || format!("({p},{q}) d(gamma_tilde) != 0"))?;
        let diff = tilde.sub(&bar).map_err(|e| e.to_string())?;
        let w = is_boundary(&loday, &diff, &ExactSolver::default())
            .map_err(|e| e.to_string())?
            .ok_or_else(|| format!("({p},{q}) difference is not a boundary"))?;
        ensure(loday.apply(&w).map_err(|e| e.to_string())? == diff, || "witness does not verify".into())?;
        let rho = so_wedge_to_tensor(&ctx, &make_rho(&ctx)).map_err(|e| e.to_string())?;
        ensure(!is_cycle(&loday, &rho).map_err(|e| e.to_string())?, || format!("({p},{q}) rho is a cycle"))?;
    }
    Ok("gamma_bar, gamma_tilde cycles; exact witness for the difference; rho not a cycle".into())
}

fn affine_report(p: usize, q: usize, max_degree: usize) -> Result<BettiReport, String> {
    let alg = Arc::new(build_affine(sig(p, q)));
    homology_dims(&alg, ComplexKind::Loday, &HomologyConfig { max_degree, ..Default::default() }).map_err(|e| e.to_string())
}

fn loday_betti_n4(reports: &mut Vec<BettiReport>) -> Outcome {
    let mut rows = Vec::new();
    for (p, q) in [(2, 2), (3, 1), (1, 3)] {
        let r = affine_report(p, q, 4)?;
        ensure(r.bettis() == [1, 0, 0, 1, 1], || format!("({p},{q}): {:?}", r.bettis()))?;
        let certs: Vec<Certification> = r.entries.iter().map(|e| e.certification).collect();
        ensure(certs[..4].iter().all(|c| *c == Certification::Exact) && certs[4] == Certification::TwoPrime, || {
            format!("({p},{q}) certification {certs:?}")
        })?;
        ensure(r.all_match(), || "prediction mismatch".into())?;
        rows.push(format!("({p},{q}) {:?}", r.bettis()));
        reports.push(r);
    }
    Ok(format!("{} (exact k <= 3, two primes at k = 4)", rows.join(" ")))
}

fn stretch_n4(reports: &mut Vec<BettiReport>) -> Outcome {
    let alg = Arc::new(build_affine(sig(2, 2)));
    let config = HomologyConfig { max_degree: 6, cap_modular: 11_000_000, ..Default::default() };
    let r = homology_dims(&alg, ComplexKind::Loday, &config).map_err(|e| e.to_string())?;
    ensure(r.bettis() == [1, 0, 0, 1, 1, 0, 1], || format!("{:?}", r.bettis()))?;
    ensure(r.disagreements().is_empty(), || "primes disagree".into())?;
    reports.push(r);
    Ok("(2,2) degrees 5, 6 -> 0, 1".into())
}

fn abelian_oracle(reports: &mut Vec<BettiReport>) -> Outcome {
    let config = |m| HomologyConfig { max_degree: m, mode: Mode::Exact, ..Default::default() };
    let i2 = homology_dims(&Arc::new(build_abelian(2).unwrap()), ComplexKind::Loday, &config(3)).map_err(|e| e.to_string())?;
    let i3 = homology_dims(&Arc::new(build_abelian(3).unwrap()), ComplexKind::Loday, &config(2)).map_err(|e| e.to_string())?;
    ensure(i2.bettis() == [1, 2, 4, 8], || format!("I_2 {:?}", i2.bettis()))?;
    ensure(i3.bettis() == [1, 3, 9], || format!("I_3 {:?}", i3.bettis()))?;
    reports.push(i2);
    reports.push(i3);
    Ok("I_2: 1 2 4 8, I_3: 1 3 9".into())
}

fn differential_soundness() -> Outcome {
    let config = HomologyConfig::default();
    let mut checked = 0;
    for (p, q) in [(2, 2), (3, 1), (2, 3)] {
        let alg = Arc::new(build_affine(sig(p, q)));
        let loday = LodayComplex::new(alg.clone());
        let trivial = CeComplex::new(alg.clone(), Arc::new(Representation::trivial(alg.dim()))).map_err(|e| e.to_string())?;
        let adjoint = CeComplex::new(alg.clone(), Arc::new(Representation::adjoint(&alg))).map_err(|e| e.to_string())?;
        let top = if alg.dim() > 10 { 5 } else { 6 };
        for k in 2..=top {
            dd_spot_check(&loday, &trivial, ComplexKind::Loday, k, &config).map_err(|e| format!("({p},{q}) {e}"))?;
            checked += 1;
        }
        for ce in [&trivial, &adjoint] {
            for k in 2..=alg.dim() {
                dd_spot_check(&loday, ce, ComplexKind::ChevalleyEilenberg, k, &config).map_err(|e| format!("({p},{q}) CE {e}"))?;
                checked += 1;
            }
        }
    }
    let h4 = build_affine(sig(2, 2));
    let i4 = Arc::new(build_abelian(4).unwrap());
    let module = Arc::new(Representation::adjoint_restricted(&h4, &h4.translation_indices()));
    let ce = CeComplex::new(i4.clone(), module).map_err(|e| e.to_string())?;
    let loday = LodayComplex::new(i4);
    for k in 2..=4 {
        dd_spot_check(&loday, &ce, ComplexKind::ChevalleyEilenberg, k, &config).map_err(|e| e.to_string())?;
        checked += 1;
    }
    Ok(format!("{checked} (complex, degree) pairs x {} random chains", config.dd_samples))
}

fn duality(reports: &[BettiReport]) -> Outcome {
    for r in reports {
        ensure(cohomology_dims(r).bettis() == r.bettis(), || format!("{} differs", r.algebra))?;
    }
    Ok(format!("{} reports", reports.len()))
}

fn reproducibility() -> Outcome {
    let run = || {
        let out = Command::new(env!("CARGO_BIN_EXE_affine-leibniz"))
            .args(["verify", "--suite", "paper", "--p", "2", "--q", "2", "--seed", "42", "--json", "-"])
            .output()
            .map_err(|e| e.to_string())?;
        ensure(out.status.success(), || format!("exit {:?}", out.status.code()))?;
        Ok::<_, String>(out.stdout)
    };
    let a = run()?;
    let b = run()?;
    ensure(!a.is_empty() && a == b, || "reports differ".into())?;
    Ok(format!("{} identical bytes", a.len()))
}

fn main() {
    let stretch = std::env::var("AFFINE_LEIBNIZ_STRETCH").is_ok_and(|v| v == "1");
    let mut reports = Vec::new();
    let mut failed = 0;
    let mut record = |id: &str, name: &str, budget_s: u64, f: &mut dyn FnMut() -> Outcome| {
        let start = Instant::now();
        let outcome = f();
        let elapsed = start.elapsed();
        let budget = Duration::from_secs(budget_s);
        let (ok, detail) = match outcome {
            Ok(d) if elapsed <= budget => (true, d),
            Ok(d) => (false, format!("{d}; over budget")),
            Err(e) => (false, e),
        };
        failed += usize::from(!ok);
        println!("{} {id} {name}: {detail} [{elapsed:.2?} of {budget_s}s]", if ok { "PASS" } else { "FAIL" });
    };
    record("AC01", "structure soundness", 10, &mut structure_soundness);
    record("AC02", "invariants of exterior powers", 30, &mut volume_table);
    record("AC03", "invariants of I tensor exterior powers", 120, &mut i_wedge_table);
    record("AC04", "invariants of so tensor exterior powers", 300, &mut so_wedge_tables);
    record("AC05", "named invariants are annihilated", 60, &mut named_invariants);
    record("AC06", "gamma tilde sign resolution", 60, &mut gamma_sign);
    record("AC07", "cycles and homologous pair", 120, &mut cycles_and_homologous);
    record("AC08", "Loday Betti numbers at n = 4", 600, &mut || loday_betti_n4(&mut reports));
    if stretch {
        record("AC08s", "stretch: degrees 5 and 6 at n = 4", 3600, &mut || stretch_n4(&mut reports));
    }
    record("AC09", "abelian oracle", 1, &mut || abelian_oracle(&mut reports));
    record("AC10", "differential soundness", 600, &mut differential_soundness);
    record("AC11", "duality", 1, &mut || duality(&reports));
    record("AC12", "reproducible verify report", 600, &mut reproducibility);
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
