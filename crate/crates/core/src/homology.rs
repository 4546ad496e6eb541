//! Betti numbers of the Loday and Chevalley–Eilenberg complexes.
//!
//! `betti_k = dim C_k − rank d_k − rank d_{k+1}`. Ranks of Loday boundaries
//! are summed over grade blocks; blocks are exact over ℚ up to the exact cap
//! and streamed modulo independent random primes above it.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::complexes::{loday_terms, CeComplex, GradedTensorBasis, LodayComplex};
use crate::error::{Error, Result};
use crate::liealg::{LieAlgebra, Representation, Signature};
use crate::linalg::{rank_mod_p_streamed, ExactSolver, PrimeSource};
use crate::repspace::{Chain, Space};
use crate::scalar::qi;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ComplexKind {
    Loday,
    ChevalleyEilenberg,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    Exact,
    Modular,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ReportKind {
    Homology,
    Cohomology,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Certification {
    Exact,
    TwoPrime,
    Disagreement,
}

#[derive(Clone, Debug)]
pub struct HomologyConfig {
    pub max_degree: usize,
    pub mode: Mode,
    pub cap_exact: usize,
    pub cap_modular: usize,
    pub seed: u64,
    pub primes: usize,
    pub dd_samples: usize,
}

impl Default for HomologyConfig {
    fn default() -> Self {
        Self {
            max_degree: 4,
            mode: Mode::Modular,
            cap_exact: 10_000,
            cap_modular: 3_000_000,
            seed: 42,
            primes: 2,
            dd_samples: 100,
        }
    }
}

/// Default top degree: 5 up to `n = 4`, 4 at `n = 5`, 3 beyond.
pub fn default_max_degree(n: usize) -> usize {
    match n {
        0..=4 => 5,
        5 => 4,
        _ => 3,
    }
}

/// Rank of one boundary map with how it was obtained.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundaryRank {
    pub degree: usize,
    pub columns: usize,
    pub rank: usize,
    pub certification: Certification,
    /// One rank per prime in modular mode.
    pub per_prime: Vec<(u64, usize)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeEntry {
    pub degree: usize,
    pub space_dim: usize,
    pub rank_in: usize,
    pub rank_out: usize,
    pub betti: usize,
    pub certification: Certification,
    pub dd_checked: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BettiReport {
    pub algebra: String,
    pub complex: ComplexKind,
    pub kind: ReportKind,
    pub entries: Vec<DegreeEntry>,
    pub ranks: Vec<BoundaryRank>,
    pub predicted: Option<Vec<usize>>,
    pub matches: Option<Vec<bool>>,
    pub primes: Vec<u64>,
    pub rejected_primes: Vec<u64>,
}

impl BettiReport {
    pub fn bettis(&self) -> Vec<usize> {
        self.entries.iter().map(|e| e.betti).collect()
    }

    /// Degrees whose modular ranks differed between primes.
    pub fn disagreements(&self) -> Vec<usize> {
        self.entries.iter().filter(|e| e.certification == Certification::Disagreement).map(|e| e.degree).collect()
    }

    /// True when predictions exist and every computed degree matches.
    pub fn all_match(&self) -> bool {
        self.matches.as_ref().is_some_and(|m| m.iter().all(|&b| b)) && self.disagreements().is_empty()
    }

    pub fn with_prediction(mut self, predicted: Vec<usize>) -> Self {
        let matches = self.entries.iter().map(|e| predicted.get(e.degree) == Some(&e.betti)).collect();
        self.predicted = Some(predicted);
        self.matches = Some(matches);
        self
    }
}

/// Dimensions of `(ℝ ⊕ ℝ·α̃) ⊗ T(γ̃)` with `|α̃| = n`, `|γ̃| = n − 1`.
pub fn predicted_hl_dims(sig: Signature, max_degree: usize) -> Result<Vec<usize>> {
    sig.require_invariant_range()?;
    let n = sig.n();
    let mut out = vec![0; max_degree + 1];
    for start in [0, n] {
        let mut d = start;
        while d <= max_degree {
            out[d] += 1;
            d += n - 1;
        }
    }
    Ok(out)
}

/// Leibniz cohomology dimensions: over a field these are the homology
/// dimensions, degree by degree.
pub fn cohomology_dims(report: &BettiReport) -> BettiReport {
    BettiReport { kind: ReportKind::Cohomology, ..report.clone() }
}

/// Betti numbers in degrees `0..=max_degree`. A cap violation fails the
/// whole call naming the degree.
pub fn homology_dims(alg: &Arc<LieAlgebra>, complex: ComplexKind, config: &HomologyConfig) -> Result<BettiReport> {
    let (report, err) = homology_dims_partial(alg, complex, config)?;
    err.map_or(Ok(report), Err)
}

/// Like [`homology_dims`] but keeps every degree computed before a cap
/// violation, returning the violation alongside.
pub fn homology_dims_partial(
    alg: &Arc<LieAlgebra>,
    complex: ComplexKind,
    config: &HomologyConfig,
) -> Result<(BettiReport, Option<Error>)> {
    if config.primes < 1 {
        return Err(Error::OutOfRange("at least one prime is required".into()));
    }
    let mut primes = PrimeSource::new(config.seed);
    let mut rejected = Vec::new();
    let mut ranks: Vec<BoundaryRank> = Vec::new();
    let mut entries = Vec::new();
    let mut stop = None;
    let dim = alg.dim();
    let space_dim = |k: usize| match complex {
        ComplexKind::Loday => dim.pow(k as u32),
        ComplexKind::ChevalleyEilenberg => crate::repspace::binomial(dim, k),
    };
    let loday = LodayComplex::new(alg.clone());
    let ce = CeComplex::new(alg.clone(), Arc::new(Representation::trivial(dim)))?;
    let mut chosen: Vec<u64> = Vec::new();
    for k in 0..=config.max_degree + 1 {
        if k > 0 {
            let r = boundary_rank(&loday, &ce, complex, k, config, &mut primes, &mut chosen, &mut rejected);
            match r {
                Ok(r) => ranks.push(r),
                Err(e @ Error::CapExceeded { .. }) => {
                    stop = Some(e);
                    break;
                }
                Err(e) => return Err(e),
            }
            if k >= 2 {
                dd_spot_check(&loday, &ce, complex, k, config)?;
            }
        }
        if k >= 1 {
            let d = k - 1;
            let rank_in = if d == 0 { 0 } else { ranks[d - 1].rank };
            let rank_out = ranks[d].rank;
            let total = space_dim(d);
            let cert = combine_cert(d.checked_sub(1).map(|i| &ranks[i]), &ranks[d]);
            entries.push(DegreeEntry {
                degree: d,
                space_dim: total,
                rank_in,
                rank_out,
                betti: total - rank_in - rank_out,
                certification: cert,
                dd_checked: if d >= 1 { config.dd_samples } else { 0 },
            });
        }
    }
    let mut report = BettiReport {
        algebra: alg.name().to_string(),
        complex,
        kind: ReportKind::Homology,
        entries,
        ranks,
        predicted: None,
        matches: None,
        primes: chosen,
        rejected_primes: rejected,
    };
    if complex == ComplexKind::Loday {
        if let Some(sig) = alg.signature().filter(|s| s.require_invariant_range().is_ok()) {
            if matches!(alg.kind(), crate::liealg::AlgebraKind::Affine { .. }) {
                report = report.with_prediction(predicted_hl_dims(sig, config.max_degree)?);
            }
        }
    }
    Ok((report, stop))
}

fn combine_cert(a: Option<&BoundaryRank>, b: &BoundaryRank) -> Certification {
    let certs = a.into_iter().chain(std::iter::once(b)).map(|r| r.certification);
    certs.fold(Certification::Exact, |acc, c| match (acc, c) {
        (Certification::Disagreement, _) | (_, Certification::Disagreement) => Certification::Disagreement,
        (Certification::TwoPrime, _) | (_, Certification::TwoPrime) => Certification::TwoPrime,
        _ => Certification::Exact,
    })
}

#[allow(clippy::too_many_arguments)]
fn boundary_rank(
    loday: &LodayComplex,
    ce: &CeComplex,
    complex: ComplexKind,
    k: usize,
    config: &HomologyConfig,
    source: &mut PrimeSource,
    chosen: &mut Vec<u64>,
    rejected: &mut Vec<u64>,
) -> Result<BoundaryRank> {
    let dim = loday.algebra().dim();
    let columns = match complex {
        ComplexKind::Loday => dim.checked_pow(k as u32).unwrap_or(usize::MAX),
        ComplexKind::ChevalleyEilenberg => crate::repspace::binomial(dim, k),
    };
    let exact_ok = columns <= config.cap_exact;
    if !exact_ok && (config.mode == Mode::Exact || columns > config.cap_modular) {
        let cap = if config.mode == Mode::Exact { config.cap_exact } else { config.cap_modular };
        return Err(Error::CapExceeded { what: format!("boundary d_{k} columns"), size: columns, cap });
    }
    if complex == ComplexKind::Loday && k == 1 {
        return Ok(BoundaryRank { degree: 1, columns, rank: 0, certification: Certification::Exact, per_prime: vec![] });
    }
    if exact_ok {
        let solver = ExactSolver::with_cap(config.cap_exact.max(columns));
        let rank = match complex {
            ComplexKind::Loday => {
                let grades = loday.grades();
                let src = GradedTensorBasis::new(&grades, k);
                let dst = GradedTensorBasis::new(&grades, k - 1);
                let keys: Vec<_> = src.blocks.keys().copied().collect();
                keys.par_iter()
                    .map(|g| solver.rank(&loday.boundary_block(&src, &dst, g)).map(|c| c.rank))
                    .collect::<Result<Vec<_>>>()?
                    .into_iter()
                    .sum()
            }
            ComplexKind::ChevalleyEilenberg => solver.rank(&ce.boundary_matrix(k))?.rank,
        };
        return Ok(BoundaryRank { degree: k, columns, rank, certification: Certification::Exact, per_prime: vec![] });
    }
    let mut per_prime = Vec::new();
    let mut idx = 0;
    while per_prime.len() < config.primes {
        let p = if idx < chosen.len() {
            chosen[idx]
        } else {
            let p = source.next_prime();
            chosen.push(p);
            p
        };
        idx += 1;
        match modular_rank(loday, ce, complex, k, p) {
            Ok(r) => per_prime.push((p, r)),
            Err(Error::DenominatorDivisible(_)) => {
                chosen.retain(|&x| x != p);
                idx -= 1;
                rejected.push(p);
            }
            Err(e) => return Err(e),
        }
    }
    let agree = per_prime.windows(2).all(|w| w[0].1 == w[1].1);
    let rank = per_prime.iter().map(|x| x.1).max().unwrap_or(0);
    let certification = if agree { Certification::TwoPrime } else { Certification::Disagreement };
    Ok(BoundaryRank { degree: k, columns, rank, certification, per_prime })
}

fn modular_rank(loday: &LodayComplex, ce: &CeComplex, complex: ComplexKind, k: usize, p: u64) -> Result<usize> {
    match complex {
        ComplexKind::ChevalleyEilenberg => Ok(crate::linalg::rank_mod_p(&ce.boundary_matrix(k), p)?.rank),
        ComplexKind::Loday => {
            let alg = loday.algebra();
            let dim = alg.dim();
            let table = alg.table_mod_p(p)?;
            let grades = loday.grades();
            let src = GradedTensorBasis::new(&grades, k);
            let dst = GradedTensorBasis::new(&grades, k - 1);
            let space_src = loday.space(k);
            let space_dst = loday.space(k - 1);
            let blocks: Vec<_> = src.blocks.iter().collect();
            let ranks = blocks
                .par_iter()
                .map(|(g, cols)| {
                    let rows = dst.block_len(g);
                    let stream = cols.iter().map(|&r| {
                        let word = space_src.unrank(r);
                        let mut col = Vec::new();
                        loday_terms(&table, dim, &word, |t, neg, &c| {
                            let local = dst.local[space_dst.rank(t)] as usize;
                            col.push((local, if neg { (p - c) % p } else { c }));
                        });
                        Ok(col)
                    });
                    rank_mod_p_streamed(rows, stream, p)
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(ranks.into_iter().sum())
        }
    }
}

fn random_chain(space: &Space, rng: &mut ChaCha8Rng) -> Chain {
    let mut c = Chain::zero(space.clone());
    let dim = space.dim();
    if dim == 0 {
        return c;
    }
    for _ in 0..3 {
        let r = rng.gen_range(0..dim);
        c.add_term(space.unrank(r), qi(rng.gen_range(-5..=5))).expect("word from space");
    }
    c
}

/// Applies `d_{k−1} ∘ d_k` to random chains in degree `k`, failing on any
/// nonzero result.
pub fn dd_spot_check(
    loday: &LodayComplex,
    ce: &CeComplex,
    complex: ComplexKind,
    k: usize,
    config: &HomologyConfig,
) -> Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed ^ (k as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15));
    let space = match complex {
        ComplexKind::Loday => loday.space(k),
        ComplexKind::ChevalleyEilenberg => ce.space(k),
    };
    for _ in 0..config.dd_samples {
        let c = random_chain(&space, &mut rng);
        let dd = match complex {
            ComplexKind::Loday => loday.apply(&loday.apply(&c)?)?,
            ComplexKind::ChevalleyEilenberg => ce.apply(&ce.apply(&c)?)?,
        };
        if !dd.is_zero() {
            return Err(Error::DifferentialCheck(k));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::liealg::{build_abelian, build_affine};

    fn cfg(max: usize) -> HomologyConfig {
        HomologyConfig { max_degree: max, dd_samples: 10, ..Default::default() }
    }

    #[test]
    fn abelian_dims() {
        let alg = Arc::new(build_abelian(2).unwrap());
        let r = homology_dims(&alg, ComplexKind::Loday, &cfg(3)).unwrap();
        assert_eq!(r.bettis(), vec![1, 2, 4, 8]);
        let r = homology_dims(&alg, ComplexKind::ChevalleyEilenberg, &cfg(2)).unwrap();
        assert_eq!(r.bettis(), vec![1, 2, 1]);
    }

    #[test]
    fn predictions() {
        let p = predicted_hl_dims(Signature::new(2, 2).unwrap(), 10).unwrap();
        let ones: Vec<usize> = (0..=10).filter(|&d| p[d] == 1).collect();
        assert_eq!(ones, vec![0, 3, 4, 6, 7, 9, 10]);
        let p = predicted_hl_dims(Signature::new(3, 2).unwrap(), 9).unwrap();
        let ones: Vec<usize> = (0..=9).filter(|&d| p[d] == 1).collect();
        assert_eq!(ones, vec![0, 4, 5, 8, 9]);
        assert!(predicted_hl_dims(Signature::new(2, 1).unwrap(), 3).is_err());
    }

    #[test]
    fn low_degrees_of_affine() {
        let alg = Arc::new(build_affine(Signature::new(2, 2).unwrap()));
        let r = homology_dims(&alg, ComplexKind::Loday, &cfg(2)).unwrap();
        assert_eq!(r.bettis(), vec![1, 0, 0]);
        assert!(r.all_match());
        assert_eq!(cohomology_dims(&r).bettis(), r.bettis());
    }

    #[test]
    fn exact_cap_names_degree() {
        let alg = Arc::new(build_affine(Signature::new(2, 2).unwrap()));
        let config = HomologyConfig { mode: Mode::Exact, cap_exact: 100, ..cfg(2) };
        match homology_dims(&alg, ComplexKind::Loday, &config) {
            Err(Error::CapExceeded { what, .. }) => assert!(what.contains("d_3")),
            other => panic!("unexpected {other:?}"),
        }
        let (partial, err) = homology_dims_partial(&alg, ComplexKind::Loday, &config).unwrap();
        assert!(err.is_some());
        assert_eq!(partial.bettis(), vec![1, 0]);
    }

    #[test]
    fn modular_agrees_with_exact() {
        let alg = Arc::new(build_affine(Signature::new(2, 1).unwrap()));
        let exact = homology_dims(&alg, ComplexKind::Loday, &cfg(2)).unwrap();
        let modular =
            homology_dims(&alg, ComplexKind::Loday, &HomologyConfig { cap_exact: 1, ..cfg(2) }).unwrap();
        assert_eq!(exact.bettis(), modular.bettis());
        assert!(modular.disagreements().is_empty());
        assert_eq!(modular.primes.len(), 2);
    }
}
