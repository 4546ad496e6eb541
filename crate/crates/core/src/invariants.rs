//! Invariant subspaces as exact kernels of stacked action matrices, and the
//! explicit invariant elements of `h_n` and its modules.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::liealg::{build_affine, build_so, BasisLabel, LieAlgebra, Representation, Signature};
use crate::linalg::{rank_mod_p, ExactSolver, PrimeSource, SparseMatrix};
use crate::repspace::{act, stacked_action_matrix, Chain, Space};
use crate::scalar::{qi, qr, Q};

/// The algebras and modules attached to one signature.
#[derive(Clone, Debug)]
pub struct AffineContext {
    pub sig: Signature,
    pub so: Arc<LieAlgebra>,
    pub affine: Arc<LieAlgebra>,
    /// `so(p,q)` acting on itself.
    pub so_adjoint: Arc<Representation>,
    /// `so(p,q)` acting on `I_n`.
    pub so_standard: Arc<Representation>,
    /// `h_n` acting on itself.
    pub h_adjoint: Arc<Representation>,
}

impl AffineContext {
    pub fn new(sig: Signature) -> Self {
        let so = build_so(sig);
        let affine = build_affine(sig);
        Self {
            sig,
            so_adjoint: Arc::new(Representation::adjoint(&so)),
            so_standard: Arc::new(Representation::standard(sig)),
            h_adjoint: Arc::new(Representation::adjoint(&affine)),
            so: Arc::new(so),
            affine: Arc::new(affine),
        }
    }

    pub fn n(&self) -> usize {
        self.sig.n()
    }

    /// `Λ^k I_n` as an `so(p,q)`-module.
    pub fn wedge_translations(&self, k: usize) -> Space {
        Space::wedge(self.so_standard.clone(), k)
    }

    /// `I_n ⊗ Λ^k I_n` as an `so(p,q)`-module.
    pub fn translation_wedge(&self, k: usize) -> Space {
        Space::mixed(self.so_standard.clone(), self.so_standard.clone(), k).expect("same acting algebra")
    }

    /// `so(p,q) ⊗ Λ^k I_n`.
    pub fn so_wedge(&self, k: usize) -> Space {
        Space::mixed(self.so_adjoint.clone(), self.so_standard.clone(), k).expect("same acting algebra")
    }

    /// `h_n^{⊗k}` as an `h_n`-module.
    pub fn h_tensor(&self, k: usize) -> Space {
        Space::tensor(self.h_adjoint.clone(), k)
    }

    /// Index in `h_n` of the `so(p,q)` basis element `i`.
    pub fn so_to_h(&self, i: usize) -> usize {
        i + self.n()
    }

    pub fn so_index(&self, label: &BasisLabel) -> u32 {
        self.so.index_of(label).expect("canonical so label") as u32
    }
}

/// The modules whose invariants are computed, in a small textual grammar:
/// `wedge:I:k`, `tensor:h:k`, `I*wedge:k`, `so*wedge:k`, `so`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "module", content = "k", rename_all = "snake_case")]
pub enum ModuleDescriptor {
    /// `Λ^k I_n` under `so(p,q)`.
    WedgeI(usize),
    /// `h_n^{⊗k}` under all of `h_n`.
    TensorH(usize),
    /// `I_n ⊗ Λ^k I_n` under `so(p,q)`.
    IWedge(usize),
    /// `so(p,q) ⊗ Λ^k I_n` under `so(p,q)`.
    SoWedge(usize),
    /// The adjoint module of `so(p,q)`.
    SoAdjoint,
}

impl FromStr for ModuleDescriptor {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.trim().split(':').collect();
        let degree = |t: &str| t.parse::<usize>().map_err(|_| Error::Parse(format!("bad degree {t:?} in {s:?}")));
        match parts.as_slice() {
            ["wedge", "I", k] => Ok(Self::WedgeI(degree(k)?)),
            ["tensor", "h", k] => Ok(Self::TensorH(degree(k)?)),
            ["I*wedge", k] => Ok(Self::IWedge(degree(k)?)),
            ["so*wedge", k] => Ok(Self::SoWedge(degree(k)?)),
            ["so"] => Ok(Self::SoAdjoint),
            _ => Err(Error::Parse(format!(
                "unknown module descriptor {s:?}; expected wedge:I:k, tensor:h:k, I*wedge:k, so*wedge:k or so"
            ))),
        }
    }
}

impl fmt::Display for ModuleDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::WedgeI(k) => write!(f, "wedge:I:{k}"),
            Self::TensorH(k) => write!(f, "tensor:h:{k}"),
            Self::IWedge(k) => write!(f, "I*wedge:{k}"),
            Self::SoWedge(k) => write!(f, "so*wedge:{k}"),
            Self::SoAdjoint => f.write_str("so"),
        }
    }
}

impl ModuleDescriptor {
    /// The space and the acting generators.
    pub fn resolve(&self, ctx: &AffineContext) -> (Space, Vec<usize>) {
        let so_gens: Vec<usize> = (0..ctx.so.dim()).collect();
        match *self {
            Self::WedgeI(k) => (ctx.wedge_translations(k), so_gens),
            Self::TensorH(k) => (ctx.h_tensor(k), (0..ctx.affine.dim()).collect()),
            Self::IWedge(k) => (ctx.translation_wedge(k), so_gens),
            Self::SoWedge(k) => (ctx.so_wedge(k), so_gens),
            Self::SoAdjoint => (Space::tensor(ctx.so_adjoint.clone(), 1), so_gens),
        }
    }

    /// Predicted invariant dimension, when one is asserted.
    /// `None` for modules without a prediction and for the coincident
    /// `n = 4, k = 2` case of `so ⊗ Λ^k`.
    pub fn expected_dim(&self, n: usize) -> Option<usize> {
        if n < 4 {
            return None;
        }
        match *self {
            Self::WedgeI(k) => Some(usize::from(k == 0 || k == n)),
            Self::IWedge(k) => Some(usize::from(k == 1 || k == n - 1)),
            Self::SoWedge(k) if n == 4 && k == 2 => None,
            Self::SoWedge(k) => Some(usize::from(k == 2 || k == n - 2)),
            Self::SoAdjoint => Some(0),
            Self::TensorH(_) => None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum KernelMethod {
    Exact,
    /// Two-prime nullity screen reported zero; no exact elimination was run.
    ModularScreen,
}

/// Basis of `M^g` for a module `M`.
#[derive(Clone, Debug)]
pub struct InvariantBasis {
    pub space: Space,
    pub basis: Vec<Chain>,
    pub dim: usize,
    pub method: KernelMethod,
}

/// Size limits for [`invariant_subspace`].
#[derive(Clone, Copy, Debug)]
pub struct InvariantConfig {
    /// Hard cap on stacked rows.
    pub row_cap: usize,
    /// Above this many stacked rows the nullity is screened mod two primes
    /// before exact elimination.
    pub exact_rows: usize,
    pub seed: u64,
}

impl Default for InvariantConfig {
    fn default() -> Self {
        Self { row_cap: 2_000_000, exact_rows: 100_000, seed: 0 }
    }
}

/// `{m : [m, e_x] = 0 for every x in generators}` as an exact kernel.
pub fn invariant_subspace(space: &Space, generators: &[usize], config: &InvariantConfig) -> Result<InvariantBasis> {
    let rows = generators.len() * space.dim();
    if rows > config.row_cap {
        return Err(Error::CapExceeded {
            what: format!("stacked action rows for {space} ({} generators x {} words)", generators.len(), space.dim()),
            size: rows,
            cap: config.row_cap,
        });
    }
    let stacked = stacked_action_matrix(space, generators)?;
    if rows > config.exact_rows {
        let mut primes = PrimeSource::new(config.seed);
        let nullities = (0..2)
            .map(|_| rank_mod_p(&stacked, primes.next_prime()).map(|c| space.dim() - c.rank))
            .collect::<Result<Vec<_>>>()?;
        if nullities.iter().all(|&k| k == 0) {
            return Ok(InvariantBasis { space: space.clone(), basis: Vec::new(), dim: 0, method: KernelMethod::ModularScreen });
        }
    }
    let kernel = ExactSolver::default().kernel_basis(&stacked)?;
    let basis: Vec<Chain> = kernel.iter().map(|v| Chain::from_vector(space.clone(), v)).collect();
    for c in &basis {
        if !is_invariant(c, generators)? {
            return Err(Error::Malformed(format!("kernel vector of {space} is not invariant")));
        }
    }
    Ok(InvariantBasis { space: space.clone(), dim: basis.len(), basis, method: KernelMethod::Exact })
}

/// Invariants of a described module for a signature.
pub fn invariants_of(ctx: &AffineContext, module: ModuleDescriptor, config: &InvariantConfig) -> Result<InvariantBasis> {
    let (space, gens) = module.resolve(ctx);
    invariant_subspace(&space, &gens, config)
}

/// Whether every listed generator annihilates `chain` (matrix-free, exact).
pub fn is_invariant(chain: &Chain, generators: &[usize]) -> Result<bool> {
    for &x in generators {
        if !act(x, chain)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Whether the chains are linearly independent.
pub fn are_independent(chains: &[Chain]) -> Result<bool> {
    let Some(first) = chains.first() else { return Ok(true) };
    let columns = chains.iter().map(|c| c.to_vector()).collect();
    let m = SparseMatrix::from_columns(first.space().dim(), columns);
    Ok(ExactSolver::default().rank(&m)?.rank == chains.len())
}

/// Whether `chain` lies in the span of `basis`.
pub fn in_span(chain: &Chain, basis: &[Chain]) -> Result<bool> {
    let columns = basis.iter().map(|c| c.to_vector()).collect();
    let m = SparseMatrix::from_columns(chain.space().dim(), columns);
    Ok(ExactSolver::default().solve(&m, &chain.to_vector())?.is_some())
}

fn sign_pow(e: usize) -> i64 {
    if e.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

fn factorial(n: usize) -> i64 {
    (1..=n as i64).product()
}

/// Volume element `∂_1∧…∧∂_n`.
pub fn make_alpha(ctx: &AffineContext) -> Chain {
    let n = ctx.n() as u32;
    Chain::from_terms(ctx.wedge_translations(ctx.n()), [((0..n).collect(), qi(1))]).expect("volume word")
}

/// `Σ_σ sgn(σ) ∂_σ(1)⊗…⊗∂_σ(n)` in `h_n^{⊗n}`.
pub fn make_alpha_tilde(ctx: &AffineContext) -> Chain {
    let n = ctx.n();
    let mut c = Chain::zero(ctx.h_tensor(n));
    for perm in crate::repspace::permutations_of(n) {
        let sign = crate::repspace::permutation_sign(&perm);
        let word = perm.iter().map(|&i| i as u32).collect();
        c.add_term(word, qi(sign as i64)).expect("translation word");
    }
    c
}

/// `Σ_{i≤p} ∂_i⊗∂_i − Σ_{i>p} ∂_i⊗∂_i` in `I ⊗ Λ^1 I`.
pub fn make_delta(ctx: &AffineContext) -> Chain {
    let terms = (1..=ctx.n()).map(|i| (vec![(i - 1) as u32, (i - 1) as u32], qi(ctx.sig.form_sign(i))));
    Chain::from_terms(ctx.translation_wedge(1), terms).expect("delta words")
}

fn beta_with(ctx: &AffineContext, block_sign: bool) -> Chain {
    let n = ctx.n();
    let terms = (1..=n).map(|m| {
        let mut word = vec![(m - 1) as u32];
        word.extend((1..=n).filter(|&i| i != m).map(|i| (i - 1) as u32));
        let s = if block_sign { ctx.sig.form_sign(m) } else { 1 };
        (word, qi(s * sign_pow(m - 1)))
    });
    Chain::from_terms(ctx.translation_wedge(n - 1), terms).expect("beta words")
}

/// `Σ_m (−1)^{m−1} ∂_m ⊗ ∂_1∧…∂̂_m…∧∂_n`.
pub fn make_beta(ctx: &AffineContext) -> Chain {
    beta_with(ctx, false)
}

/// Variant with an extra `−1` on the `q`-block terms. Not invariant when
/// `q ≥ 1`; kept so reports can show the difference.
pub fn make_beta_block_signed(ctx: &AffineContext) -> Chain {
    beta_with(ctx, true)
}

/// Sign of the `so(p,q)` element `e` in the rank-2 invariant, by block:
/// `+` on the first rotation block, `−` on the second, `+` on boosts.
fn rho_sign(label: &BasisLabel, p: usize) -> i64 {
    match *label {
        BasisLabel::RotationX(i, _) if i > p => -1,
        _ => 1,
    }
}

/// `Σ X_ij⊗∂_i∧∂_j (i<j≤p) − Σ X_ij⊗∂_i∧∂_j (p<i<j) + Σ Y_ij⊗∂_i∧∂_j`.
pub fn make_rho(ctx: &AffineContext) -> Chain {
    let terms = ctx.sig.so_labels().into_iter().map(|l| {
        let (i, j) = pair(&l);
        (vec![ctx.so_index(&l), (i - 1) as u32, (j - 1) as u32], qi(rho_sign(&l, ctx.sig.p)))
    });
    Chain::from_terms(ctx.so_wedge(2), terms).expect("rho words")
}

fn pair(label: &BasisLabel) -> (usize, usize) {
    match *label {
        BasisLabel::RotationX(i, j) | BasisLabel::BoostY(i, j) => (i, j),
        _ => unreachable!("so(p,q) label"),
    }
}

/// Coefficient of `e ⊗ (∂'s except i, j)` in the degree-`n−2` invariant:
/// `(−1)^{i+j+1}` on the first rotation block, `−(−1)^{i+j+1}` on the
/// second, `(−1)^{i+j}` on boosts.
pub fn gamma_sign(label: &BasisLabel, p: usize) -> i64 {
    let (i, j) = pair(label);
    match *label {
        BasisLabel::RotationX(..) if i <= p => sign_pow(i + j + 1),
        BasisLabel::RotationX(..) => -sign_pow(i + j + 1),
        _ => sign_pow(i + j),
    }
}

/// Variant whose second-block sign is `−(−1)^{i+j+p+1}`. Agrees with
/// [`gamma_sign`] for even `p`.
pub fn gamma_sign_p_shifted(label: &BasisLabel, p: usize) -> i64 {
    match *label {
        BasisLabel::RotationX(i, _) if i > p => gamma_sign(label, p) * sign_pow(p),
        _ => gamma_sign(label, p),
    }
}

fn complement(n: usize, i: usize, j: usize) -> Vec<u32> {
    (1..=n).filter(|&m| m != i && m != j).map(|m| (m - 1) as u32).collect()
}

fn gamma_with(ctx: &AffineContext, sign: fn(&BasisLabel, usize) -> i64) -> Chain {
    let n = ctx.n();
    let terms = ctx.sig.so_labels().into_iter().map(|l| {
        let (i, j) = pair(&l);
        let mut word = vec![ctx.so_index(&l)];
        word.extend(complement(n, i, j));
        (word, qi(sign(&l, ctx.sig.p)))
    });
    Chain::from_terms(ctx.so_wedge(n - 2), terms).expect("gamma words")
}

/// `Σ gamma_sign(e) e ⊗ ∂_1∧…∂̂_i…∂̂_j…∧∂_n` in `so ⊗ Λ^{n−2} I`.
pub fn make_gamma(ctx: &AffineContext) -> Chain {
    gamma_with(ctx, gamma_sign)
}

/// The same sum with [`gamma_sign_p_shifted`] coefficients.
pub fn make_gamma_p_shifted(ctx: &AffineContext) -> Chain {
    gamma_with(ctx, gamma_sign_p_shifted)
}

/// Whether the `1/n!` prefactor is kept or cleared.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Normalization {
    /// Coefficients `±1/n!`.
    Exact,
    /// Multiplied by `n!`: coefficients `±1`, safe for modular pipelines.
    IntegerScaled,
}

/// Alternating tensor with the `so(p,q)` factor first (`leading = true`) or
/// last, over `h_n^{⊗(n−1)}`.
///
/// For each `e ∈ {X_ij, Y_ij}` with complement `c_1 < … < c_{n−2}` of
/// `{i, j}`, and each bijection `σ` of the complement slots,
/// the word carries `gamma_sign(e) · sgn(σ)` (times `1/n!` when exact).
fn gamma_tensor(ctx: &AffineContext, leading: bool, norm: Normalization) -> Chain {
    let n = ctx.n();
    let scale = match norm {
        Normalization::Exact => qr(1, factorial(n)),
        Normalization::IntegerScaled => qi(1),
    };
    let perms = crate::repspace::permutations_of(n - 2);
    let mut c = Chain::zero(ctx.h_tensor(n - 1));
    for l in ctx.sig.so_labels() {
        let (i, j) = pair(&l);
        let comp = complement(n, i, j);
        let e = ctx.so_to_h(ctx.so_index(&l) as usize) as u32;
        let base = qi(gamma_sign(&l, ctx.sig.p)) * &scale;
        for perm in &perms {
            let mut word: Vec<u32> = perm.iter().map(|&k| comp[k]).collect();
            if leading {
                word.insert(0, e);
            } else {
                word.push(e);
            }
            let coef = if crate::repspace::permutation_sign(perm) > 0 { base.clone() } else { -base.clone() };
            c.add_term(word, coef).expect("gamma tensor word");
        }
    }
    c
}

/// `γ̄`: the alternating tensor with the `so(p,q)` factor first.
pub fn make_gamma_bar(ctx: &AffineContext, norm: Normalization) -> Chain {
    gamma_tensor(ctx, true, norm)
}

/// `γ̄′`: the same with the `so(p,q)` factor last.
pub fn make_gamma_bar_prime(ctx: &AffineContext, norm: Normalization) -> Chain {
    gamma_tensor(ctx, false, norm)
}

/// `γ̄ + sign · γ̄′`.
pub fn make_gamma_tilde(ctx: &AffineContext, sign: i32, norm: Normalization) -> Chain {
    let bar = make_gamma_bar(ctx, norm);
    bar.add_scaled(&qi(sign.signum() as i64), &make_gamma_bar_prime(ctx, norm)).expect("same space")
}

/// Which combinations `γ̄ ± γ̄′` are annihilated by all of `h_n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct GammaSignResolution {
    pub plus_invariant: bool,
    pub minus_invariant: bool,
}

impl GammaSignResolution {
    /// The unique invariant sign, if exactly one survives.
    pub fn resolved(&self) -> Option<i32> {
        match (self.plus_invariant, self.minus_invariant) {
            (true, false) => Some(1),
            (false, true) => Some(-1),
            _ => None,
        }
    }
}

/// Tests both signs for `h_n`-invariance.
pub fn resolve_gamma_sign(ctx: &AffineContext) -> Result<GammaSignResolution> {
    let gens: Vec<usize> = (0..ctx.affine.dim()).collect();
    let check = |s| is_invariant(&make_gamma_tilde(ctx, s, Normalization::IntegerScaled), &gens);
    Ok(GammaSignResolution { plus_invariant: check(1)?, minus_invariant: check(-1)? })
}

/// Projection `h_n^{⊗(n−1)} → so ⊗ Λ^{n−2} I`: keeps words whose first
/// factor is in `so(p,q)` and whose remaining factors are translations, and
/// antisymmetrizes the tail.
pub fn project_leading(ctx: &AffineContext, chain: &Chain) -> Result<Chain> {
    let n = ctx.n();
    let k = chain.space().degree().checked_sub(1).ok_or_else(|| Error::OutOfRange("empty tensor".into()))?;
    chain.project(ctx.so_wedge(k), |pos, f| {
        let f = f as usize;
        match (pos, f >= n) {
            (0, true) => Some((f - n) as u32),
            (0, false) => None,
            (_, false) => Some(f as u32),
            (_, true) => None,
        }
    })
}

/// Projection `h_n^{⊗k} → Λ^k I` keeping only all-translation words.
pub fn antisymmetrize_translations(ctx: &AffineContext, chain: &Chain) -> Result<Chain> {
    let n = ctx.n();
    chain.project(ctx.wedge_translations(chain.space().degree()), |_, f| ((f as usize) < n).then_some(f))
}

/// `e ⊗ ∂_i∧∂_j ↦ e ⊗ ½(∂_i⊗∂_j − ∂_j⊗∂_i)` from `so ⊗ Λ^k I` into `h_n^{⊗(k+1)}`.
pub fn so_wedge_to_tensor(ctx: &AffineContext, chain: &Chain) -> Result<Chain> {
    let k = chain.space().degree();
    chain.alternating_embedding(ctx.h_tensor(k + 1), |pos, f| Some(if pos == 0 { ctx.so_to_h(f as usize) as u32 } else { f }))
}

/// Scalar `s` with `chain = s · reference`, if any.
pub fn proportionality(chain: &Chain, reference: &Chain) -> Option<Q> {
    chain.proportional_to(reference).filter(|s| !s.is_zero())
}
