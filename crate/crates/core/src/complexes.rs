//! Loday and Chevalley–Eilenberg chain complexes.
//!
//! Loday: `C_k = g^{⊗k}` with
//! `d(h_1⊗…⊗h_k) = Σ_{i<j} (−1)^j h_1⊗…⊗[h_i,h_j]⊗…ĥ_j…⊗h_k`
//! (the bracket replaces `h_i`; `d_1 = 0`).
//!
//! Chevalley–Eilenberg with coefficients in a module `M`, right action
//! `[m, x] = −ρ(x) m`: `C_k = M ⊗ Λ^k g` with
//! `d(m⊗x_1∧…∧x_k) = Σ_i (−1)^i [m,x_i]⊗…x̂_i… + Σ_{i<j} (−1)^{i+j+1} m⊗[x_i,x_j]∧…x̂_i…x̂_j…`,
//! the negative of the usual right-module differential.
//!
//! Antisymmetrization `g^{⊗k} → Λ^k g` then satisfies `π∘d_Loday = d_CE∘π`
//! for trivial coefficients.

use std::collections::BTreeMap;
use std::sync::Arc;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::liealg::{Grade, LieAlgebra, Representation};
use crate::linalg::{ExactSolver, SparseMatrix};
use crate::repspace::{Chain, Space, Word};
use crate::scalar::{collect_sparse, SparseVector, Q};

/// Emits the Loday boundary terms of one word: `(target, negate, coefficient)`.
pub(crate) fn loday_terms<T>(table: &[Vec<(usize, T)>], dim: usize, word: &[u32], mut emit: impl FnMut(&[u32], bool, &T)) {
    let k = word.len();
    let mut target = Vec::with_capacity(k.saturating_sub(1));
    for j in 1..k {
        // 1-based position j+1 carries (−1)^{j+1}
        let negate = j % 2 == 0;
        for i in 0..j {
            for (c, coef) in &table[word[i] as usize * dim + word[j] as usize] {
                target.clear();
                target.extend_from_slice(&word[..j]);
                target[i] = *c as u32;
                target.extend_from_slice(&word[j + 1..]);
                emit(&target, negate, coef);
            }
        }
    }
}

/// Words of `g^{⊗k}` grouped by total grade.
///
/// Any boundary built from the bracket maps a grade block of degree `k` into
/// the block of the same grade in degree `k − 1`, so ranks and solves split
/// along blocks.
pub struct GradedTensorBasis {
    pub degree: usize,
    pub blocks: BTreeMap<Grade, Vec<usize>>,
    /// Position of each word (by rank) inside its block.
    pub local: Vec<u32>,
    pub grade_of: Vec<Grade>,
}

impl GradedTensorBasis {
    pub fn new(grades: &[Grade], degree: usize) -> Self {
        let dim = grades.len();
        let total = dim.pow(degree as u32);
        let grade_of: Vec<Grade> = (0..total)
            .into_par_iter()
            .map(|mut r| {
                let mut g = Grade::default();
                for _ in 0..degree {
                    g = g.combine(grades[r % dim]);
                    r /= dim;
                }
                g
            })
            .collect();
        let mut blocks: BTreeMap<Grade, Vec<usize>> = BTreeMap::new();
        let mut local = vec![0u32; total];
        for (r, g) in grade_of.iter().enumerate() {
            let b = blocks.entry(*g).or_default();
            local[r] = b.len() as u32;
            b.push(r);
        }
        Self { degree, blocks, local, grade_of }
    }

    pub fn block_len(&self, g: &Grade) -> usize {
        self.blocks.get(g).map_or(0, Vec::len)
    }
}

/// The Loday complex of a Lie (or Leibniz) algebra.
#[derive(Clone, Debug)]
pub struct LodayComplex {
    algebra: Arc<LieAlgebra>,
    adjoint: Arc<Representation>,
}

impl LodayComplex {
    pub fn new(algebra: Arc<LieAlgebra>) -> Self {
        let adjoint = Arc::new(Representation::adjoint(&algebra));
        Self { algebra, adjoint }
    }

    /// Shares an existing adjoint module so chains built elsewhere match.
    pub fn with_adjoint(algebra: Arc<LieAlgebra>, adjoint: Arc<Representation>) -> Self {
        Self { algebra, adjoint }
    }

    pub fn algebra(&self) -> &Arc<LieAlgebra> {
        &self.algebra
    }

    pub fn space(&self, k: usize) -> Space {
        Space::tensor(self.adjoint.clone(), k)
    }

    /// Grades usable for block decomposition: the algebra's own when the
    /// bracket respects them, trivial otherwise.
    pub fn grades(&self) -> Vec<Grade> {
        if self.algebra.grading_is_consistent() {
            self.algebra.grades().to_vec()
        } else {
            vec![Grade::default(); self.algebra.dim()]
        }
    }

    fn word_boundary(&self, word: &[u32]) -> Vec<(Word, Q)> {
        let mut out = Vec::new();
        loday_terms(self.algebra.bracket_table(), self.algebra.dim(), word, |t, neg, c| {
            out.push((t.to_vec(), if neg { -c.clone() } else { c.clone() }));
        });
        out
    }

    /// Matrix-free boundary of a chain in degree `k ≥ 1`.
    pub fn apply(&self, chain: &Chain) -> Result<Chain> {
        let k = chain.space().degree();
        if chain.space() != &self.space(k) {
            return Err(Error::SpaceMismatch { expected: self.space(k).to_string(), found: chain.space().to_string() });
        }
        let mut out = Chain::zero(self.space(k.saturating_sub(1)));
        if k <= 1 {
            return Ok(out);
        }
        for (w, c) in chain.terms() {
            for (t, v) in self.word_boundary(w) {
                out.add_term(t, c * v)?;
            }
        }
        Ok(out)
    }

    /// Assembled `d_k : C_k → C_{k−1}`.
    pub fn boundary_matrix(&self, k: usize) -> SparseMatrix<Q> {
        let src = self.space(k);
        let dst = self.space(k.saturating_sub(1));
        if k <= 1 {
            return SparseMatrix::zeros(if k == 0 { 0 } else { 1 }, src.dim());
        }
        let columns = (0..src.dim())
            .into_par_iter()
            .map(|r| collect_sparse(self.word_boundary(&src.unrank(r)).into_iter().map(|(t, v)| (dst.rank(&t), v))))
            .collect();
        SparseMatrix::from_columns(dst.dim(), columns)
    }

    /// The restriction of `d_k` to one grade block, in local coordinates.
    pub fn boundary_block(&self, src: &GradedTensorBasis, dst: &GradedTensorBasis, grade: &Grade) -> SparseMatrix<Q> {
        let k = src.degree;
        let space_src = self.space(k);
        let space_dst = self.space(k - 1);
        let cols = src.blocks.get(grade).map(Vec::as_slice).unwrap_or(&[]);
        let columns = cols
            .par_iter()
            .map(|&r| {
                collect_sparse(
                    self.word_boundary(&space_src.unrank(r))
                        .into_iter()
                        .map(|(t, v)| (dst.local[space_dst.rank(&t)] as usize, v)),
                )
            })
            .collect();
        SparseMatrix::from_columns(dst.block_len(grade), columns)
    }

    /// Splits a chain into its grade components.
    pub fn grade_components(&self, chain: &Chain) -> BTreeMap<Grade, Chain> {
        let grades = self.grades();
        let mut out: BTreeMap<Grade, Chain> = BTreeMap::new();
        for (w, c) in chain.terms() {
            let g = w.iter().fold(Grade::default(), |acc, &f| acc.combine(grades[f as usize]));
            out.entry(g)
                .or_insert_with(|| Chain::zero(chain.space().clone()))
                .add_term(w.clone(), c.clone())
                .expect("same space");
        }
        out
    }
}

/// The Chevalley–Eilenberg complex of `g` with coefficients in `M`.
#[derive(Clone, Debug)]
pub struct CeComplex {
    algebra: Arc<LieAlgebra>,
    module: Arc<Representation>,
    adjoint: Arc<Representation>,
}

impl CeComplex {
    /// Fails with a module-law error when `M` is not a `g`-module.
    pub fn new(algebra: Arc<LieAlgebra>, module: Arc<Representation>) -> Result<Self> {
        module.check_module_law(&algebra)?;
        let adjoint = Arc::new(Representation::adjoint(&algebra));
        Ok(Self { algebra, module, adjoint })
    }

    pub fn space(&self, k: usize) -> Space {
        Space::mixed(self.module.clone(), self.adjoint.clone(), k).expect("same acting algebra")
    }

    fn word_boundary(&self, word: &[u32], mut emit: impl FnMut(Word, Q)) {
        let m = word[0] as usize;
        let xs = &word[1..];
        let k = xs.len();
        for i in 0..k {
            // (−1)^{i+1} [m, x_i] = (−1)^i ρ(x_i) m with 0-based i
            let sign_neg = i % 2 == 1;
            for (r, c) in self.module.image(xs[i] as usize, m) {
                let mut w = vec![*r as u32];
                w.extend(xs.iter().enumerate().filter(|(t, _)| *t != i).map(|(_, &x)| x));
                emit(w, if sign_neg { -c.clone() } else { c.clone() });
            }
        }
        for i in 0..k {
            for j in i + 1..k {
                let sign_neg = (i + j) % 2 == 0;
                for (c, v) in self.algebra.bracket(xs[i] as usize, xs[j] as usize) {
                    let mut w = vec![word[0], *c as u32];
                    w.extend(xs.iter().enumerate().filter(|(t, _)| *t != i && *t != j).map(|(_, &x)| x));
                    emit(w, if sign_neg { -v.clone() } else { v.clone() });
                }
            }
        }
    }

    pub fn apply(&self, chain: &Chain) -> Result<Chain> {
        let k = chain.space().degree();
        if chain.space() != &self.space(k) {
            return Err(Error::SpaceMismatch { expected: self.space(k).to_string(), found: chain.space().to_string() });
        }
        let mut out = Chain::zero(self.space(k.saturating_sub(1)));
        if k == 0 {
            return Ok(out);
        }
        let mut err = None;
        for (w, c) in chain.terms() {
            self.word_boundary(w, |t, v| {
                if let Err(e) = out.add_term(t, c * v) {
                    err = Some(e);
                }
            });
        }
        err.map_or(Ok(out), Err)
    }

    pub fn boundary_matrix(&self, k: usize) -> SparseMatrix<Q> {
        let src = self.space(k);
        let dst = self.space(k.saturating_sub(1));
        if k == 0 {
            return SparseMatrix::zeros(0, src.dim());
        }
        let columns = (0..src.dim())
            .into_par_iter()
            .map(|r| {
                let mut single = Chain::zero(dst.clone());
                self.word_boundary(&src.unrank(r), |t, v| single.add_term(t, v).expect("boundary stays in space"));
                single.to_vector()
            })
            .collect();
        SparseMatrix::from_columns(dst.dim(), columns)
    }
}

/// Either complex behind one interface.
#[derive(Clone, Debug)]
pub enum ChainComplex {
    Loday(LodayComplex),
    ChevalleyEilenberg(CeComplex),
}

impl ChainComplex {
    pub fn space(&self, k: usize) -> Space {
        match self {
            Self::Loday(c) => c.space(k),
            Self::ChevalleyEilenberg(c) => c.space(k),
        }
    }

    pub fn apply(&self, chain: &Chain) -> Result<Chain> {
        match self {
            Self::Loday(c) => c.apply(chain),
            Self::ChevalleyEilenberg(c) => c.apply(chain),
        }
    }

    pub fn boundary_matrix(&self, k: usize) -> SparseMatrix<Q> {
        match self {
            Self::Loday(c) => c.boundary_matrix(k),
            Self::ChevalleyEilenberg(c) => c.boundary_matrix(k),
        }
    }
}

/// `d(chain) = 0`, exactly.
pub fn is_cycle(complex: &ChainComplex, chain: &Chain) -> Result<bool> {
    Ok(complex.apply(chain)?.is_zero())
}

/// Solves `d(x) = chain` exactly. Returns a witness preimage, or `None` when
/// the chain is certified not to be a boundary.
///
/// Loday complexes are solved block by block over the grade components of
/// the chain; `solver.col_cap` bounds the columns of each solve.
pub fn is_boundary(complex: &ChainComplex, chain: &Chain, solver: &ExactSolver) -> Result<Option<Chain>> {
    let k = chain.space().degree();
    let target = complex.space(k + 1);
    if chain.space() != &complex.space(k) {
        return Err(Error::SpaceMismatch { expected: complex.space(k).to_string(), found: chain.space().to_string() });
    }
    match complex {
        ChainComplex::Loday(loday) => {
            if k == 0 {
                // d_1 = 0
                return Ok(chain.is_zero().then(|| Chain::zero(target)));
            }
            let grades = loday.grades();
            let src = GradedTensorBasis::new(&grades, k + 1);
            let dst = GradedTensorBasis::new(&grades, k);
            let mut witness = Chain::zero(target.clone());
            for (g, component) in loday.grade_components(chain) {
                let block = loday.boundary_block(&src, &dst, &g);
                let rhs: SparseVector = {
                    let space = chain.space();
                    let mut v: SparseVector =
                        component.terms().iter().map(|(w, c)| (dst.local[space.rank(w)] as usize, c.clone())).collect();
                    v.sort_by_key(|(i, _)| *i);
                    v
                };
                match solver.solve(&block, &rhs)? {
                    None => return Ok(None),
                    Some(x) => {
                        let cols = &src.blocks[&g];
                        for (j, c) in x {
                            witness.add_term(target.unrank(cols[j]), c)?;
                        }
                    }
                }
            }
            Ok(Some(witness))
        }
        ChainComplex::ChevalleyEilenberg(ce) => {
            let m = ce.boundary_matrix(k + 1);
            Ok(solver.solve(&m, &chain.to_vector())?.map(|x| Chain::from_vector(target, &x)))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::liealg::{build_abelian, build_affine, BasisLabel, Signature};
    use crate::scalar::qi;

    fn h(p: usize, q: usize) -> Arc<LieAlgebra> {
        Arc::new(build_affine(Signature::new(p, q).unwrap()))
    }

    #[test]
    fn loday_degree_two_example() {
        let alg = h(3, 1);
        let lc = LodayComplex::new(alg.clone());
        let x12 = alg.index_of(&BasisLabel::RotationX(1, 2)).unwrap() as u32;
        let c = Chain::from_terms(lc.space(2), [(vec![0, x12], qi(1))]).unwrap();
        let d = lc.apply(&c).unwrap();
        assert_eq!(d, Chain::from_terms(lc.space(1), [(vec![1], qi(-1))]).unwrap());
    }

    #[test]
    fn abelian_boundary_vanishes() {
        let lc = LodayComplex::new(Arc::new(build_abelian(3).unwrap()));
        for k in 0..4 {
            assert_eq!(lc.boundary_matrix(k).nnz(), 0);
        }
    }

    #[test]
    fn ce_example() {
        let alg = h(3, 1);
        let i4 = Arc::new(build_abelian(4).unwrap());
        let module = Arc::new(Representation::adjoint_restricted(&alg, &alg.translation_indices()));
        let ce = CeComplex::new(i4, module).unwrap();
        let x12 = alg.index_of(&BasisLabel::RotationX(1, 2)).unwrap() as u32;
        let c = Chain::from_terms(ce.space(1), [(vec![x12, 0], qi(1))]).unwrap();
        let d = ce.apply(&c).unwrap();
        assert_eq!(d, Chain::from_terms(ce.space(0), [(vec![1], qi(-1))]).unwrap());
    }

    #[test]
    fn matrix_and_matrix_free_agree() {
        let alg = h(2, 1);
        let lc = LodayComplex::new(alg.clone());
        let m = lc.boundary_matrix(3);
        for r in (0..lc.space(3).dim()).step_by(7) {
            let c = Chain::from_vector(lc.space(3), &[(r, qi(1))]);
            assert_eq!(lc.apply(&c).unwrap().to_vector(), m.mul_vec(&[(r, qi(1))]));
        }
    }

    #[test]
    fn blocks_reassemble_boundary() {
        let alg = h(2, 2);
        let lc = LodayComplex::new(alg.clone());
        let grades = lc.grades();
        let src = GradedTensorBasis::new(&grades, 3);
        let dst = GradedTensorBasis::new(&grades, 2);
        let full = ExactSolver::default().rank(&lc.boundary_matrix(3)).unwrap().rank;
        let blocked: usize = src
            .blocks
            .keys()
            .map(|g| ExactSolver::default().rank(&lc.boundary_block(&src, &dst, g)).unwrap().rank)
            .sum();
        assert_eq!(full, blocked);
    }

    #[test]
    fn boundary_witness_and_refusal() {
        let alg = h(2, 2);
        let complex = ChainComplex::Loday(LodayComplex::new(alg.clone()));
        // d(∂1 ⊗ Y13) = (+1)[∂1, Y13] = ∂3, so ∂3 is a boundary
        let target = Chain::from_terms(complex.space(1), [(vec![2], qi(1))]).unwrap();
        let x = is_boundary(&complex, &target, &ExactSolver::default()).unwrap().unwrap();
        assert_eq!(complex.apply(&x).unwrap(), target);
        let abelian = ChainComplex::Loday(LodayComplex::new(Arc::new(build_abelian(2).unwrap())));
        let c = Chain::from_terms(abelian.space(1), [(vec![0], qi(1))]).unwrap();
        assert!(is_boundary(&abelian, &c, &ExactSolver::default()).unwrap().is_none());
    }

    #[test]
    fn invalid_module_rejected() {
        let alg = h(2, 1);
        let mut bad = Representation::adjoint(&alg);
        bad.set_image(3, 0, vec![(0, qi(1))]);
        assert!(matches!(CeComplex::new(alg, Arc::new(bad)), Err(Error::ModuleLaw { .. })));
    }
}
