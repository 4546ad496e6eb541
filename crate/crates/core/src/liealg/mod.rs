//! Lie algebras as tables of exact structure constants.
//!
//! Canonical basis ordering for the affine algebra: translations `∂_1..∂_n`,
//! then rotations `X_ij` (the `1..p` block before the `p+1..n` block, each
//! lexicographic), then boosts `Y_ij` lexicographic. `so(p,q)` uses the same
//! ordering without the translations.

mod representation;
mod vector_field;

pub use representation::Representation;
pub use vector_field::AffineVectorField;

use std::collections::HashMap;
use std::fmt;

use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::scalar::{axpy, collect_sparse, q_is_integer, qi, SparseVector, Q};

/// Signature `(p, q)` of the form `x_1 y_1 + … + x_p y_p − x_{p+1} y_{p+1} − … − x_n y_n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Signature {
    pub p: usize,
    pub q: usize,
}

impl Signature {
    pub fn new(p: usize, q: usize) -> Result<Self> {
        let fail = |reason: &str| Error::InvalidSignature { p, q, reason: reason.into() };
        if p < 1 {
            return Err(fail("p must be at least 1"));
        }
        if p + q < 2 {
            return Err(fail("n = p + q must be at least 2"));
        }
        Ok(Self { p, q })
    }

    pub fn n(&self) -> usize {
        self.p + self.q
    }

    /// Range in which the invariant and homology predictions apply: `n ≥ 4`, `q ≥ 1`.
    pub fn require_invariant_range(&self) -> Result<()> {
        if self.n() < 4 || self.q < 1 {
            return Err(Error::InvalidSignature {
                p: self.p,
                q: self.q,
                reason: "verification requires n >= 4 and q >= 1".into(),
            });
        }
        Ok(())
    }

    /// `+1` for `i ≤ p`, `−1` otherwise (1-based).
    pub fn form_sign(&self, i: usize) -> i64 {
        if i <= self.p {
            1
        } else {
            -1
        }
    }

    /// The `so(p,q)` labels in canonical order.
    pub fn so_labels(&self) -> Vec<BasisLabel> {
        let (p, n) = (self.p, self.n());
        let mut out = Vec::with_capacity(n * (n - 1) / 2);
        for i in 1..=p {
            for j in i + 1..=p {
                out.push(BasisLabel::RotationX(i, j));
            }
        }
        for i in p + 1..=n {
            for j in i + 1..=n {
                out.push(BasisLabel::RotationX(i, j));
            }
        }
        for i in 1..=p {
            for j in p + 1..=n {
                out.push(BasisLabel::BoostY(i, j));
            }
        }
        out
    }

    pub fn affine_labels(&self) -> Vec<BasisLabel> {
        (1..=self.n()).map(BasisLabel::Translation).chain(self.so_labels()).collect()
    }

    pub fn is_valid_label(&self, label: &BasisLabel) -> bool {
        let (p, n) = (self.p, self.n());
        match *label {
            BasisLabel::Translation(i) => (1..=n).contains(&i),
            BasisLabel::RotationX(i, j) => i < j && ((1..=p).contains(&j) || (i > p && j <= n)),
            BasisLabel::BoostY(i, j) => (1..=p).contains(&i) && (p + 1..=n).contains(&j),
            BasisLabel::Generic(_) => false,
        }
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.p, self.q)
    }
}

/// A named basis element: `∂_i`, `X_ij`, `Y_ij` (1-based), or an opaque label.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BasisLabel {
    Translation(usize),
    RotationX(usize, usize),
    BoostY(usize, usize),
    Generic(String),
}

impl BasisLabel {
    pub fn is_translation(&self) -> bool {
        matches!(self, BasisLabel::Translation(_))
    }
}

impl fmt::Display for BasisLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let pair = |f: &mut fmt::Formatter<'_>, c: char, i: usize, j: usize| {
            if i < 10 && j < 10 {
                write!(f, "{c}{i}{j}")
            } else {
                write!(f, "{c}({i},{j})")
            }
        };
        match self {
            BasisLabel::Translation(i) => write!(f, "d{i}"),
            BasisLabel::RotationX(i, j) => pair(f, 'X', *i, *j),
            BasisLabel::BoostY(i, j) => pair(f, 'Y', *i, *j),
            BasisLabel::Generic(s) => f.write_str(s),
        }
    }
}

/// Which construction produced an algebra; canonical kinds can be re-derived
/// from vector fields during validation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum AlgebraKind {
    Abelian { n: usize },
    So { p: usize, q: usize },
    Affine { p: usize, q: usize },
    Extension,
    Generic,
}

/// Homogeneous degree of a basis element for the gradings the bracket
/// respects: `weight` adds, `parity` adds in `(Z/2)^n`.
///
/// For the canonical bases, `weight` counts translations and `parity` records
/// which coordinates flip sign under `x_i ↦ −x_i`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Grade {
    pub weight: u32,
    pub parity: u64,
}

impl Grade {
    pub fn combine(self, other: Grade) -> Grade {
        Grade { weight: self.weight + other.weight, parity: self.parity ^ other.parity }
    }
}

/// Finite-dimensional Lie algebra stored as sparse rational structure constants.
#[derive(Clone, Debug)]
pub struct LieAlgebra {
    name: String,
    kind: AlgebraKind,
    labels: Vec<BasisLabel>,
    /// `brackets[a * dim + b]` is `[e_a, e_b]`.
    brackets: Vec<SparseVector>,
    grades: Vec<Grade>,
    index: HashMap<BasisLabel, usize>,
}

impl LieAlgebra {
    /// Builds an algebra from an explicit bracket table. No validation is
    /// performed; see [`LieAlgebra::validate`].
    pub fn from_structure(
        name: impl Into<String>,
        labels: Vec<BasisLabel>,
        brackets: Vec<SparseVector>,
    ) -> Result<Self> {
        let dim = labels.len();
        if brackets.len() != dim * dim {
            return Err(Error::Malformed(format!(
                "bracket table has {} entries, expected {}",
                brackets.len(),
                dim * dim
            )));
        }
        for v in &brackets {
            if v.iter().any(|(i, c)| *i >= dim || c.is_zero()) || v.windows(2).any(|w| w[0].0 >= w[1].0) {
                return Err(Error::Malformed("bracket vectors must be sorted, in range, zero-free".into()));
            }
        }
        Ok(Self::assemble(name.into(), AlgebraKind::Generic, labels, brackets, None))
    }

    fn assemble(
        name: String,
        kind: AlgebraKind,
        labels: Vec<BasisLabel>,
        brackets: Vec<SparseVector>,
        grades: Option<Vec<Grade>>,
    ) -> Self {
        let index = labels.iter().cloned().enumerate().map(|(i, l)| (l, i)).collect();
        let grades = grades.unwrap_or_else(|| vec![Grade::default(); labels.len()]);
        Self { name, kind, labels, brackets, grades, index }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn kind(&self) -> &AlgebraKind {
        &self.kind
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[BasisLabel] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &BasisLabel {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &BasisLabel) -> Option<usize> {
        self.index.get(label).copied()
    }

    pub fn grades(&self) -> &[Grade] {
        &self.grades
    }

    /// `[e_a, e_b]` as a sparse vector.
    pub fn bracket(&self, a: usize, b: usize) -> &[(usize, Q)] {
        &self.brackets[a * self.dim() + b]
    }

    /// The full table, `table[a * dim + b] = [e_a, e_b]`.
    pub fn bracket_table(&self) -> &[SparseVector] {
        &self.brackets
    }

    /// Whether the stored grading is respected by the bracket.
    pub fn grading_is_consistent(&self) -> bool {
        let dim = self.dim();
        (0..dim).all(|a| {
            (0..dim).all(|b| {
                let g = self.grades[a].combine(self.grades[b]);
                self.bracket(a, b).iter().all(|(c, _)| self.grades[*c] == g)
            })
        })
    }

    /// Bilinear extension of the bracket to sparse vectors.
    pub fn bracket_vectors(&self, u: &[(usize, Q)], v: &[(usize, Q)]) -> SparseVector {
        let mut out = SparseVector::new();
        for (a, ca) in u {
            for (b, cb) in v {
                axpy(&mut out, &(ca * cb), self.bracket(*a, *b));
            }
        }
        out
    }

    /// True when every structure constant is an integer.
    pub fn is_integral(&self) -> bool {
        self.brackets.iter().flatten().all(|(_, c)| q_is_integer(c))
    }

    /// Structure constants as `i64`, when integral and in range.
    pub fn integer_table(&self) -> Option<Vec<Vec<(usize, i64)>>> {
        self.brackets
            .iter()
            .map(|v| {
                v.iter()
                    .map(|(i, c)| if q_is_integer(c) { c.numer().to_i64().map(|x| (*i, x)) } else { None })
                    .collect()
            })
            .collect()
    }

    /// Structure constants reduced modulo `p`.
    pub fn table_mod_p(&self, p: u64) -> Result<Vec<Vec<(usize, u64)>>> {
        self.brackets
            .iter()
            .map(|v| {
                v.iter()
                    .map(|(i, c)| crate::scalar::q_mod_p(c, p).map(|x| (*i, x)).ok_or(Error::DenominatorDivisible(p)))
                    .collect()
            })
            .collect()
    }

    /// Signature for the canonical constructions.
    pub fn signature(&self) -> Option<Signature> {
        match self.kind {
            AlgebraKind::So { p, q } | AlgebraKind::Affine { p, q } => Some(Signature { p, q }),
            _ => None,
        }
    }

    /// Indices of the `so(p,q)` part of an affine algebra.
    pub fn so_indices(&self) -> Vec<usize> {
        (0..self.dim()).filter(|&i| !self.labels[i].is_translation()).collect()
    }

    /// Indices of the translation part.
    pub fn translation_indices(&self) -> Vec<usize> {
        (0..self.dim()).filter(|&i| self.labels[i].is_translation()).collect()
    }

    /// Overwrites a single structure constant; used for fault-injection tests.
    pub fn set_structure_constant(&mut self, a: usize, b: usize, c: usize, value: Q) {
        let dim = self.dim();
        let v = &mut self.brackets[a * dim + b];
        v.retain(|(i, _)| *i != c);
        if !value.is_zero() {
            v.push((c, value));
            v.sort_by_key(|(i, _)| *i);
        }
    }

    /// Checks antisymmetry, Jacobi, grading consistency and, for canonical
    /// kinds, integrality plus agreement with the vector-field commutator.
    pub fn validate(&self) -> ValidationReport {
        let dim = self.dim();
        let mut report = ValidationReport { algebra: self.name.clone(), dim, ..Default::default() };
        for a in 0..dim {
            for b in a..dim {
                let ab = self.bracket(a, b);
                let ok = if a == b {
                    ab.is_empty()
                } else {
                    let mut s = ab.to_vec();
                    axpy(&mut s, &qi(1), self.bracket(b, a));
                    s.is_empty()
                };
                if !ok {
                    report.antisymmetry_failures.push((a, b));
                }
            }
        }
        for a in 0..dim {
            for b in 0..dim {
                let ab = self.bracket(a, b);
                for c in 0..dim {
                    let mut sum = self.bracket_vectors(ab, &[(c, qi(1))]);
                    let bc = self.bracket(b, c).to_vec();
                    axpy(&mut sum, &qi(1), &self.bracket_vectors(&bc, &[(a, qi(1))]));
                    let ca = self.bracket(c, a).to_vec();
                    axpy(&mut sum, &qi(1), &self.bracket_vectors(&ca, &[(b, qi(1))]));
                    if !sum.is_empty() {
                        report.jacobi_failures.push((a, b, c));
                    }
                }
            }
        }
        for a in 0..dim {
            for b in 0..dim {
                let g = self.grades[a].combine(self.grades[b]);
                if self.bracket(a, b).iter().any(|(c, _)| self.grades[*c] != g) {
                    report.grading_failures.push((a, b));
                }
            }
        }
        if let Some(sig) = self.signature() {
            report.integral = Some(self.is_integral());
            report.oracle_agreement = Some(self.agrees_with_vector_fields(sig));
        }
        report
    }

    fn agrees_with_vector_fields(&self, sig: Signature) -> bool {
        let n = sig.n();
        let fields: Option<Vec<_>> =
            self.labels.iter().map(|l| AffineVectorField::of_label(n, l)).collect();
        let Some(fields) = fields else { return false };
        for a in 0..self.dim() {
            for b in 0..self.dim() {
                let expected = fields[a].commutator(&fields[b]).decompose(sig, &self.labels);
                let Some(expected) = expected else { return false };
                let expected: SparseVector = expected.into_iter().map(|(i, c)| (i, qi(c))).collect();
                if expected.as_slice() != self.bracket(a, b) {
                    return false;
                }
            }
        }
        true
    }
}

/// Outcome of [`LieAlgebra::validate`]; failures carry basis indices.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub algebra: String,
    pub dim: usize,
    pub antisymmetry_failures: Vec<(usize, usize)>,
    pub jacobi_failures: Vec<(usize, usize, usize)>,
    pub grading_failures: Vec<(usize, usize)>,
    pub integral: Option<bool>,
    pub oracle_agreement: Option<bool>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.antisymmetry_failures.is_empty()
            && self.jacobi_failures.is_empty()
            && self.grading_failures.is_empty()
            && self.integral != Some(false)
            && self.oracle_agreement != Some(false)
    }
}

/// Abelian algebra `I_n` on `∂_1..∂_n`.
pub fn build_abelian(n: usize) -> Result<LieAlgebra> {
    if n == 0 {
        return Err(Error::InvalidDimension(n));
    }
    let labels = (1..=n).map(BasisLabel::Translation).collect();
    let grades = (0..n).map(|i| Grade { weight: 1, parity: 1 << i }).collect();
    Ok(LieAlgebra::assemble(
        format!("I{n}"),
        AlgebraKind::Abelian { n },
        labels,
        vec![Vec::new(); n * n],
        Some(grades),
    ))
}

fn label_grade(label: &BasisLabel) -> Grade {
    match *label {
        BasisLabel::Translation(i) => Grade { weight: 1, parity: 1 << (i - 1) },
        BasisLabel::RotationX(i, j) | BasisLabel::BoostY(i, j) => {
            Grade { weight: 0, parity: (1 << (i - 1)) ^ (1 << (j - 1)) }
        }
        BasisLabel::Generic(_) => Grade::default(),
    }
}

fn build_from_fields(sig: Signature, labels: Vec<BasisLabel>, name: String, kind: AlgebraKind) -> LieAlgebra {
    let n = sig.n();
    let fields: Vec<_> = labels
        .iter()
        .map(|l| AffineVectorField::of_label(n, l).expect("canonical label"))
        .collect();
    let dim = labels.len();
    let mut brackets = Vec::with_capacity(dim * dim);
    for a in 0..dim {
        for b in 0..dim {
            let c = fields[a]
                .commutator(&fields[b])
                .decompose(sig, &labels)
                .expect("closed under commutator");
            brackets.push(collect_sparse(c.into_iter().map(|(i, v)| (i, qi(v)))));
        }
    }
    let grades = labels.iter().map(label_grade).collect();
    LieAlgebra::assemble(name, kind, labels, brackets, Some(grades))
}

/// `so(p,q)` spanned by the rotations `X_ij` and boosts `Y_ij`.
pub fn build_so(sig: Signature) -> LieAlgebra {
    build_from_fields(
        sig,
        sig.so_labels(),
        format!("so({},{})", sig.p, sig.q),
        AlgebraKind::So { p: sig.p, q: sig.q },
    )
}

/// The affine algebra `h_n = I_n ⋊ so(p,q)`, translations first.
pub fn build_affine(sig: Signature) -> LieAlgebra {
    build_from_fields(
        sig,
        sig.affine_labels(),
        format!("h({},{})", sig.p, sig.q),
        AlgebraKind::Affine { p: sig.p, q: sig.q },
    )
}

/// Abelian extension `M ⊕ g` with `[g1 + m1, g2 + m2] = [g1,g2] + g1·m2 − g2·m1`.
///
/// Basis: the module basis first, then the basis of `g`. The module action
/// must satisfy `ρ([a,b]) = ρ(a)ρ(b) − ρ(b)ρ(a)`.
pub fn build_abelian_extension(g: &LieAlgebra, action: &Representation) -> Result<LieAlgebra> {
    action.check_module_law(g)?;
    let m = action.dim();
    let gd = g.dim();
    let dim = m + gd;
    let mut brackets = vec![SparseVector::new(); dim * dim];
    for a in 0..gd {
        for b in 0..gd {
            brackets[(m + a) * dim + (m + b)] = g.bracket(a, b).iter().map(|(i, c)| (m + i, c.clone())).collect();
        }
        for j in 0..m {
            let image = action.image(a, j).to_vec();
            brackets[(m + a) * dim + j] = image.clone();
            brackets[j * dim + (m + a)] = image.into_iter().map(|(i, c)| (i, -c)).collect();
        }
    }
    let labels = action
        .labels()
        .iter()
        .map(|l| match parse_translation(l) {
            Some(i) => BasisLabel::Translation(i),
            None => BasisLabel::Generic(l.clone()),
        })
        .chain(g.labels().iter().cloned())
        .collect::<Vec<_>>();
    let grades = (0..m)
        .map(|j| Grade { weight: 1, parity: if matches!(g.kind, AlgebraKind::So { .. }) { 1 << j } else { 0 } })
        .chain(g.grades.iter().map(|gr| Grade { weight: 0, parity: gr.parity }))
        .collect::<Vec<_>>();
    let mut alg = LieAlgebra::assemble(
        format!("{}+{}", action.name(), g.name()),
        AlgebraKind::Extension,
        labels,
        brackets,
        Some(grades),
    );
    if alg.validate().grading_failures.is_empty() {
        return Ok(alg);
    }
    alg.grades = (0..m)
        .map(|_| Grade { weight: 1, parity: 0 })
        .chain((0..gd).map(|_| Grade::default()))
        .collect();
    Ok(alg)
}

fn parse_translation(label: &str) -> Option<usize> {
    label.strip_prefix('d')?.parse().ok()
}


#[cfg(test)]
mod tests {
    use super::*;

    fn sig(p: usize, q: usize) -> Signature {
        Signature::new(p, q).unwrap()
    }

    fn br(alg: &LieAlgebra, a: BasisLabel, b: BasisLabel) -> Vec<(BasisLabel, i64)> {
        let (ia, ib) = (alg.index_of(&a).unwrap(), alg.index_of(&b).unwrap());
        alg.bracket(ia, ib)
            .iter()
            .map(|(i, c)| (alg.label(*i).clone(), c.numer().to_i64().unwrap()))
            .collect()
    }

    use BasisLabel::{BoostY as Y, RotationX as X, Translation as D};

    #[test]
    fn signature_bounds() {
        assert!(Signature::new(0, 2).is_err());
        assert!(Signature::new(1, 0).is_err());
        assert!(Signature::new(2, 0).is_ok());
        assert!(sig(1, 2).require_invariant_range().is_err());
        assert!(sig(4, 0).require_invariant_range().is_err());
        assert!(sig(2, 2).require_invariant_range().is_ok());
    }

    #[test]
    fn label_counts() {
        for (p, q) in [(2, 2), (3, 1), (1, 4), (3, 3), (4, 0)] {
            let s = sig(p, q);
            let labels = s.so_labels();
            let xs = labels.iter().filter(|l| matches!(l, X(..))).count();
            let ys = labels.iter().filter(|l| matches!(l, Y(..))).count();
            assert_eq!(xs, p * (p - 1) / 2 + q * q.saturating_sub(1) / 2);
            assert_eq!(ys, p * q);
            assert!(labels.iter().all(|l| s.is_valid_label(l)));
        }
        assert!(!sig(2, 2).is_valid_label(&X(1, 3)));
        assert!(!sig(2, 2).is_valid_label(&Y(3, 4)));
    }

    #[test]
    fn abelian() {
        assert_eq!(build_abelian(0).unwrap_err(), Error::InvalidDimension(0));
        let a = build_abelian(3).unwrap();
        assert_eq!(a.dim(), 3);
        assert!((0..3).all(|i| (0..3).all(|j| a.bracket(i, j).is_empty())));
        assert_eq!(build_abelian(1).unwrap().dim(), 1);
        assert!(build_abelian(4).unwrap().bracket(0, 1).is_empty());
    }

    #[test]
    fn so_brackets() {
        let so31 = build_so(sig(3, 1));
        assert_eq!(br(&so31, X(1, 2), X(1, 3)), vec![(X(2, 3), 1)]);
        assert_eq!(br(&so31, X(1, 2), Y(1, 4)), vec![(Y(2, 4), 1)]);
        let so22 = build_so(sig(2, 2));
        assert_eq!(br(&so22, Y(1, 3), Y(2, 3)), vec![(X(1, 2), -1)]);
    }

    #[test]
    fn affine_brackets() {
        let h31 = build_affine(sig(3, 1));
        assert_eq!(br(&h31, D(1), X(1, 2)), vec![(D(2), -1)]);
        let h22 = build_affine(sig(2, 2));
        assert!(br(&h22, D(1), D(2)).is_empty());
        assert_eq!(br(&h22, D(1), Y(1, 3)), vec![(D(3), 1)]);
        assert_eq!(h22.dim(), 10);
    }

    #[test]
    fn canonical_algebras_validate() {
        assert!(build_so(sig(2, 3)).validate().passed());
        assert!(build_affine(sig(3, 2)).validate().passed());
        assert!(build_so(sig(3, 0)).validate().passed());
    }

    #[test]
    fn corrupted_table_fails_jacobi() {
        let mut so = build_so(sig(2, 2));
        // [X12, Y13] = Y23 flipped to -Y23, keeping antisymmetry
        let (a, b) = (so.index_of(&X(1, 2)).unwrap(), so.index_of(&Y(1, 3)).unwrap());
        let c = so.bracket(a, b)[0].0;
        let v = so.bracket(a, b)[0].1.clone();
        so.set_structure_constant(a, b, c, -v.clone());
        so.set_structure_constant(b, a, c, v);
        let report = so.validate();
        assert!(report.antisymmetry_failures.is_empty());
        assert!(!report.jacobi_failures.is_empty());
        assert_eq!(report.oracle_agreement, Some(false));
        assert!(!report.passed());
    }

    #[test]
    fn definite_so_has_no_boosts() {
        let so4 = build_so(sig(4, 0));
        assert_eq!(so4.dim(), 6);
        assert!(so4.labels().iter().all(|l| matches!(l, X(..))));
    }

    #[test]
    fn extension_reproduces_affine() {
        for (p, q) in [(2, 2), (3, 1), (1, 2)] {
            let s = sig(p, q);
            let so = build_so(s);
            let ext = build_abelian_extension(&so, &Representation::standard(s)).unwrap();
            let h = build_affine(s);
            assert_eq!(ext.labels(), h.labels());
            for a in 0..h.dim() {
                for b in 0..h.dim() {
                    assert_eq!(ext.bracket(a, b), h.bracket(a, b));
                }
            }
            assert!(ext.validate().passed());
            assert_eq!(ext.grades(), h.grades());
        }
    }

    #[test]
    fn zero_action_gives_direct_sum() {
        let so = build_so(sig(2, 1));
        let rep = Representation::zero("M2", 2, so.dim());
        let ext = build_abelian_extension(&so, &rep).unwrap();
        assert_eq!(ext.dim(), 5);
        for a in 0..2 {
            for b in 0..ext.dim() {
                assert!(ext.bracket(a, b).is_empty());
                assert!(ext.bracket(b, a).is_empty());
            }
        }
    }

    #[test]
    fn module_law_violation_names_pair() {
        let so = build_so(sig(2, 1));
        let mut rep = Representation::standard(sig(2, 1));
        rep.set_image(0, 0, vec![(0, qi(5))]);
        match build_abelian_extension(&so, &rep) {
            Err(Error::ModuleLaw { a, b }) => assert!(a == 0 || b == 0),
            other => panic!("expected module law error, got {other:?}"),
        }
    }
}
