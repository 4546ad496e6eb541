use num_traits::Zero;

use super::{AffineVectorField, LieAlgebra, Signature};
use crate::error::{Error, Result};
use crate::scalar::{axpy, collect_sparse, qi, SparseVector, Q};

/// Left action `ρ` of an algebra on a finite-dimensional space.
///
/// `images[x][j]` is `ρ(e_x) v_j` as a sparse vector. The bracket-style right
/// action `[v, x]` used for invariance statements is `−ρ(e_x) v`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Representation {
    name: String,
    labels: Vec<String>,
    images: Vec<Vec<SparseVector>>,
}

impl Representation {
    pub fn new(name: impl Into<String>, labels: Vec<String>, images: Vec<Vec<SparseVector>>) -> Result<Self> {
        let dim = labels.len();
        for per_gen in &images {
            if per_gen.len() != dim || per_gen.iter().flatten().any(|(i, _)| *i >= dim) {
                return Err(Error::Malformed("action matrix does not match module dimension".into()));
            }
        }
        Ok(Self { name: name.into(), labels, images })
    }

    /// Adjoint action `ρ(x) m = [x, m]`.
    pub fn adjoint(g: &LieAlgebra) -> Self {
        let dim = g.dim();
        let images = (0..dim).map(|x| (0..dim).map(|m| g.bracket(x, m).to_vec()).collect()).collect();
        Self {
            name: g.name().to_string(),
            labels: g.labels().iter().map(|l| l.to_string()).collect(),
            images,
        }
    }

    /// Adjoint action of `g` restricted to the generators `acting` (in order).
    /// The result is a module over the subalgebra spanned by those generators.
    pub fn adjoint_restricted(g: &LieAlgebra, acting: &[usize]) -> Self {
        let full = Self::adjoint(g);
        Self {
            name: format!("{}|{}", g.name(), acting.len()),
            labels: full.labels,
            images: acting.iter().map(|&x| full.images[x].clone()).collect(),
        }
    }

    /// Standard action of `so(p,q)` on `I_n`: `ρ(X) ∂_i = [X, ∂_i]`.
    pub fn standard(sig: Signature) -> Self {
        let n = sig.n();
        let translations: Vec<_> = (1..=n).map(|i| AffineVectorField::translation(n, i)).collect();
        let trans_labels: Vec<_> = (1..=n).map(super::BasisLabel::Translation).collect();
        let images = sig
            .so_labels()
            .iter()
            .map(|l| {
                let x = AffineVectorField::of_label(n, l).expect("canonical label");
                translations
                    .iter()
                    .map(|t| {
                        let c = x.commutator(t).decompose(sig, &trans_labels).expect("translation");
                        collect_sparse(c.into_iter().map(|(i, v)| (i, qi(v))))
                    })
                    .collect()
            })
            .collect();
        Self { name: format!("I{n}"), labels: (1..=n).map(|i| format!("d{i}")).collect(), images }
    }

    /// Action of all of `h_n` on `I_n` (translations act by zero), read off the
    /// affine bracket.
    pub fn translations_of_affine(h: &LieAlgebra) -> Self {
        let trans = h.translation_indices();
        let images = (0..h.dim())
            .map(|x| {
                trans
                    .iter()
                    .map(|&t| h.bracket(x, t).iter().filter(|(i, _)| *i < trans.len()).cloned().collect())
                    .collect()
            })
            .collect();
        Self {
            name: format!("I{}", trans.len()),
            labels: trans.iter().map(|&t| h.label(t).to_string()).collect(),
            images,
        }
    }

    /// One-dimensional trivial module.
    pub fn trivial(generators: usize) -> Self {
        Self { name: "R".into(), labels: vec!["1".into()], images: vec![vec![Vec::new()]; generators] }
    }

    /// Zero action on a `dim`-dimensional space.
    pub fn zero(name: impl Into<String>, dim: usize, generators: usize) -> Self {
        Self {
            name: name.into(),
            labels: (1..=dim).map(|i| format!("m{i}")).collect(),
            images: vec![vec![Vec::new(); dim]; generators],
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn generators(&self) -> usize {
        self.images.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// `ρ(e_x) v_j`.
    pub fn image(&self, x: usize, j: usize) -> &[(usize, Q)] {
        &self.images[x][j]
    }

    pub fn set_image(&mut self, x: usize, j: usize, v: SparseVector) {
        self.images[x][j] = v;
    }

    /// `ρ(e_x)` applied to a sparse vector.
    pub fn apply(&self, x: usize, v: &[(usize, Q)]) -> SparseVector {
        let mut out = SparseVector::new();
        for (j, c) in v {
            axpy(&mut out, c, self.image(x, *j));
        }
        out
    }

    /// Verifies `ρ([a,b]) = ρ(a)ρ(b) − ρ(b)ρ(a)` on every basis vector.
    pub fn check_module_law(&self, g: &LieAlgebra) -> Result<()> {
        if self.generators() != g.dim() {
            return Err(Error::Malformed(format!(
                "module has {} generators, algebra has dimension {}",
                self.generators(),
                g.dim()
            )));
        }
        for a in 0..g.dim() {
            for b in 0..g.dim() {
                for j in 0..self.dim() {
                    let v = [(j, qi(1))];
                    let mut lhs = SparseVector::new();
                    for (c, coef) in g.bracket(a, b) {
                        axpy(&mut lhs, coef, self.image(*c, j));
                    }
                    let ab = self.apply(a, &self.apply(b, &v));
                    let ba = self.apply(b, &self.apply(a, &v));
                    axpy(&mut lhs, &qi(-1), &ab);
                    axpy(&mut lhs, &qi(1), &ba);
                    if lhs.iter().any(|(_, c)| !c.is_zero()) {
                        return Err(Error::ModuleLaw { a, b });
                    }
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::liealg::{build_abelian, build_affine, build_so};

    #[test]
    fn canonical_modules_satisfy_law() {
        let sig = Signature::new(2, 2).unwrap();
        let so = build_so(sig);
        let h = build_affine(sig);
        Representation::standard(sig).check_module_law(&so).unwrap();
        Representation::adjoint(&so).check_module_law(&so).unwrap();
        Representation::adjoint(&h).check_module_law(&h).unwrap();
        Representation::translations_of_affine(&h).check_module_law(&h).unwrap();
        let i4 = build_abelian(4).unwrap();
        Representation::adjoint_restricted(&h, &h.translation_indices()).check_module_law(&i4).unwrap();
    }

    #[test]
    fn standard_matches_affine_bracket() {
        let sig = Signature::new(3, 1).unwrap();
        let h = build_affine(sig);
        let std = Representation::standard(sig);
        let from_h = Representation::translations_of_affine(&h);
        for (x, hx) in h.so_indices().into_iter().enumerate() {
            for j in 0..4 {
                assert_eq!(std.image(x, j), from_h.image(hx, j));
            }
        }
    }
}
