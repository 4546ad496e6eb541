//! First-order polynomial vector fields on `R^n` with integer coefficients.
//!
//! A field `Σ_k (c_k + Σ_l a_{kl} x_l) ∂_k` is stored as the constant vector
//! `c` and the matrix `a`. The commutator of two such fields is again of this
//! form, which is how the structure constants of `so(p,q)` and `h_n` are
//! produced.

use super::{BasisLabel, Signature};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineVectorField {
    n: usize,
    constant: Vec<i64>,
    /// Row-major: `linear[k * n + l]` is the coefficient of `x_l ∂_k`.
    linear: Vec<i64>,
}

impl AffineVectorField {
    pub fn zero(n: usize) -> Self {
        Self { n, constant: vec![0; n], linear: vec![0; n * n] }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    /// `∂_i` (1-based).
    pub fn translation(n: usize, i: usize) -> Self {
        let mut f = Self::zero(n);
        f.constant[i - 1] = 1;
        f
    }

    /// `X_ij = -x_i ∂_j + x_j ∂_i`.
    pub fn rotation(n: usize, i: usize, j: usize) -> Self {
        let mut f = Self::zero(n);
        f.add_linear(j, i, -1);
        f.add_linear(i, j, 1);
        f
    }

    /// `Y_ij = x_i ∂_j + x_j ∂_i`.
    pub fn boost(n: usize, i: usize, j: usize) -> Self {
        let mut f = Self::zero(n);
        f.add_linear(j, i, 1);
        f.add_linear(i, j, 1);
        f
    }

    pub fn of_label(n: usize, label: &BasisLabel) -> Option<Self> {
        match *label {
            BasisLabel::Translation(i) => Some(Self::translation(n, i)),
            BasisLabel::RotationX(i, j) => Some(Self::rotation(n, i, j)),
            BasisLabel::BoostY(i, j) => Some(Self::boost(n, i, j)),
            BasisLabel::Generic(_) => None,
        }
    }

    /// Adds `coef · x_var ∂_dir` (1-based indices).
    fn add_linear(&mut self, dir: usize, var: usize, coef: i64) {
        self.linear[(dir - 1) * self.n + (var - 1)] += coef;
    }

    /// Coefficient of `x_var ∂_dir` (1-based).
    pub fn linear_coeff(&self, dir: usize, var: usize) -> i64 {
        self.linear[(dir - 1) * self.n + (var - 1)]
    }

    /// Constant coefficient of `∂_dir` (1-based).
    pub fn constant_coeff(&self, dir: usize) -> i64 {
        self.constant[dir - 1]
    }

    /// `[A, B] = A∘B − B∘A` as derivations.
    ///
    /// With `A = c_A + M_A x`, the constant part is `M_B c_A − M_A c_B` and the
    /// linear part is `M_B M_A − M_A M_B`.
    pub fn commutator(&self, other: &Self) -> Self {
        let n = self.n;
        assert_eq!(n, other.n, "vector fields on different spaces");
        let mut out = Self::zero(n);
        for k in 0..n {
            let mut c = 0;
            for l in 0..n {
                c += other.linear[k * n + l] * self.constant[l];
                c -= self.linear[k * n + l] * other.constant[l];
            }
            out.constant[k] = c;
            for m in 0..n {
                let mut v = 0;
                for l in 0..n {
                    v += other.linear[k * n + l] * self.linear[l * n + m];
                    v -= self.linear[k * n + l] * other.linear[l * n + m];
                }
                out.linear[k * n + m] = v;
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.constant.iter().all(|&c| c == 0) && self.linear.iter().all(|&c| c == 0)
    }

    /// Expresses the field in the basis `labels`, or `None` if it lies outside
    /// their span.
    pub fn decompose(&self, sig: Signature, labels: &[BasisLabel]) -> Option<Vec<(usize, i64)>> {
        let n = self.n;
        let mut rest = self.clone();
        let mut coeffs = Vec::new();
        for (idx, label) in labels.iter().enumerate() {
            let c = match *label {
                BasisLabel::Translation(i) => rest.constant_coeff(i),
                BasisLabel::RotationX(i, j) | BasisLabel::BoostY(i, j) => rest.linear_coeff(i, j),
                BasisLabel::Generic(_) => return None,
            };
            if c != 0 {
                let f = Self::of_label(n, label)?;
                rest.axpy(-c, &f);
                coeffs.push((idx, c));
            }
        }
        debug_assert_eq!(sig.n(), n);
        rest.is_zero().then_some(coeffs)
    }

    fn axpy(&mut self, c: i64, f: &Self) {
        for (a, b) in self.constant.iter_mut().zip(&f.constant) {
            *a += c * b;
        }
        for (a, b) in self.linear.iter_mut().zip(&f.linear) {
            *a += c * b;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn translation_against_rotation() {
        let d1 = AffineVectorField::translation(4, 1);
        let x12 = AffineVectorField::rotation(4, 1, 2);
        let c = d1.commutator(&x12);
        assert_eq!(c, {
            let mut f = AffineVectorField::translation(4, 2);
            f.constant[1] = -1;
            f
        });
    }

    #[test]
    fn commutator_is_antisymmetric() {
        let a = AffineVectorField::boost(4, 1, 3);
        let b = AffineVectorField::rotation(4, 1, 2);
        let ab = a.commutator(&b);
        let mut ba = b.commutator(&a);
        ba.axpy(1, &ab);
        assert!(ba.is_zero());
    }
}
