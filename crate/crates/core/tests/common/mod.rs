//! Polynomial vector fields on R^n with integer coefficients, used as an
//! independent source of structure constants.

#![allow(dead_code)]

use std::collections::BTreeMap;

use affine_leibniz::liealg::{BasisLabel, LieAlgebra};

type Monomial = Vec<u32>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyField {
    n: usize,
    /// `components[j]` is the coefficient polynomial of `∂_j`.
    components: Vec<BTreeMap<Monomial, i64>>,
}

impl PolyField {
    pub fn zero(n: usize) -> Self {
        Self { n, components: vec![BTreeMap::new(); n] }
    }

    fn add(&mut self, j: usize, mono: Monomial, c: i64) {
        let e = self.components[j].entry(mono.clone()).or_insert(0);
        *e += c;
        if *e == 0 {
            self.components[j].remove(&mono);
        }
    }

    fn linear(n: usize, terms: &[(usize, usize, i64)]) -> Self {
        let mut f = Self::zero(n);
        for &(var, j, c) in terms {
            let mut m = vec![0; n];
            m[var] = 1;
            f.add(j, m, c);
        }
        f
    }

    /// The vector field named by a basis label (1-based indices).
    pub fn of_label(n: usize, label: &BasisLabel) -> Self {
        match *label {
            BasisLabel::Translation(i) => {
                let mut f = Self::zero(n);
                f.add(i - 1, vec![0; n], 1);
                f
            }
            // −x_i ∂_j + x_j ∂_i
            BasisLabel::RotationX(i, j) => Self::linear(n, &[(i - 1, j - 1, -1), (j - 1, i - 1, 1)]),
            // x_i ∂_j + x_j ∂_i
            BasisLabel::BoostY(i, j) => Self::linear(n, &[(i - 1, j - 1, 1), (j - 1, i - 1, 1)]),
            _ => panic!("no vector field for {label}"),
        }
    }

    /// `A(f)` for a polynomial `f`.
    fn derive(&self, poly: &BTreeMap<Monomial, i64>) -> BTreeMap<Monomial, i64> {
        let mut out: BTreeMap<Monomial, i64> = BTreeMap::new();
        for (i, comp) in self.components.iter().enumerate() {
            for (mono, c) in poly {
                if mono[i] == 0 {
                    continue;
                }
                let mut d = mono.clone();
                d[i] -= 1;
                let k = c * i64::from(mono[i]);
                for (m2, c2) in comp {
                    let prod: Monomial = d.iter().zip(m2).map(|(a, b)| a + b).collect();
                    *out.entry(prod).or_insert(0) += k * c2;
                }
            }
        }
        out.retain(|_, v| *v != 0);
        out
    }

    /// `[A, B] = Σ_j (A(B_j) − B(A_j)) ∂_j`.
    pub fn commutator(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.n);
        for j in 0..self.n {
            for (m, c) in self.derive(&other.components[j]) {
                out.add(j, m, c);
            }
            for (m, c) in other.derive(&self.components[j]) {
                out.add(j, m, -c);
            }
        }
        out
    }

    fn is_zero(&self) -> bool {
        self.components.iter().all(BTreeMap::is_empty)
    }

    fn scaled_sub(&self, other: &Self, c: i64) -> Self {
        let mut out = self.clone();
        for (j, comp) in other.components.iter().enumerate() {
            for (m, v) in comp {
                out.add(j, m.clone(), -c * v);
            }
        }
        out
    }
}

/// Coordinates of `field` in the basis of `alg`, by least-effort peeling:
/// every basis field has a distinguishing monomial. `None` if the field is
/// not in the span.
pub fn decompose(alg: &LieAlgebra, n: usize, field: &PolyField) -> Option<Vec<i64>> {
    let basis: Vec<PolyField> = alg.labels().iter().map(|l| PolyField::of_label(n, l)).collect();
    let mut rest = field.clone();
    let mut coords = vec![0; basis.len()];
    for (k, b) in basis.iter().enumerate() {
        // first (component, monomial) of the basis field determines the coordinate
        let (j, (m, c)) = b.components.iter().enumerate().find_map(|(j, comp)| comp.iter().next().map(|e| (j, e)))?;
        let have = rest.components[j].get(m).copied().unwrap_or(0);
        if have % c != 0 {
            return None;
        }
        coords[k] = have / c;
        rest = rest.scaled_sub(b, coords[k]);
    }
    rest.is_zero().then_some(coords)
}
