//! Bases of tensor, exterior and mixed powers of representations, chains over
//! them, and the induced actions.
//!
//! Words are index lists into the underlying representation bases. Wedge
//! words (and the tail of mixed words) are kept strictly increasing; a
//! reordering contributes the sign of the sorting permutation and a repeated
//! factor kills the word.

mod action;
mod chain;

pub use action::{act, act_mixed, act_tensor, act_wedge, action_matrix, stacked_action_matrix};
pub use chain::{permutation_sign, permutations as permutations_of, Chain, Word};

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::liealg::Representation;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SpaceKind {
    /// `R^{⊗k}`
    Tensor,
    /// `Λ^k R`
    Wedge,
    /// `L ⊗ Λ^k R`: one leading factor from `L`, then a wedge tail.
    Mixed,
}

/// A tensor, wedge or mixed power of representations of one acting algebra.
#[derive(Clone, Debug)]
pub struct Space {
    kind: SpaceKind,
    degree: usize,
    base: Arc<Representation>,
    lead: Option<Arc<Representation>>,
}

impl PartialEq for Space {
    fn eq(&self, other: &Self) -> bool {
        let same = |a: &Representation, b: &Representation| a.name() == b.name() && a.dim() == b.dim();
        self.kind == other.kind
            && self.degree == other.degree
            && same(&self.base, &other.base)
            && match (&self.lead, &other.lead) {
                (None, None) => true,
                (Some(a), Some(b)) => same(a, b),
                _ => false,
            }
    }
}

impl Eq for Space {}

impl fmt::Display for Space {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            SpaceKind::Tensor => write!(f, "tensor^{}({})", self.degree, self.base.name()),
            SpaceKind::Wedge => write!(f, "wedge^{}({})", self.degree, self.base.name()),
            SpaceKind::Mixed => write!(
                f,
                "{}*wedge^{}({})",
                self.lead.as_ref().expect("mixed space has a lead").name(),
                self.degree,
                self.base.name()
            ),
        }
    }
}

/// `C(n, k)` with `C(n, k) = 0` for `k > n`.
pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc as usize
}

impl Space {
    pub fn tensor(base: Arc<Representation>, degree: usize) -> Self {
        Self { kind: SpaceKind::Tensor, degree, base, lead: None }
    }

    pub fn wedge(base: Arc<Representation>, degree: usize) -> Self {
        Self { kind: SpaceKind::Wedge, degree, base, lead: None }
    }

    pub fn mixed(lead: Arc<Representation>, base: Arc<Representation>, degree: usize) -> Result<Self> {
        if lead.generators() != base.generators() {
            return Err(Error::SpaceMismatch {
                expected: format!("{} generators", base.generators()),
                found: format!("{} generators", lead.generators()),
            });
        }
        Ok(Self { kind: SpaceKind::Mixed, degree, base, lead: Some(lead) })
    }

    pub fn kind(&self) -> SpaceKind {
        self.kind
    }

    /// Tensor/wedge degree; for mixed spaces the degree of the wedge tail.
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn base(&self) -> &Arc<Representation> {
        &self.base
    }

    pub fn lead(&self) -> Option<&Arc<Representation>> {
        self.lead.as_ref()
    }

    /// Number of generators of the acting algebra.
    pub fn generators(&self) -> usize {
        self.base.generators()
    }

    /// Length of a word in this space.
    pub fn word_len(&self) -> usize {
        match self.kind {
            SpaceKind::Mixed => self.degree + 1,
            _ => self.degree,
        }
    }

    pub fn dim(&self) -> usize {
        let d = self.base.dim();
        match self.kind {
            SpaceKind::Tensor => d.checked_pow(self.degree as u32).expect("tensor dimension overflow"),
            SpaceKind::Wedge => binomial(d, self.degree),
            SpaceKind::Mixed => self.lead.as_ref().unwrap().dim() * binomial(d, self.degree),
        }
    }

    /// Mixed-radix rank for tensors (first factor most significant),
    /// combinatorial number system for wedges, product rank for mixed words.
    pub fn rank(&self, word: &[u32]) -> usize {
        match self.kind {
            SpaceKind::Tensor => {
                let d = self.base.dim();
                word.iter().fold(0, |acc, &w| acc * d + w as usize)
            }
            SpaceKind::Wedge => wedge_rank(word),
            SpaceKind::Mixed => {
                let tail_count = binomial(self.base.dim(), self.degree);
                word[0] as usize * tail_count + wedge_rank(&word[1..])
            }
        }
    }

    pub fn unrank(&self, mut rank: usize) -> Word {
        match self.kind {
            SpaceKind::Tensor => {
                let d = self.base.dim();
                let mut w = vec![0u32; self.degree];
                for slot in w.iter_mut().rev() {
                    *slot = (rank % d) as u32;
                    rank /= d;
                }
                w
            }
            SpaceKind::Wedge => wedge_unrank(rank, self.degree),
            SpaceKind::Mixed => {
                let tail_count = binomial(self.base.dim(), self.degree);
                let mut w = vec![(rank / tail_count) as u32];
                w.extend(wedge_unrank(rank % tail_count, self.degree));
                w
            }
        }
    }

    /// All basis words in rank order.
    pub fn basis(&self) -> impl Iterator<Item = Word> + '_ {
        (0..self.dim()).map(move |r| self.unrank(r))
    }

    /// Whether `word` is a canonical basis word of this space.
    pub fn contains(&self, word: &[u32]) -> bool {
        if word.len() != self.word_len() {
            return false;
        }
        let d = self.base.dim() as u32;
        match self.kind {
            SpaceKind::Tensor => word.iter().all(|&w| w < d),
            SpaceKind::Wedge => increasing_below(word, d),
            SpaceKind::Mixed => {
                (word[0] as usize) < self.lead.as_ref().unwrap().dim() && increasing_below(&word[1..], d)
            }
        }
    }

    /// Human-readable word: `*` separates tensor factors, `^` wedge factors.
    pub fn word_label(&self, word: &[u32]) -> String {
        let names = |rep: &Representation, ws: &[u32], sep: &str| {
            ws.iter().map(|&w| rep.labels()[w as usize].as_str()).collect::<Vec<_>>().join(sep)
        };
        match self.kind {
            SpaceKind::Tensor => names(&self.base, word, "*"),
            SpaceKind::Wedge => names(&self.base, word, "^"),
            SpaceKind::Mixed => {
                let lead = &self.lead.as_ref().unwrap().labels()[word[0] as usize];
                if word.len() == 1 {
                    lead.clone()
                } else {
                    format!("{lead}*{}", names(&self.base, &word[1..], "^"))
                }
            }
        }
    }
}

fn increasing_below(ws: &[u32], bound: u32) -> bool {
    ws.windows(2).all(|p| p[0] < p[1]) && ws.last().is_none_or(|&w| w < bound)
}

fn wedge_rank(word: &[u32]) -> usize {
    word.iter().enumerate().map(|(i, &c)| binomial(c as usize, i + 1)).sum()
}

fn wedge_unrank(mut rank: usize, k: usize) -> Word {
    let mut w = vec![0u32; k];
    for i in (1..=k).rev() {
        let mut c = i - 1;
        while binomial(c + 1, i) <= rank {
            c += 1;
        }
        rank -= binomial(c, i);
        w[i - 1] = c as u32;
    }
    w
}

/// Sorts `ws` in place, returning the sign of the permutation, or `None` if
/// a factor repeats.
pub fn sort_with_sign(ws: &mut [u32]) -> Option<i32> {
    let mut sign = 1;
    for i in 1..ws.len() {
        let mut j = i;
        while j > 0 && ws[j - 1] > ws[j] {
            ws.swap(j - 1, j);
            sign = -sign;
            j -= 1;
        }
        if j > 0 && ws[j - 1] == ws[j] {
            return None;
        }
    }
    Some(sign)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::liealg::{build_affine, Signature};

    fn rep(dim: usize) -> Arc<Representation> {
        Arc::new(Representation::zero(format!("V{dim}"), dim, 1))
    }

    #[test]
    fn dimensions() {
        assert_eq!(Space::tensor(rep(10), 3).dim(), 1000);
        assert_eq!(Space::wedge(rep(4), 2).dim(), 6);
        let h = Arc::new(Representation::adjoint(&build_affine(Signature::new(2, 2).unwrap())));
        let i4 = Arc::new(Representation::translations_of_affine(&build_affine(Signature::new(2, 2).unwrap())));
        assert_eq!(Space::mixed(h, i4, 2).unwrap().dim(), 60);
        assert_eq!(Space::wedge(rep(3), 5).dim(), 0);
        assert_eq!(Space::wedge(rep(3), 0).dim(), 1);
    }

    #[test]
    fn ranking_round_trips() {
        let lead = rep(3);
        let spaces = [
            Space::tensor(rep(5), 3),
            Space::wedge(rep(7), 3),
            Space::mixed(lead, rep(6), 2).unwrap(),
            Space::tensor(rep(4), 0),
        ];
        for s in &spaces {
            for r in 0..s.dim() {
                let w = s.unrank(r);
                assert!(s.contains(&w), "{s}: {w:?}");
                assert_eq!(s.rank(&w), r);
            }
        }
    }

    #[test]
    fn sort_sign() {
        let mut w = [2, 0, 1];
        assert_eq!(sort_with_sign(&mut w), Some(1));
        assert_eq!(w, [0, 1, 2]);
        let mut w = [1, 0];
        assert_eq!(sort_with_sign(&mut w), Some(-1));
        assert_eq!(sort_with_sign(&mut [1, 3, 1]), None);
    }
}
