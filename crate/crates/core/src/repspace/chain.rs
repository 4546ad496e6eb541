use std::collections::BTreeMap;

use num_traits::{One, Zero};
use serde_json::{json, Value};

use super::{sort_with_sign, Space, SpaceKind};
use crate::error::{Error, Result};
use crate::scalar::{bigint_json, SparseVector, Q};

pub type Word = Vec<u32>;

/// Sparse rational combination of canonical words of one space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Chain {
    space: Space,
    terms: BTreeMap<Word, Q>,
}

impl Chain {
    pub fn zero(space: Space) -> Self {
        Self { space, terms: BTreeMap::new() }
    }

    /// Builds a chain from possibly non-canonical words.
    pub fn from_terms(space: Space, terms: impl IntoIterator<Item = (Word, Q)>) -> Result<Self> {
        let mut c = Self::zero(space);
        for (w, v) in terms {
            c.add_term(w, v)?;
        }
        Ok(c)
    }

    pub fn from_vector(space: Space, v: &[(usize, Q)]) -> Self {
        let terms = v.iter().map(|(r, c)| (space.unrank(*r), c.clone())).collect();
        Self { space, terms }
    }

    pub fn space(&self) -> &Space {
        &self.space
    }

    pub fn terms(&self) -> &BTreeMap<Word, Q> {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, word: &[u32]) -> Q {
        self.terms.get(word).cloned().unwrap_or_else(Q::zero)
    }

    /// Adds `coef · word`, reordering wedge factors with the permutation sign.
    pub fn add_term(&mut self, mut word: Word, coef: Q) -> Result<()> {
        if word.len() != self.space.word_len() {
            return Err(Error::SpaceMismatch {
                expected: format!("word of length {} in {}", self.space.word_len(), self.space),
                found: format!("length {}", word.len()),
            });
        }
        let sign = match self.space.kind() {
            SpaceKind::Tensor => Some(1),
            SpaceKind::Wedge => sort_with_sign(&mut word),
            SpaceKind::Mixed => sort_with_sign(&mut word[1..]),
        };
        let Some(sign) = sign else { return Ok(()) };
        if !self.space.contains(&word) {
            return Err(Error::OutOfRange(format!("word {word:?} not in {}", self.space)));
        }
        let coef = if sign < 0 { -coef } else { coef };
        self.add_canonical(word, coef);
        Ok(())
    }

    pub(crate) fn add_canonical(&mut self, word: Word, coef: Q) {
        if coef.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(word) {
            Entry::Vacant(e) => {
                e.insert(coef);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += coef;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    fn check_same(&self, other: &Chain) -> Result<()> {
        if self.space != other.space {
            return Err(Error::SpaceMismatch { expected: self.space.to_string(), found: other.space.to_string() });
        }
        Ok(())
    }

    /// `self + coef · other`.
    pub fn add_scaled(&self, coef: &Q, other: &Chain) -> Result<Chain> {
        self.check_same(other)?;
        let mut out = self.clone();
        for (w, v) in &other.terms {
            out.add_canonical(w.clone(), coef * v);
        }
        Ok(out)
    }

    pub fn add(&self, other: &Chain) -> Result<Chain> {
        self.add_scaled(&Q::one(), other)
    }

    pub fn sub(&self, other: &Chain) -> Result<Chain> {
        self.add_scaled(&-Q::one(), other)
    }

    pub fn scale(&self, s: &Q) -> Chain {
        let mut out = Chain::zero(self.space.clone());
        for (w, v) in &self.terms {
            out.add_canonical(w.clone(), v * s);
        }
        out
    }

    /// Coordinates in the rank-ordered basis.
    pub fn to_vector(&self) -> SparseVector {
        let mut v: SparseVector = self.terms.iter().map(|(w, c)| (self.space.rank(w), c.clone())).collect();
        v.sort_by_key(|(i, _)| *i);
        v
    }

    /// Whether `self = s · other` for some nonzero rational `s`.
    pub fn proportional_to(&self, other: &Chain) -> Option<Q> {
        if self.space != other.space || self.len() != other.len() || self.is_zero() {
            return None;
        }
        let (w0, c0) = self.terms.iter().next()?;
        let s = c0 / other.terms.get(w0)?;
        self.terms.iter().all(|(w, c)| other.terms.get(w).is_some_and(|d| &(d * &s) == c)).then_some(s)
    }

    /// JSON array of `{word, numerator, denominator}`.
    pub fn to_json(&self) -> Value {
        Value::Array(
            self.terms
                .iter()
                .map(|(w, c)| {
                    json!({
                        "word": self.space.word_label(w),
                        "numerator": bigint_json(c.numer()),
                        "denominator": bigint_json(c.denom()),
                    })
                })
                .collect(),
        )
    }

    /// Maps every word of `self` into `target`, factor by factor. `map`
    /// receives the position and the factor and may drop the word by
    /// returning `None`. Wedge factors of the target are reordered with sign.
    pub fn project(&self, target: Space, map: impl Fn(usize, u32) -> Option<u32>) -> Result<Chain> {
        let mut out = Chain::zero(target);
        'words: for (w, c) in &self.terms {
            let mut mapped = Vec::with_capacity(w.len());
            for (pos, &f) in w.iter().enumerate() {
                match map(pos, f) {
                    Some(g) => mapped.push(g),
                    None => continue 'words,
                }
            }
            out.add_term(mapped, c.clone())?;
        }
        Ok(out)
    }

    /// Expands wedge factors into alternating tensors with weight `1/k!`:
    /// `a_1∧…∧a_k ↦ (1/k!) Σ_σ sgn(σ) a_σ(1)⊗…⊗a_σ(k)`. For mixed spaces the
    /// leading factor stays in front. `map` reindexes factors as in
    /// [`Chain::project`].
    pub fn alternating_embedding(&self, target: Space, map: impl Fn(usize, u32) -> Option<u32>) -> Result<Chain> {
        if target.kind() != SpaceKind::Tensor {
            return Err(Error::SpaceMismatch { expected: "tensor space".into(), found: target.to_string() });
        }
        let skip = usize::from(self.space.kind() == SpaceKind::Mixed);
        let k = self.space.degree();
        let fact: i64 = (1..=k as i64).product();
        let mut out = Chain::zero(target);
        for (w, c) in &self.terms {
            let Some(mapped) = w.iter().enumerate().map(|(pos, &f)| map(pos, f)).collect::<Option<Vec<_>>>() else {
                continue;
            };
            let weight = c / Q::from_integer(fact.into());
            for perm in permutations(k) {
                let mut word = mapped[..skip].to_vec();
                word.extend(perm.iter().map(|&i| mapped[skip + i]));
                let s = permutation_sign(&perm);
                out.add_term(word, if s > 0 { weight.clone() } else { -weight.clone() })?;
            }
        }
        Ok(out)
    }
}

/// All permutations of `0..k` in lexicographic order.
pub fn permutations(k: usize) -> Vec<Vec<usize>> {
    use itertools::Itertools;
    (0..k).permutations(k).collect()
}

pub fn permutation_sign(perm: &[usize]) -> i32 {
    let mut inversions = 0;
    for i in 0..perm.len() {
        for j in i + 1..perm.len() {
            if perm[i] > perm[j] {
                inversions += 1;
            }
        }
    }
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}
