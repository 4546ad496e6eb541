use super::primes::is_prime;
use super::{FieldTag, RankCertificate, RankMethod, SparseMatrix};
use crate::error::{Error, Result};
use crate::scalar::{q_mod_p, Q};

pub fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        exp >>= 1;
    }
    acc
}

/// Inverse of a nonzero residue modulo a prime.
pub fn inv_mod(a: u64, p: u64) -> u64 {
    debug_assert!(!a.is_multiple_of(p));
    pow_mod(a, p - 2, p)
}

/// Incremental rank over `F_p` with a dense working column.
///
/// Basis vectors are stored sparsely, normalized so their lowest entry is 1,
/// and indexed by that pivot row. Memory is bounded by the reduced basis.
pub struct ModularReducer {
    p: u64,
    work: Vec<u64>,
    pivot_of_row: Vec<Option<u32>>,
    basis: Vec<Vec<(u32, u64)>>,
}

impl ModularReducer {
    pub fn new(rows: usize, p: u64) -> Self {
        Self { p, work: vec![0; rows], pivot_of_row: vec![None; rows], basis: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn is_full(&self) -> bool {
        self.basis.len() == self.work.len()
    }

    /// Reduces one column (entries already in `[0, p)`); returns whether it
    /// was independent of the columns seen so far.
    pub fn push(&mut self, column: &[(usize, u64)]) -> bool {
        let p = self.p;
        let mut hi = None;
        for &(r, v) in column {
            let w = &mut self.work[r];
            *w = (*w + v) % p;
            hi = hi.max(Some(r));
        }
        let Some(hi) = hi else { return false };
        let mut r = hi + 1;
        while r > 0 {
            r -= 1;
            let f = self.work[r];
            if f == 0 {
                continue;
            }
            match self.pivot_of_row[r] {
                Some(b) => {
                    let neg = p - f;
                    for &(i, v) in &self.basis[b as usize] {
                        let w = &mut self.work[i as usize];
                        *w = (*w + mul_mod(neg, v, p)) % p;
                    }
                }
                None => {
                    let inv = inv_mod(f, p);
                    let mut vec = Vec::new();
                    for i in 0..=r {
                        let w = std::mem::take(&mut self.work[i]);
                        if w != 0 {
                            vec.push((i as u32, mul_mod(w, inv, p)));
                        }
                    }
                    self.pivot_of_row[r] = Some(self.basis.len() as u32);
                    self.basis.push(vec);
                    return true;
                }
            }
        }
        false
    }
}

/// Rank over `F_p` of columns produced on demand. Stops early once the rank
/// reaches the row count.
pub fn rank_mod_p_streamed<I>(rows: usize, columns: I, p: u64) -> Result<usize>
where
    I: IntoIterator<Item = Result<Vec<(usize, u64)>>>,
{
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let mut reducer = ModularReducer::new(rows, p);
    for col in columns {
        if reducer.is_full() {
            break;
        }
        reducer.push(&col?);
    }
    Ok(reducer.rank())
}

/// Rank over `F_p` of a rational matrix; fails if `p` divides a denominator.
pub fn rank_mod_p(m: &SparseMatrix<Q>, p: u64) -> Result<RankCertificate> {
    let order = super::sparsest_first(m.columns());
    let cols = order.into_iter().map(|j| {
        m.column(j)
            .iter()
            .map(|(r, v)| q_mod_p(v, p).map(|x| (*r, x)).ok_or(Error::DenominatorDivisible(p)))
            .filter(|e| !matches!(e, Ok((_, 0))))
            .collect::<Result<Vec<_>>>()
    });
    let rank = rank_mod_p_streamed(m.rows(), cols, p)?;
    Ok(RankCertificate { rank, field: FieldTag::Prime(p), method: RankMethod::Modular, primes_used: vec![p] })
}
