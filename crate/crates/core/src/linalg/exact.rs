use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{sparsest_first, FieldTag, RankCertificate, RankMethod, SparseMatrix};
use crate::error::{Error, Result};
use crate::scalar::{SparseVector, Q};

type IntVec = Vec<(usize, BigInt)>;

/// `a·x + b·y` on sorted sparse integer vectors.
fn combine(a: &BigInt, x: &IntVec, b: &BigInt, y: &IntVec) -> IntVec {
    let mut out = Vec::with_capacity(x.len() + y.len());
    let (mut i, mut j) = (0, 0);
    while i < x.len() || j < y.len() {
        let take_x = j >= y.len() || (i < x.len() && x[i].0 < y[j].0);
        let take_y = i >= x.len() || (j < y.len() && y[j].0 < x[i].0);
        if take_x {
            out.push((x[i].0, a * &x[i].1));
            i += 1;
        } else if take_y {
            out.push((y[j].0, b * &y[j].1));
            j += 1;
        } else {
            let v = a * &x[i].1 + b * &y[j].1;
            if !v.is_zero() {
                out.push((x[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Clears denominators of a rational column. Returns the integer column and
/// the positive scale `s` with `int = s · col`.
fn integerize(col: &[(usize, Q)]) -> (IntVec, BigInt) {
    let lcm = col.iter().fold(BigInt::one(), |acc, (_, v)| acc.lcm(v.denom()));
    let ints = col.iter().map(|(r, v)| (*r, v.numer() * (&lcm / v.denom()))).collect();
    (ints, lcm)
}

/// Fraction-free incremental column reducer over `Z ⊂ Q`.
///
/// Every stored column `b_i` satisfies `b_i = M t_i` for its tracking vector
/// `t_i` (when tracking is enabled). Eliminations use `x ← β·x − τ·b` with
/// the common content divided out afterwards, so no fractions appear.
struct FractionFreeReducer {
    pivots: HashMap<usize, usize>,
    basis: Vec<IntVec>,
    tracks: Vec<IntVec>,
}

struct Reduced {
    column: IntVec,
    track: IntVec,
    scale: BigInt,
}

impl FractionFreeReducer {
    fn new() -> Self {
        Self { pivots: HashMap::new(), basis: Vec::new(), tracks: Vec::new() }
    }

    fn rank(&self) -> usize {
        self.basis.len()
    }

    /// Reduces `column` until its lowest entry is not a pivot. The invariant
    /// `column = scale·column₀ + M·track` is preserved (up to the content
    /// normalization, which divides all three).
    fn reduce(&self, column: IntVec, track: IntVec, tracking: bool) -> Reduced {
        let mut cur = Reduced { column, track, scale: BigInt::one() };
        while let Some((low, t)) = cur.column.last() {
            let Some(&bi) = self.pivots.get(low) else { break };
            let b = &self.basis[bi].last().expect("nonempty basis column").1;
            let g = t.gcd(b);
            let alpha = b / &g;
            let beta = -(t / &g);
            cur.column = combine(&alpha, &cur.column, &beta, &self.basis[bi]);
            if tracking {
                cur.track = combine(&alpha, &cur.track, &beta, &self.tracks[bi]);
            }
            cur.scale *= &alpha;
            normalize(&mut cur);
        }
        cur
    }

    fn insert(&mut self, reduced: Reduced) {
        let low = reduced.column.last().expect("nonzero column").0;
        self.pivots.insert(low, self.basis.len());
        self.basis.push(reduced.column);
        self.tracks.push(reduced.track);
    }
}

fn normalize(r: &mut Reduced) {
    let mut g = r.scale.abs();
    for (_, v) in r.column.iter().chain(r.track.iter()) {
        if g.is_one() {
            return;
        }
        g = g.gcd(v);
    }
    if g.is_zero() || g.is_one() {
        return;
    }
    if r.scale.is_negative() {
        g = -g;
    }
    for (_, v) in r.column.iter_mut().chain(r.track.iter_mut()) {
        *v /= &g;
    }
    r.scale /= &g;
}

/// Exact rank, kernel and solve over `Q` with a column cap.
#[derive(Clone, Copy, Debug)]
pub struct ExactSolver {
    pub col_cap: usize,
}

impl Default for ExactSolver {
    fn default() -> Self {
        Self { col_cap: 2_000_000 }
    }
}

impl ExactSolver {
    pub fn with_cap(col_cap: usize) -> Self {
        Self { col_cap }
    }

    fn check_cap(&self, m: &SparseMatrix<Q>) -> Result<()> {
        if m.cols() > self.col_cap {
            return Err(Error::CapExceeded { what: "exact elimination columns".into(), size: m.cols(), cap: self.col_cap });
        }
        Ok(())
    }

    pub fn rank(&self, m: &SparseMatrix<Q>) -> Result<RankCertificate> {
        self.check_cap(m)?;
        let mut reducer = FractionFreeReducer::new();
        for j in sparsest_first(m.columns()) {
            if reducer.rank() == m.rows() {
                break;
            }
            let (col, _) = integerize(m.column(j));
            let r = reducer.reduce(col, Vec::new(), false);
            if !r.column.is_empty() {
                reducer.insert(r);
            }
        }
        Ok(RankCertificate { rank: reducer.rank(), field: FieldTag::Rationals, method: RankMethod::Exact, primes_used: Vec::new() })
    }

    /// Kernel basis in reduced row echelon form (each vector has a leading 1
    /// at a position where all other vectors vanish). Every vector is
    /// re-checked against `M v = 0`.
    pub fn kernel_basis(&self, m: &SparseMatrix<Q>) -> Result<Vec<SparseVector>> {
        self.check_cap(m)?;
        let mut reducer = FractionFreeReducer::new();
        let mut kernel = Vec::new();
        for j in sparsest_first(m.columns()) {
            let (col, s) = integerize(m.column(j));
            // column j of the integerized matrix is s·M e_j
            let r = reducer.reduce(col, vec![(j, s)], true);
            if r.column.is_empty() {
                kernel.push(r.track);
            } else {
                let mut r = r;
                r.track.sort_by_key(|(i, _)| *i);
                reducer.insert(r);
            }
        }
        let vectors: Vec<SparseVector> = kernel
            .into_iter()
            .map(|t| {
                let mut v: SparseVector = t.into_iter().map(|(i, c)| (i, Q::from_integer(c))).collect();
                v.sort_by_key(|(i, _)| *i);
                v
            })
            .collect();
        let basis = rref(vectors);
        for v in &basis {
            assert!(m.mul_vec(v).is_empty(), "kernel vector failed re-check");
        }
        Ok(basis)
    }

    /// Solves `M x = b` exactly. `None` certifies `b ∉ image(M)`.
    pub fn solve(&self, m: &SparseMatrix<Q>, b: &[(usize, Q)]) -> Result<Option<SparseVector>> {
        self.check_cap(m)?;
        let mut reducer = FractionFreeReducer::new();
        for j in sparsest_first(m.columns()) {
            let (col, s) = integerize(m.column(j));
            let mut r = reducer.reduce(col, vec![(j, s)], true);
            if !r.column.is_empty() {
                r.track.sort_by_key(|(i, _)| *i);
                reducer.insert(r);
            }
        }
        let (target, s) = integerize(b);
        let r = reducer.reduce(target, Vec::new(), true);
        if !r.column.is_empty() {
            return Ok(None);
        }
        // s·b·scale + M·track = 0  ⇒  x = −track / (s·scale)
        let denom = Q::from_integer(s * r.scale);
        let x: SparseVector = r.track.into_iter().map(|(i, c)| (i, -Q::from_integer(c) / &denom)).collect();
        let mut x = x;
        x.sort_by_key(|(i, _)| *i);
        debug_assert_eq!(m.mul_vec(&x), b.to_vec());
        Ok(Some(x))
    }
}

/// Reduced row echelon form of a list of sparse row vectors over `Q`;
/// zero rows are dropped.
pub fn rref(mut rows: Vec<SparseVector>) -> Vec<SparseVector> {
    let mut out: Vec<SparseVector> = Vec::new();
    for mut v in rows.drain(..) {
        for r in &out {
            let lead = r[0].0;
            if let Ok(k) = v.binary_search_by_key(&lead, |(i, _)| *i) {
                let c = -v[k].1.clone();
                crate::scalar::axpy(&mut v, &c, r);
            }
        }
        if v.is_empty() {
            continue;
        }
        let inv = Q::one() / &v[0].1;
        for (_, c) in v.iter_mut() {
            *c *= &inv;
        }
        let lead = v[0].0;
        for r in out.iter_mut() {
            if let Ok(k) = r.binary_search_by_key(&lead, |(i, _)| *i) {
                let c = -r[k].1.clone();
                crate::scalar::axpy(r, &c, &v);
            }
        }
        out.push(v);
    }
    out.sort_by_key(|r| r[0].0);
    out
}
