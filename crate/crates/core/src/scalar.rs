//! Exact rational scalars and sparse rational vectors.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde_json::Value;

/// Exact rational in lowest terms with positive denominator.
pub type Q = BigRational;

/// Sparse vector: `(index, coefficient)` pairs sorted by index, no zeros.
pub type SparseVector = Vec<(usize, Q)>;

pub fn qi(v: i64) -> Q {
    Q::from_integer(BigInt::from(v))
}

pub fn qr(num: i64, den: i64) -> Q {
    Q::new(BigInt::from(num), BigInt::from(den))
}

pub fn q_is_integer(v: &Q) -> bool {
    v.denom().is_one()
}

/// Reduces `v` modulo the prime `p`, failing if `p` divides the denominator.
pub fn q_mod_p(v: &Q, p: u64) -> Option<u64> {
    let pb = BigInt::from(p);
    let den = mod_positive(v.denom(), &pb);
    if den.is_zero() {
        return None;
    }
    let num = mod_positive(v.numer(), &pb);
    let num = num.to_u64().expect("reduced value fits");
    let den = den.to_u64().expect("reduced value fits");
    Some(crate::linalg::modular::mul_mod(num, crate::linalg::modular::inv_mod(den, p), p))
}

fn mod_positive(v: &BigInt, m: &BigInt) -> BigInt {
    let r = v % m;
    if r.is_negative() {
        r + m
    } else {
        r
    }
}

/// JSON encoding of an arbitrary-precision integer: a number when it fits in
/// `i64`, a decimal string otherwise.
pub fn bigint_json(v: &BigInt) -> Value {
    match v.to_i64() {
        Some(x) => Value::from(x),
        None => Value::from(v.to_string()),
    }
}

/// Adds `coef * src` into the sorted sparse vector `dst`.
pub fn axpy(dst: &mut SparseVector, coef: &Q, src: &[(usize, Q)]) {
    if coef.is_zero() || src.is_empty() {
        return;
    }
    let mut out = Vec::with_capacity(dst.len() + src.len());
    let mut a = std::mem::take(dst).into_iter().peekable();
    let mut b = src.iter().peekable();
    loop {
        match (a.peek(), b.peek()) {
            (Some((ia, _)), Some((ib, _))) => {
                if ia < ib {
                    out.push(a.next().unwrap());
                } else if ib < ia {
                    let (i, v) = b.next().unwrap();
                    out.push((*i, coef * v));
                } else {
                    let (i, va) = a.next().unwrap();
                    let (_, vb) = b.next().unwrap();
                    let s = va + coef * vb;
                    if !s.is_zero() {
                        out.push((i, s));
                    }
                }
            }
            (Some(_), None) => out.push(a.next().unwrap()),
            (None, Some(_)) => {
                let (i, v) = b.next().unwrap();
                out.push((*i, coef * v));
            }
            (None, None) => break,
        }
    }
    *dst = out;
}

/// Collects unsorted `(index, value)` terms into a canonical sparse vector.
pub fn collect_sparse(terms: impl IntoIterator<Item = (usize, Q)>) -> SparseVector {
    let mut map = std::collections::BTreeMap::new();
    for (i, v) in terms {
        let e = map.entry(i).or_insert_with(Q::zero);
        *e += v;
    }
    map.into_iter().filter(|(_, v)| !v.is_zero()).collect()
}

pub fn one() -> Q {
    Q::one()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rationals_are_canonical() {
        let v = qr(6, -4);
        assert_eq!(v.numer(), &BigInt::from(-3));
        assert_eq!(v.denom(), &BigInt::from(2));
    }

    #[test]
    fn reduction_mod_p() {
        assert_eq!(q_mod_p(&qr(1, 2), 7), Some(4));
        assert_eq!(q_mod_p(&qi(-1), 7), Some(6));
        assert_eq!(q_mod_p(&qr(1, 7), 7), None);
    }

    #[test]
    fn axpy_cancels() {
        let mut a = vec![(0, qi(1)), (3, qi(2))];
        axpy(&mut a, &qi(-2), &[(1, qi(1)), (3, qi(1))]);
        assert_eq!(a, vec![(0, qi(1)), (1, qi(-2))]);
    }
}
