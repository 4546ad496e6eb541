use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::modular::{mul_mod, pow_mod};

/// Deterministic Miller–Rabin for all `u64`.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &b in &BASES {
        if n.is_multiple_of(b) {
            return n == b;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for &a in &BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Seeded source of distinct random 30-bit primes.
#[derive(Clone, Debug)]
pub struct PrimeSource {
    rng: ChaCha8Rng,
    issued: Vec<u64>,
}

impl PrimeSource {
    pub fn new(seed: u64) -> Self {
        Self { rng: ChaCha8Rng::seed_from_u64(seed), issued: Vec::new() }
    }

    /// Next prime in `[2^29, 2^30)` not issued before. Every such prime
    /// exceeds any `n` handled here, so structure constants and `n!` are units.
    pub fn next_prime(&mut self) -> u64 {
        loop {
            let candidate = self.rng.gen_range((1u64 << 29)..(1u64 << 30)) | 1;
            if is_prime(candidate) && !self.issued.contains(&candidate) {
                self.issued.push(candidate);
                return candidate;
            }
        }
    }

    pub fn issued(&self) -> &[u64] {
        &self.issued
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_primes() {
        let primes: Vec<u64> = (0..50).filter(|&n| is_prime(n)).collect();
        assert_eq!(primes, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47]);
        assert!(is_prime(1_000_000_007));
        assert!(!is_prime(1_000_000_007u64 * 998_244_353));
        assert!(!is_prime(3_215_031_751)); // strong pseudoprime to bases 2, 3, 5, 7
    }

    #[test]
    fn seeded_primes_are_reproducible_and_distinct() {
        let mut a = PrimeSource::new(42);
        let mut b = PrimeSource::new(42);
        let pa: Vec<_> = (0..3).map(|_| a.next_prime()).collect();
        let pb: Vec<_> = (0..3).map(|_| b.next_prime()).collect();
        assert_eq!(pa, pb);
        assert!(pa[0] != pa[1] && pa[1] != pa[2]);
        assert!(pa.iter().all(|&p| (1 << 29..1 << 30).contains(&p) && is_prime(p)));
    }
}
