//! Elementary number-theoretic primitives.
//!
//! Everything here is exact. Inputs are capped at [`MAX_MAGNITUDE`] so that
//! trial division stays bounded and every derived quantity (divisor sums,
//! kernel products) fits comfortably in `i64`/`i128`.

use crate::error::{Error, Result};

/// Largest integer accepted by [`factorize`] and everything built on it.
pub const MAX_MAGNITUDE: u64 = 1 << 50;

/// Prime-power decomposition of a positive integer.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Factorization {
    n: u64,
    factors: Vec<(u64, u32)>,
}

impl Factorization {
    pub fn n(&self) -> u64 {
        self.n
    }

    /// `(prime, exponent)` pairs with strictly increasing primes.
    pub fn factors(&self) -> &[(u64, u32)] {
        &self.factors
    }

    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.factors.iter().map(|&(p, _)| p)
    }

    /// Number of divisors, `τ(n)`.
    pub fn divisor_count(&self) -> usize {
        self.factors.iter().map(|&(_, e)| e as usize + 1).product()
    }

    pub fn is_squarefree(&self) -> bool {
        self.factors.iter().all(|&(_, e)| e == 1)
    }
}

pub(crate) fn check_positive(what: &'static str, n: u64) -> Result<()> {
    if n == 0 {
        return Err(Error::Domain(format!("{what} must be positive, got 0")));
    }
    if n > MAX_MAGNITUDE {
        return Err(Error::Capacity {
            what,
            value: n,
            cap: MAX_MAGNITUDE,
        });
    }
    Ok(())
}

/// Factorizes `n` by trial division up to `√n`.
pub fn factorize(n: u64) -> Result<Factorization> {
    check_positive("n", n)?;
    let mut factors = Vec::new();
    let mut rest = n;
    let mut p = 2u64;
    while p * p <= rest {
        if rest.is_multiple_of(p) {
            let mut e = 0;
            while rest.is_multiple_of(p) {
                rest /= p;
                e += 1;
            }
            factors.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if rest > 1 {
        factors.push((rest, 1));
    }
    Ok(Factorization { n, factors })
}

/// Sorted divisors of a positive integer.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DivisorList {
    r: u64,
    divisors: Vec<u64>,
}

impl DivisorList {
    pub fn from_factorization(fact: &Factorization) -> Self {
        let mut divisors = Vec::with_capacity(fact.divisor_count());
        divisors.push(1u64);
        for &(p, e) in fact.factors() {
            let existing = divisors.len();
            let mut power = 1u64;
            for _ in 0..e {
                power *= p;
                for i in 0..existing {
                    divisors.push(divisors[i] * power);
                }
            }
        }
        divisors.sort_unstable();
        DivisorList {
            r: fact.n(),
            divisors,
        }
    }

    pub fn modulus(&self) -> u64 {
        self.r
    }

    pub fn as_slice(&self) -> &[u64] {
        &self.divisors
    }

    pub fn iter(&self) -> impl Iterator<Item = u64> + '_ {
        self.divisors.iter().copied()
    }

    /// `τ(r)`.
    pub fn len(&self) -> usize {
        self.divisors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.divisors.is_empty()
    }

    /// Position of `d` in the sorted list, if `d | r`.
    pub fn index_of(&self, d: u64) -> Option<usize> {
        self.divisors.binary_search(&d).ok()
    }
}

pub fn divisors(r: u64) -> Result<DivisorList> {
    Ok(DivisorList::from_factorization(&factorize(r)?))
}

/// Greatest common divisor; `gcd(0, 0) = 0`.
pub fn gcd(a: u64, b: u64) -> u64 {
    num_integer::gcd(a, b)
}

pub fn mobius(n: u64) -> Result<i64> {
    let fact = factorize(n)?;
    Ok(mobius_of(&fact))
}

pub(crate) fn mobius_of(fact: &Factorization) -> i64 {
    if fact.is_squarefree() {
        if fact.factors().len().is_multiple_of(2) {
            1
        } else {
            -1
        }
    } else {
        0
    }
}

/// Euler's totient, computed as `∏ p^(e-1) (p - 1)` over the factorization.
pub fn euler_phi(n: u64) -> Result<u64> {
    Ok(phi_of(&factorize(n)?))
}

pub(crate) fn phi_of(fact: &Factorization) -> u64 {
    fact.factors()
        .iter()
        .map(|&(p, e)| p.pow(e - 1) * (p - 1))
        .product()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_phi(n: u64) -> u64 {
        (1..=n).filter(|&k| gcd(k, n) == 1).count() as u64
    }

    fn is_prime(p: u64) -> bool {
        p >= 2
            && (2..)
                .take_while(|q| q * q <= p)
                .all(|q| !p.is_multiple_of(q))
    }

    #[test]
    fn factorize_examples() {
        assert!(factorize(1).unwrap().factors().is_empty());
        assert_eq!(factorize(12).unwrap().factors(), &[(2, 2), (3, 1)]);
        let f = factorize(720720).unwrap();
        assert_eq!(
            f.factors(),
            &[(2, 4), (3, 2), (5, 1), (7, 1), (11, 1), (13, 1)]
        );
        let back: u64 = f.factors().iter().map(|&(p, e)| p.pow(e)).product();
        assert_eq!(back, 720720);
        assert!(f.primes().all(is_prime));
    }

    #[test]
    fn factorize_rejects_zero_and_oversized() {
        assert!(matches!(factorize(0), Err(Error::Domain(_))));
        assert!(matches!(
            factorize(MAX_MAGNITUDE + 1),
            Err(Error::Capacity { .. })
        ));
        let f = factorize(MAX_MAGNITUDE - 35).unwrap();
        let back: u64 = f.factors().iter().map(|&(p, e)| p.pow(e)).product();
        assert_eq!(back, MAX_MAGNITUDE - 35);
        assert!(f.primes().all(is_prime));
    }

    #[test]
    fn factorization_invariants_small() {
        for n in 1..=2000u64 {
            let f = factorize(n).unwrap();
            let back: u64 = f.factors().iter().map(|&(p, e)| p.pow(e)).product();
            assert_eq!(back, n);
            assert!(f.factors().windows(2).all(|w| w[0].0 < w[1].0));
            assert!(f.factors().iter().all(|&(p, e)| e >= 1 && is_prime(p)));
            assert_eq!(n == 1, f.factors().is_empty());
        }
    }

    #[test]
    fn divisor_examples() {
        assert_eq!(divisors(1).unwrap().as_slice(), &[1]);
        assert_eq!(divisors(12).unwrap().as_slice(), &[1, 2, 3, 4, 6, 12]);
        let big = divisors(720720).unwrap();
        assert_eq!(big.len(), 5 * 3 * 2 * 2 * 2 * 2);
        assert_eq!(big.len(), 240);
        assert!(big.iter().all(|d| 720720 % d == 0));
        assert!(big.as_slice().windows(2).all(|w| w[0] < w[1]));
        assert!(matches!(divisors(0), Err(Error::Domain(_))));
    }

    #[test]
    fn divisors_match_brute_force() {
        for r in 1..=500u64 {
            let brute: Vec<u64> = (1..=r).filter(|d| r % d == 0).collect();
            assert_eq!(divisors(r).unwrap().as_slice(), brute.as_slice());
        }
    }

    #[test]
    fn divisor_factorizations_divide_componentwise() {
        for r in [360u64, 720720, 1024, 9699690] {
            let fr = factorize(r).unwrap();
            for d in divisors(r).unwrap().iter() {
                for &(p, e) in factorize(d).unwrap().factors() {
                    let er = fr
                        .factors()
                        .iter()
                        .find(|&&(q, _)| q == p)
                        .map(|&(_, e)| e)
                        .unwrap();
                    assert!(e <= er);
                }
            }
        }
    }

    #[test]
    fn gcd_examples() {
        assert_eq!(gcd(4, 6), 2);
        for n in 1..50 {
            assert_eq!(gcd(n, 1), 1);
        }
        assert_eq!(gcd(0, 7), 7);
        assert_eq!(gcd(0, 0), 0);
    }

    #[test]
    fn mobius_examples() {
        assert_eq!(mobius(1).unwrap(), 1);
        assert_eq!(mobius(12).unwrap(), 0);
        assert_eq!(mobius(30).unwrap(), -1);
        assert!(mobius(0).is_err());
    }

    #[test]
    fn phi_examples() {
        assert_eq!(euler_phi(1).unwrap(), 1);
        assert_eq!(euler_phi(4).unwrap(), brute_phi(4));
        assert_eq!(euler_phi(4).unwrap(), 2);
        assert_eq!(euler_phi(10).unwrap(), brute_phi(10));
        assert_eq!(euler_phi(10).unwrap(), 4);
        assert!(euler_phi(0).is_err());
    }

    #[test]
    fn phi_matches_brute_force() {
        for n in 1..=1000 {
            assert_eq!(euler_phi(n).unwrap(), brute_phi(n), "n = {n}");
        }
    }

    #[test]
    fn totient_divisor_sum() {
        for r in 1..=1000u64 {
            let s: u64 = divisors(r)
                .unwrap()
                .iter()
                .map(|d| euler_phi(d).unwrap())
                .sum();
            assert_eq!(s, r);
        }
    }

    #[test]
    fn mobius_divisor_sum() {
        for n in 1..=1000u64 {
            let s: i64 = divisors(n)
                .unwrap()
                .iter()
                .map(|d| mobius(d).unwrap())
                .sum();
            assert_eq!(s, i64::from(n == 1));
        }
    }

    #[test]
    fn gcd_class_counts_are_totients() {
        for r in 1..=300u64 {
            for d in divisors(r).unwrap().iter() {
                let count = (1..=r).filter(|&k| gcd(k, r) == d).count() as u64;
                assert_eq!(count, euler_phi(r / d).unwrap(), "r = {r}, d = {d}");
            }
        }
    }
}
