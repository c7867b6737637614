//! Ramanujan's sum `C(n, r)`.
//!
//! The production path is the Möbius divisor sum
//! `C(n, r) = Σ_{d | gcd(n, r)} d·μ(r/d)`, evaluated on prime exponent
//! vectors so that only the terms with `μ(r/d) != 0` are visited. The
//! defining exponential sum is kept as [`ramanujan_sum_oracle`] for tests.

use std::f64::consts::TAU;

use num_complex::Complex64;

use crate::arith::{self, check_positive, DivisorList, Factorization};
use crate::error::{Error, Result};

/// Largest modulus accepted by [`ramanujan_sum_oracle`].
pub const ORACLE_CAP: u64 = 1_000_000;

/// Exponent vectors of every divisor of `r`, relative to the primes of `r`.
///
/// Divisors are kept in increasing order, so `r / d` for the divisor at
/// index `i` sits at index `τ(r) - 1 - i`.
#[derive(Debug, Clone)]
pub(crate) struct DivisorLattice {
    fact: Factorization,
    divisors: DivisorList,
    // τ(r) rows of ω(r) exponents
    exponents: Vec<u8>,
    phi: Vec<u64>,
}

impl DivisorLattice {
    pub(crate) fn new(r: u64) -> Result<Self> {
        let fact = arith::factorize(r)?;
        let divisors = DivisorList::from_factorization(&fact);
        let width = fact.factors().len();
        let mut exponents = Vec::with_capacity(divisors.len() * width);
        let mut phi = Vec::with_capacity(divisors.len());
        for d in divisors.iter() {
            let mut totient = 1u64;
            for &(p, _) in fact.factors() {
                let mut rest = d;
                let mut e = 0u8;
                while rest % p == 0 {
                    rest /= p;
                    e += 1;
                }
                if e > 0 {
                    totient *= p.pow(u32::from(e) - 1) * (p - 1);
                }
                exponents.push(e);
            }
            phi.push(totient);
        }
        Ok(DivisorLattice {
            fact,
            divisors,
            exponents,
            phi,
        })
    }

    pub(crate) fn modulus(&self) -> u64 {
        self.fact.n()
    }

    pub(crate) fn divisors(&self) -> &DivisorList {
        &self.divisors
    }

    pub(crate) fn len(&self) -> usize {
        self.divisors.len()
    }

    fn exps(&self, idx: usize) -> &[u8] {
        let w = self.fact.factors().len();
        &self.exponents[idx * w..(idx + 1) * w]
    }

    /// `φ(d)` for the divisor at `idx`.
    pub(crate) fn phi(&self, idx: usize) -> u64 {
        self.phi[idx]
    }

    /// Index of `r / d` given the index of `d`.
    pub(crate) fn complement(&self, idx: usize) -> usize {
        self.len() - 1 - idx
    }

    /// Index of `gcd(n, r)` for an arbitrary integer `n`.
    pub(crate) fn gcd_index(&self, n: i128) -> usize {
        let r = self.modulus();
        let reduced = n.rem_euclid(i128::from(r)) as u64;
        let g = arith::gcd(reduced, r);
        self.divisors
            .index_of(g)
            .expect("gcd(n, r) always divides r")
    }

    /// `C(a, m)` where `a` and `m` are the divisors at `arg_idx` and `mod_idx`.
    pub(crate) fn ramanujan(&self, arg_idx: usize, mod_idx: usize) -> i64 {
        let primes = self.fact.factors();
        let modulus = self.exps(mod_idx);
        let arg = self.exps(arg_idx);
        mobius_divisor_sum(primes, modulus, arg)
    }
}

/// `Σ_{d | g} d·μ(m/d)` where `m` and `g = gcd(a, m)` are given by exponent
/// vectors over `primes`. Only divisors with `m/d` squarefree contribute,
/// so each prime offers at most two exponents for `d`: `e_m` and `e_m - 1`.
fn mobius_divisor_sum(primes: &[(u64, u32)], modulus: &[u8], arg: &[u8]) -> i64 {
    fn walk(primes: &[(u64, u32)], modulus: &[u8], arg: &[u8], i: usize, term: i64, acc: &mut i64) {
        if i == primes.len() {
            *acc += term;
            return;
        }
        let p = primes[i].0 as i64;
        let em = modulus[i];
        let eg = em.min(arg[i]);
        if em == 0 {
            walk(primes, modulus, arg, i + 1, term, acc);
            return;
        }
        // d has exponent e_m: μ factor 1
        if eg >= em {
            walk(
                primes,
                modulus,
                arg,
                i + 1,
                term * p.pow(u32::from(em)),
                acc,
            );
        }
        // d has exponent e_m - 1: μ factor -1
        if eg + 1 >= em {
            walk(
                primes,
                modulus,
                arg,
                i + 1,
                -term * p.pow(u32::from(em) - 1),
                acc,
            );
        }
    }
    let mut acc = 0i64;
    walk(primes, modulus, arg, 0, 1, &mut acc);
    acc
}

/// Ramanujan's sum `C(n, r)`, exactly.
///
/// `n` is reduced into `1..=r` first, so `n ≡ 0` behaves as `n = r`.
pub fn ramanujan_sum(n: i64, r: u64) -> Result<i64> {
    check_positive("r", r)?;
    let fact = arith::factorize(r)?;
    let reduced = i128::from(n).rem_euclid(i128::from(r)) as u64;
    let g = arith::gcd(reduced, r);
    let mut modulus = Vec::with_capacity(fact.factors().len());
    let mut arg = Vec::with_capacity(fact.factors().len());
    for &(p, e) in fact.factors() {
        modulus.push(e as u8);
        let mut rest = g;
        let mut eg = 0u8;
        while rest.is_multiple_of(p) {
            rest /= p;
            eg += 1;
        }
        arg.push(eg);
    }
    Ok(mobius_divisor_sum(fact.factors(), &modulus, &arg))
}

/// The defining sum `Σ_{k ≤ r, gcd(k, r) = 1} exp(2πikn/r)` in double
/// precision. Test oracle only; `r` is capped at [`ORACLE_CAP`].
pub fn ramanujan_sum_oracle(n: i64, r: u64) -> Result<Complex64> {
    check_positive("r", r)?;
    if r > ORACLE_CAP {
        return Err(Error::Capacity {
            what: "r",
            value: r,
            cap: ORACLE_CAP,
        });
    }
    let rr = i128::from(r);
    let reduced = i128::from(n).rem_euclid(rr);
    let mut sum = Complex64::new(0.0, 0.0);
    for k in 1..=r {
        if arith::gcd(k, r) != 1 {
            continue;
        }
        let phase = (i128::from(k) * reduced).rem_euclid(rr) as f64 / r as f64;
        sum += Complex64::from_polar(1.0, TAU * phase);
    }
    Ok(sum)
}

fn divisor_lattice_for(d: u64, r: u64) -> Result<(DivisorLattice, usize)> {
    check_positive("d", d)?;
    let lattice = DivisorLattice::new(r)?;
    let idx = lattice
        .divisors()
        .index_of(d)
        .ok_or_else(|| Error::Domain(format!("{d} does not divide {r}")))?;
    Ok((lattice, idx))
}

/// `C(n, d)` for `n = 1..=r`. Requires `d | r`.
pub fn ramanujan_row(d: u64, r: u64) -> Result<Vec<i64>> {
    let (lattice, d_idx) = divisor_lattice_for(d, r)?;
    let by_gcd: Vec<i64> = (0..lattice.len())
        .map(|e| lattice.ramanujan(e, d_idx))
        .collect();
    Ok((1..=r)
        .map(|n| by_gcd[lattice.gcd_index(i128::from(n))])
        .collect())
}

/// `C(r/e, d)` for each divisor `e` of `r` in increasing order. Requires `d | r`.
pub fn ramanujan_divisor_row(d: u64, r: u64) -> Result<Vec<i64>> {
    let (lattice, d_idx) = divisor_lattice_for(d, r)?;
    Ok((0..lattice.len())
        .map(|e| lattice.ramanujan(lattice.complement(e), d_idx))
        .collect())
}

/// All values `C(n, d)` for `d | r`, indexed by `gcd(n, r)`.
///
/// For `d | r` the value `C(n, d)` depends on `n` only through
/// `gcd(n, r)`, so a `τ(r) × τ(r)` table covers every argument.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RamanujanTable {
    divisors: DivisorList,
    // row = gcd(n, r) index, column = d index
    entries: Vec<i64>,
}

impl RamanujanTable {
    pub fn new(r: u64) -> Result<Self> {
        let lattice = DivisorLattice::new(r)?;
        let t = lattice.len();
        let mut entries = Vec::with_capacity(t * t);
        for g in 0..t {
            for d in 0..t {
                entries.push(lattice.ramanujan(g, d));
            }
        }
        Ok(RamanujanTable {
            divisors: lattice.divisors,
            entries,
        })
    }

    pub fn modulus(&self) -> u64 {
        self.divisors.modulus()
    }

    pub fn divisors(&self) -> &DivisorList {
        &self.divisors
    }

    /// `C(n, d)`, or `None` when `d` does not divide the modulus.
    pub fn get(&self, n: i64, d: u64) -> Option<i64> {
        let r = self.modulus();
        let d_idx = self.divisors.index_of(d)?;
        let reduced = i128::from(n).rem_euclid(i128::from(r)) as u64;
        let g_idx = self.divisors.index_of(arith::gcd(reduced, r))?;
        Some(self.entries[g_idx * self.divisors.len() + d_idx])
    }

    /// `C(e, d)` for divisors `e` and `d` of the modulus.
    pub fn at_divisors(&self, e: u64, d: u64) -> Option<i64> {
        let e_idx = self.divisors.index_of(e)?;
        let d_idx = self.divisors.index_of(d)?;
        Some(self.entries[e_idx * self.divisors.len() + d_idx])
    }
}
