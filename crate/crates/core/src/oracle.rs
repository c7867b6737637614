//! Reference implementations that expand to all `r` residues.
//!
//! These exist to cross-check the divisor-indexed transforms and are capped
//! at [`NAIVE_CAP`]; the production paths never call them.

use crate::arith::check_positive;
use crate::error::{Error, Result};
use crate::even::{EvenFunction, EvenSpectrum};
use crate::ramanujan::ramanujan_sum;
use crate::scalar::Scalar;

/// Largest modulus accepted by the residue-expanding oracles.
pub const NAIVE_CAP: u64 = 100_000;

/// RFT by the `r`-term sum `R(d) = φ(d)⁻¹ Σ_{n=1}^{r} f(n)·C(n, d)`, with
/// every `C(n, d)` evaluated independently.
pub fn rft_naive<S: Scalar>(f: &EvenFunction<S>) -> Result<EvenSpectrum<S>> {
    let r = f.modulus();
    check_positive("r", r)?;
    if r > NAIVE_CAP {
        return Err(Error::Capacity {
            what: "r",
            value: r,
            cap: NAIVE_CAP,
        });
    }
    let mut coeffs = Vec::with_capacity(f.divisors().len());
    for d in f.divisors().iter() {
        let mut acc = S::zero();
        for n in 1..=r as i64 {
            let c = ramanujan_sum(n, d)?;
            if c != 0 {
                acc = acc + f.at(n).clone() * S::from_integer(i128::from(c));
            }
        }
        coeffs.push(acc.div_integer(crate::arith::euler_phi(d)? as i64));
    }
    EvenSpectrum::new(r, coeffs)
}
