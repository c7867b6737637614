//! Even functions mod r and the Ramanujan-Fourier transform.
//!
//! An even function is determined by its values on the divisors of `r`, so
//! [`EvenFunction`] stores exactly `τ(r)` values. The transform pair is
//!
//! ```text
//! R(d) = φ(d)⁻¹ Σ_{n=1}^{r} f(n)·C(n, d)        (rft)
//! R(d) = Σ_{e | r} f(r/e)·C(r/d, e)             (rft_divisor_form)
//! f(n) = r⁻¹ Σ_{d | r} R(d)·C(n, d)             (irft)
//! ```
//!
//! None of the transforms expands to `r` residues: each coefficient is an
//! integer-weighted sum over the `τ(r)` stored values, with weights computed
//! one row at a time.

use num_complex::Complex64;

use crate::arith::{DivisorList, MAX_MAGNITUDE};
use crate::error::{Error, Result};
use crate::periodic::{even_witness, same_modulus, ResidueFunction, EVEN_TOLERANCE};
use crate::ramanujan::DivisorLattice;
use crate::scalar::Scalar;

/// A function on the divisors of `r`, stored in increasing divisor order.
#[derive(Debug, Clone, PartialEq)]
pub struct EvenFunction<S> {
    divisors: DivisorList,
    values: Vec<S>,
}

/// RFT coefficients `R(d)` for `d | r`, in increasing divisor order.
#[derive(Debug, Clone, PartialEq)]
pub struct EvenSpectrum<S> {
    divisors: DivisorList,
    coeffs: Vec<S>,
}

macro_rules! divisor_indexed {
    ($ty:ident, $field:ident) => {
        impl<S: Scalar> $ty<S> {
            /// Builds from values listed in increasing divisor order.
            pub fn new(r: u64, $field: Vec<S>) -> Result<Self> {
                let divisors = crate::arith::divisors(r)?;
                if divisors.len() != $field.len() {
                    return Err(Error::Domain(format!(
                        "modulus {r} has {} divisors but {} values were given",
                        divisors.len(),
                        $field.len()
                    )));
                }
                Ok($ty { divisors, $field })
            }

            pub fn from_fn(r: u64, f: impl FnMut(u64) -> S) -> Result<Self> {
                let divisors = crate::arith::divisors(r)?;
                let $field = divisors.iter().map(f).collect();
                Ok($ty { divisors, $field })
            }

            /// Builds from `(divisor, value)` pairs in any order; the
            /// divisor set must be exactly the divisors of `r`.
            pub fn from_pairs(r: u64, pairs: Vec<(u64, S)>) -> Result<Self> {
                let divisors = crate::arith::divisors(r)?;
                let mut slots: Vec<Option<S>> = vec![None; divisors.len()];
                for (d, v) in pairs {
                    let idx = divisors
                        .index_of(d)
                        .ok_or_else(|| Error::Domain(format!("{d} does not divide {r}")))?;
                    if slots[idx].replace(v).is_some() {
                        return Err(Error::Domain(format!("divisor {d} listed twice")));
                    }
                }
                let $field = slots
                    .into_iter()
                    .zip(divisors.iter())
                    .map(|(v, d)| v.ok_or_else(|| Error::Domain(format!("divisor {d} missing"))))
                    .collect::<Result<Vec<_>>>()?;
                Ok($ty { divisors, $field })
            }

            pub fn modulus(&self) -> u64 {
                self.divisors.modulus()
            }

            pub fn divisors(&self) -> &DivisorList {
                &self.divisors
            }

            pub fn $field(&self) -> &[S] {
                &self.$field
            }

            /// Value at divisor `d`, or `None` if `d` does not divide `r`.
            pub fn get(&self, d: u64) -> Option<&S> {
                self.divisors.index_of(d).map(|i| &self.$field[i])
            }

            /// `(divisor, value)` pairs in increasing divisor order.
            pub fn iter(&self) -> impl Iterator<Item = (u64, &S)> + '_ {
                self.divisors.iter().zip(self.$field.iter())
            }

            pub fn map<T: Scalar>(&self, f: impl FnMut(&S) -> T) -> $ty<T> {
                $ty {
                    divisors: self.divisors.clone(),
                    $field: self.$field.iter().map(f).collect(),
                }
            }
        }
    };
}

divisor_indexed!(EvenFunction, values);
divisor_indexed!(EvenSpectrum, coeffs);

impl<S: Scalar> EvenFunction<S> {
    /// `f(n)` for any integer `n`, as `f(gcd(n, r))`.
    pub fn at(&self, n: i64) -> &S {
        let r = self.modulus();
        let reduced = i128::from(n).rem_euclid(i128::from(r)) as u64;
        let g = crate::arith::gcd(reduced, r);
        &self.values[self.divisors.index_of(g).expect("gcd divides r")]
    }
}

/// Restricts an even periodic function to the divisors of `r`. Exact for
/// rationals, within [`EVEN_TOLERANCE`] for floating scalars.
pub fn from_periodic<S: Scalar>(f: &ResidueFunction<S>) -> Result<EvenFunction<S>> {
    from_periodic_with_tolerance(f, EVEN_TOLERANCE)
}

pub fn from_periodic_with_tolerance<S: Scalar>(
    f: &ResidueFunction<S>,
    tol: f64,
) -> Result<EvenFunction<S>> {
    let r = f.modulus();
    if let Some(witness) = even_witness(f, tol) {
        return Err(Error::NotEven {
            modulus: r,
            witness,
            gcd: crate::arith::gcd(witness, r),
        });
    }
    EvenFunction::from_fn(r, |d| f.values()[(d - 1) as usize].clone())
}

/// Expands to residues: `n ↦ f(gcd(n, r))` for `n = 1..=r`.
pub fn to_periodic<S: Scalar>(f: &EvenFunction<S>) -> ResidueFunction<S> {
    ResidueFunction::from_fn(f.modulus(), |n| f.at(n as i64).clone())
        .expect("modulus already validated")
}

fn lattice(r: u64) -> DivisorLattice {
    debug_assert!((1..=MAX_MAGNITUDE).contains(&r));
    DivisorLattice::new(r).expect("modulus already validated")
}

/// Applies `rows(d_idx, &mut weights)` to the stored values for every
/// divisor index, reusing one `τ(r)`-sized weight buffer.
fn integer_transform<S: Scalar>(values: &[S], mut rows: impl FnMut(usize, &mut [i128])) -> Vec<S> {
    let batch = S::batch(values);
    let mut weights = vec![0i128; values.len()];
    (0..values.len())
        .map(|row| {
            rows(row, &mut weights);
            S::weighted_sum(&batch, &weights)
        })
        .collect()
}

/// RFT by the totient-weighted sum: residues with `gcd(n, r) = e` are
/// grouped (there are `φ(r/e)` of them), giving
/// `R(d) = φ(d)⁻¹ Σ_{e | r} f(e)·φ(r/e)·C(e, d)`.
pub fn rft<S: Scalar>(f: &EvenFunction<S>) -> EvenSpectrum<S> {
    let lat = lattice(f.modulus());
    let coeffs = integer_transform(&f.values, |d, weights| {
        for (e, w) in weights.iter_mut().enumerate() {
            let count = i128::from(lat.phi(lat.complement(e)));
            *w = count
                .checked_mul(i128::from(lat.ramanujan(e, d)))
                .expect("|φ(r/e)·C(e, d)| <= r·σ(r) < 2^103");
        }
    });
    let coeffs = coeffs
        .into_iter()
        .enumerate()
        .map(|(d, s)| s.div_integer(lat.phi(d) as i64))
        .collect();
    EvenSpectrum {
        divisors: f.divisors.clone(),
        coeffs,
    }
}

/// RFT by the division-free divisor sum `R(d) = Σ_{e | r} f(r/e)·C(r/d, e)`.
///
/// This is the production path: integer kernels only, `τ(r)²` kernel
/// evaluations and `O(τ(r))` working storage.
pub fn rft_divisor_form<S: Scalar>(f: &EvenFunction<S>) -> EvenSpectrum<S> {
    let lat = lattice(f.modulus());
    // stored index g holds f(g); with g = r/e the kernel is C(r/d, r/g)
    let coeffs = integer_transform(&f.values, |d, weights| {
        let r_over_d = lat.complement(d);
        for (g, w) in weights.iter_mut().enumerate() {
            *w = i128::from(lat.ramanujan(r_over_d, lat.complement(g)));
        }
    });
    EvenSpectrum {
        divisors: f.divisors.clone(),
        coeffs,
    }
}

/// Inverse RFT: `f(e) = r⁻¹ Σ_{d | r} R(d)·C(e, d)` for each `e | r`.
pub fn irft<S: Scalar>(spectrum: &EvenSpectrum<S>) -> EvenFunction<S> {
    let r = spectrum.modulus();
    let lat = lattice(r);
    let values = integer_transform(&spectrum.coeffs, |e, weights| {
        for (d, w) in weights.iter_mut().enumerate() {
            *w = i128::from(lat.ramanujan(e, d));
        }
    })
    .into_iter()
    .map(|s| s.div_integer(r as i64))
    .collect();
    EvenFunction {
        divisors: spectrum.divisors.clone(),
        values,
    }
}

/// `⟨f, g⟩ = Σ_{d | r} f(d)·conj(g(d))·φ(r/d)`.
pub fn inner_product_even<S: Scalar>(f: &EvenFunction<S>, g: &EvenFunction<S>) -> Result<S> {
    same_modulus(f.modulus(), g.modulus())?;
    let lat = lattice(f.modulus());
    let products: Vec<S> = f
        .values
        .iter()
        .zip(&g.values)
        .map(|(a, b)| a.clone() * b.conj())
        .collect();
    let weights: Vec<i128> = (0..lat.len())
        .map(|d| i128::from(lat.phi(lat.complement(d))))
        .collect();
    Ok(S::weighted_sum(&S::batch(&products), &weights))
}

/// Cauchy product of even functions through the RFT: `R_h = R_f · R_g`.
pub fn cauchy_product_even<S: Scalar>(
    f: &EvenFunction<S>,
    g: &EvenFunction<S>,
) -> Result<EvenFunction<S>> {
    same_modulus(f.modulus(), g.modulus())?;
    let rf = rft_divisor_form(f);
    let rg = rft_divisor_form(g);
    let coeffs = rf
        .coeffs
        .into_iter()
        .zip(rg.coeffs)
        .map(|(a, b)| a * b)
        .collect();
    Ok(irft(&EvenSpectrum {
        divisors: rf.divisors,
        coeffs,
    }))
}

impl<S: Scalar> EvenFunction<S> {
    pub fn to_complex(&self) -> EvenFunction<Complex64> {
        self.map(S::to_complex)
    }
}

impl<S: Scalar> EvenSpectrum<S> {
    pub fn to_complex(&self) -> EvenSpectrum<Complex64> {
        self.map(S::to_complex)
    }
}
