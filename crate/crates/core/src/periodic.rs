//! Periodic arithmetical functions mod r.
//!
//! A [`ResidueFunction`] stores `f(1), ..., f(r)`; `f(r)` plays the role of
//! `f(0)`. The DFT here is the direct `O(r²)` sum
//! `F(k) = Σ_{n=1}^{r} f(n)·exp(-2πikn/r)` for `k = 1..=r`, with twiddles
//! evaluated from the reduced angle `2π·((k·n) mod r)/r`.

use std::f64::consts::TAU;

use num_complex::Complex64;
use num_traits::Zero;

use crate::arith::{self, check_positive};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Comparison tolerance used by [`is_even`] for floating scalars.
pub const EVEN_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub struct ResidueFunction<S> {
    values: Vec<S>,
}

impl<S: Scalar> ResidueFunction<S> {
    /// Builds `f` from `[f(1), ..., f(r)]`.
    pub fn new(values: Vec<S>) -> Result<Self> {
        check_positive("r", values.len() as u64)?;
        Ok(ResidueFunction { values })
    }

    pub fn from_fn(r: u64, f: impl FnMut(u64) -> S) -> Result<Self> {
        check_positive("r", r)?;
        Ok(ResidueFunction {
            values: (1..=r).map(f).collect(),
        })
    }

    pub fn modulus(&self) -> u64 {
        self.values.len() as u64
    }

    /// `[f(1), ..., f(r)]`.
    pub fn values(&self) -> &[S] {
        &self.values
    }

    pub fn into_values(self) -> Vec<S> {
        self.values
    }

    /// `f(n)` for any integer `n`, by periodicity.
    pub fn at(&self, n: i64) -> &S {
        let r = self.values.len() as i128;
        &self.values[(i128::from(n) - 1).rem_euclid(r) as usize]
    }

    pub fn map<T: Scalar>(&self, f: impl FnMut(&S) -> T) -> ResidueFunction<T> {
        ResidueFunction {
            values: self.values.iter().map(f).collect(),
        }
    }

    pub fn to_complex(&self) -> ResidueFunction<Complex64> {
        self.map(S::to_complex)
    }
}

/// DFT coefficients `F(1), ..., F(r)`.
#[derive(Debug, Clone, PartialEq)]
pub struct PeriodicSpectrum {
    coeffs: Vec<Complex64>,
}

impl PeriodicSpectrum {
    pub fn new(coeffs: Vec<Complex64>) -> Result<Self> {
        check_positive("r", coeffs.len() as u64)?;
        Ok(PeriodicSpectrum { coeffs })
    }

    pub fn modulus(&self) -> u64 {
        self.coeffs.len() as u64
    }

    /// `[F(1), ..., F(r)]`.
    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    /// `F(k)` for any integer `k`, by periodicity.
    pub fn at(&self, k: i64) -> Complex64 {
        let r = self.coeffs.len() as i128;
        self.coeffs[(i128::from(k) - 1).rem_euclid(r) as usize]
    }
}

/// `exp(sign · 2πi·k·n / r)` with the product reduced mod r before scaling.
pub(crate) fn twiddle(k: u64, n: u64, r: u64, sign: f64) -> Complex64 {
    let reduced = (u128::from(k) * u128::from(n) % u128::from(r)) as f64;
    Complex64::from_polar(1.0, sign * TAU * reduced / r as f64)
}

pub fn dft(f: &ResidueFunction<Complex64>) -> PeriodicSpectrum {
    let r = f.modulus();
    let coeffs = (1..=r)
        .map(|k| {
            f.values
                .iter()
                .zip(1..=r)
                .fold(Complex64::zero(), |acc, (v, n)| {
                    acc + v * twiddle(k, n, r, -1.0)
                })
        })
        .collect();
    PeriodicSpectrum { coeffs }
}

pub fn idft(spectrum: &PeriodicSpectrum) -> ResidueFunction<Complex64> {
    let r = spectrum.modulus();
    let scale = 1.0 / r as f64;
    let values = (1..=r)
        .map(|n| {
            spectrum
                .coeffs
                .iter()
                .zip(1..=r)
                .fold(Complex64::zero(), |acc, (c, k)| {
                    acc + c * twiddle(k, n, r, 1.0)
                })
                * scale
        })
        .collect();
    ResidueFunction { values }
}

pub(crate) fn same_modulus(left: u64, right: u64) -> Result<()> {
    if left == right {
        Ok(())
    } else {
        Err(Error::ModulusMismatch { left, right })
    }
}

/// `⟨f, g⟩ = Σ_{n=1}^{r} f(n)·conj(g(n))`.
pub fn inner_product_periodic<S: Scalar>(
    f: &ResidueFunction<S>,
    g: &ResidueFunction<S>,
) -> Result<S> {
    same_modulus(f.modulus(), g.modulus())?;
    Ok(f.values
        .iter()
        .zip(&g.values)
        .fold(S::zero(), |acc, (a, b)| acc + a.clone() * b.conj()))
}

/// `(f ∘ g)(n) = Σ_{a + b ≡ n (mod r)} f(a)·g(b)`, by the direct double sum.
pub fn cauchy_product<S: Scalar>(
    f: &ResidueFunction<S>,
    g: &ResidueFunction<S>,
) -> Result<ResidueFunction<S>> {
    same_modulus(f.modulus(), g.modulus())?;
    let r = f.values.len();
    // index i holds residue i + 1; b ≡ n - a lands at (i_n - i_a - 1) mod r
    let values = (0..r)
        .map(|i_n| {
            (0..r).fold(S::zero(), |acc, i_a| {
                let i_b = (i_n + 2 * r - i_a - 1) % r;
                acc + f.values[i_a].clone() * g.values[i_b].clone()
            })
        })
        .collect();
    Ok(ResidueFunction { values })
}

/// Cauchy product through the spectrum: `idft(dft(f) · dft(g))`.
pub fn cauchy_product_spectral(
    f: &ResidueFunction<Complex64>,
    g: &ResidueFunction<Complex64>,
) -> Result<ResidueFunction<Complex64>> {
    same_modulus(f.modulus(), g.modulus())?;
    let ff = dft(f);
    let gg = dft(g);
    let product = ff
        .coeffs
        .iter()
        .zip(&gg.coeffs)
        .map(|(a, b)| a * b)
        .collect();
    Ok(idft(&PeriodicSpectrum { coeffs: product }))
}

/// First residue `n` in `1..=r` with `f(n) != f(gcd(n, r))`, if any.
pub fn even_witness<S: Scalar>(f: &ResidueFunction<S>, tol: f64) -> Option<u64> {
    let r = f.modulus();
    (1..=r).find(|&n| {
        let g = arith::gcd(n, r);
        !f.values[(n - 1) as usize].is_close(&f.values[(g - 1) as usize], tol)
    })
}

/// Whether `f(n) = f(gcd(n, r))` for every residue; exact for rationals,
/// within [`EVEN_TOLERANCE`] for floating scalars.
pub fn is_even<S: Scalar>(f: &ResidueFunction<S>) -> bool {
    even_witness(f, EVEN_TOLERANCE).is_none()
}
