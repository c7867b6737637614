//! Periodic and even arithmetical functions mod r.
//!
//! The crate covers Ramanujan's sum `C(n, r)`, the discrete Fourier transform
//! of periodic functions, and the Ramanujan-Fourier transform (RFT) of even
//! functions, i.e. functions with `f(n) = f(gcd(n, r))`. Even functions are
//! stored by their values on the divisors of `r`, and every even-function
//! transform works on that `τ(r)`-sized representation with integer kernels,
//! so rational inputs stay exact end to end.
//!
//! Module map:
//!
//! * [`arith`]: factorization, divisors, gcd, Möbius, Euler's totient.
//! * [`ramanujan`]: `C(n, r)` by the Möbius divisor sum, plus an
//!   exponential-sum oracle.
//! * [`periodic`]: residue-indexed functions, DFT/IDFT, inner product and
//!   Cauchy products.
//! * [`even`]: divisor-indexed functions, RFT/IRFT, inner product and the
//!   even Cauchy product.
//! * [`verify`]: structured checks of the orthogonality, symmetry, RFT/DFT
//!   bridge and Cauchy-kernel identities.

pub mod arith;
mod error;
pub mod even;
pub mod oracle;
pub mod periodic;
pub mod ramanujan;
pub mod scalar;
pub mod verify;

pub use arith::{divisors, euler_phi, factorize, gcd, mobius, DivisorList, Factorization};
pub use error::{Error, Result};
pub use even::{
    cauchy_product_even, from_periodic, from_periodic_with_tolerance, inner_product_even, irft,
    rft, rft_divisor_form, to_periodic, EvenFunction, EvenSpectrum,
};
pub use periodic::{
    cauchy_product, cauchy_product_spectral, dft, even_witness, idft, inner_product_periodic,
    is_even, PeriodicSpectrum, ResidueFunction,
};
pub use ramanujan::{
    ramanujan_divisor_row, ramanujan_row, ramanujan_sum, ramanujan_sum_oracle, RamanujanTable,
};
pub use scalar::{rational, Rational, Scalar};
pub use verify::{
    verify_cauchy_kernel_even, verify_orthogonality, verify_rft_dft_bridge,
    verify_rft_dft_bridge_with_tolerance, verify_symmetry, Check, Identity, Quantity,
    VerificationReport,
};

pub use num_complex::Complex64;
