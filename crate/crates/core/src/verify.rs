//! Structured checks of the identities behind the even-function transforms.
//!
//! Each verifier returns a [`VerificationReport`] listing every evaluated
//! instance with both sides of the identity, so callers can print
//! counterexamples rather than a bare boolean.

use std::fmt;

use num_complex::Complex64;

use crate::arith::{self, check_positive};
use crate::error::{Error, Result};
use crate::even::{rft, to_periodic, EvenFunction};
use crate::periodic::dft;
use crate::ramanujan::RamanujanTable;
use crate::scalar::Scalar;

/// Largest modulus for the brute-force even Cauchy kernel check.
pub const CAUCHY_KERNEL_CAP: u64 = 60;

/// Default tolerance of [`verify_rft_dft_bridge`].
pub const BRIDGE_TOLERANCE: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Identity {
    /// `Σ_{e|r} C(r/e, d₁)·C(r/e, d₂)·φ(e) = r·φ(d₁)·[d₁ = d₂]`
    Orthogonality,
    /// `φ(e)·C(r/e, d) = φ(d)·C(r/d, e)`
    Symmetry,
    /// DFT of an even function written with Ramanujan sums, and `R(d) = F(r/d)`.
    RftDftBridge,
    /// `Σ_{a+b≡n} C(a, d₁)·C(b, d₂) = r·C(n, d₁)·[d₁ = d₂]`
    CauchyKernelEven,
}

impl Identity {
    pub fn name(self) -> &'static str {
        match self {
            Identity::Orthogonality => "orthogonality",
            Identity::Symmetry => "symmetry",
            Identity::RftDftBridge => "bridge",
            Identity::CauchyKernelEven => "cauchy-kernel",
        }
    }
}

impl fmt::Display for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Quantity {
    Integer(i128),
    Complex(Complex64),
}

impl fmt::Display for Quantity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Quantity::Integer(v) => write!(f, "{v}"),
            Quantity::Complex(z) => write!(f, "{z}"),
        }
    }
}

/// One evaluated instance of an identity.
#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    /// Which equation of the identity this instance belongs to.
    pub relation: &'static str,
    pub indices: Vec<(&'static str, u64)>,
    pub left: Quantity,
    pub right: Quantity,
    pub pass: bool,
}

impl Check {
    fn exact(
        relation: &'static str,
        indices: Vec<(&'static str, u64)>,
        left: i128,
        right: i128,
    ) -> Self {
        Check {
            relation,
            indices,
            left: Quantity::Integer(left),
            right: Quantity::Integer(right),
            pass: left == right,
        }
    }

    fn approx(
        relation: &'static str,
        indices: Vec<(&'static str, u64)>,
        left: Complex64,
        right: Complex64,
        tol: f64,
    ) -> Self {
        Check {
            relation,
            indices,
            left: Quantity::Complex(left),
            right: Quantity::Complex(right),
            pass: (left - right).norm() <= tol,
        }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.relation)?;
        for (name, value) in &self.indices {
            write!(f, " {name}={value}")?;
        }
        write!(
            f,
            ": left={} right={} {}",
            self.left,
            self.right,
            if self.pass { "pass" } else { "FAIL" }
        )
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerificationReport {
    pub identity: Identity,
    pub modulus: u64,
    pub checks: Vec<Check>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.pass)
    }

    pub fn first_failure(&self) -> Option<&Check> {
        self.failures().next()
    }
}

/// Checks `Σ_{e|r} C(r/e, d₁)·C(r/e, d₂)·φ(e) = r·φ(d₁)·[d₁ = d₂]` exactly
/// for every pair of divisors of `r`.
pub fn verify_orthogonality(r: u64) -> Result<VerificationReport> {
    let table = RamanujanTable::new(r)?;
    let divs = table.divisors().as_slice();
    let phi: Vec<i128> = divs
        .iter()
        .map(|&d| arith::euler_phi(d).map(i128::from))
        .collect::<Result<_>>()?;
    let mut checks = Vec::with_capacity(divs.len() * divs.len());
    for (i, &d1) in divs.iter().enumerate() {
        for &d2 in divs {
            let left: i128 = divs
                .iter()
                .zip(&phi)
                .map(|(&e, &phi_e)| {
                    let a = i128::from(table.at_divisors(r / e, d1).expect("divisor"));
                    let b = i128::from(table.at_divisors(r / e, d2).expect("divisor"));
                    a * b * phi_e
                })
                .sum();
            let right = if d1 == d2 { i128::from(r) * phi[i] } else { 0 };
            checks.push(Check::exact(
                "orthogonality",
                vec![("d1", d1), ("d2", d2)],
                left,
                right,
            ));
        }
    }
    Ok(VerificationReport {
        identity: Identity::Orthogonality,
        modulus: r,
        checks,
    })
}

/// Checks `φ(e)·C(r/e, d) = φ(d)·C(r/d, e)` exactly for every pair of
/// divisors of `r`.
pub fn verify_symmetry(r: u64) -> Result<VerificationReport> {
    let table = RamanujanTable::new(r)?;
    let divs = table.divisors().as_slice();
    let mut checks = Vec::with_capacity(divs.len() * divs.len());
    for &d in divs {
        let phi_d = i128::from(arith::euler_phi(d)?);
        for &e in divs {
            let phi_e = i128::from(arith::euler_phi(e)?);
            let left = phi_e * i128::from(table.at_divisors(r / e, d).expect("divisor"));
            let right = phi_d * i128::from(table.at_divisors(r / d, e).expect("divisor"));
            checks.push(Check::exact(
                "symmetry",
                vec![("d", d), ("e", e)],
                left,
                right,
            ));
        }
    }
    Ok(VerificationReport {
        identity: Identity::Symmetry,
        modulus: r,
        checks,
    })
}

/// [`verify_rft_dft_bridge_with_tolerance`] at [`BRIDGE_TOLERANCE`].
pub fn verify_rft_dft_bridge<S: Scalar>(f: &EvenFunction<S>) -> Result<VerificationReport> {
    verify_rft_dft_bridge_with_tolerance(f, BRIDGE_TOLERANCE)
}

/// Compares the direct DFT `F` of the expanded function with its Ramanujan
/// form and with the RFT. Three relations are checked:
///
/// * `kernel`: `F(k) = Σ_{e|r} f(e)·C(k, r/e)` for `k = 1..=r`;
/// * `rft`: `R(d) = F(r/d)` for `d | r`;
/// * `gcd`: `F(k) = F(gcd(k, r))` for `k = 1..=r`.
pub fn verify_rft_dft_bridge_with_tolerance<S: Scalar>(
    f: &EvenFunction<S>,
    tol: f64,
) -> Result<VerificationReport> {
    let r = f.modulus();
    let table = RamanujanTable::new(r)?;
    let spectrum = dft(&to_periodic(f).to_complex());
    let rft_coeffs = rft(f).to_complex();
    let values: Vec<(u64, Complex64)> = f.iter().map(|(e, v)| (e, v.to_complex())).collect();

    let mut checks = Vec::with_capacity(2 * r as usize + values.len());
    for k in 1..=r {
        let via_kernel = values
            .iter()
            .fold(Complex64::new(0.0, 0.0), |acc, &(e, v)| {
                acc + v * table.get(k as i64, r / e).expect("r/e divides r") as f64
            });
        checks.push(Check::approx(
            "kernel",
            vec![("k", k)],
            spectrum.at(k as i64),
            via_kernel,
            tol,
        ));
    }
    for (d, coeff) in rft_coeffs.iter() {
        checks.push(Check::approx(
            "rft",
            vec![("d", d)],
            *coeff,
            spectrum.at((r / d) as i64),
            tol,
        ));
    }
    for k in 1..=r {
        let g = arith::gcd(k, r);
        checks.push(Check::approx(
            "gcd",
            vec![("k", k), ("gcd", g)],
            spectrum.at(k as i64),
            spectrum.at(g as i64),
            tol,
        ));
    }
    Ok(VerificationReport {
        identity: Identity::RftDftBridge,
        modulus: r,
        checks,
    })
}

/// Brute-force check of `Σ_{a+b≡n (mod r)} C(a, d₁)·C(b, d₂) = r·C(n, d₁)·[d₁ = d₂]`
/// for all divisor pairs and all `n = 1..=r`. Capped at [`CAUCHY_KERNEL_CAP`].
pub fn verify_cauchy_kernel_even(r: u64) -> Result<VerificationReport> {
    check_positive("r", r)?;
    if r > CAUCHY_KERNEL_CAP {
        return Err(Error::Capacity {
            what: "r",
            value: r,
            cap: CAUCHY_KERNEL_CAP,
        });
    }
    let table = RamanujanTable::new(r)?;
    let divs = table.divisors().as_slice();
    let size = r as usize;
    // rows[i][a - 1] = C(a, d_i)
    let rows: Vec<Vec<i128>> = divs
        .iter()
        .map(|&d| {
            (1..=r)
                .map(|a| i128::from(table.get(a as i64, d).expect("divisor")))
                .collect()
        })
        .collect();
    let mut checks = Vec::with_capacity(divs.len() * divs.len() * size);
    for (i, &d1) in divs.iter().enumerate() {
        for (j, &d2) in divs.iter().enumerate() {
            for n in 1..=size {
                let left: i128 = (1..=size)
                    .map(|a| {
                        let b = (n + size - a) % size; // b ≡ n - a, with 0 standing for r
                        let b = if b == 0 { size } else { b };
                        rows[i][a - 1] * rows[j][b - 1]
                    })
                    .sum();
                let right = if i == j {
                    i128::from(r) * rows[i][n - 1]
                } else {
                    0
                };
                checks.push(Check::exact(
                    "cauchy-kernel",
                    vec![("d1", d1), ("d2", d2), ("n", n as u64)],
                    left,
                    right,
                ));
            }
        }
    }
    Ok(VerificationReport {
        identity: Identity::CauchyKernelEven,
        modulus: r,
        checks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ramanujan::ramanujan_sum;
    use crate::scalar::{rational, Rational};

    fn find<'a>(report: &'a VerificationReport, indices: &[(&str, u64)]) -> &'a Check {
        report
            .checks
            .iter()
            .find(|c| {
                c.indices
                    .iter()
                    .map(|&(n, v)| (n, v))
                    .eq(indices.iter().copied())
            })
            .unwrap()
    }

    #[test]
    fn orthogonality_examples() {
        let report = verify_orthogonality(4).unwrap();
        assert!(report.passed());
        assert_eq!(report.checks.len(), 9);
        let same = find(&report, &[("d1", 2), ("d2", 2)]);
        assert_eq!(same.left, Quantity::Integer(4));
        assert_eq!(same.right, Quantity::Integer(4));
        let cross = find(&report, &[("d1", 1), ("d2", 2)]);
        assert_eq!(cross.left, Quantity::Integer(0));

        let one = verify_orthogonality(1).unwrap();
        assert_eq!(one.checks.len(), 1);
        assert_eq!(one.checks[0].left, Quantity::Integer(1));
        assert!(one.passed());
    }

    #[test]
    fn symmetry_examples() {
        let report = verify_symmetry(4).unwrap();
        let c = find(&report, &[("d", 4), ("e", 2)]);
        assert_eq!(c.left, Quantity::Integer(-2));
        assert_eq!(c.right, Quantity::Integer(-2));
        assert!(report.passed());
        let twelve = verify_symmetry(12).unwrap();
        assert_eq!(twelve.checks.len(), 36);
        assert!(twelve.passed());
    }

    #[test]
    fn bridge_examples() {
        let gcd4 = EvenFunction::from_fn(4, |d| rational(d as i64, 1)).unwrap();
        let report = verify_rft_dft_bridge(&gcd4).unwrap();
        assert!(report.passed(), "{:?}", report.first_failure());
        let f4 = find(&report, &[("k", 4)]);
        match f4.left {
            Quantity::Complex(z) => assert!((z - Complex64::new(8.0, 0.0)).norm() < 1e-12),
            _ => unreachable!(),
        }

        let ones = EvenFunction::from_fn(4, |_| rational(1, 1)).unwrap();
        assert!(verify_rft_dft_bridge(&ones).unwrap().passed());

        let c6 =
            EvenFunction::from_fn(6, |e| rational(ramanujan_sum(e as i64, 6).unwrap(), 1)).unwrap();
        let report = verify_rft_dft_bridge(&c6).unwrap();
        assert!(report.passed());
        let r6 = report
            .checks
            .iter()
            .find(|c| c.relation == "rft" && c.indices == [("d", 6)])
            .unwrap();
        match r6.left {
            Quantity::Complex(z) => assert!((z - Complex64::new(6.0, 0.0)).norm() < 1e-12),
            _ => unreachable!(),
        }
    }

    #[test]
    fn bridge_detects_a_wrong_spectrum() {
        // a tolerance below rounding noise must produce failures with details
        let f: EvenFunction<Rational> =
            EvenFunction::from_fn(12, |d| rational(d as i64 * 7 - 3, 5)).unwrap();
        let report = verify_rft_dft_bridge_with_tolerance(&f, -1.0).unwrap();
        assert!(!report.passed());
        assert!(report.first_failure().unwrap().to_string().contains("FAIL"));
    }

    #[test]
    fn cauchy_kernel_examples() {
        let report = verify_cauchy_kernel_even(4).unwrap();
        assert!(report.passed());
        let c = find(&report, &[("d1", 2), ("d2", 2), ("n", 1)]);
        assert_eq!(c.left, Quantity::Integer(-4));
        for n in 1..=4 {
            let c = find(&report, &[("d1", 2), ("d2", 4), ("n", n)]);
            assert_eq!(c.left, Quantity::Integer(0));
        }
        assert!(verify_cauchy_kernel_even(1).unwrap().passed());
        assert!(matches!(
            verify_cauchy_kernel_even(61),
            Err(Error::Capacity { .. })
        ));
    }

    #[test]
    fn verifiers_pass_for_small_moduli() {
        for r in 1..=40 {
            assert!(verify_orthogonality(r).unwrap().passed());
            assert!(verify_symmetry(r).unwrap().passed());
        }
    }
}
