use std::fmt::Write as _;
use std::path::Path;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Value};

use rft_core::periodic::EVEN_TOLERANCE;
use rft_core::verify::{BRIDGE_TOLERANCE, CAUCHY_KERNEL_CAP};
use rft_core::{
    cauchy_product, cauchy_product_even, cauchy_product_spectral, dft,
    from_periodic_with_tolerance, idft, irft, ramanujan_sum, rational, rft_divisor_form,
    verify_cauchy_kernel_even, verify_orthogonality, verify_rft_dft_bridge_with_tolerance,
    verify_symmetry, EvenFunction, EvenSpectrum, PeriodicSpectrum, RamanujanTable, Rational,
    ResidueFunction, Scalar, VerificationReport,
};

use crate::args::{Cli, Command, Direction, Format, Kind, ProductPath, Suite};
use crate::error::CliError;
use crate::file::{format_real, Function, FunctionFile, Representation};

/// Default tolerance of the `cauchy --check` comparison.
pub const CAUCHY_CHECK_TOLERANCE: f64 = 1e-9;

/// What a successful command prints, and its exit status (0 or 1).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Output {
    pub stdout: String,
    pub status: u8,
}

impl Output {
    fn success(stdout: String) -> Self {
        Output { stdout, status: 0 }
    }
}

pub fn run(cli: &Cli) -> Result<Output, CliError> {
    if let Some(t) = cli.tolerance {
        if !(t.is_finite() && t >= 0.0) {
            return Err(CliError::Usage(format!(
                "--tolerance must be a finite nonnegative number, got {t}"
            )));
        }
    }
    match &cli.command {
        Command::Csum { table, args } => csum(*table, args, cli.format),
        Command::Transform {
            input,
            kind,
            direction,
        } => transform(input, *kind, *direction, cli),
        Command::Cauchy { f, g, path, check } => cauchy(f, g, *path, *check, cli),
        Command::Verify { suite, rmax, seed } => verify(*suite, *rmax, *seed, cli),
    }
}

fn modulus_arg(r: i64) -> Result<u64, CliError> {
    u64::try_from(r)
        .ok()
        .filter(|&r| r >= 1)
        .ok_or_else(|| CliError::Usage(format!("modulus must be a positive integer, got {r}")))
}

fn render(file: &FunctionFile, format: Format) -> String {
    match format {
        Format::Text => file.to_text(),
        Format::Json => format!("{}\n", file.to_json()),
    }
}

fn csum(table: bool, args: &[i64], format: Format) -> Result<Output, CliError> {
    if !table {
        let &[n, r] = args else {
            return Err(CliError::Usage("csum expects N R (or --table R)".into()));
        };
        let r = modulus_arg(r)?;
        let value = ramanujan_sum(n, r)?;
        return Ok(Output::success(match format {
            Format::Text => format!("{value}\n"),
            Format::Json => format!("{}\n", json!({ "n": n, "r": r, "value": value })),
        }));
    }

    let &[r] = args else {
        return Err(CliError::Usage(
            "csum --table expects a single modulus R".into(),
        ));
    };
    let r = modulus_arg(r)?;
    let table = RamanujanTable::new(r)?;
    let divisors = table.divisors().as_slice();
    // row d, column e holds C(r/e, d)
    let rows: Vec<Vec<i64>> = divisors
        .iter()
        .map(|&d| {
            divisors
                .iter()
                .map(|&e| table.at_divisors(r / e, d).expect("divisors of r"))
                .collect()
        })
        .collect();
    let stdout = match format {
        Format::Text => {
            let mut out = String::from("d\\e");
            for e in divisors {
                write!(out, "\t{e}").unwrap();
            }
            out.push('\n');
            for (d, row) in divisors.iter().zip(&rows) {
                write!(out, "{d}").unwrap();
                for v in row {
                    write!(out, "\t{v}").unwrap();
                }
                out.push('\n');
            }
            out
        }
        Format::Json => {
            let rows: Vec<Value> = divisors
                .iter()
                .zip(&rows)
                .map(|(d, row)| json!({ "d": d, "values": row }))
                .collect();
            format!(
                "{}\n",
                json!({ "modulus": r, "divisors": divisors, "rows": rows })
            )
        }
    };
    Ok(Output::success(stdout))
}

/// Scalars that can be written back into a [`FunctionFile`].
trait FileScalar: Scalar {
    fn wrap(f: Function<Self>) -> FunctionFile;
}

impl FileScalar for Rational {
    fn wrap(f: Function<Self>) -> FunctionFile {
        FunctionFile::Rational(f)
    }
}

impl FileScalar for Complex64 {
    fn wrap(f: Function<Self>) -> FunctionFile {
        FunctionFile::Complex(f)
    }
}

fn as_even<S: Scalar>(f: &Function<S>, tol: f64) -> Result<EvenFunction<S>, CliError> {
    match f {
        Function::Even(e) => Ok(e.clone()),
        Function::Periodic(p) => Ok(from_periodic_with_tolerance(p, tol)?),
    }
}

fn rft_file<S: FileScalar>(
    f: &Function<S>,
    direction: Direction,
    tol: f64,
) -> Result<FunctionFile, CliError> {
    match direction {
        Direction::Forward => {
            let spectrum = rft_divisor_form(&as_even(f, tol)?);
            let coeffs = EvenFunction::new(spectrum.modulus(), spectrum.coeffs().to_vec())?;
            Ok(S::wrap(Function::Even(coeffs)))
        }
        Direction::Inverse => {
            let Function::Even(coeffs) = f else {
                return Err(CliError::Usage(
                    "inverse rft expects an even (divisor-indexed) spectrum file".into(),
                ));
            };
            let spectrum = EvenSpectrum::new(coeffs.modulus(), coeffs.values().to_vec())?;
            Ok(S::wrap(Function::Even(irft(&spectrum))))
        }
    }
}

fn transform(
    input: &Path,
    kind: Kind,
    direction: Direction,
    cli: &Cli,
) -> Result<Output, CliError> {
    let file = FunctionFile::read(input)?;
    let out = match kind {
        Kind::Dft => {
            let values = file.to_complex().to_periodic();
            let result = match direction {
                Direction::Forward => dft(&values).coeffs().to_vec(),
                Direction::Inverse => {
                    let spectrum = PeriodicSpectrum::new(values.into_values())?;
                    idft(&spectrum).into_values()
                }
            };
            FunctionFile::Complex(Function::Periodic(ResidueFunction::new(result)?))
        }
        Kind::Rft => {
            let tol = cli.tolerance.unwrap_or(EVEN_TOLERANCE);
            match &file {
                FunctionFile::Rational(f) => rft_file(f, direction, tol)?,
                FunctionFile::Complex(f) => rft_file(f, direction, tol)?,
            }
        }
    };
    Ok(Output::success(render(&out, cli.format)))
}

fn product<S: FileScalar>(
    f: &Function<S>,
    g: &Function<S>,
    path: ProductPath,
    tol: f64,
) -> Result<FunctionFile, CliError> {
    let both_even =
        f.representation() == Representation::Even && g.representation() == Representation::Even;
    match (path, both_even) {
        (ProductPath::Naive, false) => Ok(S::wrap(Function::Periodic(cauchy_product(
            &f.to_periodic(),
            &g.to_periodic(),
        )?))),
        (ProductPath::Naive, true) => {
            let h = cauchy_product(&f.to_periodic(), &g.to_periodic())?;
            Ok(S::wrap(Function::Even(from_periodic_with_tolerance(
                &h, tol,
            )?)))
        }
        (ProductPath::Spectral, false) => {
            let h = cauchy_product_spectral(
                &f.to_periodic().to_complex(),
                &g.to_periodic().to_complex(),
            )?;
            Ok(FunctionFile::Complex(Function::Periodic(h)))
        }
        (ProductPath::Spectral, true) => {
            let h = cauchy_product_even(&as_even(f, tol)?, &as_even(g, tol)?)?;
            Ok(S::wrap(Function::Even(h)))
        }
    }
}

/// Largest entrywise difference; exact when both sides are rational.
fn discrepancy(a: &FunctionFile, b: &FunctionFile) -> f64 {
    fn max_distance<S: Scalar>(x: &[S], y: &[S]) -> f64 {
        x.iter()
            .zip(y)
            .map(|(p, q)| p.distance(q))
            .fold(0.0, f64::max)
    }
    match (a, b) {
        (FunctionFile::Rational(x), FunctionFile::Rational(y)) => {
            max_distance(x.to_periodic().values(), y.to_periodic().values())
        }
        _ => max_distance(
            a.to_complex().to_periodic().values(),
            b.to_complex().to_periodic().values(),
        ),
    }
}

fn cauchy(
    f: &Path,
    g: &Path,
    path: ProductPath,
    check: bool,
    cli: &Cli,
) -> Result<Output, CliError> {
    let f = FunctionFile::read(f)?;
    let g = FunctionFile::read(g)?;
    if f.modulus() != g.modulus() {
        return Err(rft_core::Error::ModulusMismatch {
            left: f.modulus(),
            right: g.modulus(),
        }
        .into());
    }
    let tol = cli.tolerance.unwrap_or(CAUCHY_CHECK_TOLERANCE);
    let compute = |path| match (&f, &g) {
        (FunctionFile::Rational(a), FunctionFile::Rational(b)) => product(a, b, path, tol),
        _ => product(&f.to_complex(), &g.to_complex(), path, tol),
    };
    let h = compute(path)?;
    if !check {
        return Ok(Output::success(render(&h, cli.format)));
    }
    let other = compute(match path {
        ProductPath::Naive => ProductPath::Spectral,
        ProductPath::Spectral => ProductPath::Naive,
    })?;
    let gap = discrepancy(&h, &other);
    let pass = gap <= tol;
    let stdout = match cli.format {
        Format::Text => format!("{}max discrepancy: {}\n", h.to_text(), format_real(gap)),
        Format::Json => format!(
            "{}\n",
            json!({ "product": h.to_json(), "max_discrepancy": format_real(gap), "pass": pass })
        ),
    };
    Ok(Output {
        stdout,
        status: if pass { 0 } else { 1 },
    })
}

/// Deterministic random even function used by the bridge suite.
pub fn bridge_function(seed: u64, r: u64) -> EvenFunction<Rational> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_mul(1_000_003).wrapping_add(r));
    EvenFunction::from_fn(r, |_| {
        rational(rng.gen_range(-100..=100), rng.gen_range(1..=12))
    })
    .expect("modulus validated")
}

fn suite_name(suite: Suite) -> &'static str {
    match suite {
        Suite::Orthogonality => "orthogonality",
        Suite::Symmetry => "symmetry",
        Suite::Bridge => "bridge",
        Suite::CauchyKernel => "cauchy-kernel",
        Suite::All => "all",
    }
}

fn verify(suite: Suite, rmax: u64, seed: u64, cli: &Cli) -> Result<Output, CliError> {
    if rmax == 0 {
        return Err(CliError::Usage("--rmax must be at least 1".into()));
    }
    let suites = match suite {
        Suite::All => vec![
            Suite::Orthogonality,
            Suite::Symmetry,
            Suite::Bridge,
            Suite::CauchyKernel,
        ],
        s => vec![s],
    };
    if suites.contains(&Suite::CauchyKernel) && rmax > CAUCHY_KERNEL_CAP {
        return Err(CliError::Usage(format!(
            "the cauchy-kernel suite is a brute-force check capped at r <= {CAUCHY_KERNEL_CAP}; \
             requested --rmax {rmax}"
        )));
    }
    let tol = cli.tolerance.unwrap_or(BRIDGE_TOLERANCE);

    let mut results: Vec<(Suite, VerificationReport)> = Vec::new();
    for &s in &suites {
        // parallel over r; collect keeps the order
        let reports = (1..=rmax)
            .into_par_iter()
            .map(|r| match s {
                Suite::Orthogonality => verify_orthogonality(r),
                Suite::Symmetry => verify_symmetry(r),
                Suite::Bridge => {
                    verify_rft_dft_bridge_with_tolerance(&bridge_function(seed, r), tol)
                }
                Suite::CauchyKernel => verify_cauchy_kernel_even(r),
                Suite::All => unreachable!("expanded above"),
            })
            .collect::<Result<Vec<_>, _>>()?;
        results.extend(reports.into_iter().map(|rep| (s, rep)));
    }

    let failed = results.iter().filter(|(_, rep)| !rep.passed()).count();
    let stdout = match cli.format {
        Format::Text => {
            let mut out = String::new();
            for (s, rep) in &results {
                let name = suite_name(*s);
                let total = rep.checks.len();
                match rep.first_failure() {
                    None => writeln!(out, "{name} r={}: pass ({total} checks)", rep.modulus),
                    Some(c) => writeln!(
                        out,
                        "{name} r={}: FAIL ({} of {total} checks failed); first counterexample: {c}",
                        rep.modulus,
                        rep.failures().count()
                    ),
                }
                .unwrap();
            }
            if failed == 0 {
                writeln!(out, "all {} runs pass", results.len()).unwrap();
            } else {
                writeln!(out, "{failed} of {} runs FAILED", results.len()).unwrap();
            }
            out
        }
        Format::Json => {
            let runs: Vec<Value> = results
                .iter()
                .map(|(s, rep)| {
                    json!({
                        "suite": suite_name(*s),
                        "modulus": rep.modulus,
                        "checks": rep.checks.len(),
                        "failed": rep.failures().count(),
                        "counterexample": rep.first_failure().map(|c| c.to_string()),
                    })
                })
                .collect();
            format!("{}\n", json!({ "passed": failed == 0, "runs": runs }))
        }
    };
    Ok(Output {
        stdout,
        status: if failed == 0 { 0 } else { 1 },
    })
}
