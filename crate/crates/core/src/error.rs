use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// An argument exceeds a configured size cap.
    #[error("capacity error: {what} = {value} exceeds the cap of {cap}")]
    Capacity {
        what: &'static str,
        value: u64,
        cap: u64,
    },

    #[error("moduli differ: {left} vs {right}")]
    ModulusMismatch { left: u64, right: u64 },

    /// The function is not even mod r; `witness` is a residue n with f(n) != f(gcd(n, r)).
    #[error(
        "function is not even mod {modulus}: f({witness}) != f(gcd({witness}, {modulus}) = {gcd})"
    )]
    NotEven {
        modulus: u64,
        witness: u64,
        gcd: u64,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
