use thiserror::Error;

/// Errors raised across the library.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("invalid field parameters: {0}")]
    InvalidField(String),
    #[error("modulus is reducible over F_p")]
    ReducibleModulus,
    #[error("no root in ambient field: x^{n} = c has no solution in F_{order}; enlarge the extension degree")]
    NoRoot { n: u64, order: u64 },
    #[error("root of unity of order {0} is not contained in the ambient field")]
    RootOfUnityMissing(u64),
    #[error("division by zero")]
    DivisionByZero,
    #[error("insufficient precision: {0}")]
    Precision(String),
    #[error("{0} is not an element of Gamma_N")]
    NotARootOfUnity(String),
    #[error("iota is undefined: q divides an entry of {0:?}")]
    IotaUndefined(Vec<u32>),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("no solution in degree box")]
    NoSolution,
    #[error("singular matrix: {0}")]
    Singular(String),
    #[error("reduction did not terminate within {0} steps")]
    NonTermination(usize),
    #[error("mathematical invariant falsified: {0}")]
    Falsified(String),
    #[error("configuration error: {0}")]
    Config(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Process exit status: 1 for unusable input, 2 when a computed
    /// invariant fails.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::DivisionByZero | Error::Singular(_) | Error::NonTermination(_) | Error::Falsified(_) => 2,
            _ => 1,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_codes() {
        assert_eq!(Error::Config("x".into()).exit_code(), 1);
        assert_eq!(Error::Precision("x".into()).exit_code(), 1);
        assert_eq!(Error::Falsified("x".into()).exit_code(), 2);
        assert_eq!(Error::NonTermination(3).exit_code(), 2);
    }
}
