use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{what} must be {requirement}, got {got}")]
    Domain {
        what: &'static str,
        requirement: &'static str,
        got: String,
    },
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("composition {parts:?} does not sum to {expected}")]
    CompositionSum { parts: Vec<usize>, expected: usize },
    #[error("series orders differ: {left} vs {right}")]
    OrderMismatch { left: usize, right: usize },
    #[error("series has zero constant term and cannot be inverted")]
    ZeroConstantTerm,
    #[error("coefficient {index} requested from a series truncated at order {order}")]
    OrderUnderflow { index: usize, order: usize },
    #[error("brute force over {count} tuples exceeds the limit of {limit}")]
    TooManyTuples { count: String, limit: u64 },
    #[error("{route_a} gives {value_a} but {route_b} gives {value_b}")]
    RouteDisagreement {
        route_a: &'static str,
        value_a: String,
        route_b: &'static str,
        value_b: String,
    },
    #[error("cannot parse {0:?} as a rational")]
    Parse(String),
}

impl Error {
    pub(crate) fn domain(what: &'static str, requirement: &'static str, got: impl ToString) -> Self {
        Error::Domain {
            what,
            requirement,
            got: got.to_string(),
        }
    }
}
