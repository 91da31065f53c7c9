use thiserror::Error;

/// Errors raised by constructors and validators.
///
/// Search operations that can legitimately fail to find anything do not use
/// this type; they return [`crate::SearchOutcome`] instead.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("modulus {0} is not prime")]
    NotPrime(u32),

    #[error("modulus mismatch: {0} vs {1}")]
    ModulusMismatch(u32, u32),

    #[error("dimension mismatch: {context} (expected {expected}, got {got})")]
    DimensionMismatch {
        context: String,
        expected: usize,
        got: usize,
    },

    #[error("axiom violated: {0}")]
    AxiomFailed(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),
}

impl Error {
    pub fn axiom(msg: impl Into<String>) -> Self {
        Error::AxiomFailed(msg.into())
    }

    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }

    pub fn dims(context: impl Into<String>, expected: usize, got: usize) -> Self {
        Error::DimensionMismatch {
            context: context.into(),
            expected,
            got,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;

/// Outcome of a certificate search.
///
/// `Infeasible` is a definitive negative answer (the affine system has no
/// solution), while `BudgetExceeded` means the quadratic part of the search
/// would have required enumerating more candidates than allowed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SearchOutcome<T> {
    Found(T),
    Infeasible,
    BudgetExceeded { candidates: u128, budget: u128 },
}

impl<T> SearchOutcome<T> {
    pub fn found(self) -> Option<T> {
        match self {
            SearchOutcome::Found(t) => Some(t),
            _ => None,
        }
    }

    pub fn is_found(&self) -> bool {
        matches!(self, SearchOutcome::Found(_))
    }

    pub fn is_infeasible(&self) -> bool {
        matches!(self, SearchOutcome::Infeasible)
    }

    pub fn as_ref(&self) -> SearchOutcome<&T> {
        match self {
            SearchOutcome::Found(t) => SearchOutcome::Found(t),
            SearchOutcome::Infeasible => SearchOutcome::Infeasible,
            SearchOutcome::BudgetExceeded { candidates, budget } => SearchOutcome::BudgetExceeded {
                candidates: *candidates,
                budget: *budget,
            },
        }
    }

    pub fn map<U>(self, f: impl FnOnce(T) -> U) -> SearchOutcome<U> {
        match self {
            SearchOutcome::Found(t) => SearchOutcome::Found(f(t)),
            SearchOutcome::Infeasible => SearchOutcome::Infeasible,
            SearchOutcome::BudgetExceeded { candidates, budget } => {
                SearchOutcome::BudgetExceeded { candidates, budget }
            }
        }
    }
}
