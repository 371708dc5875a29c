use thiserror::Error;

/// Everything that can go wrong when building or checking an object.
#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum Error {
    /// The declared relation forces `x ≤ y ≤ x` for distinct `x`, `y`.
    #[error("relation is cyclic through elements {0:?}")]
    Cycle(Vec<usize>),
    #[error("index {index} out of range for {len} elements")]
    Index { index: usize, len: usize },
    #[error("{what} has size {size}, above the bound {bound}")]
    Size { what: String, size: u128, bound: u128 },
    /// Two objects that must live over the same poset or algebra do not.
    #[error("ambient mismatch: {0}")]
    AmbientMismatch(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("illegal strategy: {0}")]
    IllegalStrategy(String),
    #[error("witness error: {0}")]
    Witness(String),
    #[error("input error at line {line}: {msg}")]
    Input { line: usize, msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn input_err<T>(line: usize, msg: impl Into<String>) -> Result<T> {
    Err(Error::Input { line, msg: msg.into() })
}

/// Upper bound on the number of elements of any poset built eagerly.
///
/// Defaults to 50,000 and can be overridden with `POSETFORGE_MAX_ELEMENTS`.
pub fn max_elements() -> usize {
    std::env::var("POSETFORGE_MAX_ELEMENTS")
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(50_000)
}

/// Upper bound on explicitly enumerated Boolean algebra elements.
pub const MAX_ENUMERATED: u128 = 1 << 20;

pub(crate) fn check_size(what: &str, size: u128, bound: u128) -> Result<()> {
    if size > bound {
        Err(Error::Size {
            what: what.to_string(),
            size,
            bound,
        })
    } else {
        Ok(())
    }
}
