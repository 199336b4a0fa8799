use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// The seed solution vanishes, so its log-derivative is undefined.
    #[error("seed solution vanishes at x = {x}")]
    SingularSeed { x: f64 },

    /// The Bernoulli denominator γ + σ∫F0² vanishes at `x`.
    #[error("deformation with gamma = {gamma} has a pole at x = {x}")]
    SingularFamily { gamma: f64, x: f64 },

    /// γ lies outside the regularity domain of the family.
    #[error("gamma = {gamma} is not regular: {domain}")]
    IrregularGamma { gamma: f64, domain: String },

    #[error("seed is not normalizable: {0}")]
    NonNormalizable(String),

    #[error("overflow evaluating {0}")]
    Overflow(String),

    #[error("quadrature did not converge: best estimate {estimate} with error {error_estimate}")]
    QuadratureNonConvergence { estimate: f64, error_estimate: f64 },

    #[error("invalid quantum numbers n = {n}, ell = {ell}: {reason}")]
    QuantumNumbers {
        n: u32,
        ell: u32,
        reason: &'static str,
    },

    #[error("potential is not finite at grid point {index} (x = {x})")]
    NonFinitePotential { index: usize, x: f64 },

    #[error("requested {k} eigenvalues from a matrix of size {size}")]
    TooManyEigenvalues { k: usize, size: usize },

    #[error("invalid grid: {0}")]
    InvalidGrid(String),
}
