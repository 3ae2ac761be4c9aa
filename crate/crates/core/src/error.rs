use core::fmt;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// Operand shapes do not agree.
    Dimension { expected: usize, found: usize },
    /// Input that the operation is undefined for, e.g. the zero polynomial.
    DegenerateInput(&'static str),
    /// A value passed as a root is not one.
    NotARoot { lambda: f64, residual: f64 },
    /// The image of `T` is not numerically invariant, or `T` restricted to it is singular.
    Invariance { defect: f64 },
    /// A vector that should be normalised has (near) zero length.
    Normalization,
    /// Point degree requested on an eigenpoint that is not isolated.
    NotIsolated { lambda: f64, geometric_multiplicity: usize },
    /// The differential of `Ψ_L` at the eigenpoint is singular.
    DegenerateDifferential { det: f64 },
    /// An interval endpoint is (numerically) an eigenvalue.
    Admissibility { endpoint: f64 },
    /// The point is not an eigenpoint / solution within tolerance.
    NotASolution { residual: f64 },
    /// Newton did not converge.
    CorrectorFailure { iterations: usize, residual: f64 },
    /// The augmented Jacobian at the start point is rank deficient.
    BranchStart { sigma: f64 },
    /// Operation does not support this kind of nonlinearity.
    Unsupported(&'static str),
    /// A stated precondition on the inputs does not hold.
    Precondition(&'static str),
    /// A stalled branch cannot be classified.
    Inconclusive,
    /// Built-in example ids are 1..=6.
    UnknownExample(u32),
    /// Linear system is singular.
    Singular,
    /// Internal cross-check failed.
    Inconsistent(&'static str),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Dimension { expected, found } => {
                write!(f, "dimension mismatch: expected {expected}, found {found}")
            }
            Error::DegenerateInput(what) => write!(f, "degenerate input: {what}"),
            Error::NotARoot { lambda, residual } => {
                write!(f, "{lambda} is not a root (residual {residual:e})")
            }
            Error::Invariance { defect } => {
                write!(f, "restriction to the image is not an automorphism (defect {defect:e})")
            }
            Error::Normalization => write!(f, "cannot normalise a near-zero vector"),
            Error::NotIsolated { lambda, geometric_multiplicity } => write!(
                f,
                "eigenpoints over λ = {lambda} are not isolated (geometric multiplicity {geometric_multiplicity})"
            ),
            Error::DegenerateDifferential { det } => {
                write!(f, "differential of Ψ_L is singular at the eigenpoint (det {det:e})")
            }
            Error::Admissibility { endpoint } => {
                write!(f, "interval endpoint {endpoint} is an eigenvalue")
            }
            Error::NotASolution { residual } => {
                write!(f, "point is not a solution (residual {residual:e})")
            }
            Error::CorrectorFailure { iterations, residual } => write!(
                f,
                "corrector failed after {iterations} iterations (residual {residual:e})"
            ),
            Error::BranchStart { sigma } => write!(
                f,
                "augmented Jacobian is singular at the start point (σ = {sigma:e}); start from a nearby non-trivial point"
            ),
            Error::Unsupported(what) => write!(f, "unsupported: {what}"),
            Error::Precondition(what) => write!(f, "precondition violated: {what}"),
            Error::Inconclusive => write!(f, "branch stalled; persistence is inconclusive"),
            Error::UnknownExample(id) => write!(f, "no built-in example {id} (valid: 1..=6)"),
            Error::Singular => write!(f, "singular linear system"),
            Error::Inconsistent(what) => write!(f, "internal cross-check failed: {what}"),
        }
    }
}

impl core::error::Error for Error {}
