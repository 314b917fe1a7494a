use thiserror::Error;

/// Errors raised anywhere in the crate.
///
/// Variants split into two families that the command line front end maps to
/// distinct exit codes: input/precondition problems (exit 1) and numerical
/// failures (exit 2). See [`WroError::exit_code`].
#[derive(Debug, Error)]
pub enum WroError {
    #[error("malformed input: {0}")]
    Parse(String),

    #[error("invalid weight: {0}")]
    InvalidWeight(String),

    #[error("rational weight has a pole at {re:+.6e}{im:+.6e}i inside the closed unit disc")]
    PoleInsideDisc { re: f64, im: f64 },

    #[error("invalid rotation: {0}")]
    InvalidRotation(String),

    #[error("invalid space: {0}")]
    InvalidSpace(String),

    #[error("rotation is a root of unity (p/q = {p}/{q}); every implemented classification assumes a non-periodic rotation")]
    RootOfUnity { p: u64, q: u64 },

    #[error("angle is given in raw radians without `assumed_nonperiodic`; periodicity cannot be certified from a float")]
    PeriodicityUnknown,

    #[error("weight lacks regularity tag `{tag}` required for {space}")]
    MissingTag { tag: &'static str, space: String },

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("ambiguous boundary zero at modulus {modulus:.12} (within root accuracy of the tolerance band)")]
    AmbiguousBoundaryZero { modulus: f64 },

    #[error("quadrature did not converge (last two refinements differ by {rel_diff:.3e} relative at grid {grid})")]
    QuadratureNonConvergence { grid: usize, rel_diff: f64 },

    #[error("all boundary samples are zero")]
    AllSamplesZero,

    #[error("root finding failed: {0}")]
    RootFinding(String),

    #[error("approximate-point witness unavailable: {0}")]
    WitnessUnavailable(String),

    #[error("numerical rank indeterminate: singular value {value:.3e} within 10x of threshold {threshold:.3e}")]
    RankIndeterminate { value: f64, threshold: f64 },

    #[error("numerical failure: {0}")]
    Numerical(String),

    #[error("io error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

impl WroError {
    /// 1 for input and precondition errors, 2 for numerical failures.
    pub fn exit_code(&self) -> i32 {
        match self {
            WroError::AmbiguousBoundaryZero { .. }
            | WroError::QuadratureNonConvergence { .. }
            | WroError::RootFinding(_)
            | WroError::WitnessUnavailable(_)
            | WroError::RankIndeterminate { .. }
            | WroError::Numerical(_) => 2,
            _ => 1,
        }
    }
}

pub type Result<T> = std::result::Result<T, WroError>;
