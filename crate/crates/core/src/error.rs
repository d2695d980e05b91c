//! Error types shared by the whole crate.

/// Coarse classification of failures, used by front ends to pick exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    /// Inputs outside the mathematical domain of an operation.
    Domain,
    /// A numerical procedure failed to reach its contract.
    Numeric,
    /// Filesystem failure while exporting.
    Io,
}

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("space-form curvature must be finite, got rho = {rho}")]
    InvalidSpaceForm { rho: f64 },

    #[error("first-integral constant must be finite and positive, got d = {d}")]
    InvalidEnergy { d: f64 },

    #[error("threshold defined only for spherical ambient (rho = {rho} <= 0)")]
    NonSphericalAmbient { rho: f64 },

    #[error("constant-curvature critical curves are only possible in the case of the round 2-sphere (rho = {rho} <= 0)")]
    RoundSphereOnly { rho: f64 },

    #[error("no oscillatory regime: d = {d} <= d_* = {d_star}")]
    NoOscillatoryRegime { d: f64, d_star: f64 },

    #[error("root bracketing failed: {detail}")]
    BracketFailure { detail: String },

    #[error("pair ({m},{n}) not admissible: {reason}")]
    PairNotAdmissible { m: u32, n: u32, reason: String },

    #[error("quadrature tolerance not reached: best estimate {best} with error bound {bound}")]
    QuadratureTolerance { best: f64, bound: f64 },

    #[error("closure bracket not found below d = {d_cap} for target {target}")]
    ClosureBracket { target: f64, d_cap: f64 },

    #[error("first-integral residual {residual} exceeds tolerance {tol} at s = {s}")]
    ResidualBreach { s: f64, residual: f64, tol: f64 },

    #[error("step size underflow at s = {s}")]
    StepSizeUnderflow { s: f64 },

    #[error("step budget exhausted at s = {s}")]
    StepBudgetExhausted { s: f64 },

    #[error("profile closure residual {residual} exceeds tolerance {tol}; tighten the integration tolerance")]
    ClosureResidual { residual: f64, tol: f64 },

    #[error("period detection needs at least two curvature minima, found {found}")]
    TooFewMinima { found: usize },

    #[error("non-positive denominator in the angle density at s = {s}; d is outside the oscillatory regime")]
    NonPositiveDenominator { s: f64 },

    #[error("grid too coarse: need n_s >= {min_ns} and n_phi >= {min_nphi}, got {n_s} x {n_phi}")]
    GridTooCoarse {
        n_s: usize,
        n_phi: usize,
        min_ns: usize,
        min_nphi: usize,
    },

    #[error("degenerate first fundamental form (EG - F^2 = {value}) at row {row}, column {col}")]
    DegenerateMetric { row: usize, col: usize, value: f64 },

    #[error("mesh point within {distance} of the projection pole (tolerance {tol}); choose another pole")]
    PoleTooClose { distance: f64, tol: f64 },

    #[error("OBJ export is defined for projected meshes only; project the mesh to R^3 first")]
    ObjRequiresProjection,

    #[error("non-existence report requires rho <= 0 (got rho = {rho}); use the closure solver for spherical ambients")]
    NonexistenceNeedsNonpositiveRho { rho: f64 },

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

impl Error {
    pub fn kind(&self) -> ErrorKind {
        use Error::*;
        match self {
            InvalidSpaceForm { .. }
            | InvalidEnergy { .. }
            | NonSphericalAmbient { .. }
            | RoundSphereOnly { .. }
            | NoOscillatoryRegime { .. }
            | PairNotAdmissible { .. }
            | GridTooCoarse { .. }
            | PoleTooClose { .. }
            | ObjRequiresProjection
            | NonexistenceNeedsNonpositiveRho { .. } => ErrorKind::Domain,
            BracketFailure { .. }
            | QuadratureTolerance { .. }
            | ClosureBracket { .. }
            | ResidualBreach { .. }
            | StepSizeUnderflow { .. }
            | StepBudgetExhausted { .. }
            | ClosureResidual { .. }
            | TooFewMinima { .. }
            | NonPositiveDenominator { .. }
            | DegenerateMetric { .. } => ErrorKind::Numeric,
            Io(_) => ErrorKind::Io,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
