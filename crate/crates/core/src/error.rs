use thiserror::Error;

/// Errors shared across the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A profile sample carried a NaN or infinite field.
    #[error("invalid sample: non-finite field {0}")]
    InvalidSample(&'static str),

    /// A finite-difference stencil left the positivity domain f > 0, h > 0.
    #[error("stencil leaves positivity domain (f = {f}, h = {h}, step = {step})")]
    StencilOutOfDomain { f: f64, h: f64, step: f64 },

    /// An operation was called with an empty sample list.
    #[error("empty sample list")]
    EmptySamples,

    /// The requested point lies outside the positivity domain of f.
    #[error("point s = {s} outside the positivity domain")]
    OutsideDomain { s: f64 },

    /// An operation restricted to a = ±1 was called with a = 0 (or vice versa).
    #[error("operation not defined for branch a = {a}")]
    BranchUsage { a: i8 },

    /// s = 1 is a pole of the a = -1 metric.
    #[error("s = 1 is a pole when a = -1")]
    PoleAtOne,

    /// csch r is singular at r = 0 and undefined for r <= 0 in the a = -1 branch.
    #[error("r = {r} not in the domain of the a = -1 scale function (requires r > 0)")]
    HBranchDomain { r: f64 },

    /// A root argument must be positive.
    #[error("root argument z = {z} must be positive")]
    InvalidRoot { z: f64 },

    /// z = 1 degenerates the single-root formulas for C and lambda.
    #[error("z = 1 is degenerate for the root formulas")]
    DegenerateRoot,

    /// A parameter violated one of the admissibility constraints.
    #[error("constraint violated: {0}")]
    ConstraintViolation(String),

    /// The double-root boundary curve does not exist at this lambda.
    #[error("no double-root boundary: radicand {radicand} < 0 at lambda = {lambda}")]
    NoBoundary { lambda: f64, radicand: f64 },

    /// The two-root obstruction denominator vanished.
    #[error("singular configuration: obstruction denominator vanished at z1 = {z1}, n = {n}")]
    SingularConfiguration { z1: f64, n: i32 },

    /// An s-interval straddles a root of G or the s = 1 pole.
    #[error("invalid interval ({lo}, {hi}): {reason}")]
    InvalidInterval { lo: f64, hi: f64, reason: String },

    /// A polynomial operation received an identically zero polynomial.
    #[error("polynomial is identically zero")]
    ZeroPolynomial,

    /// The orbifold family requires n >= 3.
    #[error("orbifold order n = {n} invalid (requires n >= 3)")]
    InvalidOrbifoldOrder { n: i64 },

    /// Generic usage error (bad argument combination).
    #[error("usage: {0}")]
    Usage(String),
}

pub type Result<T> = std::result::Result<T, Error>;
