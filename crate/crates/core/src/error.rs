use core::fmt;

/// Everything that can go wrong inside the core crate.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// Mantissa width below the supported minimum.
    PrecisionTooLow { bits: usize },
    /// Two operands were built under different arithmetic contexts.
    PrecisionMismatch { left: usize, right: usize },
    /// A NaN or infinite value reached a constructor.
    NonFinite,
    /// A decimal string could not be parsed.
    Parse(alloc::string::String),
    /// Argument outside the domain of a function (gamma pole, log of zero, ...).
    Domain(&'static str),
    /// Point lies on the branch cut along the negative real axis, or at the origin.
    BranchCut,
    /// `alpha = 0` makes the leading orders vanish.
    DegenerateLeadingOrder,
    /// The 2x2 system fixing the coefficients of order `m` has a vanishing pivot.
    SingularOrder { m: usize },
    /// A table or window argument is inconsistent with the operation.
    InvalidArgument(&'static str),
    /// The coefficient table is too short for the requested work.
    TableTooShort { have: usize, need: usize },
    /// Late-order estimates stopped improving.
    NonConvergence { last_increment: f64 },
    /// Linear system for the prefactor constants is too badly conditioned to trust.
    IllConditioned { condition: f64 },
    /// Optimal truncation is meaningless because epsilon is not small against |chi|.
    AsymptoticRegime,
    /// Stokes multiplier state violates the jump or real-axis conditions.
    InvalidMultipliers(&'static str),
}

pub type Result<T> = core::result::Result<T, Error>;

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::PrecisionTooLow { bits } => {
                write!(f, "precision of {bits} bits is below the 64-bit minimum")
            }
            Error::PrecisionMismatch { left, right } => {
                write!(f, "operands carry different precisions ({left} vs {right} bits)")
            }
            Error::NonFinite => f.write_str("value is not finite"),
            Error::Parse(s) => write!(f, "cannot parse {s:?} as a decimal number"),
            Error::Domain(what) => write!(f, "domain error: {what}"),
            Error::BranchCut => f.write_str("point lies on the branch cut or at the origin"),
            Error::DegenerateLeadingOrder => {
                f.write_str("alpha = 0 gives degenerate leading-order behaviour")
            }
            Error::SingularOrder { m } => {
                write!(f, "coefficient system is singular at order {m}")
            }
            Error::InvalidArgument(what) => write!(f, "invalid argument: {what}"),
            Error::TableTooShort { have, need } => {
                write!(f, "coefficient table holds orders up to {have}, need {need}; extend it first")
            }
            Error::NonConvergence { last_increment } => write!(
                f,
                "late-order estimates are not converging (last increment {last_increment:e})"
            ),
            Error::IllConditioned { condition } => {
                write!(f, "prefactor system is ill-conditioned (condition number {condition:e})")
            }
            Error::AsymptoticRegime => {
                f.write_str("epsilon is not small compared with |chi|; truncation is meaningless")
            }
            Error::InvalidMultipliers(what) => write!(f, "invalid Stokes multipliers: {what}"),
        }
    }
}

impl core::error::Error for Error {}
