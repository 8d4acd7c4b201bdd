use core::fmt;
use core::str::FromStr;

use crate::error::{Error, Result};
use crate::precision::{ArithmeticContext, ComplexHP};

/// Coefficients of `w[n+1] + w[n] + w[n-1] = (alpha n + beta) / w[n] + gamma`.
///
/// `alpha = 0` is allowed here (the lattice iterator handles it), but the
/// series machinery rejects it.
#[derive(Debug, Clone, PartialEq)]
pub struct PainleveParams {
    pub alpha: ComplexHP,
    pub beta: ComplexHP,
    pub gamma: ComplexHP,
}

impl PainleveParams {
    pub fn new(alpha: ComplexHP, beta: ComplexHP, gamma: ComplexHP) -> Result<Self> {
        alpha.check_same(&beta)?;
        alpha.check_same(&gamma)?;
        if !(alpha.is_finite() && beta.is_finite() && gamma.is_finite()) {
            return Err(Error::NonFinite);
        }
        Ok(PainleveParams { alpha, beta, gamma })
    }

    /// Real parameters from decimal strings, parsed at the context precision.
    pub fn parse(ctx: &ArithmeticContext, alpha: &str, beta: &str, gamma: &str) -> Result<Self> {
        let r = |s: &str| ctx.parse(s).map(ComplexHP::from_real);
        PainleveParams::new(r(alpha)?, r(beta)?, r(gamma)?)
    }

    pub fn from_ints(ctx: &ArithmeticContext, alpha: i64, beta: i64, gamma: i64) -> Self {
        PainleveParams {
            alpha: ctx.complex(alpha, 0),
            beta: ctx.complex(beta, 0),
            gamma: ctx.complex(gamma, 0),
        }
    }

    pub fn context(&self) -> ArithmeticContext {
        self.alpha.context()
    }

    pub fn bits(&self) -> usize {
        self.alpha.bits()
    }

    pub fn is_real(&self) -> bool {
        self.alpha.is_real() && self.beta.is_real() && self.gamma.is_real()
    }
}

/// Leading-order family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SolutionKind {
    /// `u0 = -v0 = ±sqrt(-alpha s)`: the sign alternates between even and odd sites.
    TypeA,
    /// `u0 = v0 = ±sqrt(alpha s / 3)`.
    TypeB,
}

/// Choice of sign in front of the leading square root.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Branch {
    Plus,
    Minus,
}

impl Branch {
    pub fn sign(self) -> i64 {
        match self {
            Branch::Plus => 1,
            Branch::Minus => -1,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SolutionFamily {
    pub kind: SolutionKind,
    pub sign: Branch,
}

impl SolutionFamily {
    pub const fn new(kind: SolutionKind, sign: Branch) -> Self {
        SolutionFamily { kind, sign }
    }

    pub const fn type_a(sign: Branch) -> Self {
        SolutionFamily { kind: SolutionKind::TypeA, sign }
    }

    pub const fn type_b(sign: Branch) -> Self {
        SolutionFamily { kind: SolutionKind::TypeB, sign }
    }
}

/// Even sites carry `u`, odd sites carry `v`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sequence {
    U,
    V,
}

impl fmt::Display for SolutionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SolutionKind::TypeA => "A",
            SolutionKind::TypeB => "B",
        })
    }
}

impl FromStr for SolutionKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "A" | "a" | "TypeA" => Ok(SolutionKind::TypeA),
            "B" | "b" | "TypeB" => Ok(SolutionKind::TypeB),
            _ => Err(Error::InvalidArgument("solution type must be A or B")),
        }
    }
}

impl fmt::Display for Branch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Branch::Plus => "plus",
            Branch::Minus => "minus",
        })
    }
}

impl FromStr for Branch {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "plus" | "+" | "Plus" => Ok(Branch::Plus),
            "minus" | "-" | "Minus" => Ok(Branch::Minus),
            _ => Err(Error::InvalidArgument("sign must be plus or minus")),
        }
    }
}
