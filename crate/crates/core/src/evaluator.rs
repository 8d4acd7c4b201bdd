//! Optimally truncated series plus exponentially small remainder.
//!
//! Because `u_m(s) = a_m s^((1-m)/2)`, each lattice term
//! `eps^((m-1)/2) u_m(s)` equals `a_m n^((1-m)/2)` and each exponential
//! `exp(-c s / eps)` equals `exp(-c n)`, so everything here is a function of
//! `n` alone. `eps = 1/|n|` is used only to count terms and to scale the
//! error-function smoothing.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::lateorder::LateOrderModel;
use crate::params::{Sequence, SolutionKind};
use crate::precision::{ArithmeticContext, ComplexHP, Real};
use crate::series::CoefficientTable;
use crate::stokes::{jump_constants, side_of, singulants, unwrapped_angle, Side, SingulantSet};

/// Beyond this many Gaussian widths from a Stokes line the multiplier is
/// taken as the constant on that side.
pub const SATURATION: f64 = 8.0;

/// Multiplier value on each side of one label's Stokes line.
#[derive(Debug, Clone, PartialEq)]
pub struct MultiplierEntry {
    pub label: usize,
    /// Value on the side containing the positive real axis.
    pub near: ComplexHP,
    /// Value after crossing the Stokes line.
    pub far: ComplexHP,
}

impl MultiplierEntry {
    pub fn jump(&self) -> ComplexHP {
        &self.far - &self.near
    }
}

/// Piecewise-constant Stokes multipliers of a family.
#[derive(Debug, Clone, PartialEq)]
pub struct RemainderSpec {
    kind: SolutionKind,
    entries: Vec<MultiplierEntry>,
    /// Real-axis values of labels 1 and 4 (Type B only).
    free_params: Option<(ComplexHP, ComplexHP)>,
}

impl RemainderSpec {
    /// Type A: zero on the real-axis side, 4 beyond the Stokes line.
    pub fn type_a(ctx: &ArithmeticContext) -> Self {
        let entries = jump_constants(ctx, SolutionKind::TypeA)
            .into_iter()
            .map(|(label, j)| MultiplierEntry { label, near: ctx.czero(), far: j })
            .collect();
        RemainderSpec { kind: SolutionKind::TypeA, entries, free_params: None }
    }

    /// Type B with real-axis values `f1`, `f4` for labels 1 and 4; labels 2
    /// and 3 vanish on the real-axis side.
    pub fn type_b(ctx: &ArithmeticContext, f1: ComplexHP, f4: ComplexHP) -> Result<Self> {
        f1.check_same(&f4)?;
        if f1.bits() != ctx.bits() {
            return Err(Error::PrecisionMismatch { left: ctx.bits(), right: f1.bits() });
        }
        let entries = jump_constants(ctx, SolutionKind::TypeB)
            .into_iter()
            .map(|(label, j)| {
                let near = match label {
                    1 => f1.clone(),
                    4 => f4.clone(),
                    _ => ctx.czero(),
                };
                let far = &near + &j;
                MultiplierEntry { label, near, far }
            })
            .collect();
        Ok(RemainderSpec { kind: SolutionKind::TypeB, entries, free_params: Some((f1, f4)) })
    }

    /// Type B with labels 1 and 4 switched off on the real axis.
    pub fn type_b_special(ctx: &ArithmeticContext) -> Self {
        RemainderSpec::type_b(ctx, ctx.czero(), ctx.czero()).expect("same precision")
    }

    pub fn for_kind(ctx: &ArithmeticContext, kind: SolutionKind) -> Self {
        match kind {
            SolutionKind::TypeA => RemainderSpec::type_a(ctx),
            SolutionKind::TypeB => RemainderSpec::type_b_special(ctx),
        }
    }

    /// Caller-built multipliers, checked against the jump constants and the
    /// real-axis conditions.
    pub fn custom(
        ctx: &ArithmeticContext,
        kind: SolutionKind,
        entries: Vec<MultiplierEntry>,
    ) -> Result<Self> {
        let jumps = jump_constants(ctx, kind);
        if entries.len() != jumps.len() {
            return Err(Error::InvalidMultipliers("one entry per singulant label is required"));
        }
        let tol = Real::from_i64(2, ctx.bits()).powi(ctx.bits() as u64 / 2).recip();
        for (label, j) in &jumps {
            let e = entries
                .iter()
                .find(|e| e.label == *label)
                .ok_or(Error::InvalidMultipliers("missing label"))?;
            e.near.check_same(j)?;
            e.far.check_same(j)?;
            if (e.jump() - j).abs() > &tol * &(j.abs() + ctx.one()) {
                return Err(Error::InvalidMultipliers("far minus near must equal the jump constant"));
            }
            let must_vanish = match kind {
                SolutionKind::TypeA => true,
                SolutionKind::TypeB => *label == 2 || *label == 3,
            };
            if must_vanish && !e.near.is_zero() {
                return Err(Error::InvalidMultipliers("multiplier must vanish on the real-axis side"));
            }
        }
        let free_params = match kind {
            SolutionKind::TypeA => None,
            SolutionKind::TypeB => {
                let f = |l: usize| entries.iter().find(|e| e.label == l).map(|e| e.near.clone());
                Some((f(1).expect("checked"), f(4).expect("checked")))
            }
        };
        Ok(RemainderSpec { kind, entries, free_params })
    }

    pub fn kind(&self) -> SolutionKind {
        self.kind
    }

    pub fn entries(&self) -> &[MultiplierEntry] {
        &self.entries
    }

    pub fn free_params(&self) -> Option<&(ComplexHP, ComplexHP)> {
        self.free_params.as_ref()
    }

    pub fn entry(&self, label: usize) -> Result<&MultiplierEntry> {
        self.entries
            .iter()
            .find(|e| e.label == label)
            .ok_or(Error::InvalidArgument("no multiplier with this label"))
    }

    /// Constant value on a side; the mean of both on the line itself.
    pub fn piecewise(&self, label: usize, side: Side) -> Result<ComplexHP> {
        let e = self.entry(label)?;
        Ok(match side {
            Side::Near => e.near.clone(),
            Side::Far => e.far.clone(),
            Side::OnLine => {
                let half = e.near.context().ratio(1, 2);
                (&e.near + &e.far).scale(&half)
            }
        })
    }

    /// True when every multiplier vanishes on the real-axis side.
    pub fn real_axis_silent(&self) -> bool {
        self.entries.iter().all(|e| e.near.is_zero())
    }
}

/// Standard normal distribution function.
pub fn normal_cdf(x: f64) -> f64 {
    0.5 * libm::erfc(-x / core::f64::consts::SQRT_2)
}

/// Stokes multiplier of `label` at `s`: the near-side value plus the jump
/// times the Gaussian distribution function of the scaled angular distance
/// `theta sqrt(|chi| / eps)` from the Stokes line. Where the exponential is
/// not subdominant (`Re chi <= 0`), or more than [`SATURATION`] widths
/// away, the piecewise constant is returned.
pub fn stokes_multiplier(
    spec: &RemainderSpec,
    label: usize,
    s: &ComplexHP,
    epsilon: &Real,
) -> Result<ComplexHP> {
    if s.on_branch_cut() {
        return Err(Error::BranchCut);
    }
    if !epsilon.is_positive() {
        return Err(Error::InvalidArgument("epsilon must be positive"));
    }
    let ctx = s.context();
    let set = singulants(&ctx, spec.kind);
    let c = &set.get(label)?.slope;
    let chi = c * s;
    let (cre, cim) = chi.to_f64();
    let side = side_of(c, s);
    if cre <= 0.0 {
        return spec.piecewise(label, side);
    }
    let theta = unwrapped_angle(c, s);
    let r = libm::hypot(cre, cim);
    let width = libm::sqrt(r / epsilon.to_f64());
    if theta.abs() * width > SATURATION {
        return spec.piecewise(label, side);
    }
    let sigma = if c.im().is_positive() { -1.0 } else { 1.0 };
    let e = spec.entry(label)?;
    let phi = ctx.from_f64(normal_cdf(sigma * theta * width))?;
    Ok(&e.near + e.jump().scale(&phi))
}

/// `(N, omega)` with `N = 2|c s|/eps + 2 omega` the smallest integer not
/// below `2|c s|/eps`, so `0 <= omega < 1/2`.
pub fn optimal_truncation(
    chi_slope: &ComplexHP,
    s: &ComplexHP,
    epsilon: &Real,
) -> Result<(usize, Real)> {
    if s.is_zero() {
        return Err(Error::InvalidArgument("s must be nonzero"));
    }
    if !epsilon.is_positive() {
        return Err(Error::InvalidArgument("epsilon must be positive"));
    }
    let chi = (chi_slope * s).abs();
    if epsilon >= &chi {
        return Err(Error::AsymptoticRegime);
    }
    let ctx = s.context();
    let x = ctx.int(2) * &chi / epsilon;
    let n = x.ceil();
    let omega = (&n - &x) / ctx.int(2);
    let count = n.to_f64();
    if count > usize::MAX as f64 / 2.0 {
        return Err(Error::AsymptoticRegime);
    }
    Ok((count as usize, omega))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TruncationRule {
    /// Stop at the smallest term, `N_opt` terms.
    Optimal,
    /// Orders `0..=M`.
    Fixed(usize),
}

/// Truncation data and the assembled value for one sequence at one `n`.
#[derive(Debug, Clone, PartialEq)]
pub struct TruncatedApproximation {
    /// Number of series terms summed.
    pub terms: usize,
    /// Set under [`TruncationRule::Optimal`].
    pub omega: Option<Real>,
    pub series_value: ComplexHP,
    pub remainder_value: ComplexHP,
    pub total: ComplexHP,
}

/// Both sequences at one `n`.
#[derive(Debug, Clone, PartialEq)]
pub struct Evaluation {
    pub n: ComplexHP,
    pub u: TruncatedApproximation,
    pub v: TruncatedApproximation,
}

impl Evaluation {
    /// The lattice value `w_n` for an integer `n`.
    pub fn lattice_value(&self, parity: Parity) -> ComplexHP {
        reconstruct_lattice(&self.u.total, &self.v.total, parity)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn of(n: i64) -> Parity {
        if n.rem_euclid(2) == 0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }
}

/// `w_n` is the `u` value on even sites and the `v` value on odd sites.
pub fn reconstruct_lattice(u_value: &ComplexHP, v_value: &ComplexHP, parity: Parity) -> ComplexHP {
    match parity {
        Parity::Even => u_value.clone(),
        Parity::Odd => v_value.clone(),
    }
}

fn remainder(
    set: &SingulantSet,
    model: &LateOrderModel,
    spec: &RemainderSpec,
    seq: Sequence,
    n: &ComplexHP,
    unit: &ComplexHP,
    eps: &Real,
) -> Result<ComplexHP> {
    let ctx = n.context();
    let mut acc = ctx.czero();
    for (e, lambda) in set.entries.iter().zip(model.terms(seq)) {
        let mult = stokes_multiplier(spec, e.label, unit, eps)?;
        if mult.is_zero() {
            continue;
        }
        acc = acc + mult * lambda * (-(&e.slope * n)).exp();
    }
    Ok(acc)
}

/// Series plus remainder for both sequences at `n`.
///
/// With `spec = None` only the truncated series is returned. A spec needs
/// the late-order model for its prefactors.
pub fn evaluate(
    table: &CoefficientTable,
    model: Option<&LateOrderModel>,
    spec: Option<&RemainderSpec>,
    n: &ComplexHP,
    rule: TruncationRule,
) -> Result<Evaluation> {
    if n.on_branch_cut() {
        return Err(Error::BranchCut);
    }
    table.params().alpha.check_same(n)?;
    let ctx = table.context();
    let kind = table.family().kind;
    let set = singulants(&ctx, kind);
    let mag = n.abs();
    let eps = mag.recip();
    let unit = n.scale(&eps);

    let (terms, omega) = match rule {
        TruncationRule::Optimal => {
            let (c, _) = set
                .entries
                .iter()
                .map(|e| (e.slope.clone(), e.slope.abs()))
                .fold(None::<(ComplexHP, Real)>, |best, (c, a)| match best {
                    Some((bc, ba)) if ba <= a => Some((bc, ba)),
                    _ => Some((c, a)),
                })
                .expect("singulant sets are non-empty");
            let (n_opt, omega) = optimal_truncation(&c, &unit, &eps)?;
            (n_opt, Some(omega))
        }
        TruncationRule::Fixed(m) => (m + 1, None),
    };
    if terms == 0 || terms - 1 > table.max_order() {
        return Err(Error::TableTooShort { have: table.max_order(), need: terms.saturating_sub(1) });
    }

    if spec.is_some() && model.is_none() {
        return Err(Error::InvalidArgument("a remainder needs the late-order model"));
    }
    if let (Some(sp), Some(md)) = (spec, model) {
        if sp.kind() != kind || md.family.kind != kind {
            return Err(Error::InvalidArgument("model and multipliers must match the table's family"));
        }
    }

    let one = ctx.one();
    let build = |seq: Sequence| -> Result<TruncatedApproximation> {
        let series_value = table.partial_sum(seq, n, &one, terms - 1)?;
        let remainder_value = match (spec, model) {
            (Some(sp), Some(md)) => remainder(&set, md, sp, seq, n, &unit, &eps)?,
            _ => ctx.czero(),
        };
        let total = &series_value + &remainder_value;
        Ok(TruncatedApproximation {
            terms,
            omega: omega.clone(),
            series_value,
            remainder_value,
            total,
        })
    };
    Ok(Evaluation { n: n.clone(), u: build(Sequence::U)?, v: build(Sequence::V)? })
}
