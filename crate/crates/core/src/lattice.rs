//! Direct iteration of the difference equation.
//!
//! Forward: `w[n+1] = (alpha n + beta)/w[n] + gamma - w[n] - w[n-1]`.
//! Backward: `w[n-1] = (alpha n + beta)/w[n] + gamma - w[n] - w[n+1]`.
//! Both divide by `w[n]`; a divisor below the pole threshold stops the
//! orbit and is flagged rather than raised.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::params::PainleveParams;
use crate::precision::{ComplexHP, Real};

/// When a divisor counts as a pole.
#[derive(Debug, Clone, Copy, PartialEq)]
#[derive(Default)]
pub enum PoleThreshold {
    /// `|w_n| < 1e-8 max(1, sqrt|alpha n|)`.
    #[default]
    Default,
    /// `|w_n| < value`.
    Absolute(f64),
}


impl PoleThreshold {
    pub fn at(&self, alpha: &ComplexHP, n: &ComplexHP) -> f64 {
        match self {
            PoleThreshold::Default => {
                let an = (alpha * n).abs().to_f64();
                1e-8 * libm::sqrt(an).max(1.0)
            }
            PoleThreshold::Absolute(v) => *v,
        }
    }

    fn validate(&self) -> Result<()> {
        match self {
            PoleThreshold::Absolute(v) if !(*v > 0.0 && v.is_finite()) => {
                Err(Error::InvalidArgument("pole threshold must be positive"))
            }
            _ => Ok(()),
        }
    }
}

/// A finite orbit `w_n` for consecutive integer `k`, at lattice points
/// `n = shift + k`.
#[derive(Debug, Clone, PartialEq)]
pub struct LatticeSolution {
    pub params: PainleveParams,
    /// Complex offset of the lattice; zero for the ordinary integer lattice.
    pub shift: ComplexHP,
    /// `(k, w)` in increasing `k`.
    pub values: Vec<(i64, ComplexHP)>,
    /// Indices whose value fell below the threshold when used as a divisor.
    pub pole_flags: Vec<i64>,
    /// Optional deviation from an asymptotic prediction, aligned with `values`.
    pub residuals: Option<Vec<Option<f64>>>,
}

impl LatticeSolution {
    pub fn first_index(&self) -> Option<i64> {
        self.values.first().map(|v| v.0)
    }

    pub fn last_index(&self) -> Option<i64> {
        self.values.last().map(|v| v.0)
    }

    pub fn get(&self, k: i64) -> Option<&ComplexHP> {
        let first = self.first_index()?;
        if k < first {
            return None;
        }
        self.values.get((k - first) as usize).map(|v| &v.1)
    }

    pub fn has_pole(&self) -> bool {
        !self.pole_flags.is_empty()
    }

    fn n_at(&self, k: i64) -> ComplexHP {
        &self.shift + &self.shift.context().complex(k, 0)
    }

    /// Largest relative defect of the recurrence over interior triples,
    /// relative to the largest term in the triple.
    pub fn max_defect(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for win in self.values.windows(3) {
            let (k, w) = (&win[1].0, &win[1].1);
            if w.is_zero() {
                continue;
            }
            let n = self.n_at(*k);
            let force = &(&self.params.alpha * &n + &self.params.beta) / w;
            let d = &win[0].1 + w + &win[2].1 - &force - &self.params.gamma;
            let scale = [&win[0].1, w, &win[2].1, &force, &self.params.gamma]
                .iter()
                .map(|z| z.abs().to_f64())
                .fold(0.0, f64::max);
            if scale > 0.0 {
                worst = worst.max(d.abs().to_f64() / scale);
            }
        }
        worst
    }
}

fn step(params: &PainleveParams, n: &ComplexHP, w: &ComplexHP, other: &ComplexHP) -> ComplexHP {
    &(&params.alpha * n + &params.beta) / w + &params.gamma - w - other
}

/// Forward orbit on the lattice `n = shift + k`, starting from `w` at
/// `k_start` and `k_start + 1`, up to `k_end`.
pub fn iterate_forward_from(
    params: &PainleveParams,
    shift: &ComplexHP,
    k_start: i64,
    w_first: &ComplexHP,
    w_second: &ComplexHP,
    k_end: i64,
    threshold: PoleThreshold,
) -> Result<LatticeSolution> {
    threshold.validate()?;
    params.alpha.check_same(w_first)?;
    params.alpha.check_same(w_second)?;
    params.alpha.check_same(shift)?;
    if !(w_first.is_finite() && w_second.is_finite()) {
        return Err(Error::NonFinite);
    }
    if k_end < k_start + 1 {
        return Err(Error::InvalidArgument("orbit must contain both seed values"));
    }
    let ctx = params.context();
    let mut sol = LatticeSolution {
        params: params.clone(),
        shift: shift.clone(),
        values: alloc::vec![(k_start, w_first.clone()), (k_start + 1, w_second.clone())],
        pole_flags: Vec::new(),
        residuals: None,
    };
    let mut prev = w_first.clone();
    let mut cur = w_second.clone();
    for k in k_start + 1..k_end {
        let n = shift + &ctx.complex(k, 0);
        if cur.abs().to_f64() < threshold.at(&params.alpha, &n) {
            sol.pole_flags.push(k);
            break;
        }
        let next = step(params, &n, &cur, &prev);
        sol.values.push((k + 1, next.clone()));
        prev = cur;
        cur = next;
    }
    Ok(sol)
}

/// Forward orbit `w_0 .. w_n_max` on the integer lattice.
pub fn iterate_forward(
    params: &PainleveParams,
    w0: &ComplexHP,
    w1: &ComplexHP,
    n_max: i64,
    threshold: PoleThreshold,
) -> Result<LatticeSolution> {
    let zero = params.context().czero();
    iterate_forward_from(params, &zero, 0, w0, w1, n_max, threshold)
}

/// Backward orbit on the lattice `n = shift + k` from `w` at `k_top` and
/// `k_top + 1` down to `k_bottom`.
pub fn iterate_backward_from(
    params: &PainleveParams,
    shift: &ComplexHP,
    k_top: i64,
    w_top: &ComplexHP,
    w_above: &ComplexHP,
    k_bottom: i64,
    threshold: PoleThreshold,
) -> Result<LatticeSolution> {
    threshold.validate()?;
    params.alpha.check_same(w_top)?;
    params.alpha.check_same(w_above)?;
    params.alpha.check_same(shift)?;
    if !(w_top.is_finite() && w_above.is_finite()) {
        return Err(Error::NonFinite);
    }
    if k_bottom > k_top {
        return Err(Error::InvalidArgument("down_to must not exceed the seed index"));
    }
    let ctx = params.context();
    let mut rev = alloc::vec![(k_top + 1, w_above.clone()), (k_top, w_top.clone())];
    let mut poles = Vec::new();
    let mut above = w_above.clone();
    let mut cur = w_top.clone();
    let mut k = k_top;
    while k > k_bottom {
        let n = shift + &ctx.complex(k, 0);
        if cur.abs().to_f64() < threshold.at(&params.alpha, &n) {
            poles.push(k);
            break;
        }
        let below = step(params, &n, &cur, &above);
        rev.push((k - 1, below.clone()));
        above = cur;
        cur = below;
        k -= 1;
    }
    rev.reverse();
    Ok(LatticeSolution {
        params: params.clone(),
        shift: shift.clone(),
        values: rev,
        pole_flags: poles,
        residuals: None,
    })
}

/// Backward orbit on the integer lattice from `(w_N, w_N+1)` down to `down_to`.
pub fn iterate_backward(
    params: &PainleveParams,
    w_n: &ComplexHP,
    w_n_plus_1: &ComplexHP,
    n: i64,
    down_to: i64,
    threshold: PoleThreshold,
) -> Result<LatticeSolution> {
    let zero = params.context().czero();
    iterate_backward_from(params, &zero, n, w_n, w_n_plus_1, down_to, threshold)
}

/// Per-site deviation between an orbit and a prediction.
#[derive(Debug, Clone, PartialEq)]
pub struct ComparisonRow {
    pub n: i64,
    pub absolute: f64,
    pub relative: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ComparisonReport {
    pub rows: Vec<ComparisonRow>,
    /// `-d ln(relative) / d ln n` by least squares over rows with nonzero
    /// deviation and `n > 0`.
    pub fitted_exponent: Option<f64>,
    /// `(M + 1)/2`: the decay of the relative deviation when the first
    /// omitted series term is nonzero.
    pub expected_exponent: f64,
}

/// Compares an orbit with predicted values `(n, w_n)` over the common
/// index range, and writes the relative deviations into the orbit.
pub fn compare(
    solution: &mut LatticeSolution,
    predictions: &[(i64, ComplexHP)],
    order: usize,
) -> Result<ComparisonReport> {
    let mut rows = Vec::new();
    let mut residuals: Vec<Option<f64>> = alloc::vec![None; solution.values.len()];
    for (n, pred) in predictions {
        let Some(first) = solution.first_index() else { break };
        let Some(w) = solution.get(*n) else { continue };
        w.check_same(pred)?;
        let diff: Real = (w - pred).abs();
        let absolute = diff.to_f64();
        let scale = pred.abs().to_f64();
        let relative = if scale > 0.0 { absolute / scale } else { absolute };
        residuals[(*n - first) as usize] = Some(relative);
        rows.push(ComparisonRow { n: *n, absolute, relative });
    }
    if rows.is_empty() {
        return Err(Error::InvalidArgument("orbit and predictions do not overlap"));
    }
    let pts: Vec<(f64, f64)> = rows
        .iter()
        .filter(|r| r.n > 0 && r.relative > 0.0)
        .map(|r| (libm::log(r.n as f64), libm::log(r.relative)))
        .collect();
    let fitted_exponent = least_squares_slope(&pts).map(|s| -s);
    solution.residuals = Some(residuals);
    Ok(ComparisonReport {
        rows,
        fitted_exponent,
        expected_exponent: (order as f64 + 1.0) / 2.0,
    })
}

/// Slope of the least-squares line through `pts`; `None` for fewer than
/// two distinct abscissae.
pub fn least_squares_slope(pts: &[(f64, f64)]) -> Option<f64> {
    if pts.len() < 2 {
        return None;
    }
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx) * (p.0 - mx)).sum();
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    if sxx == 0.0 {
        None
    } else {
        Some(sxy / sxx)
    }
}
