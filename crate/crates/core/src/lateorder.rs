//! Prefactor constants of the late-order divergence
//!
//! ```text
//! u_m(s) ~ sum_i Lambda_i Gamma(m/2 - 1/2) / chi_i(s)^(m/2 - 1/2)
//! ```
//!
//! fitted from a computed coefficient table. In the monomial representation
//! every power of `s` cancels, so the fits below never see an evaluation
//! point.

use alloc::string::String;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::params::{Sequence, SolutionFamily, SolutionKind};
use crate::precision::{gamma_half_real, principal_power, ArithmeticContext, ComplexHP, Real};
use crate::series::{CoefficientTable, Expansion};
use crate::stokes::{singulants, SingulantSet};

/// Fitted late-order behaviour of one family.
#[derive(Debug, Clone, PartialEq)]
pub struct LateOrderModel {
    pub family: SolutionFamily,
    pub singulants: SingulantSet,
    /// As reported: Type A `[L1, L2, L3, L4]` with `L1, L2` for `u` and
    /// `L3, L4` for `v`; Type B the four shared constants of the linear fit.
    pub lambdas: Vec<ComplexHP>,
    /// Prefactor multiplying each entry of `singulants` in the `u` sequence.
    u_terms: Vec<ComplexHP>,
    v_terms: Vec<ComplexHP>,
}

impl LateOrderModel {
    /// The constant `k` of the ansatz, as `(numerator, denominator)`.
    pub const K: (i64, i64) = (-1, 2);

    /// Prefactors aligned with `self.singulants.entries`.
    pub fn terms(&self, seq: Sequence) -> &[ComplexHP] {
        match seq {
            Sequence::U => &self.u_terms,
            Sequence::V => &self.v_terms,
        }
    }

    /// Type A model from the four constants `[L1, L2, L3, L4]`.
    pub fn type_a(ctx: &ArithmeticContext, family: SolutionFamily, lambdas: [ComplexHP; 4]) -> Self {
        let [l1, l2, l3, l4] = lambdas;
        LateOrderModel {
            family,
            singulants: singulants(ctx, SolutionKind::TypeA),
            lambdas: alloc::vec![l1.clone(), l2.clone(), l3.clone(), l4.clone()],
            u_terms: alloc::vec![l1, l2],
            v_terms: alloc::vec![l3, l4],
        }
    }

    /// Type B model from the four constants of the fit. The fit attaches
    /// its unknowns to phases built from `arg chi_1` alone; converting to
    /// one principal-branch prefactor per singulant gives
    /// `[L1, -i L2, i L4, L3]` for `chi_1..chi_4`.
    pub fn type_b(ctx: &ArithmeticContext, family: SolutionFamily, lambdas: [ComplexHP; 4]) -> Self {
        let [l1, l2, l3, l4] = lambdas;
        let terms = alloc::vec![l1.clone(), -l2.mul_i(), l4.mul_i(), l3.clone()];
        LateOrderModel {
            family,
            singulants: singulants(ctx, SolutionKind::TypeB),
            lambdas: alloc::vec![l1, l2, l3, l4],
            u_terms: terms.clone(),
            v_terms: terms,
        }
    }
}

/// Output of [`estimate_lambda_type_a`].
#[derive(Debug, Clone, PartialEq)]
pub struct TypeAEstimate {
    pub model: LateOrderModel,
    /// One Richardson step on the trailing same-parity estimates.
    pub extrapolated: [ComplexHP; 4],
    /// Largest change of any constant between the last two same-parity
    /// estimates.
    pub last_increment: f64,
    /// Same-parity increments, one per step, oldest first.
    pub increments: Vec<f64>,
    /// Index `k` of the pair `(a_2k, a_2k+2)` used for the final estimate.
    pub final_k: usize,
}

impl TypeAEstimate {
    pub fn lambdas(&self) -> &[ComplexHP] {
        &self.model.lambdas
    }
}

/// `E_k = x_2k (i pi/2)^(k-1/2) / Gamma(k-1/2)` for `k = 2..=k_max`.
fn normalised_even(seq: &[ComplexHP], chi: &ComplexHP, k_max: usize) -> Result<Vec<ComplexHP>> {
    let ctx = chi.context();
    let mut out = Vec::with_capacity(k_max + 1);
    // k = 2: chi^(3/2), Gamma(3/2)
    let mut pw = principal_power(chi, &ComplexHP::from_real(ctx.ratio(3, 2)))?;
    let mut g = gamma_half_real(&ctx, 3)?;
    out.push(ctx.czero());
    out.push(ctx.czero());
    for k in 2..=k_max {
        out.push((&seq[2 * k] * &pw).scale(&g.recip()));
        pw = &pw * chi;
        // Gamma(k + 1/2) = (k - 1/2) Gamma(k - 1/2)
        g = g * ctx.ratio(2 * k as i64 - 1, 2);
    }
    Ok(out)
}

/// `(L_odd_index, L_even_index)` from consecutive normalised terms.
fn pair_from(e: &[ComplexHP], k: usize) -> (ComplexHP, ComplexHP) {
    let ctx = e[k].context();
    let half = ctx.ratio(1, 2);
    let first = (&e[k] + &e[k + 1]).scale(&half);
    let mut second = (&e[k] - &e[k + 1]).scale(&half).mul_i();
    if k % 2 == 1 {
        second = -second;
    }
    (first, second)
}

/// Fits `L1..L4` for a Type A table from the even-order coefficients up to
/// `m_max`.
///
/// With `chi_1 = i pi/2` and `chi_2 = -chi_1`, the normalised terms obey
/// `E_k = L1 - i (-1)^k L2`, so the mean and the alternating difference of
/// neighbours isolate each constant. `L3, L4` come from the `v` sequence.
pub fn estimate_lambda_type_a(table: &CoefficientTable, m_max: usize) -> Result<TypeAEstimate> {
    if table.family().kind != SolutionKind::TypeA || table.expansion() != Expansion::HalfPower {
        return Err(Error::InvalidArgument("estimate_lambda_type_a needs a Type A dP1 table"));
    }
    if !m_max.is_multiple_of(2) || m_max < 40 {
        return Err(Error::InvalidArgument("m_max must be even and at least 40"));
    }
    if table.max_order() < m_max {
        return Err(Error::TableTooShort { have: table.max_order(), need: m_max });
    }
    let ctx = table.context();
    let set = singulants(&ctx, SolutionKind::TypeA);
    let chi = &set.entries[0].slope;
    let k_max = m_max / 2;
    let eu = normalised_even(table.u_coeffs(), chi, k_max)?;
    let ev = normalised_even(table.v_coeffs(), chi, k_max)?;

    // estimates[k] from the pair (k, k+1)
    let mut estimates: Vec<[ComplexHP; 4]> = Vec::new();
    for k in 2..k_max {
        let (l1, l2) = pair_from(&eu, k);
        let (l3, l4) = pair_from(&ev, k);
        estimates.push([l1, l2, l3, l4]);
    }
    let last = estimates.len() - 1;
    let max_diff = |a: &[ComplexHP; 4], b: &[ComplexHP; 4]| -> f64 {
        a.iter().zip(b.iter()).map(|(x, y)| (x - y).abs().to_f64()).fold(0.0, f64::max)
    };
    let increments: Vec<f64> =
        (2..estimates.len()).map(|i| max_diff(&estimates[i], &estimates[i - 2])).collect();
    let last_increment = *increments.last().expect("m_max >= 40 leaves many estimates");
    let tail = &increments[increments.len().saturating_sub(11)..];
    // increments come in near-equal pairs, so compare across the whole tail
    // rather than step by step
    if tail.len() == 11 && tail[10] >= tail[0] {
        return Err(Error::NonConvergence { last_increment });
    }

    // L(k) = L + C/k + ...: eliminate C between k and k - 2
    let k_last = (last + 2) as i64;
    let extrapolated = core::array::from_fn(|j| {
        let a = estimates[last][j].scale(&ctx.int(k_last));
        let b = estimates[last - 2][j].scale(&ctx.int(k_last - 2));
        (a - b).scale(&ctx.ratio(1, 2))
    });
    let lambdas = estimates[last].clone();
    Ok(TypeAEstimate {
        model: LateOrderModel::type_a(&ctx, table.family(), lambdas),
        extrapolated,
        last_increment,
        increments,
        final_k: last + 2,
    })
}

/// Output of [`estimate_lambda_type_b`].
#[derive(Debug, Clone, PartialEq)]
pub struct TypeBEstimate {
    pub model: LateOrderModel,
    pub m_start: usize,
    /// 1-norm condition number of the 4x4 system.
    pub condition: f64,
    /// Window used for the stability check, if any.
    pub check_start: Option<usize>,
    /// Largest component difference against the check window.
    pub check_difference: Option<f64>,
    pub warning: Option<String>,
}

impl TypeBEstimate {
    pub fn lambdas(&self) -> &[ComplexHP] {
        &self.model.lambdas
    }
}

/// Largest condition number accepted for the Type B system.
pub const MAX_CONDITION: f64 = 1e8;

/// Gaussian elimination with partial pivoting on a small complex system.
fn solve(mut a: Vec<Vec<ComplexHP>>, mut b: Vec<ComplexHP>) -> Result<Vec<ComplexHP>> {
    let n = b.len();
    for col in 0..n {
        let piv = (col..n)
            .max_by(|&i, &j| {
                a[i][col].abs().partial_cmp(&a[j][col].abs()).unwrap_or(core::cmp::Ordering::Equal)
            })
            .expect("non-empty range");
        if a[piv][col].is_zero() {
            return Err(Error::IllConditioned { condition: f64::INFINITY });
        }
        a.swap(col, piv);
        b.swap(col, piv);
        for r in col + 1..n {
            let f = &a[r][col] / &a[col][col];
            for c in col..n {
                let t = &f * &a[col][c];
                a[r][c] = &a[r][c] - &t;
            }
            let t = &f * &b[col];
            b[r] = &b[r] - &t;
        }
    }
    let mut x: Vec<ComplexHP> = b.clone();
    for r in (0..n).rev() {
        let mut acc = b[r].clone();
        for c in r + 1..n {
            acc = acc - &a[r][c] * &x[c];
        }
        x[r] = &acc / &a[r][r];
    }
    Ok(x)
}

type C64 = (f64, f64);

fn cmul(a: C64, b: C64) -> C64 {
    (a.0 * b.0 - a.1 * b.1, a.0 * b.1 + a.1 * b.0)
}

fn cdiv(a: C64, b: C64) -> C64 {
    let d = b.0 * b.0 + b.1 * b.1;
    ((a.0 * b.0 + a.1 * b.1) / d, (a.1 * b.0 - a.0 * b.1) / d)
}

fn cabs(a: C64) -> f64 {
    libm::hypot(a.0, a.1)
}

/// `||A||_1 ||A^-1||_1`, in double precision.
fn condition_number(a: &[Vec<ComplexHP>]) -> f64 {
    let n = a.len();
    let m: Vec<Vec<C64>> = a.iter().map(|r| r.iter().map(|z| z.to_f64()).collect()).collect();
    let norm1 = |m: &Vec<Vec<C64>>| -> f64 {
        (0..n).map(|c| (0..n).map(|r| cabs(m[r][c])).sum::<f64>()).fold(0.0, f64::max)
    };
    // Gauss-Jordan on [A | I]
    let mut w: Vec<Vec<C64>> = m
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut row = r.clone();
            row.extend((0..n).map(|j| if i == j { (1.0, 0.0) } else { (0.0, 0.0) }));
            row
        })
        .collect();
    for col in 0..n {
        let piv = (col..n)
            .max_by(|&i, &j| cabs(w[i][col]).total_cmp(&cabs(w[j][col])))
            .expect("non-empty");
        if cabs(w[piv][col]) == 0.0 {
            return f64::INFINITY;
        }
        w.swap(col, piv);
        let p = w[col][col];
        for c in 0..2 * n {
            w[col][c] = cdiv(w[col][c], p);
        }
        for r in 0..n {
            if r != col {
                let f = w[r][col];
                for c in 0..2 * n {
                    let t = cmul(f, w[col][c]);
                    w[r][c] = (w[r][c].0 - t.0, w[r][c].1 - t.1);
                }
            }
        }
    }
    let inv: Vec<Vec<C64>> = w.iter().map(|r| r[n..].to_vec()).collect();
    norm1(&m) * norm1(&inv)
}

fn type_b_solve(table: &CoefficientTable, m_start: usize) -> Result<([ComplexHP; 4], f64)> {
    let ctx = table.context();
    let set = singulants(&ctx, SolutionKind::TypeB);
    let chi = &set.entries[0].slope;
    let theta = chi.arg();
    let a = table.u_coeffs();
    let mut rows = Vec::with_capacity(4);
    let mut rhs = Vec::with_capacity(4);
    for step in 0..4 {
        let m = m_start + 2 * step;
        let sigma = if (m / 2).is_multiple_of(2) { 1 } else { -1 };
        let phase = ComplexHP::from_real(ctx.zero())
            + ComplexHP::from_real(&theta * ctx.int(m as i64 - 1)).mul_i();
        let phase = phase.exp();
        let sg = ctx.complex(sigma, 0);
        rows.push(alloc::vec![ctx.cone(), -sg.clone(), phase.clone(), -(&sg * &phase)]);
        let expo = ComplexHP::from_real(ctx.ratio(m as i64 - 1, 2));
        let g = gamma_half_real(&ctx, m as i64 - 1)?;
        rhs.push((&a[m] * &principal_power(chi, &expo)?).scale(&g.recip()));
    }
    let condition = condition_number(&rows);
    if !(condition <= MAX_CONDITION) {
        return Err(Error::IllConditioned { condition });
    }
    let x = solve(rows, rhs)?;
    Ok(([x[0].clone(), x[1].clone(), x[2].clone(), x[3].clone()], condition))
}

/// Fits the four Type B constants from coefficients at
/// `m_start, m_start+2, m_start+4, m_start+6`.
///
/// Each row reads
/// `a_m chi_1^((m-1)/2) / Gamma((m-1)/2) = L1 - (-1)^(m/2) L2 + e^(i theta (m-1)) (L3 - (-1)^(m/2) L4)`
/// with `theta = arg chi_1`. Without an explicit `m_start` the last usable
/// window is taken and compared against one 50 orders lower; a difference
/// above `1e-2` is reported in `warning`.
pub fn estimate_lambda_type_b(
    table: &CoefficientTable,
    m_start: Option<usize>,
) -> Result<TypeBEstimate> {
    if table.family().kind != SolutionKind::TypeB || table.expansion() != Expansion::HalfPower {
        return Err(Error::InvalidArgument("estimate_lambda_type_b needs a Type B dP1 table"));
    }
    let max = table.max_order();
    let (start, check) = match m_start {
        Some(m) => {
            if m % 2 != 0 || m < 4 {
                return Err(Error::InvalidArgument("m_start must be even and at least 4"));
            }
            (m, None)
        }
        None => {
            if max < 10 {
                return Err(Error::TableTooShort { have: max, need: 10 });
            }
            let m = (max - 6) & !1;
            (m, if m >= 54 { Some(m - 50) } else { None })
        }
    };
    if max < start + 6 {
        return Err(Error::TableTooShort { have: max, need: start + 6 });
    }
    let ctx = table.context();
    let (lambdas, condition) = type_b_solve(table, start)?;
    let mut check_difference = None;
    let mut warning = None;
    if let Some(c) = check {
        let (other, _) = type_b_solve(table, c)?;
        let d = lambdas
            .iter()
            .zip(other.iter())
            .map(|(x, y)| {
                let (dr, di) = (x - y).to_f64();
                dr.abs().max(di.abs())
            })
            .fold(0.0, f64::max);
        check_difference = Some(d);
        if d > 1e-2 {
            warning = Some(alloc::format!(
                "estimates from m = {start} and m = {c} differ by {d:.3e}"
            ));
        }
    }
    Ok(TypeBEstimate {
        model: LateOrderModel::type_b(&ctx, table.family(), lambdas),
        m_start: start,
        condition,
        check_start: check,
        check_difference,
        warning,
    })
}

/// `sum_i Lambda_i Gamma(m/2 - 1/2) / chi_i(s)^(m/2 - 1/2)`, the late-order
/// prediction of `u_m(s)` (or `v_m(s)`).
pub fn predict_coefficient(
    model: &LateOrderModel,
    seq: Sequence,
    m: usize,
    s: &ComplexHP,
) -> Result<ComplexHP> {
    if m < 2 {
        return Err(Error::Domain("late-order ansatz needs m >= 2"));
    }
    if s.on_branch_cut() {
        return Err(Error::BranchCut);
    }
    let ctx = s.context();
    let g = gamma_half_real(&ctx, m as i64 - 1)?;
    let expo = ComplexHP::from_real(ctx.ratio(m as i64 - 1, 2));
    let mut acc = ctx.czero();
    for (e, lam) in model.singulants.entries.iter().zip(model.terms(seq)) {
        let chi = e.at(s);
        acc = acc + lam / &principal_power(&chi, &expo)?;
    }
    Ok(acc.scale(&g))
}

/// `u_m(s) = a_m s^((1-m)/2)` from a table, for comparing with
/// [`predict_coefficient`].
pub fn coefficient_at(table: &CoefficientTable, seq: Sequence, m: usize, s: &ComplexHP) -> Result<ComplexHP> {
    if m > table.max_order() {
        return Err(Error::TableTooShort { have: table.max_order(), need: m });
    }
    if s.on_branch_cut() {
        return Err(Error::BranchCut);
    }
    let ctx = s.context();
    let (num, den) = table.exponent(m);
    let e = ComplexHP::from_real(ctx.ratio(num, den));
    Ok(&table.coeffs(seq)[m] * &principal_power(s, &e)?)
}

/// Relative error `|prediction - actual| / |actual|`.
pub fn relative_prediction_error(
    model: &LateOrderModel,
    table: &CoefficientTable,
    seq: Sequence,
    m: usize,
    s: &ComplexHP,
) -> Result<Real> {
    let p = predict_coefficient(model, seq, m, s)?;
    let a = coefficient_at(table, seq, m, s)?;
    Ok((&p - &a).abs() / a.abs())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::params::{Branch, PainleveParams};

    #[test]
    fn type_a_arguments_are_checked() {
        let c = ArithmeticContext::new(128).unwrap();
        let p = PainleveParams::from_ints(&c, -1, 1, 0);
        let mut t = CoefficientTable::new(&p, SolutionFamily::type_a(Branch::Plus)).unwrap();
        t.extend_to(50).unwrap();
        assert!(estimate_lambda_type_a(&t, 41).is_err());
        assert!(estimate_lambda_type_a(&t, 30).is_err());
        assert!(matches!(estimate_lambda_type_a(&t, 60), Err(Error::TableTooShort { .. })));
        assert!(estimate_lambda_type_b(&t, None).is_err());
    }

    #[test]
    fn small_system_solves() {
        let c = ArithmeticContext::new(128).unwrap();
        let a = alloc::vec![
            alloc::vec![c.complex(0, 1), c.complex(2, 0)],
            alloc::vec![c.complex(1, 0), c.complex(1, 1)],
        ];
        let x_true = [c.complex(1, -1), c.complex(3, 2)];
        let b: Vec<ComplexHP> = a
            .iter()
            .map(|r| &r[0] * &x_true[0] + &r[1] * &x_true[1])
            .collect();
        let cond = condition_number(&a);
        assert!(cond.is_finite() && cond >= 1.0);
        let x = solve(a, b).unwrap();
        for (u, v) in x.iter().zip(x_true.iter()) {
            assert!((u - v).abs().to_f64() < 1e-30);
        }
    }

    #[test]
    fn prediction_guards() {
        let c = ArithmeticContext::new(128).unwrap();
        let m = LateOrderModel::type_a(
            &c,
            SolutionFamily::type_a(Branch::Plus),
            [c.cone(), c.cone(), c.cone(), c.cone()],
        );
        assert!(predict_coefficient(&m, Sequence::U, 1, &c.cone()).is_err());
        assert_eq!(
            predict_coefficient(&m, Sequence::U, 10, &c.complex(-2, 0)),
            Err(Error::BranchCut)
        );
    }
}
