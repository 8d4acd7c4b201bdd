//! Formal large-`n` series in the monomial representation.
//!
//! With `s = eps n` and `w_n = eps^(-1/2) u(s)` on even sites (`v` on odd
//! sites), the equation multiplied through by `w_n` becomes
//!
//! ```text
//! (v(s+eps) + u(s) + v(s-eps)) u(s) = alpha s + eps beta + eps^(1/2) gamma u(s)
//! ```
//!
//! and symmetrically with `u`, `v` exchanged. Writing
//! `u = sum eps^(m/2) a_m s^((1-m)/2)` (and `b_m` for `v`), the shifted
//! terms expand by the binomial series, every product at order `eps^(m/2)`
//! carries the same power of `s`, and each order reduces to a 2x2 linear
//! system for `(a_m, b_m)`.
//!
//! The variant equation (`gamma w_n` in place of `gamma`) uses integer
//! powers, `u = sum eps^m a_m s^((1-2m)/2)`, and the same machinery with a
//! different step; see [`Expansion`].

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::params::{PainleveParams, Sequence, SolutionFamily, SolutionKind};
use crate::precision::{ArithmeticContext, ComplexHP, Real};

/// Which equation and power scale a table belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Expansion {
    /// dP1: powers `eps^(m/2)`, monomials `s^((1-m)/2)`.
    HalfPower,
    /// The non-integrable variant: powers `eps^m`, monomials `s^((1-2m)/2)`.
    IntegerPower,
}

impl Expansion {
    /// Twice the `s`-exponent of the order-`m` monomial.
    pub fn two_exponent(self, m: usize) -> i64 {
        match self {
            Expansion::HalfPower => 1 - m as i64,
            Expansion::IntegerPower => 1 - 2 * m as i64,
        }
    }

    /// Order gap between a coefficient and its `eps^(2j)` shift contribution, per `j`.
    fn shift_step(self) -> usize {
        match self {
            Expansion::HalfPower => 4,
            Expansion::IntegerPower => 2,
        }
    }
}

/// Leading coefficients `a_0..a_2` and `b_0..b_2`.
#[derive(Debug, Clone, PartialEq)]
pub struct LeadingOrders {
    pub u: [ComplexHP; 3],
    pub v: [ComplexHP; 3],
}

/// Series coefficients of one solution family for one parameter set.
///
/// `u_coeffs()[m]` is `a_m` with `u_m(s) = a_m s^((1-m)/2)` (or the
/// variant's exponent). Extension is incremental; the shifted-sum caches
/// are kept so that going from `M` to `M'` costs only the new orders.
#[derive(Debug, Clone)]
pub struct CoefficientTable {
    family: SolutionFamily,
    params: PainleveParams,
    expansion: Expansion,
    u: Vec<ComplexHP>,
    v: Vec<ComplexHP>,
    // T_p for the u-equation (own sequence u, shifted sequence v) and the v-equation
    tu: Vec<ComplexHP>,
    tv: Vec<ComplexHP>,
    // binom[q][j] = C(e_q, 2j)
    binom: Vec<Vec<Real>>,
}

fn leading_coefficient(
    params: &PainleveParams,
    family: SolutionFamily,
    expansion: Expansion,
) -> Result<(ComplexHP, ComplexHP)> {
    if params.alpha.is_zero() {
        return Err(Error::DegenerateLeadingOrder);
    }
    let ctx = params.context();
    let one = ctx.cone();
    let sq = match (family.kind, expansion) {
        (SolutionKind::TypeA, Expansion::HalfPower) => -&params.alpha,
        (SolutionKind::TypeB, Expansion::HalfPower) => &params.alpha / &ctx.complex(3, 0),
        (SolutionKind::TypeA, Expansion::IntegerPower) => {
            let d = &one + &params.gamma;
            if d.is_zero() {
                return Err(Error::Domain("gamma = -1 makes the Type A leading order singular"));
            }
            -(&params.alpha / &d)
        }
        (SolutionKind::TypeB, Expansion::IntegerPower) => {
            let d = ctx.complex(3, 0) - &params.gamma;
            if d.is_zero() {
                return Err(Error::Domain("gamma = 3 makes the Type B leading order singular"));
            }
            &params.alpha / &d
        }
    };
    let mut a0 = sq.sqrt();
    if family.sign.sign() < 0 {
        a0 = -a0;
    }
    let b0 = match family.kind {
        SolutionKind::TypeA => -&a0,
        SolutionKind::TypeB => a0.clone(),
    };
    Ok((a0, b0))
}

impl CoefficientTable {
    /// Table holding orders `0..=2`.
    pub fn new(params: &PainleveParams, family: SolutionFamily) -> Result<Self> {
        CoefficientTable::with_expansion(params, family, Expansion::HalfPower, 2)
    }

    pub(crate) fn with_expansion(
        params: &PainleveParams,
        family: SolutionFamily,
        expansion: Expansion,
        max_order: usize,
    ) -> Result<Self> {
        let (a0, b0) = leading_coefficient(params, family, expansion)?;
        let mut t = CoefficientTable {
            family,
            params: params.clone(),
            expansion,
            u: vec![a0],
            v: vec![b0],
            tu: Vec::new(),
            tv: Vec::new(),
            binom: Vec::new(),
        };
        t.push_shifted_sums(0);
        t.extend_to(max_order)?;
        Ok(t)
    }

    /// Rebuilds a table from stored coefficients (e.g. a CSV import). The
    /// coefficients are taken as given; orders added later are computed from
    /// them.
    pub fn from_coefficients(
        params: &PainleveParams,
        family: SolutionFamily,
        expansion: Expansion,
        u: Vec<ComplexHP>,
        v: Vec<ComplexHP>,
    ) -> Result<Self> {
        if u.is_empty() || u.len() != v.len() {
            return Err(Error::InvalidArgument("u and v coefficient lists must be non-empty and equally long"));
        }
        for c in u.iter().chain(v.iter()) {
            params.alpha.check_same(c)?;
        }
        let n = u.len();
        let mut t = CoefficientTable {
            family,
            params: params.clone(),
            expansion,
            u,
            v,
            tu: Vec::new(),
            tv: Vec::new(),
            binom: Vec::new(),
        };
        for p in 0..n {
            t.push_shifted_sums(p);
        }
        Ok(t)
    }

    pub fn family(&self) -> SolutionFamily {
        self.family
    }

    pub fn params(&self) -> &PainleveParams {
        &self.params
    }

    pub fn expansion(&self) -> Expansion {
        self.expansion
    }

    pub fn context(&self) -> ArithmeticContext {
        self.params.context()
    }

    pub fn max_order(&self) -> usize {
        self.u.len() - 1
    }

    pub fn u_coeffs(&self) -> &[ComplexHP] {
        &self.u
    }

    pub fn v_coeffs(&self) -> &[ComplexHP] {
        &self.v
    }

    pub fn coeffs(&self, seq: Sequence) -> &[ComplexHP] {
        match seq {
            Sequence::U => &self.u,
            Sequence::V => &self.v,
        }
    }

    /// `(numerator, 2)` of the `s`-exponent at order `m`.
    pub fn exponent(&self, m: usize) -> (i64, i64) {
        (self.expansion.two_exponent(m), 2)
    }

    fn ensure_binomials(&mut self, q: usize, jmax: usize) {
        let ctx = self.context();
        while self.binom.len() <= q {
            self.binom.push(vec![ctx.one()]);
        }
        let two_e = self.expansion.two_exponent(q);
        let row = &mut self.binom[q];
        while row.len() <= jmax {
            // C(e, k) = C(e, k-1) (e - k + 1) / k, two steps per j
            let j = row.len() as i64;
            let k1 = 2 * j - 1;
            let k2 = 2 * j;
            let f1 = ctx.ratio(two_e - 2 * (k1 - 1), 2 * k1);
            let f2 = ctx.ratio(two_e - 2 * (k2 - 1), 2 * k2);
            let next = row.last().expect("row starts with C(e, 0)") * f1 * f2;
            row.push(next);
        }
    }

    /// Shifted sum `T_p = x_p + sum_j 2 C(e_q, 2j) y_q`, `q = p - step j`,
    /// for the u-equation (`x = u`, `y = v`) or the v-equation.
    fn shifted_sum(&mut self, p: usize, own: Sequence) -> ComplexHP {
        let step = self.expansion.shift_step();
        let ctx = self.context();
        for q in (p % step..=p).step_by(step) {
            self.ensure_binomials(q, (p - q) / step);
        }
        let (x, y) = match own {
            Sequence::U => (&self.u, &self.v),
            Sequence::V => (&self.v, &self.u),
        };
        let mut acc = x[p].clone();
        let mut sum = ctx.czero();
        let mut j = 0;
        while j * step <= p {
            let q = p - j * step;
            debug_assert_eq!(
                self.expansion.two_exponent(q) - 4 * j as i64,
                self.expansion.two_exponent(p),
                "shifted monomial must land on the order-p exponent"
            );
            sum = sum + y[q].scale(&self.binom[q][j]);
            j += 1;
        }
        acc = acc + sum.scale(&ctx.int(2));
        acc
    }

    fn push_shifted_sums(&mut self, p: usize) {
        debug_assert_eq!(self.tu.len(), p);
        let tu = self.shifted_sum(p, Sequence::U);
        let tv = self.shifted_sum(p, Sequence::V);
        self.tu.push(tu);
        self.tv.push(tv);
    }

    /// Computes orders up to `m_max` in place. A no-op when they already exist.
    pub fn extend_to(&mut self, m_max: usize) -> Result<()> {
        let ctx = self.context();
        let two = ctx.complex(2, 0);
        let (a0, b0) = (self.u[0].clone(), self.v[0].clone());
        let gamma = self.params.gamma.clone();
        let (mut p11, p12, p21, mut p22) = (
            &two * &(&a0 + &b0),
            &two * &a0,
            &two * &b0,
            &two * &(&a0 + &b0),
        );
        if self.expansion == Expansion::IntegerPower {
            p11 = p11 - &two * &(&gamma * &a0);
            p22 = p22 - &two * &(&gamma * &b0);
        }
        let det = &p11 * &p22 - &p12 * &p21;
        let scale = (&p11 * &p22).abs() + (&p12 * &p21).abs();
        let tiny = Real::from_i64(2, ctx.bits()).powi(ctx.bits() as u64 / 2).recip();
        let singular = det.abs() <= &scale * &tiny;

        for m in self.u.len()..=m_max {
            if singular {
                return Err(Error::SingularOrder { m });
            }
            let mut ku = ctx.czero();
            let mut kv = ctx.czero();
            match self.expansion {
                Expansion::HalfPower => {
                    if m == 2 {
                        ku = ku + &self.params.beta;
                        kv = kv + &self.params.beta;
                    }
                    ku = ku + &gamma * &self.u[m - 1];
                    kv = kv + &gamma * &self.v[m - 1];
                }
                Expansion::IntegerPower => {
                    if m == 1 {
                        ku = ku + &self.params.beta;
                        kv = kv + &self.params.beta;
                    }
                    let mut su = ctx.czero();
                    let mut sv = ctx.czero();
                    for p in 1..m {
                        su = su + &self.u[p] * &self.u[m - p];
                        sv = sv + &self.v[p] * &self.v[m - p];
                    }
                    ku = ku + &gamma * &su;
                    kv = kv + &gamma * &sv;
                }
            }
            for p in 1..m {
                ku = ku - &self.tu[p] * &self.u[m - p];
                kv = kv - &self.tv[p] * &self.v[m - p];
            }
            // the part of T_m not involving (a_m, b_m)
            self.u.push(ctx.czero());
            self.v.push(ctx.czero());
            let tu_known = self.shifted_sum(m, Sequence::U);
            let tv_known = self.shifted_sum(m, Sequence::V);
            ku = ku - &tu_known * &a0;
            kv = kv - &tv_known * &b0;

            let am = (&ku * &p22 - &p12 * &kv) / &det;
            let bm = (&p11 * &kv - &p21 * &ku) / &det;
            self.u[m] = am;
            self.v[m] = bm;
            self.push_shifted_sums(m);
        }
        Ok(())
    }

    /// Sum `sum_{m<=order} eps^(m/2) a_m s^((1-m)/2)` (or the variant's
    /// powers) evaluated directly, for the chosen sequence.
    pub fn partial_sum(
        &self,
        seq: Sequence,
        s: &ComplexHP,
        epsilon: &Real,
        order: usize,
    ) -> Result<ComplexHP> {
        if s.on_branch_cut() {
            return Err(Error::BranchCut);
        }
        if order > self.max_order() {
            return Err(Error::TableTooShort { have: self.max_order(), need: order });
        }
        let ctx = self.context();
        let root = s.sqrt();
        let (step_s, step_e) = match self.expansion {
            Expansion::HalfPower => (root.recip(), epsilon.sqrt()),
            Expansion::IntegerPower => (s.recip(), epsilon.clone()),
        };
        let factor = step_s.scale(&step_e);
        let coeffs = self.coeffs(seq);
        let mut acc = ctx.czero();
        let mut pw = root;
        for c in coeffs.iter().take(order + 1) {
            acc = acc + c * &pw;
            pw = &pw * &factor;
        }
        Ok(acc)
    }
}

/// Leading coefficients for the chosen family.
pub fn leading_orders(params: &PainleveParams, family: SolutionFamily) -> Result<LeadingOrders> {
    let t = CoefficientTable::new(params, family)?;
    Ok(LeadingOrders {
        u: [t.u[0].clone(), t.u[1].clone(), t.u[2].clone()],
        v: [t.v[0].clone(), t.v[1].clone(), t.v[2].clone()],
    })
}

/// Copy of `table` extended to order `m_max`.
pub fn extend_coefficients(table: &CoefficientTable, m_max: usize) -> Result<CoefficientTable> {
    let mut t = table.clone();
    t.extend_to(m_max)?;
    Ok(t)
}

/// Defect magnitudes `(u-equation, v-equation)` of the order-`order`
/// truncated series in the rescaled system, with the shifted arguments
/// evaluated exactly.
pub fn residual(
    table: &CoefficientTable,
    s: &ComplexHP,
    epsilon: &Real,
    order: usize,
) -> Result<(Real, Real)> {
    if !epsilon.is_positive() {
        return Err(Error::InvalidArgument("epsilon must be positive"));
    }
    let ec = ComplexHP::from_real(epsilon.clone());
    let sp = s + &ec;
    let sm = s - &ec;
    if s.on_branch_cut() || sp.on_branch_cut() || sm.on_branch_cut() {
        return Err(Error::BranchCut);
    }
    let p = table.params();
    let u = table.partial_sum(Sequence::U, s, epsilon, order)?;
    let v = table.partial_sum(Sequence::V, s, epsilon, order)?;
    let up = table.partial_sum(Sequence::U, &sp, epsilon, order)?;
    let um = table.partial_sum(Sequence::U, &sm, epsilon, order)?;
    let vp = table.partial_sum(Sequence::V, &sp, epsilon, order)?;
    let vm = table.partial_sum(Sequence::V, &sm, epsilon, order)?;
    let forcing = &p.alpha * s + p.beta.scale(epsilon);
    let defect = |own: &ComplexHP, plus: &ComplexHP, minus: &ComplexHP| -> ComplexHP {
        let lhs = (plus + own + minus) * own;
        match table.expansion() {
            Expansion::HalfPower => lhs - &forcing - (&p.gamma * own).scale(&epsilon.sqrt()),
            Expansion::IntegerPower => lhs - &p.gamma * &(own * own) - &forcing,
        }
    };
    Ok((defect(&u, &vp, &vm).abs(), defect(&v, &up, &um).abs()))
}
