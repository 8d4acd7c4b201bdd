//! The non-integrable variant
//!
//! ```text
//! w[n+1] + w[n] + w[n-1] = (alpha n + beta) / w[n] + gamma w[n]
//! ```
//!
//! Its series runs in integer powers of `eps`, `u_m(s) = a_m s^((1-2m)/2)`,
//! and its singulants solve `cosh(-chi') = gamma` (Type A) or
//! `2 + cosh(-chi') = gamma` (Type B).

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::params::{PainleveParams, Sequence, SolutionFamily, SolutionKind};
use crate::precision::{ArithmeticContext, ComplexHP};
use crate::series::{CoefficientTable, Expansion};
use crate::stokes::{Singulant, SingulantSet};

/// Parameters of the variant equation; `gamma` multiplies `w[n]`.
#[derive(Debug, Clone, PartialEq)]
pub struct VariantParams(pub PainleveParams);

impl VariantParams {
    pub fn new(alpha: ComplexHP, beta: ComplexHP, gamma: ComplexHP) -> Result<Self> {
        Ok(VariantParams(PainleveParams::new(alpha, beta, gamma)?))
    }

    pub fn parse(ctx: &ArithmeticContext, alpha: &str, beta: &str, gamma: &str) -> Result<Self> {
        Ok(VariantParams(PainleveParams::parse(ctx, alpha, beta, gamma)?))
    }

    pub fn params(&self) -> &PainleveParams {
        &self.0
    }
}

/// Coefficient of `sqrt(s)` in `u_0`: `±sqrt(-alpha/(1+gamma))` for Type A,
/// `±sqrt(alpha/(3-gamma))` for Type B.
pub fn variant_leading_orders(params: &VariantParams, family: SolutionFamily) -> Result<ComplexHP> {
    let t = CoefficientTable::with_expansion(&params.0, family, Expansion::IntegerPower, 0)?;
    Ok(t.u_coeffs()[0].clone())
}

/// Integer-power coefficient table through order `m_max`.
pub fn variant_coefficients(
    params: &VariantParams,
    family: SolutionFamily,
    m_max: usize,
) -> Result<CoefficientTable> {
    CoefficientTable::with_expansion(&params.0, family, Expansion::IntegerPower, m_max)
}

/// Dominant singulant slopes. With `c = acosh(gamma)` (Type A) the set is
/// `{c, -c}`; with `c = acosh(gamma - 2)` (Type B) it is
/// `{c, -c, 2 pi i - c, c - 2 pi i}`. Principal branches throughout, so at
/// `gamma = 0` both sets coincide with the dP1 ones label by label.
pub fn variant_singulants(gamma: &ComplexHP, kind: SolutionKind) -> SingulantSet {
    let ctx = gamma.context();
    match kind {
        SolutionKind::TypeA => {
            let c = gamma.acosh();
            SingulantSet {
                kind,
                entries: alloc::vec![
                    Singulant { label: 1, slope: c.clone() },
                    Singulant { label: 2, slope: -c },
                ],
                cosh_target: gamma.clone(),
            }
        }
        SolutionKind::TypeB => {
            let target = gamma - &ctx.complex(2, 0);
            let c = target.acosh();
            let two_pi_i = ComplexHP::from_real(ctx.int(2) * ctx.pi()).mul_i();
            SingulantSet {
                kind,
                entries: alloc::vec![
                    Singulant { label: 1, slope: c.clone() },
                    Singulant { label: 2, slope: -&c },
                    Singulant { label: 3, slope: &two_pi_i - &c },
                    Singulant { label: 4, slope: &c - &two_pi_i },
                ],
                cosh_target: target,
            }
        }
    }
}

/// Fitted offset `k` in `a_m ~ Gamma(m + k) / chi^(m + k)`, from
/// `a_(m+2)/a_m = (m+k)(m+k+1)/chi^2`, solved for `m + k` on the root
/// nearest `m`. Exact for a `±chi` pair; only a diagnostic otherwise.
pub fn fitted_k(
    table: &CoefficientTable,
    set: &SingulantSet,
    seq: Sequence,
    m: usize,
) -> Result<ComplexHP> {
    if table.expansion() != Expansion::IntegerPower {
        return Err(Error::InvalidArgument("fitted_k expects a variant table"));
    }
    if m + 2 > table.max_order() {
        return Err(Error::TableTooShort { have: table.max_order(), need: m + 2 });
    }
    let a = table.coeffs(seq);
    if a[m].is_zero() {
        return Err(Error::Domain("zero coefficient in ratio"));
    }
    let ctx = table.context();
    let chi = &set.entries[0].slope;
    let r = &(&a[m + 2] / &a[m]) * &(chi * chi);
    // x (x + 1) = r, x = (-1 + sqrt(1 + 4r)) / 2
    let disc = (ctx.cone() + r.scale(&ctx.int(4))).sqrt();
    let x = (disc - ctx.cone()).scale(&ctx.ratio(1, 2));
    Ok(x - ctx.complex(m as i64, 0))
}

/// `fitted_k` at every even order from `m_from` up to the end of the table.
pub fn fitted_k_series(
    table: &CoefficientTable,
    set: &SingulantSet,
    seq: Sequence,
    m_from: usize,
) -> Result<Vec<(usize, ComplexHP)>> {
    let mut out = Vec::new();
    let mut m = m_from;
    while m + 2 <= table.max_order() {
        out.push((m, fitted_k(table, set, seq, m)?));
        m += 2;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::params::Branch;
    use crate::stokes::singulants;

    fn ctx() -> ArithmeticContext {
        ArithmeticContext::new(256).unwrap()
    }

    #[test]
    fn leading_order_examples() {
        let c = ctx();
        let p = VariantParams(PainleveParams::from_ints(&c, 1, 0, 1));
        let a0 = variant_leading_orders(&p, SolutionFamily::type_a(Branch::Plus)).unwrap();
        let (r, i) = a0.to_f64();
        assert!(r.abs() < 1e-30 && (i - core::f64::consts::FRAC_1_SQRT_2).abs() < 1e-15);
        let p = VariantParams(PainleveParams::from_ints(&c, 1, 0, 3));
        assert!(variant_leading_orders(&p, SolutionFamily::type_b(Branch::Plus)).is_err());
        let p = VariantParams(PainleveParams::from_ints(&c, 1, 0, -1));
        assert!(variant_leading_orders(&p, SolutionFamily::type_a(Branch::Plus)).is_err());
    }

    #[test]
    fn singular_orders() {
        let c = ctx();
        let p = VariantParams(PainleveParams::from_ints(&c, -1, 1, 1));
        assert_eq!(
            variant_coefficients(&p, SolutionFamily::type_a(Branch::Plus), 5).unwrap_err(),
            Error::SingularOrder { m: 1 }
        );
        let p = VariantParams(PainleveParams::from_ints(&c, 2, 1, 1));
        assert_eq!(
            variant_coefficients(&p, SolutionFamily::type_b(Branch::Plus), 5).unwrap_err(),
            Error::SingularOrder { m: 1 }
        );
    }

    #[test]
    fn gamma_zero_sets_match_dp1() {
        let c = ctx();
        for kind in [SolutionKind::TypeA, SolutionKind::TypeB] {
            let v = variant_singulants(&c.czero(), kind);
            let d = singulants(&c, kind);
            for (x, y) in v.entries.iter().zip(d.entries.iter()) {
                assert!((&x.slope - &y.slope).abs().to_f64() < 1e-70);
            }
        }
    }

    #[test]
    fn gamma_two_is_real() {
        let c = ctx();
        let v = variant_singulants(&c.complex(2, 0), SolutionKind::TypeA);
        let (r, i) = v.entries[0].slope.to_f64();
        assert!((r.abs() - 1.3169578969248166).abs() < 1e-15 && i == 0.0);
        for d in v.eikonal_defects() {
            assert!(d.to_f64() < 1e-70);
        }
    }
}
