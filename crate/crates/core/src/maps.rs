//! Parameter correspondences that turn other recurrences into dP1.

use crate::error::{Error, Result};
use crate::params::PainleveParams;
use crate::precision::ComplexHP;

/// `(w[n+1] + w[n] + w[n-1]) w[n] = -2 z w[n] - n + mu`, the recurrence
/// linking Backlund-related P-IV solutions, divided through by `w[n]`:
/// `alpha = -1`, `beta = mu`, `gamma = -2z`.
pub fn map_p4(z: &ComplexHP, mu: &ComplexHP) -> Result<PainleveParams> {
    z.check_same(mu)?;
    let ctx = z.context();
    PainleveParams::new(ctx.complex(-1, 0), mu.clone(), -(z * &ctx.complex(2, 0)))
}

/// P-IV parameters `(a_n, b_n)` of the `n`-th member of the hierarchy:
/// `a_n = -3/2 mu (-1)^n + n/2`, `b_n = -(mu (-1)^n + n)^2 / 2`.
pub fn p4_parameters(mu: &ComplexHP, n: i64) -> (ComplexHP, ComplexHP) {
    let ctx = mu.context();
    let sgn = if n.rem_euclid(2) == 0 { 1 } else { -1 };
    let ms = mu.scale(&ctx.int(sgn));
    let a = ms.scale(&ctx.ratio(-3, 2)) + ComplexHP::from_real(ctx.ratio(n, 2));
    let root = &ms + &ctx.complex(n, 0);
    let b = (&root * &root).scale(&ctx.ratio(-1, 2));
    (a, b)
}

/// `4 kappa u[n] (u[n-1] + u[n] + u[n+1]) + 2 mu u[n] - n = 0`, satisfied by
/// `u_n = a_n^2` for polynomials orthonormal under `exp(-kappa x^4 - mu x^2)`,
/// divided by `4 kappa u[n]`: `alpha = 1/(4 kappa)`, `beta = 0`,
/// `gamma = -mu/(2 kappa)`.
pub fn map_freud(kappa: &ComplexHP, mu: &ComplexHP) -> Result<PainleveParams> {
    kappa.check_same(mu)?;
    if kappa.is_zero() {
        return Err(Error::Domain("Freud weight needs kappa != 0"));
    }
    let ctx = kappa.context();
    let alpha = (kappa * &ctx.complex(4, 0)).recip();
    let gamma = -(mu / &(kappa * &ctx.complex(2, 0)));
    PainleveParams::new(alpha, ctx.czero(), gamma)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::precision::ArithmeticContext;

    #[test]
    fn p4_examples() {
        let c = ArithmeticContext::new(128).unwrap();
        let p = map_p4(&c.czero(), &c.czero()).unwrap();
        assert_eq!(p, PainleveParams::from_ints(&c, -1, 0, 0));
        let p = map_p4(&c.cone(), &c.complex(2, 0)).unwrap();
        assert_eq!(p, PainleveParams::from_ints(&c, -1, 2, -2));
    }

    #[test]
    fn freud_examples() {
        let c = ArithmeticContext::new(128).unwrap();
        let quarter = ComplexHP::from_real(c.ratio(1, 4));
        let p = map_freud(&quarter, &c.czero()).unwrap();
        assert_eq!(p, PainleveParams::from_ints(&c, 1, 0, 0));
        let p = map_freud(&c.cone(), &c.complex(2, 0)).unwrap();
        assert_eq!(p.alpha, ComplexHP::from_real(c.ratio(1, 4)));
        assert_eq!(p.gamma, c.complex(-1, 0));
        assert!(map_freud(&c.czero(), &c.cone()).is_err());
    }

    #[test]
    fn p4_parameter_printout() {
        let c = ArithmeticContext::new(128).unwrap();
        let mu = c.complex(2, 0);
        let (a, b) = p4_parameters(&mu, 0);
        assert_eq!(a, c.complex(-3, 0));
        assert_eq!(b, c.complex(-2, 0));
        let (a, b) = p4_parameters(&mu, 1);
        assert_eq!(a, ComplexHP::from_real(c.ratio(7, 2)));
        assert_eq!(b, -ComplexHP::from_real(c.ratio(1, 2)));
    }
}
