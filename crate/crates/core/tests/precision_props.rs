use dpainleve_core::*;
use proptest::prelude::*;

#[test]
fn gamma_at_half_integers() {
    let c = ArithmeticContext::new(512).unwrap();
    let root_pi = c.pi().sqrt();
    let g = gamma_half(&c, 1).unwrap();
    assert!((g.re() - &root_pi).abs().to_f64() < 1e-150);
    // Gamma(3/2) = sqrt(pi)/2
    let g = gamma_half(&c, 3).unwrap();
    assert!((g.re() - &(&root_pi / &c.int(2))).abs().to_f64() < 1e-150);
    for two_x in [1i64, 2, 5, 41, 301] {
        let a = gamma_half(&c, two_x).unwrap();
        let b = gamma_half(&c, two_x + 2).unwrap();
        let x = c.ratio(two_x, 2);
        let rel = ((&b - &a.scale(&x)).abs() / b.abs()).to_f64();
        assert!(rel < 1e-145, "2x = {two_x}: {rel:e}");
    }
    assert!(gamma_half(&c, 0).is_err());
    assert!(gamma_half(&c, -1).is_err());
}

#[test]
fn decimal_input_is_exact_at_target_precision() {
    let c = ArithmeticContext::new(512).unwrap();
    let tenth = c.parse("0.1").unwrap();
    assert_eq!(tenth, c.ratio(1, 10));
    assert_eq!(c.parse("1e-1").unwrap(), tenth);
    assert_eq!(c.parse("+2.5E0").unwrap(), c.ratio(5, 2));
    assert!(c.parse("0x10").is_err());
    assert!(c.parse("").is_err());
}

#[test]
fn doubling_precision_changes_only_the_tail() {
    let lo = ArithmeticContext::new(256).unwrap();
    let hi = ArithmeticContext::new(512).unwrap();
    let f = |c: &ArithmeticContext| {
        let z = c.parse_complex("1.25", "-0.75").unwrap();
        let w = principal_power(&z, &c.parse_complex("0.5", "0.3").unwrap()).unwrap();
        (w.acosh() + z.ln().unwrap()).exp()
    };
    let a = f(&lo);
    let b = f(&hi);
    let a_hi = hi.parse_complex(&a.re().to_decimal(80), &a.im().to_decimal(80)).unwrap();
    let rel = ((&a_hi - &b).abs() / b.abs()).to_f64();
    assert!(rel < 2f64.powi(-240), "{rel:e}");
}

#[test]
fn mixed_precisions_are_refused() {
    let a = ArithmeticContext::new(128).unwrap().cone();
    let b = ArithmeticContext::new(256).unwrap().cone();
    assert!(a.check_same(&b).is_err());
    assert!(ArithmeticContext::new(32).is_err());
}

fn point() -> impl Strategy<Value = (f64, f64)> {
    (-4.0f64..4.0, -4.0f64..4.0).prop_filter("off the cut", |(r, i)| i.abs() > 1e-3 || *r > 1e-3)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn exp_inverts_ln((r, i) in point()) {
        let c = ArithmeticContext::new(256).unwrap();
        let z = c.complex_f64(r, i).unwrap();
        let back = z.ln().unwrap().exp();
        prop_assert!(((&back - &z).abs() / z.abs()).to_f64() < 1e-70);
    }

    #[test]
    fn powers_add_off_the_cut((r, i) in point(), a in -3.0f64..3.0, b in -3.0f64..3.0) {
        let c = ArithmeticContext::new(256).unwrap();
        let z = c.complex_f64(r, i).unwrap();
        let pa = c.complex_f64(a, 0.0).unwrap();
        let pb = c.complex_f64(b, 0.0).unwrap();
        let lhs = principal_power(&z, &pa).unwrap() * principal_power(&z, &pb).unwrap();
        let rhs = principal_power(&z, &(&pa + &pb)).unwrap();
        prop_assert!(((&lhs - &rhs).abs() / rhs.abs()).to_f64() < 1e-60);
    }

    #[test]
    fn principal_sqrt_has_nonnegative_real_part((r, i) in point()) {
        let c = ArithmeticContext::new(192).unwrap();
        let z = c.complex_f64(r, i).unwrap();
        let s = z.sqrt();
        prop_assert!(!s.re().is_negative());
        prop_assert!(((&(&s * &s) - &z).abs() / z.abs()).to_f64() < 1e-50);
    }

    #[test]
    fn acosh_solves_cosh((r, i) in (-5.0f64..5.0, -5.0f64..5.0)) {
        let c = ArithmeticContext::new(256).unwrap();
        let z = c.complex_f64(r, i).unwrap();
        let w = z.acosh();
        prop_assert!((w.cosh() - &z).abs().to_f64() < 1e-65);
    }

    #[test]
    fn decimal_output_round_trips(v in -1e6f64..1e6) {
        let c = ArithmeticContext::new(256).unwrap();
        let x = c.from_f64(v).unwrap();
        let back = c.parse(&x.to_decimal_full()).unwrap();
        prop_assert!(((&back - &x).abs()).to_f64() <= v.abs() * 1e-70);
    }
}
