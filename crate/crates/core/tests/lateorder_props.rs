use dpainleve_core::*;
use dpainleve_core::lateorder::{coefficient_at, relative_prediction_error, MAX_CONDITION};

fn type_a_table(m: usize) -> CoefficientTable {
    let c = ArithmeticContext::new(512).unwrap();
    let p = PainleveParams::from_ints(&c, -1, 1, 0);
    let mut t = CoefficientTable::new(&p, SolutionFamily::type_a(Branch::Plus)).unwrap();
    t.extend_to(m).unwrap();
    t
}

fn type_b_table(m: usize) -> CoefficientTable {
    let c = ArithmeticContext::new(512).unwrap();
    let p = PainleveParams::from_ints(&c, 3, 1, 0);
    let mut t = CoefficientTable::new(&p, SolutionFamily::type_b(Branch::Plus)).unwrap();
    t.extend_to(m).unwrap();
    t
}

fn close(z: &ComplexHP, re: f64, im: f64, tol: f64) -> bool {
    let (a, b) = z.to_f64();
    (a - re).abs() < tol && (b - im).abs() < tol
}

#[test]
fn type_a_reference_values() {
    let t = type_a_table(251);
    let est = estimate_lambda_type_a(&t, 250).unwrap();
    let l = est.lambdas();
    assert!(close(&l[0], -0.08986, -0.08986, 2e-4), "{}", l[0]);
    assert!(close(&l[1], -0.08986, 0.08986, 2e-4), "{}", l[1]);
    // v = -u at gamma = 0
    assert_eq!(l[2], -&l[0]);
    assert_eq!(l[3], -&l[1]);
    assert!((&l[1] - &l[0].conj()).abs().to_f64() < 1e-12);
}

#[test]
fn type_a_increments_shrink() {
    let t = type_a_table(251);
    let est = estimate_lambda_type_a(&t, 250).unwrap();
    let inc = &est.increments;
    assert!(inc.len() > 20);
    let early = inc[..5].iter().cloned().fold(0.0, f64::max);
    let late = inc[inc.len() - 5..].iter().cloned().fold(0.0, f64::max);
    assert!(late < early / 10.0, "early {early:e} late {late:e}");
    assert!(est.last_increment < 1e-4);
}

#[test]
fn type_b_reference_values() {
    let t = type_b_table(500);
    let est = estimate_lambda_type_b(&t, None).unwrap();
    let want = [
        (0.04666, 0.02669),
        (0.11212, -0.06491),
        (0.04666, -0.02669),
        (0.11212, 0.06491),
    ];
    for (l, (re, im)) in est.lambdas().iter().zip(want) {
        assert!(close(l, re, im, 2e-4), "{l} vs {re} {im}");
    }
    assert!(est.condition < MAX_CONDITION);
    assert!(est.warning.is_none(), "{:?}", est.warning);
}

#[test]
fn type_b_conjugate_pairs_and_window_stability() {
    let t = type_b_table(500);
    let a = estimate_lambda_type_b(&t, Some(400)).unwrap();
    let b = estimate_lambda_type_b(&t, Some(480)).unwrap();
    let la = a.lambdas();
    assert!((&la[2] - &la[0].conj()).abs().to_f64() < 1e-6);
    assert!((&la[3] - &la[1].conj()).abs().to_f64() < 1e-6);
    for (x, y) in la.iter().zip(b.lambdas()) {
        assert!((x - y).abs().to_f64() < 1e-3, "{x} vs {y}");
    }
}

/// `|pred - actual|` over the natural size `sum |Lambda_i| Gamma / |chi_i|^(m/2-1/2)`.
/// Plain relative error is useless where the terms of the ansatz cancel.
fn scaled_error(model: &LateOrderModel, t: &CoefficientTable, m: usize, s: &ComplexHP) -> f64 {
    let ctx = s.context();
    let p = predict_coefficient(model, Sequence::U, m, s).unwrap();
    let a = coefficient_at(t, Sequence::U, m, s).unwrap();
    let g = gamma_half(&ctx, m as i64 - 1).unwrap().abs();
    let mut scale = ctx.zero();
    for (e, lam) in model.singulants.entries.iter().zip(model.terms(Sequence::U)) {
        let chi = e.at(s).abs().to_f64();
        let w = ctx.from_f64(chi.powf((m as f64 - 1.0) / 2.0)).unwrap();
        scale = scale + lam.abs() * &g / w;
    }
    ((&p - &a).abs() / scale).to_f64()
}

#[test]
fn prediction_improves_with_order() {
    let t = type_a_table(251);
    let est = estimate_lambda_type_a(&t, 250).unwrap();
    let s = t.context().complex(1, 0);
    // same residue mod 4: the sub-leading corrections cancel alike
    let e: Vec<f64> = [102, 150, 198].iter().map(|m| scaled_error(&est.model, &t, *m, &s)).collect();
    assert!(e[0] > e[1] && e[1] > e[2], "{e:?}");
    let r = relative_prediction_error(&est.model, &t, Sequence::U, 198, &s).unwrap().to_f64();
    assert!(r < 1e-3, "relative error at 198: {r:e}");
}

#[test]
fn prediction_type_b() {
    let t = type_b_table(500);
    let est = estimate_lambda_type_b(&t, None).unwrap();
    let s = t.context().complex(2, 1);
    let e: Vec<f64> = [100, 200, 300].iter().map(|m| scaled_error(&est.model, &t, *m, &s)).collect();
    assert!(e[2] < e[0], "{e:?}");
    assert!(e[2] < 1e-2);
}

#[test]
fn estimates_are_deterministic() {
    let t = type_a_table(120);
    let a = estimate_lambda_type_a(&t, 120).unwrap();
    let b = estimate_lambda_type_a(&type_a_table(120), 120).unwrap();
    assert_eq!(a.lambdas(), b.lambdas());
    assert_eq!(a.increments, b.increments);
}

#[test]
fn short_tables_are_rejected() {
    let t = type_b_table(60);
    assert!(matches!(estimate_lambda_type_b(&t, Some(100)), Err(Error::TableTooShort { .. })));
    let a = type_a_table(60);
    assert!(predict_coefficient(
        &estimate_lambda_type_a(&a, 60).unwrap().model,
        Sequence::U,
        1,
        &a.context().cone()
    )
    .is_err());
}
