use pcd_asymptotic::*;
use pcd_core::PcdParams;
use pcd_dist::{named_example_model, NamedExample, Side};
use pcd_exact::p_exact;

fn uni(r: f64, c: f64) -> AsymptoticResult {
    asymptotic_uniform(PcdParams::new(r, c).unwrap()).unwrap()
}

#[test]
fn trichotomy_matches_exact_at_400() {
    let points = [
        (1.2, 0.5),
        (1.1, 0.3),
        (2.5, 0.3),
        (3.0, 0.5),
        (1.5, 0.2),
        (1.25, 0.2),
        (1.5, 1.0 / 3.0),
        (1.5, 2.0 / 3.0),
        (1.8, 0.8 / 1.8),
        (2.0, 0.5),
    ];
    for &(r, c) in &points {
        let lim = uni(r, c).limit_p;
        let p = p_exact(400, r, c).unwrap().value;
        assert!((p - lim).abs() < 5e-3, "({r}, {c}): p_400 = {p}, limit {lim}");
    }
}

#[test]
fn jump_at_cccd_point() {
    // the critical line tends to 2/3 at r = 2 while the value there is 4/9
    for &r in &[1.99, 1.999, 1.9999] {
        let a = uni(r, (r - 1.0) / r);
        assert_eq!(a.regime, AsymptoticRegime::UniformCritical);
        assert!((a.limit_p - 2.0 / 3.0).abs() < 2.0 - r);
        // the transient decays like (r-1)^n, so n must grow as r -> 2
        let n = (40.0 / (2.0 - r)) as u32;
        let p = p_exact(n, r, (r - 1.0) / r).unwrap().value;
        assert!((p - r / (r + 1.0)).abs() < 5e-3, "r={r} n={n}: {p}");
        // at a fixed n the value still sits near 4/9 when r is close to 2
        let p = p_exact(400, r, (r - 1.0) / r).unwrap().value;
        if r > 1.9995 {
            assert!((p - 4.0 / 9.0).abs() < 0.05, "r={r}: {p}");
        }
    }
    assert!((uni(2.0, 0.5).limit_p - 4.0 / 9.0).abs() < 1e-15);
    assert!((p_exact(400, 2.0, 0.5).unwrap().value - 4.0 / 9.0).abs() < 1e-12);
}

#[test]
fn constant_off_the_critical_set() {
    let cs: Vec<f64> = (1..100).map(|i| i as f64 / 100.0).collect();
    for &c in &cs {
        let tau = c.max(1.0 - c);
        let crit = 1.0 / tau;
        for &eps in &[1e-9, 1e-6, 1e-3, 0.1] {
            let below = crit * (1.0 - eps);
            if below >= 1.0 {
                assert_eq!(uni(below, c).law, LimitLaw::PointMass2, "c={c} r={below}");
            }
            let above = crit * (1.0 + eps);
            if !((above - 2.0).abs() < 1e-12 && (c - 0.5).abs() < 1e-12) {
                assert_eq!(uni(above, c).law, LimitLaw::PointMass1, "c={c} r={above}");
            }
        }
        let at = uni(crit, c);
        assert!(!at.degenerate, "c={c}");
    }
}

#[test]
fn general_left_reduces_to_uniform() {
    let u = named_example_model(NamedExample::Uniform).unwrap();
    for i in 1..20 {
        let r = 1.0 + i as f64 / 20.0;
        let g = asymptotic_general_left(&u, r).unwrap();
        let w = uni(r, (r - 1.0) / r);
        assert!((g.limit_p - w.limit_p).abs() < 1e-15, "r={r}");
        let g = asymptotic_general_right(&u, r).unwrap();
        let w = uni(r, 1.0 / r);
        assert!((g.limit_p - w.limit_p).abs() < 1e-15, "r={r}");
    }
}

#[test]
fn linear_b_quadrature_approaches_limit() {
    let lb = named_example_model(NamedExample::LinearB).unwrap();
    let r = 1.5;
    let lim = asymptotic_general_left(&lb, r).unwrap().limit_p;
    let p400 = pcd_general::p_numeric_general(&lb, PcdParams::new(r, (r - 1.0) / r).unwrap(), 400).unwrap();
    assert!((p400 - lim).abs() < 2e-3, "{p400} vs {lim}");
    let lim = asymptotic_general_right(&lb, r).unwrap().limit_p;
    let p400 = pcd_general::p_numeric_general(&lb, PcdParams::new(r, 1.0 / r).unwrap(), 400).unwrap();
    assert!((p400 - lim).abs() < 2e-3, "{p400} vs {lim}");
}

#[test]
fn result_serializes() {
    let lb = named_example_model(NamedExample::LinearB).unwrap();
    let a = rate_constants(&lb, 1.5, Side::Right, 100).unwrap();
    let v = serde_json::to_value(&a).unwrap();
    assert_eq!(v["law"]["law"], "one-plus-bernoulli");
    assert_eq!(v["regime"], "general-right");
    assert_eq!(v["rate"]["side"], "right");
    let back: AsymptoticResult = serde_json::from_value(v).unwrap();
    assert_eq!(back, a);
}
