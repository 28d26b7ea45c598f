use pcd_core::{gamma_only, intervalize, PcdParams};
use pcd_dist::{named_example_model, uniform_model, DistributionModel, NamedExample, SineTail};
use pcd_exact::{golden_centrality, p_exact};
use pcd_general::p_numeric_general;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn params(r: f64, c: f64) -> PcdParams {
    PcdParams::new(r, c).unwrap()
}

fn mc(model: &DistributionModel, r: f64, c: f64, n: usize, reps: usize, seed: u64) -> f64 {
    let (y1, y2) = model.support();
    let iv = intervalize(&[y1, y2]).unwrap();
    let p = params(r, c);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut xs = vec![0.0; n];
    let mut hits = 0usize;
    for _ in 0..reps {
        for x in xs.iter_mut() {
            *x = model.sample(&mut rng);
        }
        if gamma_only(&xs, &iv, p).unwrap() == 2 {
            hits += 1;
        }
    }
    hits as f64 / reps as f64
}

#[test]
fn uniform_reduction_on_grid() {
    let u = uniform_model(0.0, 1.0).unwrap();
    let shifted = uniform_model(2.0, 4.0).unwrap();
    for n in [2, 3, 5, 8] {
        for r in [1.0, 1.1, 1.0 / 0.55, 1.5, 2.0, 2.5, 4.0] {
            for c in [0.1, golden_centrality(), 0.3, 0.4, 0.5, 0.6, 0.9] {
                let want = p_exact(n, r, c).unwrap().value;
                let got = p_numeric_general(&u, params(r, c), n).unwrap();
                assert!((got - want).abs() < 1e-6, "n={n} r={r} c={c}: {got} vs {want}");
                let got = p_numeric_general(&shifted, params(r, c), n).unwrap();
                assert!((got - want).abs() < 1e-6, "shifted n={n} r={r} c={c}");
            }
        }
    }
}

#[test]
fn uniform_spec_examples() {
    let u = uniform_model(0.0, 1.0).unwrap();
    let p = p_numeric_general(&u, params(1.5, 1.0 / 3.0), 4).unwrap();
    assert!((p - p_exact(4, 1.5, 1.0 / 3.0).unwrap().value).abs() < 1e-7);
}

#[test]
fn named_models_agree_with_simulation() {
    let models = [
        named_example_model(NamedExample::LinearB).unwrap(),
        named_example_model(NamedExample::AbsSineC).unwrap(),
        named_example_model(NamedExample::SineD { r: 1.5, tail: SineTail::LinearExp }).unwrap(),
        named_example_model(NamedExample::Beta { a: 2.0, b: 3.0 }).unwrap(),
        named_example_model(NamedExample::ArcsineF).unwrap(),
    ];
    let reps = 40_000;
    for (i, m) in models.iter().enumerate() {
        for &(r, c, n) in &[(1.5, 1.0 / 3.0, 5usize), (2.0, 0.5, 4), (1.3, 0.6, 8)] {
            let p = p_numeric_general(m, params(r, c), n as u32).unwrap_or_else(|e| panic!("{} {r} {c} {n}: {e}", m.name()));
            let hat = mc(m, r, c, n, reps, 11 + i as u64);
            let sd = (p * (1.0 - p) / reps as f64).sqrt().max(1e-4);
            assert!((p - hat).abs() < 4.5 * sd, "{} r={r} c={c} n={n}: quad {p} mc {hat}", m.name());
        }
    }
}

#[test]
fn narrower_support_than_reference() {
    use pcd_exact::QuadSpec;
    use pcd_general::p_numeric_general_with;
    let m = uniform_model(0.2, 0.7).unwrap();
    let (r, c, n) = (1.5, 0.4, 5);
    let p = p_numeric_general_with(&m, params(r, c), n, (0.0, 1.0), QuadSpec::default()).unwrap();
    let iv = intervalize(&[0.0, 1.0]).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let reps = 40_000;
    let mut hits = 0;
    let mut xs = vec![0.0; n as usize];
    for _ in 0..reps {
        for x in xs.iter_mut() {
            *x = m.sample(&mut rng);
        }
        hits += (gamma_only(&xs, &iv, params(r, c)).unwrap() == 2) as usize;
    }
    let hat = hits as f64 / reps as f64;
    let sd = (p * (1.0 - p) / reps as f64).sqrt();
    assert!((p - hat).abs() < 4.5 * sd, "{p} vs {hat}");
}

#[test]
fn both_scales_agree() {
    use pcd_exact::QuadSpec;
    use pcd_general::{p_numeric_general_in, Scale};
    let spec = QuadSpec { abs_tol: 1e-9, max_depth: 40 };
    let models = [
        named_example_model(NamedExample::LinearB).unwrap(),
        named_example_model(NamedExample::AbsSineC).unwrap(),
        named_example_model(NamedExample::SineD { r: 1.4, tail: SineTail::GaussExp }).unwrap(),
        named_example_model(NamedExample::Beta { a: 1.5, b: 2.5 }).unwrap(),
    ];
    for m in &models {
        for &(r, c, n) in &[(1.5, 1.0 / 3.0, 5u32), (2.0, 0.5, 3), (1.2, 0.7, 6)] {
            let a = p_numeric_general_in(m, params(r, c), n, (0.0, 1.0), spec, Scale::Original).unwrap();
            let b = p_numeric_general_in(m, params(r, c), n, (0.0, 1.0), spec, Scale::Probability).unwrap();
            assert!((a - b).abs() < 1e-8, "{} r={r} c={c} n={n}: {a} vs {b}", m.name());
        }
    }
}

#[test]
fn linear_b_approaches_its_limit_like_one_over_n() {
    let lb = named_example_model(NamedExample::LinearB).unwrap();
    let (r, c) = (1.5, 1.0 / 3.0);
    let limit = r * r / (r * r + 3.0 * r - 2.0);
    // independent evaluation (scipy, breakpoint-split nested quadrature)
    let frozen = [
        (25, 0.4832949800659068),
        (50, 0.4788696295846982),
        (100, 0.47638958736270864),
        (200, 0.47506795813816216),
        (400, 0.47438427129480054),
    ];
    let mut prev = f64::INFINITY;
    for (n, want) in frozen {
        let p = p_numeric_general(&lb, params(r, c), n).unwrap();
        assert!((p - want).abs() < 1e-8, "n={n}: {p}");
        assert!(p < prev && p > limit);
        prev = p;
        let scaled = (p - limit) * n as f64;
        assert!(scaled > 0.2 && scaled < 0.3, "n={n}: n(p - p_inf) = {scaled}");
    }
}

#[test]
fn mean_and_variance() {
    use pcd_general::mean_variance_gamma;
    let u = uniform_model(0.0, 1.0).unwrap();
    let (m, v) = mean_variance_gamma(&u, params(2.0, 0.5), 2).unwrap();
    assert!((m - 4.0 / 3.0).abs() < 1e-8 && (v - 2.0 / 9.0).abs() < 1e-8);
    // p = 0: r infinite
    assert_eq!(mean_variance_gamma(&u, PcdParams::infinite(0.4).unwrap(), 5).unwrap(), (1.0, 0.0));
    // p -> 1 deep in the lowest region
    let (m, v) = mean_variance_gamma(&u, params(1.0, 0.5), 60).unwrap();
    assert!((m - 2.0).abs() < 1e-9 && v < 1e-9);
}

#[test]
fn frozen_independent_values() {
    // piecewise Gauss-Legendre in numpy with kink breakpoints, computed outside this crate
    let lb = named_example_model(NamedExample::LinearB).unwrap();
    let abs = named_example_model(NamedExample::AbsSineC).unwrap();
    let beta = named_example_model(NamedExample::Beta { a: 2.0, b: 3.0 }).unwrap();
    let cases: [(&DistributionModel, u32, f64, f64, f64); 9] = [
        (&lb, 5, 1.5, 1.0 / 3.0, 0.4718589241763048),
        (&lb, 5, 2.0, 0.5, 0.4016063609700391),
        (&lb, 8, 1.3, 0.6, 0.9641921080427603),
        (&abs, 5, 1.5, 1.0 / 3.0, 0.5471108923406285),
        (&abs, 5, 2.0, 0.5, 0.5865957467825142),
        (&abs, 8, 1.3, 0.6, 0.9547724034704312),
        (&beta, 5, 1.5, 1.0 / 3.0, 0.36074271830603455),
        (&beta, 5, 2.0, 0.5, 0.12037684113911458),
        (&beta, 8, 1.3, 0.6, 0.5383604795957224),
    ];
    for (m, n, r, c, want) in cases {
        let got = p_numeric_general(m, params(r, c), n).unwrap();
        assert!((got - want).abs() < 1e-8, "{} n={n} r={r} c={c}: {got} vs {want}", m.name());
    }
}
