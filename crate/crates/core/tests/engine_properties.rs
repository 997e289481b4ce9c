mod common;

use common::{at, bindings, smooth_expr};
use proptest::collection::vec;
use proptest::prelude::*;
use rand::{rngs::StdRng, Rng, SeedableRng};
use rdtm_core::engine::{
    assemble, build_series, cauchy_product, power_convolution, recurrence_step, spatial_derivative,
    time_derivative_transform, PdeModel, SpectrumSeries,
};
use rdtm_core::expr::{parse, Bindings, Expr};
use rdtm_core::ks::{generalized_model, ks_initial, ks_model, KsParams};
use rdtm_core::verify::series_product_oracle;

fn values(s: &SpectrumSeries, x: f64) -> Vec<f64> {
    s.coefficients().iter().map(|u| at(u, x)).collect()
}

/// Scale of `Σ a_r b_{k-r}` for relative comparisons.
fn magnitude(a: &[f64], b: &[f64], k: usize) -> f64 {
    (0..=k).map(|r| (a[r] * b[k - r]).abs()).sum::<f64>().max(f64::MIN_POSITIVE)
}

fn exp_times(g: &str, n: usize) -> SpectrumSeries {
    let g = parse(g).unwrap();
    let mut fact = 1.0;
    let coeffs = (0..=n)
        .map(|k| {
            if k > 0 {
                fact *= k as f64;
            }
            Expr::constant(1.0 / fact) * g.clone()
        })
        .collect();
    SpectrumSeries::new(coeffs)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn convolution_is_symmetric(
        a in vec(smooth_expr(), 1..5),
        b in vec(smooth_expr(), 1..5),
        x in -2.0f64..2.0,
    ) {
        let (a, b) = (SpectrumSeries::new(a), SpectrumSeries::new(b));
        for k in 0..=a.order().min(b.order()) {
            let ab = at(&cauchy_product(&a, &b, k).unwrap(), x);
            let ba = at(&cauchy_product(&b, &a, k).unwrap(), x);
            let scale = magnitude(&values(&a, x), &values(&b, x), k);
            prop_assert!((ab - ba).abs() <= 1e-12 * scale);
        }
    }

    #[test]
    fn convolution_matches_numeric_product(
        a in vec(smooth_expr(), 1..5),
        b in vec(smooth_expr(), 1..5),
        x in -2.0f64..2.0,
    ) {
        let (a, b) = (SpectrumSeries::new(a), SpectrumSeries::new(b));
        let (va, vb) = (values(&a, x), values(&b, x));
        for k in 0..=a.order().min(b.order()) {
            let got = at(&cauchy_product(&a, &b, k).unwrap(), x);
            let want = series_product_oracle(&va, &vb, k).unwrap();
            prop_assert!((got - want).abs() <= 1e-12 * magnitude(&va, &vb, k));
        }
    }

    #[test]
    fn power_convolution_matches_repeated_numeric_product(
        a in vec(smooth_expr(), 1..4),
        p in 0u32..4,
        x in -2.0f64..2.0,
    ) {
        let a = SpectrumSeries::new(a);
        let va = values(&a, x);
        let mut acc: Vec<f64> = (0..va.len()).map(|j| if j == 0 { 1.0 } else { 0.0 }).collect();
        for _ in 0..p {
            acc = (0..va.len()).map(|j| series_product_oracle(&acc, &va, j).unwrap()).collect();
        }
        for (k, want) in acc.iter().enumerate() {
            let got = at(&power_convolution(&a, p, k).unwrap(), x);
            prop_assert!((got - want).abs() <= 1e-11 * want.abs().max(1.0), "k={} {} vs {}", k, got, want);
        }
    }
}

#[test]
fn exponential_tanh_product() {
    let a = exp_times("tanh(x)", 3);
    let w = cauchy_product(&a, &a, 3).unwrap();
    let mut rng = StdRng::seed_from_u64(21);
    for _ in 0..100 {
        let x: f64 = rng.gen_range(-3.0..3.0);
        let g = x.tanh();
        let want = g * g * 8.0 / 6.0;
        let oracle = series_product_oracle(&values(&a, x), &values(&a, x), 3).unwrap();
        let got = at(&w, x);
        assert!((got - want).abs() < 1e-14 && (got - oracle).abs() < 1e-15, "{x}");
    }
}

#[test]
fn cube_of_exponential() {
    let a = exp_times("1", 2);
    let got = at(&power_convolution(&a, 3, 2).unwrap(), 0.3);
    let ones = values(&a, 0.3);
    let sq: Vec<f64> = (0..3).map(|j| series_product_oracle(&ones, &ones, j).unwrap()).collect();
    let oracle = series_product_oracle(&sq, &ones, 2).unwrap();
    assert!((got - 4.5).abs() < 1e-14 && (got - oracle).abs() < 1e-14);
}

/// `Σ c ∂^m U_k + Σ a Σ_r P_r ∂^d U_{k-r}` assembled from the transform rules.
fn spatial_part(s: &SpectrumSeries, model: &PdeModel, k: usize, x: f64) -> f64 {
    let b = bindings(x);
    let mut total = 0.0;
    for term in &model.linear {
        let d = spatial_derivative(s, term.derivative_order, k).unwrap();
        total += term.coefficient * d.evaluate(&b).unwrap();
    }
    for term in &model.nonlinear {
        for r in 0..=k {
            let p = power_convolution(s, term.u_power, r).unwrap().evaluate(&b).unwrap();
            let d = spatial_derivative(s, term.derivative_order, k - r).unwrap();
            total += term.coefficient * p * d.evaluate(&b).unwrap();
        }
    }
    total
}

#[test]
fn time_derivative_balances_spatial_terms() {
    let models = [ks_model(1.0, 1.0), generalized_model(2.0, 2, 0.5, 1, 0.3)];
    let f = parse("sin(x) + 0.3*cos(2*x)").unwrap();
    let mut rng = StdRng::seed_from_u64(22);
    for model in &models {
        let s = build_series(model, &f, 3).unwrap();
        for k in 0..3 {
            for _ in 0..20 {
                let x = rng.gen_range(-3.0..3.0);
                let ut = at(&time_derivative_transform(&s, 1, k).unwrap(), x);
                let rest = spatial_part(&s, model, k, x);
                assert!((ut + rest).abs() < 1e-12 * rest.abs().max(1.0), "k={k} x={x}: {ut} {rest}");
            }
        }
    }
}

#[test]
fn reduction_to_standard_equation() {
    let f = ks_initial(&KsParams::default());
    let mut rng = StdRng::seed_from_u64(23);
    for (gamma, lambda) in [(1.0, 1.0), (0.5, 2.0)] {
        let ks = build_series(&ks_model(gamma, lambda), &f, 4).unwrap();
        let gen = build_series(&generalized_model(1.0, 1, gamma, 0, lambda), &f, 4).unwrap();
        let p = KsParams::default();
        for _ in 0..100 {
            let x = rng.gen_range(-40.0..40.0);
            for (a, b) in ks.coefficients().iter().zip(gen.coefficients()) {
                let (a, b) = (a.evaluate(&p.bindings(x)).unwrap(), b.evaluate(&p.bindings(x)).unwrap());
                assert!((a - b).abs() <= 1e-12 * a.abs().max(f64::MIN_POSITIVE), "{x}: {a} {b}");
            }
        }
    }
}

#[test]
fn first_coefficient_matches_direct_derivatives() {
    let p = KsParams::default();
    let f = ks_initial(&p);
    let u1 = recurrence_step(&SpectrumSeries::new(vec![f.clone()]), &ks_model(1.0, 1.0), 0).unwrap();
    for x in [0.0, -30.5, 12.0] {
        let b = p.bindings(x);
        let d = |m| f.differentiate(m).evaluate(&b).unwrap();
        let want = -(f.evaluate(&b).unwrap() * d(1) + d(2) + d(4));
        let got = u1.evaluate(&b).unwrap();
        assert!(((got - want) / want).abs() < 1e-9, "{x}: {got} vs {want}");
    }
}

#[test]
fn generalized_sine_step() {
    let s = SpectrumSeries::new(vec![parse("sin(x)").unwrap()]);
    let u1 = recurrence_step(&s, &generalized_model(2.0, 2, 1.0, 1, 1.0), 0).unwrap();
    for x in [-2.5f64, -0.4, 0.0, 0.9, 3.0] {
        let (s, c) = (x.sin(), x.cos());
        let want = -(2.0 * s * s * c + s * (-s) + s);
        assert!((at(&u1, x) - want).abs() < 1e-14);
    }
}

#[test]
fn linear_generalized_model_has_linear_recurrence() {
    let model = generalized_model(0.0, 3, 0.7, 0, 1.2);
    assert!(model.is_linear());
    let f = parse("sin(x)").unwrap();
    let g = parse("3*sin(x)").unwrap();
    let (sf, sg) = (build_series(&model, &f, 3).unwrap(), build_series(&model, &g, 3).unwrap());
    for (a, b) in sf.coefficients().iter().zip(sg.coefficients()) {
        for x in [-1.0, 0.2, 2.0] {
            assert!((3.0 * at(a, x) - at(b, x)).abs() < 1e-14);
        }
    }
}

#[test]
fn series_reproduces_initial_data_at_time_zero() {
    let p = KsParams::default();
    let f = ks_initial(&p);
    let s = build_series(&ks_model(1.0, 1.0), &f, 3).unwrap();
    let mut rng = StdRng::seed_from_u64(24);
    for _ in 0..200 {
        let x = rng.gen_range(-40.0..40.0);
        let b: Bindings = p.bindings(x);
        assert_eq!(assemble(&s, x, 0.0, &b).unwrap(), f.evaluate(&b).unwrap());
    }
}

#[test]
fn constant_data_at_every_order() {
    for n in 0..=6 {
        let s = build_series(&ks_model(0.3, 2.0), &Expr::named("c"), n).unwrap();
        assert_eq!(s.order(), n);
        assert!(s.coefficients()[1..].iter().all(Expr::is_zero));
    }
}
