//! Exit criteria. Each check prints one PASS/FAIL line; the process fails if
//! any criterion fails.

mod common;

use std::process::ExitCode;
use std::time::Instant;

use rand::{rngs::StdRng, Rng, SeedableRng};
use rdtm_core::engine::{assemble, build_series, cauchy_product, SeriesEvaluator, SpectrumSeries};
use rdtm_core::expr::{parse, Expr};
use rdtm_core::ks::{generalized_model, ks_exact, ks_initial, ks_model, linspace, KsParams};
use rdtm_core::verify::{
    compare_series, compare_table, fd_derivative, log_log_slope, residual, series_product_oracle,
};

/// Published reference table: x, t, truncated series, closed form, abs error.
const REFERENCE: [(f64, f64, f64, f64, f64); 9] = [
    (0.0, 0.0, 0.5003600908, 0.500360093, 0.5420022964e-9),
    (0.0, 0.5, 0.5003685212, 0.500358052, 0.1046850860e-4),
    (0.0, 1.0, 0.5003762240, 0.500355975, 0.2024957166e-4),
    (0.5, 0.0, 0.5003784827, 0.500378483, 0.6041276398e-9),
    (0.5, 0.5, 0.5003854531, 0.500376798, 0.8655395022e-5),
    (0.5, 1.0, 0.5003918215, 0.500375080, 0.1674210244e-4),
    (1.0, 0.0, 0.5003936888, 0.500393690, 0.5954475010e-9),
    (1.0, 0.5, 0.5003799452, 0.500392296, 0.7156111486e-5),
    (1.0, 1.0, 0.5004047174, 0.500390875, 0.1384174699e-4),
];

/// Row whose printed value disagrees with its own abs-error entry.
const INCONSISTENT_ROW: (f64, f64) = (1.0, 0.5);

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: String) -> Outcome {
    Outcome { pass, detail }
}

fn golden_table() -> Outcome {
    let start = Instant::now();
    let table = compare_table(&KsParams::default(), 2, &[0.0, 0.5, 1.0], &[0.0, 0.5, 1.0]).unwrap();
    let elapsed = start.elapsed().as_secs_f64();
    let mut exact_ok = 0;
    let mut series_ok = 0;
    let mut err_ok = 0;
    let mut lines = Vec::new();
    for (row, &(x, t, series, exact, err)) in table.rows.iter().zip(&REFERENCE) {
        assert_eq!((row.x, row.t), (x, t));
        let exempt = (x, t) == INCONSISTENT_ROW;
        if (row.exact - exact).abs() <= 5e-9 {
            exact_ok += 1;
        }
        if !exempt && (row.rdtm - series).abs() <= 5e-7 {
            series_ok += 1;
        }
        let err_match = if t == 0.0 {
            row.abs_err < 1e-8
        } else {
            !exempt && ((row.abs_err - err) / err).abs() <= 0.1
        };
        if err_match {
            err_ok += 1;
        }
        lines.push(format!(
            "    ({x:.1}, {t:.1}) series {:.10} [ref {series:.10}] exact {:.10} [ref {exact:.9}] abs_err {:.4e} [ref {err:.4e}]{}",
            row.rdtm,
            row.exact,
            row.abs_err,
            if exempt { "  <- reference row inconsistent, exempt" } else { "" },
        ));
    }
    let pass = exact_ok == 9 && series_ok >= 8 && err_ok == 9 - 1 && elapsed < 5.0;
    let detail = format!(
        "exact column {exact_ok}/9, series column {series_ok}/8, abs errors {err_ok}/8, {elapsed:.3} s\n{}",
        lines.join("\n")
    );
    outcome(pass, detail)
}

fn initial_identity() -> Outcome {
    let p = KsParams::default();
    let f = ks_initial(&p);
    let s = build_series(&ks_model(1.0, 1.0), &f, 2).unwrap();
    let mut rng = StdRng::seed_from_u64(2);
    let mut worst: f64 = 0.0;
    for _ in 0..1000 {
        let x = rng.gen_range(-40.0..40.0);
        let b = p.bindings(x);
        let direct = f.evaluate(&b).unwrap();
        let series = assemble(&s, x, 0.0, &b).unwrap();
        worst = worst.max((series - direct).abs() / direct.abs());
    }
    outcome(worst <= 1e-15, format!("max relative difference {worst:.3e}"))
}

fn residual_order() -> Outcome {
    let p = KsParams::default();
    let f = ks_initial(&p);
    let model = ks_model(1.0, 1.0);
    let steps = p.fd_steps();
    let ts: Vec<f64> = (0..9).map(|i| 10f64.powf(-3.0 + 0.25 * i as f64)).collect();
    let mut pass = true;
    let mut parts = Vec::new();
    for n in 1..=3 {
        let s = build_series(&model, &f, n).unwrap();
        let program = s.compile();
        let mut ev = SeriesEvaluator::new(&program, &p.bindings(0.0)).unwrap();
        let pts: Vec<(f64, f64)> = ts
            .iter()
            .map(|&t| (t, residual(|x, t| ev.eval(x, t), &model, 0.0, t, &steps).unwrap()))
            .collect();
        let slope = log_log_slope(&pts);
        let need = n as f64 - 0.2;
        pass &= slope >= need;
        parts.push(format!(
            "n={n} slope {slope:.3} (need {need:.1}, |R| {:.2e}..{:.2e})",
            pts[0].1.abs(),
            pts[pts.len() - 1].1.abs()
        ));
    }
    outcome(pass, parts.join(", "))
}

fn exact_residual() -> Outcome {
    let p = KsParams::default();
    let steps = p.fd_steps();
    let mut rng = StdRng::seed_from_u64(4);
    let mut worst: f64 = 0.0;
    for _ in 0..50 {
        let (x, t) = (rng.gen_range(-40.0..40.0), rng.gen_range(0.0..4.0));
        let r = residual(|x, t| Ok(ks_exact(&p, x, t)), &ks_model(1.0, 1.0), x, t, &steps).unwrap();
        worst = worst.max(r.abs());
    }
    outcome(worst < 1e-5, format!("max |residual| {worst:.3e} (need < 1e-5)"))
}

fn random_series(rng: &mut StdRng, corpus: &[Expr], order: usize) -> SpectrumSeries {
    SpectrumSeries::new(
        (0..=order)
            .map(|_| Expr::constant(rng.gen_range(-2.0..2.0)) * corpus[rng.gen_range(0..corpus.len())].clone())
            .collect(),
    )
}

fn transform_oracles() -> Outcome {
    let corpus: Vec<Expr> = common::CORPUS.iter().map(|s| parse(s).unwrap()).collect();
    let mut rng = StdRng::seed_from_u64(5);
    let mut product_worst: f64 = 0.0;
    for _ in 0..100 {
        let (oa, ob) = (rng.gen_range(0..=6), rng.gen_range(0..=6));
        let a = random_series(&mut rng, &corpus, oa);
        let b = random_series(&mut rng, &corpus, ob);
        let x = rng.gen_range(-2.0..2.0);
        let va: Vec<f64> = a.coefficients().iter().map(|u| common::at(u, x)).collect();
        let vb: Vec<f64> = b.coefficients().iter().map(|u| common::at(u, x)).collect();
        for k in 0..=oa.min(ob) {
            let got = common::at(&cauchy_product(&a, &b, k).unwrap(), x);
            let want = series_product_oracle(&va, &vb, k).unwrap();
            let scale: f64 = (0..=k).map(|r| (va[r] * vb[k - r]).abs()).sum::<f64>();
            product_worst = product_worst.max((got - want).abs() / scale.max(f64::MIN_POSITIVE));
        }
    }
    let steps = [1e-3, 5e-3, 1e-2, 1.5e-2];
    let mut deriv_worst = [0.0f64; 4];
    for e in &corpus {
        for m in 1..=4u32 {
            let d = e.differentiate(m).simplify();
            for _ in 0..20 {
                let x = rng.gen_range(-1.8..1.8);
                let fd = fd_derivative(|y| e.evaluate(&common::bindings(y)), x, m, steps[m as usize - 1]).unwrap();
                let err = common::rel_err(common::at(&d, x), fd);
                deriv_worst[m as usize - 1] = deriv_worst[m as usize - 1].max(err);
            }
        }
    }
    let pass = product_worst <= 1e-12
        && deriv_worst[0].max(deriv_worst[1]) < 1e-6
        && deriv_worst[2].max(deriv_worst[3]) < 1e-5;
    outcome(
        pass,
        format!(
            "product max rel {product_worst:.2e}; derivative max rel by order {:.1e} {:.1e} {:.1e} {:.1e}",
            deriv_worst[0], deriv_worst[1], deriv_worst[2], deriv_worst[3]
        ),
    )
}

fn reduction() -> Outcome {
    let p = KsParams::default();
    let f = ks_initial(&p);
    let mut rng = StdRng::seed_from_u64(6);
    let mut worst: f64 = 0.0;
    for (gamma, lambda) in [(1.0, 1.0), (0.6, 1.7)] {
        let a = build_series(&ks_model(gamma, lambda), &f, 4).unwrap();
        let b = build_series(&generalized_model(1.0, 1, gamma, 0, lambda), &f, 4).unwrap();
        for _ in 0..100 {
            let x = rng.gen_range(-40.0..40.0);
            let bind = p.bindings(x);
            for (u, v) in a.coefficients().iter().zip(b.coefficients()) {
                let (u, v) = (u.evaluate(&bind).unwrap(), v.evaluate(&bind).unwrap());
                if u != v {
                    worst = worst.max((u - v).abs() / u.abs());
                }
            }
        }
    }
    outcome(worst <= 1e-12, format!("max relative difference {worst:.3e} through k=4"))
}

fn convergence() -> Outcome {
    let p = KsParams::default();
    let f = ks_initial(&p);
    let xs = linspace(-40.0, 40.0, 201);
    let ts: Vec<f64> = linspace(0.0, 4.0, 101).into_iter().filter(|&t| t <= 0.5).collect();
    let errs: Vec<f64> = (1..=3)
        .map(|n| {
            let s = build_series(&ks_model(1.0, 1.0), &f, n).unwrap();
            compare_series(&s, &p, &xs, &ts).unwrap().max_abs_err()
        })
        .collect();
    let pass = errs.windows(2).all(|w| w[1] < w[0]);
    outcome(pass, format!("max abs error n=1,2,3: {:.4e} {:.4e} {:.4e}", errs[0], errs[1], errs[2]))
}

fn main() -> ExitCode {
    let start = Instant::now();
    let criteria: [(&str, fn() -> Outcome); 7] = [
        ("1 golden table", golden_table),
        ("2 initial-data identity", initial_identity),
        ("3 residual order at x=0", residual_order),
        ("4 closed-form residual", exact_residual),
        ("5 transform-rule oracles", transform_oracles),
        ("6 reduction to the standard equation", reduction),
        ("7 convergence in order", convergence),
    ];
    let mut failed = 0;
    let mut results = Vec::new();
    for (name, check) in criteria {
        let o = check();
        if !o.pass {
            failed += 1;
        }
        results.push((name, o));
    }
    let total = start.elapsed().as_secs_f64();
    for (name, o) in &results {
        let (first, rest) = o.detail.split_once('\n').unwrap_or((&o.detail, ""));
        println!("{} criterion {name}: {first}", if o.pass { "PASS" } else { "FAIL" });
        if !rest.is_empty() {
            println!("{rest}");
        }
    }
    let in_budget = total < 60.0;
    println!("{} full suite runtime {total:.2} s (need < 60 s)", if in_budget { "PASS" } else { "FAIL" });
    if !in_budget {
        failed += 1;
    }
    println!("acceptance: {} of 7 criteria passed", 7 - results.iter().filter(|(_, o)| !o.pass).count());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
