use proptest::prelude::*;
use rkhs_vp::fractional::{
    caputo_l1, conformable_deriv, conformable_integral, rl_integral, FractionalOrder,
    SampledSignal, TimeGrid,
};
use statrs::function::gamma::gamma;

fn close(a: &SampledSignal, b: &[f64], tol: f64) -> bool {
    a.values
        .iter()
        .zip(b)
        .all(|(x, y)| (x - y).abs() <= tol * (1.0 + y.abs()))
}

fn signal_strategy(len: usize) -> impl Strategy<Value = Vec<f64>> {
    proptest::collection::vec(-5.0f64..5.0, len)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn operators_are_linear(
        f in signal_strategy(33),
        g in signal_strategy(33),
        a in -3.0f64..3.0,
        b in -3.0f64..3.0,
        alpha in 0.05f64..=1.0,
    ) {
        let grid = TimeGrid::new(1.7, 32).unwrap();
        let q = FractionalOrder::new(alpha).unwrap();
        let sf = SampledSignal::new(grid, f.clone()).unwrap();
        let sg = SampledSignal::new(grid, g.clone()).unwrap();
        let combo: Vec<f64> = f.iter().zip(&g).map(|(x, y)| a * x + b * y).collect();
        let sc = SampledSignal::new(grid, combo).unwrap();

        let ops: [fn(&SampledSignal, FractionalOrder) -> SampledSignal; 3] = [
            |s, q| caputo_l1(s, q).unwrap(),
            |s, q| rl_integral(s, q).unwrap(),
            |s, q| conformable_integral(s, q, 0.0).unwrap(),
        ];
        for op in ops {
            let (lf, lg, lc) = (op(&sf, q), op(&sg, q), op(&sc, q));
            let expect: Vec<f64> = lf.values.iter().zip(&lg.values).map(|(x, y)| a * x + b * y).collect();
            prop_assert!(close(&lc, &expect, 1e-9));
        }
    }

    #[test]
    fn rl_integral_exact_on_linear_data(alpha in 0.05f64..=1.0, slope in -4.0f64..4.0, icpt in -4.0f64..4.0) {
        // piecewise-linear interpolation is exact, so only rounding remains
        let grid = TimeGrid::new(2.0, 20).unwrap();
        let q = FractionalOrder::new(alpha).unwrap();
        let s = SampledSignal::sample(grid, |t| icpt + slope * t);
        let out = rl_integral(&s, q).unwrap();
        let exact: Vec<f64> = grid
            .nodes()
            .map(|t| icpt * t.powf(alpha) / gamma(1.0 + alpha) + slope * t.powf(1.0 + alpha) / gamma(2.0 + alpha))
            .collect();
        prop_assert!(close(&out, &exact, 1e-11));
    }

    #[test]
    fn l1_exact_on_linear_data(alpha in 0.05f64..1.0, slope in -4.0f64..4.0) {
        let grid = TimeGrid::new(1.0, 16).unwrap();
        let q = FractionalOrder::new(alpha).unwrap();
        let s = SampledSignal::sample(grid, |t| 3.0 + slope * t);
        let out = caputo_l1(&s, q).unwrap();
        let exact: Vec<f64> = grid.nodes().map(|t| slope * t.powf(1.0 - alpha) / gamma(2.0 - alpha)).collect();
        prop_assert!(close(&out, &exact, 1e-11));
    }
}

#[test]
fn l1_converges_at_expected_rate() {
    let q = FractionalOrder::new(0.5).unwrap();
    let exact = gamma(3.0) / gamma(2.5);
    let err = |n: usize| {
        let grid = TimeGrid::new(1.0, n).unwrap();
        (caputo_l1(&SampledSignal::sample(grid, |t| t * t), q)
            .unwrap()
            .last()
            - exact)
            .abs()
    };
    let (e1, e2, e3) = (err(64), err(128), err(256));
    let o1 = (e1 / e2).log2();
    let o2 = (e2 / e3).log2();
    assert!(o1 >= 1.3 && o2 >= 1.3, "orders {o1}, {o2}");
}

#[test]
fn conformable_integral_inverts_derivative() {
    // D^α(t^3) = 3 t^{2+1−α}; integrating back recovers t^3 up to quadrature error
    let alpha = 0.4;
    let q = FractionalOrder::new(alpha).unwrap();
    let grid = TimeGrid::new(1.0, 400).unwrap();
    let f = |t: f64, d: usize| match d {
        0 => t.powi(3),
        1 => 3.0 * t * t,
        _ => unreachable!(),
    };
    let w: Vec<f64> = grid
        .nodes()
        .map(|t| {
            if t == 0.0 {
                0.0
            } else {
                conformable_deriv(&f, t, q).unwrap()
            }
        })
        .collect();
    let back = conformable_integral(&SampledSignal::new(grid, w).unwrap(), q, 0.0).unwrap();
    for (t, v) in grid.nodes().zip(&back.values) {
        assert!((v - t.powi(3)).abs() < 1e-5, "t = {t}: {v}");
    }
}

#[test]
fn rejects_bad_orders_and_grids() {
    assert!(FractionalOrder::new(0.0).is_err());
    assert!(FractionalOrder::new(1.0001).is_err());
    assert!(FractionalOrder::new(f64::NAN).is_err());
    assert!(TimeGrid::new(1.0, 0).is_err());
    assert!(TimeGrid::new(-1.0, 4).is_err());
    let g = TimeGrid::new(1.0, 4).unwrap();
    assert!(SampledSignal::new(g, vec![0.0; 4]).is_err());
}
