//! Structural identities linking the operator implementations: the two
//! Prabhakar evaluation paths, the assembly of the exponential- and
//! Mittag-Leffler-kernel derivatives from the Prabhakar integral, the
//! Riemann-Liouville semigroup, and the integration-by-parts shift.

use prabhakar::{
    abc_derivative, cf_derivative, mittag_leffler, prabhakar_integral,
    prabhakar_integral_series, rl_integral, series_truncation, GridFunction, NormalizationFn,
    PrabhakarParams,
};

fn max_abs_diff(a: &GridFunction, b: &GridFunction) -> f64 {
    assert!(a.len() == b.len());
    a.values()
        .iter()
        .zip(b.values())
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max)
}

fn curve_max(g: &GridFunction) -> f64 {
    g.values().iter().fold(0.0, |m, v| m.max(v.abs()))
}

#[test]
fn series_path_agrees_with_direct_quadrature() {
    let p = PrabhakarParams::new(0.5, 1.0, 1.0, -1.0).unwrap();
    let n = 201;
    let h = 0.01;
    let horizon: f64 = h * (n as f64 - 1.0);
    let k = series_truncation(&p, horizon.powf(0.5), 1e-12).unwrap().terms;
    for (name, f) in [
        ("t2", GridFunction::from_fn(0.0, h, n, |t| t * t).unwrap()),
        ("sin", GridFunction::from_fn(0.0, h, n, f64::sin).unwrap()),
    ] {
        let direct = prabhakar_integral(&f, &p).unwrap();
        let series = prabhakar_integral_series(&f, &p, k).unwrap();
        let err = max_abs_diff(&direct, &series.grid);
        let scale = curve_max(&direct);
        assert!(err <= 1e-8 * scale, "{name}: err {err:e} vs scale {scale:e}");
    }
}

#[test]
fn exponential_kernel_derivative_assembles_from_the_prabhakar_integral() {
    let n = 401;
    let h = 5e-3;
    let norm = NormalizationFn::constant_one();
    for &alpha in &[0.1, 0.5, 0.9] {
        let omega = -alpha / (1.0 - alpha);
        let f = GridFunction::from_fn_with_derivative(0.0, h, n, f64::sin, f64::cos).unwrap();
        let df = GridFunction::from_fn(0.0, h, n, f64::cos).unwrap();
        let p = PrabhakarParams::new(1.0, 1.0, 1.0, omega).unwrap();
        let via_integral = prabhakar_integral(&df, &p).unwrap();
        let scale = 1.0 / (1.0 - alpha);
        let direct = cf_derivative(&f, alpha, &norm).unwrap();
        let err = direct
            .values()
            .iter()
            .zip(via_integral.values())
            .map(|(d, v)| (d - scale * v).abs())
            .fold(0.0, f64::max);
        assert!(err <= 1e-10, "alpha {alpha}: err {err:e}");
    }
}

#[test]
fn mittag_leffler_kernel_derivative_assembles_from_the_prabhakar_integral() {
    let n = 401;
    let h = 5e-3;
    let norm = NormalizationFn::constant_one();
    for &alpha in &[0.3, 0.7] {
        let omega = -alpha / (1.0 - alpha);
        let f = GridFunction::from_fn_with_derivative(0.0, h, n, |t| t * t, |t| 2.0 * t).unwrap();
        let df = GridFunction::from_fn(0.0, h, n, |t| 2.0 * t).unwrap();
        let p = PrabhakarParams::new(alpha, 1.0, 1.0, omega).unwrap();
        let zmax = omega.abs() * (h * (n as f64 - 1.0)).powf(alpha);
        let k = series_truncation(&p, zmax, 1e-12).unwrap().terms;
        let via_series = prabhakar_integral_series(&df, &p, k).unwrap().grid;
        let scale = 1.0 / (1.0 - alpha);
        let direct = abc_derivative(&f, alpha, &norm).unwrap();
        let err = direct
            .values()
            .iter()
            .zip(via_series.values())
            .map(|(d, v)| (d - scale * v).abs())
            .fold(0.0, f64::max);
        assert!(err > 0.0, "alpha {alpha}: the two routes must not share a code path");
        assert!(err <= 1e-8, "alpha {alpha}: err {err:e}");
    }
}

#[test]
fn riemann_liouville_integrals_compose_as_a_semigroup() {
    let n = 2001;
    let h = 1e-3;
    let f = GridFunction::from_fn(0.0, h, n, |t| t).unwrap();
    let inner = rl_integral(&f, 0.5).unwrap();
    let composed = rl_integral(&inner, 0.7).unwrap();
    let direct = rl_integral(&f, 1.2).unwrap();
    let err = max_abs_diff(&composed, &direct);
    assert!(err <= 1e-6, "semigroup err {err:e}");
}

#[test]
fn shift_identity_moves_one_derivative_across_the_kernel() {
    let n = 2001;
    let h = 1e-3;
    let sigma = 0.5;
    let f = GridFunction::from_fn(0.0, h, n, |t| (-t).exp()).unwrap();
    let df = GridFunction::from_fn(0.0, h, n, |t| -(-t).exp()).unwrap();
    let left = rl_integral(&df, sigma + 1.0).unwrap();
    let right = rl_integral(&f, sigma).unwrap();
    let g = 0.886226925452758013649;
    let err = left
        .values()
        .iter()
        .zip(right.values())
        .enumerate()
        .map(|(i, (l, r))| {
            let t = h * i as f64;
            (l + t.powf(sigma) / g - r).abs()
        })
        .fold(0.0, f64::max);
    assert!(err <= 1e-6, "shift identity err {err:e}");
}

#[test]
fn constant_and_linear_inputs_reproduce_the_moment_oracles() {
    let p = PrabhakarParams::new(0.5, 0.8, 1.2, -1.0).unwrap();
    let n = 11;
    let h = 0.005;
    let ones = GridFunction::from_fn(0.0, h, n, |_| 1.0).unwrap();
    let out = prabhakar_integral(&ones, &p).unwrap();
    let f0 = 0.07991244523568551489562;
    let err = (out.values()[n - 1] - f0).abs();
    assert!(err <= 1e-11, "F0(0.05) err {err:e}");

    let lin = GridFunction::from_fn(0.0, h, n, |t| t).unwrap();
    let out = prabhakar_integral(&lin, &p).unwrap();
    let f1 = 0.001679141404841839751029;
    let want = 0.05 * f0 - f1;
    let err = (out.values()[n - 1] - want).abs();
    assert!(err <= 1e-11, "t*F0-F1 at 0.05 err {err:e}");
}

#[test]
fn unit_parameters_reduce_the_kernel_to_the_exponential() {
    let p = PrabhakarParams::new(1.0, 1.0, 1.0, -2.0).unwrap();
    let n = 51;
    let h = 0.04;
    let ones = GridFunction::from_fn(0.0, h, n, |_| 1.0).unwrap();
    let out = prabhakar_integral(&ones, &p).unwrap();
    for (i, v) in out.values().iter().enumerate() {
        let t = h * i as f64;
        let want = -(-2.0 * t).exp_m1() / 2.0;
        assert!((v - want).abs() <= 1e-12, "t={t}: {v} vs {want}");
    }
}

#[test]
fn half_order_kernel_integral_of_one_matches_the_raised_index_row() {
    let p = PrabhakarParams::new(0.5, 1.0, 1.0, -1.0).unwrap();
    let n = 101;
    let h = 0.01;
    let ones = GridFunction::from_fn(0.0, h, n, |_| 1.0).unwrap();
    let out = prabhakar_integral(&ones, &p).unwrap();
    let want = 0.5559627432513195783069;
    let err = (out.values()[n - 1] - want).abs();
    assert!(err <= 1e-10, "err {err:e}");
}
