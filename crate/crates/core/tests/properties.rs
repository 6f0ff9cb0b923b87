//! Structural properties checked over randomized inputs: recurrences,
//! bounds, linearity, reduction identities, and the integral semigroup law.

use proptest::prelude::*;
use prabhakar::{
    mittag_leffler, pochhammer, prabhakar_function, prabhakar_kernel, rl_integral, GridFunction,
    PrabhakarParams,
};

proptest! {
    #[test]
    fn pochhammer_satisfies_the_rising_recurrence(
        x in -10.0f64..10.0,
        k in 0u32..30,
    ) {
        let lhs = pochhammer(x, k + 1);
        let rhs = pochhammer(x, k) * (x + k as f64);
        let scale = lhs.abs().max(rhs.abs()).max(1.0);
        prop_assert!(
            (lhs - rhs).abs() <= 1e-12 * scale,
            "recurrence gap {} at x={x} k={k}", (lhs - rhs).abs()
        );
    }

    #[test]
    fn mittag_leffler_decay_stays_in_the_unit_interval(
        alpha in 0.05f64..=1.0,
        x in 0.0f64..=50.0,
        shrink in 0.0f64..=1.0,
    ) {
        let outer = mittag_leffler(alpha, -x).unwrap();
        prop_assert!(outer > 0.0, "E_alpha(-{x}) = {outer} should be positive");
        prop_assert!(outer <= 1.0, "E_alpha(-{x}) = {outer} should not exceed 1");
        let inner = mittag_leffler(alpha, -x * shrink).unwrap();
        prop_assert!(
            outer <= inner + 1e-12,
            "decay should be monotone: E({alpha},-{x}) = {outer} > {inner}"
        );
    }

    #[test]
    fn exponential_and_mittag_leffler_reductions_hold(
        z in -5.0f64..=1.0,
        alpha in 0.1f64..=1.0,
        omega in -3.0f64..=0.5,
        t in 0.01f64..=2.0,
    ) {
        let unit = PrabhakarParams::new(1.0, 1.0, 1.0, z).unwrap();
        let exp_form = prabhakar_function(&unit, z).unwrap();
        prop_assert!(
            (exp_form - z.exp()).abs() <= 1e-12 * z.exp().max(1.0),
            "three-index function at unit indices should be exp, gap {}",
            (exp_form - z.exp()).abs()
        );
        let p = PrabhakarParams::new(alpha, 1.0, 1.0, omega).unwrap();
        let kernel = prabhakar_kernel(&p, t).unwrap();
        let ml = mittag_leffler(alpha, omega * t.powf(alpha)).unwrap();
        prop_assert!(
            (kernel - ml).abs() <= 1e-12 * ml.abs().max(1.0),
            "unit-index kernel should reduce to the one-parameter function, gap {}",
            (kernel - ml).abs()
        );
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]
    #[test]
    fn fractional_integral_is_linear(
        a in -2.0f64..=2.0,
        b in -2.0f64..=2.0,
        sigma in 0.2f64..=1.8,
    ) {
        let n = 101usize;
        let h = 0.01f64;
        let f = GridFunction::from_fn(0.0, h, n, |t| t * t).unwrap();
        let g = GridFunction::from_fn(0.0, h, n, |t| (2.0 * t).sin()).unwrap();
        let combined =
            GridFunction::from_fn(0.0, h, n, |t| a * t * t + b * (2.0 * t).sin()).unwrap();
        let jf = rl_integral(&f, sigma).unwrap();
        let jg = rl_integral(&g, sigma).unwrap();
        let jc = rl_integral(&combined, sigma).unwrap();
        for i in 0..n {
            let lhs = jc.values()[i];
            let rhs = a * jf.values()[i] + b * jg.values()[i];
            let scale = lhs.abs().max(rhs.abs()).max(1.0);
            prop_assert!(
                (lhs - rhs).abs() <= 1e-11 * scale,
                "linearity gap {} at node {i}", (lhs - rhs).abs()
            );
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]
    #[test]
    fn fractional_integrals_compose_on_a_coarse_grid(
        s1 in 0.5f64..=1.5,
        s2 in 0.5f64..=1.5,
    ) {
        let n = 201usize;
        let h = 0.01f64;
        let f = GridFunction::from_fn(0.0, h, n, |t| t + 0.5 * t * t).unwrap();
        let inner = rl_integral(&f, s2).unwrap();
        let two_step = rl_integral(&inner, s1).unwrap();
        let direct = rl_integral(&f, s1 + s2).unwrap();
        let mut worst = 0.0f64;
        for i in 0..n {
            worst = worst.max((two_step.values()[i] - direct.values()[i]).abs());
        }
        prop_assert!(
            worst <= 1e-3,
            "semigroup gap {worst} for orders {s1} + {s2}"
        );
    }
}
