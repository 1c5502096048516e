use std::f64::consts::{PI, SQRT_2};

use exittime_core::greenfn::{disc_exit_time_via_green, halfdisc_exit_time, halfdisc_green, PolarPoint};
use proptest::prelude::*;

/// Half disc of unit radius: `u = −y² + Σ_{n odd} b_n rⁿ sin nθ` with
/// `b_n = −8/(π n (n² − 4))`, the sine series of `sin²θ` on the arc.
fn halfdisc_sine_series(r: f64, theta: f64) -> f64 {
    let y = r * theta.sin();
    let mut s = 0.0;
    let mut n = 1;
    let mut rn = r;
    while n < 400_001 {
        let nf = n as f64;
        s += -8.0 / (PI * nf * (nf * nf - 4.0)) * rn * (nf * theta).sin();
        rn *= r * r;
        n += 2;
    }
    -y * y + s
}

fn pp(r: f64, theta: f64) -> PolarPoint {
    PolarPoint::new(r, theta).unwrap()
}

#[test]
fn matches_the_sine_series() {
    for (r, theta) in [(SQRT_2 - 1.0, PI / 2.0), (0.3, 0.4), (0.7, 2.0), (0.95, 1.2), (0.5, 3.0), (0.05, 1.0)] {
        let g = halfdisc_exit_time(pp(r, theta), 1.0, 1e-12).unwrap();
        let s = halfdisc_sine_series(r, theta);
        assert!((g.value - s).abs() < 1e-9, "({r}, {theta}): {} vs {s}", g.value);
    }
}

#[test]
fn reference_point() {
    let g = halfdisc_exit_time(pp(SQRT_2 - 1.0, PI / 2.0), 1.0, 1e-12).unwrap();
    assert!((g.value - 2.0 * (SQRT_2 - 1.0 - 1.0 / PI)).abs() < 1e-4);
}

#[test]
fn green_function_is_positive() {
    let mut count = 0;
    for i in 0..500 {
        let t = i as f64;
        let z = pp(0.02 + 0.96 * (0.618_034 * t).fract(), 0.01 + (PI - 0.02) * (0.414_214 * t).fract());
        let w = pp(0.02 + 0.96 * (0.732_051 * t).fract(), 0.01 + (PI - 0.02) * (0.236_068 * t).fract());
        if (z.r - w.r).abs() + (z.theta - w.theta).abs() < 1e-9 {
            continue;
        }
        let g = halfdisc_green(z, w, 1.0).unwrap();
        assert!(g > 0.0, "{z:?} {w:?}: {g}");
        count += 1;
    }
    assert!(count >= 490);
}

#[test]
fn green_function_vanishes_on_the_boundary() {
    let zeta = pp(0.4, 1.1);
    for k in 1..50 {
        let phi = PI * k as f64 / 50.0;
        assert!(halfdisc_green(pp(1.0, phi), zeta, 1.0).unwrap().abs() < 1e-14);
        assert!(halfdisc_green(pp(k as f64 / 50.0, 0.0), zeta, 1.0).unwrap().abs() < 1e-14);
        assert!(halfdisc_green(pp(k as f64 / 50.0, PI), zeta, 1.0).unwrap().abs() < 1e-14);
    }
}

#[test]
fn disc_route() {
    for (r, r0) in [(0.0, 1.0), (0.3, 1.0), (1.2, 2.5)] {
        let g = disc_exit_time_via_green(r, r0).unwrap();
        assert!((g - 0.5 * (r0 * r0 - r * r)).abs() < 1e-12);
    }
}

proptest! {
    #[test]
    fn green_function_is_symmetric(r in 0.01f64..0.99, t in 0.01f64..3.13, rho in 0.01f64..0.99, p in 0.01f64..3.13) {
        prop_assume!((r - rho).abs() + (t - p).abs() > 1e-6);
        let a = halfdisc_green(pp(r, t), pp(rho, p), 1.0).unwrap();
        let b = halfdisc_green(pp(rho, p), pp(r, t), 1.0).unwrap();
        prop_assert!((a - b).abs() <= 1e-13 * a.abs().max(1.0));
    }

    #[test]
    fn exit_time_scales_with_the_radius(r in 0.05f64..0.95, t in 0.05f64..3.09, r0 in 0.3f64..4.0) {
        let unit = halfdisc_exit_time(pp(r, t), 1.0, 1e-10).unwrap().value;
        let scaled = halfdisc_exit_time(pp(r * r0, t), r0, 1e-10).unwrap().value;
        prop_assert!((scaled - r0 * r0 * unit).abs() < 1e-9 * r0 * r0);
    }

    #[test]
    fn exit_time_is_symmetric_about_the_axis(r in 0.05f64..0.95, t in 0.05f64..1.5) {
        let a = halfdisc_exit_time(pp(r, t), 1.0, 1e-10).unwrap().value;
        let b = halfdisc_exit_time(pp(r, PI - t), 1.0, 1e-10).unwrap().value;
        prop_assert!((a - b).abs() < 1e-10);
    }
}
