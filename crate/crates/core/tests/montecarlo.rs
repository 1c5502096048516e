use exittime_core::closedform::{field, DEFAULT_TERMS};
use exittime_core::montecarlo::{euler_refinement, simulate};
use exittime_core::{Domain, DomainSpec, McConfig, McMethod, Point2};

fn wos(paths: usize, seed: u64) -> McConfig {
    McConfig {
        method: McMethod::WalkOnSpheres,
        paths,
        seed,
        ..McConfig::default()
    }
}

fn euler(paths: usize, step: f64, seed: u64) -> McConfig {
    McConfig {
        method: McMethod::Euler,
        paths,
        step,
        seed,
        max_steps: 10_000_000,
        ..McConfig::default()
    }
}

#[test]
fn wos_and_euler_agree_with_the_closed_forms() {
    let cases = [
        ("disc:r0=1", Point2::new(0.3, -0.2)),
        ("rectangle:a=1,b=0.5", Point2::new(0.2, 0.1)),
        ("ellipse:a=1.2,b=0.6", Point2::new(-0.4, 0.2)),
    ];
    for (spec, pt) in cases {
        let d: Domain = spec.parse().unwrap();
        let exact = field(&d, pt, DEFAULT_TERMS).unwrap();
        let w = simulate(&d, pt, &wos(40_000, 11)).unwrap();
        let e = simulate(&d, pt, &euler(4_000, 1e-4, 12)).unwrap();
        assert!((w.mean - exact).abs() < 3.0 * w.std_error + w.bias_bound.unwrap_or(0.0), "{spec} WoS: {w:?} vs {exact}");
        // Euler detects exits late by O(√h); allow that on top of the noise.
        let late = 0.6 * 1e-2 * exact.sqrt();
        assert!((e.mean - exact).abs() < 3.0 * e.std_error + late, "{spec} Euler: {e:?} vs {exact}");
        let joint = 3.0 * w.std_error.hypot(e.std_error) + late;
        assert!((w.mean - e.mean).abs() < joint, "{spec}: {} vs {}", w.mean, e.mean);
    }
}

#[test]
fn scaling_the_disc_scales_the_time() {
    let pt = Point2::new(0.3, 0.2);
    let small = Domain::new(DomainSpec::Disc { r0: 1.0 }).unwrap();
    let big = Domain::new(DomainSpec::Disc { r0: 2.0 }).unwrap();
    let cfg = wos(5_000, 3);
    let a = simulate(&small, pt, &cfg).unwrap();
    let b = simulate(&big, Point2::new(2.0 * pt.x, 2.0 * pt.y), &McConfig { shell: 2.0 * cfg.shell, ..cfg }).unwrap();
    assert!((b.mean - 4.0 * a.mean).abs() < 1e-9 * b.mean, "{} {}", a.mean, b.mean);
    assert!((b.std_error - 4.0 * a.std_error).abs() < 1e-9 * b.std_error);
}

#[test]
fn euler_refinement_trends_toward_the_exact_value() {
    let d: Domain = "disc:r0=1".parse().unwrap();
    let steps = [1.6e-2, 4e-3, 1e-3];
    let r = euler_refinement(&d, Point2::ORIGIN, &steps, 2_000, 5, 50.0).unwrap();
    // Coupled paths: each coarser estimate is at least the finer one.
    for w in r.windows(2) {
        assert!(w[0].mean >= w[1].mean);
    }
    let bias: Vec<f64> = r.iter().map(|m| m.mean - 0.5).collect();
    assert!(bias[0] > bias[2], "{bias:?}");
    // The coupled difference has far less noise than either mean; the bias
    // roughly halves with each fourfold step reduction.
    let ratio = (r[0].mean - r[1].mean) / (r[1].mean - r[2].mean);
    assert!(ratio > 1.2 && ratio < 3.5, "{ratio}");
}

#[test]
fn fixed_seed_is_reproducible() {
    let d: Domain = "lens".parse().unwrap();
    let pt = Point2::new(0.1, 0.05);
    for cfg in [wos(2_000, 9), euler(200, 1e-3, 9)] {
        let a = simulate(&d, pt, &cfg).unwrap();
        let b = simulate(&d, pt, &cfg).unwrap();
        assert_eq!(a.mean.to_bits(), b.mean.to_bits());
        assert_eq!(a.std_error.to_bits(), b.std_error.to_bits());
        let c = simulate(&d, pt, &McConfig { seed: 10, ..cfg }).unwrap();
        assert_ne!(a.mean.to_bits(), c.mean.to_bits());
    }
}

#[test]
fn reproducible_across_thread_pools() {
    let d: Domain = "polygon:m=5".parse().unwrap();
    let cfg = wos(3_000, 21);
    let many = simulate(&d, Point2::new(0.1, 0.1), &cfg).unwrap();
    let one = rayon::ThreadPoolBuilder::new()
        .num_threads(1)
        .build()
        .unwrap()
        .install(|| simulate(&d, Point2::new(0.1, 0.1), &cfg).unwrap());
    assert_eq!(many.mean.to_bits(), one.mean.to_bits());
}
