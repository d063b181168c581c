use brillouin_core::special::{
    bessel_i, bessel_j, bessel_j_deriv, bessel_j_zeros, bessel_k, bessel_k_deriv, jratio_kernel,
};
use proptest::prelude::*;

fn reference() -> Vec<(String, usize, f64, f64)> {
    include_str!("data/bessel_reference.csv")
        .lines()
        .skip(1)
        .map(|l| {
            let f: Vec<&str> = l.split(',').collect();
            (f[0].to_string(), f[1].parse().unwrap(), f[2].parse().unwrap(), f[3].parse().unwrap())
        })
        .collect()
}

#[test]
fn matches_high_precision_table() {
    for (kind, n, x, v) in reference() {
        let (got, scale) = match kind.as_str() {
            // oscillatory: relative to the local envelope so zeros do not blow up the ratio
            "J" => (bessel_j(n, x), v.abs().max((2.0 / (std::f64::consts::PI * x)).sqrt().min(1.0) * 1e-2)),
            "I" => (bessel_i(n, x), v.abs()),
            _ => (bessel_k(n, x).unwrap(), v.abs()),
        };
        let tol = if kind == "J" { 1e-12 } else { 2e-13 };
        assert!((got - v).abs() <= tol * scale, "{kind}{n}({x}) = {got:e}, want {v:e}");
    }
}

/// Independent oracle: plain power series of J1 and bisection on [3, 4.5].
fn j1_series(x: f64) -> f64 {
    let mut term = x / 2.0;
    let mut sum = term;
    for k in 1..60 {
        term *= -(x * x / 4.0) / (k as f64 * (k as f64 + 1.0));
        sum += term;
    }
    sum
}

#[test]
fn first_zero_of_j1_matches_series_bisection() {
    let (mut lo, mut hi) = (3.0, 4.5);
    for _ in 0..80 {
        let mid = 0.5 * (lo + hi);
        if j1_series(lo).signum() == j1_series(mid).signum() {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let oracle = 0.5 * (lo + hi);
    let z: f64 = bessel_j_zeros(1, 1)[0];
    assert!((z - oracle).abs() < 1e-12);
    assert!((z - 3.8317).abs() < 1e-4);
    assert!(bessel_j(1, 3.8317f64).abs() < 1e-4);
    assert!(bessel_j(2, 5.136f64).abs() < 5e-4);
}

#[test]
fn k1_integral_representation() {
    // K1(x) = ∫₀^∞ e^{−x cosh t} cosh t dt; the trapezoid rule converges geometrically here
    let x = 1.0f64;
    let f = |t: f64| (-x * t.cosh()).exp() * t.cosh();
    let h = 1e-3;
    let mut sum = 0.5 * f(0.0);
    let mut k = 1;
    while (k as f64) * h < 12.0 {
        sum += f(k as f64 * h);
        k += 1;
    }
    let oracle = sum * h;
    let k1 = bessel_k(1, x).unwrap();
    assert!((k1 - oracle).abs() < 1e-12, "{k1} vs {oracle}");
    assert!((oracle - 0.60191).abs() < 1e-5);
}

#[test]
fn derivative_matches_finite_difference_at_two() {
    let h = 1e-5;
    let fd = (bessel_j(1, 2.0 + h) - bessel_j(1, 2.0 - h)) / (2.0 * h);
    assert!((bessel_j_deriv(1, 2.0f64) - fd).abs() < 1e-8);
}

#[test]
fn torsional_roots_of_j2() {
    let z: Vec<f64> = bessel_j_zeros(2, 3);
    for (got, want) in z.iter().zip([5.136, 8.417, 11.620]) {
        assert!((got - want).abs() < 1e-3, "{got} vs {want}");
    }
}

#[test]
fn jratio_kernel_two_sided_limit() {
    for n in 0..3 {
        let plus = jratio_kernel(1e-8f64, 1.0, n).unwrap();
        let minus = jratio_kernel(-1e-8f64, 1.0, n).unwrap();
        assert!((plus - minus).abs() < 1e-6);
        assert!((plus - 2.0 * (n as f64 + 1.0)).abs() < 1e-6);
    }
}

proptest! {
    #[test]
    fn j_recurrence(x in 0.1f64..30.0, n in 1usize..4) {
        let lhs = bessel_j(n - 1, x) + bessel_j(n + 1, x);
        let rhs = 2.0 * n as f64 / x * bessel_j(n, x);
        let scale = bessel_j(n - 1, x).abs().max(bessel_j(n + 1, x).abs()).max(rhs.abs());
        prop_assert!((lhs - rhs).abs() <= 1e-10 * scale);
    }

    #[test]
    fn k_recurrence(x in 0.1f64..30.0, n in 1usize..4) {
        let lhs = bessel_k(n + 1, x).unwrap() - bessel_k(n - 1, x).unwrap();
        let rhs = 2.0 * n as f64 / x * bessel_k(n, x).unwrap();
        prop_assert!((lhs - rhs).abs() <= 1e-10 * rhs.abs());
    }

    #[test]
    fn k_positive(x in 1e-6f64..200.0, n in 0usize..6) {
        prop_assert!(bessel_k(n, x).unwrap() > 0.0);
    }

    #[test]
    fn derivatives_match_centered_differences(x in 0.1f64..30.0, n in 0usize..4) {
        let h = 1e-6 * x;
        let fd_j = (bessel_j(n, x + h) - bessel_j(n, x - h)) / (2.0 * h);
        let dj = bessel_j_deriv(n, x);
        let scale_j = dj.abs().max(bessel_j(n, x).abs()).max(1e-3);
        prop_assert!((dj - fd_j).abs() <= 1e-6 * scale_j, "J{}'({}) {} vs {}", n, x, dj, fd_j);
        let fd_k = (bessel_k(n, x + h).unwrap() - bessel_k(n, x - h).unwrap()) / (2.0 * h);
        let dk = bessel_k_deriv(n, x).unwrap();
        prop_assert!((dk - fd_k).abs() <= 1e-6 * dk.abs());
    }

    #[test]
    fn jratio_kernel_matches_bessel_ratio(t in -30.0f64..30.0, n in 0usize..3) {
        if let Ok(v) = jratio_kernel(t, 1.0, n) {
            let want = if t > 0.0 {
                let x = t.sqrt();
                x * bessel_j(n, x) / bessel_j(n + 1, x)
            } else if t < 0.0 {
                let x = (-t).sqrt();
                x * bessel_i(n, x) / bessel_i(n + 1, x)
            } else {
                2.0 * (n as f64 + 1.0)
            };
            prop_assert!((v - want).abs() <= 1e-9 * want.abs().max(1.0), "t={} {} vs {}", t, v, want);
        }
    }
}
