use brillouin_core::numerics::gauss_legendre;
use brillouin_core::phonon::{pochhammer_determinant_nd, PhononBranchQuery, PhononFamily};
use brillouin_core::{Config, Error, PhononMode, PhononSolver};
use proptest::prelude::*;

const A: f64 = 250e-9;
const V_T: f64 = 5843.0;
const V_L: f64 = 8433.0;

fn solver() -> PhononSolver {
    PhononSolver::new(&Config::default())
}

fn ghz(wa: f64) -> f64 {
    wa * V_T / A / (2.0 * std::f64::consts::PI) / 1e9
}

fn gauss_norm(m: &PhononMode) -> f64 {
    gauss_legendre(|r| m.eval_nd(r).iter().map(|c| c.norm_sqr()).sum::<f64>() * r, 0.0, 1.0, 20, 16)
}

#[test]
fn torsional_branches() {
    let s = solver();
    let roots = s.torsional_roots(3);
    for (got, want) in roots.iter().zip([5.135_622, 8.417_244, 11.619_841]) {
        assert!((got - want).abs() < 1e-5);
    }
    let q = 2.0 / A;
    assert_eq!(s.torsional_frequency(q, 0), V_T * q);
    let w1 = s.torsional_frequency(q, 1);
    assert!((w1 - V_T * (q * q + (roots[0] / A).powi(2)).sqrt()).abs() < 1e-6 * w1);
    let query = PhononBranchQuery { family: PhononFamily::Torsional, branch: 2 };
    assert_eq!(s.frequency(&query, q).unwrap(), s.torsional_frequency(q, 2));
}

#[test]
fn long_wave_acoustic_mode_is_a_plane_compression() {
    let m = solver().mode(1e-3 / A, 0).unwrap();
    let axis = m.eval_nd(0.0)[2];
    for i in 0..=20 {
        let w = m.eval_nd(i as f64 / 20.0);
        assert!((w[2] / axis - 1.0).norm() < 1e-6);
        assert!(w[0].norm() < 1e-4);
    }
    // bar velocity sqrt(E/rho) lies between the two bulk speeds
    assert!(m.wa / m.qa > 1.0 && m.wa / m.qa < V_L / V_T);
}

#[test]
fn zero_point_motion_scales_with_inverse_root_length() {
    let mut cfg = Config::default();
    let short = PhononSolver::new(&cfg).mode(2.0 / A, 0).unwrap();
    cfg.geometry.length *= 2.0;
    let long = PhononSolver::new(&cfg).mode(2.0 / A, 0).unwrap();
    assert!((long.z_q / short.z_q * 2f64.sqrt() - 1.0).abs() < 1e-14);
    assert_eq!(long.volume_ratio(), short.volume_ratio());
}

#[test]
fn vibrational_branch_in_gigahertz_range() {
    let s = solver();
    let curve = s.solve_longitudinal_dispersion(1, 0.1 / A, 4.0 / A, 200).unwrap();
    for p in &curve.samples {
        let f = p.omega / (2.0 * std::f64::consts::PI) / 1e9;
        assert!((5.0..=50.0).contains(&f), "{f} GHz");
    }
}

#[test]
fn modes_along_a_curve_match_pointwise_modes() {
    let s = solver();
    let curve = s.solve_longitudinal_dispersion(0, 1.0 / A, 2.0 / A, 101).unwrap();
    let modes = s.finalize_curve(&curve).unwrap();
    let single = s.mode(curve.samples[50].k, 0).unwrap();
    assert_eq!(modes[50].omega, single.omega);
    // the curve path round-trips ω through SI units, so agreement is at quadrature tolerance
    assert!((modes[50].z_q / single.z_q - 1.0).abs() < 1e-8);
    assert!((modes[50].v_s / single.v_s - 1.0).abs() < 1e-3, "{} {}", modes[50].v_s, single.v_s);
}

#[test]
fn missing_branch_is_an_error() {
    assert!(matches!(solver().mode(1.0 / A, 200), Err(Error::NoRoot { .. })));
    assert!(solver().pochhammer_residual(1.0 / A, 0.0).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn residual_small_at_every_root(qa in 1e-3f64..5.0) {
        let ratio = V_T / V_L;
        let roots = solver().roots_nd(qa).unwrap();
        prop_assert!(roots.len() >= 4);
        for w in &roots {
            let r = pochhammer_determinant_nd(ratio, qa, *w);
            prop_assert!(r.relative() <= 1e-10, "qa {qa} W {w}: {:e}", r.relative());
        }
        // sorted-root convention keeps branches strictly ordered
        for p in roots.windows(2) {
            prop_assert!(p[0] < p[1]);
        }
    }

    #[test]
    fn surface_is_traction_free(qa in 0.05f64..4.0, branch in 0usize..3) {
        let m = solver().mode(qa / A, branch).unwrap();
        let (rr, rz, peak) = m.surface_traction();
        prop_assert!(rr.abs() <= 1e-6 * peak && rz <= 1e-6 * peak, "{rr:e} {rz:e} {peak:e}");
    }

    #[test]
    fn normalization_integral_recomputed(qa in 0.05f64..4.0, branch in 0usize..2) {
        let m = solver().mode(qa / A, branch).unwrap();
        let stored = m.v_phon / (2.0 * std::f64::consts::PI * m.geometry.length * A * A);
        prop_assert!((gauss_norm(&m) / stored - 1.0).abs() <= 1e-8);
        // peak-normalized profile
        let peak = (0..=400).map(|i| m.eval_nd(i as f64 / 400.0).iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()).fold(0.0, f64::max);
        prop_assert!(peak <= 1.0 + 1e-12 && peak > 0.999);
    }

    #[test]
    fn even_in_wavenumber(qa in 0.05f64..4.0) {
        let s = solver();
        let (plus, minus) = (s.mode(qa / A, 0).unwrap(), s.mode(-qa / A, 0).unwrap());
        prop_assert_eq!(plus.omega, minus.omega);
        prop_assert!((plus.z_q / minus.z_q - 1.0).abs() < 1e-12);
    }

    #[test]
    fn no_azimuthal_displacement(qa in 0.05f64..4.0, rho in 0.0f64..1.0) {
        let w = solver().mode(qa / A, 0).unwrap().eval_nd(rho);
        prop_assert_eq!(w[1].norm(), 0.0);
        prop_assert_eq!(w[0].im, 0.0);
        prop_assert_eq!(w[2].re, 0.0);
    }
}

#[test]
fn reference_point_roots() {
    let roots = solver().roots_nd(3.48).unwrap();
    assert!((ghz(roots[0]) - 12.55).abs() < 0.02);
    assert!((ghz(roots[1]) - 18.68).abs() < 0.02);
}
